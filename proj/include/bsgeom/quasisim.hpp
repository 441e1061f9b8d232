#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bsgeom::quasisim {

/// The stretch interval [a, b] of a bilipschitz map: the smallest interval
/// with a d(x,y) <= d(h(x),h(y)) <= b d(x,y). A [k,k] interval is a
/// k-similarity. Product and containment follow interval arithmetic on
/// positive reals.
struct StretchInterval {
    double a = 1.0;
    double b = 1.0;

    double ratio() const { return b / a; }
    StretchInterval inverse() const { return {1.0 / b, 1.0 / a}; }
    friend StretchInterval operator*(const StretchInterval& u, const StretchInterval& v) {
        return {u.a * v.a, u.b * v.b};
    }
    // containment with relative rounding slack
    bool contained_in(const StretchInterval& o, double rel_slack = 1e-9) const {
        return a >= o.a * (1.0 - rel_slack) && b <= o.b * (1.0 + rel_slack);
    }
    bool contains_value(double s, double rel_slack = 1e-9) const {
        return s >= a * (1.0 - rel_slack) && s <= b * (1.0 + rel_slack);
    }
};

/// An orientation-consistent piecewise-linear homeomorphism of R with affine
/// tails: breakpoints xs (>= 1), values ys, and slopes[i] on the i-th piece
/// (slopes[0] is the tail below xs[0], slopes[N] the tail above xs[N-1]).
/// All slopes share one sign. Closed under composition, inverse, and powers.
class PLHomeo {
public:
    PLHomeo(std::vector<double> xs, std::vector<double> ys, std::vector<double> slopes);

    static PLHomeo identity();
    static PLHomeo affine(double slope, double intercept);
    static PLHomeo translation(double alpha) { return affine(1.0, alpha); }
    static PLHomeo dilation(double s) { return affine(s, 0.0); }
    // from breakpoints, per-piece slopes (size xs.size()+1) and the value at xs[0]
    static PLHomeo from_slopes(std::vector<double> xs, std::vector<double> slopes, double y0);

    const std::vector<double>& breakpoints() const { return xs_; }
    const std::vector<double>& values() const { return ys_; }
    const std::vector<double>& slopes() const { return slopes_; }
    std::size_t piece_count() const { return slopes_.size(); }
    bool increasing() const { return slopes_[0] > 0.0; }

    double operator()(double x) const;
    double slope_at(double x) const;

    PLHomeo inverse() const;
    PLHomeo power(long m, std::size_t breakpoint_cap = 1'000'000) const;
    // conjugate by the translation x -> x + c: returns T_{-c} o f o T_c
    PLHomeo translate_conjugate(double c) const;

    StretchInterval stretch() const;

    bool is_identity(double tol = 0.0) const;
    std::string to_string() const;

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<double> slopes_;

    std::size_t piece_index(double x) const;  // 0..N, piece i covers (xs[i-1], xs[i])
};

// f after g; breakpoints merge, slopes multiply piecewise
PLHomeo compose(const PLHomeo& f, const PLHomeo& g, std::size_t breakpoint_cap = 1'000'000);

// the smallest [a,b] with f [a,b]-bilipschitz: [min |slope|, max |slope|]
StretchInterval stretch_interval(const PLHomeo& f);

// b/a: a certified quasisimilarity constant for f (conversely a
// K-quasisimilarity is [a,b]-bilipschitz with b/a <= K^4)
double qs_constant_from_interval(const PLHomeo& f);

/// A uniform quasihomomorphism over Z: m -> [a_m, b_m] with
///   b_m / a_m <= K, [a_0,b_0] = [1,1],
///   [a_{i+j}, b_{i+j}] in [a_i a_j, b_i b_j], and inverse flip.
struct QuasiHom {
    long M = 0;                              // range -M..M
    std::vector<StretchInterval> intervals;  // index m + M
    std::vector<bool> exact;                 // exact PL power vs interval fallback

    const StretchInterval& at(long m) const { return intervals[static_cast<std::size_t>(m + M)]; }
    double K() const;

    struct AxiomReport {
        bool ok = true;
        std::string detail;
    };
    AxiomReport check_axioms(double rel_slack = 1e-9) const;
};

// stretch intervals of f^m for |m| <= M (exact while the breakpoint budget
// lasts, interval-product fallback beyond)
QuasiHom power_stretch_profile(const PLHomeo& f, long M,
                               std::size_t breakpoint_cap = 1'000'000);

enum class MapClass { NoFixedPoint, UniqueFixedPoint, NotUniformQS };

struct Classification {
    MapClass kind = MapClass::NoFixedPoint;
    int direction = +1;         // NoFixedPoint: sign of f(x) - x
    double fixed_point = 0.0;   // UniqueFixedPoint
    bool repelling = false;     // UniqueFixedPoint
    bool orientation_reversing = false;  // input analyzed through f^2
    // NotUniformQS: a growing triple-ratio witness
    long witness_power = 0;
    double witness_ratio = 0.0;
    double declared_K = 0.0;
    std::string reason;
};

/// The cyclic dichotomy: no fixed point, a unique attracting/repelling fixed
/// point, or a witness that the cyclic action is not a uniform
/// quasisimilarity action (ratio above the declared constant at some power).
Classification classify(const PLHomeo& f, long max_power = 100000);

struct StretchEstimate {
    double s = 1.0;
    double rel_error_bound = 0.0;  // K^{1/(2M)} - 1
    long M = 0;
    double K = 1.0;
};

// the unique s with s^m in [a_m, b_m], from the nested intervals
// I_m = [a_m^{1/m}, b_m^{1/m}]; s is the geometric midpoint of I_M
StretchEstimate extract_stretch(const QuasiHom& profile);

struct EngineConfig {
    double domain_halfwidth = 1e3;   // conjugacy is certified on [-D, D]
    int grid_points = 4096;          // sup-error measurement grid
    std::size_t breakpoint_cap = 1'000'000;
    long profile_M = 32;             // power range for stretch extraction
    double floor_ratio = 1e-12;      // dilation case: materialization floor near 0
};

struct ConjugacyResult {
    PLHomeo phi = PLHomeo::identity();
    double alpha = 0.0;        // translation case: phi o f = T_alpha o phi
    double s = 1.0;            // dilation case: phi o f o phi^{-1} = M_s
    double bilip_bound = 1.0;  // certificate for phi from the power profile
    double measured_lo = 1.0;  // exact slope scan of phi
    double measured_hi = 1.0;
    double seed_slope = 1.0;   // dilation case: (s-1)/(x1-1)
    double sup_error = 0.0;    // conjugacy defect on the measurement grid
    double profile_K = 1.0;
};

/// Case 1: f has no fixed point. Builds phi with phi = id - x0 on the seed
/// orbit interval [x0, f(x0)] and phi(x) = phi(f^{-k}(x)) + k alpha beyond,
/// alpha = f(x0) - x0. phi is K-bilipschitz for the uniform power bound K.
ConjugacyResult conjugate_to_translation(const PLHomeo& f, double x0 = 0.0,
                                         const EngineConfig& cfg = {});

/// Case 2: f has a unique repelling or attracting fixed point p. Normalizes
/// p to 0, extracts s from the power profile, seeds [x0, f(x0)] -> [1, s]
/// affinely and extends by phi(x) = phi(f^{-k}(x)) s^k on both half-lines.
/// The construction is [1/K^3, K^3]-bilipschitz.
ConjugacyResult conjugate_to_dilation(const PLHomeo& f, long M = 32,
                                      const EngineConfig& cfg = {});

/// Rubber band principle check: phi restricted to each cover interval is
/// K-bilipschitz, with the cover tiling its span (adjacent intervals share
/// endpoints). When it holds, the global slope scan certifies the same K.
bool verify_rubber_band(const PLHomeo& phi,
                        const std::vector<std::pair<double, double>>& cover, double K);

} // namespace bsgeom::quasisim
