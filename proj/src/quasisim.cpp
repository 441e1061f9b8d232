#include <bsgeom/quasisim.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bsgeom::quasisim {

namespace {

constexpr double kRay = 1e300;  // sentinel for unbounded fixed rays

} // namespace

PLHomeo::PLHomeo(std::vector<double> xs, std::vector<double> ys, std::vector<double> slopes)
    : xs_(std::move(xs)), ys_(std::move(ys)), slopes_(std::move(slopes)) {
    if (xs_.empty()) throw std::invalid_argument("PLHomeo: need at least one breakpoint");
    if (ys_.size() != xs_.size() || slopes_.size() != xs_.size() + 1)
        throw std::invalid_argument("PLHomeo: inconsistent sizes");
    for (size_t i = 1; i < xs_.size(); ++i)
        if (!(xs_[i - 1] < xs_[i])) throw std::invalid_argument("PLHomeo: breakpoints not increasing");
    const bool inc = slopes_[0] > 0.0;
    for (double m : slopes_) {
        if (m == 0.0 || !std::isfinite(m)) throw std::invalid_argument("PLHomeo: zero/inf slope");
        if ((m > 0.0) != inc) throw std::invalid_argument("PLHomeo: slopes change sign");
    }
    for (size_t i = 1; i < xs_.size(); ++i) {
        const double expect = ys_[i - 1] + slopes_[i] * (xs_[i] - xs_[i - 1]);
        // anchored-evaluation noise scales with slope * |coordinate|
        const double tol = 1e-6 * (1.0 + std::abs(ys_[i - 1]) + std::abs(ys_[i])) +
                           1e-11 * std::abs(slopes_[i]) * (1.0 + std::abs(xs_[i]));
        if (std::abs(expect - ys_[i]) > tol) {
            std::ostringstream os;
            os << "PLHomeo: discontinuity at breakpoint " << i << " (x=" << xs_[i]
               << ", value " << ys_[i] << " vs extension " << expect << ")";
            throw std::invalid_argument(os.str());
        }
    }
}

PLHomeo PLHomeo::identity() { return affine(1.0, 0.0); }

PLHomeo PLHomeo::affine(double slope, double intercept) {
    return PLHomeo({0.0}, {intercept}, {slope, slope});
}

PLHomeo PLHomeo::from_slopes(std::vector<double> xs, std::vector<double> slopes, double y0) {
    std::vector<double> ys(xs.size());
    if (!xs.empty()) {
        ys[0] = y0;
        for (size_t i = 1; i < xs.size(); ++i) ys[i] = ys[i - 1] + slopes[i] * (xs[i] - xs[i - 1]);
    }
    return PLHomeo(std::move(xs), std::move(ys), std::move(slopes));
}

std::size_t PLHomeo::piece_index(double x) const {
    return static_cast<size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
}

double PLHomeo::operator()(double x) const {
    const size_t i = piece_index(x);
    if (i == 0) return ys_[0] + slopes_[0] * (x - xs_[0]);
    return ys_[i - 1] + slopes_[i] * (x - xs_[i - 1]);
}

double PLHomeo::slope_at(double x) const { return slopes_[piece_index(x)]; }

PLHomeo PLHomeo::inverse() const {
    const size_t N = xs_.size();
    std::vector<double> xs(N), ys(N), ms(N + 1);
    if (increasing()) {
        xs = ys_;
        ys = xs_;
        for (size_t i = 0; i <= N; ++i) ms[i] = 1.0 / slopes_[i];
    } else {
        for (size_t i = 0; i < N; ++i) {
            xs[i] = ys_[N - 1 - i];
            ys[i] = xs_[N - 1 - i];
        }
        for (size_t i = 0; i <= N; ++i) ms[i] = 1.0 / slopes_[N - i];
    }
    return PLHomeo(std::move(xs), std::move(ys), std::move(ms));
}

PLHomeo PLHomeo::translate_conjugate(double c) const {
    std::vector<double> xs(xs_), ys(ys_);
    for (auto& x : xs) x -= c;
    for (auto& y : ys) y -= c;
    return PLHomeo(std::move(xs), std::move(ys), slopes_);
}

StretchInterval PLHomeo::stretch() const {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double m : slopes_) {
        lo = std::min(lo, std::abs(m));
        hi = std::max(hi, std::abs(m));
    }
    return {lo, hi};
}

bool PLHomeo::is_identity(double tol) const {
    for (double m : slopes_)
        if (std::abs(m - 1.0) > tol) return false;
    for (size_t i = 0; i < xs_.size(); ++i)
        if (std::abs(ys_[i] - xs_[i]) > tol * (1.0 + std::abs(xs_[i]))) return false;
    return true;
}

std::string PLHomeo::to_string() const {
    std::ostringstream os;
    os << "PL[" << xs_.size() << " breakpoints, slopes in [" << stretch().a << ", " << stretch().b
       << "]]";
    return os.str();
}

PLHomeo compose(const PLHomeo& f, const PLHomeo& g, std::size_t breakpoint_cap) {
    // composite breakpoints: g's own and the g-preimages of f's; walk them in
    // order, tracking the active (f-piece, g-piece) pair combinatorially so
    // piece slopes are exact products even across ulp-wide pieces
    struct Mark {
        double x;
        int type;  // 0: g breakpoint, 1: preimage of an f breakpoint
        size_t idx;
    };
    const PLHomeo ginv = g.inverse();
    std::vector<Mark> marks;
    marks.reserve(g.breakpoints().size() + f.breakpoints().size());
    for (size_t i = 0; i < g.breakpoints().size(); ++i)
        marks.push_back({g.breakpoints()[i], 0, i});
    for (size_t j = 0; j < f.breakpoints().size(); ++j)
        marks.push_back({ginv(f.breakpoints()[j]), 1, j});
    std::sort(marks.begin(), marks.end(), [](const Mark& a, const Mark& b) { return a.x < b.x; });
    if (marks.size() > breakpoint_cap) throw std::runtime_error("PL breakpoint budget exceeded");

    const bool ginc = g.increasing();
    size_t gi = 0;
    size_t fi = ginc ? 0 : f.breakpoints().size();

    std::vector<double> xs, ms;
    xs.reserve(marks.size());
    ms.reserve(marks.size() + 1);
    ms.push_back(f.slopes()[fi] * g.slopes()[gi]);
    size_t t = 0;
    while (t < marks.size()) {
        const double x = marks[t].x;
        while (t < marks.size() && marks[t].x == x) {
            // piece indices advance monotonically along x, independent of the
            // arbitrary order of equal-key marks
            if (marks[t].type == 0) {
                gi = std::max(gi, marks[t].idx + 1);
            } else {
                fi = ginc ? std::max(fi, marks[t].idx + 1) : std::min(fi, marks[t].idx);
            }
            ++t;
        }
        xs.push_back(x);
        ms.push_back(f.slopes()[fi] * g.slopes()[gi]);
    }

    const size_t N = xs.size();
    // rounding can swap two marks that coincide mathematically, leaving a
    // sub-ulp sliver with a transient index pair; re-slope such slivers from
    // their right neighbor
    for (size_t i = N; i-- > 1;)
        if (xs[i] - xs[i - 1] <= 1e-15 * (1.0 + std::abs(xs[i]))) ms[i] = ms[i + 1];

    std::vector<double> ys(N);
    for (size_t i = 0; i < N; ++i) ys[i] = f(g(xs[i]));
    return PLHomeo(std::move(xs), std::move(ys), std::move(ms));
}

PLHomeo PLHomeo::power(long m, std::size_t breakpoint_cap) const {
    if (m == 0) return identity();
    if (m < 0) return inverse().power(-m, breakpoint_cap);
    PLHomeo acc = *this;
    for (long t = 1; t < m; ++t) acc = compose(acc, *this, breakpoint_cap);
    return acc;
}

StretchInterval stretch_interval(const PLHomeo& f) { return f.stretch(); }

double qs_constant_from_interval(const PLHomeo& f) { return f.stretch().ratio(); }

double QuasiHom::K() const {
    double k = 1.0;
    for (const auto& iv : intervals) k = std::max(k, iv.ratio());
    return k;
}

QuasiHom::AxiomReport QuasiHom::check_axioms(double rel_slack) const {
    AxiomReport rep;
    std::ostringstream detail;
    const double K = this->K();
    const auto& id = at(0);
    if (std::abs(id.a - 1.0) > rel_slack || std::abs(id.b - 1.0) > rel_slack) {
        rep.ok = false;
        detail << "identity interval != [1,1]; ";
    }
    for (long m = -M; m <= M; ++m) {
        if (at(m).ratio() > K * (1.0 + rel_slack)) {
            rep.ok = false;
            detail << "ratio bound fails at " << m << "; ";
        }
        const auto flip = at(m).inverse();
        if (std::abs(at(-m).a - flip.a) > rel_slack * flip.a ||
            std::abs(at(-m).b - flip.b) > rel_slack * flip.b) {
            rep.ok = false;
            detail << "inverse flip fails at " << m << "; ";
        }
    }
    for (long i = -M; i <= M; ++i)
        for (long j = -M; j <= M; ++j) {
            if (i + j < -M || i + j > M) continue;
            if (!at(i + j).contained_in(at(i) * at(j), rel_slack)) {
                rep.ok = false;
                detail << "containment fails at (" << i << "," << j << "); ";
            }
        }
    rep.detail = detail.str();
    return rep;
}

QuasiHom power_stretch_profile(const PLHomeo& f, long M, std::size_t breakpoint_cap) {
    QuasiHom q;
    q.M = M;
    q.intervals.assign(static_cast<size_t>(2 * M + 1), StretchInterval{1.0, 1.0});
    q.exact.assign(static_cast<size_t>(2 * M + 1), true);

    PLHomeo cur = f;
    bool exact_mode = true;
    for (long m = 1; m <= M; ++m) {
        StretchInterval iv{1.0, 1.0};
        if (m == 1) {
            iv = f.stretch();
        } else if (exact_mode) {
            try {
                cur = compose(cur, f, breakpoint_cap);
                iv = cur.stretch();
            } catch (const std::runtime_error&) {
                exact_mode = false;
            }
        }
        if (!exact_mode && m > 1)
            iv = q.intervals[static_cast<size_t>(m - 1 + M)] * f.stretch();
        q.intervals[static_cast<size_t>(m + M)] = iv;
        q.exact[static_cast<size_t>(m + M)] = exact_mode || m == 1;
        q.intervals[static_cast<size_t>(-m + M)] = iv.inverse();
        q.exact[static_cast<size_t>(-m + M)] = q.exact[static_cast<size_t>(m + M)];
    }
    return q;
}

namespace {

// zero set of f - id as a sorted list of disjoint closed intervals
// ([x,x] for isolated fixed points, +-kRay for fixed rays)
std::vector<std::pair<double, double>> fixed_set(const PLHomeo& f) {
    const auto& xs = f.breakpoints();
    const auto& ys = f.values();
    const auto& ms = f.slopes();
    const size_t N = xs.size();
    std::vector<std::pair<double, double>> zeros;

    auto add_zero = [&](double l, double r) {
        // merge roots split only by rounding
        if (!zeros.empty() && l <= zeros.back().second + 1e-9 * (1.0 + std::abs(l))) {
            zeros.back().second = std::max(zeros.back().second, r);
        } else {
            zeros.emplace_back(l, r);
        }
    };

    // piece i spans [A, B] with h(x) = f(x) - x affine
    for (size_t i = 0; i <= N; ++i) {
        const double A = (i == 0) ? -kRay : xs[i - 1];
        const double B = (i == N) ? kRay : xs[i];
        const double anchor = (i == 0) ? xs[0] : xs[i - 1];
        const double yanchor = (i == 0) ? ys[0] : ys[i - 1];
        double mh = ms[i] - 1.0;
        // slopes within an ulp of 1 (composition residue) would otherwise
        // cross the identity at astronomical coordinates
        if (std::abs(mh) <= 1e-12 * std::abs(ms[i])) mh = 0.0;
        auto h = [&](double x) { return yanchor + ms[i] * (x - anchor) - x; };
        if (mh == 0.0) {
            if (h(anchor) == 0.0) add_zero(A, B);
            continue;
        }
        const double root = anchor + (anchor - yanchor) / mh;
        if (root >= A && root <= B) add_zero(root, root);
    }
    return zeros;
}

struct WitnessSetup {
    double x;       // a fixed point (or orbit limit)
    double y;       // a second fixed point, when available
    double z;       // the moving point
    int mode;       // 0: gap ratio |x - w|/|w - y|; 1: escape ratio |w - x|/|z - x|
};

Classification not_uniform_witness(const PLHomeo& f, const WitnessSetup& w, double declared_K,
                                   long max_power, std::string reason) {
    Classification cls;
    cls.kind = MapClass::NotUniformQS;
    cls.declared_K = declared_K;
    cls.reason = std::move(reason);
    double moving = w.z;
    for (long nstep = 1; nstep <= max_power; ++nstep) {
        moving = f(moving);
        const double ratio = (w.mode == 0) ? std::abs(w.x - moving) / std::abs(moving - w.y)
                                           : std::abs(moving - w.x) / std::abs(w.z - w.x);
        // the quasisimilarity bound is two-sided
        if (!std::isfinite(ratio) || ratio > declared_K || ratio < 1.0 / declared_K) {
            cls.witness_power = nstep;
            cls.witness_ratio = ratio;
            return cls;
        }
    }
    throw std::runtime_error("classify: witness power budget exceeded");
}

} // namespace

Classification classify(const PLHomeo& f_in, long max_power) {
    if (f_in.is_identity(1e-12)) throw std::invalid_argument("classify: identity input");
    PLHomeo f = f_in;
    bool flipped = false;
    if (!f_in.increasing()) {
        f = compose(f_in, f_in);
        flipped = true;
        if (f.is_identity(1e-12))
            throw std::invalid_argument("classify: orientation-reversing involution (f^2 = id)");
    }

    const double declared_K = qs_constant_from_interval(f);
    const auto zeros = fixed_set(f);

    if (zeros.empty()) {
        Classification cls;
        cls.kind = MapClass::NoFixedPoint;
        cls.orientation_reversing = flipped;
        const double probe = f.breakpoints()[0];
        cls.direction = (f(probe) > probe) ? +1 : -1;
        return cls;
    }

    if (zeros.size() == 1 && zeros[0].first == zeros[0].second) {
        const double p = zeros[0].first;
        // probe h on both sides, halfway to the neighboring breakpoints
        double delta = 1.0;
        for (double bx : f.breakpoints())
            if (bx != p) delta = std::min(delta, std::abs(bx - p) / 2.0);
        delta = std::max(delta, 1e-13 * (1.0 + std::abs(p)));
        const double hr = f(p + delta) - (p + delta);
        const double hl = f(p - delta) - (p - delta);
        if (hr > 0.0 && hl < 0.0) {
            Classification cls;
            cls.kind = MapClass::UniqueFixedPoint;
            cls.fixed_point = p;
            cls.repelling = true;
            cls.orientation_reversing = flipped;
            return cls;
        }
        if (hr < 0.0 && hl > 0.0) {
            Classification cls;
            cls.kind = MapClass::UniqueFixedPoint;
            cls.fixed_point = p;
            cls.repelling = false;
            cls.orientation_reversing = flipped;
            return cls;
        }
        // one-sided: f pushes the same way on both sides of p
        WitnessSetup w;
        if (hr > 0.0) {
            // orbits right of p escape upward while left orbits converge to p
            w = {p, 0.0, p + 1.0, 1};
        } else {
            w = {p, 0.0, p - 1.0, 1};
        }
        auto cls = not_uniform_witness(f, w, declared_K, max_power,
                                       "fixed point neither attracting nor repelling");
        cls.orientation_reversing = flipped;
        cls.fixed_point = p;
        return cls;
    }

    // at least two fixed points (possibly an interval): find a finite gap of
    // non-fixed points between consecutive fixed components, else escape from
    // the outermost component
    for (size_t i = 0; i + 1 < zeros.size(); ++i) {
        const double r1 = zeros[i].second;
        const double l2 = zeros[i + 1].first;
        if (r1 < l2) {
            const double z = 0.5 * (r1 + l2);
            const bool up = f(z) > z;  // orbit converges to the endpoint ahead
            WitnessSetup w{up ? r1 : l2, up ? l2 : r1, z, 0};
            auto cls = not_uniform_witness(f, w, declared_K, max_power,
                                           "multiple fixed points (finite gap)");
            cls.orientation_reversing = flipped;
            return cls;
        }
    }
    // a single fixed component [l, r] with l < r; move a point outside it
    const double l = zeros[0].first;
    const double r = zeros[0].second;
    WitnessSetup w;
    if (r < kRay) {
        w = {r, l, r + 1.0, 1};
    } else {
        w = {l, r, l - 1.0, 1};
    }
    auto cls = not_uniform_witness(f, w, declared_K, max_power,
                                   "an interval of fixed points");
    cls.orientation_reversing = flipped;
    return cls;
}

StretchEstimate extract_stretch(const QuasiHom& profile) {
    const auto rep = profile.check_axioms(1e-6);
    if (!rep.ok) throw std::invalid_argument("extract_stretch: quasihom axioms fail: " + rep.detail);
    StretchEstimate est;
    est.M = profile.M;
    est.K = profile.K();
    const auto& top = profile.at(profile.M);
    est.s = std::exp((std::log(top.a) + std::log(top.b)) / (2.0 * static_cast<double>(profile.M)));
    est.rel_error_bound = std::exp(std::log(est.K) / (2.0 * static_cast<double>(profile.M))) - 1.0;
    return est;
}

namespace {

// phi restricted to [xs.front(), hi): nodes with values and piece slopes
struct Seg {
    std::vector<double> xs, ys, ms;
    double hi = 0.0;
};

void insert_breaks(Seg& s, const PLHomeo& step) {
    for (double b : step.breakpoints()) {
        if (b <= s.xs.front() || b >= s.hi) continue;
        auto it = std::lower_bound(s.xs.begin(), s.xs.end(), b);
        if (it != s.xs.end() && *it == b) continue;
        const size_t j = static_cast<size_t>(it - s.xs.begin()) - 1;
        const double y = s.ys[j] + s.ms[j] * (b - s.xs[j]);
        s.xs.insert(s.xs.begin() + static_cast<long>(j) + 1, b);
        s.ys.insert(s.ys.begin() + static_cast<long>(j) + 1, y);
        s.ms.insert(s.ms.begin() + static_cast<long>(j) + 1, s.ms[j]);
    }
}

// phi'(step(x)) = phi(x) * mul + add on the image interval
Seg advance(Seg cur, const PLHomeo& step, double mul, double add) {
    insert_breaks(cur, step);
    Seg nxt;
    const size_t n = cur.xs.size();
    nxt.hi = step(cur.hi);
    for (size_t i = 0; i < n; ++i) {
        const double x = step(cur.xs[i]);
        const double y = cur.ys[i] * mul + add;
        const double right = (i + 1 < n) ? cur.xs[i + 1] : cur.hi;
        const double mid = cur.xs[i] + (right - cur.xs[i]) / 2.0;
        const double m = cur.ms[i] * mul / step.slope_at(mid);
        if (!nxt.xs.empty() && x <= nxt.xs.back()) {
            // contraction collapsed two nodes onto one double; the later
            // slope governs the surviving piece
            nxt.ms.back() = m;
            continue;
        }
        nxt.xs.push_back(x);
        nxt.ys.push_back(y);
        nxt.ms.push_back(m);
    }
    while (nxt.xs.size() > 1 && nxt.xs.back() >= nxt.hi) {
        nxt.xs.pop_back();
        nxt.ys.pop_back();
        nxt.ms.pop_back();
    }
    return nxt;
}

struct Assembly {
    std::vector<double> xs, ys, ms;  // ms[i] to the right of xs[i]

    void append(const Seg& s) {
        for (size_t i = 0; i < s.xs.size(); ++i) {
            if (!xs.empty() && s.xs[i] <= xs.back()) continue;  // guard against rounding ties
            xs.push_back(s.xs[i]);
            ys.push_back(s.ys[i]);
            ms.push_back(s.ms[i]);
        }
    }

    PLHomeo finish() const {
        std::vector<double> slopes(xs.size() + 1);
        slopes[0] = ms.front();
        for (size_t i = 0; i < ms.size(); ++i) slopes[i + 1] = ms[i];
        return PLHomeo(xs, ys, slopes);
    }
};

double max_orbit_displacement(const PLHomeo& f, double lo, double hi) {
    double m = std::max(std::abs(f(lo) - lo), std::abs(f(hi) - hi));
    for (double bx : f.breakpoints())
        if (bx >= lo && bx <= hi) m = std::max(m, std::abs(f(bx) - bx));
    return m;
}

double conjugacy_sup_error(const PLHomeo& phi, const PLHomeo& f, double mul, double add,
                           const EngineConfig& cfg) {
    double sup = 0.0;
    const double D = cfg.domain_halfwidth;
    for (int i = 0; i < cfg.grid_points; ++i) {
        const double x = -D + 2.0 * D * static_cast<double>(i) / (cfg.grid_points - 1);
        sup = std::max(sup, std::abs(phi(f(x)) - (phi(x) * mul + add)));
    }
    return sup;
}

constexpr long kStepBudget = 4'000'000;

} // namespace

ConjugacyResult conjugate_to_translation(const PLHomeo& f, double x0, const EngineConfig& cfg) {
    const auto cls = classify(f);
    if (cls.kind != MapClass::NoFixedPoint)
        throw std::invalid_argument("conjugate_to_translation: map has fixed points");
    if (!f.increasing())
        throw std::invalid_argument("conjugate_to_translation: orientation-preserving input required");

    const double alpha = f(x0) - x0;
    const double D = cfg.domain_halfwidth;
    const double pad = max_orbit_displacement(f, -D, D) + std::abs(alpha) + 1.0;
    const double L = -D - pad, R = D + pad;

    const PLHomeo finv = f.inverse();
    const double x1 = f(x0);

    Seg seed;
    seed.xs = {std::min(x0, x1)};
    seed.ys = {std::min(x0, x1) - x0};
    seed.ms = {1.0};
    seed.hi = std::max(x0, x1);

    std::vector<Seg> fwd, bwd;
    long steps = 0;
    {
        Seg cur = seed;
        while (alpha > 0 ? cur.xs.front() < R : cur.hi > L) {
            cur = advance(cur, f, 1.0, alpha);
            fwd.push_back(cur);
            if (++steps > kStepBudget) throw std::runtime_error("orbit step budget exceeded");
        }
    }
    {
        Seg cur = seed;
        while (alpha > 0 ? cur.hi > L : cur.xs.front() < R) {
            cur = advance(cur, finv, 1.0, -alpha);
            bwd.push_back(cur);
            if (++steps > kStepBudget) throw std::runtime_error("orbit step budget exceeded");
        }
    }

    Assembly as;
    if (alpha > 0) {
        for (auto it = bwd.rbegin(); it != bwd.rend(); ++it) as.append(*it);
        as.append(seed);
        for (const auto& s : fwd) as.append(s);
    } else {
        for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) as.append(*it);
        as.append(seed);
        for (const auto& s : bwd) as.append(s);
    }

    ConjugacyResult res;
    res.phi = as.finish();
    res.alpha = alpha;
    const auto profile = power_stretch_profile(f, cfg.profile_M, cfg.breakpoint_cap);
    res.profile_K = profile.K();
    double bound = 1.0;
    for (long m = -profile.M; m <= profile.M; ++m)
        bound = std::max({bound, profile.at(m).b, 1.0 / profile.at(m).a});
    res.bilip_bound = bound;
    const auto sc = res.phi.stretch();
    res.measured_lo = sc.a;
    res.measured_hi = sc.b;
    res.sup_error = conjugacy_sup_error(res.phi, f, 1.0, alpha, cfg);
    return res;
}

ConjugacyResult conjugate_to_dilation(const PLHomeo& f, long M, const EngineConfig& cfg) {
    const auto cls = classify(f);
    if (cls.kind != MapClass::UniqueFixedPoint)
        throw std::invalid_argument("conjugate_to_dilation: unique fixed point required");
    if (!f.increasing())
        throw std::invalid_argument("conjugate_to_dilation: orientation-preserving input required");

    const double p = cls.fixed_point;
    // work with the repelling representative fixing 0
    const bool inverted = !cls.repelling;
    const PLHomeo g = inverted ? f.translate_conjugate(p).inverse() : f.translate_conjugate(p);
    const PLHomeo ginv = g.inverse();

    const auto profile = power_stretch_profile(g, M, cfg.breakpoint_cap);
    const auto est = extract_stretch(profile);
    const double s = est.s;
    if (!(s > 1.0))
        throw std::runtime_error("conjugate_to_dilation: extracted stretch not expanding");

    const double D = cfg.domain_halfwidth + std::abs(p);
    const double R = (D + max_orbit_displacement(g, -D, D) + 1.0) * s;
    const double floor_x = cfg.floor_ratio;

    auto build_side = [&](double sign) {
        // seed [x0, g(x0)) mapped affinely onto [sign, sign*s)
        const double x0 = sign;
        const double x1 = g(x0);
        Seg seed;
        if (sign > 0) {
            seed.xs = {x0};
            seed.ys = {x0};
            seed.ms = {(s - 1.0) / (x1 - 1.0)};
            seed.hi = x1;
        } else {
            seed.xs = {x1};
            seed.ys = {-s};
            seed.ms = {(s - 1.0) / std::abs(x1 + 1.0)};
            seed.hi = x0;
        }
        std::vector<Seg> out, in;
        long steps = 0;
        Seg cur = seed;
        while (std::max(std::abs(cur.xs.front()), std::abs(cur.hi)) < R) {
            cur = advance(cur, g, s, 0.0);
            out.push_back(cur);
            if (++steps > kStepBudget) throw std::runtime_error("orbit step budget exceeded");
        }
        cur = seed;
        while (std::min(std::abs(cur.xs.front()), std::abs(cur.hi)) > floor_x) {
            cur = advance(cur, ginv, 1.0 / s, 0.0);
            in.push_back(cur);
            if (++steps > kStepBudget) throw std::runtime_error("orbit step budget exceeded");
        }
        return std::tuple<Seg, std::vector<Seg>, std::vector<Seg>>{seed, std::move(out),
                                                                   std::move(in)};
    };

    auto [seed_p, out_p, in_p] = build_side(+1.0);
    auto [seed_n, out_n, in_n] = build_side(-1.0);

    Assembly as;
    for (auto it = out_n.rbegin(); it != out_n.rend(); ++it) as.append(*it);
    as.append(seed_n);
    for (const auto& sg : in_n) as.append(sg);
    // close the gap across 0 with linear pieces through the origin
    {
        const double xl = as.xs.back();
        const double yl = as.ys.back();
        as.ms.back() = (0.0 - yl) / (0.0 - xl);
        // node at 0; its right piece closes up to the first positive node
        double xr_first = in_p.empty() ? seed_p.xs.front() : in_p.back().xs.front();
        double yr_first = in_p.empty() ? seed_p.ys.front() : in_p.back().ys.front();
        as.xs.push_back(0.0);
        as.ys.push_back(0.0);
        as.ms.push_back(yr_first / xr_first);
    }
    for (auto it = in_p.rbegin(); it != in_p.rend(); ++it) as.append(*it);
    as.append(seed_p);
    for (const auto& sg : out_p) as.append(sg);

    ConjugacyResult res;
    PLHomeo phi0 = as.finish();
    // phi for the original f: undo the fixed-point translation
    res.phi = compose(phi0, PLHomeo::translation(-p));
    res.s = inverted ? 1.0 / s : s;
    res.seed_slope = (s - 1.0) / (g(1.0) - 1.0);
    res.profile_K = profile.K();
    res.bilip_bound = std::pow(profile.K(), 3.0);
    const auto sc = res.phi.stretch();
    res.measured_lo = sc.a;
    res.measured_hi = sc.b;
    res.sup_error = conjugacy_sup_error(res.phi, f, res.s, 0.0, cfg);
    return res;
}

bool verify_rubber_band(const PLHomeo& phi,
                        const std::vector<std::pair<double, double>>& cover, double K) {
    if (cover.empty()) throw std::invalid_argument("verify_rubber_band: empty cover");
    auto sorted = cover;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [l, r] : sorted)
        if (!(l < r)) throw std::invalid_argument("verify_rubber_band: degenerate interval");
    for (size_t i = 1; i < sorted.size(); ++i) {
        const double gap = std::abs(sorted[i].first - sorted[i - 1].second);
        if (gap > 1e-9 * (1.0 + std::abs(sorted[i].first)))
            throw std::invalid_argument("verify_rubber_band: cover leaves a gap");
    }

    const auto& xs = phi.breakpoints();
    const auto& ms = phi.slopes();
    auto piece_ok = [&](double l, double r) {
        // slopes of all pieces meeting (l, r)
        size_t i0 = static_cast<size_t>(std::upper_bound(xs.begin(), xs.end(), l) - xs.begin());
        size_t i1 = static_cast<size_t>(std::lower_bound(xs.begin(), xs.end(), r) - xs.begin());
        for (size_t i = i0; i <= i1; ++i) {
            const double m = std::abs(ms[i]);
            if (m > K * (1.0 + 1e-12) || m < 1.0 / K * (1.0 - 1e-12)) return false;
        }
        return true;
    };
    for (const auto& [l, r] : sorted)
        if (!piece_ok(l, r)) return false;

    // the global scan over the cover span certifies the same constant
    const double lo = sorted.front().first, hi = sorted.back().second;
    if (!piece_ok(lo, hi)) return false;
    return true;
}

} // namespace bsgeom::quasisim
