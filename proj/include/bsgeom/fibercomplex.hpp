#pragma once

#include <bsgeom/bsgroup.hpp>
#include <bsgeom/nadic.hpp>
#include <bsgeom/treespace.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace bsgeom::fibercomplex {

using nadic::Clone;
using nadic::NAdic;
using treespace::TreePoint;

struct H2Point {
    double x = 0.0;
    double y = 1.0;  // > 0
};

// upper half-plane distance, ds^2 = (dx^2 + dy^2)/y^2
double h2_dist(const H2Point& z1, const H2Point& z2);

/// A point of X_n in fiber-product coordinates: an H^2 point and a tree
/// point at the same height (log y = h(tree)).
class FiberPoint {
public:
    FiberPoint(H2Point hyp, TreePoint tree);
    static FiberPoint on_leaf(const NAdic& zeta, double x, double height);

    const H2Point& hyp() const { return hyp_; }
    const TreePoint& tree() const { return tree_; }
    double height() const;
    long base() const { return tree_.base(); }

private:
    H2Point hyp_;
    TreePoint tree_;
};

inline H2Point proj_p(const FiberPoint& pt) { return pt.hyp(); }
inline TreePoint proj_q(const FiberPoint& pt) { return pt.tree(); }
inline double height(const FiberPoint& pt) { return pt.height(); }

// group action on the fiber coordinates
TreePoint act_tree_point(const bsgroup::AffElem& g, const TreePoint& u);
FiberPoint act(const bsgroup::AffElem& g, const FiberPoint& pt);

/// When the two tree positions lie on a common vertical line, the family of
/// plane leaves through both points is exactly the set of ends of the smaller
/// pinned clone; returns that clone (empty otherwise).
std::optional<Clone> common_plane(const FiberPoint& a, const FiberPoint& b);

// intersection height of the leaves of two distinct ends, as the exact
// combinatorial exponent: the horodisc exterior boundary sits at k log n
long leaf_intersection_exponent(const NAdic& z1, const NAdic& z2);

struct OptimizerConfig {
    int grid = 64;          // coarse samples per parameter
    double tol = 1e-9;      // absolute tolerance on hi
    int max_iter = 200;
};

struct DistBounds {
    double lo = 0.0;
    double hi = 0.0;
    bool common_plane = false;
    bool converged = true;
};

/// Certified distance bounds in X_n. lo comes from the 1-Lipschitz
/// projections; hi from the leaf metric (shared leaf) or a two-leg path
/// through the shared horodisc exterior, minimized numerically.
DistBounds dist_bounds(const FiberPoint& a, const FiberPoint& b,
                       const OptimizerConfig& cfg = {});

// OpenMP-parallel batch; results identical to per-pair calls
std::vector<DistBounds> dist_bounds_batch(
    const std::vector<std::pair<FiberPoint, FiberPoint>>& pairs,
    const OptimizerConfig& cfg = {});

// barycenter height ratio of the ideal triangle (x, y, +infinity):
// the perpendicular from the vertex x to the vertical side at y is the
// semicircle about y of radius r = |x - y|; over the midline (x+y)/2 it
// stands at height sqrt(r^2 - (r/2)^2) = (sqrt(3)/2) r
double barycenter_height_ratio();

/// Barycenter of the ideal triangle (x, y, +infinity) in the plane leaf of
/// zeta.
FiberPoint barycenter_pi(double x, double y, const NAdic& zeta);

// exact carrier of the barycenter: the H^2 point is (mid, c * span)
struct PlanePair {
    Rational mid;
    Rational span;  // > 0
};
PlanePair barycenter_pi_exact(const Rational& x, const Rational& y);

/// Median of the ideal tree triangle (-infinity, eta, zeta) in the tree leaf
/// labeled x: the divergence vertex, carried with the exact leaf label.
struct TreeLeafPoint {
    Rational x;
    Clone vertex;
};
TreeLeafPoint kappa(const Rational& x, const NAdic& eta, const NAdic& zeta);
FiberPoint kappa_point(double x, const NAdic& eta, const NAdic& zeta);

} // namespace bsgeom::fibercomplex
