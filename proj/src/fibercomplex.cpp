#include <bsgeom/fibercomplex.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsgeom::fibercomplex {

using nadic::CloneRelation;

double h2_dist(const H2Point& z1, const H2Point& z2) {
    if (z1.y <= 0.0 || z2.y <= 0.0) throw std::invalid_argument("h2_dist: y must be positive");
    const double dx = z1.x - z2.x;
    const double dy = z1.y - z2.y;
    // cosh d - 1 = (dx^2 + dy^2) / (2 y1 y2) = 2 sinh^2(d/2)
    const double q = (dx * dx + dy * dy) / (4.0 * z1.y * z2.y);
    return 2.0 * std::asinh(std::sqrt(q));
}

FiberPoint::FiberPoint(H2Point hyp, TreePoint tree) : hyp_(hyp), tree_(std::move(tree)) {
    if (hyp_.y <= 0.0) throw std::invalid_argument("FiberPoint: y must be positive");
    const double h = std::log(hyp_.y);
    if (std::abs(h - tree_.height()) > 1e-9)
        throw std::invalid_argument("FiberPoint: fiber condition h(hyp) = h(tree) violated");
}

FiberPoint FiberPoint::on_leaf(const NAdic& zeta, double x, double height) {
    return FiberPoint(H2Point{x, std::exp(height)}, TreePoint::on_line(zeta, height));
}

double FiberPoint::height() const { return tree_.height(); }

TreePoint act_tree_point(const bsgroup::AffElem& g, const TreePoint& u) {
    const Clone pv = g.act_tree(u.parent_vertex());
    if (u.at_vertex()) return TreePoint::vertex(pv);
    const Clone cv = g.act_tree(u.lower_clone());
    return TreePoint(pv, cv.digit(cv.height()), u.offset());
}

FiberPoint act(const bsgroup::AffElem& g, const FiberPoint& pt) {
    const auto z = g.act_H2(std::pair<double, double>{pt.hyp().x, pt.hyp().y});
    return FiberPoint(H2Point{z.first, z.second}, act_tree_point(g, pt.tree()));
}

std::optional<Clone> common_plane(const FiberPoint& a, const FiberPoint& b) {
    const Clone ca = a.tree().lower_clone();
    const Clone cb = b.tree().lower_clone();
    switch (relation(ca, cb)) {
        case CloneRelation::Equal:
        case CloneRelation::ProperSub: return ca;
        case CloneRelation::ProperSuper: return cb;
        case CloneRelation::Disjoint: return std::nullopt;
    }
    return std::nullopt;
}

long leaf_intersection_exponent(const NAdic& z1, const NAdic& z2) {
    const auto k = nadic::agreement_index(z1, z2);
    if (!k) throw std::invalid_argument("distinct ends required");
    return *k;
}

namespace {

// golden-section minimization on [lo, hi]
template <typename F>
double golden_min(F&& f, double lo, double hi, double tol, int max_iter, double& arg) {
    const double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    if (fc < fd) {
        arg = c;
        return fc;
    }
    arg = d;
    return fd;
}

} // namespace

DistBounds dist_bounds(const FiberPoint& a, const FiberPoint& b, const OptimizerConfig& cfg) {
    DistBounds res;
    const double dp = h2_dist(a.hyp(), b.hyp());
    const double dq = treespace::tree_dist(a.tree(), b.tree());
    res.lo = std::max(dp, dq);

    if (common_plane(a, b)) {
        // the shared leaf is isometric to H^2 and p restricts to that isometry
        res.common_plane = true;
        res.hi = dp;
        return res;
    }

    // two-leg path through the shared horodisc exterior {height <= h(meet)}
    const Clone m = meet(a.tree().lower_clone(), b.tree().lower_clone());
    const double ln = std::log(static_cast<double>(a.base()));
    const double y0 = std::exp(static_cast<double>(m.height()) * ln);

    const H2Point p1 = a.hyp();
    const H2Point p2 = b.hyp();
    auto legsum = [&](double zx, double zy) {
        const H2Point z{zx, zy};
        return h2_dist(p1, z) + h2_dist(z, p2);
    };

    // coarse grid on the boundary horocycle, then coordinate refinement
    const double xlo = std::min(p1.x, p2.x) - (std::abs(p1.x - p2.x) + p1.y + p2.y + y0);
    const double xhi = std::max(p1.x, p2.x) + (std::abs(p1.x - p2.x) + p1.y + p2.y + y0);
    double best_x = xlo, best = legsum(xlo, y0);
    for (int i = 1; i < cfg.grid; ++i) {
        const double zx = xlo + (xhi - xlo) * static_cast<double>(i) / (cfg.grid - 1);
        const double v = legsum(zx, y0);
        if (v < best) {
            best = v;
            best_x = zx;
        }
    }
    const double step = (xhi - xlo) / (cfg.grid - 1);
    double zx = best_x, zy = y0;
    double prev = best;
    for (int round = 0; round < 4; ++round) {
        best = golden_min([&](double t) { return legsum(t, zy); }, zx - step, zx + step,
                          cfg.tol * 0.1, cfg.max_iter, zx);
        // descend in height inside the region (the optimum sits on the
        // boundary unless a leg is degenerate; keep the search faithful to
        // both parameters)
        double lzy;
        best = golden_min([&](double t) { return legsum(zx, std::exp(t)); },
                          std::log(y0) - 40.0, std::log(y0), cfg.tol * 0.1, cfg.max_iter, lzy);
        zy = std::exp(lzy);
        if (std::abs(prev - best) < cfg.tol * 0.5) break;
        prev = best;
    }
    res.hi = best;
    res.converged = res.hi >= res.lo - 1e-9;
    if (res.hi < res.lo) res.hi = res.lo;  // projections certify the floor
    return res;
}

std::vector<DistBounds> dist_bounds_batch(
    const std::vector<std::pair<FiberPoint, FiberPoint>>& pairs, const OptimizerConfig& cfg) {
    std::vector<DistBounds> out(pairs.size());
#ifdef BSGEOM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (long i = 0; i < static_cast<long>(pairs.size()); ++i)
        out[static_cast<size_t>(i)] = dist_bounds(pairs[static_cast<size_t>(i)].first,
                                                  pairs[static_cast<size_t>(i)].second, cfg);
    return out;
}

double barycenter_height_ratio() { return std::sqrt(3.0) / 2.0; }

FiberPoint barycenter_pi(double x, double y, const NAdic& zeta) {
    if (x == y) throw std::invalid_argument("barycenter_pi: x != y required");
    const double mid = 0.5 * (x + y);
    const double h = std::log(barycenter_height_ratio() * std::abs(y - x));
    return FiberPoint::on_leaf(zeta, mid, h);
}

PlanePair barycenter_pi_exact(const Rational& x, const Rational& y) {
    if (x == y) throw std::invalid_argument("barycenter_pi_exact: x != y required");
    Rational span = y - x;
    if (span < 0) span = -span;
    return PlanePair{(x + y) / 2, span};
}

TreeLeafPoint kappa(const Rational& x, const NAdic& eta, const NAdic& zeta) {
    return TreeLeafPoint{x, treespace::kappa_vertex(eta, zeta)};
}

FiberPoint kappa_point(double x, const NAdic& eta, const NAdic& zeta) {
    const Clone v = treespace::kappa_vertex(eta, zeta);
    const double ln = std::log(static_cast<double>(eta.base()));
    const double h = static_cast<double>(v.height()) * ln;
    return FiberPoint(H2Point{x, std::exp(h)}, TreePoint::vertex(v));
}

} // namespace bsgeom::fibercomplex
