#include <bsgeom/treespace.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bsgeom::treespace {

using nadic::CloneRelation;

TreePoint::TreePoint(Clone parent, nadic::Digit child, double t)
    : parent_(std::move(parent)), child_(child), t_(t) {
    const double ln = std::log(static_cast<double>(parent_.base()));
    if (t_ < 0.0 || t_ >= ln) throw std::invalid_argument("edge offset out of [0, log n)");
    if (child_ < 0 || child_ >= parent_.base()) throw std::invalid_argument("child digit out of range");
    if (t_ == 0.0) child_ = 0;
}

TreePoint TreePoint::vertex(const Clone& c) { return TreePoint(c, 0, 0.0); }

TreePoint TreePoint::on_line(const NAdic& zeta, double height) {
    const double ln = std::log(static_cast<double>(zeta.base()));
    const double kf = height / ln;
    long k = std::lround(kf);
    if (std::abs(kf - static_cast<double>(k)) < 1e-9)
        return vertex(Clone::containing(zeta, k));
    k = static_cast<long>(std::floor(kf));
    const double t = height - static_cast<double>(k) * ln;
    return TreePoint(Clone::containing(zeta, k), zeta.digit(k + 1), t);
}

Clone TreePoint::lower_clone() const {
    return at_vertex() ? parent_ : parent_.child(child_);
}

double TreePoint::height() const {
    return static_cast<double>(parent_.height()) * std::log(static_cast<double>(base())) + t_;
}

bool TreePoint::operator==(const TreePoint& o) const {
    return parent_ == o.parent_ && child_ == o.child_ && t_ == o.t_;
}

bool on_ancestor_path(const TreePoint& u, const TreePoint& v) {
    if (u.base() != v.base()) throw std::invalid_argument("base mismatch");
    const auto& cu = u.parent_vertex();
    const auto& cv = v.parent_vertex();
    if (u.at_vertex()) {
        // vertex u lies on v's upward path iff it is an ancestor of v's chain
        const auto r = relation(cu, cv);
        return r == CloneRelation::Equal || r == CloneRelation::ProperSuper;
    }
    // edge-interior u: its edge [cu, child] must be traversed by v's path
    if (cu == cv)
        return !v.at_vertex() && u.child_digit() == v.child_digit() && u.offset() <= v.offset();
    const auto r = relation(u.lower_clone(), cv);
    return r == CloneRelation::Equal || r == CloneRelation::ProperSuper;
}

double tree_dist(const TreePoint& u, const TreePoint& v) {
    if (u.base() != v.base()) throw std::invalid_argument("base mismatch");
    const double ln = std::log(static_cast<double>(u.base()));
    const double hu = u.height();
    const double hv = v.height();

    if (on_ancestor_path(u, v) || on_ancestor_path(v, u)) return std::abs(hu - hv);

    const auto& cu = u.parent_vertex();
    const auto& cv = v.parent_vertex();
    // the junction of the two upward paths
    Clone j = meet(cu, cv);
    const double hj = static_cast<double>(j.height()) * ln;
    return (hu - hj) + (hv - hj);
}

LineDistance line_distance(const NAdic& z1, const NAdic& z2) {
    auto k = nadic::agreement_index(z1, z2);
    if (!k) throw std::invalid_argument("line_distance requires distinct ends");
    return LineDistance{Clone::containing(z1, *k), nadic::Radius::power(z1.base(), -*k)};
}

Clone kappa_vertex(const NAdic& eta, const NAdic& zeta) {
    auto k = nadic::agreement_index(eta, zeta);
    if (!k) throw std::invalid_argument("kappa_vertex requires distinct ends");
    return Clone::containing(eta, *k);
}

namespace {

void dot_rec(std::ostringstream& os, const Clone& c, int depth) {
    if (depth <= 0) return;
    for (const auto& ch : c.children()) {
        os << "  \"" << c.to_string() << "\" -> \"" << ch.to_string() << "\";\n";
        dot_rec(os, ch, depth - 1);
    }
}

void json_rec(std::ostringstream& os, const Clone& c, int depth) {
    os << "{\"clone\":\"" << c.to_string() << "\",\"h\":" << c.height();
    if (depth > 0) {
        os << ",\"children\":[";
        bool first = true;
        for (const auto& ch : c.children()) {
            if (!first) os << ',';
            first = false;
            json_rec(os, ch, depth - 1);
        }
        os << ']';
    }
    os << '}';
}

} // namespace

std::string subtree_dot(const Clone& root, int depth) {
    std::ostringstream os;
    os << "digraph Tn {\n";
    dot_rec(os, root, depth);
    os << "}\n";
    return os.str();
}

std::string subtree_json(const Clone& root, int depth) {
    std::ostringstream os;
    json_rec(os, root, depth);
    return os.str();
}

} // namespace bsgeom::treespace
