#pragma once

#include <bsgeom/nadic.hpp>

#include <string>
#include <vector>

namespace bsgeom::treespace {

using nadic::Clone;
using nadic::NAdic;

/// A point of the tree T_n, realized over clones: offset t in [0, log n)
/// along the edge from `parent` toward the child with the given digit.
/// t = 0 is the vertex itself; the child digit is then normalized to 0.
/// Height h = h_c(parent) * log n + t.
class TreePoint {
public:
    TreePoint(Clone parent, nadic::Digit child, double t);

    static TreePoint vertex(const Clone& c);
    // the point of the vertical line of zeta at the given height
    static TreePoint on_line(const NAdic& zeta, double height);

    const Clone& parent_vertex() const { return parent_; }
    nadic::Digit child_digit() const { return child_; }
    double offset() const { return t_; }
    bool at_vertex() const { return t_ == 0.0; }

    // the clone pinned by the point: the child clone on an edge interior,
    // the vertex clone itself at a vertex
    Clone lower_clone() const;

    long base() const { return parent_.base(); }
    double height() const;

    bool operator==(const TreePoint& o) const;
    bool operator!=(const TreePoint& o) const { return !(*this == o); }

private:
    Clone parent_;
    nadic::Digit child_;
    double t_;
};

/// Geodesic distance in T_n (edges have length log n). The geodesic rises
/// from each point to the meet of their clone chains; when one point lies on
/// the other's ancestor path the distance degenerates to the height gap.
double tree_dist(const TreePoint& u, const TreePoint& v);

// true when u lies on the closed upward (ancestor) path from v
bool on_ancestor_path(const TreePoint& u, const TreePoint& v);

/// A vertical line of T_n: the positively asymptotic end zeta, realized
/// lazily as the nested clone chain k -> clone_containing(zeta, k).
class VerticalLine {
public:
    explicit VerticalLine(NAdic zeta) : zeta_(std::move(zeta)) {}
    const NAdic& end() const { return zeta_; }
    Clone clone_at(long k) const { return Clone::containing(zeta_, k); }
    TreePoint point_at_height(double h) const { return TreePoint::on_line(zeta_, h); }

private:
    NAdic zeta_;
};

struct LineDistance {
    Clone divergence_vertex;
    nadic::Radius value;  // e^{-h(v)} = n^{-h_c(v)}
};

// d(L, L') = e^{-h(v)} at the divergence vertex of the two vertical lines
LineDistance line_distance(const NAdic& z1, const NAdic& z2);

// the meet vertex of the vertical lines of eta and zeta; the combinatorial
// core of the tree median map
Clone kappa_vertex(const NAdic& eta, const NAdic& zeta);

// depth-bounded truncation exports
std::string subtree_dot(const Clone& root, int depth);
std::string subtree_json(const Clone& root, int depth);

} // namespace bsgeom::treespace
