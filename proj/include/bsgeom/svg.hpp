#pragma once

#include <bsgeom/nadic.hpp>

#include <string>

namespace bsgeom::svg {

/// Upper half-plane picture of a plane leaf: the horostrip band 1 <= y <= n,
/// the ideal triangle (x, y, +infinity), and its barycenter.
std::string leaf_picture(long n, double x, double y);

/// Depth-bounded truncation of T_n below a root clone.
std::string tree_picture(const nadic::Clone& root, int depth);

} // namespace bsgeom::svg
