#pragma once

#include <bsgeom/bsgroup.hpp>

namespace bsgeom::reference {

/// Serial reference for the Cayley-ball enumeration: memoized BFS with an
/// ordered-map visited set (comparison-based, no hashing) expanding by left
/// multiplication. Kept independent of the parallel kernel so the two can be
/// checked against each other and benchmarked.
bsgroup::BallResult ball_serial(long n, int L, const bsgroup::EnumBudget& budget = {});

} // namespace bsgeom::reference
