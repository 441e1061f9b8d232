#include <bsgeom/reference.hpp>

#include <map>
#include <stdexcept>

namespace bsgeom::reference {

using bsgroup::AffElem;

bsgroup::BallResult ball_serial(long n, int L, const bsgroup::EnumBudget& budget) {
    const AffElem gens[4] = {AffElem::gen_a(n), AffElem::gen_a(n).inverse(),
                             AffElem::gen_b(n), AffElem::gen_b(n).inverse()};

    bsgroup::BallResult res;
    std::map<AffElem, int> visited;  // element -> depth memo
    res.elements.push_back(AffElem::identity(n));
    res.depth.push_back(0);
    visited.emplace(AffElem::identity(n), 0);
    res.counts.push_back(1);

    std::vector<AffElem> frontier = {AffElem::identity(n)};
    for (int d = 1; d <= L; ++d) {
        std::vector<AffElem> next;
        for (const auto& g : frontier) {
            for (const auto& gen : gens) {
                AffElem h = mul(gen, g);  // left multiplication
                if (visited.emplace(h, d).second) {
                    res.elements.push_back(h);
                    res.depth.push_back(d);
                    next.push_back(std::move(h));
                    if (res.elements.size() > budget.max_elements)
                        throw std::runtime_error("ball enumeration budget exceeded");
                }
            }
        }
        res.counts.push_back(res.elements.size());
        frontier = std::move(next);
    }
    return res;
}

} // namespace bsgeom::reference
