#include <bsgeom/treespace.hpp>

#include <doctest.h>

#include "testutil.hpp"

#include <cmath>
#include <map>
#include <queue>
#include <vector>

using namespace bsgeom;
using namespace bsgeom::nadic;
using namespace bsgeom::treespace;
using testutil::Rng;

namespace {

// brute-force meet: enumerate ancestors of both and take the lowest common one
Clone brute_meet(Clone c, Clone d, int max_up = 64) {
    std::vector<Clone> anc_c{c}, anc_d{d};
    for (int t = 0; t < max_up; ++t) anc_c.push_back(anc_c.back().parent());
    for (int t = 0; t < max_up; ++t) anc_d.push_back(anc_d.back().parent());
    const Clone* best = nullptr;
    for (const auto& x : anc_c)
        for (const auto& y : anc_d)
            if (x == y && (!best || x.height() > best->height())) best = &x;
    REQUIRE(best != nullptr);
    return *best;
}

// BFS distance (edge count) on the depth-bounded truncation below root
std::map<std::string, int> bfs_from(const Clone& root, const Clone& src, int depth) {
    std::map<std::string, std::vector<Clone>> adj;
    std::queue<std::pair<Clone, int>> build;
    build.push({root, 0});
    while (!build.empty()) {
        auto [c, d] = build.front();
        build.pop();
        if (d == depth) continue;
        for (const auto& ch : c.children()) {
            adj[c.to_string()].push_back(ch);
            adj[ch.to_string()].push_back(c);
            build.push({ch, d + 1});
        }
    }
    std::map<std::string, int> dist;
    std::queue<Clone> q;
    dist[src.to_string()] = 0;
    q.push(src);
    while (!q.empty()) {
        Clone c = q.front();
        q.pop();
        for (const auto& nb : adj[c.to_string()])
            if (!dist.count(nb.to_string())) {
                dist[nb.to_string()] = dist[c.to_string()] + 1;
                q.push(nb);
            }
    }
    return dist;
}

} // namespace

TEST_CASE("parent and children") {
    const Clone v0 = Clone::standard(2);
    const auto ch = v0.children();
    REQUIRE(ch.size() == 2);
    CHECK(ch[0] == Clone::all_zero(2, 1));
    CHECK(ch[1].digit(1) == 1);
    for (const auto& c : ch) {
        CHECK(c.parent() == v0);
        CHECK(c.height() == v0.height() + 1);
        CHECK(relation(v0, c) == CloneRelation::ProperSuper);
    }
}

TEST_CASE("meet") {
    Rng rng(7);
    const Clone v0 = Clone::standard(3);
    CHECK(meet(v0, v0) == v0);
    const auto ch = v0.children();
    CHECK(meet(ch[0], ch[2]) == v0);
    for (int t = 0; t < 200; ++t) {
        const Clone c = testutil::random_clone(rng, 2, -8, 8);
        const Clone d = testutil::random_clone(rng, 2, -8, 8);
        const Clone m = meet(c, d);
        CHECK(m == brute_meet(c, d));
        const auto rc = relation(m, c);
        const auto rd = relation(m, d);
        CHECK((rc == CloneRelation::Equal || rc == CloneRelation::ProperSuper));
        CHECK((rd == CloneRelation::Equal || rd == CloneRelation::ProperSuper));
    }
}

TEST_CASE("tree_dist") {
    const double ln2 = std::log(2.0);

    SUBCASE("identity and single edges") {
        const Clone v0 = Clone::standard(2);
        const TreePoint u = TreePoint::vertex(v0);
        CHECK(tree_dist(u, u) == 0.0);
        CHECK(tree_dist(u, TreePoint::vertex(v0.parent())) == doctest::Approx(ln2));
        CHECK(tree_dist(TreePoint::vertex(v0.parent()), u) == doctest::Approx(ln2));
    }

    SUBCASE("vertex pairs match the BFS oracle on a depth-6 truncation") {
        const Clone root = Clone::standard(2);
        std::vector<Clone> verts{root};
        for (size_t i = 0; i < verts.size(); ++i)
            if (verts[i].height() < root.height() + 6)
                for (const auto& c : verts[i].children()) verts.push_back(c);
        Rng rng(99);
        for (int t = 0; t < 120; ++t) {
            const Clone& a = verts[static_cast<size_t>(rng.range(0, static_cast<long>(verts.size()) - 1))];
            const Clone& b = verts[static_cast<size_t>(rng.range(0, static_cast<long>(verts.size()) - 1))];
            const auto d = bfs_from(root, a, 6);
            REQUIRE(d.count(b.to_string()));
            CHECK(tree_dist(TreePoint::vertex(a), TreePoint::vertex(b)) ==
                  doctest::Approx(d.at(b.to_string()) * ln2).epsilon(1e-12));
        }
    }

    SUBCASE("edge-interior points and metric axioms") {
        Rng rng(3);
        auto random_point = [&](long n) {
            const Clone c = testutil::random_clone(rng, n, -4, 4);
            const double t = rng.flip() ? 0.0 : rng.unit() * std::log(static_cast<double>(n)) * 0.999;
            const int digit = static_cast<int>(rng.range(0, n - 1));
            return TreePoint(c, t == 0.0 ? 0 : digit, t);
        };
        for (int t = 0; t < 400; ++t) {
            const TreePoint u = random_point(2);
            const TreePoint v = random_point(2);
            const TreePoint w = random_point(2);
            const double duv = tree_dist(u, v);
            const double dvw = tree_dist(v, w);
            const double duw = tree_dist(u, w);
            CHECK(duv >= 0.0);
            CHECK(duv == doctest::Approx(tree_dist(v, u)));
            CHECK(duw <= duv + dvw + 1e-12);
            if (u == v) CHECK(duv == 0.0);
        }
        // four-point condition on sampled quadruples
        for (int t = 0; t < 300; ++t) {
            const TreePoint x = random_point(2), y = random_point(2), z = random_point(2),
                            w = random_point(2);
            const double a = tree_dist(x, y) + tree_dist(z, w);
            const double b = tree_dist(x, z) + tree_dist(y, w);
            const double c = tree_dist(x, w) + tree_dist(y, z);
            double m1 = std::max({a, b, c});
            double m2 = a + b + c - m1 - std::min({a, b, c});
            CHECK(m1 <= m2 + 1e-9);
        }
    }
}

TEST_CASE("line_distance") {
    Rng rng(17);

    SUBCASE("agrees with the n-adic metric") {
        for (int t = 0; t < 1000; ++t) {
            const long n = rng.flip() ? 2 : 5;
            const NAdic z1 = testutil::random_nadic(rng, n);
            const NAdic z2 = testutil::random_nadic(rng, n);
            if (z1 == z2) continue;
            const auto ld = line_distance(z1, z2);
            CHECK(ld.value == dist(z1, z2));
            CHECK(ld.divergence_vertex.contains(z1));
            CHECK(ld.divergence_vertex.contains(z2));
            // swapping arguments changes nothing
            const auto ld2 = line_distance(z2, z1);
            CHECK(ld2.divergence_vertex == ld.divergence_vertex);
            CHECK(ld2.value == ld.value);
        }
    }

    SUBCASE("0 and 1 in Q_2 diverge at height -1 with d = 2") {
        const auto ld = line_distance(NAdic::zero(2), NAdic::from_integer(2, 1));
        CHECK(ld.divergence_vertex.height() == -1);
        CHECK(ld.value == Radius::power(2, 1));
    }

    SUBCASE("equal ends are rejected") {
        CHECK_THROWS_AS(line_distance(NAdic::zero(2), NAdic::zero(2)), std::invalid_argument);
    }
}

TEST_CASE("kappa_vertex") {
    Rng rng(29);

    SUBCASE("height identity h(kappa) = -log d") {
        for (int t = 0; t < 1000; ++t) {
            const long n = rng.flip() ? 2 : 7;
            const NAdic eta = testutil::random_nadic(rng, n);
            const NAdic zeta = testutil::random_nadic(rng, n);
            if (eta == zeta) continue;
            const Clone v = kappa_vertex(eta, zeta);
            const Radius d = dist(eta, zeta);
            // h_c(v) * log n + log(n^{-h_c(v)}) = 0, checked on exponents
            CHECK(v.height() == -d.e);
            CHECK(kappa_vertex(zeta, eta) == v);
        }
    }

    SUBCASE("0 and 1/2 in Q_2 meet at height -2") {
        const Clone v = kappa_vertex(NAdic::zero(2), NAdic::from_rational(2, BigInt(1), 1));
        CHECK(v.height() == -2);
    }
}

TEST_CASE("vertical lines and tree points") {
    const VerticalLine line(NAdic::from_rational(2, BigInt(3), 1));  // 3/2
    for (long k = -4; k < 4; ++k) {
        CHECK(line.clone_at(k + 1).parent() == line.clone_at(k));
        CHECK(line.clone_at(k).contains(line.end()));
    }
    CHECK(Clone::standard(2).height() == 0);

    const TreePoint p = TreePoint::on_line(line.end(), 0.0);
    CHECK(p.at_vertex());
    CHECK(p.height() == doctest::Approx(0.0));
    const TreePoint q = TreePoint::on_line(line.end(), 1.0);
    CHECK(q.height() == doctest::Approx(1.0));
    CHECK(q.parent_vertex() == line.clone_at(1));
    CHECK(tree_dist(p, q) == doctest::Approx(1.0));
}

TEST_CASE("exports") {
    const auto dot = subtree_dot(Clone::standard(2), 2);
    CHECK(dot.find("digraph") != std::string::npos);
    size_t edges = 0;
    for (size_t pos = 0; (pos = dot.find("->", pos)) != std::string::npos; ++pos) ++edges;
    CHECK(edges == 6);  // 2 children + 4 grandchildren
    const auto js = subtree_json(Clone::standard(2), 1);
    CHECK(js.find("children") != std::string::npos);
}
