#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "klrr/layered.hpp"

using namespace klrr;

namespace {
CartanDatum a2() { return CartanDatum::simply_laced({"i", "j"}, {{"i", "j"}}); }
}  // namespace

TEST_CASE("interchange canonical form") {
    // disjoint layers commute
    LayeredMonomial m1({0, 0, 0}, {{1, Gen::Dot}, {3, Gen::Dot}});
    LayeredMonomial m2({0, 0, 0}, {{3, Gen::Dot}, {1, Gen::Dot}});
    CHECK(m1.key() == m2.key());
    // crossing then far dot slides below
    LayeredMonomial m3({0, 0, 0, 0}, {{1, Gen::Cross}, {3, Gen::Dot}});
    LayeredMonomial m4({0, 0, 0, 0}, {{3, Gen::Dot}, {1, Gen::Cross}});
    CHECK(m3.key() == m4.key());
    // overlapping crossings do not commute
    LayeredMonomial m5({0, 0, 0}, {{1, Gen::Cross}, {2, Gen::Cross}});
    LayeredMonomial m6({0, 0, 0}, {{2, Gen::Cross}, {1, Gen::Cross}});
    CHECK(m5.key() != m6.key());
    CHECK(m5.canonical().layers() == m5.layers());
}

TEST_CASE("canonical form is idempotent and one-move invariant") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + static_cast<int>(rng() % 3);
        std::vector<Vertex> src(n, 0);
        std::vector<Layer> ls;
        int len = static_cast<int>(rng() % 10);
        for (int t = 0; t < len; ++t) {
            if (rng() % 2)
                ls.push_back({1 + static_cast<int>(rng() % n), Gen::Dot});
            else
                ls.push_back({1 + static_cast<int>(rng() % (n - 1)), Gen::Cross});
        }
        LayeredMonomial m(src, ls);
        auto c = m.canonical();
        CHECK(c.canonical().layers() == c.layers());
        // swapping any adjacent commuting pair preserves the class
        for (size_t t = 0; t + 1 < ls.size(); ++t) {
            auto lo = [](const Layer& l) { return l.offset; };
            auto hi = [](const Layer& l) { return l.gen == Gen::Cross ? l.offset + 1 : l.offset; };
            if (lo(ls[t]) <= hi(ls[t + 1]) && lo(ls[t + 1]) <= hi(ls[t])) continue;
            auto swapped = ls;
            std::swap(swapped[t], swapped[t + 1]);
            CHECK(LayeredMonomial(src, swapped).key() == m.key());
        }
    }
}

TEST_CASE("degrees and composition") {
    auto d = a2();
    Vertex i = d.vertex("i"), j = d.vertex("j");
    LayeredMonomial dot({i}, {{1, Gen::Dot}});
    CHECK(dot.degree(d) == 2);
    CHECK(dot.compose_v(dot).degree(d) == 4);
    LayeredMonomial cii({i, i}, {{1, Gen::Cross}});
    CHECK(cii.degree(d) == -2);
    LayeredMonomial cij({i, j}, {{1, Gen::Cross}});
    CHECK(cij.degree(d) == 1);
    CHECK(cij.target() == std::vector<Vertex>{j, i});
    // identity composes trivially
    auto id = LayeredMonomial::identity({i, j});
    CHECK(id.compose_v(cij).key() == cij.key());
    auto hh = dot.compose_h(dot);
    CHECK(hh.strands() == 2);
    CHECK(hh.degree(d) == 4);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        std::vector<Vertex> src;
        for (int t = 0; t < n; ++t) src.push_back(static_cast<Vertex>(rng() % 2));
        auto rand_mono = [&](std::vector<Vertex> s) {
            int k = static_cast<int>(s.size());
            std::vector<Layer> ls;
            int len = static_cast<int>(rng() % 5);
            for (int t = 0; t < len; ++t) {
                if (rng() % 2 || k == 1)
                    ls.push_back({1 + static_cast<int>(rng() % k), Gen::Dot});
                else
                    ls.push_back({1 + static_cast<int>(rng() % (k - 1)), Gen::Cross});
            }
            return LayeredMonomial(s, ls);
        };
        auto m1 = rand_mono(src);
        auto m2 = rand_mono(m1.target());
        CHECK(m1.compose_v(m2).degree(d) == m1.degree(d) + m2.degree(d));
        auto m3 = rand_mono({static_cast<Vertex>(rng() % 2)});
        CHECK(m1.compose_h(m3).degree(d) == m1.degree(d) + m3.degree(d));
    }
}
