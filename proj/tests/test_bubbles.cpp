#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "klrr/bubbles.hpp"

using namespace klrr;

namespace {
CartanDatum sl2() { return CartanDatum::simply_laced({"i"}, {}); }
const Field Q = Field::rationals();

// independent oracle: coefficients of the inverse power series. With the
// counterclockwise bubbles d_1, d_2, ... treated as free commuting
// variables, the fake clockwise bubble of index a equals [t^a] (1 + sum d_b
// t^b)^(-1): a polynomial with integer coefficients in the d_b.
std::map<std::vector<int>, long long> series_inverse_coeff(int a) {
    // partitions of a with multiplicities: coefficient of prod d_{p} is
    // (-1)^parts * multinomial(parts)
    std::map<std::vector<int>, long long> out;
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int rem, int maxp) {
        if (rem == 0) {
            std::vector<int> key = parts;
            std::sort(key.begin(), key.end());
            long long coeff = 1;
            // number of orderings of the multiset `parts`
            long long fact = 1;
            for (size_t t = 2; t <= parts.size(); ++t) fact *= static_cast<long long>(t);
            std::map<int, int> mult;
            for (int p : parts) mult[p]++;
            long long rep = 1;
            for (auto& [p, c] : mult)
                for (int t = 2; t <= c; ++t) rep *= t;
            coeff = fact / rep;
            if (parts.size() % 2) coeff = -coeff;
            out[key] += coeff;
            return;
        }
        for (int p = std::min(rem, maxp); p >= 1; --p) {
            parts.push_back(p);
            rec(rem - p, p);
            parts.pop_back();
        }
    };
    rec(a, a);
    return out;
}
}  // namespace

TEST_CASE("degree conditions on bubbles") {
    auto d = sl2();
    for (int h = -3; h <= 3; ++h) {
        Weight w({h});
        // clockwise with h-1 dots: identity
        if (h - 1 >= 0) {
            auto p = eval_bubbles({{0, true, h - 1}}, w, d, Q);
            CHECK(p == BubblePoly::monomial(BubbleMonomial{}, Q));
        }
        // clockwise below threshold: zero (real ones only: dots >= 0)
        for (int n = 0; n < h - 1; ++n)
            CHECK(eval_bubbles({{0, true, n}}, w, d, Q).is_zero());
        // counterclockwise below threshold
        for (int n = 0; n < -h - 1; ++n)
            CHECK(eval_bubbles({{0, false, n}}, w, d, Q).is_zero());
        if (-h - 1 >= 0)
            CHECK(eval_bubbles({{0, false, -h - 1}}, w, d, Q) ==
                  BubblePoly::monomial(BubbleMonomial{}, Q));
        // one surviving generator per positive degree 2k
        for (int k = 1; k <= 4; ++k) {
            BubbleSym gen = k <= h ? BubbleSym{0, true, h - 1 + k}
                                   : BubbleSym{0, false, -h - 1 + k};
            auto p = eval_bubbles({gen}, w, d, Q);
            CHECK(p.size() == 1);
            CHECK(p == BubblePoly::monomial(BubbleMonomial{{gen}}, Q));
            // the other orientation at the same degree expands to it
            BubbleSym other = k <= h ? BubbleSym{0, false, -h - 1 + k}
                                     : BubbleSym{0, true, h - 1 + k};
            auto q = eval_bubbles({other}, w, d, Q);
            for (const auto& [key, t] : q.terms())
                for (const auto& f : t.first.factors) {
                    int fidx = f.cw ? f.dots - (h - 1) : f.dots - (-h - 1);
                    CHECK((f.cw ? fidx <= std::max(h, 0) : fidx > std::max(h, 0)));
                }
        }
    }
}

TEST_CASE("clockwise expansion matches the series-inverse oracle") {
    auto d = sl2();
    for (int h = -4; h <= 0; ++h) {
        Weight w({h});
        for (int a = 1; a <= 5; ++a) {
            // fake clockwise bubble of index a (dots = h-1+a < 0)
            auto p = eval_bubbles({{0, true, h - 1 + a}}, w, d, Q);
            auto oracle = series_inverse_coeff(a);
            // compare: each monomial of p is a product of ccw bubbles with
            // indices b = dots + h + 1
            std::map<std::vector<int>, long long> got;
            for (const auto& [k, t] : p.terms()) {
                std::vector<int> idx;
                for (const auto& f : t.first.factors) {
                    REQUIRE(!f.cw);
                    idx.push_back(f.dots + h + 1);
                }
                std::sort(idx.begin(), idx.end());
                REQUIRE(t.second.den() == BigInt(1));
                got[idx] += t.second.num().to_ll();
            }
            CHECK(got == oracle);
        }
    }
}

TEST_CASE("infinite Grassmannian closes") {
    auto d = sl2();
    for (int h = -3; h <= 3; ++h) {
        auto rep = ig_check(h, 6, d, 0, Q);
        CHECK(rep.ok);
    }
    // over F_5 as well
    auto rep5 = ig_check(2, 5, d, 0, Field::fp(5));
    CHECK(rep5.ok);
}

TEST_CASE("bubble products commute and evaluation is order independent") {
    auto d = sl2();
    Weight w({1});
    std::vector<BubbleSym> p1 = {{0, true, 3}, {0, false, -3}, {0, true, -1}};
    std::vector<BubbleSym> p2 = {{0, true, -1}, {0, true, 3}, {0, false, -3}};
    CHECK(eval_bubbles(p1, w, d, Q) == eval_bubbles(p2, w, d, Q));
}
