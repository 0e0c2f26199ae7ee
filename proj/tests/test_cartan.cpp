#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "klrr/cartan.hpp"

using namespace klrr;

namespace {
CartanDatum a2() { return CartanDatum::simply_laced({"i", "j"}, {{"i", "j"}}); }
CartanDatum a1xa1() { return CartanDatum::simply_laced({"i", "j"}, {}); }
}  // namespace

TEST_CASE("simply laced datum") {
    auto d = a2();
    Vertex i = d.vertex("i"), j = d.vertex("j");
    CHECK(d.dot(i, i) == 2);
    CHECK(d.dot(j, j) == 2);
    CHECK(d.dot(i, j) == -1);
    CHECK(d.dot(j, i) == -1);
    CHECK(a1xa1().dot(0, 1) == 0);
    auto one = CartanDatum::simply_laced({"i"}, {});
    CHECK(one.dot(0, 0) == 2);
    CHECK_THROWS(CartanDatum::simply_laced({"i"}, {{"i", "i"}}));
    CHECK_THROWS(CartanDatum::simply_laced({"i", "j"}, {{"i", "j"}, {"j", "i"}}));
}

TEST_CASE("weight shifts") {
    auto sl2 = CartanDatum::simply_laced({"i"}, {});
    Weight l({0});
    CHECK(l.shifted(+1, 0, sl2).pairing(0) == 2);
    auto d = a2();
    Weight m({3, 1});
    CHECK(m.shifted(+1, d.vertex("i"), d).pairing(d.vertex("j")) == 0);
    auto e = a1xa1();
    Weight k({3, 1});
    CHECK(k.shifted(+1, 0, e).pairing(1) == 1);
    // +alpha_i then -alpha_i is the identity
    CHECK(m.shifted(+1, 0, d).shifted(-1, 0, d) == m);
}

TEST_CASE("enumerate_seq matches the multinomial count") {
    auto d = a2();
    Vertex i = d.vertex("i"), j = d.vertex("j");
    auto seqs = enumerate_seq({{i, 3}, {j, 1}});
    REQUIRE(seqs.size() == 4);
    std::set<std::vector<Vertex>> got(seqs.begin(), seqs.end());
    std::set<std::vector<Vertex>> want = {
        {i, i, i, j}, {i, i, j, i}, {i, j, i, i}, {j, i, i, i}};
    CHECK(got == want);
    CHECK(enumerate_seq({{i, 1}}).size() == 1);
    CHECK(enumerate_seq({{i, 2}, {j, 2}}).size() == 6);
    // exhaustive multinomial check up to total 8 on two letters
    auto fact = [](int n) { long long f = 1; for (int t = 2; t <= n; ++t) f *= t; return f; };
    for (int a = 0; a + 2 <= 8; ++a)
        for (int b = 0; a + b <= 8; ++b) {
            long long expect = fact(a + b) / (fact(a) * fact(b));
            CHECK(static_cast<long long>(enumerate_seq({{i, a}, {j, b}}).size()) == expect);
        }
}

TEST_CASE("coxeter action") {
    std::vector<int> w = {7, 7, 9};
    CHECK(coxeter_action(1, w) == w);  // equal letters
    CHECK(coxeter_action(2, w) == std::vector<int>{7, 9, 7});
    CHECK(coxeter_action(1, coxeter_action(1, w)) == w);
    CHECK_THROWS(coxeter_action(3, w));
    // braid relation s1 s2 s1 = s2 s1 s2 on words of length <= 6
    for (int len = 3; len <= 6; ++len) {
        std::vector<int> v;
        for (int t = 0; t < len; ++t) v.push_back(t * 13 % 7);
        for (int k = 1; k + 1 <= len - 1; ++k) {
            auto lhs = coxeter_action(k, coxeter_action(k + 1, coxeter_action(k, v)));
            auto rhs = coxeter_action(k + 1, coxeter_action(k, coxeter_action(k + 1, v)));
            CHECK(lhs == rhs);
        }
    }
}
