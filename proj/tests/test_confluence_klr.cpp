#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "klrr/confluence_klr.hpp"

using namespace klrr;

namespace {
CartanDatum a2() { return CartanDatum::simply_laced({"i", "j"}, {{"i", "j"}}); }
const Field Q = Field::rationals();
}  // namespace

TEST_CASE("critical branchings cover the six families") {
    auto d = a2();
    auto branchings = enumerate_critical(d, 4, 2);
    std::map<std::string, int> fams;
    for (const auto& b : branchings) fams[b.family]++;
    // a) two dots on a crossing
    CHECK(fams.count("alphaL/alphaR"));
    // b) triple crossings
    CHECK(fams.count("beta/beta"));
    // c) dots against double crossings
    CHECK((fams.count("alphaL/beta") || fams.count("beta/alphaL")));
    CHECK((fams.count("alphaR/beta") || fams.count("beta/alphaR")));
    // d) double Yang-Baxter
    CHECK(fams.count("gamma/gamma"));
    // e) Yang-Baxter against crossings
    CHECK((fams.count("beta/gamma") || fams.count("gamma/beta")));
    // f) Yang-Baxter with dots
    CHECK((fams.count("alphaL/gamma") || fams.count("gamma/alphaL")));
    CHECK((fams.count("alphaR/gamma") || fams.count("gamma/alphaR")));
    // indexed families present
    CHECK(fams.count("indexed:dots^1"));
    CHECK(fams.count("indexed:dotcross^0"));
    CHECK(fams.count("indexed:dotcross^2"));
}

TEST_CASE("every critical branching joins") {
    auto d = a2();
    KlrRules rules(d, Q);
    auto branchings = enumerate_critical(d, 4, 3);
    REQUIRE(!branchings.empty());
    for (const auto& b : branchings) {
        auto v = check_join(rules, b);
        CHECK(v.status == JoinStatus::Joined);
    }
}

TEST_CASE("Peiffer and additive branchings join automatically") {
    auto d = a2();
    KlrRules rules(d, Q);
    std::mt19937 rng(5);
    int peiffer_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Vertex> src;
        int n = 4 + static_cast<int>(rng() % 2);
        for (int t = 0; t < n; ++t) src.push_back(static_cast<Vertex>(rng() % 2));
        std::vector<Layer> ls;
        for (int t = 0; t < 6; ++t) {
            if (rng() % 3 == 0)
                ls.push_back({1 + static_cast<int>(rng() % n), Gen::Dot});
            else
                ls.push_back({1 + static_cast<int>(rng() % (n - 1)), Gen::Cross});
        }
        LayeredMonomial m = LayeredMonomial(src, ls).canonical();
        auto rx = rules.find_redexes(m);
        for (size_t a = 0; a < rx.size(); ++a)
            for (size_t b = a + 1; b < rx.size(); ++b) {
                std::set<size_t> sa(rx[a].layer_idx.begin(), rx[a].layer_idx.end());
                bool disjoint = true;
                for (size_t idx : rx[b].layer_idx) disjoint &= !sa.count(idx);
                if (!disjoint) continue;
                ++peiffer_seen;
                KlrBranching br{"peiffer", m, rx[a], rx[b]};
                CHECK(check_join(rules, br).status == JoinStatus::Joined);
            }
        // additive: two support monomials of a combination rewritten in
        // either order give the same collected result
        if (!rx.empty()) {
            LayeredMonomial other({src}, {});
            auto u = LinComb<LayeredMonomial>::monomial(m, Q) +
                     LinComb<LayeredMonomial>::monomial(other, Q);
            auto r1 = normalize(rules, u, Strategy::FirstRedex);
            auto r2 = normalize(rules, u, Strategy::LastRedex);
            CHECK(r1.result == r2.result);
        }
    }
    CHECK(peiffer_seen > 0);
}

TEST_CASE("indexed families close symbolically in n") {
    auto err = check_indexed_symbolic(a2());
    if (err) FAIL_CHECK(*err);
    auto err2 = check_indexed_symbolic(CartanDatum::simply_laced({"i", "j"}, {}));
    if (err2) FAIL_CHECK(*err2);
}
