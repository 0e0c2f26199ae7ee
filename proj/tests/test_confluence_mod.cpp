#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "klrr/confluence_mod.hpp"

using namespace klrr;

namespace {
CartanDatum a2() { return CartanDatum::simply_laced({"i", "j"}, {{"i", "j"}}); }
CartanDatum sl2() { return CartanDatum::simply_laced({"i"}, {}); }
const Field Q = Field::rationals();
}  // namespace

TEST_CASE("sl2 branchings modulo close and decrease") {
    auto d = sl2();
    PivotalRules rules(d, Q);
    auto bs = enumerate_critical_modulo(d, 2, Q);
    REQUIRE(!bs.empty());
    std::map<std::string, int> fams;
    int checked = 0;
    for (const auto& b : bs) {
        auto v = check_join_modulo(rules, b);
        INFO(b.family << " at " << b.source.key() << " [" << b.left.rule << b.left.position
                      << " vs " << b.right.rule << b.right.position << "]");
        CHECK(v.joined);
        CHECK(v.decreasing);
        fams[b.family]++;
        ++checked;
    }
    CHECK(checked > 20);
    // the eight pairings are all represented
    for (const char* f : {"pair:CA", "pair:FA", "pair:BD", "pair:ED", "pair:BF", "pair:CE",
                          "pair:EF", "pair:FE"})
        CHECK(fams.count(f));
    CHECK(fams.count("iso:beta-F"));
    CHECK(fams.count("fish-dot:A"));
}

TEST_CASE("A2 branchings modulo close") {
    auto d = a2();
    PivotalRules rules(d, Q);
    auto bs = enumerate_critical_modulo(d, 1, Q);
    REQUIRE(!bs.empty());
    std::map<std::string, int> fams;
    for (const auto& b : bs) {
        auto v = check_join_modulo(rules, b);
        INFO(b.family << " at " << b.source.key() << " [" << b.left.rule << b.left.position
                      << " vs " << b.right.rule << b.right.position << "]");
        CHECK(v.joined);
        CHECK(v.decreasing);
        fams[b.family]++;
    }
    CHECK(fams.count("iso:gamma-F"));
}
