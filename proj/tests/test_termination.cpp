#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "klrr/klr.hpp"

using namespace klrr;

TEST_CASE("termination certificate holds over A1, A1xA1, A2") {
    for (auto datum : {CartanDatum::simply_laced({"i"}, {}),
                       CartanDatum::simply_laced({"i", "j"}, {}),
                       CartanDatum::simply_laced({"i", "j"}, {{"i", "j"}})}) {
        auto cert = check_termination(datum, 8);
        CHECK(cert.ok());
        bool beta_line = false, gamma_line = false;
        for (const auto& l : cert.lines) {
            CHECK(l.holds_sampled);
            CHECK(l.holds_symbolic);
            if (l.rule == "beta" && l.inequality.find("d(src)=i+j+1 > ") == 0 && l.strict)
                beta_line = true;
            if (l.rule == "gamma" && l.inequality.find("d(src)=2i+j+1 > 2i+j") == 0) gamma_line = true;
        }
        CHECK(beta_line);
        if (datum.rank() > 1) CHECK(gamma_line);
    }
}
