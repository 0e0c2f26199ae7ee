#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klrr/klr.hpp"

namespace klrr {

// A local branching of the layered KLR system: one source monomial and two
// rewriting steps out of it. Critical branchings come from genuine pattern
// overlaps; indexed ones carry a plugged normal-form context.
struct KlrBranching {
    std::string family;  // e.g. "beta/beta", "indexed:dots"
    LayeredMonomial source;
    KlrRules::Redex left;
    KlrRules::Redex right;
};

enum class JoinStatus { Joined, NotJoinedWithinFuel };

struct JoinVerdict {
    JoinStatus status;
    size_t left_steps = 0;
    size_t right_steps = 0;
};

// All critical branchings over the datum with overlap windows up to
// max_strands strands, plus the right-indexed families with plugged dots
// (and dotted crossings) up to dot_index_bound.
std::vector<KlrBranching> enumerate_critical(const CartanDatum& datum, int max_strands,
                                             int dot_index_bound);

JoinVerdict check_join(const KlrRules& rules, const KlrBranching& b, size_t fuel = 10000);

// Generic-n closure of the right-indexed families of Appendix-style plugs:
// the dot multiplicity is carried as a formal parameter, identity
// correction sums over a+b = n-1 are kept as formal range sums, and both
// arms are normalized symbolically. Returns an error string on failure.
std::optional<std::string> check_indexed_symbolic(const CartanDatum& datum);

}  // namespace klrr
