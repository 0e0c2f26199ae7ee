#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "klrr/lincomb.hpp"

namespace klrr {

enum class NormalizeStatus { NormalForm, FuelExhausted, CycleDetected };

enum class Strategy { FirstRedex, LastRedex };

struct StepRecord {
    std::string rule;
    std::string position;
    std::string pre_hash;
    std::string post_hash;
};

using StepTrace = std::vector<StepRecord>;

inline std::string state_hash(const std::string& s) {
    return std::to_string(std::hash<std::string>{}(s));
}

template <typename M>
struct NormalizeResult {
    LinComb<M> result;
    NormalizeStatus status = NormalizeStatus::NormalForm;
    StepTrace trace;
    size_t steps = 0;
};

// One rewriting step on a linear combination: u = c*m + h with m not in
// supp(h) (automatic: u is collected), replaced by c*rhs + h.
template <typename M>
LinComb<M> replace_monomial(const LinComb<M>& u, const M& m, const LinComb<M>& rhs) {
    Scalar c = u.coeff(m);
    if (c.is_zero()) throw std::invalid_argument("monomial not in support");
    LinComb<M> r = u;
    r.add_term(m, Scalar::zero(u.field()) - c);
    return r + rhs.scaled(c);
}

// Leftmost-innermost style normalization driven by a rule set.
//
// RS must provide:
//   using Monomial = ...;
//   struct Redex { std::string rule, position; ... };
//   std::vector<Redex> find_redexes(const Monomial&) const;   (deterministic order)
//   LinComb<Monomial> apply(const Monomial&, const Redex&) const;
template <typename RS>
NormalizeResult<typename RS::Monomial> normalize(const RS& rules,
                                                 LinComb<typename RS::Monomial> u,
                                                 Strategy strategy = Strategy::FirstRedex,
                                                 size_t fuel = 10000,
                                                 size_t memo_cap = 100000) {
    using M = typename RS::Monomial;
    NormalizeResult<M> out;
    std::set<std::string> seen;
    seen.insert(u.str());
    for (size_t step = 0; step < fuel; ++step) {
        bool applied = false;
        auto mons = u.support();
        if (strategy == Strategy::LastRedex) std::reverse(mons.begin(), mons.end());
        for (const M& m : mons) {
            auto redexes = rules.find_redexes(m);
            if (redexes.empty()) continue;
            const auto& rx = strategy == Strategy::FirstRedex ? redexes.front() : redexes.back();
            LinComb<M> rhs = rules.apply(m, rx);
            std::string pre = state_hash(u.str());
            u = replace_monomial(u, m, rhs);
            out.trace.push_back({rx.rule, rx.position, pre, state_hash(u.str())});
            ++out.steps;
            applied = true;
            break;
        }
        if (!applied) {
            out.result = u;
            out.status = NormalizeStatus::NormalForm;
            return out;
        }
        std::string h = u.str();
        if (!seen.insert(h).second) {
            out.result = u;
            out.status = NormalizeStatus::CycleDetected;
            return out;
        }
        if (seen.size() > memo_cap) seen.clear();
    }
    out.result = u;
    out.status = NormalizeStatus::FuelExhausted;
    return out;
}

}  // namespace klrr
