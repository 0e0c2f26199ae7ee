#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klrr/bubbles.hpp"
#include "klrr/engine.hpp"
#include "klrr/planar.hpp"

namespace klrr {

// The rewriting system on pivotal diagrams modulo isotopy. Isotopy cells
// are quotiented structurally by PlanarMonomial; the R-rules below act on
// the quotient:
//   alpha : a dot crosses a vertex from an out-arc to the in-arc of its
//           strand, with a smoothing correction when the labels agree
//   beta  : parallel bigon elimination (0 / identity / dotted identities)
//   gamma : triangle flip, with the iji correction
//   EF    : antiparallel bigon elimination with the cap-bubble-cup sums
//   AD    : curl elimination into a join with dotted bubbles
//   bub   : bubble normalization (degree conditions + infinite
//           Grassmannian, through eval_bubbles)
//   slide : bubble slides across an adjacent strand (loop-prone)
class PivotalRules {
public:
    using Monomial = PlanarMonomial;

    struct Redex {
        std::string rule;
        std::string position;
        bool loop_prone = false;
        int tau_delta = 0;  // change of the crossing-count weight
        // payload
        std::vector<int> crossings;
        int arc = -1;
        int port = -1;
        int bubble = -1;
        int dart_arc = -1, dart_end = -1;  // slides: segment crossed
    };

    PivotalRules(const CartanDatum& datum, Field field);

    const CartanDatum& datum() const { return *datum_; }
    Field field() const { return field_; }

    std::vector<Redex> find_redexes(const PlanarMonomial& m) const;
    LinComb<PlanarMonomial> apply(const PlanarMonomial& m, const Redex& r) const;

    // monomial-level isotopy+bubble normalization: evaluates every stored
    // bubble through eval_bubbles (no-op on designated generators)
    LinComb<PlanarMonomial> eval_monomial_bubbles(const PlanarMonomial& m) const;

private:
    const CartanDatum* datum_;
    Field field_;
};

// weight function of the quasi-termination argument: crossings count 3
int tau_weight(const PlanarMonomial& m);
template <typename M>
int tau_weight(const LinComb<M>& u) {
    int best = 0;
    for (const auto& [k, t] : u.terms()) best = std::max(best, tau_weight(t.first));
    return best;
}

struct QnfResult {
    LinComb<PlanarMonomial> result;
    StepTrace trace;
    bool fuel_exhausted = false;
    size_t steps = 0;
};

// Quasi-normal form: tau-decreasing steps first, then non-loop-prone rules,
// then designated loop-prone slides (bubbles toward the rightmost region);
// cycles cut by a memo on canonical encodings.
QnfResult quasi_normal_form(const PivotalRules& rules, LinComb<PlanarMonomial> u,
                            size_t fuel = 10000);

// whether every redex still applicable on the support is loop-prone
bool only_loop_prone_left(const PivotalRules& rules, const LinComb<PlanarMonomial>& u);

// convenience builders for rule sources used by tests and the confluence
// suite (bottom word and recipe notation as in build_planar)
PlanarMonomial make_planar(const CartanDatum& datum, const Weight& lambda,
                           const std::vector<SignedLabel>& bottom, const Recipe& recipe);

}  // namespace klrr
