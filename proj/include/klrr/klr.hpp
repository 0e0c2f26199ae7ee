#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klrr/engine.hpp"
#include "klrr/layered.hpp"
#include "klrr/lincomb.hpp"

namespace klrr {

// The oriented KLR rules on layered monomials:
//   alphaL : cross@k ; dot@k     => dot@(k+1) ; cross@k  (+ identity if labels equal)
//   alphaR : cross@k ; dot@(k+1) => dot@k ; cross@k      (- identity if labels equal)
//   beta   : cross@k ; cross@k   => 0 / identity / dotted identities by i.j
//   gamma  : cross@k ; cross@k+1 ; cross@k => other bracketing (+ identity when i=k, i.j=-1)
class KlrRules {
public:
    using Monomial = LayeredMonomial;

    struct Redex {
        std::string rule;      // "alphaL" | "alphaR" | "beta" | "gamma"
        std::string position;  // printable
        std::vector<size_t> layer_idx;
        int offset;
    };

    KlrRules(const CartanDatum& datum, Field field) : datum_(&datum), field_(field) {}

    const CartanDatum& datum() const { return *datum_; }
    Field field() const { return field_; }

    std::vector<Redex> find_redexes(const LayeredMonomial& m) const;
    LinComb<LayeredMonomial> apply(const LayeredMonomial& m, const Redex& r) const;

    LinComb<LayeredMonomial> normal_form(const LinComb<LayeredMonomial>& u,
                                         Strategy strategy = Strategy::FirstRedex) const;

private:
    const CartanDatum* datum_;
    Field field_;

    // Splice `replacement` in place of the pattern layers (given by indices
    // into m's layer list), producing a canonical monomial.
    LayeredMonomial splice(const LayeredMonomial& m, const std::vector<size_t>& pattern,
                           const std::vector<Layer>& replacement) const;
};

// Termination certificate data per Guiraud-Malbos derivations: the 2-functor
// X transports strand values upward, the derivation d sums crossing
// contributions. The certificate records the per-rule inequalities, checked
// on a sampled grid and via their symbolic affine forms.
struct CertLine {
    std::string rule;
    std::string inequality;  // rendered, e.g. "d(src)=i+j+1 > 0=d(tgt)"
    bool strict;
    bool holds_sampled;
    bool holds_symbolic;
};

struct DerivationCert {
    std::vector<CertLine> lines;
    int violations = 0;
    bool ok() const { return violations == 0; }
};

DerivationCert check_termination(const CartanDatum& datum, int sample_bound = 8);

// All normal-form monomials from src to tgt with degree <= max_degree,
// ordered by (degree, canonical key). src and tgt must lie in a common
// Seq(V) (same multiset of vertices).
std::vector<LayeredMonomial> enumerate_basis(const CartanDatum& datum,
                                             const std::vector<Vertex>& src,
                                             const std::vector<Vertex>& tgt, int max_degree);

int graded_dimension(const CartanDatum& datum, const std::vector<Vertex>& src,
                     const std::vector<Vertex>& tgt, int degree);

// Independent oracle: spans all generator words of length <= cap with the
// given interfaces and degree, normal-forms them and ranks the span.
int oracle_graded_dimension(const CartanDatum& datum, const std::vector<Vertex>& src,
                            const std::vector<Vertex>& tgt, int degree, int word_length_cap,
                            Field field);

// Same oracle, one sweep over the word space for a whole degree window.
std::map<int, int> oracle_graded_dimensions(const CartanDatum& datum,
                                            const std::vector<Vertex>& src,
                                            const std::vector<Vertex>& tgt, int min_degree,
                                            int max_degree, int word_length_cap, Field field);

// Cap sufficient for every basis element of degree <= d over V-words.
int oracle_cap(const CartanDatum& datum, int strands, int degree);

}  // namespace klrr
