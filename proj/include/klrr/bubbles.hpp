#pragma once

#include <map>
#include <string>
#include <vector>

#include "klrr/cartan.hpp"
#include "klrr/lincomb.hpp"

namespace klrr {

// One dotted bubble symbol in a fixed region. Negative dot counts are fake
// bubbles: formal symbols expanded through the infinite Grassmannian
// recursion, never stored in normal forms.
struct BubbleSym {
    Vertex label;
    bool cw;
    int dots;
};

// Multiset of real positive-degree bubbles, canonically ordered.
struct BubbleMonomial {
    std::vector<BubbleSym> factors;  // sorted

    std::string key() const;
    bool operator==(const BubbleMonomial& o) const { return key() == o.key(); }
};

// Formal linear combination of real-bubble monomials in one region.
using BubblePoly = LinComb<BubbleMonomial>;

// Evaluates a product of (possibly fake) bubbles in a region of weight w:
// degree-zero bubbles become the identity, negative-degree bubbles zero,
// fake bubbles expand recursively; the result contains only real bubbles of
// positive degree.
BubblePoly eval_bubbles(const std::vector<BubbleSym>& product, const Weight& w,
                        const CartanDatum& datum, Field field);

// The restricted infinite Grassmannian relation: for each 0 < a <= alpha_max
// the convolution sum of clockwise and counterclockwise bubbles at total
// index a evaluates to zero.
struct IgReport {
    bool ok = true;
    std::vector<std::string> lines;
};
IgReport ig_check(int h_pairing, int alpha_max, const CartanDatum& datum, Vertex i, Field field);

}  // namespace klrr
