#include "klrr/bubbles.hpp"

#include <algorithm>

namespace klrr {

std::string BubbleMonomial::key() const {
    std::string s = "[";
    for (const auto& b : factors)
        s += std::to_string(b.label) + (b.cw ? "c" : "w") + std::to_string(b.dots) + ";";
    return s + "]";
}

namespace {

void sort_factors(BubbleMonomial& m) {
    std::sort(m.factors.begin(), m.factors.end(), [](const BubbleSym& a, const BubbleSym& b) {
        if (a.label != b.label) return a.label < b.label;
        if (a.cw != b.cw) return a.cw;
        return a.dots < b.dots;
    });
}

// Evaluation of one bubble as a polynomial in the surviving generators.
// In normalized indices (cw: a = dots - (h-1), ccw: b = dots - (-h-1)) the
// degree conditions read: index < 0 gives zero, index 0 the identity. Per
// positive degree exactly one generator survives: the clockwise bubble for
// indices up to max(h,0) (its counterclockwise partner is fake there) and
// the counterclockwise one above. Everything else expands through
//   c_a = - sum_{l=1}^{a} c_{a-l} d_l     (and symmetrically for d_b),
// the recursion behind the infinite Grassmannian relation.
BubblePoly eval_one(const BubbleSym& s, int h, const CartanDatum& datum, Field f) {
    BubblePoly zero(f);
    int idx = s.cw ? s.dots - (h - 1) : s.dots - (-h - 1);
    if (idx < 0) return zero;
    if (idx == 0) return BubblePoly::monomial(BubbleMonomial{}, f);
    bool keep = s.cw ? idx <= std::max(h, 0) : idx > std::max(h, 0);
    if (keep) {
        BubbleMonomial m{{s}};
        return BubblePoly::monomial(m, f);
    }
    BubblePoly acc(f);
    for (int l = 1; l <= idx; ++l) {
        BubbleSym same{s.label, s.cw, s.dots - l};
        BubbleSym other{s.label, !s.cw, (s.cw ? -h - 1 : h - 1) + l};
        BubblePoly a = eval_one(same, h, datum, f);
        BubblePoly b = eval_one(other, h, datum, f);
        for (const auto& [ka, ta] : a.terms())
            for (const auto& [kb, tb] : b.terms()) {
                BubbleMonomial m = ta.first;
                m.factors.insert(m.factors.end(), tb.first.factors.begin(),
                                 tb.first.factors.end());
                sort_factors(m);
                acc.add_term(m, ta.second * tb.second);
            }
    }
    return acc.scaled(Scalar::of_int(-1, f));
}

}  // namespace

BubblePoly eval_bubbles(const std::vector<BubbleSym>& product, const Weight& w,
                        const CartanDatum& datum, Field field) {
    BubblePoly acc = BubblePoly::monomial(BubbleMonomial{}, field);
    for (const auto& s : product) {
        BubblePoly p = eval_one(s, w.pairing(s.label), datum, field);
        BubblePoly next(field);
        for (const auto& [ka, ta] : acc.terms())
            for (const auto& [kb, tb] : p.terms()) {
                BubbleMonomial m = ta.first;
                m.factors.insert(m.factors.end(), tb.first.factors.begin(),
                                 tb.first.factors.end());
                sort_factors(m);
                next.add_term(m, ta.second * tb.second);
            }
        acc = next;
    }
    return acc;
}

IgReport ig_check(int h, int alpha_max, const CartanDatum& datum, Vertex i, Field field) {
    IgReport rep;
    std::vector<int> pair(datum.rank(), 0);
    pair[i] = h;
    Weight w(pair);
    for (int a = 1; a <= alpha_max; ++a) {
        BubblePoly total(field);
        for (int l = 0; l <= a; ++l) {
            std::vector<BubbleSym> prod = {{i, true, h - 1 + a - l}, {i, false, -h - 1 + l}};
            total = total + eval_bubbles(prod, w, datum, field);
        }
        bool ok = total.is_zero();
        rep.ok &= ok;
        rep.lines.push_back("alpha=" + std::to_string(a) + " h=" + std::to_string(h) + ": " +
                            (ok ? "0" : total.str()));
    }
    return rep;
}

}  // namespace klrr
