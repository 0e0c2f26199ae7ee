#include "klrr/confluence_klr.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <cstdlib>
#include <cstdio>

namespace klrr {

namespace {

struct Pattern {
    std::string rule;
    std::vector<Layer> layers;  // at base offset 1
};

std::vector<Pattern> lhs_patterns() {
    return {
        {"alphaL", {{1, Gen::Cross}, {1, Gen::Dot}}},
        {"alphaR", {{1, Gen::Cross}, {2, Gen::Dot}}},
        {"beta", {{1, Gen::Cross}, {1, Gen::Cross}}},
        {"gamma", {{1, Gen::Cross}, {2, Gen::Cross}, {1, Gen::Cross}}},
    };
}

// Interleave P and Q (Q shifted by delta strands) sharing at least one
// layer; emits every merged layer list.
void merge_patterns(const std::vector<Layer>& P, const std::vector<Layer>& Q, int delta,
                    std::vector<std::vector<Layer>>& out) {
    std::vector<Layer> cur;
    std::function<void(size_t, size_t, int)> rec = [&](size_t p, size_t q, int shared) {
        if (p == P.size() && q == Q.size()) {
            if (shared > 0) out.push_back(cur);
            return;
        }
        if (p < P.size()) {
            cur.push_back(P[p]);
            rec(p + 1, q, shared);
            cur.pop_back();
        }
        if (q < Q.size()) {
            Layer l = Q[q];
            l.offset += delta;
            cur.push_back(l);
            rec(p, q + 1, shared);
            cur.pop_back();
        }
        if (p < P.size() && q < Q.size() && Q[q].gen == P[p].gen &&
            Q[q].offset + delta == P[p].offset) {
            cur.push_back(P[p]);
            rec(p + 1, q + 1, shared + 1);
            cur.pop_back();
        }
    };
    rec(0, 0, 0);
}

std::string redex_id(const KlrRules::Redex& r) {
    std::string s = r.rule + ":";
    for (size_t i : r.layer_idx) s += std::to_string(i) + ".";
    return s;
}

}  // namespace

std::vector<KlrBranching> enumerate_critical(const CartanDatum& datum, int max_strands,
                                             int dot_index_bound) {
    KlrRules rules(datum, Field::rationals());
    std::vector<KlrBranching> out;
    std::set<std::string> seen;

    auto harvest = [&](const LayeredMonomial& m, bool require_cover, const std::string& tag) {
        auto rx = rules.find_redexes(m);
        for (size_t a = 0; a < rx.size(); ++a)
            for (size_t b = a + 1; b < rx.size(); ++b) {
                std::set<size_t> covered(rx[a].layer_idx.begin(), rx[a].layer_idx.end());
                size_t na = covered.size();
                covered.insert(rx[b].layer_idx.begin(), rx[b].layer_idx.end());
                bool shares = na + rx[b].layer_idx.size() > covered.size();
                if (!shares) continue;  // disjoint: a Peiffer branching
                if (require_cover && covered.size() != m.layers().size()) continue;
                std::string id1 = redex_id(rx[a]), id2 = redex_id(rx[b]);
                if (id2 < id1) std::swap(id1, id2);
                if (!seen.insert(m.key() + "|" + id1 + "|" + id2).second) continue;
                std::string family = tag.empty() ? rx[a].rule + "/" + rx[b].rule : tag;
                out.push_back({family, m, rx[a], rx[b]});
            }
    };

    auto all_labels = [&](const std::vector<Layer>& ls, int strands, bool require_cover,
                          const std::string& family) {
        int nlabels = datum.rank();
        std::vector<Vertex> word(strands, 0);
        std::function<void(int)> rec = [&](int t) {
            if (t == strands) {
                harvest(LayeredMonomial(word, ls).canonical(), require_cover, family);
                return;
            }
            for (int v = 0; v < nlabels; ++v) {
                word[t] = v;
                rec(t + 1);
            }
        };
        rec(0);
    };

    auto pats = lhs_patterns();
    for (const auto& P : pats)
        for (const auto& Q : pats)
            for (int delta = -3; delta <= 3; ++delta) {
                std::vector<std::vector<Layer>> merges;
                merge_patterns(P.layers, Q.layers, delta, merges);
                for (auto merged : merges) {
                    int lo = 1 << 20, hi = 0;
                    for (const Layer& l : merged) {
                        lo = std::min(lo, l.offset);
                        hi = std::max(hi, l.offset + (l.gen == Gen::Cross ? 1 : 0));
                    }
                    int strands = hi - lo + 1;
                    if (strands > max_strands) continue;
                    for (Layer& l : merged) l.offset -= lo - 1;
                    all_labels(merged, strands, true, "");
                }
            }

    // right-indexed families: the double Yang-Baxter overlap with a plugged
    // normal-form context (dots, or a dotted crossing) inside the window
    for (int n = 0; n <= dot_index_bound; ++n) {
        std::vector<Layer> ls = {{1, Gen::Cross}, {2, Gen::Cross}, {1, Gen::Cross}};
        for (int t = 0; t < n; ++t) ls.push_back({3, Gen::Dot});
        std::vector<Layer> tail = {{2, Gen::Cross}, {1, Gen::Cross}};
        auto with_tail = ls;
        with_tail.insert(with_tail.end(), tail.begin(), tail.end());
        if (n > 0 && 3 <= max_strands)
            all_labels(with_tail, 3, false, "indexed:dots^" + std::to_string(n));
        auto crossed = ls;
        crossed.push_back({3, Gen::Cross});
        crossed.insert(crossed.end(), tail.begin(), tail.end());
        if (4 <= max_strands)
            all_labels(crossed, 4, false, "indexed:dotcross^" + std::to_string(n));
    }
    return out;
}

JoinVerdict check_join(const KlrRules& rules, const KlrBranching& b, size_t fuel) {
    Field f = rules.field();
    auto u = LinComb<LayeredMonomial>::monomial(b.source, f);
    auto left = replace_monomial(u, b.source, rules.apply(b.source, b.left));
    auto right = replace_monomial(u, b.source, rules.apply(b.source, b.right));
    auto nl = normalize(rules, left, Strategy::FirstRedex, fuel);
    auto nr = normalize(rules, right, Strategy::FirstRedex, fuel);
    JoinVerdict v;
    v.left_steps = nl.steps;
    v.right_steps = nr.steps;
    bool ok = nl.status == NormalizeStatus::NormalForm && nr.status == NormalizeStatus::NormalForm &&
              nl.result == nr.result;
    v.status = ok ? JoinStatus::Joined : JoinStatus::NotJoinedWithinFuel;
    return v;
}

// ---------------------------------------------------------------------------
// Symbolic check of the right-indexed families, uniform in the dot count n.
//
// Dot multiplicities are affine expressions cn*n + ca*a + c; a term may
// carry a binder summing a over [0, n-1+hi]. The derived cells
// alpha^{L,n} / alpha^{R,n} introduce the bound sums; comparing the two
// arms reindexes binders and emits boundary instantiations.

namespace {

struct DotExpr {
    int cn = 0, ca = 0, c = 0;
    bool operator==(const DotExpr& o) const { return cn == o.cn && ca == o.ca && c == o.c; }
    bool is_zero() const { return cn == 0 && ca == 0 && c == 0; }
    DotExpr subst_a(const DotExpr& val) const {
        return DotExpr{cn + ca * val.cn, 0, c + ca * val.c};
    }
    DotExpr shift_a(int delta) const { return DotExpr{cn, ca, c + ca * delta}; }
    int eval(int n, int a) const { return cn * n + ca * a + c; }
    std::string str() const {
        std::string s;
        if (cn) s += std::to_string(cn) + "n";
        if (ca) s += (s.empty() ? "" : "+") + std::to_string(ca) + "a";
        if (c || s.empty()) s += (s.empty() ? "" : "+") + std::to_string(c);
        return s;
    }
};

struct SymLayer {
    int offset;
    Gen gen;
    DotExpr mult;  // dot groups only
};

struct SymMono {
    std::vector<Vertex> src;
    std::vector<SymLayer> layers;
};

struct SymTerm {
    long long coeff;
    SymMono mono;
    bool bound = false;
    int hi = 0;  // binder upper end is n-1+hi
};

using SymSum = std::vector<SymTerm>;

int sup_lo(const SymLayer& l) { return l.offset; }
int sup_hi(const SymLayer& l) { return l.gen == Gen::Cross ? l.offset + 1 : l.offset; }
bool sym_overlap(const SymLayer& x, const SymLayer& y) {
    return sup_lo(x) <= sup_hi(y) && sup_lo(y) <= sup_hi(x);
}

std::vector<Vertex> sym_word_below(const SymMono& m, size_t k) {
    std::vector<Vertex> w = m.src;
    for (size_t t = 0; t < k; ++t)
        if (m.layers[t].gen == Gen::Cross) std::swap(w[m.layers[t].offset - 1], w[m.layers[t].offset]);
    return w;
}

bool sym_reaches(const std::vector<SymLayer>& ls, size_t a, size_t z);

// the word seen by an adjacent pattern: non-dependent in-between layers
// slide below it first
std::vector<Vertex> sym_word_at(const SymMono& m, const std::vector<size_t>& pat) {
    std::vector<Vertex> w = sym_word_below(m, pat.front());
    std::set<size_t> inpat(pat.begin(), pat.end());
    for (size_t z = pat.front() + 1; z < pat.back(); ++z)
        if (!inpat.count(z) && !sym_reaches(m.layers, pat.front(), z) &&
            m.layers[z].gen == Gen::Cross)
            std::swap(w[m.layers[z].offset - 1], w[m.layers[z].offset]);
    return w;
}

SymMono sym_canonical(SymMono m) {
    // drop empty dot groups, merge mergeable groups, Cartier-Foata order
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<SymLayer> ls;
        for (const auto& l : m.layers)
            if (!(l.gen == Gen::Dot && l.mult.is_zero())) ls.push_back(l);
        if (ls.size() != m.layers.size()) changed = true;
        m.layers = ls;
        for (size_t a = 0; a < m.layers.size() && !changed; ++a) {
            if (m.layers[a].gen != Gen::Dot) continue;
            for (size_t b = a + 1; b < m.layers.size() && !changed; ++b) {
                if (m.layers[b].gen == Gen::Dot && m.layers[b].offset == m.layers[a].offset) {
                    bool clear = true;
                    for (size_t t = a + 1; t < b; ++t)
                        if (sym_overlap(m.layers[t], m.layers[a])) clear = false;
                    if (!clear) break;
                    m.layers[a].mult.cn += m.layers[b].mult.cn;
                    m.layers[a].mult.ca += m.layers[b].mult.ca;
                    m.layers[a].mult.c += m.layers[b].mult.c;
                    m.layers.erase(m.layers.begin() + b);
                    changed = true;
                } else if (sym_overlap(m.layers[b], m.layers[a])) {
                    break;
                }
            }
        }
    }
    size_t n = m.layers.size();
    std::vector<int> level(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < i; ++j)
            if (sym_overlap(m.layers[i], m.layers[j])) level[i] = std::max(level[i], level[j] + 1);
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (level[a] != level[b]) return level[a] < level[b];
        return m.layers[a].offset < m.layers[b].offset;
    });
    std::vector<SymLayer> sorted;
    for (size_t i : order) sorted.push_back(m.layers[i]);
    m.layers = sorted;
    return m;
}

std::string sym_key(const SymMono& mono) {
    SymMono m = sym_canonical(mono);
    std::string s = "S[";
    for (Vertex v : m.src) s += std::to_string(v) + ",";
    s += "|";
    for (const auto& l : m.layers) {
        s += l.gen == Gen::Dot ? "d" : "x";
        s += std::to_string(l.offset);
        if (l.gen == Gen::Dot) s += "{" + l.mult.str() + "}";
        s += ";";
    }
    return s + "]";
}

void sym_add(SymSum& sum, SymTerm t) {
    if (t.coeff == 0) return;
    t.mono = sym_canonical(t.mono);
    std::string k = sym_key(t.mono) + (t.bound ? "|B" + std::to_string(t.hi) : "");
    for (auto& u : sum) {
        std::string uk = sym_key(u.mono) + (u.bound ? "|B" + std::to_string(u.hi) : "");
        if (uk == k) {
            u.coeff += t.coeff;
            return;
        }
    }
    sum.push_back(std::move(t));
}

void sym_compact(SymSum& sum) {
    SymSum out;
    for (auto& t : sum) sym_add(out, t);
    sum.clear();
    for (auto& t : out)
        if (t.coeff != 0) sum.push_back(t);
}

struct SymReach {
    size_t lo, len;
    std::vector<std::vector<bool>> reach;
    SymReach(const std::vector<SymLayer>& ls, size_t a, size_t c) : lo(a), len(c - a + 1) {
        reach.assign(len, std::vector<bool>(len, false));
        for (size_t t = 0; t < len; ++t) reach[t][t] = true;
        for (size_t t = 0; t < len; ++t)
            for (size_t s = t + 1; s < len; ++s)
                if (sym_overlap(ls[a + t], ls[a + s]))
                    for (size_t r = 0; r <= t; ++r)
                        if (reach[r][t]) reach[r][s] = true;
    }
    bool operator()(size_t x, size_t y) const { return reach[x - lo][y - lo]; }
};

bool sym_reaches(const std::vector<SymLayer>& ls, size_t a, size_t z) {
    return SymReach(ls, a, z)(a, z);
}

bool sym_adjacent(const std::vector<SymLayer>& ls, const std::vector<size_t>& pat) {
    for (size_t t = 0; t + 1 < pat.size(); ++t)
        if (!sym_overlap(ls[pat[t]], ls[pat[t + 1]])) return false;
    size_t a = pat.front(), c = pat.back();
    SymReach r(ls, a, c);
    std::set<size_t> inpat(pat.begin(), pat.end());
    for (size_t z = a + 1; z < c; ++z)
        if (!inpat.count(z) && r(a, z) && r(z, c)) return false;
    return true;
}

SymMono sym_splice(const SymMono& m, const std::vector<size_t>& pat,
                   const std::vector<SymLayer>& repl) {
    const auto& ls = m.layers;
    size_t a = pat.front(), c = pat.back();
    SymReach r(ls, a, c);
    std::set<size_t> drop(pat.begin(), pat.end());
    SymMono res;
    res.src = m.src;
    for (size_t t = 0; t < a; ++t) res.layers.push_back(ls[t]);
    for (size_t t = a + 1; t < c; ++t)
        if (!drop.count(t) && !r(a, t)) res.layers.push_back(ls[t]);
    for (const auto& x : repl) res.layers.push_back(x);
    for (size_t t = a + 1; t < c; ++t)
        if (!drop.count(t) && r(a, t)) res.layers.push_back(ls[t]);
    for (size_t t = c + 1; t < ls.size(); ++t) res.layers.push_back(ls[t]);
    return res;
}

// apply gamma at a chosen pattern; used to seed the two arms
SymSum sym_apply_gamma(const CartanDatum& datum, const SymMono& mono,
                       const std::vector<size_t>& pat) {
    SymMono m = sym_canonical(mono);
    if (!sym_adjacent(m.layers, pat)) throw std::runtime_error("gamma pattern not adjacent");
    int k = m.layers[pat[0]].offset;
    std::vector<Vertex> w = sym_word_at(m, pat);
    Vertex li = w[k - 1], lj = w[k], lk = w[k + 1];
    SymSum out;
    out.push_back({1,
                   sym_splice(m, pat,
                              {{k + 1, Gen::Cross, {}}, {k, Gen::Cross, {}}, {k + 1, Gen::Cross, {}}}),
                   false, 0});
    if (li == lk && datum.dot(li, lj) == -1) out.push_back({1, sym_splice(m, pat, {}), false, 0});
    return out;
}

// one leftmost rewriting step on a term; pushes the results (or the term
// itself when it is a normal form) onto out
bool sym_step(const CartanDatum& datum, const SymTerm& term, SymSum& out) {
    SymMono m = sym_canonical(term.mono);
    const auto& ls = m.layers;
    for (size_t a = 0; a < ls.size(); ++a) {
        if (ls[a].gen != Gen::Cross) continue;
        int k = ls[a].offset;
        for (size_t b = a + 1; b < ls.size(); ++b) {
            if (ls[b].gen != Gen::Cross || ls[b].offset != k) continue;
            if (!sym_adjacent(ls, {a, b})) continue;
            std::vector<Vertex> w = sym_word_at(m, {a, b});
            Vertex li = w[k - 1], lj = w[k];
            if (li == lj) return true;  // beta to zero
            if (datum.dot(li, lj) == 0) {
                SymTerm t = term;
                t.mono = sym_splice(m, {a, b}, {});
                out.push_back(t);
            } else {
                SymTerm t1 = term, t2 = term;
                t1.mono = sym_splice(m, {a, b}, {{k, Gen::Dot, {0, 0, 1}}});
                t2.mono = sym_splice(m, {a, b}, {{k + 1, Gen::Dot, {0, 0, 1}}});
                out.push_back(t1);
                out.push_back(t2);
            }
            return true;
        }
        for (size_t b = a + 1; b < ls.size(); ++b) {
            if (ls[b].gen != Gen::Cross || ls[b].offset != k + 1) continue;
            for (size_t c = b + 1; c < ls.size(); ++c) {
                if (ls[c].gen != Gen::Cross || ls[c].offset != k) continue;
                if (!sym_adjacent(ls, {a, b, c})) continue;
                for (auto& t : sym_apply_gamma(datum, m, {a, b, c})) {
                    t.coeff *= term.coeff;
                    t.bound = term.bound;
                    t.hi = term.hi;
                    out.push_back(t);
                }
                return true;
            }
        }
        for (size_t b = a + 1; b < ls.size(); ++b) {
            if (ls[b].gen != Gen::Dot) continue;
            bool isL = ls[b].offset == k, isR = ls[b].offset == k + 1;
            if (!isL && !isR) continue;
            if (!sym_adjacent(ls, {a, b})) continue;
            std::vector<Vertex> w = sym_word_at(m, {a, b});
            Vertex li = w[k - 1], lj = w[k];
            DotExpr e = ls[b].mult;
            int sign = isL ? +1 : -1;
            SymTerm slid = term;
            slid.mono = sym_splice(m, {a, b},
                                   {{isL ? k + 1 : k, Gen::Dot, e}, {k, Gen::Cross, {}}});
            out.push_back(slid);
            if (li == lj) {
                if (e.ca != 0)
                    throw std::runtime_error("nested binder needed (alpha on a bound dot group)");
                if (e.cn == 0) {
                    for (int p = 0; p + 1 <= e.c; ++p) {
                        SymTerm t = term;
                        t.coeff *= sign;
                        t.mono = sym_splice(m, {a, b},
                                            {{k, Gen::Dot, {0, 0, p}},
                                             {k + 1, Gen::Dot, {0, 0, e.c - 1 - p}}});
                        out.push_back(t);
                    }
                } else if (e.cn == 1) {
                    if (term.bound) throw std::runtime_error("nested binder");
                    SymTerm t = term;
                    t.coeff *= sign;
                    t.bound = true;
                    t.hi = e.c;
                    t.mono = sym_splice(m, {a, b},
                                        {{k, Gen::Dot, {0, 1, 0}},
                                         {k + 1, Gen::Dot, {1, -1, e.c - 1}}});
                    out.push_back(t);
                } else {
                    throw std::runtime_error("unsupported symbolic multiplicity " + e.str());
                }
            }
            return true;
        }
    }
    out.push_back(term);
    return false;
}

SymSum sym_normalize(const CartanDatum& datum, SymSum sum, size_t fuel = 4000) {
    for (size_t step = 0; step < fuel; ++step) {
        sym_compact(sum);
        bool fired = false;
        SymSum out;
        for (auto& t : sum) {
            if (fired) {
                out.push_back(t);
            } else {
                fired = sym_step(datum, t, out);
            }
        }
        sum = std::move(out);
        if (!fired) {
            sym_compact(sum);
            return sum;
        }
    }
    throw std::runtime_error("symbolic normalization fuel exhausted");
}

SymSum sym_difference(SymSum lhs, const SymSum& rhs) {
    for (auto t : rhs) {
        t.coeff = -t.coeff;
        lhs.push_back(t);
    }
    sym_compact(lhs);
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t i = 0; i < lhs.size() && !progress; ++i) {
            if (!lhs[i].bound) continue;
            for (size_t j = 0; j < lhs.size() && !progress; ++j) {
                if (i == j || !lhs[j].bound || lhs[i].hi != lhs[j].hi) continue;
                for (int delta = -3; delta <= 3 && !progress; ++delta) {
                    if (delta == 0) continue;
                    SymMono shifted = lhs[j].mono;
                    for (auto& l : shifted.layers)
                        if (l.gen == Gen::Dot) l.mult = l.mult.shift_a(delta);
                    if (sym_key(shifted) != sym_key(lhs[i].mono)) continue;
                    long long cj = lhs[j].coeff;
                    int hi = lhs[j].hi;
                    SymMono base = lhs[j].mono;
                    lhs[j].mono = shifted;
                    auto emit = [&](DotExpr aval, long long coeff) {
                        SymTerm t;
                        t.coeff = coeff;
                        t.bound = false;
                        t.hi = 0;
                        t.mono = base;
                        for (auto& l : t.mono.layers)
                            if (l.gen == Gen::Dot) l.mult = l.mult.subst_a(aval);
                        lhs.push_back(t);
                    };
                    // replacing sum_{a=0}^{n-1+hi} g(a) by sum g(a+delta)
                    // leaves the boundary terms of the shifted range
                    if (delta > 0) {
                        for (int t = 0; t < delta; ++t) {
                            emit(DotExpr{0, 0, t}, cj);
                            emit(DotExpr{1, 0, hi + t}, -cj);
                        }
                    } else {
                        for (int t = 1; t <= -delta; ++t) {
                            emit(DotExpr{0, 0, -t}, -cj);
                            emit(DotExpr{1, 0, hi - t}, cj);
                        }
                    }
                    sym_compact(lhs);
                    progress = true;
                }
            }
        }
    }
    sym_compact(lhs);
    return lhs;
}

LinComb<LayeredMonomial> sym_instantiate(const SymSum& sum, int n, Field f) {
    LinComb<LayeredMonomial> out(f);
    for (const auto& t : sum) {
        int ahi = t.bound ? n - 1 + t.hi : 0;
        for (int a = 0; a <= ahi; ++a) {
            std::vector<Layer> ls;
            bool valid = true;
            for (const auto& l : t.mono.layers) {
                if (l.gen == Gen::Cross) {
                    ls.push_back({l.offset, Gen::Cross});
                } else {
                    int mult = l.mult.eval(n, a);
                    if (mult < 0) valid = false;
                    for (int c = 0; c < mult && valid; ++c) ls.push_back({l.offset, Gen::Dot});
                }
            }
            if (!valid) throw std::runtime_error("negative dot multiplicity at n=" +
                                                 std::to_string(n));
            out.add_term(LayeredMonomial(t.mono.src, ls).canonical(), Scalar::of_int(t.coeff, f));
        }
    }
    return out;
}

std::optional<std::string> check_one_indexed(const CartanDatum& datum,
                                             const std::vector<Vertex>& word, bool plug_cross,
                                             const std::string& name) {
    SymMono src;
    src.src = word;
    src.layers = {{1, Gen::Cross, {}}, {2, Gen::Cross, {}}, {1, Gen::Cross, {}}};
    src.layers.push_back({3, Gen::Dot, {1, 0, 0}});
    if (plug_cross) src.layers.push_back({3, Gen::Cross, {}});
    src.layers.push_back({2, Gen::Cross, {}});
    src.layers.push_back({1, Gen::Cross, {}});

    size_t L = src.layers.size();
    SymSum left, right;
    try {
        left = sym_normalize(datum, sym_apply_gamma(datum, src, {0, 1, 2}));
        right = sym_normalize(datum, sym_apply_gamma(datum, src, {2, L - 2, L - 1}));
    } catch (const std::exception& e) {
        return name + ": " + e.what();
    }
    if (getenv("KLRR_DEBUG_SYM")) {
        auto dump = [](const char* tag, const SymSum& s) {
            fprintf(stderr, "%s:\n", tag);
            for (const auto& t : s)
                fprintf(stderr, "  %+lld * %s %s\n", t.coeff, sym_key(t.mono).c_str(),
                        t.bound ? ("bound hi=" + std::to_string(t.hi)).c_str() : "");
        };
        dump("LEFT", left);
        dump("RIGHT", right);
    }
    auto diff = sym_difference(left, right);
    if (!diff.empty()) {
        std::string msg = name + ": symbolic residue:";
        for (auto& t : diff)
            msg +=
                " " + std::to_string(t.coeff) + "*" + sym_key(t.mono) + (t.bound ? "(bound)" : "");
        return msg;
    }
    // spot-check against the concrete engine
    KlrRules rules(datum, Field::rationals());
    for (int n = 1; n <= 4; ++n) {
        auto inst = sym_instantiate(left, n, Field::rationals());
        SymSum seed = {{1, src, false, 0}};
        auto concrete = rules.normal_form(sym_instantiate(seed, n, Field::rationals()));
        if (!(inst == concrete))
            return name + ": symbolic/concrete mismatch at n=" + std::to_string(n);
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::string> check_indexed_symbolic(const CartanDatum& datum) {
    int r = datum.rank();
    for (Vertex i = 0; i < r; ++i)
        for (Vertex j = 0; j < r; ++j) {
            if (i == j) continue;
            auto err = check_one_indexed(datum, {i, j, i}, false,
                                         "iji dots (" + datum.name(i) + "," + datum.name(j) + ")");
            if (err) return err;
            for (Vertex l = 0; l < r; ++l) {
                auto err2 =
                    check_one_indexed(datum, {i, j, i, l}, true,
                                      "ijik dotted crossing (" + datum.name(i) + "," +
                                          datum.name(j) + "," + datum.name(l) + ")");
                if (err2) return err2;
            }
        }
    return std::nullopt;
}

}  // namespace klrr
