#include "klrr/pivotal.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace klrr {

namespace {

int opposite(int p) { return (p + 2) % 4; }

// Empirically pinned classification bits (validated by the prototype tests
// in tests/test_pivotal.cpp): which antiparallel-bigon chirality carries the
// E-shaped sums, and which curl chirality carries the C/D-shaped sums.
constexpr bool kBothWithIsE = false;
constexpr bool kWithFlowIsCD = true;

Weight bubble_region_weight(const PlanarMonomial& m, const PlanarMonomial::Faces& F, int b,
                            const CartanDatum& datum) {
    std::vector<int> chain;
    int cur = b;
    while (m.bubbles[cur].anchor.kind == Anchor::BubbleInside) {
        chain.push_back(cur);
        cur = m.bubbles[cur].anchor.bubble;
    }
    int f = F.face_of_float[cur];
    if (f < 0) throw std::logic_error("bubble face unresolved");
    Weight w = F.weight[f];
    // shift across each enclosing circle, outermost first
    std::vector<int> outers(chain);
    outers.push_back(cur);
    for (size_t t = outers.size(); t-- > 1;) {
        const PBubble& outer = m.bubbles[outers[t]];
        w = w.shifted(outer.cw ? -1 : +1, outer.label, datum);
    }
    return w;
}

// the face on the left of the dart walking arc a from end e
int dart_face(const PlanarMonomial::Faces& F, int a, int e) { return F.face_of_dart[a][e]; }

// the quadrant face between ports g and g-1 at crossing c: the face of the
// dart arriving at port g
int quadrant_face(const PlanarMonomial& m, const PlanarMonomial::Faces& F, int c, int g) {
    int a = m.crossings[c].arc[g];
    int e = m.crossings[c].arc_end[g];
    return F.face_of_dart[a][1 - e];
}

bool dart_with_flow(const PlanarMonomial& m, int a, int e) { return m.arcs[a].flow01 == (e == 0); }

int face_of_anchor(const PlanarMonomial& m, const PlanarMonomial::Faces& F, const Anchor& an) {
    if (an.kind == Anchor::Rightmost) return F.rightmost_face;
    if (an.kind == Anchor::ArcSide && an.arc >= 0) {
        int e0 = m.arcs[an.arc].flow01 ? 0 : 1;
        return an.left_of_flow ? F.face_of_dart[an.arc][e0] : F.face_of_dart[an.arc][1 - e0];
    }
    return -1;
}

// ---------------------------------------------------------------------------
// Graph editor over a working copy.

struct Editor {
    const PlanarMonomial& src;
    const PlanarMonomial::Faces& F;
    const CartanDatum& datum;
    PlanarMonomial g;
    std::vector<char> arc_dead, cross_dead;
    std::map<int, int> remap;
    std::map<int, std::vector<int>> constituents;  // live arc -> original arcs

    Editor(const PlanarMonomial& m, const PlanarMonomial::Faces& f, const CartanDatum& d)
        : src(m), F(f), datum(d), g(m) {
        arc_dead.assign(g.arcs.size(), 0);
        cross_dead.assign(g.crossings.size(), 0);
        g.invalidate();
    }

    int live(int a) const {
        while (true) {
            auto it = remap.find(a);
            if (it == remap.end()) return a;
            a = it->second;
        }
    }

    const std::vector<int>& parts(int live_arc) {
        auto it = constituents.find(live_arc);
        if (it == constituents.end()) {
            constituents[live_arc] = {live_arc};
            it = constituents.find(live_arc);
        }
        return it->second;
    }

    void set_backref(const Attach& at, int arc, int e) {
        if (at.kind == Attach::Port) {
            g.crossings[at.idx].arc[at.port] = arc;
            g.crossings[at.idx].arc_end[at.port] = e;
        }
    }

    // orientation and placement of a loop closed from the original arcs S.
    // When the join follows a pattern-disk gap, the gap face is the inside;
    // otherwise the outside is found from the ambient region without
    // crossing S or any other dying arc.
    void close_loop(int a, const std::vector<int>& S_orig, int gap_face) {
        PBubble bub;
        bub.label = g.arcs[a].label;
        bub.dots = g.arcs[a].dots;
        std::set<int> S(S_orig.begin(), S_orig.end());
        std::set<int> left, right;
        for (int x : S_orig) {
            if (x >= static_cast<int>(src.arcs.size())) continue;
            int e0 = src.arcs[x].flow01 ? 0 : 1;
            left.insert(F.face_of_dart[x][e0]);
            right.insert(F.face_of_dart[x][1 - e0]);
        }
        // outside: reachable from the ambient region crossing only arcs that
        // survive this surgery
        std::set<int> outside;
        std::vector<int> stack = {F.rightmost_face};
        outside.insert(F.rightmost_face);
        for (const auto& cr : src.comps) {
            int f = face_of_anchor(src, F, cr.outer);
            if (f >= 0 && outside.insert(f).second) stack.push_back(f);
        }
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (size_t x = 0; x < src.arcs.size(); ++x) {
                if (S.count(static_cast<int>(x))) continue;
                if (arc_dead[live(static_cast<int>(x))]) continue;
                int f0 = F.face_of_dart[x][0], f1 = F.face_of_dart[x][1];
                if (f0 == f && outside.insert(f1).second) stack.push_back(f1);
                if (f1 == f && outside.insert(f0).second) stack.push_back(f0);
            }
        }
        bool left_out = false, right_out = false;
        for (int f : left) left_out |= outside.count(f) > 0;
        for (int f : right) right_out |= outside.count(f) > 0;
        bool inside_left;
        if (left_out != right_out) {
            inside_left = !left_out;
        } else if (gap_face >= 0 && (left.count(gap_face) != right.count(gap_face))) {
            inside_left = left.count(gap_face) > 0;
        } else {
            throw std::logic_error("loop orientation ambiguous");
        }
        bub.cw = !inside_left;
        int outer_face = -1;
        for (int x : S_orig) {
            if (x >= static_cast<int>(src.arcs.size())) continue;
            int e0 = src.arcs[x].flow01 ? 0 : 1;
            int f = inside_left ? F.face_of_dart[x][1 - e0] : F.face_of_dart[x][e0];
            if (f >= 0) {
                outer_face = f;
                break;
            }
        }
        int bid = static_cast<int>(g.bubbles.size());
        for (auto& fl : g.bubbles) {
            if (fl.anchor.kind != Anchor::ArcSide) continue;
            if (!S.count(fl.anchor.arc) && live(fl.anchor.arc) != a) continue;
            bool on_left = fl.anchor.left_of_flow;
            if (on_left == inside_left)
                fl.anchor = Anchor{Anchor::BubbleInside, -1, false, bid};
            else
                fl.anchor = Anchor{Anchor::Rightmost, -1, false, -1};  // re-fixed below
        }
        PBubble rec = bub;
        rec.anchor = Anchor{Anchor::Rightmost, -1, false, -1};
        g.bubbles.push_back(rec);
        if (outer_face >= 0) bubble_preface.push_back({bid, outer_face});
        arc_dead[a] = 1;
    }

    std::vector<std::pair<int, int>> bubble_preface;  // bubble -> source face

    // join the strand across two attachments of dying crossings; ia/ib are
    // (arc, end) pairs where the strand enters/leaves the pattern
    int join_ends(int a_in, int e_in, int a_out, int e_out, int gap_face = -1) {
        int a = live(a_in), b = live(a_out);
        int ea = e_in, eb = e_out;
        if (a == b) {
            std::vector<int> S = parts(a);
            close_loop(a, S, gap_face);
            return -1;
        }
        PArc merged;
        merged.end[0] = g.arcs[a].end[1 - ea];
        merged.end[1] = g.arcs[b].end[1 - eb];
        merged.label = g.arcs[a].label;
        merged.dots = g.arcs[a].dots + g.arcs[b].dots;
        // the strand flows in through a (arriving at e_in) and out through b
        bool a_in_flow = g.arcs[a].flow01 == (ea == 1);
        merged.flow01 = a_in_flow;
        g.arcs.push_back(merged);
        int nid = static_cast<int>(g.arcs.size()) - 1;
        arc_dead.push_back(0);
        arc_dead[a] = arc_dead[b] = 1;
        std::vector<int> ps = parts(a);
        auto pb = parts(b);
        ps.insert(ps.end(), pb.begin(), pb.end());
        constituents[nid] = ps;
        remap[a] = nid;
        remap[b] = nid;
        set_backref(merged.end[0], nid, 0);
        set_backref(merged.end[1], nid, 1);
        for (auto& fl : g.bubbles)
            if (fl.anchor.kind == Anchor::ArcSide && (fl.anchor.arc == a || fl.anchor.arc == b))
                fl.anchor.arc = nid;
        for (auto& cr : g.comps) {
            if (cr.outer.kind == Anchor::ArcSide && (cr.outer.arc == a || cr.outer.arc == b))
                cr.outer.arc = nid;
            if (cr.host.kind == Anchor::ArcSide && (cr.host.arc == a || cr.host.arc == b))
                cr.host.arc = nid;
        }
        return nid;
    }

    // join across a dying crossing c from in-port to out-port
    int join(int c, int p_in, int p_out, int gap_face = -1) {
        return join_ends(g.crossings[c].arc[p_in], g.crossings[c].arc_end[p_in],
                         g.crossings[c].arc[p_out], g.crossings[c].arc_end[p_out], gap_face);
    }

    PlanarMonomial finalize() {
        for (auto& [bid, f] : bubble_preface) {
            if (g.bubbles[bid].anchor.kind != Anchor::Rightmost) continue;
            for (size_t a2 = 0; a2 < src.arcs.size(); ++a2) {
                int la = live(static_cast<int>(a2));
                if (arc_dead[la]) continue;
                bool done = false;
                for (int e = 0; e < 2 && !done; ++e)
                    if (F.face_of_dart[a2][e] == f) {
                        bool with = src.arcs[a2].flow01 == (e == 0);
                        g.bubbles[bid].anchor = Anchor{Anchor::ArcSide, la, with, -1};
                        done = true;
                    }
                if (done) break;
            }
        }
        auto fix = [&](Anchor& an) {
            if (an.kind != Anchor::ArcSide || an.arc < 0) return;
            an.arc = live(an.arc);
            if (!arc_dead[an.arc]) return;
            // the anchored arc vanished: reanchor to a surviving arc that
            // bounded the same face in the source diagram
            if (an.arc >= static_cast<int>(src.arcs.size())) {
                an = Anchor{Anchor::Rightmost, -1, false, -1};
                return;
            }
            int e0 = src.arcs[an.arc].flow01 ? 0 : 1;
            int f = an.left_of_flow ? F.face_of_dart[an.arc][e0] : F.face_of_dart[an.arc][1 - e0];
            for (size_t a2 = 0; a2 < src.arcs.size(); ++a2) {
                int la = live(static_cast<int>(a2));
                if (arc_dead[la]) continue;
                for (int e = 0; e < 2; ++e)
                    if (F.face_of_dart[a2][e] == f) {
                        bool with = src.arcs[a2].flow01 == (e == 0);
                        an = Anchor{Anchor::ArcSide, la, with, -1};
                        return;
                    }
            }
            an = Anchor{Anchor::Rightmost, -1, false, -1};
        };
        for (auto& b : g.bubbles) fix(b.anchor);
        for (auto& cr : g.comps) {
            fix(cr.outer);
            fix(cr.host);
        }
        std::vector<int> arc_new(g.arcs.size(), -1);
        std::vector<PArc> arcs2;
        for (size_t a = 0; a < g.arcs.size(); ++a) {
            if (arc_dead[a]) continue;
            arc_new[a] = static_cast<int>(arcs2.size());
            arcs2.push_back(g.arcs[a]);
        }
        std::vector<int> cross_new(g.crossings.size(), -1);
        std::vector<PCross> cross2;
        for (size_t c = 0; c < g.crossings.size(); ++c) {
            if (cross_dead[c]) continue;
            cross_new[c] = static_cast<int>(cross2.size());
            cross2.push_back(g.crossings[c]);
        }
        for (auto& c : cross2)
            for (int p = 0; p < 4; ++p) {
                c.arc[p] = arc_new[c.arc[p]];
                if (c.arc[p] < 0) throw std::logic_error("dangling port after surgery");
            }
        for (auto& a : arcs2)
            for (int e = 0; e < 2; ++e)
                if (a.end[e].kind == Attach::Port) {
                    a.end[e].idx = cross_new[a.end[e].idx];
                    if (a.end[e].idx < 0) throw std::logic_error("arc into dead crossing");
                }
        for (auto& b : g.bubbles)
            if (b.anchor.kind == Anchor::ArcSide && b.anchor.arc >= 0) {
                b.anchor.arc = arc_new[b.anchor.arc];
                if (b.anchor.arc < 0) b.anchor = Anchor{Anchor::Rightmost, -1, false, -1};
            }
        std::vector<CompRef> comps2;
        for (auto& cr : g.comps) {
            if (cr.outer.kind == Anchor::ArcSide) {
                cr.outer.arc = cr.outer.arc >= 0 ? arc_new[cr.outer.arc] : -1;
                if (cr.outer.arc < 0) continue;  // component dissolved
            }
            if (cr.host.kind == Anchor::ArcSide && cr.host.arc >= 0)
                cr.host.arc = arc_new[cr.host.arc];
            comps2.push_back(cr);
        }
        g.comps = std::move(comps2);
        g.arcs = std::move(arcs2);
        g.crossings = std::move(cross2);
        g.degree_cached = src.degree();
        g.invalidate();
        arc_final = std::move(arc_new);
        return g;
    }

    std::vector<int> arc_final;  // editor arc id -> finalized id
    Anchor xlate(Anchor an) const {
        if (an.kind == Anchor::ArcSide && an.arc >= 0) an.arc = arc_final[an.arc];
        if (an.kind == Anchor::ArcSide && an.arc < 0)
            return Anchor{Anchor::Rightmost, -1, false, -1};
        return an;
    }

    // post-finalize anchor into the face that pre-surgery face f became
    Anchor preface_anchor(int f) const {
        for (size_t a2 = 0; a2 < src.arcs.size(); ++a2) {
            int la = a2;
            auto it = remap.find(static_cast<int>(a2));
            while (it != remap.end()) {
                la = it->second;
                it = remap.find(la);
            }
            if (arc_dead[la] || arc_final[la] < 0) continue;
            for (int e = 0; e < 2; ++e)
                if (F.face_of_dart[a2][e] == f) {
                    bool with = src.arcs[a2].flow01 == (e == 0);
                    return Anchor{Anchor::ArcSide, arc_final[la], with, -1};
                }
        }
        return Anchor{Anchor::Rightmost, -1, false, -1};
    }
};

// the quadrant face between two cyclically adjacent ports of a crossing
int adjacent_gap_face(const PlanarMonomial& m, const PlanarMonomial::Faces& F, int c, int p,
                      int q) {
    int later = (q == (p + 1) % 4) ? q : p;
    int a = m.crossings[c].arc[later];
    int e = m.crossings[c].arc_end[later];
    return F.face_of_dart[a][1 - e];
}

std::pair<std::pair<int, int>, std::pair<int, int>> smoothing_pairs(const PlanarMonomial& m,
                                                                    int c) {
    std::vector<int> ins, outs;
    for (int p = 0; p < 4; ++p) (port_is_in(m, c, p) ? ins : outs).push_back(p);
    if (ins.size() != 2 || outs.size() != 2) throw std::logic_error("degenerate crossing");
    auto adj = [](int x, int y) { return (x + 1) % 4 == y || (y + 1) % 4 == x; };
    int o0 = adj(ins[0], outs[0]) ? outs[0] : outs[1];
    int o1 = o0 == outs[0] ? outs[1] : outs[0];
    if (!adj(ins[0], o0) || !adj(ins[1], o1)) throw std::logic_error("no adjacent smoothing");
    return {{ins[0], o0}, {ins[1], o1}};
}

// add evaluated bubbles (a BubblePoly) into copies of a base monomial
void emit_with_bubbles(LinComb<PlanarMonomial>& out, const PlanarMonomial& base,
                       const BubblePoly& poly, const Anchor& anchor, const Scalar& coeff) {
    for (const auto& [k, term] : poly.terms()) {
        PlanarMonomial t = base;
        t.invalidate();
        for (const auto& f : term.first.factors) t.bubbles.push_back({f.label, f.cw, f.dots, anchor});
        out.add_term(t, coeff * term.second);
    }
}

}  // namespace

int tau_weight(const PlanarMonomial& m) { return 3 * static_cast<int>(m.crossings.size()); }

PivotalRules::PivotalRules(const CartanDatum& datum, Field field) : datum_(&datum), field_(field) {}

PlanarMonomial make_planar(const CartanDatum& datum, const Weight& lambda,
                           const std::vector<SignedLabel>& bottom, const Recipe& recipe) {
    return build_planar(bottom, lambda, recipe, datum);
}

// ---------------------------------------------------------------------------
// Matching.

std::vector<PivotalRules::Redex> PivotalRules::find_redexes(const PlanarMonomial& m) const {
    std::vector<Redex> out;
    const auto& F = m.faces(*datum_);
    auto cross_ord = canonical_crossing_order(m);
    auto arc_ord = canonical_arc_order(m);

    std::vector<int> dart_count(F.faces, 0);
    for (size_t a = 0; a < m.arcs.size(); ++a)
        for (int e = 0; e < 2; ++e) dart_count[F.face_of_dart[a][e]]++;
    std::vector<int> float_count(F.faces, 0);
    for (size_t b = 0; b < m.bubbles.size(); ++b)
        if (F.face_of_float[b] >= 0) float_count[F.face_of_float[b]]++;
    for (const auto& cr : m.comps) {
        int f = face_of_anchor(m, F, cr.host);
        if (f >= 0) float_count[f]++;
    }
    auto face_clear = [&](int f, int darts) {
        return dart_count[f] == darts && float_count[f] == 0;
    };

    // alpha: dotted arc on an out-port
    for (size_t c = 0; c < m.crossings.size(); ++c)
        for (int p = 0; p < 4; ++p) {
            if (port_is_in(m, static_cast<int>(c), p)) continue;
            int a = m.crossings[c].arc[p];
            if (m.arcs[a].dots < 1) continue;
            Redex r;
            r.rule = "alpha";
            r.crossings = {static_cast<int>(c)};
            r.port = p;
            r.position = "c" + std::to_string(cross_ord[c]) + "a" + std::to_string(arc_ord[a]);
            out.push_back(r);
        }

    // bigons
    for (size_t c1 = 0; c1 < m.crossings.size(); ++c1)
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) {
                int u = m.crossings[c1].arc[p];
                int v = m.crossings[c1].arc[q];
                if (u == v) continue;
                const Attach& ou = m.arcs[u].end[1 - m.crossings[c1].arc_end[p]];
                const Attach& ov = m.arcs[v].end[1 - m.crossings[c1].arc_end[q]];
                if (ou.kind != Attach::Port || ov.kind != Attach::Port) continue;
                if (ou.idx != ov.idx || ou.idx <= static_cast<int>(c1)) continue;
                int c2 = ou.idx;
                int f = -1, eu = -1, ev = -1;
                for (int e = 0; e < 2; ++e) {
                    int cand = dart_face(F, u, e);
                    for (int e2 = 0; e2 < 2; ++e2)
                        if (dart_face(F, v, e2) == cand) {
                            f = cand;
                            eu = e;
                            ev = e2;
                        }
                }
                if (f < 0 || !face_clear(f, 2)) continue;
                if (m.arcs[u].dots || m.arcs[v].dots) continue;
                bool u_with = dart_with_flow(m, u, eu), v_with = dart_with_flow(m, v, ev);
                Redex r;
                r.crossings = {static_cast<int>(c1), c2};
                r.arc = u;
                r.port = v;
                r.tau_delta = -6;
                r.position = "c" + std::to_string(std::min(cross_ord[c1], cross_ord[c2])) + "." +
                             std::to_string(std::max(cross_ord[c1], cross_ord[c2]));
                if (u_with != v_with) {
                    r.rule = "beta";
                } else {
                    r.rule = "EF";
                    r.dart_end = u_with ? 1 : 0;
                }
                out.push_back(r);
            }

    // curls
    for (size_t c = 0; c < m.crossings.size(); ++c)
        for (int p = 0; p < 4; ++p) {
            int a = m.crossings[c].arc[p];
            int e = m.crossings[c].arc_end[p];
            const Attach& o = m.arcs[a].end[1 - e];
            if (o.kind != Attach::Port || o.idx != static_cast<int>(c) || o.port <= p) continue;
            if (o.port == opposite(p)) continue;
            if (m.arcs[a].dots) continue;
            int f = -1, ef = -1;
            for (int ee = 0; ee < 2; ++ee)
                if (dart_count[dart_face(F, a, ee)] == 1 && face_clear(dart_face(F, a, ee), 1)) {
                    f = dart_face(F, a, ee);
                    ef = ee;
                }
            if (f < 0) continue;
            Redex r;
            r.rule = "AD";
            r.crossings = {static_cast<int>(c)};
            r.arc = a;
            r.dart_end = dart_with_flow(m, a, ef) ? 1 : 0;
            r.tau_delta = -3;
            r.position = "c" + std::to_string(cross_ord[c]) + "a" + std::to_string(arc_ord[a]);
            out.push_back(r);
        }

    // gamma triangles (signature 2, against-dart on the B mid-arc)
    for (size_t cab = 0; cab < m.crossings.size(); ++cab)
        for (size_t cac = 0; cac < m.crossings.size(); ++cac)
            for (size_t cbc = 0; cbc < m.crossings.size(); ++cbc) {
                if (cab == cac || cab == cbc || cac == cbc) continue;
                auto find_mid = [&](size_t cx, size_t cy) -> int {
                    for (int p = 0; p < 4; ++p) {
                        int a = m.crossings[cx].arc[p];
                        int e = m.crossings[cx].arc_end[p];
                        const Attach& o = m.arcs[a].end[1 - e];
                        if (o.kind != Attach::Port || o.idx != static_cast<int>(cy)) continue;
                        if (m.arcs[a].flow01 != (e == 0)) continue;  // flow cx -> cy
                        if (m.arcs[a].dots) continue;
                        return a;
                    }
                    return -1;
                };
                int midA = find_mid(cab, cac);
                int midB = find_mid(cab, cbc);
                int midC = find_mid(cac, cbc);
                if (midA < 0 || midB < 0 || midC < 0) continue;
                if (midA == midB || midA == midC || midB == midC) continue;
                int f = -1;
                for (int e = 0; e < 2; ++e) {
                    int cand = dart_face(F, midA, e);
                    bool okB = dart_face(F, midB, 0) == cand || dart_face(F, midB, 1) == cand;
                    bool okC = dart_face(F, midC, 0) == cand || dart_face(F, midC, 1) == cand;
                    if (okB && okC) f = cand;
                }
                if (f < 0 || !face_clear(f, 3)) continue;
                int withs = 0, against_arc = -1;
                for (int a : {midA, midB, midC})
                    for (int e = 0; e < 2; ++e)
                        if (dart_face(F, a, e) == f) {
                            if (dart_with_flow(m, a, e))
                                ++withs;
                            else
                                against_arc = a;
                        }
                if (withs != 2 || against_arc != midB) continue;
                Redex r;
                r.rule = "gamma";
                r.crossings = {static_cast<int>(cab), static_cast<int>(cac),
                               static_cast<int>(cbc)};
                r.position = "c" + std::to_string(cross_ord[cab]) + "." +
                             std::to_string(cross_ord[cac]) + "." + std::to_string(cross_ord[cbc]);
                out.push_back(r);
            }

    // bubble normalization
    for (size_t b = 0; b < m.bubbles.size(); ++b) {
        Weight w = bubble_region_weight(m, F, static_cast<int>(b), *datum_);
        const PBubble& pb = m.bubbles[b];
        BubblePoly p = eval_bubbles({{pb.label, pb.cw, pb.dots}}, w, *datum_, field_);
        bool inert = false;
        if (p.size() == 1) {
            const auto& t = p.terms().begin()->second;
            inert = t.first.factors.size() == 1 && t.first.factors[0].cw == pb.cw &&
                    t.first.factors[0].dots == pb.dots && t.first.factors[0].label == pb.label &&
                    t.second == Scalar::one(field_);
        }
        if (inert) continue;
        Redex r;
        r.rule = "bub";
        r.bubble = static_cast<int>(b);
        r.position = "b" + std::to_string(b);
        out.push_back(r);
    }

    // slides (loop-prone)
    for (size_t b = 0; b < m.bubbles.size(); ++b) {
        const Anchor& an = m.bubbles[b].anchor;
        if (an.kind == Anchor::BubbleInside) {
            Redex r;
            r.rule = "slide";
            r.bubble = static_cast<int>(b);
            r.dart_arc = -2 - an.bubble;
            r.loop_prone = true;
            r.position = "b" + std::to_string(b) + ".out" + std::to_string(an.bubble);
            out.push_back(r);
            continue;
        }
        int f = face_of_anchor(m, F, an);
        if (f < 0) continue;
        for (size_t a = 0; a < m.arcs.size(); ++a)
            for (int e = 0; e < 2; ++e)
                if (dart_face(F, static_cast<int>(a), e) == f) {
                    Redex r;
                    r.rule = "slide";
                    r.bubble = static_cast<int>(b);
                    r.dart_arc = static_cast<int>(a);
                    r.dart_end = e;
                    r.loop_prone = true;
                    r.position = "b" + std::to_string(b) + ".a" + std::to_string(arc_ord[a]) +
                                 "e" + std::to_string(e);
                    out.push_back(r);
                }
        for (size_t o = 0; o < m.bubbles.size(); ++o) {
            if (o == b) continue;
            if (m.bubbles[o].anchor.kind == Anchor::BubbleInside) continue;
            if (face_of_anchor(m, F, m.bubbles[o].anchor) != f) continue;
            Redex r;
            r.rule = "slide";
            r.bubble = static_cast<int>(b);
            r.dart_arc = -1000 - static_cast<int>(o);
            r.loop_prone = true;
            r.position = "b" + std::to_string(b) + ".in" + std::to_string(o);
            out.push_back(r);
        }
    }

    std::sort(out.begin(), out.end(), [](const Redex& x, const Redex& y) {
        if (x.rule != y.rule) return x.rule < y.rule;
        return x.position < y.position;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Application.

LinComb<PlanarMonomial> PivotalRules::apply(const PlanarMonomial& m, const Redex& r) const {
    LinComb<PlanarMonomial> out(field_);
    const auto& F = m.faces(*datum_);
    Scalar one = Scalar::one(field_);
    Scalar minus = Scalar::of_int(-1, field_);

    if (r.rule == "alpha") {
        int c = r.crossings[0], p = r.port;
        int a_out = m.crossings[c].arc[p];
        int a_in = m.crossings[c].arc[opposite(p)];
        if (a_out == a_in) throw std::logic_error("strand arc through opposite ports");
        PlanarMonomial t1 = m;
        t1.invalidate();
        t1.arcs[a_out].dots -= 1;
        t1.arcs[a_in].dots += 1;
        out.add_term(t1, one);
        Vertex li = m.arcs[a_out].label;
        Vertex lj = m.arcs[m.crossings[c].arc[(p + 1) % 4]].label;
        if (li == lj) {
            int sign_port = (p + 1) % 4;
            Scalar sign = port_is_in(m, c, sign_port) ? one : minus;
            Editor ed(m, F, *datum_);
            ed.g.arcs[a_out].dots -= 1;
            auto [pr1, pr2] = smoothing_pairs(m, c);
            ed.join(c, pr1.first, pr1.second,
                    adjacent_gap_face(m, F, c, pr1.first, pr1.second));
            ed.join(c, pr2.first, pr2.second,
                    adjacent_gap_face(m, F, c, pr2.first, pr2.second));
            ed.cross_dead[c] = 1;
            out.add_term(ed.finalize(), sign);
        }
        return out;
    }

    if (r.rule == "beta" || r.rule == "EF") {
        int c1 = r.crossings[0], c2 = r.crossings[1];
        int u = r.arc, v = r.port;
        Vertex li = m.arcs[u].label, lj = m.arcs[v].label;
        auto uncross = [&]() {
            Editor ed(m, F, *datum_);
            // strand-wise smoothing at both crossings
            for (int c : {c1, c2}) {
                for (int mid : {u, v}) {
                    // the mid arc's port at c, joined through to the stub
                    for (int p = 0; p < 4; ++p) {
                        if (ed.g.crossings[c].arc[p] != ed.live(mid) &&
                            ed.live(ed.g.crossings[c].arc[p]) != ed.live(mid))
                            continue;
                        int q = opposite(p);
                        bool p_in = port_is_in(m, c, p);
                        // join from the in side to the out side
                        if (p_in)
                            ed.join(c, p, q);
                        else
                            ed.join(c, q, p);
                        break;
                    }
                }
                ed.cross_dead[c] = 1;
            }
            return ed;
        };
        if (r.rule == "beta") {
            if (li == lj) return out;  // zero
            if (datum_->dot(li, lj) == 0) {
                Editor ed = uncross();
                out.add_term(ed.finalize(), one);
                return out;
            }
            // dotted identities: one extra dot on each smoothed strand
            for (int which : {0, 1}) {
                Editor ed = uncross();
                int target = ed.live(which == 0 ? u : v);
                ed.g.arcs[target].dots += 1;
                out.add_term(ed.finalize(), one);
            }
            return out;
        }
        // EF
        if (li != lj) {
            Editor ed = uncross();
            out.add_term(ed.finalize(), one);
            return out;
        }
        // stub structure of the two-strand pattern, in cyclic order; each
        // stub records the face of the gap that follows it
        struct Stub {
            int arc, end;
            bool flows_out;
            int gap_after;
        };
        std::vector<Stub> stubs;
        {
            int cc = c1, pp = -1;
            for (int p = 0; p < 4 && pp < 0; ++p) {
                int a = m.crossings[c1].arc[p];
                if (a != u && a != v) pp = p;
            }
            for (int guard = 0; guard < 16 && stubs.size() < 4; ++guard) {
                int a = m.crossings[cc].arc[pp];
                int e = m.crossings[cc].arc_end[pp];
                if (a != u && a != v) {
                    stubs.push_back({a, e, m.arcs[a].flow01 == (e == 0),
                                     F.face_of_dart[a][1 - e]});
                    // gap recorded at discovery is the one *preceding* this
                    // stub in walk order; shift below
                }
                if (a == u || a == v) {
                    // hop through the mid to the other crossing
                    const Attach& far = m.arcs[a].end[1 - e];
                    cc = far.idx;
                    pp = (far.port + 1) % 4;
                } else {
                    pp = (pp + 1) % 4;
                }
            }
            if (stubs.size() != 4) throw std::logic_error("EF: stub walk failed");
            // gap_after[t] should be the gap between stub t and stub t+1,
            // which is the arriving-dart face of stub t+1
            std::vector<int> gaps(4);
            for (int t = 0; t < 4; ++t) gaps[t] = stubs[(t + 1) % 4].gap_after;
            for (int t = 0; t < 4; ++t) stubs[t].gap_after = gaps[t];
        }
        // partner stubs through the pattern: follow transit, mid, transit
        auto partner = [&](int idx) {
            const Stub& s = stubs[idx];
            // find the port of this stub
            int cc = -1, pp = -1;
            for (int c : {c1, c2})
                for (int p = 0; p < 4; ++p)
                    if (m.crossings[c].arc[p] == s.arc && m.crossings[c].arc_end[p] == s.end) {
                        cc = c;
                        pp = p;
                    }
            int mid = m.crossings[cc].arc[opposite(pp)];
            const Attach& far =
                m.arcs[mid].end[1 - m.crossings[cc].arc_end[opposite(pp)]];
            int c_far = far.idx;
            int exit = opposite(far.port);
            int pa = m.crossings[c_far].arc[exit];
            int pe = m.crossings[c_far].arc_end[exit];
            for (int t = 0; t < 4; ++t)
                if (stubs[t].arc == pa && stubs[t].end == pe) return t;
            throw std::logic_error("EF: partner not found");
        };
        // reading start: s0 with its partner immediately before it
        int k = -1;
        for (int t = 0; t < 4 && k < 0; ++t)
            if (partner(t) == (t + 3) % 4) k = t;
        if (k < 0) throw std::logic_error("EF: no valid reading");
        auto S = [&](int j2) -> const Stub& { return stubs[(k + j2) % 4]; };
        bool is_E = S(0).flows_out;
        int lam_face = S(1).gap_after;
        Weight lam = F.weight[lam_face];
        int h = lam.pairing(li);
        if (getenv("KLRR_DEBUG_EF"))
            fprintf(stderr, "EF: is_E=%d h=%d lam_face=%d alt=%d k=%d\n", (int)is_E, h,
                    lam_face, S(3).gap_after, k);

        // identity term: plug strands bl-tl and br-tr
        {
            Editor ed(m, F, *datum_);
            ed.arc_dead[u] = ed.arc_dead[v] = 1;
            ed.cross_dead[c1] = ed.cross_dead[c2] = 1;
            auto join_pair = [&](const Stub& x, const Stub& y, int gap) {
                const Stub& in = x.flows_out ? y : x;
                const Stub& outp = x.flows_out ? x : y;
                return ed.join_ends(in.arc, in.end, outp.arc, outp.end, gap);
            };
            join_pair(S(0), S(3), S(3).gap_after);
            join_pair(S(1), S(2), S(1).gap_after);
            out.add_term(ed.finalize(), minus);
        }
        int range = is_E ? -h - 1 : h - 1;
        for (int n = 0; n <= range; ++n)
            for (int rr = 0; rr + n <= range; ++rr) {
                BubbleSym fake{li, is_E, -n - rr - 2};
                BubblePoly poly = eval_bubbles({fake}, lam, *datum_, field_);
                if (poly.is_zero()) continue;
                Editor ed(m, F, *datum_);
                ed.arc_dead[u] = ed.arc_dead[v] = 1;
                ed.cross_dead[c1] = ed.cross_dead[c2] = 1;
                auto join_pair = [&](const Stub& x, const Stub& y, int gap, int dots) {
                    const Stub& in = x.flows_out ? y : x;
                    const Stub& outp = x.flows_out ? x : y;
                    int nid = ed.join_ends(in.arc, in.end, outp.arc, outp.end, gap);
                    if (nid >= 0)
                        ed.g.arcs[nid].dots += dots;
                    else
                        ed.g.bubbles.back().dots += dots;
                };
                join_pair(S(0), S(1), S(0).gap_after, rr);
                join_pair(S(2), S(3), S(2).gap_after, n);
                PlanarMonomial base = ed.finalize();
                Anchor anch = ed.preface_anchor(lam_face);
                emit_with_bubbles(out, base, poly, anch, one);
            }
        return out;
    }

    if (r.rule == "AD") {
        int c = r.crossings[0];
        int self_arc = r.arc;
        Vertex li = m.arcs[self_arc].label;
        bool is_CD = (r.dart_end == 1) == kWithFlowIsCD;
        // rule weight: the face on the self-arc's non-monogon side
        std::vector<int> darts_per_face(F.faces, 0);
        for (size_t a = 0; a < m.arcs.size(); ++a)
            for (int e = 0; e < 2; ++e) darts_per_face[dart_face(F, static_cast<int>(a), e)]++;
        int f0 = dart_face(F, self_arc, 0), f1 = dart_face(F, self_arc, 1);
        int f_out = darts_per_face[f0] == 1 ? f1 : f0;
        if (darts_per_face[f0] != 1 && darts_per_face[f1] != 1)
            throw std::logic_error("AD: monogon face not found");
        Weight lam = F.weight[f_out];
        int h = lam.pairing(li);
        int range = is_CD ? h : -h;
        Scalar sign = is_CD ? one : minus;
        for (int n = 0; n <= range; ++n) {
            Editor ed(m, F, *datum_);
            // join the through stubs
            int pin = -1, pout = -1;
            for (int p = 0; p < 4; ++p) {
                if (m.crossings[c].arc[p] == self_arc) continue;
                (port_is_in(m, c, p) ? pin : pout) = p;
            }
            ed.arc_dead[self_arc] = 1;
            int nid = ed.join(c, pin, pout, adjacent_gap_face(m, F, c, pin, pout));
            bool quad_left = !(pout == (pin + 1) % 4);
            ed.cross_dead[c] = 1;
            Anchor anch;
            if (nid >= 0) {
                anch = Anchor{Anchor::ArcSide, nid, !quad_left, -1};
                ed.g.arcs[nid].dots += n;
            } else {
                // the join closed into a bubble: dots ride on it, and the
                // rule bubbles sit beside it
                ed.g.bubbles.back().dots += n;
                anch = ed.g.bubbles.back().anchor;
            }
            BubbleSym fake{li, !is_CD, -n - 1};
            BubblePoly poly = eval_bubbles({fake}, lam, *datum_, field_);
            if (poly.is_zero()) continue;
            PlanarMonomial base = ed.finalize();
            Anchor placed = nid >= 0 ? ed.xlate(anch) : base.bubbles.back().anchor;
            emit_with_bubbles(out, base, poly, placed, sign);
        }
        return out;
    }

    if (r.rule == "gamma") {
        int cab = r.crossings[0], cac = r.crossings[1], cbc = r.crossings[2];
        auto arc_at = [&](int cx, int cy) -> std::pair<int, int> {
            for (int p = 0; p < 4; ++p) {
                int a = m.crossings[cx].arc[p];
                int e = m.crossings[cx].arc_end[p];
                const Attach& o = m.arcs[a].end[1 - e];
                if (o.kind == Attach::Port && o.idx == cy && m.arcs[a].flow01 == (e == 0) &&
                    m.arcs[a].dots == 0)
                    return {a, p};
            }
            throw std::logic_error("gamma: mid arc lost");
        };
        auto [midA, pA_ab] = arc_at(cab, cac);
        auto [midB, pB_ab] = arc_at(cab, cbc);
        auto [midC, pC_ac] = arc_at(cac, cbc);
        // stubs: (arc, end attached to the pattern)
        auto stub_at = [&](int cx, const std::vector<int>& mids, bool want_in) -> std::pair<int, int> {
            for (int p = 0; p < 4; ++p) {
                int a = m.crossings[cx].arc[p];
                if (std::count(mids.begin(), mids.end(), a)) continue;
                if (port_is_in(m, cx, p) == want_in)
                    return {a, m.crossings[cx].arc_end[p]};
            }
            throw std::logic_error("gamma: stub not found");
        };
        auto Ain = stub_at(cab, {midA, midB}, true);
        auto Bin = stub_at(cab, {midA, midB}, true);
        // two in-stubs at cab: distinguish by strand: A's stub is opposite midA
        {
            int pmidA = pA_ab;
            int pA = opposite(pmidA);
            Ain = {m.crossings[cab].arc[pA], m.crossings[cab].arc_end[pA]};
            int pmidB = pB_ab;
            int pB = opposite(pmidB);
            Bin = {m.crossings[cab].arc[pB], m.crossings[cab].arc_end[pB]};
        }
        auto port_of_arc_at = [&](int cx, int arc, int end) {
            for (int p = 0; p < 4; ++p)
                if (m.crossings[cx].arc[p] == arc && m.crossings[cx].arc_end[p] == end) return p;
            throw std::logic_error("gamma: port lookup failed");
        };
        // A-out at cac opposite midA's arrival; C-in at cac opposite midC
        int pA_ac = -1;
        {
            int e_at = m.arcs[midA].flow01 ? 1 : 0;
            pA_ac = port_of_arc_at(cac, midA, e_at);
        }
        auto Aout = std::pair<int, int>{m.crossings[cac].arc[opposite(pA_ac)],
                                        m.crossings[cac].arc_end[opposite(pA_ac)]};
        auto Cin = std::pair<int, int>{m.crossings[cac].arc[opposite(pC_ac)],
                                       m.crossings[cac].arc_end[opposite(pC_ac)]};
        int pB_bc = -1, pC_bc = -1;
        {
            int eB = m.arcs[midB].flow01 ? 1 : 0;
            pB_bc = port_of_arc_at(cbc, midB, eB);
            int eC = m.arcs[midC].flow01 ? 1 : 0;
            pC_bc = port_of_arc_at(cbc, midC, eC);
        }
        auto Bout = std::pair<int, int>{m.crossings[cbc].arc[opposite(pB_bc)],
                                        m.crossings[cbc].arc_end[opposite(pB_bc)]};
        auto Cout = std::pair<int, int>{m.crossings[cbc].arc[opposite(pC_bc)],
                                        m.crossings[cbc].arc_end[opposite(pC_bc)]};
        Vertex la = m.arcs[midA].label, lb = m.arcs[midB].label, lc = m.arcs[midC].label;

        // main term: rebuild the flipped triangle
        {
            Editor ed(m, F, *datum_);
            ed.arc_dead[midA] = ed.arc_dead[midB] = ed.arc_dead[midC] = 1;
            ed.cross_dead[cab] = ed.cross_dead[cac] = ed.cross_dead[cbc] = 1;
            int d1 = static_cast<int>(ed.g.crossings.size());
            ed.g.crossings.push_back({{-1, -1, -1, -1}, {0, 0, 0, 0}});
            int d2 = static_cast<int>(ed.g.crossings.size());
            ed.g.crossings.push_back({{-1, -1, -1, -1}, {0, 0, 0, 0}});
            int d3 = static_cast<int>(ed.g.crossings.size());
            ed.g.crossings.push_back({{-1, -1, -1, -1}, {0, 0, 0, 0}});
            ed.cross_dead.insert(ed.cross_dead.end(), 3, 0);
            auto attach = [&](std::pair<int, int> stub, int c, int p) {
                ed.g.arcs[stub.first].end[stub.second] = {Attach::Port, c, p};
                ed.g.crossings[c].arc[p] = stub.first;
                ed.g.crossings[c].arc_end[p] = stub.second;
            };
            auto new_mid = [&](Vertex label, int c_from, int p_from, int c_to, int p_to) {
                PArc a{{{Attach::Port, c_from, p_from}, {Attach::Port, c_to, p_to}}, label, true,
                       0};
                ed.g.arcs.push_back(a);
                ed.arc_dead.push_back(0);
                int id = static_cast<int>(ed.g.arcs.size()) - 1;
                ed.g.crossings[c_from].arc[p_from] = id;
                ed.g.crossings[c_from].arc_end[p_from] = 0;
                ed.g.crossings[c_to].arc[p_to] = id;
                ed.g.crossings[c_to].arc_end[p_to] = 1;
                return id;
            };
            attach(Bin, d1, 0);
            attach(Cin, d1, 1);
            attach(Ain, d2, 0);
            attach(Cout, d2, 3);
            attach(Bout, d3, 3);
            attach(Aout, d3, 2);
            new_mid(lc, d1, 3, d2, 1);  // C: d1.NW -> d2.SE
            new_mid(lb, d1, 2, d3, 1);  // B: d1.NE -> d3.SE
            new_mid(la, d2, 2, d3, 0);  // A: d2.NE -> d3.SW
            out.add_term(ed.finalize(), one);
        }
        if (la == lc && datum_->dot(la, lb) == -1) {
            Editor ed(m, F, *datum_);
            ed.arc_dead[midA] = ed.arc_dead[midB] = ed.arc_dead[midC] = 1;
            ed.cross_dead[cab] = ed.cross_dead[cac] = ed.cross_dead[cbc] = 1;
            ed.join_ends(Ain.first, Ain.second, Aout.first, Aout.second);
            ed.join_ends(Bin.first, Bin.second, Bout.first, Bout.second);
            ed.join_ends(Cin.first, Cin.second, Cout.first, Cout.second);
            out.add_term(ed.finalize(), one);
        }
        return out;
    }

    if (r.rule == "bub") {
        const PBubble& pb = m.bubbles[r.bubble];
        Weight w = bubble_region_weight(m, F, r.bubble, *datum_);
        BubblePoly poly = eval_bubbles({{pb.label, pb.cw, pb.dots}}, w, *datum_, field_);
        PlanarMonomial base = m;
        base.invalidate();
        Anchor anch = pb.anchor;
        // nested floats of this bubble move to its region
        for (auto& fl : base.bubbles)
            if (fl.anchor.kind == Anchor::BubbleInside && fl.anchor.bubble == r.bubble)
                fl.anchor = anch;
        base.bubbles.erase(base.bubbles.begin() + r.bubble);
        for (auto& fl : base.bubbles)
            if (fl.anchor.kind == Anchor::BubbleInside && fl.anchor.bubble > r.bubble)
                fl.anchor.bubble -= 1;
        emit_with_bubbles(out, base, poly, anch, one);
        return out;
    }

    if (r.rule == "slide") {
        const PBubble& pb = m.bubbles[r.bubble];
        Weight w_src = bubble_region_weight(m, F, r.bubble, *datum_);
        int i = pb.label;
        int alpha = pb.cw ? pb.dots - (w_src.pairing(i) - 1) : pb.dots - (-w_src.pairing(i) - 1);
        // target region and the crossed strand
        Vertex j;
        Weight w_tgt = w_src;
        bool family_S;  // crossing from the strand's left to its right
        Anchor tgt_anchor;
        std::function<void(PlanarMonomial&, int)> add_strand_dots;
        if (r.dart_arc >= 0) {
            int a = r.dart_arc, e = r.dart_end;
            j = m.arcs[a].label;
            family_S = dart_with_flow(m, a, e);  // bubble on the strand's left
            int f_tgt = dart_face(F, a, 1 - e);
            w_tgt = F.weight[f_tgt];
            tgt_anchor = Anchor{Anchor::ArcSide, a, !family_S, -1};
            add_strand_dots = [a](PlanarMonomial& t, int k) { t.arcs[a].dots += k; };
        } else if (r.dart_arc <= -1000) {
            int o = -1000 - r.dart_arc;
            const PBubble& sib = m.bubbles[o];
            j = sib.label;
            // inside of a cw circle is right-of-flow: entering crosses
            // left->right (family S); entering a ccw circle is family R
            family_S = sib.cw;
            w_tgt = w_src.shifted(sib.cw ? -1 : +1, sib.label, *datum_);
            tgt_anchor = Anchor{Anchor::BubbleInside, -1, false, o};
            add_strand_dots = [o](PlanarMonomial& t, int k) { t.bubbles[o].dots += k; };
        } else {
            int o = -2 - r.dart_arc;
            const PBubble& par = m.bubbles[o];
            j = par.label;
            // leaving a cw circle crosses right->left (family R)
            family_S = !par.cw;
            w_tgt = bubble_region_weight(m, F, o, *datum_);
            tgt_anchor = par.anchor;
            add_strand_dots = [o](PlanarMonomial& t, int k) { t.bubbles[o].dots += k; };
        }
        int d = datum_->dot(i, j);
        int h_tgt = w_tgt.pairing(i);
        auto emit = [&](long long coeff, int strand_dots, int tgt_index) {
            if (coeff == 0) return;
            int dots = pb.cw ? h_tgt - 1 + tgt_index : -h_tgt - 1 + tgt_index;
            PlanarMonomial t = m;
            t.invalidate();
            add_strand_dots(t, strand_dots);
            t.bubbles.erase(t.bubbles.begin() + r.bubble);
            for (auto& fl : t.bubbles)
                if (fl.anchor.kind == Anchor::BubbleInside && fl.anchor.bubble > r.bubble)
                    fl.anchor.bubble -= 1;
            Anchor anch = tgt_anchor;
            if (anch.kind == Anchor::BubbleInside && anch.bubble > r.bubble) anch.bubble -= 1;
            BubblePoly poly =
                eval_bubbles({{i, pb.cw, dots}}, w_tgt, *datum_, field_);
            emit_with_bubbles(out, t, poly, anch, Scalar::of_int(coeff, field_));
        };
        bool bubble_matches_family = pb.cw == family_S;
        if (i == j) {
            if (bubble_matches_family) {
                // (alpha+1-f) x^{alpha-f} at index f
                for (int f = 0; f <= alpha; ++f) emit(alpha + 1 - f, alpha - f, f);
            } else {
                emit(1, 2, alpha - 2);
                emit(-2, 1, alpha - 1);
                emit(1, 0, alpha);
            }
        } else if (d == 0) {
            emit(1, 0, alpha);
        } else {
            if (bubble_matches_family) {
                emit(1, 0, alpha);
                emit(1, 1, alpha - 1);
            } else {
                for (int f = 0; f <= alpha; ++f) emit(f % 2 ? -1 : 1, f, alpha - f);
            }
        }
        return out;
    }

    throw std::invalid_argument("unknown rule " + r.rule);
}

LinComb<PlanarMonomial> PivotalRules::eval_monomial_bubbles(const PlanarMonomial& m) const {
    LinComb<PlanarMonomial> u = LinComb<PlanarMonomial>::monomial(m, field_);
    while (true) {
        bool fired = false;
        for (const auto& [k, t] : u.terms()) {
            auto redexes = find_redexes(t.first);
            for (const auto& r : redexes) {
                if (r.rule != "bub") continue;
                u = replace_monomial(u, t.first, apply(t.first, r));
                fired = true;
                break;
            }
            if (fired) break;
        }
        if (!fired) return u;
    }
}

// ---------------------------------------------------------------------------
// Quasi-normal forms.

namespace {

std::vector<int> face_distances(const PlanarMonomial& m, const PlanarMonomial::Faces& F) {
    std::vector<int> dist(F.faces, 1 << 20);
    dist[F.rightmost_face] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t a = 0; a < m.arcs.size(); ++a) {
            int f0 = F.face_of_dart[a][0], f1 = F.face_of_dart[a][1];
            if (dist[f0] + 1 < dist[f1]) {
                dist[f1] = dist[f0] + 1;
                changed = true;
            }
            if (dist[f1] + 1 < dist[f0]) {
                dist[f0] = dist[f1] + 1;
                changed = true;
            }
        }
    }
    return dist;
}

// designated slides: strictly toward the rightmost region, out of nests
bool slide_designated(const PivotalRules& rules, const PlanarMonomial& m,
                      const PivotalRules::Redex& r) {
    const auto& F = m.faces(rules.datum());
    auto dist = face_distances(m, F);
    auto depth = [&](const Anchor& an) -> int {
        int d = 0;
        Anchor cur = an;
        while (cur.kind == Anchor::BubbleInside) {
            d += 1000;
            cur = m.bubbles[cur.bubble].anchor;
        }
        int f = face_of_anchor(m, F, cur);
        return d + (f >= 0 ? dist[f] : (1 << 19));
    };
    int src = depth(m.bubbles[r.bubble].anchor);
    int tgt;
    if (r.dart_arc >= 0) {
        tgt = dist[F.face_of_dart[r.dart_arc][1 - r.dart_end]];
    } else if (r.dart_arc <= -1000) {
        tgt = 1 << 19;  // nesting deeper is never designated
    } else {
        int o = -2 - r.dart_arc;
        tgt = depth(m.bubbles[o].anchor);
    }
    return tgt < src;
}

}  // namespace

QnfResult quasi_normal_form(const PivotalRules& rules, LinComb<PlanarMonomial> u, size_t fuel) {
    QnfResult res;
    std::set<std::string> seen;
    seen.insert(u.str());
    for (size_t step = 0; step < fuel; ++step) {
        bool applied = false;
        // phase 1: tau-decreasing
        for (const auto& [k, t] : u.terms()) {
            auto rx = rules.find_redexes(t.first);
            for (const auto& r : rx) {
                if (r.tau_delta >= 0) continue;
                auto rhs = rules.apply(t.first, r);
                std::string pre = state_hash(u.str());
                u = replace_monomial(u, t.first, rhs);
                res.trace.push_back({r.rule, r.position, pre, state_hash(u.str())});
                applied = true;
                break;
            }
            if (applied) break;
        }
        if (!applied) {
            // phase 2: non-loop-prone, guarded by the memo
            for (const auto& [k, t] : u.terms()) {
                auto rx = rules.find_redexes(t.first);
                for (const auto& r : rx) {
                    if (r.loop_prone || r.tau_delta < 0) continue;
                    auto rhs = rules.apply(t.first, r);
                    auto cand = replace_monomial(u, t.first, rhs);
                    if (seen.count(cand.str())) continue;
                    std::string pre = state_hash(u.str());
                    u = cand;
                    res.trace.push_back({r.rule, r.position, pre, state_hash(u.str())});
                    applied = true;
                    break;
                }
                if (applied) break;
            }
        }
        if (!applied) {
            // phase 3: designated loop-prone slides
            for (const auto& [k, t] : u.terms()) {
                auto rx = rules.find_redexes(t.first);
                for (const auto& r : rx) {
                    if (!r.loop_prone) continue;
                    if (!slide_designated(rules, t.first, r)) continue;
                    auto rhs = rules.apply(t.first, r);
                    auto cand = replace_monomial(u, t.first, rhs);
                    if (seen.count(cand.str())) continue;
                    std::string pre = state_hash(u.str());
                    u = cand;
                    res.trace.push_back({r.rule, r.position, pre, state_hash(u.str())});
                    applied = true;
                    break;
                }
                if (applied) break;
            }
        }
        if (!applied) {
            res.result = u;
            res.steps = res.trace.size();
            return res;
        }
        seen.insert(u.str());
    }
    res.result = u;
    res.steps = res.trace.size();
    res.fuel_exhausted = true;
    return res;
}

bool only_loop_prone_left(const PivotalRules& rules, const LinComb<PlanarMonomial>& u) {
    for (const auto& [k, t] : u.terms()) {
        auto rx = rules.find_redexes(t.first);
        for (const auto& r : rx) {
            if (r.loop_prone) continue;
            // a non-loop-prone redex is tolerable only when it cycles back
            auto rhs = rules.apply(t.first, r);
            auto cand = replace_monomial(u, t.first, rhs);
            auto back = quasi_normal_form(rules, cand, 2000);
            if (back.fuel_exhausted || !(back.result == u)) return false;
        }
    }
    return true;
}

}  // namespace klrr
