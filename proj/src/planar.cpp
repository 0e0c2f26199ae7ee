#include "klrr/planar.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace klrr {

// ---------------------------------------------------------------------------
// Build from a recipe. The scan draws strictly upward, one horizontal band
// per token, so face adjacencies recorded at a row stay valid.

namespace {

struct Wire {
    int arc;
    int end;   // which end of the arc this wire owns (still open)
    int sign;  // +1 up, -1 down
    Vertex label;
};

}  // namespace

PlanarMonomial build_planar(const std::vector<SignedLabel>& bottom, const Weight& lambda,
                            const Recipe& recipe, const CartanDatum& datum) {
    PlanarMonomial M;
    M.bottom = bottom;
    M.lambda = lambda;
    std::vector<Wire> wires;
    const Attach open_att{Attach::Bottom, -1, 0};
    for (size_t t = 0; t < bottom.size(); ++t) {
        PArc a;
        a.end[0] = {Attach::Bottom, static_cast<int>(t), 0};
        a.end[1] = open_att;
        a.label = bottom[t].label;
        a.flow01 = bottom[t].sign > 0;
        a.dots = 0;
        M.arcs.push_back(a);
        wires.push_back({static_cast<int>(M.arcs.size()) - 1, 1, bottom[t].sign, bottom[t].label});
    }
    int degree = 0;

    auto slot_weight = [&](int east_of) {
        // weight of the gap just east of wire position east_of (1-based);
        // east_of = wires.size() gives lambda
        Weight w = lambda;
        for (int t = static_cast<int>(wires.size()); t > east_of; --t)
            w = w.shifted(wires[t - 1].sign, wires[t - 1].label, datum);
        return w;
    };

    auto anchor_west_of_wire = [&](int pos) -> Anchor {
        // the face containing the gap west of wire `pos`; past the last wire
        // it is the rightmost region
        if (pos > static_cast<int>(wires.size())) return Anchor{Anchor::Rightmost, -1, false, -1};
        const Wire& w = wires[pos - 1];
        return Anchor{Anchor::ArcSide, w.arc, w.sign > 0, -1};
    };

    for (const PTok& tok : recipe) {
        int k = tok.pos;
        int m = static_cast<int>(wires.size());
        switch (tok.kind) {
            case PTok::Dot: {
                if (k < 1 || k > m) throw std::invalid_argument("dot position out of range");
                M.arcs[wires[k - 1].arc].dots += 1;
                degree += datum.dot(wires[k - 1].label, wires[k - 1].label);
                break;
            }
            case PTok::Cross: {
                if (k < 1 || k + 1 > m) throw std::invalid_argument("cross position out of range");
                Wire wl = wires[k - 1], wr = wires[k];
                if (wl.sign != wr.sign)
                    throw std::invalid_argument(
                        "cross needs equal orientations (bend strands with caps/cups)");
                degree -= datum.dot(wl.label, wr.label);
                int c = static_cast<int>(M.crossings.size());
                M.crossings.push_back({{-1, -1, -1, -1}, {0, 0, 0, 0}});
                M.arcs[wl.arc].end[wl.end] = {Attach::Port, c, 0};
                M.crossings[c].arc[0] = wl.arc;
                M.crossings[c].arc_end[0] = wl.end;
                M.arcs[wr.arc].end[wr.end] = {Attach::Port, c, 1};
                M.crossings[c].arc[1] = wr.arc;
                M.crossings[c].arc_end[1] = wr.end;
                PArc nw{{{Attach::Port, c, 3}, open_att}, wr.label, wr.sign > 0, 0};
                M.arcs.push_back(nw);
                int nw_id = static_cast<int>(M.arcs.size()) - 1;
                M.crossings[c].arc[3] = nw_id;
                M.crossings[c].arc_end[3] = 0;
                PArc ne{{{Attach::Port, c, 2}, open_att}, wl.label, wl.sign > 0, 0};
                M.arcs.push_back(ne);
                int ne_id = static_cast<int>(M.arcs.size()) - 1;
                M.crossings[c].arc[2] = ne_id;
                M.crossings[c].arc_end[2] = 0;
                wires[k - 1] = {nw_id, 1, wr.sign, wr.label};
                wires[k] = {ne_id, 1, wl.sign, wl.label};
                break;
            }
            case PTok::Cap: {
                if (k < 1 || k + 1 > m) throw std::invalid_argument("cap position out of range");
                Wire wl = wires[k - 1], wr = wires[k];
                if (wl.label != wr.label) throw std::invalid_argument("cap on distinct labels");
                if (wl.sign == wr.sign) throw std::invalid_argument("cap on equal orientations");
                Vertex i = wl.label;
                Weight loc = slot_weight(k + 1);
                int half = datum.dot(i, i) / 2;
                degree += half * (1 - (wl.sign > 0 ? 1 : -1) * loc.pairing(i));
                Anchor outer = [&] {
                    // face of the capped-off slot's surroundings: the gap
                    // east of the pair before removal
                    if (k + 2 <= m) {
                        const Wire& e = wires[k + 1];
                        return Anchor{Anchor::ArcSide, e.arc, e.sign > 0, -1};
                    }
                    return Anchor{Anchor::Rightmost, -1, false, -1};
                }();
                int a = wl.arc, b = wr.arc;
                int ea = wl.end, eb = wr.end;
                wires.erase(wires.begin() + (k - 1), wires.begin() + (k + 1));
                if (a == b) {
                    PBubble bub;
                    bub.label = i;
                    bub.cw = wl.sign > 0;
                    bub.dots = M.arcs[a].dots;
                    bub.anchor = outer;
                    int bid = static_cast<int>(M.bubbles.size());
                    auto remap = [&](Anchor& an) {
                        if (an.kind != Anchor::ArcSide || an.arc != a) return;
                        bool inside = an.left_of_flow == !bub.cw;
                        an = inside ? Anchor{Anchor::BubbleInside, -1, false, bid} : outer;
                    };
                    for (auto& fl : M.bubbles) remap(fl.anchor);
                    for (auto& cr : M.comps) remap(cr.host);
                    M.bubbles.push_back(bub);
                    M.arcs[a].label = -2;
                } else {
                    PArc merged;
                    merged.end[0] = M.arcs[a].end[1 - ea];
                    merged.end[1] = M.arcs[b].end[1 - eb];
                    merged.label = i;
                    merged.dots = M.arcs[a].dots + M.arcs[b].dots;
                    merged.flow01 = wl.sign > 0;
                    M.arcs.push_back(merged);
                    int nid = static_cast<int>(M.arcs.size()) - 1;
                    for (int e = 0; e < 2; ++e) {
                        Attach at = merged.end[e];
                        if (at.kind == Attach::Port) {
                            M.crossings[at.idx].arc[at.port] = nid;
                            M.crossings[at.idx].arc_end[at.port] = e;
                        }
                    }
                    for (Wire& w : wires) {
                        if (w.arc == a && w.end == 1 - ea) {
                            w.arc = nid;
                            w.end = 0;
                        } else if (w.arc == b && w.end == 1 - eb) {
                            w.arc = nid;
                            w.end = 1;
                        }
                    }
                    // anchors riding on the merged halves: the strand and its
                    // flow survive, so the side flag carries over
                    auto remap = [&](Anchor& an) {
                        if (an.kind == Anchor::ArcSide && (an.arc == a || an.arc == b))
                            an.arc = nid;
                    };
                    for (auto& fl : M.bubbles) remap(fl.anchor);
                    for (auto& cr : M.comps) {
                        remap(cr.outer);
                        remap(cr.host);
                    }
                    M.arcs[a].label = -2;
                    M.arcs[b].label = -2;
                    // did this close a crossed component? (no wires, no
                    // boundary attachments left in it)
                    {
                        std::set<int> arcs_seen{nid}, cross_seen;
                        std::vector<int> stack = {nid};
                        bool boundary = false;
                        while (!stack.empty()) {
                            int x = stack.back();
                            stack.pop_back();
                            for (int e = 0; e < 2; ++e) {
                                const Attach& at = M.arcs[x].end[e];
                                if (at.kind == Attach::Port) {
                                    if (!cross_seen.insert(at.idx).second) continue;
                                    for (int p = 0; p < 4; ++p) {
                                        int y = M.crossings[at.idx].arc[p];
                                        if (arcs_seen.insert(y).second) stack.push_back(y);
                                    }
                                } else if (at.idx >= 0) {
                                    boundary = true;
                                }
                            }
                        }
                        bool open = false;
                        for (const Wire& w : wires) open |= arcs_seen.count(w.arc) > 0;
                        if (!boundary && !open && !cross_seen.empty()) {
                            // the face above the cap is the component's outside
                            M.comps.push_back(
                                {Anchor{Anchor::ArcSide, nid, M.arcs[nid].flow01, -1}, outer});
                        }
                    }
                }
                break;
            }
            case PTok::CupR:
            case PTok::CupL: {
                if (k < 1 || k > m + 1) throw std::invalid_argument("cup position out of range");
                Vertex i = tok.label;
                if (i < 0 || i >= datum.rank()) throw std::invalid_argument("cup needs a label");
                bool right = tok.kind == PTok::CupR;  // eta: creates (down, up)
                Weight loc = slot_weight(k - 1);
                int half = datum.dot(i, i) / 2;
                degree += half * (1 + (right ? 1 : -1) * loc.pairing(i));
                int lsign = right ? -1 : +1;
                PArc cup{{open_att, open_att}, i, lsign < 0, 0};
                M.arcs.push_back(cup);
                int aid = static_cast<int>(M.arcs.size()) - 1;
                wires.insert(wires.begin() + (k - 1),
                             {Wire{aid, 0, lsign, i}, Wire{aid, 1, -lsign, i}});
                break;
            }
            case PTok::Bubble: {
                int kk = k < 1 ? m + 1 : k;
                if (kk > m + 1) throw std::invalid_argument("bubble position out of range");
                Vertex i = tok.label;
                if (i < 0 || i >= datum.rank()) throw std::invalid_argument("bubble needs a label");
                if (tok.dots < 0) throw std::invalid_argument("stored bubbles need dots >= 0");
                Weight loc = slot_weight(kk - 1);
                degree += datum.dot(i, i) * (1 - (tok.cw ? 1 : -1) * loc.pairing(i) + tok.dots);
                M.bubbles.push_back({i, tok.cw, tok.dots, anchor_west_of_wire(kk)});
                break;
            }
        }
    }

    for (size_t t = 0; t < wires.size(); ++t) {
        const Wire& w = wires[t];
        M.top.push_back({w.sign, w.label});
        M.arcs[w.arc].end[w.end] = {Attach::Top, static_cast<int>(t), 0};
    }

    // compact tombstoned arcs
    std::vector<int> newid(M.arcs.size(), -1);
    std::vector<PArc> arcs2;
    for (size_t a = 0; a < M.arcs.size(); ++a) {
        if (M.arcs[a].label == -2) continue;
        newid[a] = static_cast<int>(arcs2.size());
        arcs2.push_back(M.arcs[a]);
    }
    for (auto& c : M.crossings)
        for (int p = 0; p < 4; ++p) c.arc[p] = newid[c.arc[p]];
    for (auto& b : M.bubbles)
        if (b.anchor.kind == Anchor::ArcSide) b.anchor.arc = newid[b.anchor.arc];
    for (auto& cr : M.comps) {
        if (cr.outer.kind == Anchor::ArcSide) cr.outer.arc = newid[cr.outer.arc];
        if (cr.host.kind == Anchor::ArcSide) cr.host.arc = newid[cr.host.arc];
    }
    M.arcs = std::move(arcs2);
    M.degree_cached = degree;

    for (const auto& a : M.arcs)
        for (int e = 0; e < 2; ++e)
            if (a.end[e].kind != Attach::Port && a.end[e].idx < 0)
                throw std::logic_error("unresolved arc end after build");
    return M;
}

PlanarMonomial embed_layered(const LayeredMonomial& m, const Weight& lambda,
                             const CartanDatum& datum) {
    std::vector<SignedLabel> bottom;
    for (Vertex v : m.source()) bottom.push_back({+1, v});
    Recipe r;
    for (const Layer& l : m.layers())
        r.push_back({l.gen == Gen::Dot ? PTok::Dot : PTok::Cross, l.offset});
    return build_planar(bottom, lambda, r, datum);
}

// ---------------------------------------------------------------------------
// Structure tracing shared by the canonical key and the face query.
//
// Faces are orbits of darts under "walk the arc, then turn clockwise at the
// head": arriving at port p leaves at port p-1 (mod 4). At the boundary the
// walk continues along the disk edge to the next attachment. Everything here
// is isotopy data: cyclic port order, strand orientations, labels, dots,
// float placement.

namespace {

struct Structure {
    // strand traversal
    std::string strands;
    std::vector<std::pair<int, int>> emission;  // darts in discovery order
    std::vector<int> cross_disc, cross_ref;
    // faces of the boundary-anchored part
    std::vector<std::vector<int>> face_of_dart;
    std::vector<int> bottom_gap_face, top_gap_face;
    int rightmost = -1;
    int faces = 0;
    std::vector<bool> arc_anchored;
};

struct Walker {
    const PlanarMonomial& M;
    std::vector<Attach> order;

    explicit Walker(const PlanarMonomial& m) : M(m) {
        for (int t = 0; t < static_cast<int>(M.bottom.size()); ++t)
            order.push_back({Attach::Bottom, t, 0});
        for (int t = static_cast<int>(M.top.size()) - 1; t >= 0; --t)
            order.push_back({Attach::Top, t, 0});
    }

    std::pair<int, int> arc_at(const Attach& at) const {
        for (size_t i = 0; i < M.arcs.size(); ++i)
            for (int e = 0; e < 2; ++e)
                if (M.arcs[i].end[e] == at) return {static_cast<int>(i), e};
        throw std::logic_error("boundary attachment without arc");
    }

    int order_index(const Attach& a) const {
        for (size_t t = 0; t < order.size(); ++t)
            if (order[t] == a) return static_cast<int>(t);
        throw std::logic_error("attachment not on boundary");
    }
};

// strand walk emitting invariant tokens; shared by anchored and floating
// component traces
struct StrandTracer {
    const PlanarMonomial& M;
    std::vector<int>& cross_disc;
    std::vector<int>& cross_ref;
    std::vector<std::pair<int, int>>& emission;
    std::vector<bool> arc_done;
    int* disc;
    std::string out;

    StrandTracer(const PlanarMonomial& m, std::vector<int>& cd, std::vector<int>& cr,
                 std::vector<std::pair<int, int>>& em, int* d)
        : M(m), cross_disc(cd), cross_ref(cr), emission(em), disc(d) {
        arc_done.assign(M.arcs.size(), false);
    }

    void emit_arc(int a, int from) {
        arc_done[a] = true;
        emission.push_back({a, from});
        const PArc& arc = M.arcs[a];
        out += "a(" + std::to_string(arc.dots) + "," + std::to_string(arc.label) + "," +
               ((arc.flow01 == (from == 0)) ? "+" : "-") + ")";
    }

    void walk(int a, int from) {
        int a0 = a, f0 = from;
        while (true) {
            emit_arc(a, from);
            Attach head = M.arcs[a].end[1 - from];
            if (head.kind != Attach::Port) {
                out += (head.kind == Attach::Bottom ? "b" : "t") + std::to_string(head.idx) + ";";
                return;
            }
            int c = head.idx;
            if (cross_disc[c] < 0) {
                cross_disc[c] = (*disc)++;
                cross_ref[c] = head.port;
            }
            int rel = ((head.port - cross_ref[c]) % 4 + 4) % 4;
            out += "x" + std::to_string(cross_disc[c]) + "." + std::to_string(rel) + ";";
            int exit = (head.port + 2) % 4;
            int na = M.crossings[c].arc[exit];
            int ne = M.crossings[c].arc_end[exit];
            if (na == a0 && ne == f0) {
                out += "o;";
                return;
            }
            a = na;
            from = ne;
        }
    }
};

Structure trace_structure(const PlanarMonomial& M) {
    Structure S;
    Walker W(M);
    S.cross_disc.assign(M.crossings.size(), -1);
    S.cross_ref.assign(M.crossings.size(), 0);
    int disc = 0;
    StrandTracer tr(M, S.cross_disc, S.cross_ref, S.emission, &disc);
    for (const Attach& at : W.order) {
        auto [a, e] = W.arc_at(at);
        if (tr.arc_done[a]) continue;
        tr.out += "|s";
        tr.walk(a, e);
    }
    // closed strands hanging off visited crossings
    while (true) {
        int best_c = -1, best_rel = 5;
        for (size_t c = 0; c < M.crossings.size(); ++c) {
            if (S.cross_disc[c] < 0) continue;
            for (int p = 0; p < 4; ++p) {
                int a = M.crossings[c].arc[p];
                if (tr.arc_done[a]) continue;
                int rel = ((p - S.cross_ref[c]) % 4 + 4) % 4;
                if (best_c < 0 || S.cross_disc[c] < S.cross_disc[best_c] ||
                    (S.cross_disc[c] == S.cross_disc[best_c] && rel < best_rel)) {
                    best_c = static_cast<int>(c);
                    best_rel = rel;
                }
            }
        }
        if (best_c < 0) break;
        int p = (S.cross_ref[best_c] + best_rel) % 4;
        tr.out += "|l" + std::to_string(S.cross_disc[best_c]) + "." + std::to_string(best_rel) +
                  ";";
        tr.walk(M.crossings[best_c].arc[p], M.crossings[best_c].arc_end[p]);
    }
    S.strands = tr.out;
    S.arc_anchored = tr.arc_done;

    // face tracing over the anchored part; the disk boundary is a cycle of
    // attachments and gap tokens
    S.face_of_dart.assign(M.arcs.size(), std::vector<int>(2, -1));
    S.bottom_gap_face.assign(M.bottom.size() + 1, -1);
    S.top_gap_face.assign(M.top.size() + 1, -1);
    int m = static_cast<int>(M.bottom.size()), n = static_cast<int>(M.top.size());
    struct BToken {
        int kind;  // 0 attachment, 1 bottom gap, 2 top gap, 3 east mark
        Attach att;
        int gap;
    };
    std::vector<BToken> cycle;
    for (int t = 0; t < m; ++t) {
        cycle.push_back({0, {Attach::Bottom, t, 0}, 0});
        cycle.push_back({1, {}, t + 1});
    }
    if (m == 0) cycle.push_back({1, {}, 0});
    cycle.push_back({3, {}, 0});
    cycle.push_back({2, {}, n});
    for (int t = n - 1; t >= 0; --t) {
        cycle.push_back({0, {Attach::Top, t, 0}, 0});
        cycle.push_back({2, {}, t});
    }
    if (m > 0) cycle.push_back({1, {}, 0});
    auto cycle_index = [&](const Attach& at) {
        for (size_t t = 0; t < cycle.size(); ++t)
            if (cycle[t].kind == 0 && cycle[t].att == at) return static_cast<int>(t);
        throw std::logic_error("attachment not on boundary cycle");
    };
    auto trace_face = [&](int a0, int e0) {
        int fid = S.faces++;
        int a = a0, e = e0;
        while (true) {
            if (S.face_of_dart[a][e] != -1) break;
            S.face_of_dart[a][e] = fid;
            Attach head = M.arcs[a].end[1 - e];
            if (head.kind == Attach::Port) {
                int g = (head.port + 3) % 4;
                int na = M.crossings[head.idx].arc[g];
                int ne = M.crossings[head.idx].arc_end[g];
                a = na;
                e = ne;
            } else {
                int t = cycle_index(head);
                while (true) {
                    t = (t + 1) % static_cast<int>(cycle.size());
                    const BToken& tok = cycle[t];
                    if (tok.kind == 0) break;
                    if (tok.kind == 1) S.bottom_gap_face[tok.gap] = fid;
                    if (tok.kind == 2) S.top_gap_face[tok.gap] = fid;
                    if (tok.kind == 3) S.rightmost = fid;
                }
                auto [na, ne] = W.arc_at(cycle[t].att);
                a = na;
                e = ne;
            }
            if (a == a0 && e == e0) break;
        }
    };
    for (auto [a, e] : S.emission) {
        if (!S.arc_anchored[a]) continue;  // emission covers anchored darts only here
        if (S.face_of_dart[a][e] == -1) trace_face(a, e);
        if (S.face_of_dart[a][1 - e] == -1) trace_face(a, 1 - e);
    }
    if (S.rightmost == -1) {
        // no anchored arcs (fully floating diagram) or no east-gap face yet
        S.rightmost = S.faces++;
        if (!W.order.empty() && !S.emission.empty())
            throw std::logic_error("rightmost face missed by tracing");
        for (auto& f : S.bottom_gap_face) f = S.rightmost;
        for (auto& f : S.top_gap_face) f = S.rightmost;
    }
    return S;
}

// minimal strand-trace over all starting darts of a floating crossed
// component; also reports its canonical dart emission
struct ComponentTrace {
    std::string code;
    std::vector<std::pair<int, int>> emission;
    std::vector<int> cross_disc, cross_ref;
    std::vector<std::vector<int>> face_of_dart;
    int faces = 0;
};

std::vector<int> component_arcs(const PlanarMonomial& M, int seed_arc) {
    std::set<int> arcs_seen{seed_arc};
    std::set<int> cross_seen;
    std::vector<int> stack = {seed_arc};
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int e = 0; e < 2; ++e) {
            const Attach& at = M.arcs[a].end[e];
            if (at.kind != Attach::Port) continue;
            if (!cross_seen.insert(at.idx).second) continue;
            for (int p = 0; p < 4; ++p) {
                int b = M.crossings[at.idx].arc[p];
                if (arcs_seen.insert(b).second) stack.push_back(b);
            }
        }
    }
    return std::vector<int>(arcs_seen.begin(), arcs_seen.end());
}

ComponentTrace trace_component(const PlanarMonomial& M, const std::vector<int>& arcs_in) {
    ComponentTrace best;
    bool first = true;
    for (int a0 : arcs_in) {
        for (int e0 = 0; e0 < 2; ++e0) {
            ComponentTrace ct;
            ct.cross_disc.assign(M.crossings.size(), -1);
            ct.cross_ref.assign(M.crossings.size(), 0);
            int disc = 0;
            StrandTracer tr(M, ct.cross_disc, ct.cross_ref, ct.emission, &disc);
            tr.out += "|c";
            tr.walk(a0, e0);
            // further closed strands of the same component
            while (true) {
                int best_c = -1, best_rel = 5;
                for (size_t c = 0; c < M.crossings.size(); ++c) {
                    if (ct.cross_disc[c] < 0) continue;
                    for (int p = 0; p < 4; ++p) {
                        int a = M.crossings[c].arc[p];
                        if (tr.arc_done[a]) continue;
                        int rel = ((p - ct.cross_ref[c]) % 4 + 4) % 4;
                        if (best_c < 0 || ct.cross_disc[c] < ct.cross_disc[best_c] ||
                            (ct.cross_disc[c] == ct.cross_disc[best_c] && rel < best_rel)) {
                            best_c = static_cast<int>(c);
                            best_rel = rel;
                        }
                    }
                }
                if (best_c < 0) break;
                int p = (ct.cross_ref[best_c] + best_rel) % 4;
                tr.out += "|l" + std::to_string(ct.cross_disc[best_c]) + "." +
                          std::to_string(best_rel) + ";";
                tr.walk(M.crossings[best_c].arc[p], M.crossings[best_c].arc_end[p]);
            }
            ct.code = tr.out;
            if (first || ct.code < best.code) {
                best = ct;
                first = false;
            }
        }
    }
    // face tracing inside the component (no boundary)
    best.face_of_dart.assign(M.arcs.size(), std::vector<int>(2, -1));
    auto trace_face = [&](int a0, int e0) {
        int fid = best.faces++;
        int a = a0, e = e0;
        while (true) {
            if (best.face_of_dart[a][e] != -1) break;
            best.face_of_dart[a][e] = fid;
            Attach head = M.arcs[a].end[1 - e];
            if (head.kind != Attach::Port) throw std::logic_error("open arc in floating component");
            int g = (head.port + 3) % 4;
            int na = M.crossings[head.idx].arc[g];
            int ne = M.crossings[head.idx].arc_end[g];
            a = na;
            e = ne;
            if (a == a0 && e == e0) break;
        }
    };
    for (auto [a, e] : best.emission) {
        if (best.face_of_dart[a][e] == -1) trace_face(a, e);
        if (best.face_of_dart[a][1 - e] == -1) trace_face(a, 1 - e);
    }
    return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// Canonical key.

const std::string& PlanarMonomial::key() const {
    if (key_) return *key_;
    std::string h = "P[";
    for (const auto& s : bottom) h += (s.sign > 0 ? "+" : "-") + std::to_string(s.label);
    h += "|";
    for (const auto& s : top) h += (s.sign > 0 ? "+" : "-") + std::to_string(s.label);
    h += "|w";
    for (int t = 0; t < lambda.rank(); ++t) h += std::to_string(lambda.pairing(t)) + ",";
    h += "]";

    Structure S = trace_structure(*this);
    h += S.strands;

    // floating crossed components, grouped by face later
    std::vector<std::vector<int>> float_comps;  // arcs per floating component
    {
        std::vector<bool> seen(arcs.size(), false);
        for (size_t a = 0; a < arcs.size(); ++a) seen[a] = S.arc_anchored[a];
        for (size_t a = 0; a < arcs.size(); ++a) {
            if (seen[a]) continue;
            auto comp = component_arcs(*this, static_cast<int>(a));
            for (int x : comp) seen[x] = true;
            float_comps.push_back(std::move(comp));
        }
    }
    std::vector<ComponentTrace> ctraces;
    std::vector<int> comp_of_arc(arcs.size(), -1);
    for (size_t ci = 0; ci < float_comps.size(); ++ci) {
        ctraces.push_back(trace_component(*this, float_comps[ci]));
        for (int a : float_comps[ci]) comp_of_arc[a] = static_cast<int>(ci);
    }

    // place every float (bubble or crossed component) into a host region:
    //   host = anchored face f, or inside bubble b, or face of component
    struct Region {
        int kind;  // 0 anchored face, 1 bubble inside, 2 component face
        int a, b;
    };
    auto region_key = [](const Region& r) {
        return std::to_string(r.kind) + "." + std::to_string(r.a) + "." + std::to_string(r.b);
    };
    auto anchor_region = [&](const Anchor& an) -> Region {
        if (an.kind == Anchor::Rightmost) return {0, S.rightmost, 0};
        if (an.kind == Anchor::BubbleInside) return {1, an.bubble, 0};
        int e0 = arcs[an.arc].flow01 ? 0 : 1;
        int e = an.left_of_flow ? e0 : 1 - e0;
        if (S.arc_anchored[an.arc]) return {0, S.face_of_dart[an.arc][e], 0};
        int ci = comp_of_arc[an.arc];
        return {2, ci, ctraces[ci].face_of_dart[an.arc][e]};
    };

    // recursive encodings: bubbles and components may nest
    std::map<std::string, std::vector<std::string>> region_floats;
    std::function<std::string(int)> bubble_code = [&](int b) -> std::string {
        std::string s = "B(" + std::to_string(bubbles[b].label) + "," +
                        (bubbles[b].cw ? "cw" : "ccw") + "," + std::to_string(bubbles[b].dots) +
                        ")";
        std::vector<std::string> inner;
        for (size_t o = 0; o < bubbles.size(); ++o)
            if (bubbles[o].anchor.kind == Anchor::BubbleInside &&
                bubbles[o].anchor.bubble == static_cast<int>(b))
                inner.push_back(bubble_code(static_cast<int>(o)));
        std::sort(inner.begin(), inner.end());
        for (auto& s2 : inner) s += "{" + s2 + "}";
        return s;
    };
    for (size_t b = 0; b < bubbles.size(); ++b) {
        if (bubbles[b].anchor.kind == Anchor::BubbleInside) continue;
        Region r = anchor_region(bubbles[b].anchor);
        region_floats[region_key(r)].push_back(bubble_code(static_cast<int>(b)));
    }
    auto host_of_comp = [&](int ci) -> Region {
        for (const auto& cr : comps)
            if (cr.outer.kind == Anchor::ArcSide && comp_of_arc[cr.outer.arc] == ci)
                return anchor_region(cr.host);
        return {0, S.rightmost, 0};
    };
    for (size_t ci = 0; ci < float_comps.size(); ++ci) {
        Region r = host_of_comp(static_cast<int>(ci));
        std::string code = ctraces[ci].code;
        // floats living inside this component's faces
        std::map<int, std::vector<std::string>> per_face;
        for (size_t b = 0; b < bubbles.size(); ++b) {
            if (bubbles[b].anchor.kind != Anchor::ArcSide) continue;
            if (comp_of_arc[bubbles[b].anchor.arc] != static_cast<int>(ci)) continue;
            Region rb = anchor_region(bubbles[b].anchor);
            per_face[rb.b].push_back(bubble_code(static_cast<int>(b)));
        }
        for (auto& [f, codes] : per_face) {
            std::sort(codes.begin(), codes.end());
            code += "|cf" + std::to_string(f) + ":";
            for (auto& c : codes) code += c + ";";
        }
        region_floats[region_key(r)].push_back("C{" + code + "}");
    }
    for (auto& [rk, codes] : region_floats) {
        std::sort(codes.begin(), codes.end());
        h += "|r" + rk + ":";
        for (auto& c : codes) h += c + ";";
    }
    key_ = std::move(h);
    return *key_;
}

// ---------------------------------------------------------------------------
// Faces with weights and float placement (needs the datum).

const PlanarMonomial::Faces& PlanarMonomial::faces(const CartanDatum& datum) const {
    if (faces_) return *faces_;
    Structure S = trace_structure(*this);
    Faces F;
    // trace faces of floating crossed components too, appending ids
    std::vector<int> comp_of_arc(arcs.size(), -1);
    std::vector<std::vector<int>> float_comps;
    for (size_t a = 0; a < arcs.size(); ++a) {
        if (S.arc_anchored[a] || comp_of_arc[a] >= 0) continue;
        auto comp = component_arcs(*this, static_cast<int>(a));
        for (int x : comp) comp_of_arc[x] = static_cast<int>(float_comps.size());
        float_comps.push_back(comp);
    }
    F.face_of_dart = S.face_of_dart;
    int fc = std::max(S.faces, S.rightmost + 1);
    for (auto& comp : float_comps) {
        std::function<void(int, int)> trace_face = [&](int a0, int e0) {
            int fid = fc++;
            int a = a0, e = e0;
            while (true) {
                if (F.face_of_dart[a][e] != -1) break;
                F.face_of_dart[a][e] = fid;
                Attach head = arcs[a].end[1 - e];
                int g = (head.port + 3) % 4;
                int na = crossings[head.idx].arc[g];
                int ne = crossings[head.idx].arc_end[g];
                a = na;
                e = ne;
                if (a == a0 && e == e0) break;
            }
        };
        for (int a : comp)
            for (int e = 0; e < 2; ++e)
                if (F.face_of_dart[a][e] == -1) trace_face(a, e);
    }
    F.bottom_gap_face = S.bottom_gap_face;
    F.top_gap_face = S.top_gap_face;
    F.rightmost_face = S.rightmost;
    F.faces = fc;

    // weights: rightmost region is lambda; floating components' outer faces
    // inherit their host region's weight; arcs relate the rest.
    F.weight.assign(F.faces, Weight(std::vector<int>(datum.rank(), 0)));
    std::vector<bool> have(F.faces, false);
    F.weight[F.rightmost_face] = lambda;
    have[F.rightmost_face] = true;
    auto face_of_anchor = [&](const Anchor& an) -> int {
        if (an.kind == Anchor::Rightmost) return F.rightmost_face;
        if (an.kind == Anchor::ArcSide) {
            int e0 = arcs[an.arc].flow01 ? 0 : 1;
            return an.left_of_flow ? F.face_of_dart[an.arc][e0]
                                   : F.face_of_dart[an.arc][1 - e0];
        }
        return -1;  // inside a bubble: not a traced face
    };
    // seed component outer faces once their hosts are known
    auto seed_components = [&]() {
        bool any = false;
        for (const auto& cr : comps) {
            int fo = face_of_anchor(cr.outer);
            int fh = face_of_anchor(cr.host);
            if (fo < 0) continue;
            if (fh >= 0 && have[fh] && !have[fo]) {
                F.weight[fo] = F.weight[fh];
                have[fo] = true;
                any = true;
            } else if (fh == -1 && !have[fo]) {
                // hosted inside a bubble: weight shifts across that circle
                const PBubble& pb = bubbles[cr.host.bubble];
                const Anchor* walk = &bubbles[cr.host.bubble].anchor;
                (void)walk;
                int fhost = F.face_of_float.empty() ? -1 : F.face_of_float[cr.host.bubble];
                if (fhost >= 0 && have[fhost]) {
                    F.weight[fo] =
                        F.weight[fhost].shifted(pb.cw ? -1 : +1, pb.label, datum);
                    have[fo] = true;
                    any = true;
                }
            }
        }
        return any;
    };
    F.floats_in_face.assign(F.faces, {});
    F.face_of_float.assign(bubbles.size(), -1);
    for (size_t b = 0; b < bubbles.size(); ++b) {
        int f = face_of_anchor(bubbles[b].anchor);
        F.face_of_float[b] = f;  // -1 when nested inside another bubble
        if (f >= 0) F.floats_in_face[f].push_back(static_cast<int>(b));
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t a = 0; a < arcs.size(); ++a) {
            int e0 = arcs[a].flow01 ? 0 : 1;
            int fl = F.face_of_dart[a][e0];
            int fr = F.face_of_dart[a][1 - e0];
            if (fl == fr) continue;
            if (have[fl] && !have[fr]) {
                F.weight[fr] = F.weight[fl].shifted(-1, arcs[a].label, datum);
                have[fr] = true;
                changed = true;
            } else if (have[fr] && !have[fl]) {
                F.weight[fl] = F.weight[fr].shifted(+1, arcs[a].label, datum);
                have[fl] = true;
                changed = true;
            } else if (have[fl] && have[fr]) {
                if (!(F.weight[fl] == F.weight[fr].shifted(+1, arcs[a].label, datum)))
                    throw std::logic_error("inconsistent region weights");
            }
        }
        changed = seed_components() || changed;
    }
    faces_ = std::move(F);
    return *faces_;
}

// canonical orders for deterministic redex positions
std::vector<int> canonical_crossing_order(const PlanarMonomial& m) {
    Structure S = trace_structure(m);
    std::vector<int> order(m.crossings.size(), 1 << 20);
    for (size_t c = 0; c < m.crossings.size(); ++c)
        if (S.cross_disc[c] >= 0) order[c] = S.cross_disc[c];
    // floating components: number after the anchored ones, in component-trace order
    int next = 0;
    for (int o : order)
        if (o != (1 << 20)) next = std::max(next, o + 1);
    std::vector<bool> seen(m.arcs.size(), false);
    for (size_t a = 0; a < m.arcs.size(); ++a) seen[a] = S.arc_anchored[a];
    for (size_t a = 0; a < m.arcs.size(); ++a) {
        if (seen[a]) continue;
        auto comp = component_arcs(m, static_cast<int>(a));
        for (int x : comp) seen[x] = true;
        auto ct = trace_component(m, comp);
        for (size_t c = 0; c < m.crossings.size(); ++c)
            if (ct.cross_disc[c] >= 0) order[c] = next + ct.cross_disc[c];
        for (size_t c = 0; c < m.crossings.size(); ++c)
            if (order[c] != (1 << 20)) next = std::max(next, order[c] + 1);
    }
    return order;
}

std::vector<int> canonical_arc_order(const PlanarMonomial& m) {
    Structure S = trace_structure(m);
    std::vector<int> order(m.arcs.size(), 1 << 20);
    int t = 0;
    for (auto [a, e] : S.emission)
        if (order[a] == (1 << 20)) order[a] = t++;
    std::vector<bool> seen(m.arcs.size(), false);
    for (size_t a = 0; a < m.arcs.size(); ++a) seen[a] = S.arc_anchored[a];
    for (size_t a = 0; a < m.arcs.size(); ++a) {
        if (seen[a]) continue;
        auto comp = component_arcs(m, static_cast<int>(a));
        for (int x : comp) seen[x] = true;
        auto ct = trace_component(m, comp);
        for (auto [x, e] : ct.emission)
            if (order[x] == (1 << 20)) order[x] = t++;
    }
    return order;
}

bool port_is_in(const PlanarMonomial& m, int c, int p) {
    int a = m.crossings[c].arc[p];
    int e = m.crossings[c].arc_end[p];
    // flow01: flows end0 -> end1; flow arrives at the port iff the port is
    // the head of the flow
    return m.arcs[a].flow01 == (e == 1);
}

}  // namespace klrr
