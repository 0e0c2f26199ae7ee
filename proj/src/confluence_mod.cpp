#include "klrr/confluence_mod.hpp"

#include <functional>
#include <set>

namespace klrr {

namespace {

PTok dot(int k) { return {PTok::Dot, k}; }
PTok cross(int k) { return {PTok::Cross, k}; }
PTok cap(int k) { return {PTok::Cap, k}; }
PTok cupR(Vertex i, int k) { return {PTok::CupR, k, i}; }
PTok cupL(Vertex i, int k) { return {PTok::CupL, k, i}; }

Recipe cat(std::initializer_list<Recipe> rs) {
    Recipe out;
    for (auto& r : rs) out.insert(out.end(), r.begin(), r.end());
    return out;
}

Recipe sigma(Vertex bent, int at) { return {cupR(bent, at), cross(at + 1), cap(at + 2)}; }
Recipe sigma_prime(Vertex bent, int at) { return {cupL(bent, at), cross(at + 1), cap(at + 2)}; }

}  // namespace

std::vector<ModBranching> enumerate_critical_modulo(const CartanDatum& datum, int lambda_range,
                                                    Field field) {
    PivotalRules rules(datum, field);
    std::vector<ModBranching> out;
    std::set<std::string> seen;

    // harvest every overlapping pair of non-slide redexes on a source
    auto harvest = [&](const PlanarMonomial& m, const std::string& family) {
        auto rx = rules.find_redexes(m);
        for (size_t a = 0; a < rx.size(); ++a)
            for (size_t b = a + 1; b < rx.size(); ++b) {
                if (rx[a].loop_prone || rx[b].loop_prone) continue;
                if (rx[a].rule == "bub" && rx[b].rule == "bub") continue;
                std::string id = m.key() + "|" + rx[a].rule + rx[a].position + "|" +
                                 rx[b].rule + rx[b].position;
                if (!seen.insert(id).second) continue;
                out.push_back({family, m, rx[a], rx[b]});
            }
    };

    // weights swept over the lambda range for every vertex
    std::vector<Weight> weights;
    {
        std::vector<int> cur(datum.rank(), 0);
        std::function<void(int)> rec = [&](int t) {
            if (t == datum.rank()) {
                weights.push_back(Weight(cur));
                return;
            }
            for (int h = -lambda_range; h <= lambda_range; ++h) {
                cur[t] = h;
                rec(t + 1);
            }
        };
        rec(0);
    }

    for (const Weight& lam : weights) {
        for (Vertex i = 0; i < datum.rank(); ++i) {
            std::vector<SignedLabel> du = {{-1, i}, {+1, i}};
            std::vector<SignedLabel> ud = {{+1, i}, {-1, i}};
            // fish with one dot on a through stub: the (A..D, alpha) families
            auto A = cat({{cupL(i, 1)}, sigma(i, 1)});
            auto B = cat({sigma_prime(i, 1), {cap(1)}});
            auto C = cat({sigma(i, 1), {cap(1)}});
            auto D = cat({{cupR(i, 1)}, sigma_prime(i, 1)});
            for (int pos = 1; pos <= 2; ++pos) {
                auto add_dot = [&](const Recipe& r, const std::vector<SignedLabel>& bot,
                                   bool at_end, const std::string& fam) {
                    Recipe r2 = r;
                    PTok d = dot(pos);
                    if (at_end)
                        r2.push_back(d);
                    else
                        r2.insert(r2.begin(), d);
                    try {
                        harvest(make_planar(datum, lam, bot, r2), fam);
                    } catch (const std::exception&) {
                    }
                };
                add_dot(A, {}, true, "fish-dot:A");
                add_dot(D, {}, true, "fish-dot:D");
                add_dot(B, du, false, "fish-dot:B");
                add_dot(C, ud, false, "fish-dot:C");
            }
            // bigons with one dot: the (E/F, alpha) families
            auto Esrc = cat({sigma_prime(i, 1), sigma(i, 1)});
            auto Fsrc = cat({sigma(i, 1), sigma_prime(i, 1)});
            for (int pos = 1; pos <= 2; ++pos)
                for (bool at_end : {false, true}) {
                    Recipe re = Esrc, rf = Fsrc;
                    if (at_end) {
                        re.push_back(dot(pos));
                        rf.push_back(dot(pos));
                    } else {
                        re.insert(re.begin(), dot(pos));
                        rf.insert(rf.begin(), dot(pos));
                    }
                    try {
                        harvest(make_planar(datum, lam, du, re), "bigon-dot:E");
                    } catch (const std::exception&) {
                    }
                    try {
                        harvest(make_planar(datum, lam, ud, rf), "bigon-dot:F");
                    } catch (const std::exception&) {
                    }
                }
            // the eight pairings between bigon and curl rules
            harvest(make_planar(datum, lam, {}, cat({{cupL(i, 1)}, sigma(i, 1), {cap(1)}})),
                    "pair:CA");
            harvest(make_planar(datum, lam, ud,
                                cat({{cupL(i, 1)}, sigma(i, 1), sigma_prime(i, 1)})),
                    "pair:FA");
            harvest(make_planar(datum, lam, {}, cat({{cupR(i, 1)}, sigma_prime(i, 1), {cap(1)}})),
                    "pair:BD");
            harvest(make_planar(datum, lam, du,
                                cat({{cupR(i, 1)}, sigma_prime(i, 1), sigma(i, 1)})),
                    "pair:ED");
            harvest(
                make_planar(datum, lam, ud, cat({sigma(i, 1), sigma_prime(i, 1), {cap(1)}})),
                "pair:BF");
            harvest(
                make_planar(datum, lam, du, cat({sigma_prime(i, 1), sigma(i, 1), {cap(1)}})),
                "pair:CE");
            harvest(make_planar(datum, lam, du,
                                cat({sigma_prime(i, 1), sigma(i, 1), sigma_prime(i, 1)})),
                    "pair:EF");
            harvest(make_planar(datum, lam, ud,
                                cat({sigma(i, 1), sigma_prime(i, 1), sigma(i, 1)})),
                    "pair:FE");
            // isotopy overlaps: a double crossing closed off on one side
            for (Vertex j = 0; j < datum.rank(); ++j) {
                std::vector<SignedLabel> bj = {{+1, j}};
                // circle of label i crossed twice by an upward j-strand,
                // closed on the west
                harvest(make_planar(datum, lam, bj,
                                    {cupR(i, 1), cross(2), cross(2), cap(1)}),
                        "iso:beta-F");
                // with a dot on the circle between the crossings
                harvest(make_planar(datum, lam, bj,
                                    {cupR(i, 1), cross(2), dot(3), cross(2), cap(1)}),
                        "iso:alpha-F");
                // mirrored: closed on the east
                harvest(make_planar(datum, lam, bj,
                                    {cupL(i, 2), cross(1), cross(1), cap(2)}),
                        "iso:beta-E");
                harvest(make_planar(datum, lam, bj,
                                    {cupL(i, 2), cross(1), dot(1), cross(1), cap(2)}),
                        "iso:alpha-E");
                // triangle closed off: gamma against the sideways rules
                std::vector<SignedLabel> bi = {{+1, i}};
                try {
                    harvest(make_planar(datum, lam, bi,
                                        {cupR(j, 1), cross(2), cupL(j, 4), cross(3), cross(2),
                                         cap(4), cap(1)}),
                            "iso:gamma-F");
                } catch (const std::exception&) {
                }
                try {
                    harvest(make_planar(datum, lam, bi,
                                        {cupL(j, 2), cross(1), cupR(j, 1), cross(2), cross(3),
                                         cap(1), cap(2)}),
                            "iso:gamma-E");
                } catch (const std::exception&) {
                }
            }
        }
    }
    return out;
}

int psi_qnf(const PivotalRules& rules, const LinComb<PlanarMonomial>& u, size_t fuel) {
    auto q = quasi_normal_form(rules, u, fuel);
    if (q.fuel_exhausted) throw std::runtime_error("psi_qnf: fuel exhausted");
    return static_cast<int>(q.steps);
}

ModJoinVerdict check_join_modulo(const PivotalRules& rules, const ModBranching& b, size_t fuel) {
    ModJoinVerdict v;
    auto u = LinComb<PlanarMonomial>::monomial(b.source, rules.field());
    auto left = replace_monomial(u, b.source, rules.apply(b.source, b.left));
    auto right = replace_monomial(u, b.source, rules.apply(b.source, b.right));
    auto ql = quasi_normal_form(rules, left, fuel);
    auto qr = quasi_normal_form(rules, right, fuel);
    v.fuel_exhausted = ql.fuel_exhausted || qr.fuel_exhausted;
    v.left_steps = ql.steps;
    v.right_steps = qr.steps;
    v.joined = !v.fuel_exhausted && ql.result == qr.result;
    // labels: along the designated closures the remaining distance drops by
    // one per step, so the k-th step of the closure carries label len-1-k
    v.psi_left = static_cast<int>(ql.steps);
    v.psi_right = static_cast<int>(qr.steps);
    for (size_t t = 0; t < ql.steps; ++t)
        v.left_labels.push_back(static_cast<int>(ql.steps) - 1 - static_cast<int>(t));
    for (size_t t = 0; t < qr.steps; ++t)
        v.right_labels.push_back(static_cast<int>(qr.steps) - 1 - static_cast<int>(t));
    // decreasingness conditions i)-v) for the square with f'' = g'' = id and
    // empty h1, h2: every closure label sits strictly below its arm's psi
    v.decreasing = v.joined;
    for (int k : v.left_labels) v.decreasing &= k < v.psi_left;
    for (int k : v.right_labels) v.decreasing &= k < v.psi_right;
    return v;
}

}  // namespace klrr
