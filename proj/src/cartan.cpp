#include "klrr/cartan.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace klrr {

CartanDatum CartanDatum::simply_laced(const std::vector<std::string>& vertices,
                                      const std::vector<std::pair<std::string, std::string>>& edges) {
    CartanDatum d;
    for (const auto& v : vertices) {
        if (d.index_.count(v)) throw std::invalid_argument("duplicate vertex: " + v);
        d.index_[v] = static_cast<Vertex>(d.names_.size());
        d.names_.push_back(v);
    }
    int n = d.rank();
    d.dot_.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) d.dot_[i][i] = 2;
    std::set<std::pair<int, int>> seen;
    for (const auto& [a, b] : edges) {
        Vertex va = d.vertex(a), vb = d.vertex(b);
        if (va == vb) throw std::invalid_argument("loop edge at " + a);
        auto key = std::minmax(va, vb);
        if (!seen.insert({key.first, key.second}).second)
            throw std::invalid_argument("duplicate edge " + a + "-" + b);
        d.dot_[va][vb] = -1;
        d.dot_[vb][va] = -1;
    }
    return d;
}

Vertex CartanDatum::vertex(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown vertex: " + name);
    return it->second;
}

Weight Weight::shifted(int sign, Vertex i, const CartanDatum& datum) const {
    std::vector<int> p = pairings_;
    for (int j = 0; j < datum.rank(); ++j) p[j] += sign * datum.cartan(j, i);
    return Weight(p);
}

std::string Weight::str(const CartanDatum& datum) const {
    std::string s = "(";
    for (int j = 0; j < rank(); ++j) {
        if (j) s += " ";
        s += datum.name(j) + "=" + std::to_string(pairings_[j]);
    }
    return s + ")";
}

SignedSequence positive_sequence(const std::vector<Vertex>& word) {
    SignedSequence s;
    s.reserve(word.size());
    for (Vertex v : word) s.push_back({+1, v});
    return s;
}

std::vector<std::vector<Vertex>> enumerate_seq(const std::map<Vertex, int>& multiplicities) {
    std::vector<Vertex> base;
    for (const auto& [v, m] : multiplicities) {
        if (m < 0) throw std::invalid_argument("negative multiplicity");
        for (int k = 0; k < m; ++k) base.push_back(v);
    }
    std::sort(base.begin(), base.end());
    std::vector<std::vector<Vertex>> out;
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

}  // namespace klrr
