#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace klrr {

// Vertices of the Cartan graph are interned: small integer ids with
// display names, so label comparisons in the rewriting inner loops are
// integer compares.
using Vertex = int;

class CartanDatum {
public:
    // Simply-laced datum from a vertex list and an edge list.
    // Rejects loops and duplicate edges.
    static CartanDatum simply_laced(const std::vector<std::string>& vertices,
                                    const std::vector<std::pair<std::string, std::string>>& edges);

    int rank() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    Vertex vertex(const std::string& name) const;
    const std::string& name(Vertex v) const { return names_.at(v); }

    // The bilinear form i.j: 2 on the diagonal, -1 across an edge, 0 otherwise.
    int dot(Vertex a, Vertex b) const { return dot_[a][b]; }
    // Cartan matrix entry a_{a,b} = 2 (a.b)/(a.a); equals dot(a,b) here.
    int cartan(Vertex a, Vertex b) const { return dot_[a][b]; }

private:
    std::vector<std::string> names_;
    std::map<std::string, Vertex> index_;
    std::vector<std::vector<int>> dot_;
};

// A weight is represented only through its pairings <h_i, lambda>; every
// rule parameter reads lambda through these integers.
class Weight {
public:
    Weight() = default;
    explicit Weight(std::vector<int> pairings) : pairings_(std::move(pairings)) {}

    int pairing(Vertex i) const { return pairings_.at(i); }
    int rank() const { return static_cast<int>(pairings_.size()); }

    // lambda +- alpha_i: <h_j, lambda +- alpha_i> = <h_j,lambda> +- a_{j,i}.
    Weight shifted(int sign, Vertex i, const CartanDatum& datum) const;

    bool operator==(const Weight& o) const { return pairings_ == o.pairings_; }
    bool operator<(const Weight& o) const { return pairings_ < o.pairings_; }

    std::string str(const CartanDatum& datum) const;

private:
    std::vector<int> pairings_;
};

struct SignedEntry {
    int sign;  // +1 or -1
    Vertex vertex;

    bool operator==(const SignedEntry& o) const { return sign == o.sign && vertex == o.vertex; }
    bool operator<(const SignedEntry& o) const {
        if (sign != o.sign) return sign < o.sign;
        return vertex < o.vertex;
    }
};

// Element of SSeq: a word of signed vertices. The all-positive words form
// Seq; the empty word is the identity 1-cell.
using SignedSequence = std::vector<SignedEntry>;

SignedSequence positive_sequence(const std::vector<Vertex>& word);

// All words with vertex v appearing mult[v] times, in lexicographic order.
std::vector<std::vector<Vertex>> enumerate_seq(const std::map<Vertex, int>& multiplicities);

// Action of the adjacent transposition s_k (1-based, swaps entries k, k+1).
template <typename Word>
Word coxeter_action(int k, const Word& w) {
    if (k < 1 || k + 1 > static_cast<int>(w.size())) throw std::out_of_range("coxeter index");
    Word r = w;
    std::swap(r[k - 1], r[k]);
    return r;
}

}  // namespace klrr
