#pragma once

#include <string>
#include <vector>

#include "klrr/cartan.hpp"

namespace klrr {

enum class Gen : uint8_t { Dot, Cross };

struct Layer {
    int offset;  // 1-based strand position; Cross acts on (offset, offset+1)
    Gen gen;

    bool operator==(const Layer& o) const { return offset == o.offset && gen == o.gen; }
};

// A monomial 2-cell of the upward KLR fragment: a source word and a stack
// of elementary layers read bottom to top. Equality in the free 2-category
// is equality of canonical (recumbent) forms: every layer slid as low as
// the exchange relations allow, ties broken by smaller offset.
class LayeredMonomial {
public:
    LayeredMonomial() = default;
    LayeredMonomial(std::vector<Vertex> source, std::vector<Layer> layers);

    static LayeredMonomial identity(std::vector<Vertex> source);

    const std::vector<Vertex>& source() const { return source_; }
    const std::vector<Layer>& layers() const { return layers_; }
    std::vector<Vertex> target() const;
    int strands() const { return static_cast<int>(source_.size()); }

    // Word just below layer index k (k = layers().size() gives the target).
    std::vector<Vertex> word_below(size_t k) const;

    int degree(const CartanDatum& datum) const;

    LayeredMonomial canonical() const;
    bool is_canonical() const;

    // Vertical composite: this below, then above (target(this) == source(above)).
    LayeredMonomial compose_v(const LayeredMonomial& above) const;
    // Horizontal composite: this to the left of right.
    LayeredMonomial compose_h(const LayeredMonomial& right) const;

    // Canonical key; monomials are equal 2-cells iff keys agree.
    std::string key() const;

    bool operator==(const LayeredMonomial& o) const { return key() == o.key(); }
    bool operator<(const LayeredMonomial& o) const { return key() < o.key(); }

private:
    std::vector<Vertex> source_;
    std::vector<Layer> layers_;
};

}  // namespace klrr
