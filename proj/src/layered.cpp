#include "klrr/layered.hpp"

#include <algorithm>
#include <stdexcept>

namespace klrr {

namespace {

int support_lo(const Layer& l) { return l.offset; }
int support_hi(const Layer& l) { return l.gen == Gen::Cross ? l.offset + 1 : l.offset; }

bool overlap(const Layer& a, const Layer& b) {
    return support_lo(a) <= support_hi(b) && support_lo(b) <= support_hi(a);
}

}  // namespace

LayeredMonomial::LayeredMonomial(std::vector<Vertex> source, std::vector<Layer> layers)
    : source_(std::move(source)), layers_(std::move(layers)) {
    for (const Layer& l : layers_) {
        int hi = support_hi(l);
        if (l.offset < 1 || hi > strands())
            throw std::out_of_range("layer offset out of range");
    }
}

LayeredMonomial LayeredMonomial::identity(std::vector<Vertex> source) {
    return LayeredMonomial(std::move(source), {});
}

std::vector<Vertex> LayeredMonomial::word_below(size_t k) const {
    std::vector<Vertex> w = source_;
    for (size_t t = 0; t < k && t < layers_.size(); ++t)
        if (layers_[t].gen == Gen::Cross) std::swap(w[layers_[t].offset - 1], w[layers_[t].offset]);
    return w;
}

std::vector<Vertex> LayeredMonomial::target() const { return word_below(layers_.size()); }

int LayeredMonomial::degree(const CartanDatum& datum) const {
    int deg = 0;
    std::vector<Vertex> w = source_;
    for (const Layer& l : layers_) {
        if (l.gen == Gen::Dot) {
            deg += datum.dot(w[l.offset - 1], w[l.offset - 1]);
        } else {
            deg -= datum.dot(w[l.offset - 1], w[l.offset]);
            std::swap(w[l.offset - 1], w[l.offset]);
        }
    }
    return deg;
}

LayeredMonomial LayeredMonomial::canonical() const {
    // Cartier-Foata levels: a layer sits one level above the highest earlier
    // layer whose strand support it meets. Stable-sorting by (level, offset)
    // yields the recumbent representative of the interchange class.
    size_t n = layers_.size();
    std::vector<int> level(n, 0);
    for (size_t i = 0; i < n; ++i) {
        int lv = 0;
        for (size_t j = 0; j < i; ++j)
            if (overlap(layers_[i], layers_[j])) lv = std::max(lv, level[j] + 1);
        level[i] = lv;
    }
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (level[a] != level[b]) return level[a] < level[b];
        return layers_[a].offset < layers_[b].offset;
    });
    std::vector<Layer> out;
    out.reserve(n);
    for (size_t i : order) out.push_back(layers_[i]);
    return LayeredMonomial(source_, std::move(out));
}

bool LayeredMonomial::is_canonical() const {
    LayeredMonomial c = canonical();
    return c.layers_ == layers_;
}

LayeredMonomial LayeredMonomial::compose_v(const LayeredMonomial& above) const {
    if (target() != above.source_) throw std::invalid_argument("compose_v: interface mismatch");
    std::vector<Layer> ls = layers_;
    ls.insert(ls.end(), above.layers_.begin(), above.layers_.end());
    return LayeredMonomial(source_, std::move(ls));
}

LayeredMonomial LayeredMonomial::compose_h(const LayeredMonomial& right) const {
    std::vector<Vertex> src = source_;
    src.insert(src.end(), right.source_.begin(), right.source_.end());
    std::vector<Layer> ls = layers_;
    int shift = strands();
    for (Layer l : right.layers_) {
        l.offset += shift;
        ls.push_back(l);
    }
    return LayeredMonomial(std::move(src), std::move(ls));
}

std::string LayeredMonomial::key() const {
    LayeredMonomial c = is_canonical() ? *this : canonical();
    std::string k = "L[";
    for (Vertex v : c.source_) k += std::to_string(v) + ",";
    k += "|";
    for (const Layer& l : c.layers_) {
        k += (l.gen == Gen::Dot ? "d" : "x");
        k += std::to_string(l.offset) + ";";
    }
    k += "]";
    return k;
}

}  // namespace klrr
