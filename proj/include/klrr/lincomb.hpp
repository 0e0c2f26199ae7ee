#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "klrr/scalar.hpp"

namespace klrr {

// Formal linear combination of diagram monomials, keyed by canonical
// encoding. Zero coefficients are never stored; the empty combination is
// the zero 2-cell.
template <typename M>
class LinComb {
public:
    explicit LinComb(Field f = Field::rationals()) : field_(f) {}

    static LinComb zero(Field f) { return LinComb(f); }
    static LinComb monomial(const M& m, Field f) {
        LinComb c(f);
        c.add_term(m, Scalar::one(f));
        return c;
    }

    Field field() const { return field_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add_term(const M& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto key = m.key();
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, std::make_pair(m, c));
        } else {
            Scalar s = it->second.second + c;
            if (s.is_zero())
                terms_.erase(it);
            else
                it->second.second = s;
        }
    }

    LinComb operator+(const LinComb& o) const {
        if (!(field_ == o.field_)) throw std::invalid_argument("field mismatch");
        LinComb r = *this;
        for (const auto& [k, mc] : o.terms_) r.add_term(mc.first, mc.second);
        return r;
    }

    LinComb operator-(const LinComb& o) const { return *this + o.scaled(Scalar::of_int(-1, field_)); }

    LinComb scaled(const Scalar& c) const {
        LinComb r(field_);
        if (c.is_zero()) return r;
        for (const auto& [k, mc] : terms_) r.terms_.emplace(k, std::make_pair(mc.first, mc.second * c));
        return r;
    }

    Scalar coeff(const M& m) const {
        auto it = terms_.find(m.key());
        return it == terms_.end() ? Scalar::zero(field_) : it->second.second;
    }

    std::vector<M> support() const {
        std::vector<M> s;
        s.reserve(terms_.size());
        for (const auto& [k, mc] : terms_) s.push_back(mc.first);
        return s;
    }

    const std::map<std::string, std::pair<M, Scalar>>& terms() const { return terms_; }

    bool operator==(const LinComb& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        auto it = terms_.begin(), jt = o.terms_.begin();
        for (; it != terms_.end(); ++it, ++jt) {
            if (it->first != jt->first) return false;
            if (!(it->second.second == jt->second.second)) return false;
        }
        return true;
    }
    bool operator!=(const LinComb& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [k, mc] : terms_) {
            if (!first) s += " + ";
            s += mc.second.str() + "*" + k;
            first = false;
        }
        return s;
    }

private:
    Field field_;
    std::map<std::string, std::pair<M, Scalar>> terms_;
};

// Rank of a family of sparse vectors (keyed rows) by exact Gaussian
// elimination over the session field.
int sparse_rank(std::vector<std::map<std::string, Scalar>> rows, Field field);

template <typename M>
int rank_oracle(const std::vector<LinComb<M>>& vectors, Field field) {
    std::vector<std::map<std::string, Scalar>> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) {
        std::map<std::string, Scalar> r;
        for (const auto& [k, mc] : v.terms()) r[k] = mc.second;
        rows.push_back(std::move(r));
    }
    return sparse_rank(std::move(rows), field);
}

}  // namespace klrr
