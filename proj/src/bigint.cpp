#include "klrr/bigint.hpp"

#include <cassert>
#include <stdexcept>

namespace klrr {

BigInt::BigInt(long long v) {
    if (v == 0) return;
    unsigned long long u;
    if (v < 0) {
        neg_ = true;
        u = static_cast<unsigned long long>(-(v + 1)) + 1ULL;
    } else {
        u = static_cast<unsigned long long>(v);
    }
    while (u) {
        mag_.push_back(static_cast<uint32_t>(u & 0xffffffffULL));
        u >>= 32;
    }
}

BigInt BigInt::from_string(const std::string& s) {
    BigInt r;
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) throw std::invalid_argument("bad integer literal: " + s);
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + s);
        r = r * BigInt(10) + BigInt(s[i] - '0');
    }
    if (neg && !r.is_zero()) r.neg_ = true;
    return r;
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) neg_ = false;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    uint64_t carry = 0;
    for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        uint64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        r.push_back(static_cast<uint32_t>(s & 0xffffffffULL));
        carry = s >> 32;
    }
    if (carry) r.push_back(static_cast<uint32_t>(carry));
    return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r = a;
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t v = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? static_cast<int64_t>(b[i]) : 0);
        if (v < 0) {
            v += (1LL << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<uint32_t>(v);
    }
    assert(borrow == 0);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = static_cast<uint64_t>(a[i]) * b[j] + r[i + j] + carry;
            r[i + j] = static_cast<uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = r[k] + carry;
            r[k] = static_cast<uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

void BigInt::divrem_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    assert(!b.empty());
    q.assign(a.size(), 0);
    r.clear();
    // Bitwise long division; fine at this scale.
    for (size_t i = a.size(); i-- > 0;) {
        for (int bit = 31; bit >= 0; --bit) {
            // r <<= 1
            uint32_t carry = 0;
            for (size_t k = 0; k < r.size(); ++k) {
                uint32_t nc = r[k] >> 31;
                r[k] = (r[k] << 1) | carry;
                carry = nc;
            }
            if (carry) r.push_back(carry);
            if (a[i] & (1u << bit)) {
                if (r.empty())
                    r.push_back(1);
                else {
                    uint64_t s = static_cast<uint64_t>(r[0]) + 1;
                    r[0] = static_cast<uint32_t>(s);
                    size_t k = 1;
                    uint64_t c = s >> 32;
                    while (c) {
                        if (k == r.size()) {
                            r.push_back(1);
                            break;
                        }
                        s = static_cast<uint64_t>(r[k]) + 1;
                        r[k] = static_cast<uint32_t>(s);
                        c = s >> 32;
                        ++k;
                    }
                }
            }
            if (cmp_mag(r, b) >= 0) {
                r = sub_mag(r, b);
                q[i] |= (1u << bit);
            }
        }
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.mag_.empty()) r.neg_ = !r.neg_;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    BigInt r;
    if (neg_ == o.neg_) {
        r.mag_ = add_mag(mag_, o.mag_);
        r.neg_ = neg_;
    } else {
        int c = cmp_mag(mag_, o.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.mag_ = sub_mag(mag_, o.mag_);
            r.neg_ = neg_;
        } else {
            r.mag_ = sub_mag(o.mag_, mag_);
            r.neg_ = o.neg_;
        }
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    BigInt r;
    r.mag_ = mul_mag(mag_, o.mag_);
    r.neg_ = !r.mag_.empty() && (neg_ != o.neg_);
    return r;
}

BigInt BigInt::operator/(const BigInt& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero");
    BigInt q;
    std::vector<uint32_t> qm, rm;
    divrem_mag(mag_, o.mag_, qm, rm);
    q.mag_ = std::move(qm);
    q.neg_ = !q.mag_.empty() && (neg_ != o.neg_);
    return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero");
    BigInt r;
    std::vector<uint32_t> qm, rm;
    divrem_mag(mag_, o.mag_, qm, rm);
    r.mag_ = std::move(rm);
    r.trim();
    r.neg_ = !r.mag_.empty() && neg_;
    return r;
}

bool BigInt::operator<(const BigInt& o) const {
    if (neg_ != o.neg_) return neg_;
    int c = cmp_mag(mag_, o.mag_);
    return neg_ ? c > 0 : c < 0;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.neg_ = false;
    b.neg_ = false;
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    return a;
}

bool BigInt::fits_ll() const {
    if (mag_.size() > 2) return false;
    unsigned long long u = 0;
    for (size_t i = mag_.size(); i-- > 0;) u = (u << 32) | mag_[i];
    if (neg_) return u <= 0x8000000000000000ULL;
    return u <= 0x7fffffffffffffffULL;
}

long long BigInt::to_ll() const {
    assert(fits_ll());
    unsigned long long u = 0;
    for (size_t i = mag_.size(); i-- > 0;) u = (u << 32) | mag_[i];
    if (neg_) return -static_cast<long long>(u - 1) - 1;
    return static_cast<long long>(u);
}

std::string BigInt::str() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> m = mag_;
    std::string digits;
    const std::vector<uint32_t> ten = {10};
    while (!m.empty()) {
        std::vector<uint32_t> q, r;
        divrem_mag(m, ten, q, r);
        digits.push_back(static_cast<char>('0' + (r.empty() ? 0 : r[0])));
        m = q;
    }
    if (neg_) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}

}  // namespace klrr
