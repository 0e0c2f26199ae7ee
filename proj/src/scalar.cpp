#include "klrr/scalar.hpp"

#include <cassert>
#include <stdexcept>

namespace klrr {

Field Field::fp(uint32_t p) {
    if (p < 2) throw std::invalid_argument("field characteristic must be >= 2");
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("field characteristic must be prime");
    return Field{p};
}

Scalar Scalar::of_int(long long v, Field f) {
    Scalar s;
    s.field_ = f;
    s.num_ = BigInt(v);
    s.den_ = BigInt(1);
    s.normalize();
    return s;
}

Scalar Scalar::fraction(BigInt num, BigInt den, Field f) {
    if (den.is_zero()) throw std::domain_error("zero denominator");
    Scalar s;
    s.field_ = f;
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    s.normalize();
    return s;
}

void Scalar::normalize() {
    if (!field_.is_rational()) {
        BigInt p(static_cast<long long>(field_.p));
        BigInt n = num_ % p;
        if (n.is_negative()) n = n + p;
        if (den_ != BigInt(1)) {
            BigInt d = den_ % p;
            if (d.is_negative()) d = d + p;
            if (d.is_zero()) throw std::domain_error("denominator divisible by p");
            // invert d mod p by Fermat
            long long dv = d.to_ll(), pv = field_.p, inv = 1, base = dv, e = pv - 2;
            while (e) {
                if (e & 1) inv = (inv * base) % pv;
                base = (base * base) % pv;
                e >>= 1;
            }
            n = (n * BigInt(inv)) % p;
        }
        num_ = n;
        den_ = BigInt(1);
        return;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Scalar Scalar::operator+(const Scalar& o) const {
    assert(field_ == o.field_);
    Scalar r;
    r.field_ = field_;
    r.num_ = num_ * o.den_ + o.num_ * den_;
    r.den_ = den_ * o.den_;
    r.normalize();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    assert(field_ == o.field_);
    Scalar r;
    r.field_ = field_;
    r.num_ = num_ * o.num_;
    r.den_ = den_ * o.den_;
    r.normalize();
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
    assert(field_ == o.field_);
    if (o.is_zero()) throw std::domain_error("division by zero scalar");
    Scalar r;
    r.field_ = field_;
    if (field_.is_rational()) {
        r.num_ = num_ * o.den_;
        r.den_ = den_ * o.num_;
    } else {
        r.num_ = num_;
        r.den_ = o.num_;
    }
    r.normalize();
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (field_.is_rational()) {
        r.num_ = -r.num_;
    } else {
        r.num_ = BigInt(static_cast<long long>(field_.p)) - r.num_;
        r.normalize();
    }
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    return field_ == o.field_ && num_ == o.num_ && den_ == o.den_;
}

std::string Scalar::str() const {
    if (!field_.is_rational()) return num_.str();
    if (den_ == BigInt(1)) return num_.str();
    return num_.str() + "/" + den_.str();
}

}  // namespace klrr
