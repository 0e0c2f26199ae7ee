#pragma once

#include <cstdint>
#include <string>

#include "klrr/bigint.hpp"

namespace klrr {

// The coefficient field of a session: exact rationals by default, or a
// prime field F_p. All scalars flowing through one computation must carry
// the same field tag; mixing is a programming error and asserts.
struct Field {
    uint32_t p = 0;  // 0 = rationals, otherwise a prime

    bool is_rational() const { return p == 0; }
    bool operator==(const Field& o) const { return p == o.p; }

    static Field rationals() { return Field{0}; }
    static Field fp(uint32_t p);
};

class Scalar {
public:
    Scalar() = default;  // zero over Q
    static Scalar zero(Field f) { return of_int(0, f); }
    static Scalar one(Field f) { return of_int(1, f); }
    static Scalar of_int(long long v, Field f = Field::rationals());
    static Scalar fraction(BigInt num, BigInt den, Field f = Field::rationals());

    Field field() const { return field_; }
    bool is_zero() const { return num_.is_zero(); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    std::string str() const;

private:
    Field field_;
    BigInt num_ = BigInt(0);
    BigInt den_ = BigInt(1);  // positive; 1 in F_p mode

    void normalize();
};

}  // namespace klrr
