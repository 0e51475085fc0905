/*
   Copyright 2026 The mcnie2 authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcnie2/errors.hpp"

namespace mcnie2 {

namespace detail {

using u128 = unsigned __int128;

inline int poly_degree(u128 p) {
    if (p == 0) return -1;
    int d = 0;
    std::uint64_t hi = static_cast<std::uint64_t>(p >> 64);
    std::uint64_t lo = static_cast<std::uint64_t>(p);
    if (hi != 0)
        d = 64 + (63 - std::countl_zero(hi));
    else
        d = 63 - std::countl_zero(lo);
    return d;
}

/// Carry-less multiply of m-bit polynomials reduced by X^m + tail.
inline std::uint64_t polymul_mod(std::uint64_t a, std::uint64_t b, unsigned m, std::uint64_t tail,
                                 std::uint64_t mask) {
    std::uint64_t r = 0;
    while (b != 0) {
        if (b & 1) r ^= a;
        b >>= 1;
        std::uint64_t carry = (a >> (m - 1)) & 1;
        a = (a << 1) & mask;
        if (carry) a ^= tail;
    }
    return r;
}

inline u128 poly_gcd(u128 a, u128 b) {
    while (b != 0) {
        int db = poly_degree(b);
        int da = poly_degree(a);
        while (a != 0 && da >= db) {
            a ^= b << (da - db);
            da = poly_degree(a);
        }
        std::swap(a, b);
    }
    return a;
}

}  // namespace detail

/// Parameters of the binary extension field F_{2^m}, 2 <= m <= 64, in
/// polynomial basis. The reduction polynomial is X^m + tail; tail holds the
/// bits of degree < m (the X^m bit of an m = 64 modulus would not fit a
/// 64-bit word). Construction verifies irreducibility with the Ben-Or test,
/// so a bad table entry is a startup failure rather than silent garbage.
class FieldParams {
  public:
    FieldParams(unsigned degree, std::uint64_t tail) : m_(degree), tail_(tail) {
        if (degree < 2 || degree > 64) throw std::invalid_argument("field degree must be in [2, 64]");
        mask_ = degree >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << degree) - 1);
        if (tail > mask_) throw std::invalid_argument("reduction tail must have degree < m");
        if (!is_irreducible(degree, tail, mask_))
            throw std::invalid_argument("reduction polynomial X^" + std::to_string(degree) +
                                        " + 0x" + to_hex(tail) + " is not irreducible");
        build_tables();
    }

    /// The pinned table of reduction polynomials (one per supported degree).
    static const FieldParams& for_degree(unsigned m) {
        static const std::map<unsigned, FieldParams> table = [] {
            // degree -> bits below X^m. All entries re-checked by the
            // constructor's irreducibility test.
            const std::pair<unsigned, std::uint64_t> entries[] = {
                {2, 0x3},    // X^2+X+1
                {3, 0x3},    // X^3+X+1
                {4, 0x3},    // X^4+X+1
                {6, 0x3},    // X^6+X+1
                {8, 0x1b},   // X^8+X^4+X^3+X+1
                {12, 0x53},  // X^12+X^6+X^4+X+1
                {18, 0x9},   // X^18+X^3+1
                {41, 0x9},   // X^41+X^3+1
                {53, 0x47},  // X^53+X^6+X^2+X+1
                {59, 0x95},  // X^59+X^7+X^4+X^2+1
                {64, 0x1b},  // X^64+X^4+X^3+X+1
            };
            std::map<unsigned, FieldParams> t;
            for (const auto& [deg, tail] : entries) t.emplace(deg, FieldParams(deg, tail));
            return t;
        }();
        auto it = table.find(m);
        if (it == table.end())
            throw std::invalid_argument("no reduction polynomial registered for m = " + std::to_string(m));
        return it->second;
    }

    unsigned degree() const noexcept { return m_; }
    std::uint64_t tail() const noexcept { return tail_; }
    std::uint64_t mask() const noexcept { return mask_; }
    /// Bytes of one serialized element.
    std::size_t element_bytes() const noexcept { return (m_ + 7) / 8; }

    bool operator==(const FieldParams& o) const noexcept { return m_ == o.m_ && tail_ == o.tail_; }
    bool operator!=(const FieldParams& o) const noexcept { return !(*this == o); }

    // Bit-level arithmetic. FieldElement wraps these with field checks.
    std::uint64_t mul_bits(std::uint64_t a, std::uint64_t b) const {
        return detail::polymul_mod(a, b, m_, tail_, mask_);
    }

    std::uint64_t sqr_bits(std::uint64_t a) const { return apply_table(sqr_, a); }
    std::uint64_t sqrt_bits(std::uint64_t a) const { return apply_table(sqrt_, a); }

    /// a^(2^e) for e in (-m, m); negative e walks the inverse Frobenius.
    std::uint64_t frob_bits(std::uint64_t a, int e) const {
        unsigned steps = static_cast<unsigned>(((e % static_cast<int>(m_)) + static_cast<int>(m_)) %
                                               static_cast<int>(m_));
        // x^(2^s) equals x^(2^-(m-s)); take the shorter walk.
        if (steps <= m_ - steps) {
            for (unsigned i = 0; i < steps; ++i) a = apply_table(sqr_, a);
        } else {
            for (unsigned i = 0; i < m_ - steps; ++i) a = apply_table(sqrt_, a);
        }
        return a;
    }

    /// Inverse by extended Euclid over F_2[x]; a != 0.
    std::uint64_t inv_bits(std::uint64_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero field element");
        using detail::u128;
        u128 r0 = (u128{1} << m_) | tail_;
        u128 r1 = a;
        u128 s0 = 0, s1 = 1;
        while (r1 != 0) {
            int d = detail::poly_degree(r0) - detail::poly_degree(r1);
            if (d < 0) {
                std::swap(r0, r1);
                std::swap(s0, s1);
                continue;
            }
            r0 ^= r1 << d;
            s0 ^= s1 << d;
        }
        // r0 is gcd(a, modulus) = 1, hence s0 * a = 1 (mod modulus).
        return static_cast<std::uint64_t>(s0);
    }

  private:
    static std::string to_hex(std::uint64_t v) {
        static const char* digits = "0123456789abcdef";
        std::string s;
        do {
            s.insert(s.begin(), digits[v & 0xf]);
            v >>= 4;
        } while (v != 0);
        return s;
    }

    /// Ben-Or: f of degree m is reducible iff gcd(x^(2^i) - x, f) != 1 for
    /// some i <= m/2.
    static bool is_irreducible(unsigned m, std::uint64_t tail, std::uint64_t mask) {
        using detail::u128;
        u128 f = (u128{1} << m) | tail;
        std::uint64_t xp = 2;  // the polynomial x
        for (unsigned i = 1; i <= m / 2; ++i) {
            xp = detail::polymul_mod(xp, xp, m, tail, mask);
            u128 g = detail::poly_gcd(static_cast<u128>(xp ^ 2u), f);
            if (g != 1) return false;
        }
        return true;
    }

    void build_tables() {
        for (unsigned b = 0; b < m_; ++b) {
            std::uint64_t e = std::uint64_t{1} << b;
            sqr_[b] = mul_bits(e, e);
        }
        // sqrt = (m-1)-fold squaring of each basis vector.
        for (unsigned b = 0; b < m_; ++b) {
            std::uint64_t v = std::uint64_t{1} << b;
            for (unsigned i = 0; i + 1 < m_; ++i) v = apply_table(sqr_, v);
            sqrt_[b] = v;
        }
    }

    std::uint64_t apply_table(const std::array<std::uint64_t, 64>& t, std::uint64_t a) const {
        std::uint64_t r = 0;
        while (a != 0) {
            r ^= t[std::countr_zero(a)];
            a &= a - 1;
        }
        return r;
    }

    unsigned m_;
    std::uint64_t tail_;
    std::uint64_t mask_;
    std::array<std::uint64_t, 64> sqr_{};
    std::array<std::uint64_t, 64> sqrt_{};
};

/// An element of F_{2^m} in polynomial basis: an m-bit coefficient vector,
/// low coefficient in bit 0. Immutable value type.
class FieldElement {
  public:
    FieldElement(const FieldParams& field, std::uint64_t bits) : field_(&field), bits_(bits) {
        if (bits > field.mask())
            throw std::invalid_argument("element has coefficient bits at position >= m");
    }

    static FieldElement zero(const FieldParams& field) { return FieldElement(field, 0); }
    static FieldElement one(const FieldParams& field) { return FieldElement(field, 1); }

    std::uint64_t bits() const noexcept { return bits_; }
    const FieldParams& field() const noexcept { return *field_; }
    bool is_zero() const noexcept { return bits_ == 0; }
    bool is_one() const noexcept { return bits_ == 1; }

    FieldElement operator+(const FieldElement& o) const {
        check_same_field(o);
        return FieldElement(*field_, bits_ ^ o.bits_, unchecked_tag{});
    }
    /// Subtraction coincides with addition in characteristic 2; kept so the
    /// scheme formulas read the way they are written.
    FieldElement operator-(const FieldElement& o) const { return *this + o; }
    FieldElement operator-() const { return *this; }

    FieldElement operator*(const FieldElement& o) const {
        check_same_field(o);
        return FieldElement(*field_, field_->mul_bits(bits_, o.bits_), unchecked_tag{});
    }

    FieldElement& operator+=(const FieldElement& o) {
        check_same_field(o);
        bits_ ^= o.bits_;
        return *this;
    }
    FieldElement& operator-=(const FieldElement& o) { return *this += o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement inv() const { return FieldElement(*field_, field_->inv_bits(bits_), unchecked_tag{}); }
    FieldElement square() const { return FieldElement(*field_, field_->sqr_bits(bits_), unchecked_tag{}); }

    /// a^(2^i), the i-th Frobenius power; i may be negative.
    FieldElement frobenius(int i) const {
        return FieldElement(*field_, field_->frob_bits(bits_, i), unchecked_tag{});
    }

    bool operator==(const FieldElement& o) const noexcept {
        return *field_ == *o.field_ && bits_ == o.bits_;
    }
    bool operator!=(const FieldElement& o) const noexcept { return !(*this == o); }

    /// Little-endian packed coefficient bytes, ceil(m/8) of them.
    void append_bytes(std::vector<std::uint8_t>& out) const {
        std::uint64_t v = bits_;
        for (std::size_t i = 0; i < field_->element_bytes(); ++i) {
            out.push_back(static_cast<std::uint8_t>(v & 0xff));
            v >>= 8;
        }
    }

    static FieldElement from_bytes(const FieldParams& field, const std::uint8_t* p) {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < field.element_bytes(); ++i)
            v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
        if (v > field.mask()) throw format_error("serialized field element has nonzero padding bits");
        return FieldElement(field, v);
    }

  private:
    struct unchecked_tag {};
    FieldElement(const FieldParams& field, std::uint64_t bits, unchecked_tag) noexcept
        : field_(&field), bits_(bits) {}

    void check_same_field(const FieldElement& o) const {
        if (*field_ != *o.field_) throw std::invalid_argument("field parameter mismatch");
    }

    const FieldParams* field_;
    std::uint64_t bits_;
};

}  // namespace mcnie2
