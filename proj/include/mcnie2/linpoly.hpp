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

#include <cstdint>
#include <vector>

#include "mcnie2/gf2m.hpp"
#include "mcnie2/linalg.hpp"
#include "mcnie2/rank_metric.hpp"

namespace mcnie2 {

/// Linearized polynomial L(X) = sum_i a_i X^[i] with [i] = 2^i: an
/// F_2-linear map on F_{2^m} whose root set is an F_2-subspace. Coefficients
/// are stored low q-degree first and kept normalized (no zero leading
/// coefficient; the zero polynomial has no coefficients at all).
class LinearizedPoly {
  public:
    explicit LinearizedPoly(const FieldParams& field) : field_(&field) {}

    LinearizedPoly(const FieldParams& field, std::vector<FieldElement> coeffs)
        : field_(&field), c_(std::move(coeffs)) {
        for (const auto& a : c_)
            if (a.field() != field) throw std::invalid_argument("mixed fields in coefficients");
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    /// The identity map X.
    static LinearizedPoly identity_map(const FieldParams& field) {
        return LinearizedPoly(field, {FieldElement::one(field)});
    }

    const FieldParams& field() const noexcept { return *field_; }
    bool is_zero() const noexcept { return c_.empty(); }
    /// q-degree; -1 for the zero polynomial.
    int q_degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const FieldElement& coeff(std::size_t i) const { return c_[i]; }

    /// L(x) = sum_i a_i x^(2^i), evaluated with one squaring per term.
    FieldElement evaluate(const FieldElement& x) const {
        if (x.field() != *field_) throw std::invalid_argument("field parameter mismatch");
        FieldElement acc = FieldElement::zero(*field_);
        FieldElement xq = x;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!c_[i].is_zero()) acc += c_[i] * xq;
            if (i + 1 < c_.size()) xq = xq.square();
        }
        return acc;
    }

    bool operator==(const LinearizedPoly& o) const { return *field_ == *o.field_ && c_ == o.c_; }

  private:
    const FieldParams* field_;
    std::vector<FieldElement> c_;
};

/// Basis of the root space {x : L(x) = 0}, computed as the kernel of the
/// m x m F_2 matrix that represents x -> L(x) on the polynomial basis.
/// Dimension is at most the q-degree of L.
inline Support root_space(const LinearizedPoly& L) {
    if (L.is_zero()) throw std::invalid_argument("root space of the zero polynomial");
    const FieldParams& f = L.field();
    const unsigned m = f.degree();
    // Column b holds L(X^b); kernel vectors are coefficient columns of roots.
    BaseMatrix M(m, m);
    for (unsigned b = 0; b < m; ++b) {
        FieldElement img = L.evaluate(FieldElement(f, std::uint64_t{1} << b));
        for (unsigned i = 0; i < m; ++i)
            if ((img.bits() >> i) & 1) M.set_bit(i, b, true);
    }
    BaseMatrix K = left_kernel_base(M.transpose());  // right kernel of M
    std::vector<FieldElement> basis;
    basis.reserve(K.rows());
    for (std::size_t r = 0; r < K.rows(); ++r) {
        std::uint64_t bits = 0;
        for (unsigned b = 0; b < m; ++b)
            if (K.bit(r, b)) bits |= std::uint64_t{1} << b;
        basis.emplace_back(f, bits);
    }
    return Support(f, std::move(basis));
}

/// Monic linearized polynomial of q-degree dim(S) vanishing exactly on
/// span(S), built iteratively: L_0 = X, L_{u+1}(X) = L_u(X)^[1] + L_u(b_{u+1}) L_u(X).
inline LinearizedPoly annihilator(const Support& S) {
    const FieldParams& f = S.field();
    std::vector<FieldElement> c{FieldElement::one(f)};  // L = X
    for (const FieldElement& b : S.basis()) {
        LinearizedPoly L(f, c);
        FieldElement lb = L.evaluate(b);
        if (lb.is_zero()) throw std::invalid_argument("annihilator basis is linearly dependent");
        std::vector<FieldElement> next(c.size() + 1, FieldElement::zero(f));
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i].square();  // L^[1] shifts and squares coefficients
            next[i] += lb * c[i];
        }
        c = std::move(next);
    }
    return LinearizedPoly(f, std::move(c));
}

}  // namespace mcnie2
