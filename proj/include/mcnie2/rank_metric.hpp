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
#include "mcnie2/rng.hpp"

namespace mcnie2 {

/// An F_2-subspace of F_{2^m}, held as a linearly independent basis.
class Support {
  public:
    Support(const FieldParams& field, std::vector<FieldElement> basis)
        : field_(&field), basis_(std::move(basis)) {
        ExtVector v(field, basis_);
        if (rank_base(expand_to_base(v)) != basis_.size())
            throw std::invalid_argument("support basis is linearly dependent");
    }

    const FieldParams& field() const noexcept { return *field_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<FieldElement>& basis() const noexcept { return basis_; }

  private:
    const FieldParams* field_;
    std::vector<FieldElement> basis_;
};

/// Rank weight: the F_2-rank of the coefficient expansion, i.e. the maximal
/// number of coordinates linearly independent over the base field.
inline std::size_t rank_weight(const ExtVector& v) { return rank_base(expand_to_base(v)); }

/// Early-exit variant for hot loops: true iff rank_weight(v) <= bound.
/// Eliminates coordinate bit-rows one at a time and stops as soon as the
/// bound is exceeded.
inline bool rank_weight_at_most(const ExtVector& v, std::size_t bound) {
    std::uint64_t pivots[64];
    std::size_t npiv = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::uint64_t row = v[i].bits();
        for (std::size_t k = 0; k < npiv && row != 0; ++k)
            if ((row ^ pivots[k]) < row) row ^= pivots[k];
        if (row != 0) {
            if (npiv == bound) return false;
            // keep pivots sorted by leading bit, descending
            std::size_t pos = npiv++;
            while (pos > 0 && pivots[pos - 1] < row) {
                pivots[pos] = pivots[pos - 1];
                --pos;
            }
            pivots[pos] = row;
        }
    }
    return true;
}

/// Basis of the F_2-span of v's entries; dimension equals rank_weight(v).
inline Support support_of(const ExtVector& v) {
    BaseMatrix rows(v.size(), v.field().degree());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (unsigned b = 0; b < v.field().degree(); ++b)
            if ((v[i].bits() >> b) & 1) rows.set_bit(i, b, true);
    detail::RrefInfo info = detail::rref_base(rows);
    std::vector<FieldElement> basis;
    basis.reserve(info.rank);
    for (std::size_t r = 0; r < info.rank; ++r) {
        std::uint64_t bits = 0;
        for (unsigned b = 0; b < v.field().degree(); ++b)
            if (rows.bit(r, b)) bits |= std::uint64_t{1} << b;
        basis.emplace_back(v.field(), bits);
    }
    return Support(v.field(), std::move(basis));
}

/// Uniformly-structured vector of rank weight EXACTLY target_rank: rejection
/// sample a rank-t support basis (E_1..E_t) and a full-rank t x length
/// F_2 coefficient matrix Y, then e_j = sum_u Y[u][j] E_u.
inline ExtVector random_error(const FieldParams& field, std::size_t length, std::size_t target_rank,
                              Rng& rng) {
    if (target_rank > length || target_rank > field.degree())
        throw std::invalid_argument("target rank exceeds min(m, length)");
    ExtVector e(field, length);
    if (target_rank == 0) return e;

    std::vector<FieldElement> basis;
    do {
        basis.clear();
        for (std::size_t u = 0; u < target_rank; ++u)
            basis.emplace_back(field, rng.bits(field.degree()));
    } while (rank_base(expand_to_base(ExtVector(field, basis))) != target_rank);

    BaseMatrix Y(target_rank, length);
    do {
        for (std::size_t u = 0; u < target_rank; ++u)
            for (std::size_t j = 0; j < length; ++j) Y.set_bit(u, j, rng.bit());
    } while (rank_base(Y) != target_rank);

    for (std::size_t j = 0; j < length; ++j)
        for (std::size_t u = 0; u < target_rank; ++u)
            if (Y.bit(u, j)) e[j] += basis[u];

    if (rank_weight(e) != target_rank) throw std::logic_error("error sampler postcondition violated");
    return e;
}

}  // namespace mcnie2
