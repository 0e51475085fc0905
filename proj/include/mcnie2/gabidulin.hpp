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

#include "mcnie2/errors.hpp"
#include "mcnie2/gf2m.hpp"
#include "mcnie2/linalg.hpp"
#include "mcnie2/linpoly.hpp"
#include "mcnie2/rank_metric.hpp"
#include "mcnie2/rng.hpp"

namespace mcnie2 {

/// k x n Moore matrix of g: entry (i, j) = g[j]^[i], rows i = 0..k-1.
inline ExtMatrix moore_matrix(const ExtVector& g, std::size_t k) {
    if (k < 1) throw std::invalid_argument("Moore matrix needs at least one row");
    ExtMatrix M(g.field(), k, g.size());
    for (std::size_t j = 0; j < g.size(); ++j) M.at(0, j) = g[j];
    for (std::size_t i = 1; i < k; ++i)
        for (std::size_t j = 0; j < g.size(); ++j) M.at(i, j) = M.at(i - 1, j).square();
    return M;
}

/// An [N, dim] Gabidulin code in parity-check form: the code is the right
/// kernel of the Moore matrix of a full-rank vector h. Corrects any error of
/// rank weight up to floor((N-dim)/2) deterministically, with no failure.
class GabidulinCode {
  public:
    GabidulinCode(ExtVector h, std::size_t dim)
        : h_(validated(std::move(h), dim)),
          dim_(dim),
          parity_(moore_matrix(h_, h_.size() - dim)),
          h_columns_(expand_to_base(h_).transpose()) {}  // N x m, for support recovery

    /// Sample h of full rank weight by rejection.
    static GabidulinCode random(const FieldParams& field, std::size_t N, std::size_t dim, Rng& rng) {
        if (N > field.degree()) throw std::invalid_argument("code length exceeds the extension degree");
        ExtVector h(field, N);
        do {
            h = ExtVector::random(field, N, rng);
        } while (rank_weight(h) != N);
        return GabidulinCode(std::move(h), dim);
    }

    const FieldParams& field() const noexcept { return h_.field(); }
    std::size_t length() const noexcept { return h_.size(); }
    std::size_t dimension() const noexcept { return dim_; }
    std::size_t redundancy() const noexcept { return h_.size() - dim_; }
    std::size_t radius() const noexcept { return redundancy() / 2; }
    const ExtVector& parity_vector() const noexcept { return h_; }
    /// H = moore_matrix(h, N - dim).
    const ExtMatrix& parity_matrix() const noexcept { return parity_; }

    /// s = v H^T: s[j] = sum_i v[i] h[i]^[j].
    ExtVector syndrome(const ExtVector& v) const {
        if (v.size() != length() || v.field() != field())
            throw std::invalid_argument("syndrome input length mismatch");
        ExtVector s(field(), redundancy());
        for (std::size_t j = 0; j < redundancy(); ++j)
            for (std::size_t i = 0; i < length(); ++i) s[j] += v[i] * parity_.at(j, i);
        return s;
    }

    /// Recover the unique error of rank weight <= radius with syndrome s.
    /// Deterministic; raises decoding_failure when no consistent error of
    /// rank at most the radius exists (only reachable for syndromes of
    /// errors beyond the radius or adversarial inputs).
    ExtVector decode_syndrome(const ExtVector& s) const {
        if (s.size() != redundancy() || s.field() != field())
            throw std::invalid_argument("syndrome length mismatch");
        if (s.is_zero()) return ExtVector(field(), length());

        const std::size_t r = radius();
        const std::size_t rho = redundancy();
        if (r == 0) throw decoding_failure("nonzero syndrome on a radius-0 code");

        // Twisted syndrome table T[j][p] = s[p+j]^[-j]; D of step 2 and the
        // key-equation rows of step 3 are both views into it.
        std::vector<std::vector<FieldElement>> T(rho);
        for (std::size_t j = 0; j < rho; ++j) {
            T[j].reserve(rho - j);
            for (std::size_t p = 0; p + j < rho; ++p)
                T[j].push_back(j == 0 ? s[p] : T[j - 1][p + 1].frobenius(-1));
        }

        // Error-count detection: rank of the left r x r block of the r x (r+1)
        // matrix D[j][p] = s[p+j]^[-j] (indices p+j <= 2r-1 <= rho-1).
        ExtMatrix D(field(), r, r + 1);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t p = 0; p <= r; ++p) D.at(j, p) = T[j][p];
        std::size_t detected = rank_ext(D.submatrix(0, 0, r, r));

        for (std::size_t t = detected; t >= 1; --t) {
            ExtVector e(field(), length());
            if (try_error_count(s, T, t, e)) return e;
        }
        throw decoding_failure("no error of rank weight within the radius matches the syndrome");
    }

  private:
    /// Steps 3..7 for one candidate error count t. Returns false as soon as
    /// any consistency check fails.
    bool try_error_count(const ExtVector& s, const std::vector<std::vector<FieldElement>>& T,
                         std::size_t t, ExtVector& e_out) const {
        const std::size_t rho = redundancy();
        const FieldParams& f = field();

        // Step 3: solve sum_p lambda_p s[p+j]^[-j] = -s[t+j]^[-j] for
        // j = 0..rho-t-1; unknowns lambda_0..lambda_{t-1}, lambda_t = 1.
        const std::size_t eqs = rho - t;
        ExtMatrix M(f, eqs, t);
        ExtVector rhs(f, eqs);
        for (std::size_t j = 0; j < eqs; ++j) {
            for (std::size_t p = 0; p < t; ++p) M.at(j, p) = T[j][p];
            rhs[j] = -T[j][t];
        }
        ExtVector lambda(f, t);
        try {
            lambda = solve_right(M.transpose(), rhs, SolveMode::unique).x;
        } catch (const no_solution&) {
            return false;
        } catch (const ambiguous_solution&) {
            return false;
        }

        // Step 4: the roots of the annihilator span the h-side images of
        // the error; their count must match t exactly.
        std::vector<FieldElement> coeffs(lambda.size() + 1, FieldElement::zero(f));
        for (std::size_t p = 0; p < t; ++p) coeffs[p] = lambda[p];
        coeffs[t] = FieldElement::one(f);
        Support Z = root_space(LinearizedPoly(f, std::move(coeffs)));
        if (Z.dim() != t) return false;
        const std::vector<FieldElement>& z = Z.basis();

        // Step 5: solve the t x t Moore system sum_u E_u z_u^[j] = s[j] for
        // the error values, then verify the remaining syndrome rows.
        ExtVector values(f, t);
        {
            ExtMatrix Mo = moore_matrix(ExtVector(f, z), t);
            ExtVector s_head = s.slice(0, t);
            try {
                values = solve_right(Mo.transpose(), s_head, SolveMode::unique).x;
            } catch (const no_solution&) {
                return false;
            } catch (const ambiguous_solution&) {
                return false;
            }
        }
        {
            std::vector<FieldElement> zq(z);
            for (std::size_t j = 0; j < t; ++j)
                for (auto& v : zq) v = v.square();
            for (std::size_t j = t; j < rho; ++j) {
                FieldElement acc = FieldElement::zero(f);
                for (std::size_t u = 0; u < t; ++u) acc += values[u] * zq[u];
                if (acc != s[j]) return false;
                for (auto& v : zq) v = v.square();
            }
        }

        // Step 6: locate each z_u inside the span of h over F_2; unique
        // because h has full rank weight. Fails only for syndromes that no
        // in-span error explains.
        std::vector<BitVector> Y(t);
        for (std::size_t u = 0; u < t; ++u) {
            BitVector zbits(f.degree());
            for (unsigned b = 0; b < f.degree(); ++b) zbits.set_bit(b, (z[u].bits() >> b) & 1);
            try {
                Y[u] = solve_base(h_columns_, zbits, SolveMode::unique).x;
            } catch (const no_solution&) {
                return false;
            } catch (const ambiguous_solution&) {
                return false;
            }
        }

        // Step 7: assemble e and check the full contract before returning.
        ExtVector e(f, length());
        for (std::size_t i = 0; i < length(); ++i)
            for (std::size_t u = 0; u < t; ++u)
                if (Y[u].bit(i)) e[i] += values[u];
        if (rank_weight(e) != t || syndrome(e) != s) return false;
        e_out = e;
        return true;
    }

    static ExtVector validated(ExtVector h, std::size_t dim) {
        if (dim >= h.size()) throw std::invalid_argument("code dimension must be below the length");
        if (h.size() > h.field().degree())
            throw std::invalid_argument("code length exceeds the extension degree");
        if (rank_weight(h) != h.size())
            throw std::invalid_argument("parity vector must have full rank weight");
        return h;
    }

    ExtVector h_;
    std::size_t dim_;
    ExtMatrix parity_;
    BaseMatrix h_columns_;
};

}  // namespace mcnie2
