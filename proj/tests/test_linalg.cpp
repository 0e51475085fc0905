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

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <vector>

#include "mcnie2/linalg.hpp"
#include "mcnie2/rng.hpp"

using namespace mcnie2;

namespace {

// Independent triple-loop product, written directly on elements.
ExtMatrix mat_mul_oracle(const ExtMatrix& A, const ExtMatrix& B) {
    ExtMatrix R(A.field(), A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) {
            FieldElement acc = FieldElement::zero(A.field());
            for (std::size_t k = 0; k < A.cols(); ++k) acc += A.at(i, k) * B.at(k, j);
            R.at(i, j) = acc;
        }
    return R;
}

// Determinant by Laplace expansion, for the minor-expansion rank oracle.
FieldElement det_oracle(const ExtMatrix& A) {
    if (A.rows() == 1) return A.at(0, 0);
    FieldElement acc = FieldElement::zero(A.field());
    for (std::size_t j = 0; j < A.cols(); ++j) {
        if (A.at(0, j).is_zero()) continue;
        ExtMatrix minor(A.field(), A.rows() - 1, A.cols() - 1);
        for (std::size_t r = 1; r < A.rows(); ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < A.cols(); ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = A.at(r, c);
            }
        }
        acc += A.at(0, j) * det_oracle(minor);  // signs vanish in char 2
    }
    return acc;
}

// Rank as the size of the largest nonsingular square minor.
std::size_t rank_oracle(const ExtMatrix& A) {
    std::size_t best = 0;
    std::size_t maxs = std::min(A.rows(), A.cols());
    std::vector<std::size_t> ridx, cidx;
    for (std::size_t s = 1; s <= maxs; ++s) {
        // enumerate all row and column index subsets of size s
        std::vector<std::size_t> rows(s), cols(s);
        std::function<bool(std::size_t, std::size_t)> pick_cols = [&](std::size_t ci,
                                                                      std::size_t cstart) -> bool {
            if (ci == s) {
                ExtMatrix sub(A.field(), s, s);
                for (std::size_t i = 0; i < s; ++i)
                    for (std::size_t j = 0; j < s; ++j) sub.at(i, j) = A.at(rows[i], cols[j]);
                return !det_oracle(sub).is_zero();
            }
            for (std::size_t c = cstart; c < A.cols(); ++c) {
                cols[ci] = c;
                if (pick_cols(ci + 1, c + 1)) return true;
            }
            return false;
        };
        std::function<bool(std::size_t, std::size_t)> pick_rows = [&](std::size_t ri,
                                                                      std::size_t rstart) -> bool {
            if (ri == s) return pick_cols(0, 0);
            for (std::size_t r = rstart; r < A.rows(); ++r) {
                rows[ri] = r;
                if (pick_rows(ri + 1, r + 1)) return true;
            }
            return false;
        };
        if (pick_rows(0, 0)) best = s;
    }
    return best;
}

}  // namespace

TEST_CASE("matrix product") {
    const FieldParams& f = FieldParams::for_degree(12);
    Rng rng(5);
    SECTION("A * I = A") {
        ExtMatrix A = ExtMatrix::random(f, 3, 5, rng);
        REQUIRE(A * ExtMatrix::identity(f, 5) == A);
    }
    SECTION("1x1 product reduces to element multiplication") {
        FieldElement a(f, rng.bits(12)), b(f, rng.bits(12));
        ExtMatrix A(f, 1, 1), B(f, 1, 1);
        A.at(0, 0) = a;
        B.at(0, 0) = b;
        REQUIRE((A * B).at(0, 0) == a * b);
    }
    SECTION("random 3x4 by 4x2 against the triple-loop oracle") {
        for (int i = 0; i < 50; ++i) {
            ExtMatrix A = ExtMatrix::random(f, 3, 4, rng);
            ExtMatrix B = ExtMatrix::random(f, 4, 2, rng);
            REQUIRE(A * B == mat_mul_oracle(A, B));
        }
    }
    SECTION("dimension mismatch") {
        ExtMatrix A(f, 2, 3), B(f, 2, 3);
        REQUIRE_THROWS_AS(A * B, std::invalid_argument);
    }
}

TEST_CASE("rank") {
    const FieldParams& f = FieldParams::for_degree(8);
    Rng rng(11);
    SECTION("zero and identity") {
        REQUIRE(rank_ext(ExtMatrix(f, 4, 6)) == 0);
        REQUIRE(rank_ext(ExtMatrix::identity(f, 5)) == 5);
    }
    SECTION("repeated row loses rank") {
        ExtMatrix A = ExtMatrix::random(f, 4, 5, rng);
        A.set_row(3, A.row(1));
        REQUIRE(rank_ext(A) <= 3);
    }
    SECTION("matches the minor-expansion oracle up to 4x4") {
        for (int i = 0; i < 60; ++i) {
            std::size_t r = 1 + rng.index(4), c = 1 + rng.index(4);
            ExtMatrix A = ExtMatrix::random(f, r, c, rng);
            if (i % 3 == 0 && r > 1) A.set_row(r - 1, A.row(0));  // force degeneracy sometimes
            REQUIRE(rank_ext(A) == rank_oracle(A));
        }
    }
}

TEST_CASE("solve_right") {
    const FieldParams& f = FieldParams::for_degree(12);
    Rng rng(17);
    SECTION("x I = b") {
        ExtVector b = ExtVector::random(f, 4, rng);
        REQUIRE(solve_right(ExtMatrix::identity(f, 4), b, SolveMode::unique).x == b);
    }
    SECTION("zero right-hand side, any mode") {
        ExtMatrix A = ExtMatrix::random(f, 3, 5, rng);
        REQUIRE(solve_right(A, ExtVector(f, 5), SolveMode::any).x.is_zero());
    }
    SECTION("round-trip on full-row-rank systems") {
        for (int i = 0; i < 50; ++i) {
            ExtMatrix A(f, 5, 8);
            do {
                A = ExtMatrix::random(f, 5, 8, rng);
            } while (rank_ext(A) != 5);
            ExtVector x = ExtVector::random(f, 5, rng);
            REQUIRE(solve_right(A, x * A, SolveMode::unique).x == x);
        }
    }
    SECTION("inconsistent system raises no_solution") {
        ExtMatrix A(f, 1, 2);
        A.at(0, 0) = FieldElement::one(f);
        A.at(0, 1) = FieldElement::one(f);
        ExtVector b(f, 2);
        b[1] = FieldElement::one(f);
        REQUIRE_THROWS_AS(solve_right(A, b, SolveMode::any), no_solution);
    }
    SECTION("underdetermined system raises in unique mode, solves in any mode") {
        ExtMatrix A = ExtMatrix::random(f, 4, 2, rng);
        ExtVector x = ExtVector::random(f, 4, rng);
        ExtVector b = x * A;
        REQUIRE_THROWS_AS(solve_right(A, b, SolveMode::unique), ambiguous_solution);
        REQUIRE(solve_right(A, b, SolveMode::any).x * A == b);
    }
    SECTION("all mode returns particular solution plus kernel basis") {
        ExtMatrix A = ExtMatrix::random(f, 5, 3, rng);
        ExtVector x = ExtVector::random(f, 5, rng);
        ExtVector b = x * A;
        Solution s = solve_right(A, b, SolveMode::all);
        REQUIRE(s.x * A == b);
        REQUIRE(s.kernel.has_value());
        REQUIRE(s.kernel->rows() == 5 - rank_ext(A));
        for (std::size_t i = 0; i < s.kernel->rows(); ++i) {
            REQUIRE((s.kernel->row(i) * A).is_zero());
            REQUIRE((s.x + s.kernel->row(i)) * A == b);
        }
    }
}

TEST_CASE("left_kernel") {
    const FieldParams& f = FieldParams::for_degree(8);
    Rng rng(23);
    SECTION("identity has empty kernel, zero has full kernel") {
        REQUIRE(left_kernel(ExtMatrix::identity(f, 4)).rows() == 0);
        ExtMatrix K = left_kernel(ExtMatrix(f, 3, 5));
        REQUIRE(K.rows() == 3);
        REQUIRE(rank_ext(K) == 3);
    }
    SECTION("kernel rows annihilate and are independent") {
        for (int i = 0; i < 40; ++i) {
            ExtMatrix A = ExtMatrix::random(f, 6, 3, rng);
            ExtMatrix K = left_kernel(A);
            REQUIRE(K.rows() == 6 - rank_ext(A));
            REQUIRE(rank_ext(K) == K.rows());
            for (std::size_t r = 0; r < K.rows(); ++r) REQUIRE((K.row(r) * A).is_zero());
        }
    }
}

TEST_CASE("matrix inverse") {
    const FieldParams& f = FieldParams::for_degree(12);
    Rng rng(29);
    for (int i = 0; i < 30; ++i) {
        ExtMatrix A(f, 4, 4);
        do {
            A = ExtMatrix::random(f, 4, 4, rng);
        } while (rank_ext(A) != 4);
        REQUIRE(A * A.inverse() == ExtMatrix::identity(f, 4));
    }
    REQUIRE_THROWS_AS(ExtMatrix(f, 3, 3).inverse(), std::invalid_argument);
}

TEST_CASE("expand_to_base") {
    const FieldParams& f = FieldParams::for_degree(4);
    SECTION("zero vector gives the zero matrix") {
        BaseMatrix B = expand_to_base(ExtVector(f, 3));
        for (std::size_t i = 0; i < B.rows(); ++i) REQUIRE(B.row_is_zero(i));
    }
    SECTION("all-ones vector fills only the first row") {
        ExtVector v(f, 2);
        v[0] = FieldElement::one(f);
        v[1] = FieldElement::one(f);
        BaseMatrix B = expand_to_base(v);
        REQUIRE(B.bit(0, 0));
        REQUIRE(B.bit(0, 1));
        for (std::size_t i = 1; i < B.rows(); ++i) REQUIRE(B.row_is_zero(i));
    }
    SECTION("columns collapse back to the entries") {
        Rng rng(31);
        ExtVector v = ExtVector::random(f, 5, rng);
        BaseMatrix B = expand_to_base(v);
        for (std::size_t j = 0; j < 5; ++j) REQUIRE(element_from_column(f, B, j) == v[j]);
    }
}

TEST_CASE("permutations") {
    const FieldParams& f = FieldParams::for_degree(8);
    Rng rng(37);
    SECTION("identity and swap") {
        ExtVector v = ExtVector::random(f, 2, rng);
        REQUIRE(apply_permutation(v, Permutation::identity(2)) == v);
        Permutation swap(std::vector<std::uint32_t>{1, 0});
        ExtVector w = apply_permutation(v, swap);
        REQUIRE(w[0] == v[1]);
        REQUIRE(w[1] == v[0]);
    }
    SECTION("apply then apply-inverse restores the vector") {
        for (int i = 0; i < 40; ++i) {
            ExtVector v = ExtVector::random(f, 7, rng);
            Permutation P = Permutation::random(7, rng);
            REQUIRE(apply_permutation(apply_permutation(v, P), P, true) == v);
            REQUIRE(apply_permutation(apply_permutation(v, P, true), P) == v);
        }
    }
    SECTION("non-bijections are rejected") {
        REQUIRE_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
        REQUIRE_THROWS_AS(Permutation({0, 3, 1}), std::invalid_argument);
    }
    SECTION("length mismatch") {
        ExtVector v = ExtVector::random(f, 3, rng);
        REQUIRE_THROWS_AS(apply_permutation(v, Permutation::identity(4)), std::invalid_argument);
    }
}

TEST_CASE("partial circulant") {
    const FieldParams& f = FieldParams::for_degree(8);
    Rng rng(41);
    FieldElement a(f, 3), b(f, 5), c(f, 9);
    ExtVector u(f, std::vector<FieldElement>{a, b, c});
    SECTION("single row is u itself") {
        ExtMatrix G = partial_circulant(u, 1);
        REQUIRE(G.row(0) == u);
    }
    SECTION("rows are right cyclic shifts") {
        ExtMatrix G = partial_circulant(u, 3);
        REQUIRE(G.row(0) == u);
        REQUIRE(G.row(1) == ExtVector(f, std::vector<FieldElement>{c, a, b}));
        REQUIRE(G.row(2) == ExtVector(f, std::vector<FieldElement>{b, c, a}));
    }
    SECTION("row count out of range") {
        REQUIRE_THROWS_AS(partial_circulant(u, 0), std::invalid_argument);
        REQUIRE_THROWS_AS(partial_circulant(u, 4), std::invalid_argument);
    }
    SECTION("square circulant commutes with the cyclic shift matrix") {
        for (int i = 0; i < 20; ++i) {
            std::size_t n = 4 + rng.index(4);
            ExtVector v = ExtVector::random(f, n, rng);
            ExtMatrix C = partial_circulant(v, n);
            std::vector<std::uint32_t> shift(n);
            for (std::size_t j = 0; j < n; ++j) shift[j] = static_cast<std::uint32_t>((j + 1) % n);
            ExtMatrix S(f, n, n);
            for (std::size_t j = 0; j < n; ++j) S.at(j, shift[j]) = FieldElement::one(f);
            REQUIRE(C * S == S * C);
        }
    }
    SECTION("every row of a square circulant carries the same multiset of entries") {
        ExtVector v = ExtVector::random(f, 6, rng);
        ExtMatrix C = partial_circulant(v, 6);
        std::vector<std::uint64_t> base;
        for (std::size_t j = 0; j < 6; ++j) base.push_back(v[j].bits());
        std::sort(base.begin(), base.end());
        for (std::size_t i = 0; i < 6; ++i) {
            std::vector<std::uint64_t> row;
            for (std::size_t j = 0; j < 6; ++j) row.push_back(C.at(i, j).bits());
            std::sort(row.begin(), row.end());
            REQUIRE(row == base);
        }
    }
}

TEST_CASE("solve_base") {
    SECTION("identity system returns b") {
        BaseMatrix A(3, 3);
        for (std::size_t i = 0; i < 3; ++i) A.set_bit(i, i, true);
        BitVector b(3);
        b.set_bit(0, true);
        b.set_bit(2, true);
        REQUIRE(solve_base(A, b, SolveMode::unique).x == b);
    }
    SECTION("inconsistent system (two equations x = 0, x = 1)") {
        BaseMatrix A(1, 2);
        A.set_bit(0, 0, true);
        A.set_bit(0, 1, true);
        BitVector b(2);
        b.set_bit(1, true);
        REQUIRE_THROWS_AS(solve_base(A, b, SolveMode::any), no_solution);
    }
    SECTION("random full-rank round-trip") {
        Rng rng(43);
        for (int i = 0; i < 50; ++i) {
            BaseMatrix A(5, 9);
            do {
                for (std::size_t r = 0; r < 5; ++r)
                    for (std::size_t c = 0; c < 9; ++c) A.set_bit(r, c, rng.bit());
            } while (rank_base(A) != 5);
            BitVector x(5);
            for (std::size_t j = 0; j < 5; ++j) x.set_bit(j, rng.bit());
            BitVector b(9);
            for (std::size_t c = 0; c < 9; ++c) {
                bool acc = false;
                for (std::size_t r = 0; r < 5; ++r) acc ^= x.bit(r) && A.bit(r, c);
                b.set_bit(c, acc);
            }
            REQUIRE(solve_base(A, b, SolveMode::unique).x == x);
        }
    }
}

TEST_CASE("matrix and vector serialization") {
    const FieldParams& f = FieldParams::for_degree(41);
    Rng rng(47);
    ExtMatrix M = ExtMatrix::random(f, 3, 4, rng);
    ExtVector v = ExtVector::random(f, 6, rng);

    ByteWriter w;
    append_matrix(w, M);
    append_vector(w, v);
    REQUIRE(w.out.size() == 8 + 12 * f.element_bytes() + 8 + 6 * f.element_bytes());

    ByteReader r(w.out.data(), w.out.size());
    REQUIRE(read_matrix(r, f) == M);
    REQUIRE(read_vector(r, f) == v);
    REQUIRE(r.remaining() == 0);

    SECTION("truncation is detected") {
        ByteReader r2(w.out.data(), w.out.size() - 1);
        read_matrix(r2, f);
        REQUIRE_THROWS_AS(read_vector(r2, f), format_error);
    }
}
