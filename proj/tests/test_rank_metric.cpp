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

#include <vector>

#include "mcnie2/rank_metric.hpp"
#include "mcnie2/rng.hpp"

using namespace mcnie2;

namespace {

// Hand-rolled bit matrix rank over int rows, as an oracle for rank_weight.
std::size_t bit_rank_oracle(const std::vector<std::uint64_t>& rows) {
    std::vector<std::uint64_t> basis;
    for (std::uint64_t r : rows) {
        for (std::uint64_t b : basis) r = std::min(r, r ^ b);
        if (r != 0) basis.push_back(r);
    }
    return basis.size();
}

std::size_t rank_weight_oracle(const ExtVector& v) {
    std::vector<std::uint64_t> rows;
    for (std::size_t i = 0; i < v.size(); ++i) rows.push_back(v[i].bits());
    return bit_rank_oracle(rows);
}

std::size_t hamming_weight(const ExtVector& v) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < v.size(); ++i) w += !v[i].is_zero();
    return w;
}

}  // namespace

TEST_CASE("rank weight") {
    const FieldParams& f8 = FieldParams::for_degree(3);
    SECTION("zero vector has weight 0") { REQUIRE(rank_weight(ExtVector(f8, 5)) == 0); }
    SECTION("all-ones vector has weight 1") {
        ExtVector v(f8, 4);
        for (std::size_t i = 0; i < 4; ++i) v[i] = FieldElement::one(f8);
        REQUIRE(rank_weight(v) == 1);
    }
    SECTION("dependent third coordinate keeps weight 2") {
        // (w, w^2, w + w^2) in F_8
        FieldElement w(f8, 0b010), w2(f8, 0b100);
        ExtVector v(f8, std::vector<FieldElement>{w, w2, w + w2});
        REQUIRE(rank_weight(v) == 2);
        REQUIRE(rank_weight_oracle(v) == 2);
    }
    SECTION("matches the bit-matrix oracle on random vectors") {
        const FieldParams& f = FieldParams::for_degree(12);
        Rng rng(3);
        for (int i = 0; i < 300; ++i) {
            ExtVector v = ExtVector::random(f, 1 + rng.index(10), rng);
            REQUIRE(rank_weight(v) == rank_weight_oracle(v));
        }
    }
    SECTION("bounded by Hamming weight and by min(m, n)") {
        const FieldParams& f = FieldParams::for_degree(4);
        Rng rng(5);
        for (int i = 0; i < 200; ++i) {
            ExtVector v = ExtVector::random(f, 7, rng);
            std::size_t rw = rank_weight(v);
            REQUIRE(rw <= hamming_weight(v));
            REQUIRE(rw <= 4);
        }
    }
    SECTION("early-exit bound agrees with the full rank") {
        const FieldParams& f = FieldParams::for_degree(12);
        Rng rng(7);
        for (int i = 0; i < 200; ++i) {
            ExtVector v = ExtVector::random(f, 6, rng);
            std::size_t rw = rank_weight(v);
            for (std::size_t bound = 0; bound <= 7; ++bound)
                REQUIRE(rank_weight_at_most(v, bound) == (rw <= bound));
        }
    }
}

TEST_CASE("rank weight is permutation and negation invariant") {
    const FieldParams& f = FieldParams::for_degree(18);
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        ExtVector v = ExtVector::random(f, 9, rng);
        Permutation P = Permutation::random(9, rng);
        REQUIRE(rank_weight(apply_permutation(v, P)) == rank_weight(v));
        REQUIRE(rank_weight(-v) == rank_weight(v));
    }
}

TEST_CASE("support_of") {
    const FieldParams& f = FieldParams::for_degree(8);
    SECTION("zero vector has empty support") {
        REQUIRE(support_of(ExtVector(f, 4)).dim() == 0);
    }
    SECTION("repeated single entry spans one dimension") {
        FieldElement a(f, 0x35);
        ExtVector v(f, std::vector<FieldElement>{a, a, a});
        Support s = support_of(v);
        REQUIRE(s.dim() == 1);
        // the basis generates a: over F_2 the only nonzero multiple is a itself
        REQUIRE(s.basis()[0] == a);
    }
    SECTION("every entry lies in the span of the returned basis") {
        Rng rng(13);
        for (int i = 0; i < 100; ++i) {
            ExtVector v = ExtVector::random(f, 6, rng);
            Support s = support_of(v);
            REQUIRE(s.dim() == rank_weight(v));
            if (s.dim() == 0) continue;
            // membership via solve_base: basis-bit matrix times x = entry bits
            BaseMatrix cols = expand_to_base(ExtVector(f, s.basis())).transpose();
            for (std::size_t j = 0; j < v.size(); ++j) {
                BitVector target(f.degree());
                for (unsigned b = 0; b < f.degree(); ++b) target.set_bit(b, (v[j].bits() >> b) & 1);
                REQUIRE_NOTHROW(solve_base(cols, target, SolveMode::any));
            }
        }
    }
    SECTION("dependent basis is rejected by Support") {
        FieldElement a(f, 0x3), b(f, 0x5);
        REQUIRE_THROWS_AS(Support(f, {a, b, a + b}), std::invalid_argument);
    }
}

TEST_CASE("random_error") {
    const FieldParams& f = FieldParams::for_degree(41);
    Rng rng(17);
    SECTION("rank 0 gives the zero vector") {
        REQUIRE(random_error(f, 10, 0, rng).is_zero());
    }
    SECTION("infeasible target rank") {
        REQUIRE_THROWS_AS(random_error(f, 5, 6, rng), std::invalid_argument);
        const FieldParams& tiny = FieldParams::for_degree(3);
        REQUIRE_THROWS_AS(random_error(tiny, 8, 4, rng), std::invalid_argument);
    }
    SECTION("sampled vectors have rank exactly t (soak)") {
        for (int i = 0; i < 1000; ++i) {
            ExtVector e = random_error(f, 36, 6, rng);
            REQUIRE(rank_weight(e) == 6);
            REQUIRE(support_of(e).dim() == 6);
        }
    }
    SECTION("all ranks up to min(m, length)") {
        const FieldParams& f12 = FieldParams::for_degree(12);
        for (std::size_t t = 0; t <= 8; ++t) {
            ExtVector e = random_error(f12, 8, t, rng);
            REQUIRE(rank_weight(e) == t);
        }
    }
    SECTION("same seed reproduces the same error") {
        Rng a(99), b(99);
        REQUIRE(random_error(f, 20, 5, a) == random_error(f, 20, 5, b));
    }
}
