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

#include <cmath>
#include <string>

#include <mpfr.h>

#include "mcnie2/params.hpp"

using namespace mcnie2;

namespace {

/// 256-bit precision oracle for 3 log2(n-k) + 3 log2(m) + (r(k+1)m/n - m) log2(q).
double rsd_complexity_oracle(unsigned n, unsigned k, unsigned m, unsigned r, unsigned q) {
    mpfr_t acc, t, e;
    mpfr_inits2(256, acc, t, e, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(t, n - k, MPFR_RNDN);
    mpfr_log2(acc, t, MPFR_RNDN);
    mpfr_mul_ui(acc, acc, 3, MPFR_RNDN);
    mpfr_set_ui(t, m, MPFR_RNDN);
    mpfr_log2(t, t, MPFR_RNDN);
    mpfr_mul_ui(t, t, 3, MPFR_RNDN);
    mpfr_add(acc, acc, t, MPFR_RNDN);
    // exponent r(k+1)m/n - m, exactly
    mpfr_set_ui(e, r, MPFR_RNDN);
    mpfr_mul_ui(e, e, k + 1, MPFR_RNDN);
    mpfr_mul_ui(e, e, m, MPFR_RNDN);
    mpfr_div_ui(e, e, n, MPFR_RNDN);
    mpfr_sub_ui(e, e, m, MPFR_RNDN);
    mpfr_set_ui(t, q, MPFR_RNDN);
    mpfr_log2(t, t, MPFR_RNDN);
    mpfr_mul(e, e, t, MPFR_RNDN);
    mpfr_add(acc, acc, e, MPFR_RNDN);
    double out = mpfr_get_d(acc, MPFR_RNDN);
    mpfr_clears(acc, t, e, static_cast<mpfr_ptr>(nullptr));
    return out;
}

}  // namespace

TEST_CASE("registry") {
    REQUIRE(parameter_sets().size() == 5);
    const ParameterSet& p = find_parameter_set("mcnie128");
    REQUIRE(p.n == 24);
    REQUIRE(p.k == 12);
    REQUIRE(p.l == 22);
    REQUIRE(p.m == 41);
    REQUIRE(p.r == 6);
    REQUIRE_THROWS_AS(find_parameter_set("mcnie512"), std::invalid_argument);
    for (const auto& ps : parameter_sets()) {
        REQUIRE(ps.r == (ps.n - ps.k) / 2);
        REQUIRE_NOTHROW(ps.validate());
    }
}

TEST_CASE("size formulas reproduce the suggested-parameter table") {
    struct Cell {
        const char* name;
        double pk_bytes, sk_bytes, ct_bytes;  // exact rationals
        const char* pk_kb;
        const char* sk_kb;
        const char* ct_kb;
    };
    const Cell cells[] = {
        {"mcnie128", 1476.0, 307.5, 184.5, "1.476", "0.308", "0.185"},
        {"mcnie192", 2756.0, 530.0, 318.0, "2.756", "0.530", "0.318"},
        {"mcnie256", 4115.25, 663.75, 398.25, "4.116", "0.664", "0.399"},
    };
    for (const Cell& c : cells) {
        SizeReport sz = sizes(find_parameter_set(c.name));
        REQUIRE(sz.pk.bytes() == c.pk_bytes);
        REQUIRE(sz.sk.bytes() == c.sk_bytes);
        REQUIRE(sz.ct.bytes() == c.ct_bytes);
        REQUIRE(sz.pk.kb() == c.pk_kb);
        REQUIRE(sz.sk.kb() == c.sk_kb);
        REQUIRE(sz.ct.kb() == c.ct_kb);
    }
}

TEST_CASE("attack complexity formula") {
    SECTION("all factors 1 gives 0 bits") {
        // n-k = 1, m = 1, and a vanishing exponent term
        REQUIRE(rsd_complexity_log2(2, 1, 1, 1, 2) == 0.0);
    }
    SECTION("naive mcnie128 instance: exponent 92.25, about 119.08 bits") {
        double bits = rsd_complexity_log2(24, 12, 41, 6, 2);
        REQUIRE_THAT(bits, Catch::Matchers::WithinAbs(119.077543516018, 1e-9));
    }
    SECTION("combined mcnie128 instance: exponent 116.1666..., about 143.66 bits") {
        double bits = rsd_complexity_log2(36, 22, 41, 6, 2);
        REQUIRE_THAT(bits, Catch::Matchers::WithinAbs(143.661387446694, 1e-9));
    }
    SECTION("matches the arbitrary-precision oracle within 1e-6 bits") {
        for (const auto& p : parameter_sets()) {
            SecurityEstimate est = estimate_scheme_security(p);
            REQUIRE_THAT(est.naive.bits,
                         Catch::Matchers::WithinAbs(rsd_complexity_oracle(p.n, p.k, p.m, p.r, p.q), 1e-6));
            unsigned nc = 2 * p.n - p.k;
            REQUIRE_THAT(est.combined.bits,
                         Catch::Matchers::WithinAbs(rsd_complexity_oracle(nc, p.l, p.m, p.r, p.q), 1e-6));
        }
    }
    SECTION("doubling m shifts the estimate by 3 + (r(k+1)/n - 1) m") {
        // identity check on the formula structure, two independent evaluations
        unsigned n = 24, k = 12, r = 6, q = 2;
        for (unsigned m : {10u, 20u, 30u}) {
            double lhs = rsd_complexity_log2(n, k, 2 * m, r, q) - rsd_complexity_log2(n, k, m, r, q);
            double rhs = 3.0 + (static_cast<double>(r) * (k + 1) / n - 1.0) * m;
            REQUIRE_THAT(lhs, Catch::Matchers::WithinAbs(rhs, 1e-9));
        }
    }
    SECTION("degenerate inputs are rejected") {
        REQUIRE_THROWS_AS(rsd_complexity_log2(8, 8, 41, 3, 2), std::invalid_argument);
        REQUIRE_THROWS_AS(rsd_complexity_log2(8, 4, 0, 3, 2), std::invalid_argument);
    }
    SECTION("strictly increasing in r") {
        for (const auto& p : parameter_sets()) {
            double prev = rsd_complexity_log2(p.n, p.k, p.m, 1, p.q);
            for (unsigned r = 2; r <= 12; ++r) {
                double cur = rsd_complexity_log2(p.n, p.k, p.m, r, p.q);
                REQUIRE(cur > prev);
                prev = cur;
            }
        }
    }
}

TEST_CASE("security estimate reports both instance mappings") {
    SecurityEstimate est = estimate_scheme_security(find_parameter_set("mcnie128"));
    REQUIRE(est.naive.label == "naive");
    REQUIRE(est.naive.n == 24);
    REQUIRE(est.naive.k == 12);
    REQUIRE(est.combined.label == "combined");
    REQUIRE(est.combined.n == 36);
    REQUIRE(est.combined.k == 22);
    REQUIRE(est.combined.r == 6);
}
