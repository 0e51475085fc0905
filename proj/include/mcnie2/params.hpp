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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "mcnie2/scheme.hpp"

namespace mcnie2 {

/// A named parameter set. r is stored redundantly and checked against
/// floor((n-k)/2).
struct ParameterSet {
    std::string name;
    unsigned q = 2;
    unsigned m = 0;
    unsigned n = 0;
    unsigned k = 0;
    unsigned l = 0;
    unsigned r = 0;

    SchemeParams scheme() const { return SchemeParams{m, n, k, l}; }

    void validate() const {
        if (q != 2) throw std::invalid_argument("only q = 2 parameter sets are supported");
        scheme().validate();
        if (r != (n - k) / 2) throw std::invalid_argument("r must equal floor((n-k)/2)");
    }
};

/// The registry: the three suggested sets plus toy sets for tests and the
/// attack demo.
inline const std::vector<ParameterSet>& parameter_sets() {
    static const std::vector<ParameterSet> sets = [] {
        std::vector<ParameterSet> v{
            {"mcnie128", 2, 41, 24, 12, 22, 6},
            {"mcnie192", 2, 53, 32, 16, 24, 8},
            {"mcnie256", 2, 59, 36, 18, 29, 9},
            {"toy-12", 2, 12, 8, 4, 6, 2},
            {"toy-18", 2, 18, 10, 2, 9, 4},
        };
        for (const auto& p : v) p.validate();
        return v;
    }();
    return sets;
}

inline const ParameterSet& find_parameter_set(std::string_view name) {
    for (const auto& p : parameter_sets())
        if (p.name == name) return p;
    throw std::invalid_argument("unknown parameter set: " + std::string(name));
}

/// Exact byte count as the rational bits/8; the printed-table convention
/// rounds UP to whole bytes first, then formats KB with KB = 1000 bytes.
struct ByteCount {
    std::uint64_t bits = 0;

    double bytes() const { return static_cast<double>(bits) / 8.0; }
    std::uint64_t whole_bytes() const { return (bits + 7) / 8; }

    /// Kilobytes to three decimals, e.g. 4116 bytes -> "4.116".
    std::string kb() const {
        char buf[32];
        std::uint64_t b = whole_bytes();
        std::snprintf(buf, sizeof buf, "%llu.%03llu", static_cast<unsigned long long>(b / 1000),
                      static_cast<unsigned long long>(b % 1000));
        return buf;
    }
};

struct SizeReport {
    ByteCount pk;
    ByteCount sk;
    ByteCount ct;
};

/// Key and ciphertext sizes:
///   PK = (n + l(n-k)) m log2(q) / 8   bytes
///   SK = (n + (2n-k)) m log2(q) / 8   bytes
///   CT = (n + (n-k))  m log2(q) / 8   bytes
/// Note the SK formula charges the permutation at n field elements; the
/// serialized secret-key file stores it as n indices and is smaller.
inline SizeReport sizes(const ParameterSet& p) {
    p.validate();
    // q = 2 keeps the bit counts integral (log2 q = 1).
    std::uint64_t pk = (std::uint64_t{p.n} + std::uint64_t{p.l} * (p.n - p.k)) * p.m;
    std::uint64_t sk = (std::uint64_t{p.n} + (2 * std::uint64_t{p.n} - p.k)) * p.m;
    std::uint64_t ct = (std::uint64_t{p.n} + (p.n - p.k)) * p.m;
    return SizeReport{{pk}, {sk}, {ct}};
}

/// log2 of the rank-ISD cost (n-k)^3 m^3 q^(r(k+1)m/n - m). The exponent is
/// evaluated as an exact rational before any floating-point rounding.
inline double rsd_complexity_log2(unsigned n, unsigned k, unsigned m, unsigned r, unsigned q) {
    if (n == 0 || k >= n || m == 0 || q < 2) throw std::invalid_argument("bad attack parameters");
    long double exponent_num = static_cast<long double>(std::uint64_t{r} * (k + 1) * m) -
                               static_cast<long double>(std::uint64_t{m} * n);
    long double exponent = exponent_num / n;  // r(k+1)m/n - m, exact numerator
    long double bits = 3.0L * std::log2(static_cast<long double>(n - k)) +
                       3.0L * std::log2(static_cast<long double>(m)) +
                       exponent * std::log2(static_cast<long double>(q));
    return static_cast<double>(bits);
}

/// The two instance mappings of the generic message attack. The naive one
/// plugs (n, k) straight into the formula; the combined one is the code the
/// attacker actually sees through (c1, c2): length 2n-k, dimension l,
/// error rank r.
struct SecurityEstimate {
    struct Instance {
        std::string label;
        unsigned n, k, m, r;
        double bits;
    };
    Instance naive;
    Instance combined;
};

inline SecurityEstimate estimate_scheme_security(const ParameterSet& p) {
    p.validate();
    SecurityEstimate e;
    e.naive = {"naive", p.n, p.k, p.m, p.r, rsd_complexity_log2(p.n, p.k, p.m, p.r, p.q)};
    unsigned nc = 2 * p.n - p.k;
    e.combined = {"combined", nc, p.l, p.m, p.r, rsd_complexity_log2(nc, p.l, p.m, p.r, p.q)};
    return e;
}

}  // namespace mcnie2
