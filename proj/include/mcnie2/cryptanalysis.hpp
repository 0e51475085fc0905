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

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mcnie2/errors.hpp"
#include "mcnie2/gabidulin.hpp"
#include "mcnie2/linalg.hpp"
#include "mcnie2/rank_metric.hpp"
#include "mcnie2/rng.hpp"
#include "mcnie2/scheme.hpp"

namespace mcnie2 {

// ---- the original McNie scheme, toy scale ----
//
// Hidden code: an [n, k] Gabidulin code (error length n, not 2n-k), a
// random full-rank G', and an extra column scrambler S. c2 = m F carries no
// error, which is exactly what the message-recovery reduction exploits.

struct LegacyParams {
    unsigned m = 0;
    unsigned n = 0;
    unsigned k = 0;
    unsigned l = 0;
    unsigned r = 0;  // error rank of honest encryptions, r <= floor((n-k)/2)

    std::size_t rho() const { return n - k; }

    void validate() const {
        if (k == 0 || k >= n) throw std::invalid_argument("require 0 < k < n");
        if (l < 1 || l > n) throw std::invalid_argument("require 1 <= l <= n");
        if (n > m) throw std::invalid_argument("require n <= m");
        if (r > rho() / 2) throw std::invalid_argument("require r <= floor((n-k)/2)");
    }

    const FieldParams& field() const { return FieldParams::for_degree(m); }
};

/// Toy instance used by the round-trip tests.
inline LegacyParams legacy_toy_params() { return LegacyParams{12, 10, 4, 8, 3}; }

struct LegacyPublicKey {
    LegacyParams params;
    ExtMatrix Gprime;  // l x n, full rank
    ExtMatrix F;       // l x (n-k): G' P^-1 H^T S
};

struct LegacySecretKey {
    LegacyParams params;
    Permutation P;
    ExtVector h;  // parity vector of the [n, k] code
    ExtMatrix S;  // (n-k) x (n-k), invertible

    GabidulinCode code() const { return GabidulinCode(h, params.k); }
};

struct LegacyKeyPair {
    LegacyPublicKey pk;
    LegacySecretKey sk;
};

inline LegacyKeyPair legacy_keygen(const LegacyParams& p, Rng& rng) {
    p.validate();
    const FieldParams& f = p.field();

    ExtMatrix Gprime(f, p.l, p.n);
    do {
        Gprime = ExtMatrix::random(f, p.l, p.n, rng);
    } while (rank_ext(Gprime) != p.l);

    GabidulinCode code = GabidulinCode::random(f, p.n, p.k, rng);

    ExtMatrix S(f, p.rho(), p.rho());
    do {
        S = ExtMatrix::random(f, p.rho(), p.rho(), rng);
    } while (rank_ext(S) != p.rho());

    Permutation P = Permutation::random(p.n, rng);

    ExtMatrix F = apply_permutation(Gprime, P, /*inverse=*/true) * code.parity_matrix().transpose() * S;
    return LegacyKeyPair{LegacyPublicKey{p, Gprime, F},
                         LegacySecretKey{p, std::move(P), code.parity_vector(), std::move(S)}};
}

inline Ciphertext legacy_encrypt_with_error(const LegacyPublicKey& pk, const ExtVector& msg,
                                            const ExtVector& e) {
    const LegacyParams& p = pk.params;
    if (msg.size() != p.l) throw std::invalid_argument("plaintext must have length l");
    if (e.size() != p.n) throw std::invalid_argument("error vector must have length n");
    return Ciphertext{msg * pk.Gprime + e, msg * pk.F};
}

inline Ciphertext legacy_encrypt(const LegacyPublicKey& pk, const ExtVector& msg, Rng& rng) {
    const LegacyParams& p = pk.params;
    ExtVector e = random_error(p.field(), p.n, p.r, rng);
    return legacy_encrypt_with_error(pk, msg, e);
}

inline ExtVector legacy_decrypt(const LegacySecretKey& sk, const LegacyPublicKey& pk,
                                const Ciphertext& ct, bool check_consistency = true) {
    const LegacyParams& p = sk.params;
    if (ct.c1.size() != p.n || ct.c2.size() != p.rho())
        throw std::invalid_argument("ciphertext dimension mismatch");

    GabidulinCode code = sk.code();
    // c1 P^-1 H^T - c2 S^-1 = e P^-1 H^T
    ExtVector c1p = apply_permutation(ct.c1, sk.P, /*inverse=*/true);
    ExtVector s = code.syndrome(c1p) - ct.c2 * sk.S.inverse();

    ExtVector ep(p.field(), p.n);
    try {
        ep = code.decode_syndrome(s);
    } catch (const decoding_failure& ex) {
        throw decryption_failure(std::string("decoder: ") + ex.what());
    }
    ExtVector e = apply_permutation(ep, sk.P, /*inverse=*/false);

    ExtVector msg(p.field(), p.l);
    try {
        msg = solve_right(pk.Gprime, ct.c1 - e, SolveMode::unique).x;
    } catch (const no_solution& ex) {
        throw decryption_failure(std::string("message solve: ") + ex.what());
    } catch (const ambiguous_solution& ex) {
        throw decryption_failure(std::string("message solve: ") + ex.what());
    }
    if (check_consistency && msg * pk.F != ct.c2)
        throw decryption_failure("c2 consistency check failed");
    return msg;
}

// ---- Gaborit's message-recovery reduction ----

/// c2 = m F pins n-k coordinates of m. The solutions of x F = c2 form
/// m0 + rowspan(K); substituting turns c1 into an instance of rank
/// syndrome decoding on the (l - (n-k))-row code K G' instead of the
/// l-row code G'.
struct ReducedInstance {
    ExtVector y;    // c1 - m0 G'
    ExtMatrix Gpp;  // K G', (l - rho) x n
    ExtVector m0;   // particular solution of x F = c2
    ExtMatrix K;    // left kernel of F, (l - rho) x l
};

/// Works on any (G', F, c1, c2) of McNie shape; both the legacy scheme and
/// McNie2 feed it below. F must have full column rank; passing
/// require_full_rank = false instead accepts a rank-deficient F and returns
/// the correspondingly weaker reduction (kernel of dimension l - rank(F)).
inline ReducedInstance gaborit_reduce(const ExtMatrix& Gprime, const ExtMatrix& F, const ExtVector& c1,
                                      const ExtVector& c2, bool require_full_rank = true) {
    if (require_full_rank && rank_ext(F) != F.cols())
        throw reduction_inapplicable("public matrix F is not of full rank");
    ExtVector m0 = solve_right(F, c2, SolveMode::any).x;
    ExtMatrix K = left_kernel(F);
    ExtMatrix Gpp = K * Gprime;
    ExtVector y = c1 - m0 * Gprime;
    return ReducedInstance{std::move(y), std::move(Gpp), std::move(m0), std::move(K)};
}

inline ReducedInstance gaborit_reduce(const LegacyPublicKey& pk, const Ciphertext& ct) {
    return gaborit_reduce(pk.Gprime, pk.F, ct.c1, ct.c2);
}

inline ReducedInstance gaborit_reduce(const PublicKey& pk, const Ciphertext& ct) {
    return gaborit_reduce(pk.generator(), pk.F, ct.c1, ct.c2);
}

// ---- exhaustive RSD oracle (toy scale only) ----

struct RsdSolution {
    ExtVector message;
    ExtVector error;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

/// Enumerate every candidate x over F_{2^m}^rows(G) and return all
/// (x, y - x G) whose residual has rank weight <= r. The sweep walks a Gray
/// code so each step updates the residual by one precomputed row. Candidate
/// count 2^(m rows) must stay within the cap.
inline std::vector<RsdSolution> brute_force_rsd(const ExtMatrix& G, const ExtVector& y, unsigned r,
                                                std::uint64_t cap = kDefaultEnumerationCap) {
    if (y.size() != G.cols() || y.field() != G.field())
        throw std::invalid_argument("received word does not match the code");
    const FieldParams& f = G.field();
    const unsigned m = f.degree();
    const std::size_t n = G.cols();
    const std::size_t total_bits = G.rows() * m;
    if (total_bits >= 63 || (std::uint64_t{1} << total_bits) > cap)
        throw infeasible_error("enumeration of 2^" + std::to_string(total_bits) +
                               " candidates exceeds the cap");

    // delta[i*m + b] = (X^b) * G.row(i), as raw coefficient words
    std::vector<std::vector<std::uint64_t>> delta(total_bits, std::vector<std::uint64_t>(n));
    for (std::size_t i = 0; i < G.rows(); ++i)
        for (unsigned b = 0; b < m; ++b)
            for (std::size_t j = 0; j < n; ++j)
                delta[i * m + b][j] = f.mul_bits(std::uint64_t{1} << b, G.at(i, j).bits());

    std::vector<std::uint64_t> residual(n);
    for (std::size_t j = 0; j < n; ++j) residual[j] = y[j].bits();

    std::vector<RsdSolution> found;
    const std::uint64_t count = std::uint64_t{1} << total_bits;
    std::uint64_t gray = 0;
    for (std::uint64_t c = 0;; ++c) {
        // rank check with early exit, straight on the packed words
        std::uint64_t pivots[64];
        std::size_t npiv = 0;
        bool small = true;
        for (std::size_t j = 0; j < n; ++j) {
            std::uint64_t row = residual[j];
            for (std::size_t kk = 0; kk < npiv && row != 0; ++kk)
                if ((row ^ pivots[kk]) < row) row ^= pivots[kk];
            if (row != 0) {
                if (npiv == r) {
                    small = false;
                    break;
                }
                std::size_t pos = npiv++;
                while (pos > 0 && pivots[pos - 1] < row) {
                    pivots[pos] = pivots[pos - 1];
                    --pos;
                }
                pivots[pos] = row;
            }
        }
        if (small) {
            std::vector<FieldElement> msg, err;
            for (std::size_t i = 0; i < G.rows(); ++i)
                msg.emplace_back(f, (gray >> (i * m)) & f.mask());
            for (std::size_t j = 0; j < n; ++j) err.emplace_back(f, residual[j]);
            found.push_back(RsdSolution{ExtVector(f, std::move(msg)), ExtVector(f, std::move(err))});
        }
        if (c + 1 == count) break;
        unsigned flip = static_cast<unsigned>(std::countr_zero(c + 1));
        gray ^= std::uint64_t{1} << flip;
        for (std::size_t j = 0; j < n; ++j) residual[j] ^= delta[flip][j];
    }
    return found;
}

/// Full Gaborit pipeline: reduce, solve the small RSD instance
/// exhaustively, lift every hit back to a message candidate m0 + m' K.
inline std::vector<ExtVector> attack_message_recovery(const ExtMatrix& Gprime, const ExtMatrix& F,
                                                      const ExtVector& c1, const ExtVector& c2,
                                                      unsigned r,
                                                      std::uint64_t cap = kDefaultEnumerationCap) {
    ReducedInstance red = gaborit_reduce(Gprime, F, c1, c2);
    std::vector<RsdSolution> sols = brute_force_rsd(red.Gpp, red.y, r, cap);
    std::vector<ExtVector> candidates;
    candidates.reserve(sols.size());
    for (const auto& s : sols) candidates.push_back(red.m0 + s.message * red.K);
    return candidates;
}

inline std::vector<ExtVector> attack_legacy(const LegacyPublicKey& pk, const Ciphertext& ct,
                                            std::uint64_t cap = kDefaultEnumerationCap) {
    return attack_message_recovery(pk.Gprime, pk.F, ct.c1, ct.c2, pk.params.r, cap);
}

inline std::vector<ExtVector> attack_mcnie2(const PublicKey& pk, const Ciphertext& ct,
                                            std::uint64_t cap = kDefaultEnumerationCap) {
    return attack_message_recovery(pk.generator(), pk.F, ct.c1, ct.c2,
                                   static_cast<unsigned>(pk.params.error_rank()), cap);
}

// ---- experiment runner ----

struct AttackReport {
    std::string scheme;
    unsigned trials = 0;
    unsigned successes = 0;
    unsigned m = 0, n = 0, k = 0, l = 0, r = 0;
    std::size_t reduced_rows = 0;  // rows of K G' (same in every trial)
    std::size_t full_rows = 0;     // rows of G'
    double enumeration_log2 = 0;
    double wall_ms = 0;
    bool reduced_dim_consistent = true;  // reduced_rows == l - (n-k) in every trial

    double success_rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }

    std::string to_text() const;
    static std::string csv_header() {
        return "scheme,trials,successes,success_rate,m,n,k,l,r,reduced_dim,full_dim,enum_log2,wall_ms";
    }
    std::string to_csv_row() const;
};

inline std::string AttackReport::to_text() const {
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "scheme=%s trials=%u successes=%u success_rate=%.3f m=%u n=%u k=%u l=%u r=%u "
                  "reduced_dim=%zu full_dim=%zu enum_log2=%.0f wall_ms=%.1f",
                  scheme.c_str(), trials, successes, success_rate(), m, n, k, l, r, reduced_rows,
                  full_rows, enumeration_log2, wall_ms);
    return buf;
}

inline std::string AttackReport::to_csv_row() const {
    char buf[320];
    std::snprintf(buf, sizeof buf, "%s,%u,%u,%.3f,%u,%u,%u,%u,%u,%zu,%zu,%.0f,%.1f", scheme.c_str(),
                  trials, successes, success_rate(), m, n, k, l, r, reduced_rows, full_rows,
                  enumeration_log2, wall_ms);
    return buf;
}

/// Toy parameters shared by both sides of the attack demo: identical
/// (l, n, n-k) shape so the pipeline is literally the same code; r rho = 32
/// keeps the probability of an errorless c2 (which Gaborit would then
/// legitimately break) around 2^-32.
inline LegacyParams attack_demo_legacy_params() { return LegacyParams{18, 10, 2, 9, 4}; }
inline SchemeParams attack_demo_mcnie2_params() { return SchemeParams{18, 10, 2, 9}; }

inline AttackReport run_legacy_attack_experiment(const LegacyParams& p, unsigned trials,
                                                 std::uint64_t seed,
                                                 std::uint64_t cap = kDefaultEnumerationCap) {
    p.validate();
    Rng rng(seed);
    AttackReport rep;
    rep.scheme = "legacy";
    rep.trials = trials;
    rep.m = p.m;
    rep.n = p.n;
    rep.k = p.k;
    rep.l = p.l;
    rep.r = p.r;
    rep.full_rows = p.l;
    rep.enumeration_log2 = static_cast<double>((p.l - p.rho()) * p.m);
    auto t0 = std::chrono::steady_clock::now();
    for (unsigned t = 0; t < trials; ++t) {
        LegacyKeyPair keys = legacy_keygen(p, rng);
        while (rank_ext(keys.pk.F) != p.rho()) keys = legacy_keygen(p, rng);
        ExtVector msg = ExtVector::random(p.field(), p.l, rng);
        Ciphertext ct = legacy_encrypt(keys.pk, msg, rng);
        ReducedInstance red = gaborit_reduce(keys.pk, ct);
        rep.reduced_rows = red.Gpp.rows();
        if (red.Gpp.rows() != p.l - p.rho()) rep.reduced_dim_consistent = false;
        std::vector<RsdSolution> sols = brute_force_rsd(red.Gpp, red.y, p.r, cap);
        for (const auto& s : sols)
            if (red.m0 + s.message * red.K == msg) {
                ++rep.successes;
                break;
            }
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline AttackReport run_mcnie2_attack_experiment(const SchemeParams& p, unsigned trials,
                                                 std::uint64_t seed,
                                                 std::uint64_t cap = kDefaultEnumerationCap) {
    p.validate();
    Rng rng(seed);
    AttackReport rep;
    rep.scheme = "mcnie2";
    rep.trials = trials;
    rep.m = p.m;
    rep.n = p.n;
    rep.k = p.k;
    rep.l = p.l;
    rep.r = static_cast<unsigned>(p.error_rank());
    rep.full_rows = p.l;
    rep.enumeration_log2 = static_cast<double>((p.l - p.rho()) * p.m);
    auto t0 = std::chrono::steady_clock::now();
    for (unsigned t = 0; t < trials; ++t) {
        KeyPair keys = keygen(p, rng);
        while (rank_ext(keys.pk.F) != p.rho()) keys = keygen(p, rng);
        ExtVector msg = ExtVector::random(p.field(), p.l, rng);
        Ciphertext ct = encrypt(keys.pk, msg, rng);
        ReducedInstance red = gaborit_reduce(keys.pk, ct);
        rep.reduced_rows = red.Gpp.rows();
        if (red.Gpp.rows() != p.l - p.rho()) rep.reduced_dim_consistent = false;
        std::vector<RsdSolution> sols =
            brute_force_rsd(red.Gpp, red.y, static_cast<unsigned>(p.error_rank()), cap);
        for (const auto& s : sols)
            if (red.m0 + s.message * red.K == msg) {
                ++rep.successes;
                break;
            }
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace mcnie2
