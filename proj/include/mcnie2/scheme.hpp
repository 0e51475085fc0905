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
#include <string>
#include <utility>
#include <vector>

#include "mcnie2/bytes.hpp"
#include "mcnie2/errors.hpp"
#include "mcnie2/gabidulin.hpp"
#include "mcnie2/gf2m.hpp"
#include "mcnie2/linalg.hpp"
#include "mcnie2/rank_metric.hpp"
#include "mcnie2/rng.hpp"

namespace mcnie2 {

/// McNie2-Gabidulin scheme parameters over F_{2^m}. The hidden code is a
/// [2n-k, n] Gabidulin code; its redundancy n-k is both the syndrome length
/// and the length of c2.
struct SchemeParams {
    unsigned m = 0;  // extension degree
    unsigned n = 0;  // length of c1, columns of G'
    unsigned k = 0;
    unsigned l = 0;  // message length, rows of G'

    std::size_t code_length() const { return 2 * std::size_t{n} - k; }  // 2n-k
    std::size_t rho() const { return n - k; }                           // redundancy
    std::size_t error_rank() const { return (n - k) / 2; }              // r

    void validate() const {
        if (k == 0 || k >= n) throw std::invalid_argument("require 0 < k < n");
        if (l < 1 || l > n) throw std::invalid_argument("require 1 <= l <= n");
        if (code_length() > m) throw std::invalid_argument("require 2n-k <= m");
        if (l <= rho()) throw std::invalid_argument("require l > n-k");
    }

    const FieldParams& field() const { return FieldParams::for_degree(m); }

    bool operator==(const SchemeParams& o) const {
        return m == o.m && n == o.n && k == o.k && l == o.l;
    }
    bool operator!=(const SchemeParams& o) const { return !(*this == o); }
};

/// (u, F): G' is the l x n partial circulant of u, F = G' P^-1 H1^T (H2^T)^-1.
struct PublicKey {
    SchemeParams params;
    ExtVector u;
    ExtMatrix F;

    ExtMatrix generator() const { return partial_circulant(u, params.l); }
};

/// (P, h): h defines H = moore_matrix(h, n-k), split H = [H1 | H2].
struct SecretKey {
    SchemeParams params;
    Permutation P;
    ExtVector h;

    GabidulinCode code() const { return GabidulinCode(h, params.n); }
};

struct KeyPair {
    PublicKey pk;
    SecretKey sk;
};

struct Ciphertext {
    ExtVector c1;
    ExtVector c2;

    bool operator==(const Ciphertext& o) const { return c1 == o.c1 && c2 == o.c2; }
};

using Plaintext = ExtVector;  // length l

/// F = G' P^-1 H1^T (H2^T)^-1. Shared by keygen and the key-consistency
/// tests; with H2 the identity this degenerates to G' P^-1 H1^T, the
/// Dual-Ouroboros shape.
inline ExtMatrix compute_public_matrix(const ExtMatrix& Gprime, const Permutation& P,
                                       const ExtMatrix& H1, const ExtMatrix& H2) {
    ExtMatrix GpPinv = apply_permutation(Gprime, P, /*inverse=*/true);
    return GpPinv * H1.transpose() * H2.transpose().inverse();
}

inline KeyPair keygen(const SchemeParams& p, Rng& rng) {
    p.validate();
    const FieldParams& f = p.field();
    const std::size_t N = p.code_length();

    ExtVector u(f, p.n);
    do {
        u = ExtVector::random(f, p.n, rng);
    } while (rank_ext(partial_circulant(u, p.l)) != p.l);

    GabidulinCode code = GabidulinCode::random(f, N, p.n, rng);
    // The last rho entries of h are independent (h has full rank weight),
    // which is exactly the invertibility of H2.
    if (rank_weight(code.parity_vector().slice(p.n, p.rho())) != p.rho())
        throw std::logic_error("H2 unexpectedly singular");

    Permutation P = Permutation::identity(p.n);
    do {
        P = Permutation::random(p.n, rng);
    } while (P.is_identity());

    const ExtMatrix& H = code.parity_matrix();
    ExtMatrix H1 = H.submatrix(0, 0, p.rho(), p.n);
    ExtMatrix H2 = H.submatrix(0, p.n, p.rho(), p.rho());
    ExtMatrix Gprime = partial_circulant(u, p.l);
    ExtMatrix F = compute_public_matrix(Gprime, P, H1, H2);

    return KeyPair{PublicKey{p, u, F}, SecretKey{p, P, code.parity_vector()}};
}

/// Encrypt with a caller-chosen error vector (length 2n-k). Deterministic;
/// the building block of encrypt() and of the identity/zero-error tests.
inline Ciphertext encrypt_with_error(const PublicKey& pk, const Plaintext& msg, const ExtVector& e) {
    const SchemeParams& p = pk.params;
    if (msg.size() != p.l || msg.field() != p.field())
        throw std::invalid_argument("plaintext must have length l");
    if (e.size() != p.code_length() || e.field() != p.field())
        throw std::invalid_argument("error vector must have length 2n-k");
    ExtVector e1 = e.slice(0, p.n);
    ExtVector e2 = e.slice(p.n, p.rho());
    ExtVector c1 = msg * pk.generator() + e1;
    ExtVector c2 = msg * pk.F + e2;
    return Ciphertext{std::move(c1), std::move(c2)};
}

inline Ciphertext encrypt(const PublicKey& pk, const Plaintext& msg, Rng& rng) {
    const SchemeParams& p = pk.params;
    ExtVector e = random_error(p.field(), p.code_length(), p.error_rank(), rng);
    return encrypt_with_error(pk, msg, e);
}

/// Decrypt. The c2 consistency check is on by default and turns any
/// mis-decode of a malformed ciphertext into an explicit error; disabling it
/// gives the bare decryption of the scheme description.
inline Plaintext decrypt(const SecretKey& sk, const PublicKey& pk, const Ciphertext& ct,
                         bool check_consistency = true) {
    const SchemeParams& p = sk.params;
    if (pk.params != p) throw std::invalid_argument("key pair parameter mismatch");
    if (ct.c1.size() != p.n || ct.c2.size() != p.rho())
        throw std::invalid_argument("ciphertext dimension mismatch");

    GabidulinCode code = sk.code();
    // c1 P^-1 H1^T - c2 H2^T = (e1 P^-1, -e2) H^T, the syndrome of the
    // permuted error.
    ExtVector c1p = apply_permutation(ct.c1, sk.P, /*inverse=*/true);
    ExtVector s = code.syndrome(ExtVector::concat(c1p, -ct.c2));

    ExtVector eprime(p.field(), code.length());
    try {
        eprime = code.decode_syndrome(s);
    } catch (const decoding_failure& ex) {
        throw decryption_failure(std::string("decoder: ") + ex.what());
    }

    ExtVector e1 = apply_permutation(eprime.slice(0, p.n), sk.P, /*inverse=*/false);
    ExtVector e2_neg = eprime.slice(p.n, p.rho());  // -e2, equal to e2 over F_2

    Plaintext msg(p.field(), p.l);
    try {
        msg = solve_right(pk.generator(), ct.c1 - e1, SolveMode::unique).x;
    } catch (const no_solution& ex) {
        throw decryption_failure(std::string("message solve: ") + ex.what());
    } catch (const ambiguous_solution& ex) {
        throw decryption_failure(std::string("message solve: ") + ex.what());
    }

    if (check_consistency && ct.c2 - msg * pk.F != -e2_neg)
        throw decryption_failure("c2 consistency check failed");
    return msg;
}

// ---- serialized formats ----
//
// Every file starts with magic "MCN2", a format version byte, and the
// parameter record (m, n, k, l as 16-bit little-endian integers).
//   public key:  u as a vector, then F as an l x (n-k) matrix
//   secret key:  P as n 16-bit indices, then h as a vector
//   ciphertext:  the (n + rho) elements of (c1 | c2) bit-packed into
//                ceil((2n-k) m / 8) bytes, no per-element padding

inline constexpr std::uint8_t kFormatVersion = 1;

inline void append_header(ByteWriter& w, const SchemeParams& p) {
    w.u8('M');
    w.u8('C');
    w.u8('N');
    w.u8('2');
    w.u8(kFormatVersion);
    w.u16(static_cast<std::uint16_t>(p.m));
    w.u16(static_cast<std::uint16_t>(p.n));
    w.u16(static_cast<std::uint16_t>(p.k));
    w.u16(static_cast<std::uint16_t>(p.l));
}

inline SchemeParams read_header(ByteReader& r) {
    const std::uint8_t* magic = r.take(4);
    if (magic[0] != 'M' || magic[1] != 'C' || magic[2] != 'N' || magic[3] != '2')
        throw format_error("bad magic");
    if (r.u8() != kFormatVersion) throw format_error("unsupported format version");
    SchemeParams p;
    p.m = r.u16();
    p.n = r.u16();
    p.k = r.u16();
    p.l = r.u16();
    try {
        p.validate();
        FieldParams::for_degree(p.m);
    } catch (const std::invalid_argument& ex) {
        throw format_error(std::string("bad parameter record: ") + ex.what());
    }
    return p;
}

inline constexpr std::size_t header_bytes() { return 4 + 1 + 4 * 2; }

inline std::vector<std::uint8_t> serialize_public_key(const PublicKey& pk) {
    ByteWriter w;
    append_header(w, pk.params);
    append_vector(w, pk.u);
    append_matrix(w, pk.F);
    return std::move(w.out);
}

inline PublicKey parse_public_key(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes.data(), bytes.size());
    SchemeParams p = read_header(r);
    const FieldParams& f = p.field();
    ExtVector u = read_vector(r, f);
    ExtMatrix F = read_matrix(r, f);
    if (u.size() != p.n || F.rows() != p.l || F.cols() != p.rho())
        throw format_error("public key dimensions do not match the parameter record");
    if (r.remaining() != 0) throw format_error("trailing bytes in public key");
    return PublicKey{p, std::move(u), std::move(F)};
}

inline std::vector<std::uint8_t> serialize_secret_key(const SecretKey& sk) {
    ByteWriter w;
    append_header(w, sk.params);
    for (std::size_t i = 0; i < sk.P.size(); ++i) w.u16(static_cast<std::uint16_t>(sk.P(i)));
    append_vector(w, sk.h);
    return std::move(w.out);
}

inline SecretKey parse_secret_key(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes.data(), bytes.size());
    SchemeParams p = read_header(r);
    const FieldParams& f = p.field();
    std::vector<std::uint32_t> map(p.n);
    for (auto& v : map) v = r.u16();
    ExtVector h = read_vector(r, f);
    if (h.size() != p.code_length())
        throw format_error("secret key dimensions do not match the parameter record");
    if (r.remaining() != 0) throw format_error("trailing bytes in secret key");
    try {
        return SecretKey{p, Permutation(std::move(map)), std::move(h)};
    } catch (const std::invalid_argument& ex) {
        throw format_error(std::string("bad secret key: ") + ex.what());
    }
}

/// Bit-packed payload size of one ciphertext: ceil((n + rho) m / 8).
inline std::size_t ciphertext_payload_bytes(const SchemeParams& p) {
    return ((std::size_t{p.n} + p.rho()) * p.m + 7) / 8;
}

inline void append_ciphertext_payload(ByteWriter& w, const Ciphertext& ct) {
    BitWriter bw;
    for (std::size_t i = 0; i < ct.c1.size(); ++i) bw.put(ct.c1[i].bits(), ct.c1.field().degree());
    for (std::size_t i = 0; i < ct.c2.size(); ++i) bw.put(ct.c2[i].bits(), ct.c2.field().degree());
    w.bytes(bw.out.data(), bw.out.size());
}

inline Ciphertext read_ciphertext_payload(ByteReader& r, const SchemeParams& p) {
    const FieldParams& f = p.field();
    const std::uint8_t* data = r.take(ciphertext_payload_bytes(p));
    BitReader br(data, ciphertext_payload_bytes(p));
    std::vector<FieldElement> c1, c2;
    for (std::size_t i = 0; i < p.n; ++i) c1.emplace_back(f, br.get(p.m));
    for (std::size_t i = 0; i < p.rho(); ++i) c2.emplace_back(f, br.get(p.m));
    return Ciphertext{ExtVector(f, std::move(c1)), ExtVector(f, std::move(c2))};
}

inline std::vector<std::uint8_t> serialize_ciphertext(const SchemeParams& p, const Ciphertext& ct) {
    ByteWriter w;
    append_header(w, p);
    append_ciphertext_payload(w, ct);
    return std::move(w.out);
}

inline Ciphertext parse_ciphertext(const std::vector<std::uint8_t>& bytes, const SchemeParams& expect) {
    ByteReader r(bytes.data(), bytes.size());
    SchemeParams p = read_header(r);
    if (p != expect) throw format_error("ciphertext parameters do not match the key");
    Ciphertext ct = read_ciphertext_payload(r, p);
    if (r.remaining() != 0) throw format_error("trailing bytes in ciphertext");
    return ct;
}

// ---- plaintext block codec ----
//
// A plaintext block is exactly floor(l m / 8) bytes, read little-endian as
// a bit stream of m bits per element; the last element's missing high bits
// are zero.

inline std::size_t plaintext_block_bytes(const SchemeParams& p) {
    return std::size_t{p.l} * p.m / 8;
}

inline Plaintext unpack_plaintext_block(const SchemeParams& p, const std::uint8_t* data) {
    const FieldParams& f = p.field();
    BitReader br(data, plaintext_block_bytes(p));
    br.allow_dry = true;
    std::vector<FieldElement> e;
    e.reserve(p.l);
    for (std::size_t i = 0; i < p.l; ++i) e.emplace_back(f, br.get(p.m));
    return Plaintext(f, std::move(e));
}

inline std::vector<std::uint8_t> pack_plaintext_block(const SchemeParams& p, const Plaintext& msg) {
    if (msg.size() != p.l) throw std::invalid_argument("plaintext must have length l");
    BitWriter bw;
    for (std::size_t i = 0; i < p.l; ++i) bw.put(msg[i].bits(), p.m);
    const std::size_t want = plaintext_block_bytes(p);
    for (std::size_t i = want; i < bw.out.size(); ++i)
        if (bw.out[i] != 0) throw decryption_failure("plaintext block has nonzero padding bits");
    bw.out.resize(want);
    return std::move(bw.out);
}

}  // namespace mcnie2
