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

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcnie2/cryptanalysis.hpp"
#include "mcnie2/params.hpp"
#include "mcnie2/scheme.hpp"

namespace {

// Exit codes: 0 success, 2 usage, 3 format, 4 crypto failure, 5 I/O.
constexpr int kExitUsage = 2;
constexpr int kExitFormat = 3;
constexpr int kExitCrypto = 4;
constexpr int kExitIo = 5;

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (in.bad()) throw io_error("read failed: " + path);
    return data;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot create " + path);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw io_error("write failed: " + path);
}

mcnie2::Rng make_rng(const std::optional<std::uint64_t>& seed) {
    return seed ? mcnie2::Rng(*seed) : mcnie2::Rng::from_entropy();
}

std::uint64_t make_stream_seed(const std::optional<std::uint64_t>& seed) {
    if (seed) return *seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int cmd_keygen(const std::string& params_name, const std::optional<std::uint64_t>& seed,
               const std::string& pub_path, const std::string& sec_path) {
    const mcnie2::ParameterSet* ps;
    try {
        ps = &mcnie2::find_parameter_set(params_name);
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    }
    mcnie2::Rng rng = make_rng(seed);
    mcnie2::KeyPair keys = mcnie2::keygen(ps->scheme(), rng);
    std::vector<std::uint8_t> pub = mcnie2::serialize_public_key(keys.pk);
    std::vector<std::uint8_t> sec = mcnie2::serialize_secret_key(keys.sk);
    write_file(pub_path, pub);
    write_file(sec_path, sec);
    mcnie2::SizeReport sz = mcnie2::sizes(*ps);
    std::printf("params=%s\n", ps->name.c_str());
    std::printf("pub_path=%s\n", pub_path.c_str());
    std::printf("sec_path=%s\n", sec_path.c_str());
    std::printf("pk_file_bytes=%zu pk_formula_bytes=%llu\n", pub.size(),
                static_cast<unsigned long long>(sz.pk.whole_bytes()));
    std::printf("sk_file_bytes=%zu sk_formula_bytes=%llu\n", sec.size(),
                static_cast<unsigned long long>(sz.sk.whole_bytes()));
    std::printf("ct_block_bytes=%zu ct_formula_bytes=%llu\n",
                mcnie2::header_bytes() + mcnie2::ciphertext_payload_bytes(ps->scheme()),
                static_cast<unsigned long long>(sz.ct.whole_bytes()));
    return 0;
}

// Multi-block framing: non-empty plaintext gets one mandatory 0x80 byte and
// zero fill up to a block boundary, so arbitrary byte lengths round-trip
// exactly. Empty input encrypts to zero blocks (header only).
int cmd_encrypt(const std::string& pub_path, const std::string& in_path, const std::string& out_path,
                const std::optional<std::uint64_t>& seed) {
    mcnie2::PublicKey pk = mcnie2::parse_public_key(read_file(pub_path));
    const mcnie2::SchemeParams& p = pk.params;
    std::vector<std::uint8_t> data = read_file(in_path);

    mcnie2::ByteWriter w;
    mcnie2::append_header(w, p);
    if (!data.empty()) {
        const std::size_t bb = mcnie2::plaintext_block_bytes(p);
        data.push_back(0x80);
        while (data.size() % bb != 0) data.push_back(0x00);
        const std::uint64_t stream_seed = make_stream_seed(seed);
        for (std::size_t block = 0; block * bb < data.size(); ++block) {
            mcnie2::Plaintext msg = mcnie2::unpack_plaintext_block(p, data.data() + block * bb);
            mcnie2::Rng block_rng = mcnie2::Rng::derive(stream_seed, block);
            mcnie2::Ciphertext ct = mcnie2::encrypt(pk, msg, block_rng);
            mcnie2::append_ciphertext_payload(w, ct);
        }
    }
    write_file(out_path, w.out);
    std::printf("blocks=%zu out_bytes=%zu\n",
                data.empty() ? std::size_t{0} : data.size() / mcnie2::plaintext_block_bytes(p),
                w.out.size());
    return 0;
}

int cmd_decrypt(const std::string& sec_path, const std::string& pub_path, const std::string& in_path,
                const std::string& out_path, bool no_consistency_check) {
    mcnie2::SecretKey sk = mcnie2::parse_secret_key(read_file(sec_path));
    mcnie2::PublicKey pk = mcnie2::parse_public_key(read_file(pub_path));
    if (sk.params != pk.params) throw mcnie2::format_error("public and secret key parameters differ");

    std::vector<std::uint8_t> data = read_file(in_path);
    mcnie2::ByteReader r(data.data(), data.size());
    mcnie2::SchemeParams p = mcnie2::read_header(r);
    if (p != pk.params) throw mcnie2::format_error("ciphertext parameters do not match the key");

    const std::size_t payload = mcnie2::ciphertext_payload_bytes(p);
    if (r.remaining() % payload != 0)
        throw mcnie2::format_error("ciphertext payload is not a whole number of blocks");
    const std::size_t blocks = r.remaining() / payload;

    std::vector<std::uint8_t> out;
    for (std::size_t block = 0; block < blocks; ++block) {
        mcnie2::Ciphertext ct = mcnie2::read_ciphertext_payload(r, p);
        mcnie2::Plaintext msg = mcnie2::decrypt(sk, pk, ct, !no_consistency_check);
        std::vector<std::uint8_t> bytes = mcnie2::pack_plaintext_block(p, msg);
        out.insert(out.end(), bytes.begin(), bytes.end());
    }
    if (blocks > 0) {
        // strip the zero fill and the mandatory 0x80
        while (!out.empty() && out.back() == 0x00) out.pop_back();
        if (out.empty() || out.back() != 0x80)
            throw mcnie2::decryption_failure("plaintext padding marker missing");
        out.pop_back();
    }
    write_file(out_path, out);
    std::printf("blocks=%zu out_bytes=%zu\n", blocks, out.size());
    return 0;
}

int cmd_params(bool list, const std::string& set_name) {
    std::vector<const mcnie2::ParameterSet*> sets;
    if (list) {
        for (const auto& p : mcnie2::parameter_sets()) sets.push_back(&p);
    } else {
        sets.push_back(&mcnie2::find_parameter_set(set_name));
    }
    for (const auto* p : sets) {
        mcnie2::SizeReport sz = mcnie2::sizes(*p);
        mcnie2::SecurityEstimate sec = mcnie2::estimate_scheme_security(*p);
        std::printf(
            "name=%s q=%u m=%u n=%u k=%u l=%u r=%u pk_bytes=%llu sk_bytes=%llu ct_bytes=%llu "
            "pk_kb=%s sk_kb=%s ct_kb=%s security_naive_bits=%.3f security_combined_bits=%.3f\n",
            p->name.c_str(), p->q, p->m, p->n, p->k, p->l, p->r,
            static_cast<unsigned long long>(sz.pk.whole_bytes()),
            static_cast<unsigned long long>(sz.sk.whole_bytes()),
            static_cast<unsigned long long>(sz.ct.whole_bytes()), sz.pk.kb().c_str(),
            sz.sk.kb().c_str(), sz.ct.kb().c_str(), sec.naive.bits, sec.combined.bits);
    }
    return 0;
}

int cmd_attack_demo(unsigned trials, const std::optional<std::uint64_t>& seed,
                    const std::string& csv_path) {
    std::uint64_t s = make_stream_seed(seed);
    mcnie2::AttackReport legacy =
        mcnie2::run_legacy_attack_experiment(mcnie2::attack_demo_legacy_params(), trials, s);
    mcnie2::AttackReport modern =
        mcnie2::run_mcnie2_attack_experiment(mcnie2::attack_demo_mcnie2_params(), trials, s + 1);
    std::printf("%s\n", legacy.to_text().c_str());
    std::printf("%s\n", modern.to_text().c_str());
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path, std::ios::trunc);
        if (!csv) throw io_error("cannot create " + csv_path);
        csv << mcnie2::AttackReport::csv_header() << "\n"
            << legacy.to_csv_row() << "\n"
            << modern.to_csv_row() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"McNie2-Gabidulin rank-metric public-key encryption"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    std::string params_name, pub_path, sec_path, in_path, out_path, set_name, csv_path;
    bool list = false, no_check = false;
    unsigned trials = 100;

    CLI::App* keygen = app.add_subcommand("keygen", "generate a key pair");
    keygen->add_option("--params", params_name, "parameter set name")->required();
    keygen->add_option("--seed", seed, "deterministic seed (INSECURE, for reproducibility)");
    keygen->add_option("--pub", pub_path, "public key output path")->required();
    keygen->add_option("--sec", sec_path, "secret key output path")->required();

    CLI::App* encrypt = app.add_subcommand("encrypt", "encrypt a file block-wise");
    encrypt->add_option("--pub", pub_path, "public key path")->required();
    encrypt->add_option("--in", in_path, "plaintext input path")->required();
    encrypt->add_option("--out", out_path, "ciphertext output path")->required();
    encrypt->add_option("--seed", seed, "deterministic seed (INSECURE, for reproducibility)");

    CLI::App* decrypt = app.add_subcommand("decrypt", "decrypt a ciphertext file");
    decrypt->add_option("--sec", sec_path, "secret key path")->required();
    decrypt->add_option("--pub", pub_path, "public key path")->required();
    decrypt->add_option("--in", in_path, "ciphertext input path")->required();
    decrypt->add_option("--out", out_path, "plaintext output path")->required();
    decrypt->add_flag("--no-consistency-check", no_check,
                      "skip the c2 recheck (bare scheme behavior)");

    CLI::App* params = app.add_subcommand("params", "print parameter sets, sizes and estimates");
    params->add_flag("--list", list, "print every registered set");
    params->add_option("--set", set_name, "print one set");

    CLI::App* attack = app.add_subcommand("attack-demo", "message-recovery experiment at toy scale");
    attack->add_option("--trials", trials, "trials per scheme");
    attack->add_option("--seed", seed, "deterministic seed");
    attack->add_option("--csv", csv_path, "also write a CSV report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(keygen)) return cmd_keygen(params_name, seed, pub_path, sec_path);
        if (app.got_subcommand(encrypt)) return cmd_encrypt(pub_path, in_path, out_path, seed);
        if (app.got_subcommand(decrypt))
            return cmd_decrypt(sec_path, pub_path, in_path, out_path, no_check);
        if (app.got_subcommand(params)) {
            if (list != set_name.empty()) {
                std::cerr << "error: pass exactly one of --list or --set NAME\n";
                return kExitUsage;
            }
            return cmd_params(list, set_name);
        }
        if (app.got_subcommand(attack)) return cmd_attack_demo(trials, seed, csv_path);
    } catch (const mcnie2::format_error& ex) {
        std::cerr << "format error: " << ex.what() << "\n";
        return kExitFormat;
    } catch (const mcnie2::decryption_failure& ex) {
        std::cerr << "decryption failed: " << ex.what() << "\n";
        return kExitCrypto;
    } catch (const mcnie2::decoding_failure& ex) {
        std::cerr << "decoding failed: " << ex.what() << "\n";
        return kExitCrypto;
    } catch (const io_error& ex) {
        std::cerr << "io error: " << ex.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
