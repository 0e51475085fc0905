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
#include <cstring>
#include <vector>

#include "mcnie2/errors.hpp"

namespace mcnie2 {

/// Little-endian byte writer used by all serializers.
struct ByteWriter {
    std::vector<std::uint8_t> out;

    void u8(std::uint8_t v) { out.push_back(v); }
    void u16(std::uint16_t v) {
        out.push_back(static_cast<std::uint8_t>(v));
        out.push_back(static_cast<std::uint8_t>(v >> 8));
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void bytes(const std::uint8_t* p, std::size_t n) { out.insert(out.end(), p, p + n); }
};

/// Bounds-checked little-endian byte reader; underflow raises format_error.
struct ByteReader {
    const std::uint8_t* p;
    std::size_t size;
    std::size_t off = 0;

    ByteReader(const std::uint8_t* data, std::size_t n) : p(data), size(n) {}

    std::size_t remaining() const { return size - off; }

    const std::uint8_t* take(std::size_t n) {
        if (remaining() < n) throw format_error("truncated input");
        const std::uint8_t* r = p + off;
        off += n;
        return r;
    }

    std::uint8_t u8() { return *take(1); }
    std::uint16_t u16() {
        const std::uint8_t* b = take(2);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }
    std::uint32_t u32() {
        const std::uint8_t* b = take(4);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    }
};

/// Packs a stream of sub-byte fields LSB-first ("low coefficient in the low
/// bit of the first byte").
struct BitWriter {
    std::vector<std::uint8_t> out;
    unsigned used = 0;  // bits used in the last byte

    void put(std::uint64_t v, unsigned nbits) {
        for (unsigned i = 0; i < nbits; ++i) {
            if (used == 0) out.push_back(0);
            if ((v >> i) & 1) out.back() |= static_cast<std::uint8_t>(1u << used);
            used = (used + 1) & 7;
        }
    }
};

/// Mirror of BitWriter; reading past the end yields zero bits when
/// `allow_dry` is set (used by the plaintext block codec, whose last element
/// is zero-padded) and raises format_error otherwise.
struct BitReader {
    const std::uint8_t* p;
    std::size_t nbytes;
    std::size_t bitpos = 0;
    bool allow_dry = false;

    BitReader(const std::uint8_t* data, std::size_t n) : p(data), nbytes(n) {}

    std::uint64_t get(unsigned nbits) {
        std::uint64_t v = 0;
        for (unsigned i = 0; i < nbits; ++i) {
            if (bitpos >= 8 * nbytes) {
                if (allow_dry) continue;  // missing high bits read as zero
                throw format_error("bit stream underflow");
            }
            if ((p[bitpos / 8] >> (bitpos % 8)) & 1) v |= std::uint64_t{1} << i;
            ++bitpos;
        }
        return v;
    }
};

}  // namespace mcnie2
