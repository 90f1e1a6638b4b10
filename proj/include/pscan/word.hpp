// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pscan/bytes.hpp>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pscan
{
/// Unsigned 256-bit integer with EVM wrapping semantics (values mod 2**256).
/// Limbs are little-endian: limbs[0] is least significant.
struct word
{
    std::array<uint64_t, 4> limbs{};

    constexpr word() noexcept = default;
    constexpr word(uint64_t v) noexcept : limbs{v, 0, 0, 0} {}  // NOLINT(google-explicit-constructor)

    static word from_be_bytes(bytes_view bs) noexcept;
    static word from_hash(const hash256& h) noexcept { return from_be_bytes(view(h)); }
    static std::optional<word> from_hex(std::string_view s) noexcept;

    hash256 to_be_bytes() const noexcept;
    /// Full 0x-prefixed 64-digit representation (left-padded).
    std::string to_hex_full() const;
    /// Minimal 0x-prefixed representation ("0x0" for zero).
    std::string to_hex_compact() const;

    bool is_zero() const noexcept { return (limbs[0] | limbs[1] | limbs[2] | limbs[3]) == 0; }
    bool bit(unsigned i) const noexcept { return (limbs[i / 64] >> (i % 64)) & 1; }
    void set_bit(unsigned i) noexcept { limbs[i / 64] |= uint64_t{1} << (i % 64); }
    bool sign() const noexcept { return limbs[3] >> 63; }

    bool fits_u64() const noexcept { return (limbs[1] | limbs[2] | limbs[3]) == 0; }
    uint64_t as_u64() const noexcept { return limbs[0]; }

    /// Low 160 bits as a big-endian address.
    address to_address() const noexcept;
    static word from_address(const address& a) noexcept;

    friend bool operator==(const word& a, const word& b) noexcept { return a.limbs == b.limbs; }
    friend bool operator!=(const word& a, const word& b) noexcept { return !(a == b); }
    friend bool operator<(const word& a, const word& b) noexcept
    {
        for (int i = 3; i >= 0; --i)
        {
            if (a.limbs[i] != b.limbs[i])
                return a.limbs[i] < b.limbs[i];
        }
        return false;
    }
    friend bool operator>(const word& a, const word& b) noexcept { return b < a; }
    friend bool operator<=(const word& a, const word& b) noexcept { return !(b < a); }
    friend bool operator>=(const word& a, const word& b) noexcept { return !(a < b); }
};

word operator+(const word& a, const word& b) noexcept;
word operator-(const word& a, const word& b) noexcept;
word operator*(const word& a, const word& b) noexcept;
word operator&(const word& a, const word& b) noexcept;
word operator|(const word& a, const word& b) noexcept;
word operator^(const word& a, const word& b) noexcept;
word operator~(const word& a) noexcept;
word operator<<(const word& a, unsigned shift) noexcept;
word operator>>(const word& a, unsigned shift) noexcept;

inline word negate(const word& a) noexcept
{
    return word{} - a;
}

/// Unsigned division and remainder; divisor must be non-zero.
std::pair<word, word> udivmod(const word& n, const word& d) noexcept;

// EVM operation semantics: x is the top stack operand, y the next one.
word add(const word& x, const word& y) noexcept;
word mul(const word& x, const word& y) noexcept;
word sub(const word& x, const word& y) noexcept;
word udiv(const word& x, const word& y) noexcept;  // y == 0 -> 0
word sdiv(const word& x, const word& y) noexcept;
word umod(const word& x, const word& y) noexcept;  // y == 0 -> 0
word smod(const word& x, const word& y) noexcept;
word addmod(const word& x, const word& y, const word& m) noexcept;
word mulmod(const word& x, const word& y, const word& m) noexcept;
word exp(const word& base, const word& exponent) noexcept;
word signextend(const word& byte_index, const word& v) noexcept;
bool lt(const word& x, const word& y) noexcept;
bool gt(const word& x, const word& y) noexcept;
bool slt(const word& x, const word& y) noexcept;
bool sgt(const word& x, const word& y) noexcept;
word byte(const word& index, const word& v) noexcept;
word shl(const word& shift, const word& v) noexcept;
word shr(const word& shift, const word& v) noexcept;
/// Arithmetic shift right; shift counts >= 256 saturate to all sign bits.
word sar(const word& shift, const word& v) noexcept;

struct word_hash
{
    size_t operator()(const word& w) const noexcept
    {
        // FNV-1a over the limbs; quality is sufficient for overlay maps.
        uint64_t h = 0xcbf29ce484222325;
        for (const auto limb : w.limbs)
        {
            h ^= limb;
            h *= 0x100000001b3;
        }
        return static_cast<size_t>(h);
    }
};
}  // namespace pscan
