// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pscan/word.hpp>

namespace pscan
{
namespace
{
using uint128 = unsigned __int128;

/// Reduces an n-limb little-endian number modulo d (d != 0) by binary long division.
word mod_limbs(const uint64_t* num, int nlimbs, const word& d) noexcept
{
    word r;
    for (int i = nlimbs * 64 - 1; i >= 0; --i)
    {
        // True remainder is carry*2**256 + r; it stays below 2*d, so after the
        // conditional subtraction the wrapped 256-bit value is exact.
        const bool carry = r.bit(255);
        r = r << 1;
        if ((num[i / 64] >> (i % 64)) & 1)
            r.limbs[0] |= 1;
        if (carry || r >= d)
            r = r - d;
    }
    return r;
}
}  // namespace

word word::from_be_bytes(bytes_view bs) noexcept
{
    word w;
    const size_t n = bs.size() < 32 ? bs.size() : 32;
    for (size_t i = 0; i < n; ++i)
    {
        const uint8_t b = bs[bs.size() - 1 - i];  // least significant byte first
        w.limbs[i / 8] |= uint64_t{b} << ((i % 8) * 8);
    }
    return w;
}

std::optional<word> word::from_hex(std::string_view s) noexcept
{
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
        s.remove_prefix(2);
    if (s.empty() || s.size() > 64)
        return std::nullopt;
    std::string padded(64 - s.size(), '0');
    padded.append(s);
    const auto bs = pscan::from_hex(padded);
    if (!bs)
        return std::nullopt;
    return from_be_bytes(*bs);
}

hash256 word::to_be_bytes() const noexcept
{
    hash256 out{};
    for (size_t i = 0; i < 32; ++i)
        out[31 - i] = static_cast<uint8_t>(limbs[i / 8] >> ((i % 8) * 8));
    return out;
}

std::string word::to_hex_full() const
{
    const auto be = to_be_bytes();
    return hex0x(view(be));
}

std::string word::to_hex_compact() const
{
    const auto full = hex(view(to_be_bytes()));
    const auto pos = full.find_first_not_of('0');
    if (pos == std::string::npos)
        return "0x0";
    return "0x" + full.substr(pos);
}

address word::to_address() const noexcept
{
    const auto be = to_be_bytes();
    address a;
    std::copy(be.begin() + 12, be.end(), a.begin());
    return a;
}

word word::from_address(const address& a) noexcept
{
    return from_be_bytes(view(a));
}

word operator+(const word& a, const word& b) noexcept
{
    word r;
    uint128 carry = 0;
    for (int i = 0; i < 4; ++i)
    {
        const uint128 s = uint128{a.limbs[i]} + b.limbs[i] + carry;
        r.limbs[i] = static_cast<uint64_t>(s);
        carry = s >> 64;
    }
    return r;
}

word operator-(const word& a, const word& b) noexcept
{
    word r;
    uint64_t borrow = 0;
    for (int i = 0; i < 4; ++i)
    {
        const uint64_t d = a.limbs[i] - b.limbs[i];
        const uint64_t d2 = d - borrow;
        borrow = (a.limbs[i] < b.limbs[i]) || (d < borrow) ? 1 : 0;
        r.limbs[i] = d2;
    }
    return r;
}

word operator*(const word& a, const word& b) noexcept
{
    word r;
    for (int i = 0; i < 4; ++i)
    {
        uint64_t carry = 0;
        for (int j = 0; i + j < 4; ++j)
        {
            const uint128 cur = uint128{a.limbs[i]} * b.limbs[j] + r.limbs[i + j] + carry;
            r.limbs[i + j] = static_cast<uint64_t>(cur);
            carry = static_cast<uint64_t>(cur >> 64);
        }
    }
    return r;
}

word operator&(const word& a, const word& b) noexcept
{
    word r;
    for (int i = 0; i < 4; ++i)
        r.limbs[i] = a.limbs[i] & b.limbs[i];
    return r;
}

word operator|(const word& a, const word& b) noexcept
{
    word r;
    for (int i = 0; i < 4; ++i)
        r.limbs[i] = a.limbs[i] | b.limbs[i];
    return r;
}

word operator^(const word& a, const word& b) noexcept
{
    word r;
    for (int i = 0; i < 4; ++i)
        r.limbs[i] = a.limbs[i] ^ b.limbs[i];
    return r;
}

word operator~(const word& a) noexcept
{
    word r;
    for (int i = 0; i < 4; ++i)
        r.limbs[i] = ~a.limbs[i];
    return r;
}

word operator<<(const word& a, unsigned shift) noexcept
{
    if (shift >= 256)
        return {};
    word r;
    const unsigned limb_shift = shift / 64;
    const unsigned bit_shift = shift % 64;
    for (int i = 3; i >= static_cast<int>(limb_shift); --i)
    {
        const int src = i - static_cast<int>(limb_shift);
        uint64_t v = a.limbs[src] << bit_shift;
        if (bit_shift != 0 && src > 0)
            v |= a.limbs[src - 1] >> (64 - bit_shift);
        r.limbs[i] = v;
    }
    return r;
}

word operator>>(const word& a, unsigned shift) noexcept
{
    if (shift >= 256)
        return {};
    word r;
    const unsigned limb_shift = shift / 64;
    const unsigned bit_shift = shift % 64;
    for (unsigned i = 0; i + limb_shift < 4; ++i)
    {
        const unsigned src = i + limb_shift;
        uint64_t v = a.limbs[src] >> bit_shift;
        if (bit_shift != 0 && src < 3)
            v |= a.limbs[src + 1] << (64 - bit_shift);
        r.limbs[i] = v;
    }
    return r;
}

std::pair<word, word> udivmod(const word& n, const word& d) noexcept
{
    word q;
    word r;
    for (int i = 255; i >= 0; --i)
    {
        const bool carry = r.bit(255);
        r = r << 1;
        if (n.bit(static_cast<unsigned>(i)))
            r.limbs[0] |= 1;
        if (carry || r >= d)
        {
            r = r - d;
            q.set_bit(static_cast<unsigned>(i));
        }
    }
    return {q, r};
}

word add(const word& x, const word& y) noexcept
{
    return x + y;
}

word mul(const word& x, const word& y) noexcept
{
    return x * y;
}

word sub(const word& x, const word& y) noexcept
{
    return x - y;
}

word udiv(const word& x, const word& y) noexcept
{
    if (y.is_zero())
        return {};
    return udivmod(x, y).first;
}

word sdiv(const word& x, const word& y) noexcept
{
    if (y.is_zero())
        return {};
    const bool sx = x.sign();
    const bool sy = y.sign();
    const word q = udivmod(sx ? negate(x) : x, sy ? negate(y) : y).first;
    return (sx != sy) ? negate(q) : q;
}

word umod(const word& x, const word& y) noexcept
{
    if (y.is_zero())
        return {};
    return udivmod(x, y).second;
}

word smod(const word& x, const word& y) noexcept
{
    if (y.is_zero())
        return {};
    const bool sx = x.sign();
    const word r = udivmod(sx ? negate(x) : x, y.sign() ? negate(y) : y).second;
    return sx ? negate(r) : r;
}

word addmod(const word& x, const word& y, const word& m) noexcept
{
    if (m.is_zero())
        return {};
    // The sum may not fit 256 bits; reduce the 5-limb value.
    uint64_t limbs[5];
    uint128 carry = 0;
    for (int i = 0; i < 4; ++i)
    {
        const uint128 s = uint128{x.limbs[i]} + y.limbs[i] + carry;
        limbs[i] = static_cast<uint64_t>(s);
        carry = s >> 64;
    }
    limbs[4] = static_cast<uint64_t>(carry);
    return mod_limbs(limbs, 5, m);
}

word mulmod(const word& x, const word& y, const word& m) noexcept
{
    if (m.is_zero())
        return {};
    uint64_t prod[8] = {};
    for (int i = 0; i < 4; ++i)
    {
        uint64_t carry = 0;
        for (int j = 0; j < 4; ++j)
        {
            const uint128 cur = uint128{x.limbs[i]} * y.limbs[j] + prod[i + j] + carry;
            prod[i + j] = static_cast<uint64_t>(cur);
            carry = static_cast<uint64_t>(cur >> 64);
        }
        prod[i + 4] = carry;
    }
    return mod_limbs(prod, 8, m);
}

word exp(const word& base, const word& exponent) noexcept
{
    word result{1};
    word b = base;
    for (unsigned i = 0; i < 256; ++i)
    {
        if (exponent.bit(i))
            result = result * b;
        b = b * b;
    }
    return result;
}

word signextend(const word& byte_index, const word& v) noexcept
{
    if (!byte_index.fits_u64() || byte_index.as_u64() >= 31)
        return v;
    const unsigned bit_index = static_cast<unsigned>(byte_index.as_u64() * 8 + 7);
    word mask;
    for (unsigned i = 0; i <= bit_index; ++i)
        mask.set_bit(i);
    return v.bit(bit_index) ? (v | ~mask) : (v & mask);
}

bool lt(const word& x, const word& y) noexcept
{
    return x < y;
}

bool gt(const word& x, const word& y) noexcept
{
    return y < x;
}

bool slt(const word& x, const word& y) noexcept
{
    const bool sx = x.sign();
    const bool sy = y.sign();
    if (sx != sy)
        return sx;
    return x < y;
}

bool sgt(const word& x, const word& y) noexcept
{
    return slt(y, x);
}

word byte(const word& index, const word& v) noexcept
{
    if (!index.fits_u64() || index.as_u64() >= 32)
        return {};
    const unsigned shift = static_cast<unsigned>((31 - index.as_u64()) * 8);
    return (v >> shift) & word{0xff};
}

word shl(const word& shift, const word& v) noexcept
{
    if (!shift.fits_u64() || shift.as_u64() >= 256)
        return {};
    return v << static_cast<unsigned>(shift.as_u64());
}

word shr(const word& shift, const word& v) noexcept
{
    if (!shift.fits_u64() || shift.as_u64() >= 256)
        return {};
    return v >> static_cast<unsigned>(shift.as_u64());
}

word sar(const word& shift, const word& v) noexcept
{
    const bool negative = v.sign();
    if (!shift.fits_u64() || shift.as_u64() >= 256)
        return negative ? ~word{} : word{};
    const unsigned s = static_cast<unsigned>(shift.as_u64());
    word r = v >> s;
    if (negative && s != 0)
        r = r | (~word{} << (256 - s));
    return r;
}
}  // namespace pscan
