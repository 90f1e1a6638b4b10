// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pscan/bytes.hpp>

namespace pscan
{
namespace
{
constexpr char hex_digits[] = "0123456789abcdef";

int unhex_digit(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}
}  // namespace

std::string hex(bytes_view bs)
{
    std::string out;
    out.reserve(bs.size() * 2);
    for (const auto b : bs)
    {
        out.push_back(hex_digits[b >> 4]);
        out.push_back(hex_digits[b & 0x0f]);
    }
    return out;
}

std::string hex0x(bytes_view bs)
{
    return "0x" + hex(bs);
}

std::optional<bytes> from_hex(std::string_view s)
{
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
        s.remove_prefix(2);
    if (s.size() % 2 != 0)
        return std::nullopt;
    bytes out;
    out.reserve(s.size() / 2);
    for (size_t i = 0; i < s.size(); i += 2)
    {
        const int hi = unhex_digit(s[i]);
        const int lo = unhex_digit(s[i + 1]);
        if (hi < 0 || lo < 0)
            return std::nullopt;
        out.push_back(static_cast<uint8_t>((hi << 4) | lo));
    }
    return out;
}

std::optional<address> address_from_hex(std::string_view s)
{
    const auto bs = from_hex(s);
    if (!bs || bs->size() != 20)
        return std::nullopt;
    address a;
    std::copy(bs->begin(), bs->end(), a.begin());
    return a;
}

std::string hex0x(const address& a)
{
    return hex0x(view(a));
}

std::string hex0x(const hash256& h)
{
    return hex0x(view(h));
}
}  // namespace pscan
