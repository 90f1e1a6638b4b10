// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pscan
{
using bytes = std::basic_string<uint8_t>;
using bytes_view = std::basic_string_view<uint8_t>;

/// A 20-byte account address.
using address = std::array<uint8_t, 20>;

/// A 32-byte hash value.
using hash256 = std::array<uint8_t, 32>;

/// Encodes bytes as a lowercase hex string without prefix.
std::string hex(bytes_view bs);

/// Encodes bytes as a lowercase hex string with 0x prefix.
std::string hex0x(bytes_view bs);

/// Decodes a hex string (optional 0x/0X prefix, case-insensitive).
/// Returns nullopt for odd length or non-hex characters.
std::optional<bytes> from_hex(std::string_view s);

/// Parses a 20-byte address from 0x-prefixed or bare 40-digit hex.
std::optional<address> address_from_hex(std::string_view s);

std::string hex0x(const address& a);
std::string hex0x(const hash256& h);

inline bytes_view view(const address& a) noexcept
{
    return {a.data(), a.size()};
}
inline bytes_view view(const hash256& h) noexcept
{
    return {h.data(), h.size()};
}
}  // namespace pscan
