// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pscan/bytes.hpp>
#include <string_view>

namespace pscan
{
/// Keccak-256 (the original pad-0x01 variant used by Ethereum, not NIST SHA3-256).
hash256 keccak256(bytes_view input) noexcept;

inline hash256 keccak256(std::string_view input) noexcept
{
    return keccak256(bytes_view{reinterpret_cast<const uint8_t*>(input.data()), input.size()});
}
}  // namespace pscan
