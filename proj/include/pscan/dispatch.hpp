// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pscan/bytecode.hpp>
#include <cstdint>
#include <map>
#include <string_view>

namespace pscan
{
/// Callable function selectors recovered from a dispatcher, with the byte
/// offset of the PUSH4 instruction that evidenced each one.
struct selector_set
{
    std::map<uint32_t, uint32_t> evidence;  // selector -> PUSH4 offset (first match)

    bool contains(uint32_t selector) const { return evidence.count(selector) != 0; }
    size_t size() const { return evidence.size(); }
};

/// Scans basic blocks for the dispatcher comparison shape:
/// PUSH4 w [up to 8 interleaved DUP/SWAP/PUSH] EQ, PUSH1..PUSH3 target, JUMPI
/// where the target is a JUMPDEST inside the code. PUSH4 used as a mask
/// (no EQ/JUMPI consumption) does not match.
selector_set extract_selectors(const instruction_stream& stream, const basic_block_graph& blocks);

inline selector_set extract_selectors(const instruction_stream& stream)
{
    return extract_selectors(stream, split_basic_blocks(stream));
}

/// First 4 bytes of Keccak-256 of the canonical prototype string,
/// e.g. "transfer(address,uint256)" -> 0xa9059cbb.
uint32_t function_selector(std::string_view prototype) noexcept;
}  // namespace pscan
