// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pscan/bytes.hpp>
#include <pscan/collision.hpp>
#include <pscan/word.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle
{
using bigint = boost::multiprecision::cpp_int;

/// Independent Keccak-256 built from the permutation definition: 5x5 state
/// matrix, LFSR-derived round constants and triangular-walk rotation offsets.
pscan::hash256 keccak256(pscan::bytes_view data);

/// Reference semantics for the arithmetic/comparison/bitwise opcode families,
/// evaluated with arbitrary-precision integers. args[0] is the top stack item.
bigint evm_op(uint8_t opcode, const std::vector<bigint>& args);

bigint to_big(const pscan::word& w);
pscan::word to_word(const bigint& v);

/// Byte-stream walk looking for a DELEGATECALL opcode outside PUSH operands.
bool contains_delegatecall(pscan::bytes_view code);

/// Flat window scan for the dispatcher comparison shape; independent of the
/// basic-block machinery in the library.
std::set<uint32_t> selectors(pscan::bytes_view code);

/// Byte-set overlap test between two constant-slot accesses.
bool accesses_collide(const pscan::slot_access& p, const pscan::slot_access& l);

struct collision_key
{
    pscan::word slot;
    unsigned p_offset, p_width, l_offset, l_width;
    unsigned overlap_offset, overlap_width;

    bool operator==(const collision_key&) const = default;
    bool operator<(const collision_key& o) const
    {
        if (slot != o.slot)
            return slot < o.slot;
        const auto lhs = std::tie(p_offset, p_width, l_offset, l_width);
        const auto rhs = std::tie(o.p_offset, o.p_width, o.l_offset, o.l_width);
        return lhs < rhs;
    }
};

/// Brute-force storage collision detection over explicit per-byte sets.
std::vector<collision_key> storage_collisions(
    const pscan::storage_layout& proxy, const pscan::storage_layout& logic);
}  // namespace oracle
