// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pscan/bytes.hpp>
#include <pscan/opcodes.hpp>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace pscan
{
/// One decoded instruction. Decoding is total: unassigned opcode bytes decode as
/// INVALID-class instructions, and a PUSH whose operand runs past the end of code
/// keeps its full width with zero padding and the truncated flag set.
struct instruction
{
    uint32_t offset = 0;
    uint8_t opcode = 0;
    bytes operand;             // zero-padded to the PUSH width when truncated
    uint8_t operand_present = 0;  // operand bytes physically present in code
    bool truncated = false;

    unsigned size() const noexcept { return 1u + operand_present; }
};

struct instruction_stream
{
    bytes code;
    std::vector<instruction> instructions;
    std::set<uint32_t> jumpdests;  // offsets of JUMPDEST instructions (not push data)

    bool is_jumpdest(uint32_t offset) const { return jumpdests.count(offset) != 0; }
};

enum class block_terminator
{
    jump,
    conditional_jump,
    stop,
    return_,
    revert,
    invalid,
    fallthrough,
};

const char* to_string(block_terminator t) noexcept;

struct basic_block
{
    uint32_t start = 0;       // offset of the first instruction
    uint32_t end = 0;         // offset of the last instruction (inclusive)
    uint32_t first_index = 0;  // index range into instruction_stream::instructions
    uint32_t last_index = 0;
    block_terminator terminator = block_terminator::fallthrough;
};

struct basic_block_graph
{
    std::vector<basic_block> blocks;
    /// Edges as (from block index, to block index): statically-resolved jump
    /// targets (constant pushed within the same block) plus fallthrough edges.
    std::vector<std::pair<uint32_t, uint32_t>> edges;

    /// Index of the block starting at the given offset, or -1.
    int block_at(uint32_t offset) const noexcept;
};

/// Decodes runtime bytecode into an instruction stream. Total: never fails.
instruction_stream decode_bytecode(bytes_view code);

/// Re-serializes decoded instructions back to the original byte string.
bytes serialize(const std::vector<instruction>& instructions);

/// True if the code contains a reachable-or-not DELEGATECALL opcode
/// (push operands are opaque and never counted).
bool contains_delegatecall(const instruction_stream& stream) noexcept;

/// Fast jumpdest scan over raw code honoring PUSH widths; equivalent to
/// decode_bytecode(code).jumpdests.
std::vector<bool> jumpdest_bitmap(bytes_view code);

/// Partitions the stream into basic blocks and resolves static jump edges.
basic_block_graph split_basic_blocks(const instruction_stream& stream);

/// Distinct 4-byte PUSH4 operands in instruction order of first appearance.
std::set<uint32_t> push4_operands(const instruction_stream& stream);

/// Keccak-256 of the runtime code; the dedup key for all cached analyses.
hash256 bytecode_hash(bytes_view code) noexcept;

/// Text disassembly, one instruction per line:
/// OFFSET(4+ hex digits)  BYTE(2 hex digits)  MNEMONIC [0xOPERAND]
std::string disassemble(const instruction_stream& stream);
}  // namespace pscan
