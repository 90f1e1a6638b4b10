// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pscan/dispatch.hpp>
#include <pscan/keccak.hpp>

namespace pscan
{
namespace
{
constexpr unsigned max_interleaved = 8;

bool is_interleavable(uint8_t op) noexcept
{
    // Stack shuffles and pushes whose values are consumed before the EQ result
    // matters; tolerated between the PUSH4 and its EQ.
    return is_dup(op) || is_swap(op) || is_push(op) || op == OP_PUSH0;
}

uint32_t operand_u32(const instruction& instr) noexcept
{
    uint32_t v = 0;
    for (const auto b : instr.operand)
        v = (v << 8) | b;
    return v;
}
}  // namespace

selector_set extract_selectors(const instruction_stream& stream, const basic_block_graph& blocks)
{
    selector_set out;
    const auto& instrs = stream.instructions;

    for (const auto& block : blocks.blocks)
    {
        for (uint32_t i = block.first_index; i <= block.last_index; ++i)
        {
            if (instrs[i].opcode != OP_PUSH4)
                continue;

            // Find the EQ within the interleaving window.
            uint32_t j = i + 1;
            unsigned interleaved = 0;
            while (j <= block.last_index && is_interleavable(instrs[j].opcode) &&
                   interleaved < max_interleaved)
            {
                ++j;
                ++interleaved;
            }
            if (j + 2 > block.last_index || instrs[j].opcode != OP_EQ)
                continue;
            const auto& push_target = instrs[j + 1];
            if (push_target.opcode < OP_PUSH1 || push_target.opcode > OP_PUSH3 ||
                instrs[j + 2].opcode != OP_JUMPI)
                continue;
            const uint32_t target = operand_u32(push_target);
            if (!stream.is_jumpdest(target))
                continue;

            const uint32_t selector = operand_u32(instrs[i]);
            out.evidence.emplace(selector, instrs[i].offset);  // keeps the first evidence
        }
    }
    return out;
}

uint32_t function_selector(std::string_view prototype) noexcept
{
    const auto h = keccak256(prototype);
    return (uint32_t{h[0]} << 24) | (uint32_t{h[1]} << 16) | (uint32_t{h[2]} << 8) | h[3];
}
}  // namespace pscan
