// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pscan/bytecode.hpp>
#include <pscan/keccak.hpp>
#include <algorithm>
#include <cstdio>
#include <optional>

namespace pscan
{
const char* to_string(block_terminator t) noexcept
{
    switch (t)
    {
    case block_terminator::jump:
        return "jump";
    case block_terminator::conditional_jump:
        return "conditional-jump";
    case block_terminator::stop:
        return "stop";
    case block_terminator::return_:
        return "return";
    case block_terminator::revert:
        return "revert";
    case block_terminator::invalid:
        return "invalid";
    case block_terminator::fallthrough:
        return "fallthrough";
    }
    return "?";
}

int basic_block_graph::block_at(uint32_t offset) const noexcept
{
    const auto it = std::lower_bound(blocks.begin(), blocks.end(), offset,
        [](const basic_block& b, uint32_t off) { return b.start < off; });
    if (it == blocks.end() || it->start != offset)
        return -1;
    return static_cast<int>(it - blocks.begin());
}

instruction_stream decode_bytecode(bytes_view code)
{
    instruction_stream stream;
    stream.code = bytes{code};
    stream.instructions.reserve(code.size());

    uint32_t pc = 0;
    while (pc < code.size())
    {
        instruction instr;
        instr.offset = pc;
        instr.opcode = code[pc];
        const unsigned width = push_size(instr.opcode);
        if (width > 0)
        {
            const size_t available = code.size() - pc - 1;
            const size_t present = available < width ? available : width;
            instr.operand.assign(code.data() + pc + 1, present);
            instr.operand_present = static_cast<uint8_t>(present);
            if (present < width)
            {
                instr.operand.append(width - present, uint8_t{0});
                instr.truncated = true;
            }
        }
        else if (instr.opcode == OP_JUMPDEST)
        {
            stream.jumpdests.insert(pc);
        }
        pc += instr.size();
        stream.instructions.push_back(std::move(instr));
    }
    return stream;
}

bytes serialize(const std::vector<instruction>& instructions)
{
    bytes out;
    for (const auto& instr : instructions)
    {
        out.push_back(instr.opcode);
        out.append(instr.operand.data(), instr.operand_present);
    }
    return out;
}

bool contains_delegatecall(const instruction_stream& stream) noexcept
{
    for (const auto& instr : stream.instructions)
    {
        if (instr.opcode == OP_DELEGATECALL)
            return true;
    }
    return false;
}

std::vector<bool> jumpdest_bitmap(bytes_view code)
{
    std::vector<bool> map(code.size(), false);
    for (size_t pc = 0; pc < code.size(); ++pc)
    {
        const uint8_t op = code[pc];
        if (op == OP_JUMPDEST)
            map[pc] = true;
        else
            pc += push_size(op);  // skip push data
    }
    return map;
}

namespace
{
block_terminator terminator_of(uint8_t op) noexcept
{
    switch (op)
    {
    case OP_JUMP:
        return block_terminator::jump;
    case OP_JUMPI:
        return block_terminator::conditional_jump;
    case OP_STOP:
    case OP_SELFDESTRUCT:
        return block_terminator::stop;
    case OP_RETURN:
        return block_terminator::return_;
    case OP_REVERT:
        return block_terminator::revert;
    default:
        return block_terminator::invalid;  // INVALID and unassigned bytes
    }
}

bool ends_block(uint8_t op) noexcept
{
    return info_of(op).terminator || !info_of(op).defined();
}

/// Resolves the jump target of a block whose last instruction is JUMP/JUMPI by
/// replaying pushes and stack shuffles over the block's instructions.
std::optional<uint32_t> resolve_static_target(
    const instruction_stream& stream, uint32_t first, uint32_t last)
{
    std::vector<std::optional<uint64_t>> stack;
    const auto pop = [&]() -> std::optional<uint64_t> {
        if (stack.empty())
            return std::nullopt;
        const auto v = stack.back();
        stack.pop_back();
        return v;
    };

    for (uint32_t i = first; i < last; ++i)
    {
        const auto& instr = stream.instructions[i];
        const uint8_t op = instr.opcode;
        if (is_push(op))
        {
            uint64_t value = 0;
            bool fits = true;
            for (const auto b : instr.operand)
            {
                if (value >> 56)
                    fits = false;
                value = (value << 8) | b;
            }
            stack.push_back(fits ? std::optional<uint64_t>{value} : std::nullopt);
        }
        else if (op == OP_PUSH0)
        {
            stack.push_back(uint64_t{0});
        }
        else if (is_dup(op))
        {
            const unsigned n = op - OP_DUP1 + 1;
            stack.push_back(n <= stack.size() ? stack[stack.size() - n] : std::nullopt);
        }
        else if (is_swap(op))
        {
            const unsigned n = op - OP_SWAP1 + 1;
            if (n < stack.size())
                std::swap(stack.back(), stack[stack.size() - 1 - n]);
            else
                stack.assign(stack.size(), std::nullopt);
        }
        else
        {
            const auto& info = info_of(op);
            for (unsigned p = 0; p < info.stack_pops; ++p)
                pop();
            for (unsigned p = 0; p < info.stack_pushes; ++p)
                stack.push_back(std::nullopt);
        }
    }

    const auto target = pop();
    if (!target || *target > 0xffffffffull)
        return std::nullopt;
    return static_cast<uint32_t>(*target);
}
}  // namespace

basic_block_graph split_basic_blocks(const instruction_stream& stream)
{
    basic_block_graph graph;
    const auto& instrs = stream.instructions;
    if (instrs.empty())
        return graph;

    uint32_t block_first = 0;
    for (uint32_t i = 0; i < instrs.size(); ++i)
    {
        const auto& instr = instrs[i];
        const bool leader = instr.opcode == OP_JUMPDEST && i != block_first;
        if (leader)
        {
            // Close the running block as fallthrough before the JUMPDEST.
            graph.blocks.push_back({instrs[block_first].offset, instrs[i - 1].offset, block_first,
                i - 1, block_terminator::fallthrough});
            block_first = i;
        }
        if (ends_block(instr.opcode))
        {
            graph.blocks.push_back({instrs[block_first].offset, instr.offset, block_first, i,
                terminator_of(instr.opcode)});
            block_first = i + 1;
        }
    }
    if (block_first < instrs.size())
    {
        graph.blocks.push_back({instrs[block_first].offset, instrs.back().offset, block_first,
            static_cast<uint32_t>(instrs.size() - 1), block_terminator::fallthrough});
    }

    for (uint32_t b = 0; b < graph.blocks.size(); ++b)
    {
        const auto& block = graph.blocks[b];
        const auto term = block.terminator;
        if (term == block_terminator::jump || term == block_terminator::conditional_jump)
        {
            const auto target =
                resolve_static_target(stream, block.first_index, block.last_index);
            if (target && stream.is_jumpdest(*target))
            {
                const int to = graph.block_at(*target);
                if (to >= 0)
                    graph.edges.emplace_back(b, static_cast<uint32_t>(to));
            }
        }
        const bool falls =
            term == block_terminator::conditional_jump || term == block_terminator::fallthrough;
        if (falls && b + 1 < graph.blocks.size())
            graph.edges.emplace_back(b, b + 1);
    }
    return graph;
}

std::set<uint32_t> push4_operands(const instruction_stream& stream)
{
    std::set<uint32_t> out;
    for (const auto& instr : stream.instructions)
    {
        if (instr.opcode == OP_PUSH4)
        {
            uint32_t value = 0;
            for (const auto b : instr.operand)
                value = (value << 8) | b;
            out.insert(value);
        }
    }
    return out;
}

hash256 bytecode_hash(bytes_view code) noexcept
{
    return keccak256(code);
}

std::string disassemble(const instruction_stream& stream)
{
    std::string out;
    char buf[32];
    for (const auto& instr : stream.instructions)
    {
        std::snprintf(buf, sizeof(buf), "%04X  %02X  ", instr.offset, instr.opcode);
        out += buf;
        const auto& info = info_of(instr.opcode);
        out += info.defined() ? info.name : "UNKNOWN";
        if (!instr.operand.empty())
        {
            out += " 0x";
            out += hex(instr.operand);
        }
        out += '\n';
    }
    return out;
}
}  // namespace pscan
