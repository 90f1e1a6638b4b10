// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pscan/bytes.hpp>
#include <pscan/chain_state.hpp>
#include <pscan/word.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace pscan
{
enum class halt_reason
{
    stop,
    return_,
    revert,
    invalid,
    step_limit,
    stack_underflow,
    stack_overflow,
    bad_jump,
    oracle_missing,
    memory_limit,
};

const char* to_string(halt_reason r) noexcept;

/// True for stop/return/revert — the outcomes a real transaction can produce.
bool is_normal_halt(halt_reason r) noexcept;

enum class call_kind
{
    call,
    callcode,
    delegatecall,
    staticcall,
    create,
    create2,
};

const char* to_string(call_kind k) noexcept;

struct trace_event
{
    uint32_t pc = 0;
    uint8_t opcode = 0;
    uint8_t depth = 0;
    std::vector<word> stack_top;  // top of the stack after the step, top first
};

struct external_call
{
    call_kind kind = call_kind::call;
    address callee{};
    bytes input;
    bytes output;
    bool success = false;
    uint8_t depth = 0;  // depth of the calling frame (0 = top level)
};

struct sload_event
{
    word slot;
    word value;
    uint8_t depth = 0;
};

struct halt_info
{
    halt_reason reason = halt_reason::stop;
    bytes return_data;
};

struct execution_trace
{
    std::vector<trace_event> events;
    std::vector<external_call> external_calls;
    std::vector<sload_event> sloads;
    halt_info halt;
    uint64_t steps = 0;  // instructions executed across all frames
};

struct emu_limits
{
    uint64_t step_limit = 100'000;     // per frame
    unsigned depth_limit = 8;          // nested call depth
    size_t memory_limit = 32u << 20;   // per-frame memory cap (substitute for gas)
};

struct trace_config
{
    bool record_events = true;
    unsigned stack_snapshot_depth = 4;
};

/// msg.sender / tx.origin sentinel used when no real transaction exists.
address caller_sentinel() noexcept;  // 0xcafe..0001
/// ADDRESS sentinel when analyzing raw bytecode with no account.
address self_sentinel() noexcept;  // 0xcafe..0002
/// Fixed address assigned to every CREATE/CREATE2 result within an emulation.
address create_address() noexcept;  // 0x7f repeated

struct exec_params
{
    bytes_view code;
    bytes_view calldata;
    address self = self_sentinel();
    address caller = caller_sentinel();
    word callvalue;
    block_context context;
    const chain_state_provider* provider = nullptr;  // null -> empty chain
    uint64_t height = 0;                             // pinned block for state queries
    emu_limits limits;
    trace_config trace;
};

/// Runs bytecode against crafted calldata and pinned context. Never throws on
/// bad bytecode: all abnormal outcomes are reported as halt reasons.
execution_trace execute(const exec_params& params);

/// JSON serialization of a trace; events may be elided to bound size.
std::string trace_to_json(const execution_trace& trace, bool include_events);
}  // namespace pscan
