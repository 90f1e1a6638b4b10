// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pscan/bytecode.hpp>
#include <pscan/emulator.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pscan
{
/// Crafted call input: a 4-byte selector outside the contract's PUSH4 set,
/// followed by 32 zero bytes of arguments.
struct probe_calldata
{
    uint32_t selector = 0;
    uint64_t seed = 0;
    bytes data;  // 36 bytes

    bytes selector_bytes() const;
};

enum class pointer_kind
{
    hardcoded,
    storage_slot,
    eip1967,
    eip1822,
    unresolved,
};

const char* to_string(pointer_kind k) noexcept;

/// Where the proxy keeps its logic contract address.
struct implementation_pointer
{
    pointer_kind kind = pointer_kind::unresolved;
    std::optional<word> slot;  // for the three slot-resident kinds
    address target{};          // the forwarded-to address observed in the trace
};

enum class confidence_level
{
    full,
    degraded,  // the emulation halted abnormally
};

struct proxy_report
{
    std::optional<address> account;  // set when a chain account was analyzed
    bool is_proxy = false;
    bool minimal_proxy = false;  // EIP-1167 template
    std::optional<implementation_pointer> pointer;
    bytes forwarded_input;
    bool exact_forward = false;  // forwarded input equals the probe bytes
    confidence_level confidence = confidence_level::full;
    std::optional<halt_reason> failure;  // abnormal halt before any forward
    std::optional<probe_calldata> probe;
    std::vector<address> other_forwards;  // later forwards to different targets
    bool emulated = false;               // false when Step 1 short-circuited
};

/// The EIP-1967 implementation slot, keccak("eip1967.proxy.implementation")-1.
const word& eip1967_implementation_slot() noexcept;
/// The EIP-1822 (UUPS) slot, keccak("PROXIABLE").
const word& eip1822_slot() noexcept;

/// True when code is exactly the EIP-1167 minimal proxy runtime; the embedded
/// target address is written to *target when given.
bool is_eip1167_minimal(bytes_view code, address* target = nullptr) noexcept;

/// Deterministically picks a selector uniformly outside push4_operands(stream).
/// Throws std::runtime_error in the (unreachable in practice) case where the
/// stream's PUSH4 operands cover the whole 4-byte space.
probe_calldata craft_probe(const instruction_stream& stream, uint64_t seed);

struct detect_options
{
    std::optional<address> account;  // storage identity; sentinel when absent
    block_context context;
    const chain_state_provider* provider = nullptr;
    uint64_t height = 0;
    emu_limits limits;
    uint64_t seed = 0;
};

/// Two-step detection: skip emulation when no DELEGATECALL opcode exists, else
/// emulate with a crafted probe and look for a top-level DELEGATECALL whose
/// input starts with the probe selector.
proxy_report detect_proxy(bytes_view code, const detect_options& options);

/// Runs detection `attempts` times with seeds options.seed + 0..attempts-1 and
/// majority-votes is_proxy (ties count as proxy); returns the first report that
/// agrees with the vote. Guards against a single unlucky probe selector.
proxy_report detect_proxy_voted(
    bytes_view code, const detect_options& options, unsigned attempts);

/// Classifies how the forwarded-to address entered the code: embedded bytes
/// (Hardcoded) or the slot of the last SLOAD whose value's low 160 bits match.
implementation_pointer classify_pointer(
    const execution_trace& trace, bytes_view code, const address& callee);

std::string proxy_report_to_json(const proxy_report& report);
proxy_report proxy_report_from_json(const std::string& json_text);
}  // namespace pscan
