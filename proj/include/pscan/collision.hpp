// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pscan/dispatch.hpp>
#include <pscan/word.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace pscan
{
enum class access_mode
{
    read,
    write,
    read_modify_write,
};

const char* to_string(access_mode m) noexcept;

enum class slot_kind
{
    constant,      // slot number is a compile-time constant
    hash_derived,  // slot derives from a Keccak over non-constant input
};

const char* to_string(slot_kind k) noexcept;

/// One static storage access: which slot, and which bytes within its word.
struct slot_access
{
    slot_kind kind = slot_kind::constant;
    word slot;            // meaningful for slot_kind::constant only
    uint32_t offset = 0;  // first accessed byte, counted from the least significant
    uint32_t width = 32;  // accessed bytes
    access_mode mode = access_mode::read;
};

/// Storage shape recovered by abstract interpretation of all basic blocks.
/// Every SLOAD/SSTORE contributes exactly one access or one unresolved count.
struct storage_layout
{
    std::vector<slot_access> accesses;
    uint32_t unresolved_count = 0;  // accesses whose slot could not be determined
};

struct storage_analysis
{
    storage_layout layout;
    std::vector<word> sensitive_slots;  // constant slots gating JUMPIs via CALLER checks
};

/// Runs the abstract interpretation once, producing both the layout and the
/// caller-checked (access-control) slot set.
storage_analysis analyze_storage(
    const instruction_stream& stream, const basic_block_graph& graph);

storage_layout extract_storage_layout(
    const instruction_stream& stream, const basic_block_graph& graph);

/// Constant slots whose loaded value is compared (EQ) against CALLER with the
/// result feeding a JUMPI — the typical owner/admin gate.
std::vector<word> flag_sensitive_slots(
    const instruction_stream& stream, const basic_block_graph& graph);

/// Selectors claimed by both dispatchers, ascending. A call hitting one of
/// these executes the proxy's function and never reaches the logic contract.
std::vector<uint32_t> detect_function_collisions(
    const selector_set& proxy, const selector_set& logic);

/// Two contracts use the same constant slot word with overlapping byte ranges
/// of different shape, so one clobbers or misreads the other's field.
struct storage_collision
{
    word slot;
    slot_access proxy_access;
    slot_access logic_access;
    uint32_t overlap_offset = 0;
    uint32_t overlap_width = 0;
};

/// Reports every (slot, proxy shape, logic shape) combination — deduplicated —
/// where constant-slot accesses overlap but differ in offset or width.
/// Hash-derived slots never collide (distinct preimages are assumed to give
/// distinct slots). Results are sorted by slot, then shapes.
std::vector<storage_collision> detect_storage_collisions(
    const storage_layout& proxy, const storage_layout& logic);

/// Full proxy/logic pair analysis.
struct collision_report
{
    hash256 proxy_code_hash{};
    hash256 logic_code_hash{};
    std::vector<uint32_t> function_collisions;
    std::vector<storage_collision> storage_collisions;
    std::vector<word> sensitive_slots;  // proxy-side caller-gated slots
};

collision_report analyze_pair(bytes_view proxy_code, bytes_view logic_code);

std::string collision_report_to_json(const collision_report& report);
}  // namespace pscan
