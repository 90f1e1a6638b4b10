// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pscan/chain.hpp>
#include <pscan/collision.hpp>
#include <pscan/proxy.hpp>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pscan
{
struct scan_config
{
    const chain_state_provider* provider = nullptr;

    /// Pinned analysis block; the provider's latest when absent.
    std::optional<uint64_t> height;

    /// Lower bound for implementation-history searches.
    uint64_t from_block = 0;

    emu_limits limits;
    uint64_t seed = 0;
    unsigned probe_attempts = 1;
    unsigned workers = 1;

    bool json = true;    // one JSON object per record; text lines otherwise
    bool timing = true;  // per-record timing and summary throughput

    /// Persistent per-bytecode result cache (JSON file); empty disables.
    std::string cache_path;
};

struct scan_summary
{
    uint64_t records = 0;
    uint64_t proxies = 0;
    uint64_t failures = 0;
    /// Emulator runs actually performed; shared bytecode is analyzed once.
    uint64_t emulations = 0;
    uint64_t elapsed_us = 0;
};

/// Analyzes each input line (a 20-byte address or raw runtime bytecode, hex)
/// and writes one record per line to `out` in input order, followed by a
/// summary line. Identical bytecode is analyzed once per run and results are
/// shared. Worker threads only change wall time, never the output bytes.
/// Per-record errors become failure records; the scan itself keeps going.
scan_summary run_scan(
    const std::vector<std::string>& inputs, const scan_config& config, std::ostream& out);
}  // namespace pscan
