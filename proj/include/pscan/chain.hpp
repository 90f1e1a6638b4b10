// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pscan/chain_state.hpp>
#include <pscan/proxy.hpp>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace pscan
{
/// The distinct values a storage slot held over a block range, recovered by
/// divide-and-conquer over historical state queries.
struct slot_history
{
    /// Distinct non-zero values, ordered by the first block height at which
    /// each was observed (ascending).
    std::vector<word> values;

    /// Number of distinct (height) state queries issued.
    uint64_t query_count = 0;

    uint64_t lower = 0;
    uint64_t upper = 0;
};

/// Recovers every value the slot held at some queried height in
/// [lower, upper] by recursive range splitting: if both endpoints agree the
/// slot is assumed constant over the range; otherwise both halves are
/// searched. Zero (the EVM default) is excluded from the result. Queries are
/// memoized per height, so query_count counts distinct heights.
slot_history find_slot_history(const chain_state_provider& provider, const address& account,
    const word& slot, uint64_t lower, uint64_t upper);

/// Historical logic contracts behind a proxy.
struct logic_history_result
{
    /// Implementation addresses, ordered by first appearance (ascending height).
    std::vector<address> addresses;

    /// Distinct state queries issued (0 for hardcoded pointers).
    uint64_t query_count = 0;
};

/// Recovers the proxy's past implementation addresses from its pointer:
/// a hardcoded pointer yields exactly the current target with no queries; a
/// storage-based pointer yields the slot's history (low 160 bits of each
/// value, deduplicated preserving order); an unresolved pointer yields
/// nothing.
logic_history_result logic_history(const chain_state_provider& provider, const address& account,
    const implementation_pointer& pointer, uint64_t lower, uint64_t upper);

/// Chain state served from a JSON fixture file, for tests and offline runs.
///
/// Schema:
///   {
///     "accounts": {
///       "0x<address>": {
///         "code": "0x...",
///         "deployed": <height>,            // optional; code empty below it
///         "storage": {
///           "0x<slot>": [ {"from": h0, "to": h1, "value": "0x..."|null} ]
///         }
///       }
///     },
///     "latest": { "height": h, "timestamp": t, ... }
///   }
///
/// Slots default to zero outside any listed range. A null value marks a
/// range the provider cannot answer for (the query throws).
class fixture_provider final : public chain_state_provider
{
public:
    explicit fixture_provider(const std::string& json_text);

    static fixture_provider from_file(const std::string& path);

    bytes get_code(const address& account, uint64_t height) const override;
    word get_storage_at(const address& account, const word& slot, uint64_t height) const override;
    latest_block get_latest_block() const override;

    /// Height the account's code first exists at (0 if never gated).
    uint64_t deploy_height(const address& account) const;

private:
    struct value_range
    {
        uint64_t from = 0;
        uint64_t to = 0;
        bool unanswerable = false;
        word value;
    };
    struct account_state
    {
        bytes code;
        uint64_t deployed = 0;
        std::map<word, std::vector<value_range>> storage;
    };
    std::map<address, account_state> accounts_;
    latest_block latest_;
};

struct rpc_options
{
    /// Attempts per request for retriable failures (transport errors and
    /// server errors -32000..-32099).
    int retries = 3;

    /// Base delay between attempts; doubles each retry.
    int backoff_ms = 100;
};

/// Chain state over Ethereum JSON-RPC (eth_getCode, eth_getStorageAt,
/// eth_getBlockByNumber). Responses are memoized, so repeated queries for the
/// same (account, slot, height) hit the network once. Thread-safe.
class rpc_provider final : public chain_state_provider
{
public:
    explicit rpc_provider(std::string url, rpc_options options = {});

    bytes get_code(const address& account, uint64_t height) const override;
    word get_storage_at(const address& account, const word& slot, uint64_t height) const override;
    latest_block get_latest_block() const override;

private:
    std::string call(const std::string& method, const std::string& params_json) const;

    std::string origin_;  // scheme://host[:port]
    std::string path_;    // request path ("/" if none)
    rpc_options options_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, std::string> memo_;  // request body -> result JSON
};
}  // namespace pscan
