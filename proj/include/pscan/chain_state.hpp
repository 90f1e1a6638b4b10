// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pscan/bytes.hpp>
#include <pscan/word.hpp>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace pscan
{
/// Block environment pinned for a whole emulation; env opcodes read from here.
struct block_context
{
    uint64_t number = 0;
    uint64_t timestamp = 0;
    uint64_t gaslimit = 30'000'000;
    word gasprice;
    word prevrandao;
    word basefee;
    uint64_t chainid = 1;
    address coinbase{};
    std::map<uint64_t, hash256> blockhashes;  // recent block number -> hash; missing -> 0
};

struct latest_block
{
    uint64_t height = 0;
    block_context context;
};

/// Raised when a provider cannot answer a query (after retries, for remote ones).
struct provider_error : std::runtime_error
{
    provider_error(std::string method_, std::string detail, bool retriable_)
      : std::runtime_error(method_ + ": " + detail),
        method(std::move(method_)),
        retriable(retriable_)
    {}

    std::string method;
    bool retriable = false;
};

/// Read-only historical chain state. Implementations must be safe for
/// concurrent reads and should memoize identical queries.
class chain_state_provider
{
public:
    virtual ~chain_state_provider() = default;

    /// Runtime code of the account at the given height; empty if none.
    virtual bytes get_code(const address& account, uint64_t height) const = 0;

    /// Storage slot value at the given height; zero if never written.
    virtual word get_storage_at(const address& account, const word& slot, uint64_t height)
        const = 0;

    virtual latest_block get_latest_block() const = 0;
};

/// Provider with no accounts at all: empty code, zero storage, default block.
class null_provider final : public chain_state_provider
{
public:
    bytes get_code(const address&, uint64_t) const override { return {}; }
    word get_storage_at(const address&, const word&, uint64_t) const override { return {}; }
    latest_block get_latest_block() const override { return {}; }
};
}  // namespace pscan
