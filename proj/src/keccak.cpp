// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pscan/keccak.hpp>
#include <cstring>

namespace pscan
{
namespace
{
constexpr uint64_t round_constants[24] = {
    0x0000000000000001, 0x0000000000008082, 0x800000000000808a, 0x8000000080008000,
    0x000000000000808b, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008a, 0x0000000000000088, 0x0000000080008009, 0x000000008000000a,
    0x000000008000808b, 0x800000000000008b, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800a, 0x800000008000000a,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008};

// Per-step rotation amounts and destination lanes for the combined rho+pi walk
// starting from lane 1; lanes are flattened as x + 5*y.
constexpr int rho_rotations[24] = {
    1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14, 27, 41, 56, 8, 25, 43, 62, 18, 39, 61, 20, 44};
constexpr int pi_lanes[24] = {
    10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4, 15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1};

inline uint64_t rotl(uint64_t v, int n) noexcept
{
    return n == 0 ? v : (v << n) | (v >> (64 - n));
}

void keccak_f1600(uint64_t state[25]) noexcept
{
    for (int round = 0; round < 24; ++round)
    {
        // theta
        uint64_t c[5];
        for (int x = 0; x < 5; ++x)
            c[x] = state[x] ^ state[x + 5] ^ state[x + 10] ^ state[x + 15] ^ state[x + 20];
        for (int x = 0; x < 5; ++x)
        {
            const uint64_t d = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5)
                state[x + y] ^= d;
        }

        // rho and pi combined
        uint64_t last = state[1];
        for (int t = 0; t < 24; ++t)
        {
            const int lane = pi_lanes[t];
            const uint64_t tmp = state[lane];
            state[lane] = rotl(last, rho_rotations[t]);
            last = tmp;
        }

        // chi
        for (int y = 0; y < 25; y += 5)
        {
            uint64_t row[5];
            std::memcpy(row, &state[y], sizeof(row));
            for (int x = 0; x < 5; ++x)
                state[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
        }

        // iota
        state[0] ^= round_constants[round];
    }
}
}  // namespace

hash256 keccak256(bytes_view input) noexcept
{
    constexpr size_t rate = 136;  // 1088-bit rate for 256-bit output
    uint64_t state[25] = {};

    while (input.size() >= rate)
    {
        for (size_t i = 0; i < rate / 8; ++i)
        {
            uint64_t lane;
            std::memcpy(&lane, input.data() + i * 8, 8);
            state[i] ^= lane;  // little-endian host assumed
        }
        keccak_f1600(state);
        input.remove_prefix(rate);
    }

    uint8_t block[rate] = {};
    if (!input.empty())
        std::memcpy(block, input.data(), input.size());
    block[input.size()] ^= 0x01;  // Keccak multi-rate padding (domain 0x01)
    block[rate - 1] ^= 0x80;
    for (size_t i = 0; i < rate / 8; ++i)
    {
        uint64_t lane;
        std::memcpy(&lane, block + i * 8, 8);
        state[i] ^= lane;
    }
    keccak_f1600(state);

    hash256 out;
    std::memcpy(out.data(), state, 32);
    return out;
}
}  // namespace pscan
