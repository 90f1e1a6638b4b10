// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "asm_util.hpp"
#include <pscan/bytes.hpp>
#include <pscan/chain_state.hpp>
#include <pscan/word.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace test
{
/// Height-independent in-memory chain state for emulator and proxy tests.
class map_provider final : public pscan::chain_state_provider
{
public:
    std::map<pscan::address, pscan::bytes> code;
    std::map<pscan::address, std::map<pscan::word, pscan::word>> storage;
    uint64_t latest_height = 0;

    pscan::bytes get_code(const pscan::address& account, uint64_t) const override
    {
        const auto it = code.find(account);
        return it == code.end() ? pscan::bytes{} : it->second;
    }

    pscan::word get_storage_at(
        const pscan::address& account, const pscan::word& slot, uint64_t) const override
    {
        const auto it = storage.find(account);
        if (it == storage.end())
            return {};
        const auto slot_it = it->second.find(slot);
        return slot_it == it->second.end() ? pscan::word{} : slot_it->second;
    }

    pscan::latest_block get_latest_block() const override
    {
        pscan::latest_block b;
        b.height = latest_height;
        b.context.number = latest_height;
        return b;
    }
};

inline pscan::address addr_of(uint8_t fill, uint8_t tag = 0)
{
    pscan::address a;
    a.fill(fill);
    a[19] = tag ? tag : fill;
    return a;
}

/// Hand-assembled dispatcher + delegatecall fallback. The dispatcher compares
/// the calldata selector against 0xdf4a3106 and falls through to a fallback
/// that copies calldata to memory, loads the implementation address from
/// storage slot 5, and delegates the full input to it.
///
/// Layout (verified instruction-by-instruction in test_bytecode):
///   0000  6080    PUSH1 0x80          0019  5f    PUSH0
///   0002  6040    PUSH1 0x40          001a  35    CALLDATALOAD
///   0004  52      MSTORE              001b  60e0  PUSH1 0xe0
///   0005  34      CALLVALUE           001d  1c    SHR
///   0006  80      DUP1                001e  80    DUP1
///   0007  15      ISZERO              001f  63..  PUSH4 0xdf4a3106
///   0008  61000f  PUSH2 0x000f        0024  14    EQ
///   000b  57      JUMPI               0025  6100ce PUSH2 0x00ce
///   000c  5f80fd  PUSH0 DUP1 REVERT   0028  57    JUMPI
///   000f  5b      JUMPDEST            0029  61002d PUSH2 0x002d
///   0010  50      POP                 002c  56    JUMP
///   0011  6004    PUSH1 0x04
///   0013  36      CALLDATASIZE        002d  fallback (copy calldata to
///   0014  10      LT                        0x80.., SLOAD slot 5, jump 0x7c)
///   0015  61002d  PUSH2 0x002d        007c  delegatecall trampoline
///   0018  57      JUMPI               00ce  JUMPDEST STOP (matched body)
inline pscan::bytes sample_proxy()
{
    asm_builder a;
    // Dispatcher.
    a.hex("6080604052348015"
          "61000f"
          "575f80fd5b50"
          "600436"
          "10"
          "61002d"
          "57"
          "5f35"
          "60e01c"
          "80"
          "63df4a3106"
          "14"
          "6100ce"
          "57"
          "61002d"
          "56");
    // Fallback at 0x2d: MSTORE(0x40, 0x80); CALLDATACOPY(0x80, 0, cds);
    // SLOAD(5); memEnd = 0x80 + cds; JUMP 0x7c.
    a.hex("5b"
          "6080604052"
          "365f608037"
          "600554"
          "36608001"
          "61007c"
          "56");
    a.fill_to(0x7c, 0xfe);
    // Trampoline at 0x7c; entered with stack [.., addr, memEnd].
    // DELEGATECALL(gas, addr, 0x80, memEnd - 0x80, 0x80, 0), copy the return
    // data to 0x80 and RETURN/REVERT it depending on the status word.
    a.hex("5b"
          "5f604051"
          "808303"
          "8185"
          "5a"
          "f4"
          "3d5f6080"
          "3e"
          "610095"
          "57"
          "3d6080fd"
          "5b"
          "3d6080f3");
    a.fill_to(0xce, 0xfe);
    // Matched function body.
    a.hex("5b00");
    return a.build();
}

/// Exact EIP-1167 minimal proxy runtime for the given target.
inline pscan::bytes eip1167(const pscan::address& target)
{
    asm_builder a;
    a.hex("363d3d373d3d3d363d73");
    a.raw({target.data(), target.size()});
    a.hex("5af43d82803e903d91602b57fd5bf3");
    return a.build();
}

/// Forwards full calldata via DELEGATECALL to the address stored in `slot`.
/// The slot constant is pushed with PUSH32 (or PUSH1 when `wide` is false).
inline pscan::bytes slot_proxy(const pscan::word& slot, bool wide = true)
{
    asm_builder a;
    a.hex("365f5f37");  // CALLDATACOPY(0, 0, cds)
    a.hex("5f5f365f");  // outLen outOff inLen inOff
    if (wide)
    {
        const auto be = slot.to_be_bytes();
        a.push({be.data(), be.size()});
    }
    else
    {
        a.push(slot.as_u64(), 1);
    }
    a.hex("54");  // SLOAD -> implementation
    a.hex("5af4");
    a.hex("00");
    return a.build();
}

/// Delegatecalls a hardcoded library with a constant 4-byte selector built in
/// memory; the input is NOT the incoming calldata, so this is not a proxy.
inline pscan::bytes library_caller(const pscan::address& lib)
{
    asm_builder a;
    a.hex("63aabbccdd");  // PUSH4 constant selector
    a.hex("5f52");        // MSTORE at 0 (right-aligned at bytes 28..31)
    a.hex("5f5f6004601c");
    a.byte(0x73).raw({lib.data(), lib.size()});
    a.hex("5af400");
    return a.build();
}

/// Generic selector dispatcher: for each selector a DUP1/PUSH4/EQ/PUSH2/JUMPI
/// comparison, then STOP; each target is JUMPDEST STOP.
inline pscan::bytes dispatcher(const std::vector<uint32_t>& sels)
{
    const size_t body_base = 5 + 11 * sels.size() + 1;
    asm_builder a;
    a.hex("5f3560e01c");
    for (size_t i = 0; i < sels.size(); ++i)
    {
        a.byte(0x80);
        a.byte(0x63).be32(sels[i]);
        a.byte(0x14);
        a.byte(0x61).be16(static_cast<uint16_t>(body_base + 2 * i));
        a.byte(0x57);
    }
    a.byte(0x00);
    for (size_t i = 0; i < sels.size(); ++i)
        a.hex("5b00");
    return a.build();
}

// Storage-shape snippets for layout extraction.

/// SLOAD(0) masked to the low 20 bytes: read (offset 0, width 20).
inline pscan::bytes storage_wide_read()
{
    return asm_builder{}.hex("5f5473ffffffffffffffffffffffffffffffffffffffff1600").build();
}

/// SLOAD(0) masked to the low byte: read (offset 0, width 1).
inline pscan::bytes storage_low_read()
{
    return asm_builder{}.hex("5f5460ff1600").build();
}

/// SLOAD(0) shifted right 8 bits then masked to one byte: read (1, 1).
inline pscan::bytes storage_byte1_read()
{
    return asm_builder{}.hex("5f5460081c60ff1600").build();
}

/// Read-modify-write of the low byte of slot 0:
/// SSTORE(0, (SLOAD(0) & ~0xff) | 1) -> read-modify-write (0, 1).
inline pscan::bytes storage_rmw_write()
{
    return asm_builder{}.hex("5f5460ff19166001175f5500").build();
}

/// Owner gate: JUMPI on EQ(CALLER, SLOAD(0)); slot 0 becomes sensitive.
inline pscan::bytes owner_gate()
{
    return asm_builder{}.hex("5f543314610008575b00").build();
}
}  // namespace test
