// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pscan/collision.hpp>
#include <pscan/keccak.hpp>
#include <json.hpp>
#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>

namespace pscan
{
namespace
{
/// Abstract value flowing through the stack during layout extraction.
struct sym_val
{
    enum class kind_t
    {
        unknown,
        konst,
        hash_derived,  // output of a Keccak over non-constant input
    };
    kind_t kind = kind_t::unknown;
    word value;  // konst only

    // SLOAD result tracking, for byte-range refinement and RMW pairing.
    int load_access = -1;      // index into the accesses list
    word load_slot;
    uint32_t load_shift = 0;   // whole bytes shifted toward the LSB so far
    bool load_pure = true;     // no mask applied yet

    // (old AND NOT run-mask) — a read-modify-write in progress.
    int rmw_access = -1;
    word rmw_slot;
    uint32_t rmw_offset = 0;
    uint32_t rmw_width = 0;

    // Dataflow marks for the owner-gate pattern.
    bool caller_taint = false;
    std::optional<word> sload_taint;  // constant slot this value was loaded from
    std::optional<word> owner_check;  // slot whose value was EQ-compared with CALLER
};

sym_val make_konst(const word& w)
{
    sym_val v;
    v.kind = sym_val::kind_t::konst;
    v.value = w;
    return v;
}

/// If w is a contiguous run of 0xff bytes (zero elsewhere), returns the run as
/// (first byte from the LSB, byte count).
std::optional<std::pair<uint32_t, uint32_t>> byte_run(const word& w)
{
    const auto be = w.to_be_bytes();
    int first = -1;
    int last = -1;
    for (int i = 0; i < 32; ++i)  // i counts from the least significant byte
    {
        const uint8_t b = be[31 - i];
        if (b == 0xff)
        {
            if (first < 0)
                first = i;
            last = i;
        }
        else if (b != 0x00)
        {
            return std::nullopt;
        }
    }
    if (first < 0)
        return std::nullopt;
    for (int i = first; i <= last; ++i)
    {
        if (be[31 - i] != 0xff)
            return std::nullopt;
    }
    return std::make_pair(static_cast<uint32_t>(first), static_cast<uint32_t>(last - first + 1));
}

class storage_interp
{
public:
    storage_interp(const instruction_stream& stream, const basic_block_graph& graph)
      : stream_(stream), graph_(graph)
    {}

    storage_analysis run()
    {
        const auto block_count = graph_.blocks.size();
        std::vector<int> pred_count(block_count, 0);
        std::vector<int> unique_pred(block_count, -1);
        for (const auto& [from, to] : graph_.edges)
        {
            unique_pred[to] = ++pred_count[to] == 1 ? static_cast<int>(from) : -1;
        }

        std::vector<std::optional<state>> exits(block_count);
        for (size_t i = 0; i < block_count; ++i)
        {
            state st;
            const auto pred = unique_pred[i];
            if (pred >= 0 && pred != static_cast<int>(i) && exits[pred])
                st = *exits[pred];
            const auto& block = graph_.blocks[i];
            for (uint32_t idx = block.first_index; idx <= block.last_index; ++idx)
                step(st, stream_.instructions[idx]);
            exits[i] = std::move(st);
        }

        storage_analysis result;
        result.layout.accesses = std::move(accesses_);
        result.layout.unresolved_count = unresolved_;
        result.sensitive_slots.assign(sensitive_.begin(), sensitive_.end());
        return result;
    }

private:
    struct state
    {
        std::vector<sym_val> stack;
        std::map<uint64_t, uint8_t> mem;  // known bytes only
    };

    static constexpr uint64_t mem_bound = 1u << 22;  // modeled-memory cap
    static constexpr uint64_t hash_input_bound = 512;

    static void ensure(state& s, size_t n)
    {
        // Blocks entered with an unknown stack synthesize operands on demand.
        while (s.stack.size() < n)
            s.stack.insert(s.stack.begin(), sym_val{});
    }
    static sym_val pop(state& s)
    {
        ensure(s, 1);
        sym_val v = std::move(s.stack.back());
        s.stack.pop_back();
        return v;
    }
    static void push(state& s, sym_val v) { s.stack.push_back(std::move(v)); }

    static std::optional<uint64_t> small_konst(const sym_val& v, uint64_t bound)
    {
        if (v.kind == sym_val::kind_t::konst && v.value.fits_u64() && v.value.as_u64() <= bound)
            return v.value.as_u64();
        return std::nullopt;
    }

    static void erase_mem(state& s, uint64_t off, uint64_t len)
    {
        if (len == 0)
            return;
        s.mem.erase(s.mem.lower_bound(off), s.mem.lower_bound(off + len));
    }

    void refine_read(int index, uint32_t offset, uint32_t width)
    {
        auto& access = accesses_[index];
        // Only the first refinement of a still-whole-word read applies.
        if (access.mode == access_mode::read && access.offset == 0 && access.width == 32)
        {
            access.offset = offset;
            access.width = width;
        }
    }

    void record_load(state& s, const sym_val& slot)
    {
        sym_val r;
        if (slot.kind == sym_val::kind_t::konst)
        {
            slot_access access;
            access.kind = slot_kind::constant;
            access.slot = slot.value;
            access.mode = access_mode::read;
            accesses_.push_back(access);
            r.load_access = static_cast<int>(accesses_.size()) - 1;
            r.load_slot = slot.value;
            r.sload_taint = slot.value;
        }
        else if (slot.kind == sym_val::kind_t::hash_derived)
        {
            slot_access access;
            access.kind = slot_kind::hash_derived;
            access.mode = access_mode::read;
            accesses_.push_back(access);
        }
        else
        {
            ++unresolved_;
        }
        push(s, std::move(r));
    }

    void record_store(const sym_val& slot, const sym_val& value)
    {
        if (slot.kind == sym_val::kind_t::konst)
        {
            slot_access access;
            access.kind = slot_kind::constant;
            access.slot = slot.value;
            if (value.rmw_access >= 0 && value.rmw_slot == slot.value)
            {
                access.offset = value.rmw_offset;
                access.width = value.rmw_width;
                access.mode = access_mode::read_modify_write;
                // The paired load reads the slot only to preserve the other
                // bytes; classify it as the same partial-word RMW.
                auto& load = accesses_[value.rmw_access];
                load.offset = value.rmw_offset;
                load.width = value.rmw_width;
                load.mode = access_mode::read_modify_write;
            }
            else
            {
                access.mode = access_mode::write;
            }
            accesses_.push_back(access);
        }
        else if (slot.kind == sym_val::kind_t::hash_derived)
        {
            slot_access access;
            access.kind = slot_kind::hash_derived;
            access.mode = access_mode::write;
            accesses_.push_back(access);
        }
        else
        {
            ++unresolved_;
        }
    }

    void step(state& s, const instruction& ins)
    {
        const uint8_t op = ins.opcode;
        using kind_t = sym_val::kind_t;

        if (op == OP_PUSH0 || is_push(op))
        {
            push(s, make_konst(word::from_be_bytes(ins.operand)));
            return;
        }
        if (op >= OP_DUP1 && op <= OP_DUP16)
        {
            const size_t n = op - OP_DUP1 + 1;
            ensure(s, n);
            push(s, s.stack[s.stack.size() - n]);
            return;
        }
        if (op >= OP_SWAP1 && op <= OP_SWAP16)
        {
            const size_t n = op - OP_SWAP1 + 1;
            ensure(s, n + 1);
            std::swap(s.stack.back(), s.stack[s.stack.size() - 1 - n]);
            return;
        }

        switch (op)
        {
        case OP_POP:
            pop(s);
            return;

        case OP_CALLER:
        {
            sym_val v;
            v.caller_taint = true;
            push(s, std::move(v));
            return;
        }

        case OP_SLOAD:
        {
            const auto slot = pop(s);
            record_load(s, slot);
            return;
        }

        case OP_SSTORE:
        {
            const auto slot = pop(s);
            const auto value = pop(s);
            record_store(slot, value);
            return;
        }

        case OP_ADD:
        {
            const auto x = pop(s);
            const auto y = pop(s);
            sym_val r;
            if (x.kind == kind_t::konst && y.kind == kind_t::konst)
                r = make_konst(add(x.value, y.value));
            else if (x.kind == kind_t::hash_derived || y.kind == kind_t::hash_derived)
                r.kind = kind_t::hash_derived;  // hash + field offset stays hash-derived
            push(s, std::move(r));
            return;
        }

        case OP_AND:
        {
            const auto x = pop(s);
            const auto y = pop(s);
            sym_val r;
            if (x.kind == kind_t::konst && y.kind == kind_t::konst)
                r = make_konst(x.value & y.value);
            else if (x.kind == kind_t::hash_derived || y.kind == kind_t::hash_derived)
                r.kind = kind_t::hash_derived;

            const sym_val* mask = x.kind == kind_t::konst ? &x :
                                  y.kind == kind_t::konst ? &y :
                                                            nullptr;
            const sym_val* load = x.load_access >= 0 ? &x : y.load_access >= 0 ? &y : nullptr;
            if (mask != nullptr && load != nullptr)
            {
                const auto run = byte_run(mask->value);
                if (run && run->first == 0 && load->load_shift + run->second <= 32)
                {
                    // (slot >> 8n) & (2^(8k)-1): a k-byte field at offset n.
                    refine_read(load->load_access, load->load_shift, run->second);
                    r.load_access = load->load_access;
                    r.load_slot = load->load_slot;
                    r.load_shift = load->load_shift;
                    r.load_pure = false;
                }
                else if (const auto hole = byte_run(~mask->value);
                         hole && load->load_pure && load->load_shift == 0)
                {
                    // old & ~(run mask): every byte outside the hole survives,
                    // so this is the read half of a partial-word store.
                    r.rmw_access = load->load_access;
                    r.rmw_slot = load->load_slot;
                    r.rmw_offset = hole->first;
                    r.rmw_width = hole->second;
                }
            }
            r.caller_taint = x.caller_taint || y.caller_taint;
            r.sload_taint = x.sload_taint ? x.sload_taint : y.sload_taint;
            r.owner_check = x.owner_check ? x.owner_check : y.owner_check;
            push(s, std::move(r));
            return;
        }

        case OP_OR:
        {
            const auto x = pop(s);
            const auto y = pop(s);
            sym_val r;
            if (x.kind == kind_t::konst && y.kind == kind_t::konst)
                r = make_konst(x.value | y.value);
            const sym_val* rmw = x.rmw_access >= 0 ? &x : y.rmw_access >= 0 ? &y : nullptr;
            if (rmw != nullptr)
            {
                // (old & ~mask) | (new << 8n) still carries the pending RMW.
                r.rmw_access = rmw->rmw_access;
                r.rmw_slot = rmw->rmw_slot;
                r.rmw_offset = rmw->rmw_offset;
                r.rmw_width = rmw->rmw_width;
            }
            r.caller_taint = x.caller_taint || y.caller_taint;
            r.sload_taint = x.sload_taint ? x.sload_taint : y.sload_taint;
            r.owner_check = x.owner_check ? x.owner_check : y.owner_check;
            push(s, std::move(r));
            return;
        }

        case OP_SHR:
        {
            const auto x = pop(s);  // shift
            const auto y = pop(s);  // value
            sym_val r;
            if (x.kind == kind_t::konst && y.kind == kind_t::konst)
            {
                r = make_konst(shr(x.value, y.value));
            }
            else if (y.load_access >= 0 && y.load_pure)
            {
                if (const auto bits = small_konst(x, 248); bits && *bits % 8 == 0 &&
                    y.load_shift + *bits / 8 <= 31)
                {
                    r.load_access = y.load_access;
                    r.load_slot = y.load_slot;
                    r.load_shift = y.load_shift + static_cast<uint32_t>(*bits / 8);
                    r.load_pure = true;
                }
            }
            r.caller_taint = x.caller_taint || y.caller_taint;
            r.sload_taint = x.sload_taint ? x.sload_taint : y.sload_taint;
            r.owner_check = x.owner_check ? x.owner_check : y.owner_check;
            push(s, std::move(r));
            return;
        }

        case OP_ISZERO:
        {
            const auto x = pop(s);
            sym_val r;
            if (x.kind == kind_t::konst)
                r = make_konst(x.value.is_zero() ? word{1} : word{0});
            r.caller_taint = x.caller_taint;
            r.sload_taint = x.sload_taint;
            r.owner_check = x.owner_check;
            push(s, std::move(r));
            return;
        }

        case OP_EQ:
        {
            const auto x = pop(s);
            const auto y = pop(s);
            sym_val r;
            if (x.kind == kind_t::konst && y.kind == kind_t::konst)
                r = make_konst(x.value == y.value ? word{1} : word{0});
            if (x.caller_taint && y.sload_taint)
                r.owner_check = y.sload_taint;
            else if (y.caller_taint && x.sload_taint)
                r.owner_check = x.sload_taint;
            push(s, std::move(r));
            return;
        }

        case OP_NOT:
        {
            const auto x = pop(s);
            push(s, x.kind == kind_t::konst ? make_konst(~x.value) : sym_val{});
            return;
        }

        case OP_SUB:
        case OP_MUL:
        case OP_DIV:
        case OP_SDIV:
        case OP_MOD:
        case OP_SMOD:
        case OP_EXP:
        case OP_SIGNEXTEND:
        case OP_XOR:
        case OP_BYTE:
        case OP_SHL:
        case OP_SAR:
        {
            const auto x = pop(s);
            const auto y = pop(s);
            sym_val r;
            if (x.kind == kind_t::konst && y.kind == kind_t::konst)
            {
                const auto& a = x.value;
                const auto& b = y.value;
                word v;
                switch (op)
                {
                case OP_SUB: v = sub(a, b); break;
                case OP_MUL: v = mul(a, b); break;
                case OP_DIV: v = udiv(a, b); break;
                case OP_SDIV: v = sdiv(a, b); break;
                case OP_MOD: v = umod(a, b); break;
                case OP_SMOD: v = smod(a, b); break;
                case OP_EXP: v = exp(a, b); break;
                case OP_SIGNEXTEND: v = signextend(a, b); break;
                case OP_XOR: v = a ^ b; break;
                case OP_BYTE: v = byte(a, b); break;
                case OP_SHL: v = shl(a, b); break;
                default: v = sar(a, b); break;
                }
                r = make_konst(v);
            }
            push(s, std::move(r));
            return;
        }

        case OP_LT:
        case OP_GT:
        case OP_SLT:
        case OP_SGT:
        {
            const auto x = pop(s);
            const auto y = pop(s);
            sym_val r;
            if (x.kind == kind_t::konst && y.kind == kind_t::konst)
            {
                bool v = false;
                switch (op)
                {
                case OP_LT: v = lt(x.value, y.value); break;
                case OP_GT: v = gt(x.value, y.value); break;
                case OP_SLT: v = slt(x.value, y.value); break;
                default: v = sgt(x.value, y.value); break;
                }
                r = make_konst(word{v ? 1u : 0u});
            }
            push(s, std::move(r));
            return;
        }

        case OP_ADDMOD:
        case OP_MULMOD:
        {
            const auto x = pop(s);
            const auto y = pop(s);
            const auto m = pop(s);
            sym_val r;
            if (x.kind == kind_t::konst && y.kind == kind_t::konst && m.kind == kind_t::konst)
                r = make_konst(op == OP_ADDMOD ? addmod(x.value, y.value, m.value) :
                                                 mulmod(x.value, y.value, m.value));
            push(s, std::move(r));
            return;
        }

        case OP_MLOAD:
        {
            const auto off = pop(s);
            sym_val r;
            if (const auto o = small_konst(off, mem_bound))
            {
                uint8_t buf[32];
                bool known = true;
                for (unsigned i = 0; i < 32; ++i)
                {
                    const auto it = s.mem.find(*o + i);
                    if (it == s.mem.end())
                    {
                        known = false;
                        break;
                    }
                    buf[i] = it->second;
                }
                if (known)
                    r = make_konst(word::from_be_bytes({buf, 32}));
            }
            push(s, std::move(r));
            return;
        }

        case OP_MSTORE:
        {
            const auto off = pop(s);
            const auto val = pop(s);
            if (const auto o = small_konst(off, mem_bound))
            {
                if (val.kind == kind_t::konst)
                {
                    const auto be = val.value.to_be_bytes();
                    for (unsigned i = 0; i < 32; ++i)
                        s.mem[*o + i] = be[i];
                }
                else
                {
                    erase_mem(s, *o, 32);
                }
            }
            else
            {
                s.mem.clear();
            }
            return;
        }

        case OP_MSTORE8:
        {
            const auto off = pop(s);
            const auto val = pop(s);
            if (const auto o = small_konst(off, mem_bound))
            {
                if (val.kind == kind_t::konst)
                    s.mem[*o] = static_cast<uint8_t>(val.value.limbs[0]);
                else
                    erase_mem(s, *o, 1);
            }
            else
            {
                s.mem.clear();
            }
            return;
        }

        case OP_KECCAK256:
        {
            const auto off = pop(s);
            const auto size = pop(s);
            sym_val r;
            r.kind = kind_t::hash_derived;
            const auto o = small_konst(off, mem_bound);
            const auto n = small_konst(size, hash_input_bound);
            if (o && n)
            {
                bytes buf;
                buf.reserve(*n);
                bool known = true;
                for (uint64_t i = 0; i < *n; ++i)
                {
                    const auto it = s.mem.find(*o + i);
                    if (it == s.mem.end())
                    {
                        known = false;
                        break;
                    }
                    buf.push_back(it->second);
                }
                // A hash of fully constant bytes is itself a constant (the
                // way array/mapping base slots are formed).
                if (known)
                    r = make_konst(word::from_hash(keccak256(buf)));
            }
            push(s, std::move(r));
            return;
        }

        case OP_CALLDATACOPY:
        case OP_CODECOPY:
        case OP_RETURNDATACOPY:
        case OP_MCOPY:
        {
            const auto dest = pop(s);
            pop(s);  // source offset
            const auto len = pop(s);
            const auto d = small_konst(dest, mem_bound);
            const auto n = small_konst(len, mem_bound);
            if (d && n)
                erase_mem(s, *d, *n);
            else
                s.mem.clear();
            return;
        }

        case OP_EXTCODECOPY:
        {
            pop(s);  // account
            const auto dest = pop(s);
            pop(s);  // source offset
            const auto len = pop(s);
            const auto d = small_konst(dest, mem_bound);
            const auto n = small_konst(len, mem_bound);
            if (d && n)
                erase_mem(s, *d, *n);
            else
                s.mem.clear();
            return;
        }

        case OP_CALL:
        case OP_CALLCODE:
        case OP_DELEGATECALL:
        case OP_STATICCALL:
        {
            const unsigned pops = (op == OP_CALL || op == OP_CALLCODE) ? 7 : 6;
            std::vector<sym_val> args;
            args.reserve(pops);
            for (unsigned i = 0; i < pops; ++i)
                args.push_back(pop(s));
            const auto& out_off = args[pops - 2];
            const auto& out_len = args[pops - 1];
            const auto d = small_konst(out_off, mem_bound);
            const auto n = small_konst(out_len, mem_bound);
            if (d && n)
                erase_mem(s, *d, *n);
            else
                s.mem.clear();
            push(s, sym_val{});
            return;
        }

        case OP_JUMPI:
        {
            pop(s);  // target
            const auto cond = pop(s);
            if (cond.owner_check)
                sensitive_.insert(*cond.owner_check);
            return;
        }

        default:
        {
            const auto& info = info_of(op);
            if (!info.defined())
                return;  // INVALID-class byte: execution would halt here
            for (unsigned i = 0; i < info.stack_pops; ++i)
                pop(s);
            for (unsigned i = 0; i < info.stack_pushes; ++i)
                push(s, sym_val{});
            return;
        }
        }
    }

    const instruction_stream& stream_;
    const basic_block_graph& graph_;
    std::vector<slot_access> accesses_;
    uint32_t unresolved_ = 0;
    std::set<word> sensitive_;
};
}  // namespace

const char* to_string(access_mode m) noexcept
{
    switch (m)
    {
    case access_mode::read:
        return "read";
    case access_mode::write:
        return "write";
    case access_mode::read_modify_write:
        return "read-modify-write";
    }
    return "?";
}

const char* to_string(slot_kind k) noexcept
{
    switch (k)
    {
    case slot_kind::constant:
        return "constant";
    case slot_kind::hash_derived:
        return "hash-derived";
    }
    return "?";
}

storage_analysis analyze_storage(const instruction_stream& stream, const basic_block_graph& graph)
{
    return storage_interp{stream, graph}.run();
}

storage_layout extract_storage_layout(
    const instruction_stream& stream, const basic_block_graph& graph)
{
    return analyze_storage(stream, graph).layout;
}

std::vector<word> flag_sensitive_slots(
    const instruction_stream& stream, const basic_block_graph& graph)
{
    return analyze_storage(stream, graph).sensitive_slots;
}

std::vector<uint32_t> detect_function_collisions(
    const selector_set& proxy, const selector_set& logic)
{
    std::vector<uint32_t> out;
    for (const auto& [selector, offset] : proxy.evidence)
    {
        if (logic.contains(selector))
            out.push_back(selector);
    }
    return out;  // map iteration gives ascending selectors
}

std::vector<storage_collision> detect_storage_collisions(
    const storage_layout& proxy, const storage_layout& logic)
{
    std::vector<storage_collision> out;
    std::set<std::tuple<word, uint32_t, uint32_t, uint32_t, uint32_t>> seen;
    for (const auto& p : proxy.accesses)
    {
        if (p.kind != slot_kind::constant)
            continue;
        for (const auto& l : logic.accesses)
        {
            if (l.kind != slot_kind::constant || !(l.slot == p.slot))
                continue;
            const auto lo = std::max(p.offset, l.offset);
            const auto hi = std::min(p.offset + p.width, l.offset + l.width);
            if (lo >= hi)
                continue;  // disjoint byte ranges
            if (p.offset == l.offset && p.width == l.width)
                continue;  // same field shape: compatible use
            if (!seen.insert({p.slot, p.offset, p.width, l.offset, l.width}).second)
                continue;
            storage_collision c;
            c.slot = p.slot;
            c.proxy_access = p;
            c.logic_access = l;
            c.overlap_offset = lo;
            c.overlap_width = hi - lo;
            out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end(), [](const storage_collision& a, const storage_collision& b) {
        if (a.slot != b.slot)
            return a.slot < b.slot;
        if (a.proxy_access.offset != b.proxy_access.offset)
            return a.proxy_access.offset < b.proxy_access.offset;
        if (a.proxy_access.width != b.proxy_access.width)
            return a.proxy_access.width < b.proxy_access.width;
        if (a.logic_access.offset != b.logic_access.offset)
            return a.logic_access.offset < b.logic_access.offset;
        return a.logic_access.width < b.logic_access.width;
    });
    return out;
}

collision_report analyze_pair(bytes_view proxy_code, bytes_view logic_code)
{
    collision_report report;
    report.proxy_code_hash = bytecode_hash(proxy_code);
    report.logic_code_hash = bytecode_hash(logic_code);

    const auto proxy_stream = decode_bytecode(proxy_code);
    const auto proxy_graph = split_basic_blocks(proxy_stream);
    const auto logic_stream = decode_bytecode(logic_code);
    const auto logic_graph = split_basic_blocks(logic_stream);

    report.function_collisions = detect_function_collisions(
        extract_selectors(proxy_stream, proxy_graph), extract_selectors(logic_stream, logic_graph));

    const auto proxy_storage = analyze_storage(proxy_stream, proxy_graph);
    const auto logic_storage = analyze_storage(logic_stream, logic_graph);
    report.storage_collisions =
        detect_storage_collisions(proxy_storage.layout, logic_storage.layout);
    report.sensitive_slots = proxy_storage.sensitive_slots;
    return report;
}

std::string collision_report_to_json(const collision_report& report)
{
    nlohmann::json j;
    j["pair"] = {
        {"proxy", hex0x(report.proxy_code_hash)}, {"logic", hex0x(report.logic_code_hash)}};
    j["dedup_key"] = hex0x(report.proxy_code_hash) + ":" + hex0x(report.logic_code_hash);

    auto& colliding = j["function"]["colliding"] = nlohmann::json::array();
    for (const auto selector : report.function_collisions)
    {
        char text[16];
        std::snprintf(text, sizeof(text), "0x%08x", selector);
        colliding.push_back(text);
    }

    auto& collisions = j["storage"]["collisions"] = nlohmann::json::array();
    const auto access_json = [](const slot_access& a) {
        return nlohmann::json{
            {"offset", a.offset}, {"width", a.width}, {"mode", to_string(a.mode)}};
    };
    for (const auto& c : report.storage_collisions)
    {
        collisions.push_back({{"slot", c.slot.to_hex_full()}, {"proxy", access_json(c.proxy_access)},
            {"logic", access_json(c.logic_access)},
            {"overlap", {{"offset", c.overlap_offset}, {"width", c.overlap_width}}}});
    }
    auto& sensitive = j["storage"]["sensitive_slots"] = nlohmann::json::array();
    for (const auto& slot : report.sensitive_slots)
        sensitive.push_back(slot.to_hex_full());
    return j.dump();
}
}  // namespace pscan
