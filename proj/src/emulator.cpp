// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pscan/bytecode.hpp>
#include <pscan/emulator.hpp>
#include <pscan/keccak.hpp>
#include <json.hpp>
#include <cstring>
#include <map>
#include <unordered_map>

namespace pscan
{
const char* to_string(halt_reason r) noexcept
{
    switch (r)
    {
    case halt_reason::stop:
        return "stop";
    case halt_reason::return_:
        return "return";
    case halt_reason::revert:
        return "revert";
    case halt_reason::invalid:
        return "invalid";
    case halt_reason::step_limit:
        return "step-limit";
    case halt_reason::stack_underflow:
        return "stack-underflow";
    case halt_reason::stack_overflow:
        return "stack-overflow";
    case halt_reason::bad_jump:
        return "bad-jump";
    case halt_reason::oracle_missing:
        return "oracle-missing";
    case halt_reason::memory_limit:
        return "memory-limit";
    }
    return "?";
}

bool is_normal_halt(halt_reason r) noexcept
{
    return r == halt_reason::stop || r == halt_reason::return_ || r == halt_reason::revert;
}

const char* to_string(call_kind k) noexcept
{
    switch (k)
    {
    case call_kind::call:
        return "call";
    case call_kind::callcode:
        return "callcode";
    case call_kind::delegatecall:
        return "delegatecall";
    case call_kind::staticcall:
        return "staticcall";
    case call_kind::create:
        return "create";
    case call_kind::create2:
        return "create2";
    }
    return "?";
}

address caller_sentinel() noexcept
{
    address a{};
    a[0] = 0xca;
    a[1] = 0xfe;
    a[19] = 0x01;
    return a;
}

address self_sentinel() noexcept
{
    address a{};
    a[0] = 0xca;
    a[1] = 0xfe;
    a[19] = 0x02;
    return a;
}

address create_address() noexcept
{
    address a;
    a.fill(0x7f);
    return a;
}

namespace
{
constexpr size_t stack_limit = 1024;

struct frame_result
{
    halt_reason reason = halt_reason::stop;
    bytes output;

    bool success() const noexcept
    {
        return reason == halt_reason::stop || reason == halt_reason::return_;
    }
};

class emulation
{
public:
    explicit emulation(const exec_params& params) : p_(params) {}

    execution_trace run()
    {
        const auto top =
            run_frame(p_.code, p_.calldata, p_.self, p_.caller, p_.callvalue, 0);
        trace_.halt = {top.reason, top.output};
        return std::move(trace_);
    }

private:
    const exec_params& p_;
    execution_trace trace_;
    std::map<address, std::unordered_map<word, word, word_hash>> overlays_;
    std::map<address, bytes> created_code_;

    bytes code_of(const address& account)
    {
        const auto it = created_code_.find(account);
        if (it != created_code_.end())
            return it->second;
        if (p_.provider == nullptr)
            return {};
        return p_.provider->get_code(account, p_.height);
    }

    word storage_read(const address& account, const word& slot)
    {
        const auto oit = overlays_.find(account);
        if (oit != overlays_.end())
        {
            const auto sit = oit->second.find(slot);
            if (sit != oit->second.end())
                return sit->second;
        }
        if (p_.provider == nullptr)
            return {};
        return p_.provider->get_storage_at(account, slot, p_.height);
    }

    frame_result run_frame(bytes_view code, bytes_view input, const address& self,
        const address& caller, const word& value, unsigned depth)
    {
        const auto jumpdests = jumpdest_bitmap(code);
        std::vector<word> stack;
        stack.reserve(64);
        bytes memory;
        bytes return_data;  // of the last completed nested call
        std::unordered_map<word, word, word_hash> transient;

        uint64_t steps = 0;
        size_t pc = 0;
        frame_result result;

        const auto record_event = [&](uint32_t at, uint8_t op) {
            ++trace_.steps;
            if (!p_.trace.record_events)
                return;
            trace_event ev;
            ev.pc = at;
            ev.opcode = op;
            ev.depth = static_cast<uint8_t>(depth);
            const size_t n = std::min<size_t>(p_.trace.stack_snapshot_depth, stack.size());
            ev.stack_top.reserve(n);
            for (size_t i = 0; i < n; ++i)
                ev.stack_top.push_back(stack[stack.size() - 1 - i]);
            trace_.events.push_back(std::move(ev));
        };

        // Expands memory to cover [offset, offset+size); false on cap overflow.
        const auto grow_memory = [&](const word& offset, const word& size) -> bool {
            if (size.is_zero())
                return true;
            if (!offset.fits_u64() || !size.fits_u64())
                return false;
            const uint64_t off = offset.as_u64();
            const uint64_t len = size.as_u64();
            if (off > p_.limits.memory_limit || len > p_.limits.memory_limit ||
                off + len > p_.limits.memory_limit)
                return false;
            const uint64_t end = (off + len + 31) / 32 * 32;
            if (end > memory.size())
                memory.resize(end, 0);
            return true;
        };

        const auto read_memory = [&](uint64_t off, uint64_t len) -> bytes_view {
            if (len == 0)
                return {};
            return bytes_view{memory}.substr(off, len);
        };

        while (true)
        {
            if (pc >= code.size())
            {
                result.reason = halt_reason::stop;  // running off the end is STOP
                break;
            }
            if (steps >= p_.limits.step_limit)
            {
                result.reason = halt_reason::step_limit;
                break;
            }
            ++steps;

            const uint32_t at = static_cast<uint32_t>(pc);
            const uint8_t op = code[pc];
            const auto& info = info_of(op);

            if (!info.defined())
            {
                record_event(at, op);
                result.reason = halt_reason::invalid;
                break;
            }
            if (stack.size() < info.stack_pops)
            {
                record_event(at, op);
                result.reason = halt_reason::stack_underflow;
                break;
            }
            if (stack.size() - info.stack_pops + info.stack_pushes > stack_limit)
            {
                record_event(at, op);
                result.reason = halt_reason::stack_overflow;
                break;
            }

            const auto pop = [&]() {
                const word w = stack.back();
                stack.pop_back();
                return w;
            };
            const auto push = [&](const word& w) { stack.push_back(w); };

            bool halted = false;
            size_t next_pc = pc + 1;

            try
            {
            switch (op)
            {
            case OP_STOP:
                result.reason = halt_reason::stop;
                halted = true;
                break;

            case OP_ADD:
            {
                const auto x = pop();
                push(add(x, pop()));
                break;
            }
            case OP_MUL:
            {
                const auto x = pop();
                push(mul(x, pop()));
                break;
            }
            case OP_SUB:
            {
                const auto x = pop();
                push(sub(x, pop()));
                break;
            }
            case OP_DIV:
            {
                const auto x = pop();
                push(udiv(x, pop()));
                break;
            }
            case OP_SDIV:
            {
                const auto x = pop();
                push(sdiv(x, pop()));
                break;
            }
            case OP_MOD:
            {
                const auto x = pop();
                push(umod(x, pop()));
                break;
            }
            case OP_SMOD:
            {
                const auto x = pop();
                push(smod(x, pop()));
                break;
            }
            case OP_ADDMOD:
            {
                const auto x = pop();
                const auto y = pop();
                push(addmod(x, y, pop()));
                break;
            }
            case OP_MULMOD:
            {
                const auto x = pop();
                const auto y = pop();
                push(mulmod(x, y, pop()));
                break;
            }
            case OP_EXP:
            {
                const auto x = pop();
                push(pscan::exp(x, pop()));
                break;
            }
            case OP_SIGNEXTEND:
            {
                const auto x = pop();
                push(signextend(x, pop()));
                break;
            }

            case OP_LT:
            {
                const auto x = pop();
                push(word{lt(x, pop()) ? 1u : 0u});
                break;
            }
            case OP_GT:
            {
                const auto x = pop();
                push(word{gt(x, pop()) ? 1u : 0u});
                break;
            }
            case OP_SLT:
            {
                const auto x = pop();
                push(word{slt(x, pop()) ? 1u : 0u});
                break;
            }
            case OP_SGT:
            {
                const auto x = pop();
                push(word{sgt(x, pop()) ? 1u : 0u});
                break;
            }
            case OP_EQ:
            {
                const auto x = pop();
                push(word{x == pop() ? 1u : 0u});
                break;
            }
            case OP_ISZERO:
                push(word{pop().is_zero() ? 1u : 0u});
                break;
            case OP_AND:
            {
                const auto x = pop();
                push(x & pop());
                break;
            }
            case OP_OR:
            {
                const auto x = pop();
                push(x | pop());
                break;
            }
            case OP_XOR:
            {
                const auto x = pop();
                push(x ^ pop());
                break;
            }
            case OP_NOT:
                push(~pop());
                break;
            case OP_BYTE:
            {
                const auto x = pop();
                push(byte(x, pop()));
                break;
            }
            case OP_SHL:
            {
                const auto x = pop();
                push(shl(x, pop()));
                break;
            }
            case OP_SHR:
            {
                const auto x = pop();
                push(shr(x, pop()));
                break;
            }
            case OP_SAR:
            {
                const auto x = pop();
                push(sar(x, pop()));
                break;
            }

            case OP_KECCAK256:
            {
                const auto off = pop();
                const auto len = pop();
                if (!grow_memory(off, len))
                {
                    result.reason = halt_reason::memory_limit;
                    halted = true;
                    break;
                }
                const auto data =
                    len.is_zero() ? bytes_view{} : read_memory(off.as_u64(), len.as_u64());
                push(word::from_hash(keccak256(data)));
                break;
            }

            case OP_ADDRESS:
                push(word::from_address(self));
                break;
            case OP_BALANCE:
                pop();
                push(word{});  // balances are not modeled
                break;
            case OP_ORIGIN:
                push(word::from_address(p_.caller));
                break;
            case OP_CALLER:
                push(word::from_address(caller));
                break;
            case OP_CALLVALUE:
                push(value);
                break;
            case OP_CALLDATALOAD:
            {
                const auto off = pop();
                word w;
                if (off.fits_u64() && off.as_u64() < input.size())
                {
                    uint8_t buf[32] = {};
                    const size_t start = off.as_u64();
                    const size_t n = std::min<size_t>(32, input.size() - start);
                    std::memcpy(buf, input.data() + start, n);
                    w = word::from_be_bytes({buf, 32});
                }
                push(w);
                break;
            }
            case OP_CALLDATASIZE:
                push(word{input.size()});
                break;
            case OP_CALLDATACOPY:
            case OP_CODECOPY:
            case OP_RETURNDATACOPY:
            {
                const auto dest = pop();
                const auto src = pop();
                const auto len = pop();
                const bytes_view source = op == OP_CALLDATACOPY ? input :
                                          op == OP_CODECOPY     ? code :
                                                                  bytes_view{return_data};
                if (op == OP_RETURNDATACOPY)
                {
                    // Out-of-range returndata reads are an exceptional halt.
                    const word end = add(src, len);
                    if (end < src || !end.fits_u64() || end.as_u64() > source.size())
                    {
                        result.reason = halt_reason::invalid;
                        halted = true;
                        break;
                    }
                }
                if (!grow_memory(dest, len))
                {
                    result.reason = halt_reason::memory_limit;
                    halted = true;
                    break;
                }
                if (!len.is_zero())
                {
                    const uint64_t d = dest.as_u64();
                    const uint64_t n = len.as_u64();
                    for (uint64_t i = 0; i < n; ++i)
                    {
                        uint8_t b = 0;
                        if (src.fits_u64() && src.as_u64() + i < source.size())
                            b = source[src.as_u64() + i];
                        memory[d + i] = b;
                    }
                }
                break;
            }
            case OP_CODESIZE:
                push(word{code.size()});
                break;
            case OP_GASPRICE:
                push(p_.context.gasprice);
                break;
            case OP_EXTCODESIZE:
            {
                const auto a = pop().to_address();
                push(word{code_of(a).size()});
                break;
            }
            case OP_EXTCODECOPY:
            {
                const auto a = pop().to_address();
                const auto dest = pop();
                const auto src = pop();
                const auto len = pop();
                const bytes ext = code_of(a);
                if (!grow_memory(dest, len))
                {
                    result.reason = halt_reason::memory_limit;
                    halted = true;
                    break;
                }
                if (!len.is_zero())
                {
                    const uint64_t d = dest.as_u64();
                    const uint64_t n = len.as_u64();
                    for (uint64_t i = 0; i < n; ++i)
                    {
                        uint8_t b = 0;
                        if (src.fits_u64() && src.as_u64() + i < ext.size())
                            b = ext[src.as_u64() + i];
                        memory[d + i] = b;
                    }
                }
                break;
            }
            case OP_RETURNDATASIZE:
                push(word{return_data.size()});
                break;
            case OP_EXTCODEHASH:
            {
                const auto a = pop().to_address();
                const bytes ext = code_of(a);
                push(ext.empty() ? word{} : word::from_hash(keccak256(ext)));
                break;
            }

            case OP_BLOCKHASH:
            {
                const auto n = pop();
                word w;
                if (n.fits_u64())
                {
                    const auto it = p_.context.blockhashes.find(n.as_u64());
                    if (it != p_.context.blockhashes.end())
                        w = word::from_hash(it->second);
                }
                push(w);
                break;
            }
            case OP_COINBASE:
                push(word::from_address(p_.context.coinbase));
                break;
            case OP_TIMESTAMP:
                push(word{p_.context.timestamp});
                break;
            case OP_NUMBER:
                push(word{p_.context.number});
                break;
            case OP_PREVRANDAO:
                push(p_.context.prevrandao);
                break;
            case OP_GASLIMIT:
                push(word{p_.context.gaslimit});
                break;
            case OP_CHAINID:
                push(word{p_.context.chainid});
                break;
            case OP_SELFBALANCE:
                push(word{});
                break;
            case OP_BASEFEE:
                push(p_.context.basefee);
                break;
            case OP_BLOBHASH:
                pop();
                push(word{});
                break;
            case OP_BLOBBASEFEE:
                push(word{});
                break;

            case OP_POP:
                pop();
                break;
            case OP_MLOAD:
            {
                const auto off = pop();
                if (!grow_memory(off, word{32}))
                {
                    result.reason = halt_reason::memory_limit;
                    halted = true;
                    break;
                }
                uint8_t buf[32];
                std::memcpy(buf, memory.data() + off.as_u64(), 32);
                push(word::from_be_bytes({buf, 32}));
                break;
            }
            case OP_MSTORE:
            {
                const auto off = pop();
                const auto v = pop();
                if (!grow_memory(off, word{32}))
                {
                    result.reason = halt_reason::memory_limit;
                    halted = true;
                    break;
                }
                const auto be = v.to_be_bytes();
                std::memcpy(memory.data() + off.as_u64(), be.data(), 32);
                break;
            }
            case OP_MSTORE8:
            {
                const auto off = pop();
                const auto v = pop();
                if (!grow_memory(off, word{1}))
                {
                    result.reason = halt_reason::memory_limit;
                    halted = true;
                    break;
                }
                memory[off.as_u64()] = static_cast<uint8_t>(v.limbs[0] & 0xff);
                break;
            }
            case OP_SLOAD:
            {
                const auto slot = pop();
                const word v = storage_read(self, slot);
                trace_.sloads.push_back({slot, v, static_cast<uint8_t>(depth)});
                push(v);
                break;
            }
            case OP_SSTORE:
            {
                const auto slot = pop();
                overlays_[self][slot] = pop();
                break;
            }
            case OP_JUMP:
            case OP_JUMPI:
            {
                const auto target = pop();
                const bool taken = op == OP_JUMP || !pop().is_zero();
                if (taken)
                {
                    if (!target.fits_u64() || target.as_u64() >= code.size() ||
                        !jumpdests[target.as_u64()])
                    {
                        result.reason = halt_reason::bad_jump;
                        halted = true;
                        break;
                    }
                    next_pc = target.as_u64();
                }
                break;
            }
            case OP_PC:
                push(word{at});
                break;
            case OP_MSIZE:
                push(word{memory.size()});
                break;
            case OP_GAS:
                push(word{uint64_t{1} << 32});
                break;
            case OP_JUMPDEST:
                break;
            case OP_TLOAD:
            {
                const auto slot = pop();
                const auto it = transient.find(slot);
                push(it != transient.end() ? it->second : word{});
                break;
            }
            case OP_TSTORE:
            {
                const auto slot = pop();
                transient[slot] = pop();
                break;
            }
            case OP_MCOPY:
            {
                const auto dest = pop();
                const auto src = pop();
                const auto len = pop();
                if (!grow_memory(dest, len) || !grow_memory(src, len))
                {
                    result.reason = halt_reason::memory_limit;
                    halted = true;
                    break;
                }
                if (!len.is_zero())
                    std::memmove(memory.data() + dest.as_u64(), memory.data() + src.as_u64(),
                        len.as_u64());
                break;
            }

            case OP_CREATE:
            case OP_CREATE2:
            {
                const auto v = pop();
                const auto off = pop();
                const auto len = pop();
                if (op == OP_CREATE2)
                    pop();  // salt does not influence the fixed sentinel address
                if (!grow_memory(off, len))
                {
                    result.reason = halt_reason::memory_limit;
                    halted = true;
                    break;
                }
                const bytes init{len.is_zero() ? bytes_view{} :
                                                 read_memory(off.as_u64(), len.as_u64())};
                const address created = create_address();
                frame_result child;
                if (depth + 1 > p_.limits.depth_limit)
                    child.reason = halt_reason::invalid;
                else
                    child = run_frame(init, {}, created, self, v, depth + 1);
                const bool ok = child.success();
                if (ok)
                {
                    created_code_[created] = child.output;
                    return_data.clear();
                }
                else
                {
                    return_data =
                        child.reason == halt_reason::revert ? child.output : bytes{};
                }
                trace_.external_calls.push_back(
                    {op == OP_CREATE ? call_kind::create : call_kind::create2, created, init,
                        child.output, ok, static_cast<uint8_t>(depth)});
                push(ok ? word::from_address(created) : word{});
                break;
            }

            case OP_CALL:
            case OP_CALLCODE:
            case OP_DELEGATECALL:
            case OP_STATICCALL:
            {
                pop();  // gas: not metered
                const auto callee_word = pop();
                word call_value;
                if (op == OP_CALL || op == OP_CALLCODE)
                    call_value = pop();
                const auto in_off = pop();
                const auto in_len = pop();
                const auto out_off = pop();
                const auto out_len = pop();

                if (!grow_memory(in_off, in_len) || !grow_memory(out_off, out_len))
                {
                    result.reason = halt_reason::memory_limit;
                    halted = true;
                    break;
                }
                const bytes call_input{in_len.is_zero() ?
                        bytes_view{} :
                        read_memory(in_off.as_u64(), in_len.as_u64())};
                const address callee = callee_word.to_address();
                const call_kind kind = op == OP_CALL         ? call_kind::call :
                                       op == OP_CALLCODE     ? call_kind::callcode :
                                       op == OP_DELEGATECALL ? call_kind::delegatecall :
                                                               call_kind::staticcall;

                bool ok = false;
                bytes output;
                if (is_precompile(callee))
                {
                    ok = true;
                    if (callee[19] == 0x04)
                        output = call_input;  // identity echoes
                }
                else if (depth + 1 > p_.limits.depth_limit)
                {
                    ok = false;
                }
                else
                {
                    bytes callee_code;
                    try
                    {
                        callee_code = code_of(callee);
                    }
                    catch (const provider_error&)
                    {
                        // The contract had already issued the call when the
                        // code query failed; record it before halting so the
                        // trace keeps the (kind, callee, input) evidence.
                        trace_.external_calls.push_back({kind, callee, call_input, {},
                            false, static_cast<uint8_t>(depth)});
                        result.reason = halt_reason::oracle_missing;
                        halted = true;
                        break;
                    }
                    if (callee_code.empty())
                    {
                        ok = true;  // calling an account without code succeeds
                    }
                    else
                    {
                        frame_result child;
                        switch (kind)
                        {
                        case call_kind::call:
                            child = run_frame(
                                callee_code, call_input, callee, self, call_value, depth + 1);
                            break;
                        case call_kind::callcode:
                            child = run_frame(
                                callee_code, call_input, self, self, call_value, depth + 1);
                            break;
                        case call_kind::delegatecall:
                            child = run_frame(
                                callee_code, call_input, self, caller, value, depth + 1);
                            break;
                        case call_kind::staticcall:
                            child = run_frame(
                                callee_code, call_input, callee, self, word{}, depth + 1);
                            break;
                        default:
                            break;
                        }
                        ok = child.success();
                        if (ok || child.reason == halt_reason::revert)
                            output = std::move(child.output);
                    }
                }

                return_data = output;
                if (!out_len.is_zero())
                {
                    const uint64_t n =
                        std::min<uint64_t>(out_len.as_u64(), output.size());
                    std::memcpy(memory.data() + out_off.as_u64(), output.data(), n);
                }
                trace_.external_calls.push_back(
                    {kind, callee, call_input, output, ok, static_cast<uint8_t>(depth)});
                push(word{ok ? 1u : 0u});
                break;
            }

            case OP_RETURN:
            case OP_REVERT:
            {
                const auto off = pop();
                const auto len = pop();
                if (!grow_memory(off, len))
                {
                    result.reason = halt_reason::memory_limit;
                    halted = true;
                    break;
                }
                if (!len.is_zero())
                    result.output = bytes{read_memory(off.as_u64(), len.as_u64())};
                result.reason =
                    op == OP_RETURN ? halt_reason::return_ : halt_reason::revert;
                halted = true;
                break;
            }
            case OP_INVALID:
                result.reason = halt_reason::invalid;
                halted = true;
                break;
            case OP_SELFDESTRUCT:
                pop();
                result.reason = halt_reason::stop;  // halts the frame
                halted = true;
                break;

            default:
                if (op == OP_PUSH0)
                {
                    push(word{});
                }
                else if (is_push(op))
                {
                    const unsigned width = push_size(op);
                    uint8_t buf[32] = {};
                    const size_t available = code.size() - pc - 1;
                    const size_t n = available < width ? available : width;
                    if (n > 0)
                        std::memcpy(buf + (32 - width), code.data() + pc + 1, n);
                    // A truncated push reads zero-padded operand bytes.
                    push(word::from_be_bytes({buf, 32}));
                    next_pc = pc + 1 + width;
                }
                else if (is_dup(op))
                {
                    push(stack[stack.size() - (op - OP_DUP1 + 1)]);
                }
                else if (is_swap(op))
                {
                    const unsigned n = op - OP_SWAP1 + 1;
                    std::swap(stack.back(), stack[stack.size() - 1 - n]);
                }
                else if (op >= OP_LOG0 && op <= OP_LOG4)
                {
                    const auto off = pop();
                    const auto len = pop();
                    for (int t = 0; t < op - OP_LOG0; ++t)
                        pop();
                    if (!grow_memory(off, len))
                    {
                        result.reason = halt_reason::memory_limit;
                        halted = true;
                    }
                    // log payloads are not collected
                }
                break;
            }
            }
            catch (const provider_error&)
            {
                // Any unanswerable state query is reported, never thrown.
                result.reason = halt_reason::oracle_missing;
                halted = true;
            }

            record_event(at, op);
            if (halted)
                break;
            pc = next_pc;
        }

        return result;
    }

    static bool is_precompile(const address& a) noexcept
    {
        for (size_t i = 0; i < 19; ++i)
        {
            if (a[i] != 0)
                return false;
        }
        return a[19] >= 1 && a[19] <= 9;
    }
};
}  // namespace

execution_trace execute(const exec_params& params)
{
    return emulation{params}.run();
}

std::string trace_to_json(const execution_trace& trace, bool include_events)
{
    nlohmann::json j;
    if (include_events)
    {
        auto& events = j["events"] = nlohmann::json::array();
        for (const auto& ev : trace.events)
        {
            nlohmann::json je;
            je["pc"] = ev.pc;
            je["opcode"] = info_of(ev.opcode).defined() ? info_of(ev.opcode).name : "UNKNOWN";
            je["depth"] = ev.depth;
            auto& st = je["stack_top"] = nlohmann::json::array();
            for (const auto& w : ev.stack_top)
                st.push_back(w.to_hex_compact());
            events.push_back(std::move(je));
        }
    }
    auto& calls = j["external_calls"] = nlohmann::json::array();
    for (const auto& c : trace.external_calls)
    {
        nlohmann::json jc;
        jc["kind"] = to_string(c.kind);
        jc["callee"] = hex0x(c.callee);
        jc["input"] = hex0x(c.input);
        jc["output"] = hex0x(c.output);
        jc["success"] = c.success;
        jc["depth"] = c.depth;
        calls.push_back(std::move(jc));
    }
    auto& sloads = j["sloads"] = nlohmann::json::array();
    for (const auto& s : trace.sloads)
    {
        nlohmann::json js;
        js["slot"] = s.slot.to_hex_full();
        js["value"] = s.value.to_hex_full();
        js["depth"] = s.depth;
        sloads.push_back(std::move(js));
    }
    j["halt"] = {{"reason", to_string(trace.halt.reason)},
        {"return_data", hex0x(trace.halt.return_data)}};
    j["steps"] = trace.steps;
    return j.dump();
}
}  // namespace pscan
