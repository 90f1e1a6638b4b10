// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Release acceptance suite. Each criterion prints one PASS/FAIL line; the
// process exits nonzero if any criterion fails. Tolerances (time budgets,
// query budgets, iteration counts) are pinned in the criterion bodies.
#include "asm_util.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include <pscan/bytecode.hpp>
#include <pscan/bytes.hpp>
#include <pscan/chain.hpp>
#include <pscan/chain_state.hpp>
#include <pscan/collision.hpp>
#include <pscan/dispatch.hpp>
#include <pscan/emulator.hpp>
#include <pscan/proxy.hpp>
#include <pscan/scan.hpp>
#include <pscan/word.hpp>
#include <json.hpp>
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace pscan;

namespace
{
void require(bool condition, const std::string& detail)
{
    if (!condition)
        throw std::runtime_error(detail);
}

template <typename F>
double elapsed_ms(F&& fn)
{
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

// --- 1. Selector recovery from the embedded sample proxy ---------------------

void criterion_dispatcher_recovery()
{
    const auto code = test::sample_proxy();
    selector_set selectors;
    const auto ms = elapsed_ms([&] {
        const auto stream = decode_bytecode(code);
        const auto graph = split_basic_blocks(stream);
        selectors = extract_selectors(stream, graph);
    });
    require(selectors.size() == 1,
        "expected exactly one selector, got " + std::to_string(selectors.size()));
    require(selectors.contains(0xdf4a3106u), "selector 0xdf4a3106 not recovered");
    require(ms < 10.0, "recovery took " + std::to_string(ms) + " ms (budget 10 ms)");
}

// --- 2. ABI selector hashing vs the independent Keccak-256 -------------------

uint32_t oracle_selector(const std::string& prototype)
{
    const auto digest = oracle::keccak256(
        bytes_view{reinterpret_cast<const uint8_t*>(prototype.data()), prototype.size()});
    return (uint32_t{digest[0]} << 24) | (uint32_t{digest[1]} << 16) |
           (uint32_t{digest[2]} << 8) | uint32_t{digest[3]};
}

void criterion_selector_hashing()
{
    require(function_selector("transfer(address,uint256)") == 0xa9059cbbu,
        "transfer(address,uint256) must hash to 0xa9059cbb");

    std::mt19937_64 rng{0x5e1ec702};
    static constexpr const char* types[] = {
        "uint256", "address", "bool", "bytes32", "uint8", "string", "bytes", "uint256[]"};
    static constexpr char first[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_";
    static constexpr char rest[] =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";
    for (int i = 0; i < 1000; ++i)
    {
        std::string name;
        const auto name_len = 1 + rng() % 24;
        name += first[rng() % (sizeof(first) - 1)];
        for (uint64_t j = 1; j < name_len; ++j)
            name += rest[rng() % (sizeof(rest) - 1)];
        std::string prototype = name + "(";
        const auto argc = rng() % 5;
        for (uint64_t a = 0; a < argc; ++a)
        {
            if (a != 0)
                prototype += ",";
            prototype += types[rng() % std::size(types)];
        }
        prototype += ")";
        require(function_selector(prototype) == oracle_selector(prototype),
            "selector mismatch for " + prototype);
    }
}

// --- 3. Opcode conformance + storage context of DELEGATECALL vs CALL ---------

word random_word(std::mt19937_64& rng)
{
    switch (rng() % 5)
    {
    case 0:
        return word{rng() % 16};
    case 1:
        return word{rng()};
    case 2:
        return ~word{} - word{rng() % 4};
    case 3:
        return shl(word{rng() % 256}, word{1});  // single bit, incl. sign boundary
    default:
    {
        word w;
        for (auto& limb : w.limbs)
            limb = rng();
        return w;
    }
    }
}

void criterion_opcode_conformance()
{
    struct op_case
    {
        uint8_t op;
        int arity;
    };
    static constexpr op_case cases[] = {
        {OP_ADD, 2}, {OP_MUL, 2}, {OP_SUB, 2}, {OP_DIV, 2}, {OP_SDIV, 2}, {OP_MOD, 2},
        {OP_SMOD, 2}, {OP_ADDMOD, 3}, {OP_MULMOD, 3}, {OP_EXP, 2}, {OP_SIGNEXTEND, 2},
        {OP_LT, 2}, {OP_GT, 2}, {OP_SLT, 2}, {OP_SGT, 2}, {OP_EQ, 2}, {OP_ISZERO, 1},
        {OP_AND, 2}, {OP_OR, 2}, {OP_XOR, 2}, {OP_NOT, 1}, {OP_BYTE, 2}, {OP_SHL, 2},
        {OP_SHR, 2}, {OP_SAR, 2}};

    std::mt19937_64 rng{0x0c0de};
    for (const auto& c : cases)
    {
        for (int i = 0; i < 10'000; ++i)
        {
            std::array<word, 3> args{};
            for (int a = 0; a < c.arity; ++a)
                args[static_cast<size_t>(a)] = random_word(rng);

            // Push so args[0] ends on top, apply the opcode, return the result.
            test::asm_builder b;
            for (int a = c.arity - 1; a >= 0; --a)
                b.push(view(args[static_cast<size_t>(a)].to_be_bytes()));
            b.byte(c.op).hex("5f5260205ff3");
            const auto code = b.build();

            exec_params params;
            params.code = code;
            params.trace.record_events = false;
            const auto trace = execute(params);

            char label[64];
            std::snprintf(label, sizeof(label), "opcode 0x%02x vector %d", c.op, i);
            require(trace.halt.reason == halt_reason::return_,
                std::string{label} + ": did not return");
            require(trace.halt.return_data.size() == 32,
                std::string{label} + ": bad return size");

            std::vector<oracle::bigint> big;
            for (int a = 0; a < c.arity; ++a)
                big.push_back(oracle::to_big(args[static_cast<size_t>(a)]));
            const auto expected = oracle::to_word(oracle::evm_op(c.op, big));
            const auto got = word::from_be_bytes(trace.halt.return_data);
            require(got == expected, std::string{label} + ": " + got.to_hex_full() +
                                         " != " + expected.to_hex_full());
        }
    }

    // A child SSTORE must land in the caller's storage under DELEGATECALL and
    // in the callee's own storage under CALL.
    test::map_provider chain;
    const auto logic = test::addr_of(0x42);
    chain.code[logic] = *from_hex("602a5f5500");  // SSTORE(slot 0, 42)

    const auto run_parent = [&](bool delegate) {
        test::asm_builder b;
        b.hex(delegate ? "5f5f5f5f" : "5f5f5f5f5f");  // out/in (and value for CALL)
        b.push_address(logic);
        b.byte(0x5a).byte(delegate ? 0xf4 : 0xf1);  // GAS; DELEGATECALL | CALL
        b.hex("505f545f5260205ff3");                // POP; return SLOAD(0)
        const auto code = b.build();

        exec_params params;
        params.code = code;
        params.provider = &chain;
        params.trace.record_events = false;
        const auto trace = execute(params);
        require(trace.halt.reason == halt_reason::return_, "parent frame did not return");
        require(trace.halt.return_data.size() == 32, "parent returned bad size");
        return word::from_be_bytes(trace.halt.return_data);
    };
    require(run_parent(true) == word{42},
        "DELEGATECALL: child SSTORE must be visible in the caller's storage");
    require(run_parent(false).is_zero(),
        "CALL: child SSTORE must not leak into the caller's storage");
}

// --- 4. Proxy verdicts over six contract shapes -------------------------------

void criterion_proxy_verdicts()
{
    test::map_provider chain;
    chain.latest_height = 10;
    const auto impl = test::addr_of(0x1e);
    chain.code[impl] = *from_hex("5f5ff3");
    const auto account = test::addr_of(0xab);
    const auto lib = test::addr_of(0x77);
    chain.code[lib] = *from_hex("5f5ff3");

    const auto timed_detect = [&](const bytes& code, const detect_options& options,
                                  const char* label) {
        proxy_report report;
        const auto ms = elapsed_ms([&] { report = detect_proxy(code, options); });
        require(ms < 50.0, std::string{label} + ": detection took " + std::to_string(ms) +
                               " ms (budget 50 ms)");
        return report;
    };

    {
        detect_options options;
        options.provider = &chain;
        const auto report = timed_detect(test::eip1167(impl), options, "eip1167");
        require(report.is_proxy, "eip1167: must be flagged as a proxy");
        require(report.minimal_proxy, "eip1167: minimal-proxy flag missing");
        require(report.pointer.has_value(), "eip1167: pointer missing");
        require(report.pointer->kind == pointer_kind::hardcoded,
            "eip1167: pointer must be hardcoded");
        require(report.pointer->target == impl, "eip1167: wrong hardcoded target");
    }
    {
        detect_options options;
        options.provider = &chain;
        options.account = account;
        chain.storage[account][word{0x42}] = word::from_address(impl);
        const auto report =
            timed_detect(test::slot_proxy(word{0x42}), options, "slot proxy");
        require(report.is_proxy, "slot proxy: must be flagged as a proxy");
        require(report.pointer.has_value(), "slot proxy: pointer missing");
        require(report.pointer->kind == pointer_kind::storage_slot,
            "slot proxy: pointer must be a plain storage slot");
        require(report.pointer->slot.has_value() && *report.pointer->slot == word{0x42},
            "slot proxy: wrong slot");
        require(report.pointer->target == impl, "slot proxy: wrong resolved target");
    }
    {
        detect_options options;
        options.provider = &chain;
        options.account = account;
        chain.storage[account][eip1967_implementation_slot()] = word::from_address(impl);
        const auto report =
            timed_detect(test::slot_proxy(eip1967_implementation_slot()), options, "eip1967");
        require(report.is_proxy, "eip1967: must be flagged as a proxy");
        require(report.pointer.has_value(), "eip1967: pointer missing");
        require(report.pointer->kind == pointer_kind::eip1967,
            "eip1967: slot constant must be recognized");
        require(report.pointer->target == impl, "eip1967: wrong resolved target");
    }
    {
        detect_options options;
        options.provider = &chain;
        options.account = account;
        chain.storage[account][eip1822_slot()] = word::from_address(impl);
        const auto report =
            timed_detect(test::slot_proxy(eip1822_slot()), options, "eip1822");
        require(report.is_proxy, "eip1822: must be flagged as a proxy");
        require(report.pointer.has_value(), "eip1822: pointer missing");
        require(report.pointer->kind == pointer_kind::eip1822,
            "eip1822: slot constant must be recognized");
        require(report.pointer->target == impl, "eip1822: wrong resolved target");
    }
    {
        detect_options options;
        options.provider = &chain;
        const auto report = timed_detect(test::library_caller(lib), options, "library caller");
        require(!report.is_proxy,
            "library caller: fixed-input DELEGATECALL must not count as a proxy");
        require(report.emulated, "library caller: verdict must come from emulation");
    }
    {
        detect_options options;
        options.provider = &chain;
        const auto report =
            timed_detect(test::dispatcher({0x11223344u}), options, "plain dispatcher");
        require(!report.is_proxy, "plain dispatcher: must not be flagged as a proxy");
        require(!report.emulated,
            "plain dispatcher: no DELEGATECALL means no emulation is needed");
    }
}

// --- 5. Slot history search: exactness and query budget ----------------------

/// Piecewise-constant slot: value of the last segment starting at or below the
/// queried height.
class step_provider final : public chain_state_provider
{
public:
    std::vector<std::pair<uint64_t, word>> segments;  // (start height, value), ascending

    bytes get_code(const address&, uint64_t) const override { return {}; }

    word get_storage_at(const address&, const word&, uint64_t height) const override
    {
        word value;
        for (const auto& [start, segment_value] : segments)
        {
            if (start > height)
                break;
            value = segment_value;
        }
        return value;
    }

    latest_block get_latest_block() const override { return {}; }
};

void criterion_slot_history()
{
    std::mt19937_64 rng{0x415701};
    constexpr uint64_t top = (uint64_t{1} << 24) - 1;

    for (unsigned changes = 0; changes <= 3; ++changes)
    {
        for (int round = 0; round < 25; ++round)
        {
            step_provider chain;
            std::set<uint64_t> cuts;
            while (cuts.size() < changes)
                cuts.insert(1 + rng() % top);

            uint64_t tag = 0;
            const bool zero_start = round % 3 == 0;
            const word first = zero_start ? word{} : word{0x1000 + ++tag};
            chain.segments.emplace_back(0, first);
            std::vector<word> expected;
            if (!first.is_zero())
                expected.push_back(first);
            for (const auto cut : cuts)
            {
                const word value{0x1000 + ++tag};
                chain.segments.emplace_back(cut, value);
                expected.push_back(value);
            }

            const auto history = find_slot_history(chain, address{}, word{7}, 0, top);
            require(history.values == expected, "history values mismatch (changes=" +
                                                    std::to_string(changes) + ")");
            const uint64_t budget = 2 * (changes + 1) * 24 + 2;
            require(history.query_count <= budget,
                std::to_string(history.query_count) + " queries for " +
                    std::to_string(changes) + " changes (budget " + std::to_string(budget) +
                    ")");
            if (changes == 1)
                require(history.query_count <= 52,
                    "single-change search used " + std::to_string(history.query_count) +
                        " queries (budget 52)");
        }
    }

    // Brute-force exactness on small ranges: enumerate every height.
    for (int round = 0; round < 60; ++round)
    {
        const uint64_t span = 1 + rng() % 4096;
        const uint64_t lower = rng() % 100'000;
        const uint64_t upper = lower + span - 1;
        const uint64_t changes = std::min<uint64_t>(rng() % 6, span - 1);

        step_provider chain;
        std::set<uint64_t> cuts;
        while (cuts.size() < changes)
            cuts.insert(lower + 1 + rng() % (span - 1));
        uint64_t tag = static_cast<uint64_t>(round) * 100;
        const word first = (round % 4 == 0) ? word{} : word{0x9000 + ++tag};
        chain.segments.emplace_back(0, first);
        for (const auto cut : cuts)
            chain.segments.emplace_back(cut, word{0x9000 + ++tag});

        std::vector<word> expected;
        for (uint64_t h = lower; h <= upper; ++h)
        {
            const auto value = chain.get_storage_at({}, {}, h);
            if (!value.is_zero() &&
                std::find(expected.begin(), expected.end(), value) == expected.end())
                expected.push_back(value);
        }

        const auto history = find_slot_history(chain, address{}, word{7}, lower, upper);
        require(history.values == expected, "brute-force mismatch (span=" +
                                                std::to_string(span) + ")");
        unsigned bits = 0;
        while ((uint64_t{1} << bits) < span)
            ++bits;
        const uint64_t budget = 2 * (changes + 1) * bits + 2;
        require(history.query_count <= budget,
            "small-range search used " + std::to_string(history.query_count) +
                " queries (budget " + std::to_string(budget) + ")");
    }
}

// --- 6. Storage collision detection vs the byte-overlap oracle ---------------

slot_access make_access(const word& slot, uint32_t offset, uint32_t width,
    access_mode mode = access_mode::read, slot_kind kind = slot_kind::constant)
{
    slot_access access;
    access.kind = kind;
    access.slot = slot;
    access.offset = offset;
    access.width = width;
    access.mode = mode;
    return access;
}

void criterion_storage_collisions()
{
    // Pinned shape: a 20-byte field against two 1-byte fields at offsets 0 and 1.
    storage_layout proxy_layout;
    proxy_layout.accesses = {make_access(word{}, 0, 20)};
    storage_layout logic_layout;
    logic_layout.accesses = {make_access(word{}, 0, 1), make_access(word{}, 1, 1)};
    const auto pinned = detect_storage_collisions(proxy_layout, logic_layout);
    require(pinned.size() == 2, "expected exactly 2 collisions, got " +
                                    std::to_string(pinned.size()));
    for (const auto& collision : pinned)
        require(collision.slot == word{}, "collision reported at the wrong slot");

    // Identical layouts describe compatible fields: no collision.
    const auto identical = detect_storage_collisions(proxy_layout, proxy_layout);
    require(identical.empty(), "identical layouts must not collide");

    // Randomized agreement with the brute-force byte-set oracle.
    std::mt19937_64 rng{0xc0111de5};
    const auto random_layout = [&] {
        storage_layout layout;
        const auto n = rng() % 5;
        for (uint64_t i = 0; i < n; ++i)
        {
            const auto kind =
                (rng() % 8 == 0) ? slot_kind::hash_derived : slot_kind::constant;
            const auto offset = static_cast<uint32_t>(rng() % 32);
            const auto width = static_cast<uint32_t>(1 + rng() % (32 - offset));
            const auto mode = static_cast<access_mode>(rng() % 3);
            layout.accesses.push_back(make_access(word{rng() % 3}, offset, width, mode, kind));
        }
        return layout;
    };
    for (int round = 0; round < 10'000; ++round)
    {
        const auto proxy_random = random_layout();
        const auto logic_random = random_layout();
        const auto got = detect_storage_collisions(proxy_random, logic_random);
        const auto expected = oracle::storage_collisions(proxy_random, logic_random);
        require(got.size() == expected.size(),
            "collision count mismatch in round " + std::to_string(round));
        for (size_t i = 0; i < got.size(); ++i)
        {
            const oracle::collision_key key{got[i].slot, got[i].proxy_access.offset,
                got[i].proxy_access.width, got[i].logic_access.offset,
                got[i].logic_access.width, got[i].overlap_offset, got[i].overlap_width};
            require(key == expected[i], "collision detail mismatch in round " +
                                            std::to_string(round));
        }
    }
}

// --- 7. Function selector collisions end-to-end -------------------------------

void criterion_function_collisions()
{
    const auto shared = analyze_pair(test::dispatcher({0x11111111u, 0xa9059cbbu}),
        test::dispatcher({0xa9059cbbu, 0x22222222u}));
    require(shared.function_collisions == std::vector<uint32_t>{0xa9059cbbu},
        "shared selector 0xa9059cbb must be the only function collision");

    const auto disjoint = analyze_pair(
        test::dispatcher({0x00000001u, 0x00000002u}), test::dispatcher({0x00000003u}));
    require(disjoint.function_collisions.empty(),
        "disjoint selector sets must not collide");

    const auto minimal = analyze_pair(
        test::eip1167(test::addr_of(0x1e)), test::dispatcher({0xa9059cbbu}));
    require(minimal.function_collisions.empty(),
        "a minimal proxy exposes no selectors and cannot collide");
}

// --- 8/9. Fixture world shared by the throughput and determinism criteria ----

address make_account(uint8_t prefix, uint32_t i)
{
    address a{};
    a[0] = prefix;
    a[18] = static_cast<uint8_t>(i >> 8);
    a[19] = static_cast<uint8_t>(i);
    return a;
}

struct fixture_world
{
    std::string json_text;
    std::vector<std::string> inputs;
};

fixture_world build_fixture(size_t count)
{
    nlohmann::json accounts = nlohmann::json::object();
    const auto slot5 = word{5}.to_hex_full();

    std::array<address, 8> pool{};
    for (size_t k = 0; k < pool.size(); ++k)
    {
        pool[k] = make_account(0xe0, static_cast<uint32_t>(k));
        test::asm_builder logic;
        logic.push(k, 1).hex("5460ff1600");  // SLOAD(k) & 0xff; STOP
        nlohmann::json entry;
        entry["code"] = hex0x(logic.build());
        accounts[hex0x(pool[k])] = std::move(entry);
    }
    const auto constant_range = [&](size_t k) {
        nlohmann::json range;
        range["from"] = 0;
        range["to"] = 4000;
        range["value"] = word::from_address(pool[k]).to_hex_full();
        return nlohmann::json::array({range});
    };

    // Shared detection runs read slot 5 against the analyzer's own sentinel
    // account; give that account a stable target so verdicts are determinate.
    {
        nlohmann::json entry;
        entry["storage"][slot5] = constant_range(0);
        accounts[hex0x(self_sentinel())] = std::move(entry);
    }

    fixture_world world;
    for (size_t i = 0; i < count; ++i)
    {
        const auto account = make_account(0x10, static_cast<uint32_t>(i));
        nlohmann::json entry;
        switch (i % 4)
        {
        case 0:
            entry["code"] = hex0x(test::eip1167(pool[i % 8]));
            break;
        case 1:
            entry["code"] = hex0x(test::dispatcher({0x60000000u + static_cast<uint32_t>(i)}));
            break;
        case 2:
            entry["code"] = hex0x(test::library_caller(
                make_account(0x40, static_cast<uint32_t>(i))));
            break;
        default:
            entry["code"] = hex0x(test::sample_proxy());
            entry["storage"][slot5] = constant_range(i % 8);
            break;
        }
        accounts[hex0x(account)] = std::move(entry);
        world.inputs.push_back(hex0x(account));
    }

    nlohmann::json fixture;
    fixture["accounts"] = std::move(accounts);
    fixture["latest"]["height"] = 3000;
    world.json_text = fixture.dump();
    return world;
}

std::string run_to_string(const std::vector<std::string>& inputs, const scan_config& config)
{
    std::ostringstream out;
    run_scan(inputs, config, out);
    return out.str();
}

void criterion_throughput()
{
    const auto world = build_fixture(1000);
    const fixture_provider provider{world.json_text};

    scan_config config;
    config.provider = &provider;
    config.workers = 8;
    config.json = true;
    config.timing = true;
    config.seed = 11;

    std::ostringstream out;
    scan_summary summary;
    const auto ms = elapsed_ms([&] { summary = run_scan(world.inputs, config, out); });
    require(summary.records == 1000, "expected 1000 records, got " +
                                         std::to_string(summary.records));
    require(summary.failures == 0, std::to_string(summary.failures) + " records failed");
    require(summary.proxies == 500, "expected 500 proxy verdicts, got " +
                                        std::to_string(summary.proxies));
    const double contracts_per_second = 1000.0 / (ms / 1000.0);
    require(contracts_per_second >= 100.0,
        "throughput " + std::to_string(contracts_per_second) +
            " contracts/s (floor 100)");

    // Shared-core dedup: scanning the same bytecode a thousand times must run
    // the emulator exactly once.
    const std::vector<std::string> copies(1000, hex0x(test::sample_proxy()));
    scan_config plain;
    plain.workers = 8;
    plain.json = false;
    plain.timing = false;
    std::ostringstream sink;
    const auto dedup_summary = run_scan(copies, plain, sink);
    require(dedup_summary.records == 1000, "dedup run lost records");
    require(dedup_summary.emulations == 1,
        "1000 identical inputs must cost exactly 1 emulation, got " +
            std::to_string(dedup_summary.emulations));
}

void criterion_determinism()
{
    const auto world = build_fixture(240);
    const fixture_provider provider{world.json_text};

    scan_config config;
    config.provider = &provider;
    config.workers = 8;
    config.json = true;
    config.timing = false;  // timing is the one intentionally varying field
    config.seed = 7;

    const auto first = run_to_string(world.inputs, config);
    const auto second = run_to_string(world.inputs, config);
    require(first == second, "two identical runs produced different JSON output");

    config.workers = 1;
    const auto serial = run_to_string(world.inputs, config);
    require(first == serial, "worker count changed the JSON output");

    config.workers = 8;
    config.json = false;
    const auto text_a = run_to_string(world.inputs, config);
    const auto text_b = run_to_string(world.inputs, config);
    require(text_a == text_b, "two identical runs produced different text output");
}

// --- 10. Decode/execute fuzzing ----------------------------------------------

void criterion_fuzz()
{
    std::mt19937_64 rng{0xf0220};
    static constexpr uint8_t interesting[] = {0x00, 0x33, 0x34, 0x35, 0x36, 0x37, 0x3d, 0x3e,
        0x51, 0x52, 0x54, 0x55, 0x56, 0x57, 0x5b, 0x5f, 0x60, 0x61, 0x7f, 0x80, 0x90, 0xa1,
        0xf0, 0xf1, 0xf3, 0xf4, 0xfa, 0xfd, 0xfe, 0xff};

    emu_limits limits;
    limits.step_limit = 2'000;
    limits.depth_limit = 3;
    limits.memory_limit = 1u << 20;

    bytes calldata;
    for (int i = 0; i < 36; ++i)
        calldata.push_back(static_cast<uint8_t>(rng()));

    for (int i = 0; i < 100'000; ++i)
    {
        const auto len = rng() % 97;
        bytes code;
        code.reserve(len);
        for (uint64_t j = 0; j < len; ++j)
            code.push_back(static_cast<uint8_t>(rng()));
        if (i % 2 != 0)  // sprinkle structured opcodes to reach deeper paths
        {
            const auto sprinkles = rng() % 8;
            for (uint64_t s = 0; s < sprinkles && !code.empty(); ++s)
                code[rng() % code.size()] = interesting[rng() % std::size(interesting)];
        }

        const auto stream = decode_bytecode(code);
        require(serialize(stream.instructions) == code,
            "decode/serialize round-trip failed at iteration " + std::to_string(i));

        exec_params params;
        params.code = code;
        params.calldata = calldata;
        params.limits = limits;
        params.trace.record_events = false;
        const auto trace = execute(params);
        const auto frames = 1 + trace.external_calls.size();
        require(trace.steps <= limits.step_limit * frames,
            "step budget exceeded at iteration " + std::to_string(i) + ": " +
                std::to_string(trace.steps) + " steps across " + std::to_string(frames) +
                " frames");
    }
}

struct criterion
{
    const char* name;
    void (*fn)();
};
}  // namespace

int main()
{
    static constexpr criterion criteria[] = {
        {"sample proxy dispatcher yields exactly selector 0xdf4a3106 in under 10 ms",
            criterion_dispatcher_recovery},
        {"function_selector matches an independent Keccak-256 on 1000 random prototypes",
            criterion_selector_hashing},
        {"25 arithmetic/logic opcodes match a big-integer oracle on 10000 vectors each, "
         "and DELEGATECALL preserves caller storage context where CALL does not",
            criterion_opcode_conformance},
        {"six contract shapes get the right proxy verdict, each in under 50 ms",
            criterion_proxy_verdicts},
        {"slot history over a 2^24 range is exact within the query budget",
            criterion_slot_history},
        {"storage collision detection agrees with a byte-overlap oracle",
            criterion_storage_collisions},
        {"shared function selectors are reported end-to-end, disjoint sets stay clean",
            criterion_function_collisions},
        {"1000-account fixture scan sustains 100+ contracts/s and dedups emulations",
            criterion_throughput},
        {"scan output is byte-identical across runs and worker counts",
            criterion_determinism},
        {"decode/execute survive 100000 random byte strings within step budgets",
            criterion_fuzz},
    };

    int failed = 0;
    for (size_t i = 0; i < std::size(criteria); ++i)
    {
        try
        {
            criteria[i].fn();
            std::printf("PASS %2zu %s\n", i + 1, criteria[i].name);
        }
        catch (const std::exception& e)
        {
            ++failed;
            std::printf("FAIL %2zu %s\n        %s\n", i + 1, criteria[i].name, e.what());
        }
        std::fflush(stdout);
    }

    if (failed != 0)
        std::printf("%d of %zu acceptance criteria FAILED\n", failed, std::size(criteria));
    else
        std::printf("all %zu acceptance criteria passed\n", std::size(criteria));
    return failed != 0 ? 1 : 0;
}
