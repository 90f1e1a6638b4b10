// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pscan/chain.hpp>
#include <pscan/collision.hpp>
#include <pscan/dispatch.hpp>
#include <pscan/proxy.hpp>
#include <pscan/scan.hpp>
#include <CLI11.hpp>
#include <json.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace
{
using namespace pscan;

constexpr uint64_t latest_height = UINT64_MAX;  // --block default: provider's latest

struct cli_options
{
    std::string rpc_url;
    std::string fixture_path;
    uint64_t block = latest_height;
    uint64_t from_block = 0;
    emu_limits limits;
    uint64_t seed = 0;
    unsigned probe_attempts = 1;
    unsigned workers = 1;
    std::string format = "text";
    std::string cache;
    bool omit_timing = false;
};

struct chain_env
{
    std::unique_ptr<chain_state_provider> provider;
    uint64_t height = 0;
    block_context context;
};

std::unique_ptr<chain_state_provider> make_provider(const cli_options& opt)
{
    if (!opt.fixture_path.empty())
        return std::make_unique<fixture_provider>(fixture_provider::from_file(opt.fixture_path));
    if (!opt.rpc_url.empty())
        return std::make_unique<rpc_provider>(opt.rpc_url);
    return nullptr;
}

chain_env make_env(const cli_options& opt)
{
    chain_env env;
    env.provider = make_provider(opt);
    if (env.provider)
    {
        const auto latest = env.provider->get_latest_block();
        env.context = latest.context;
        env.height = opt.block == latest_height ? latest.height : opt.block;
        env.context.number = env.height;
    }
    else if (opt.block != latest_height)
    {
        env.height = opt.block;
        env.context.number = opt.block;
    }
    return env;
}

struct resolved_input
{
    bytes code;
    std::optional<address> account;
};

/// A 40-hex-digit input is an account address (its code is fetched); anything
/// else must be runtime bytecode hex. --raw forces the bytecode reading.
resolved_input resolve_input(const std::string& text, bool raw, const chain_env& env)
{
    std::string_view body = text;
    if (body.starts_with("0x") || body.starts_with("0X"))
        body.remove_prefix(2);

    resolved_input in;
    if (!raw && body.size() == 40)
    {
        const auto addr = address_from_hex(text);
        if (!addr)
            throw std::runtime_error("input looks like an address but is not valid hex: " + text);
        if (!env.provider)
            throw std::runtime_error("address input requires --rpc-url or --fixture");
        in.account = *addr;
        in.code = env.provider->get_code(*addr, env.height);
        if (in.code.empty())
            throw std::runtime_error("no code at " + hex0x(*addr));
        return in;
    }
    auto code = from_hex(text);
    if (!code)
        throw std::runtime_error("input is not valid address or bytecode hex: " + text);
    in.code = std::move(*code);
    return in;
}

std::string selector_text(uint32_t selector)
{
    char text[16];
    std::snprintf(text, sizeof(text), "0x%08x", selector);
    return text;
}

detect_options make_detect_options(
    const resolved_input& in, const chain_env& env, const cli_options& opt)
{
    detect_options options;
    options.account = in.account;
    options.context = env.context;
    options.provider = env.provider.get();
    options.height = env.height;
    options.limits = opt.limits;
    options.seed = opt.seed;
    return options;
}

int cmd_disasm(const std::string& input, bool raw, const cli_options& opt)
{
    const auto env = make_env(opt);
    const auto in = resolve_input(input, raw, env);
    const auto stream = decode_bytecode(in.code);
    if (opt.format == "json")
    {
        nlohmann::json j;
        j["code_hash"] = hex0x(bytecode_hash(in.code));
        auto& instructions = j["instructions"] = nlohmann::json::array();
        for (const auto& ins : stream.instructions)
        {
            nlohmann::json e;
            e["offset"] = ins.offset;
            e["byte"] = ins.opcode;
            const auto& info = info_of(ins.opcode);
            e["name"] = info.defined() ? info.name : "UNKNOWN";
            if (!ins.operand.empty())
                e["operand"] = hex0x(ins.operand);
            if (ins.truncated)
                e["truncated"] = true;
            instructions.push_back(std::move(e));
        }
        std::cout << j.dump() << "\n";
    }
    else
    {
        std::cout << disassemble(stream);
    }
    return 0;
}

int cmd_selectors(const std::string& input, bool raw, const cli_options& opt)
{
    const auto env = make_env(opt);
    const auto in = resolve_input(input, raw, env);
    const auto stream = decode_bytecode(in.code);
    const auto selectors = extract_selectors(stream);
    if (opt.format == "json")
    {
        nlohmann::json j;
        auto& list = j["selectors"] = nlohmann::json::array();
        for (const auto& [selector, offset] : selectors.evidence)
            list.push_back({{"selector", selector_text(selector)}, {"evidence_offset", offset}});
        std::cout << j.dump() << "\n";
    }
    else
    {
        for (const auto& [selector, offset] : selectors.evidence)
            std::cout << selector_text(selector) << "\n";
    }
    return 0;
}

void print_proxy_text(const proxy_report& report)
{
    std::cout << "proxy: " << (report.is_proxy ? "yes" : "no") << "\n";
    if (report.probe)
    {
        std::cout << "probe: " << selector_text(report.probe->selector) << " (seed "
                  << report.probe->seed << ")\n";
    }
    std::cout << "emulated: " << (report.emulated ? "yes" : "no (no DELEGATECALL opcode)")
              << "\n";
    if (report.pointer)
    {
        std::cout << "pointer: " << to_string(report.pointer->kind) << "\n";
        if (report.pointer->slot)
            std::cout << "slot: " << report.pointer->slot->to_hex_full() << "\n";
        std::cout << "target: " << hex0x(report.pointer->target) << "\n";
    }
    if (report.is_proxy)
    {
        std::cout << "minimal: " << (report.minimal_proxy ? "yes" : "no") << "\n";
        std::cout << "exact_forward: " << (report.exact_forward ? "yes" : "no") << "\n";
        std::cout << "forwarded_input: " << hex0x(report.forwarded_input) << "\n";
    }
    std::cout << "confidence: "
              << (report.confidence == confidence_level::degraded ? "degraded" : "full") << "\n";
    if (report.failure)
        std::cout << "failure: " << to_string(*report.failure) << "\n";
    for (const auto& other : report.other_forwards)
        std::cout << "also_forwards: " << hex0x(other) << "\n";
}

int cmd_is_proxy(const std::string& input, bool raw, bool trace, const cli_options& opt)
{
    const auto env = make_env(opt);
    const auto in = resolve_input(input, raw, env);
    const auto report =
        detect_proxy_voted(in.code, make_detect_options(in, env, opt), opt.probe_attempts);
    if (opt.format == "json")
        std::cout << proxy_report_to_json(report) << "\n";
    else
        print_proxy_text(report);
    if (trace && report.probe)
    {
        exec_params params;
        params.code = in.code;
        params.calldata = report.probe->data;
        if (in.account)
            params.self = *in.account;
        params.context = env.context;
        params.provider = env.provider.get();
        params.height = env.height;
        params.limits = opt.limits;
        std::cout << trace_to_json(execute(params), true) << "\n";
    }
    return 0;
}

int cmd_logic_history(const std::string& input, bool raw, const cli_options& opt)
{
    const auto env = make_env(opt);
    const auto in = resolve_input(input, raw, env);
    const auto report =
        detect_proxy_voted(in.code, make_detect_options(in, env, opt), opt.probe_attempts);
    if (!report.is_proxy || !report.pointer)
        throw std::runtime_error("input is not a delegatecall proxy; no history to recover");
    const auto& pointer = *report.pointer;

    logic_history_result history;
    uint64_t lower = opt.from_block;
    uint64_t upper = env.height;
    if (pointer.kind == pointer_kind::hardcoded)
    {
        const null_provider no_chain;
        history = logic_history(no_chain, address{}, pointer, 0, 0);
    }
    else
    {
        if (!in.account)
            throw std::runtime_error(
                "storage-resident pointer: history needs an address input, not raw bytecode");
        if (!env.provider)
            throw std::runtime_error("history needs --rpc-url or --fixture");
        history = logic_history(*env.provider, *in.account, pointer, lower, upper);
    }

    if (opt.format == "json")
    {
        nlohmann::json j;
        j["pointer"]["kind"] = to_string(pointer.kind);
        if (pointer.slot)
            j["pointer"]["slot"] = pointer.slot->to_hex_full();
        auto& addresses = j["addresses"] = nlohmann::json::array();
        for (const auto& addr : history.addresses)
            addresses.push_back(hex0x(addr));
        j["query_count"] = history.query_count;
        j["range"] = {{"from", lower}, {"to", upper}};
        std::cout << j.dump() << "\n";
    }
    else
    {
        std::cout << "pointer: " << to_string(pointer.kind) << "\n";
        if (pointer.slot)
            std::cout << "slot: " << pointer.slot->to_hex_full() << "\n";
        for (const auto& addr : history.addresses)
            std::cout << hex0x(addr) << "\n";
        std::cout << "queries: " << history.query_count << "\n";
    }
    return 0;
}

int cmd_collide(
    const std::string& proxy_input, const std::string& logic_input, bool raw, const cli_options& opt)
{
    const auto env = make_env(opt);
    const auto proxy = resolve_input(proxy_input, raw, env);
    const auto logic = resolve_input(logic_input, raw, env);
    const auto report = analyze_pair(proxy.code, logic.code);
    if (opt.format == "json")
    {
        std::cout << collision_report_to_json(report) << "\n";
        return 0;
    }
    std::cout << "function collisions: " << report.function_collisions.size() << "\n";
    for (const auto selector : report.function_collisions)
        std::cout << "  " << selector_text(selector) << "\n";
    std::cout << "storage collisions: " << report.storage_collisions.size() << "\n";
    for (const auto& c : report.storage_collisions)
    {
        std::cout << "  slot " << c.slot.to_hex_compact() << ": proxy (offset "
                  << c.proxy_access.offset << ", width " << c.proxy_access.width << ", "
                  << to_string(c.proxy_access.mode) << ") vs logic (offset "
                  << c.logic_access.offset << ", width " << c.logic_access.width << ", "
                  << to_string(c.logic_access.mode) << "), overlap (offset " << c.overlap_offset
                  << ", width " << c.overlap_width << ")\n";
    }
    std::cout << "sensitive slots: " << report.sensitive_slots.size() << "\n";
    for (const auto& slot : report.sensitive_slots)
        std::cout << "  " << slot.to_hex_full() << "\n";
    return 0;
}

int cmd_scan(const std::string& file, const cli_options& opt)
{
    const auto provider = make_provider(opt);

    std::vector<std::string> lines;
    if (file.empty() || file == "-")
    {
        for (std::string line; std::getline(std::cin, line);)
            lines.push_back(line);
    }
    else
    {
        std::ifstream in{file};
        if (!in)
            throw std::runtime_error("cannot open input list: " + file);
        for (std::string line; std::getline(in, line);)
            lines.push_back(line);
    }

    scan_config config;
    config.provider = provider.get();
    if (opt.block != latest_height)
        config.height = opt.block;
    config.from_block = opt.from_block;
    config.limits = opt.limits;
    config.seed = opt.seed;
    config.probe_attempts = opt.probe_attempts;
    config.workers = opt.workers;
    config.json = opt.format == "json";
    config.timing = !opt.omit_timing;
    config.cache_path = opt.cache;
    run_scan(lines, config, std::cout);
    return 0;  // per-record failures are reported in the records themselves
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"EVM proxy detection, implementation history and storage collision analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    cli_options opt;
    app.add_option("--rpc-url", opt.rpc_url, "Ethereum JSON-RPC endpoint")
        ->envname("ETH_RPC_URL");
    app.add_option("--fixture", opt.fixture_path, "JSON chain-state fixture file")
        ->excludes("--rpc-url");
    app.add_option("--block", opt.block, "pin analyses to this height (default: latest)");
    app.add_option("--from-block", opt.from_block, "lower bound for history searches");
    app.add_option("--step-limit", opt.limits.step_limit, "emulator per-frame step limit");
    app.add_option("--depth-limit", opt.limits.depth_limit, "emulator call depth limit");
    app.add_option("--seed", opt.seed, "probe selector seed");
    app.add_option(
        "--probe-attempts", opt.probe_attempts, "detection attempts for the majority vote");
    app.add_option("--workers", opt.workers, "scan worker threads");
    app.add_option("--format", opt.format, "output format (json|text)")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--cache", opt.cache, "persistent per-bytecode analysis cache file");
    app.add_flag("--omit-timing", opt.omit_timing, "drop timing fields from scan output");

    std::string input;
    std::string logic_input;
    std::string scan_file;
    bool raw = false;
    bool trace = false;

    auto* disasm = app.add_subcommand("disasm", "decode bytecode and print the instructions");
    disasm->add_option("input", input, "address or runtime bytecode hex")->required();
    disasm->add_flag("--raw", raw, "treat the input as bytecode even if it is address-shaped");

    auto* selectors =
        app.add_subcommand("selectors", "recover callable function selectors from the dispatcher");
    selectors->add_option("input", input, "address or runtime bytecode hex")->required();
    selectors->add_flag("--raw", raw, "treat the input as bytecode");

    auto* is_proxy =
        app.add_subcommand("is-proxy", "detect delegatecall forwarding with a crafted probe call");
    is_proxy->add_option("input", input, "address or runtime bytecode hex")->required();
    is_proxy->add_flag("--raw", raw, "treat the input as bytecode");
    is_proxy->add_flag("--trace", trace, "also print the emulation trace");

    auto* history = app.add_subcommand(
        "logic-history", "recover past implementation addresses behind a proxy");
    history->add_option("input", input, "proxy address (or bytecode for hardcoded pointers)")
        ->required();
    history->add_flag("--raw", raw, "treat the input as bytecode");

    auto* collide = app.add_subcommand(
        "collide", "report function selector and storage layout collisions for a pair");
    collide->add_option("proxy", input, "proxy address or bytecode hex")->required();
    collide->add_option("logic", logic_input, "logic address or bytecode hex")->required();
    collide->add_flag("--raw", raw, "treat both inputs as bytecode");

    auto* scan = app.add_subcommand("scan", "analyze a list of contracts (file or stdin)");
    scan->add_option("file", scan_file, "file with one address/bytecode per line (default: stdin)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        if (e.get_exit_code() == 0)
            return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    }

    try
    {
        if (disasm->parsed())
            return cmd_disasm(input, raw, opt);
        if (selectors->parsed())
            return cmd_selectors(input, raw, opt);
        if (is_proxy->parsed())
            return cmd_is_proxy(input, raw, trace, opt);
        if (history->parsed())
            return cmd_logic_history(input, raw, opt);
        if (collide->parsed())
            return cmd_collide(input, logic_input, raw, opt);
        if (scan->parsed())
            return cmd_scan(scan_file, opt);
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
