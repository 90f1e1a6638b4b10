// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pscan/keccak.hpp>
#include <pscan/proxy.hpp>
#include <json.hpp>
#include <random>

namespace pscan
{
namespace
{
// EIP-1167 minimal proxy runtime: prefix ++ 20-byte target ++ suffix.
constexpr uint8_t eip1167_prefix[] = {0x36, 0x3d, 0x3d, 0x37, 0x3d, 0x3d, 0x3d, 0x36, 0x3d, 0x73};
constexpr uint8_t eip1167_suffix[] = {
    0x5a, 0xf4, 0x3d, 0x82, 0x80, 0x3e, 0x90, 0x3d, 0x91, 0x60, 0x2b, 0x57, 0xfd, 0x5b, 0xf3};
}  // namespace

bytes probe_calldata::selector_bytes() const
{
    bytes b;
    b.push_back(static_cast<uint8_t>(selector >> 24));
    b.push_back(static_cast<uint8_t>(selector >> 16));
    b.push_back(static_cast<uint8_t>(selector >> 8));
    b.push_back(static_cast<uint8_t>(selector));
    return b;
}

const char* to_string(pointer_kind k) noexcept
{
    switch (k)
    {
    case pointer_kind::hardcoded:
        return "hardcoded";
    case pointer_kind::storage_slot:
        return "storage-slot";
    case pointer_kind::eip1967:
        return "eip1967";
    case pointer_kind::eip1822:
        return "eip1822";
    case pointer_kind::unresolved:
        return "unresolved";
    }
    return "?";
}

const word& eip1967_implementation_slot() noexcept
{
    static const word slot =
        word::from_hash(keccak256(std::string_view{"eip1967.proxy.implementation"})) - word{1};
    return slot;
}

const word& eip1822_slot() noexcept
{
    static const word slot = word::from_hash(keccak256(std::string_view{"PROXIABLE"}));
    return slot;
}

bool is_eip1167_minimal(bytes_view code, address* target) noexcept
{
    constexpr size_t prefix_len = sizeof(eip1167_prefix);
    constexpr size_t suffix_len = sizeof(eip1167_suffix);
    if (code.size() != prefix_len + 20 + suffix_len)
        return false;
    if (!std::equal(eip1167_prefix, eip1167_prefix + prefix_len, code.begin()))
        return false;
    if (!std::equal(eip1167_suffix, eip1167_suffix + suffix_len, code.end() - suffix_len))
        return false;
    if (target != nullptr)
        std::copy_n(code.begin() + prefix_len, 20, target->begin());
    return true;
}

probe_calldata craft_probe(const instruction_stream& stream, uint64_t seed)
{
    const auto avoided = push4_operands(stream);
    if (avoided.size() == (uint64_t{1} << 32))
        throw std::runtime_error("probe: PUSH4 operands cover the entire selector space");

    std::mt19937_64 rng{seed};
    uint32_t selector;
    do
    {
        selector = static_cast<uint32_t>(rng());
    } while (avoided.count(selector) != 0);

    probe_calldata probe;
    probe.selector = selector;
    probe.seed = seed;
    probe.data = probe.selector_bytes();
    probe.data.append(32, uint8_t{0});
    return probe;
}

implementation_pointer classify_pointer(
    const execution_trace& trace, bytes_view code, const address& callee)
{
    implementation_pointer ptr;
    ptr.target = callee;

    // Last storage read whose value resolves to the callee. Storage evidence
    // outranks byte-pattern matching: the run watched this value flow out of
    // the slot, and an empty slot (zero callee) still names the right slot,
    // which lets a later lookup against a real account re-resolve the target.
    for (auto it = trace.sloads.rbegin(); it != trace.sloads.rend(); ++it)
    {
        if (it->value.to_address() == callee)
        {
            ptr.slot = it->slot;
            if (it->slot == eip1967_implementation_slot())
                ptr.kind = pointer_kind::eip1967;
            else if (it->slot == eip1822_slot())
                ptr.kind = pointer_kind::eip1822;
            else
                ptr.kind = pointer_kind::storage_slot;
            return ptr;
        }
    }

    // Embedded verbatim in the code (minimal proxies and friends). The zero
    // address never counts as embedded: a 20-zero-byte run appears inside the
    // operand of almost every PUSH32 of a small constant.
    if (callee != address{} &&
        code.find(bytes_view{callee.data(), callee.size()}) != bytes_view::npos)
    {
        ptr.kind = pointer_kind::hardcoded;
        return ptr;
    }

    ptr.kind = pointer_kind::unresolved;
    return ptr;
}

proxy_report detect_proxy(bytes_view code, const detect_options& options)
{
    proxy_report report;
    report.account = options.account;

    const auto stream = decode_bytecode(code);
    report.probe = craft_probe(stream, options.seed);

    // Step 1: no DELEGATECALL opcode, no proxy; skip emulation entirely.
    if (!contains_delegatecall(stream))
        return report;

    // Step 2: emulate against the probe.
    exec_params params;
    params.code = code;
    params.calldata = report.probe->data;
    if (options.account)
        params.self = *options.account;
    params.context = options.context;
    params.provider = options.provider;
    params.height = options.height;
    params.limits = options.limits;
    params.trace.record_events = false;  // calls and sloads suffice here
    const auto trace = execute(params);
    report.emulated = true;

    const auto probe_selector = report.probe->selector_bytes();
    const external_call* forward = nullptr;
    for (const auto& call : trace.external_calls)
    {
        if (call.depth != 0 || call.kind != call_kind::delegatecall)
            continue;
        if (call.input.size() < 4 ||
            bytes_view{call.input}.substr(0, 4) != bytes_view{probe_selector})
            continue;
        if (forward == nullptr)
        {
            forward = &call;
        }
        else if (call.callee != forward->callee)
        {
            const auto& seen = report.other_forwards;
            if (std::find(seen.begin(), seen.end(), call.callee) == seen.end())
                report.other_forwards.push_back(call.callee);
        }
    }

    const bool abnormal = !is_normal_halt(trace.halt.reason);
    if (abnormal)
        report.confidence = confidence_level::degraded;

    if (forward == nullptr)
    {
        if (abnormal)
            report.failure = trace.halt.reason;  // detection could not complete
        return report;
    }

    report.is_proxy = true;
    report.forwarded_input = forward->input;
    report.exact_forward = forward->input == report.probe->data;
    report.pointer = classify_pointer(trace, code, forward->callee);
    report.minimal_proxy = is_eip1167_minimal(code);
    return report;
}

proxy_report detect_proxy_voted(bytes_view code, const detect_options& options, unsigned attempts)
{
    if (attempts <= 1)
        return detect_proxy(code, options);

    std::vector<proxy_report> reports;
    reports.reserve(attempts);
    unsigned positive = 0;
    for (unsigned i = 0; i < attempts; ++i)
    {
        auto opts = options;
        opts.seed = options.seed + i;
        reports.push_back(detect_proxy(code, opts));
        if (reports.back().is_proxy)
            ++positive;
    }
    const bool verdict = positive * 2 >= attempts;
    for (auto& report : reports)
    {
        if (report.is_proxy == verdict)
            return std::move(report);
    }
    return std::move(reports.front());  // unreachable: some report matches the vote
}

std::string proxy_report_to_json(const proxy_report& report)
{
    nlohmann::json j;
    if (report.account)
        j["address"] = hex0x(*report.account);
    j["is_proxy"] = report.is_proxy;
    j["minimal_proxy"] = report.minimal_proxy;
    if (report.pointer)
    {
        nlohmann::json p;
        p["kind"] = to_string(report.pointer->kind);
        if (report.pointer->slot)
            p["slot"] = report.pointer->slot->to_hex_full();
        p["address"] = hex0x(report.pointer->target);
        j["pointer"] = std::move(p);
    }
    j["exact_forward"] = report.exact_forward;
    j["confidence"] = report.confidence == confidence_level::full ? "full" : "degraded";
    if (report.failure)
        j["failure"] = to_string(*report.failure);
    if (report.probe)
    {
        char sel[16];
        std::snprintf(sel, sizeof(sel), "0x%08x", report.probe->selector);
        j["probe"] = {{"selector", sel}, {"seed", report.probe->seed}};
    }
    if (report.is_proxy)
        j["forwarded_input"] = hex0x(report.forwarded_input);
    if (!report.other_forwards.empty())
    {
        auto& arr = j["other_forwards"] = nlohmann::json::array();
        for (const auto& a : report.other_forwards)
            arr.push_back(hex0x(a));
    }
    j["emulated"] = report.emulated;
    return j.dump();
}

proxy_report proxy_report_from_json(const std::string& json_text)
{
    const auto j = nlohmann::json::parse(json_text);
    proxy_report report;
    if (j.contains("address"))
        report.account = address_from_hex(j["address"].get<std::string>());
    report.is_proxy = j.at("is_proxy").get<bool>();
    report.minimal_proxy = j.at("minimal_proxy").get<bool>();
    if (j.contains("pointer"))
    {
        implementation_pointer ptr;
        const auto& p = j["pointer"];
        const auto kind = p.at("kind").get<std::string>();
        for (const auto k : {pointer_kind::hardcoded, pointer_kind::storage_slot,
                 pointer_kind::eip1967, pointer_kind::eip1822, pointer_kind::unresolved})
        {
            if (kind == to_string(k))
                ptr.kind = k;
        }
        if (p.contains("slot"))
            ptr.slot = word::from_hex(p["slot"].get<std::string>()).value();
        if (const auto a = address_from_hex(p.at("address").get<std::string>()))
            ptr.target = *a;
        report.pointer = ptr;
    }
    report.exact_forward = j.at("exact_forward").get<bool>();
    report.confidence = j.at("confidence").get<std::string>() == "degraded" ?
                            confidence_level::degraded :
                            confidence_level::full;
    if (j.contains("failure"))
    {
        const auto f = j["failure"].get<std::string>();
        for (int r = 0; r <= static_cast<int>(halt_reason::memory_limit); ++r)
        {
            if (f == to_string(static_cast<halt_reason>(r)))
                report.failure = static_cast<halt_reason>(r);
        }
    }
    if (j.contains("probe"))
    {
        probe_calldata probe;
        probe.selector = static_cast<uint32_t>(
            std::stoul(j["probe"].at("selector").get<std::string>(), nullptr, 16));
        probe.seed = j["probe"].at("seed").get<uint64_t>();
        probe.data = probe.selector_bytes();
        probe.data.append(32, uint8_t{0});
        report.probe = std::move(probe);
    }
    if (j.contains("forwarded_input"))
        report.forwarded_input = from_hex(j["forwarded_input"].get<std::string>()).value();
    if (j.contains("other_forwards"))
    {
        for (const auto& a : j["other_forwards"])
            report.other_forwards.push_back(*address_from_hex(a.get<std::string>()));
    }
    report.emulated = j.value("emulated", false);
    return report;
}
}  // namespace pscan
