// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pscan/scan.hpp>
#include <json.hpp>
#include <atomic>
#include <chrono>
#include <fstream>
#include <future>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace pscan
{
namespace
{
using clock_type = std::chrono::steady_clock;

uint64_t us_since(clock_type::time_point t0)
{
    return static_cast<uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(clock_type::now() - t0).count());
}

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string selector_text(uint32_t selector)
{
    char text[16];
    std::snprintf(text, sizeof(text), "0x%08x", selector);
    return text;
}

/// Everything derivable from the bytecode alone; shared across identical code.
struct analysis_core
{
    proxy_report proxy;  // resolved against the self sentinel
    selector_set selectors;
    storage_layout layout;
    std::vector<word> sensitive;
};

using core_ptr = std::shared_ptr<const analysis_core>;

nlohmann::json core_to_json(const analysis_core& core)
{
    nlohmann::json j;
    j["proxy"] = nlohmann::json::parse(proxy_report_to_json(core.proxy));
    auto& selectors = j["selectors"] = nlohmann::json::object();
    for (const auto& [selector, offset] : core.selectors.evidence)
        selectors[selector_text(selector)] = offset;
    auto& accesses = j["layout"]["accesses"] = nlohmann::json::array();
    for (const auto& a : core.layout.accesses)
    {
        nlohmann::json e;
        e["kind"] = to_string(a.kind);
        if (a.kind == slot_kind::constant)
            e["slot"] = a.slot.to_hex_full();
        e["offset"] = a.offset;
        e["width"] = a.width;
        e["mode"] = to_string(a.mode);
        accesses.push_back(std::move(e));
    }
    j["layout"]["unresolved"] = core.layout.unresolved_count;
    auto& sensitive = j["sensitive"] = nlohmann::json::array();
    for (const auto& slot : core.sensitive)
        sensitive.push_back(slot.to_hex_full());
    return j;
}

analysis_core core_from_json(const nlohmann::json& j)
{
    analysis_core core;
    core.proxy = proxy_report_from_json(j.at("proxy").dump());
    for (const auto& [text, offset] : j.at("selectors").items())
    {
        core.selectors.evidence.emplace(
            static_cast<uint32_t>(std::stoul(text, nullptr, 16)), offset.get<uint32_t>());
    }
    for (const auto& e : j.at("layout").at("accesses"))
    {
        slot_access a;
        a.kind = e.at("kind").get<std::string>() == "hash-derived" ? slot_kind::hash_derived :
                                                                     slot_kind::constant;
        if (e.contains("slot"))
            a.slot = word::from_hex(e["slot"].get<std::string>()).value();
        a.offset = e.at("offset").get<uint32_t>();
        a.width = e.at("width").get<uint32_t>();
        const auto mode = e.at("mode").get<std::string>();
        a.mode = mode == "write"             ? access_mode::write :
                 mode == "read-modify-write" ? access_mode::read_modify_write :
                                               access_mode::read;
        core.layout.accesses.push_back(a);
    }
    core.layout.unresolved_count = j.at("layout").at("unresolved").get<uint32_t>();
    for (const auto& s : j.at("sensitive"))
        core.sensitive.push_back(word::from_hex(s.get<std::string>()).value());
    return core;
}

/// Computes per-bytecode cores exactly once per run: concurrent requests for
/// the same hash share one in-flight future. Optionally persists results.
class analysis_engine
{
public:
    analysis_engine(const scan_config& config, const block_context& context, uint64_t height)
      : config_(config), context_(context), height_(height)
    {
        if (!config_.cache_path.empty())
            load_cache();
    }

    core_ptr core_for(const bytes& code)
    {
        const auto hash = bytecode_hash(code);
        std::promise<core_ptr> promise;
        std::shared_future<core_ptr> future;
        bool owner = false;
        {
            const std::lock_guard lock{mutex_};
            const auto it = flights_.find(hash);
            if (it == flights_.end())
            {
                owner = true;
                future = promise.get_future().share();
                flights_.emplace(hash, future);
            }
            else
            {
                future = it->second;
            }
        }
        if (owner)
        {
            try
            {
                promise.set_value(compute(code, hash));
            }
            catch (...)
            {
                promise.set_exception(std::current_exception());
            }
        }
        return future.get();  // rethrows a shared compute failure for everyone
    }

    uint64_t emulations() const { return emulations_.load(); }

    void save_cache() const
    {
        if (config_.cache_path.empty())
            return;
        nlohmann::json cores = nlohmann::json::object();
        for (const auto& [hash, core] : preloaded_)
            cores[hex0x(hash)] = core_to_json(*core);
        for (const auto& [hash, core] : computed_)
            cores[hex0x(hash)] = core_to_json(*core);
        nlohmann::json j;
        j["version"] = 1;
        j["cores"] = std::move(cores);
        std::ofstream out{config_.cache_path, std::ios::binary | std::ios::trunc};
        out << j.dump(2) << '\n';
    }

private:
    core_ptr compute(const bytes& code, const hash256& hash)
    {
        {
            const std::lock_guard lock{mutex_};
            const auto it = preloaded_.find(hash);
            if (it != preloaded_.end())
                return it->second;
        }
        auto core = std::make_shared<analysis_core>();
        const auto stream = decode_bytecode(code);
        const auto graph = split_basic_blocks(stream);

        detect_options options;
        options.context = context_;
        options.provider = config_.provider;
        options.height = height_;
        options.limits = config_.limits;
        options.seed = config_.seed;
        core->proxy = detect_proxy_voted(code, options, config_.probe_attempts);
        if (core->proxy.emulated)
            emulations_ += std::max(1u, config_.probe_attempts);

        core->selectors = extract_selectors(stream, graph);
        auto storage = analyze_storage(stream, graph);
        core->layout = std::move(storage.layout);
        core->sensitive = std::move(storage.sensitive_slots);

        const std::lock_guard lock{mutex_};
        return computed_.emplace(hash, std::move(core)).first->second;
    }

    void load_cache()
    {
        std::ifstream in{config_.cache_path, std::ios::binary};
        if (!in)
            return;  // no cache yet
        try
        {
            nlohmann::json j;
            in >> j;
            for (const auto& [hash_text, core_json] : j.at("cores").items())
            {
                const auto hash_bytes = from_hex(hash_text);
                if (!hash_bytes || hash_bytes->size() != 32)
                    continue;
                hash256 hash;
                std::copy(hash_bytes->begin(), hash_bytes->end(), hash.begin());
                preloaded_.emplace(hash, std::make_shared<analysis_core>(core_from_json(core_json)));
            }
        }
        catch (const std::exception&)
        {
            preloaded_.clear();  // unreadable cache: recompute everything
        }
    }

    const scan_config& config_;
    block_context context_;
    uint64_t height_;
    std::mutex mutex_;
    std::map<hash256, std::shared_future<core_ptr>> flights_;
    std::map<hash256, core_ptr> preloaded_;
    std::map<hash256, core_ptr> computed_;
    std::atomic<uint64_t> emulations_{0};
};

struct scan_record
{
    std::string input;
    std::optional<address> account;
    std::optional<hash256> code_hash;
    core_ptr core;
    std::optional<proxy_report> proxy;  // bound to the record's account
    std::optional<logic_history_result> history;
    std::optional<collision_report> collision;
    std::optional<std::string> failure;
    uint64_t fetch_us = 0;
    uint64_t detect_us = 0;
    uint64_t history_us = 0;
    uint64_t collision_us = 0;
};

scan_record process(
    const std::string& line, analysis_engine& engine, const scan_config& config, uint64_t height)
{
    scan_record rec;
    rec.input = line;
    try
    {
        std::string_view text = line;
        if (text.starts_with("0x") || text.starts_with("0X"))
            text.remove_prefix(2);

        bytes code;
        const auto t_fetch = clock_type::now();
        if (text.size() == 40)
        {
            const auto addr = address_from_hex(line);
            if (!addr)
            {
                rec.failure = "invalid input: not an address or bytecode hex";
                return rec;
            }
            rec.account = *addr;
            if (config.provider == nullptr)
            {
                rec.failure = "address input requires a chain provider";
                return rec;
            }
            code = config.provider->get_code(*addr, height);
            rec.fetch_us = us_since(t_fetch);
            if (code.empty())
            {
                rec.failure = "no code at address";
                return rec;
            }
        }
        else
        {
            auto decoded = from_hex(line);
            if (!decoded)
            {
                rec.failure = "invalid input: not an address or bytecode hex";
                return rec;
            }
            code = std::move(*decoded);
            rec.fetch_us = us_since(t_fetch);
        }
        rec.code_hash = bytecode_hash(code);

        const auto t_detect = clock_type::now();
        rec.core = engine.core_for(code);
        auto proxy = rec.core->proxy;
        proxy.account = rec.account;
        if (rec.account && proxy.is_proxy && proxy.pointer && proxy.pointer->slot &&
            config.provider != nullptr)
        {
            // The shared emulation resolved the pointer slot against the self
            // sentinel; re-read it for this record's real account.
            try
            {
                const auto value =
                    config.provider->get_storage_at(*rec.account, *proxy.pointer->slot, height);
                if (!value.is_zero())
                    proxy.pointer->target = value.to_address();
            }
            catch (const provider_error&)
            {
                // keep the shared-core target
            }
        }
        rec.proxy = std::move(proxy);
        rec.detect_us = us_since(t_detect);

        if (rec.proxy->is_proxy && rec.proxy->pointer)
        {
            const auto t_history = clock_type::now();
            const auto& pointer = *rec.proxy->pointer;
            static const null_provider no_chain;
            if (pointer.kind == pointer_kind::hardcoded)
                rec.history = logic_history(no_chain, address{}, pointer, 0, 0);
            else if (rec.account && config.provider != nullptr)
                rec.history = logic_history(
                    *config.provider, *rec.account, pointer, config.from_block, height);
            rec.history_us = us_since(t_history);
        }

        if (rec.proxy->is_proxy && rec.proxy->pointer && config.provider != nullptr)
        {
            const auto t_collision = clock_type::now();
            const auto logic_addr = rec.proxy->pointer->target;
            if (logic_addr != address{})
            {
                try
                {
                    const auto logic_code = config.provider->get_code(logic_addr, height);
                    if (!logic_code.empty())
                    {
                        const auto logic_core = engine.core_for(logic_code);
                        collision_report report;
                        report.proxy_code_hash = *rec.code_hash;
                        report.logic_code_hash = bytecode_hash(logic_code);
                        report.function_collisions = detect_function_collisions(
                            rec.core->selectors, logic_core->selectors);
                        report.storage_collisions =
                            detect_storage_collisions(rec.core->layout, logic_core->layout);
                        report.sensitive_slots = rec.core->sensitive;
                        rec.collision = std::move(report);
                    }
                }
                catch (const provider_error&)
                {
                    // logic code unavailable: report the proxy without the pair
                }
            }
            rec.collision_us = us_since(t_collision);
        }
    }
    catch (const std::exception& e)
    {
        rec.failure = e.what();
    }
    return rec;
}

std::string render(const scan_record& rec, bool deduped, const scan_config& config)
{
    if (config.json)
    {
        nlohmann::json j;
        j["input"] = rec.input;
        if (rec.account)
            j["address"] = hex0x(*rec.account);
        if (rec.code_hash)
            j["code_hash"] = hex0x(*rec.code_hash);
        if (rec.failure)
            j["failure"] = *rec.failure;
        if (rec.core)
        {
            j["dedup"] = deduped;
            auto& selectors = j["selectors"] = nlohmann::json::array();
            for (const auto& [selector, offset] : rec.core->selectors.evidence)
                selectors.push_back(selector_text(selector));
            j["storage"] = {{"accesses", rec.core->layout.accesses.size()},
                {"unresolved", rec.core->layout.unresolved_count}};
            auto& sensitive = j["storage"]["sensitive_slots"] = nlohmann::json::array();
            for (const auto& slot : rec.core->sensitive)
                sensitive.push_back(slot.to_hex_full());
        }
        if (rec.proxy)
            j["proxy"] = nlohmann::json::parse(proxy_report_to_json(*rec.proxy));
        if (rec.history)
        {
            auto& addresses = j["history"]["addresses"] = nlohmann::json::array();
            for (const auto& addr : rec.history->addresses)
                addresses.push_back(hex0x(addr));
            j["history"]["query_count"] = rec.history->query_count;
        }
        if (rec.collision)
            j["collision"] = nlohmann::json::parse(collision_report_to_json(*rec.collision));
        if (config.timing)
        {
            j["timing_us"] = {{"fetch", rec.fetch_us}, {"detect", rec.detect_us},
                {"history", rec.history_us}, {"collision", rec.collision_us}};
        }
        return j.dump() + "\n";
    }

    std::ostringstream out;
    out << rec.input << ": ";
    if (rec.failure)
    {
        out << "error: " << *rec.failure;
    }
    else
    {
        const auto& p = *rec.proxy;
        if (!p.is_proxy)
        {
            out << "not a proxy";
        }
        else if (p.pointer)
        {
            out << "proxy kind=" << to_string(p.pointer->kind)
                << " target=" << hex0x(p.pointer->target);
            if (p.minimal_proxy)
                out << " minimal";
            if (p.confidence == confidence_level::degraded)
                out << " degraded";
        }
        out << " selectors=" << rec.core->selectors.size();
        if (deduped)
            out << " dedup";
        if (rec.history)
            out << " logic_count=" << rec.history->addresses.size();
        if (rec.collision)
        {
            out << " function_collisions=" << rec.collision->function_collisions.size()
                << " storage_collisions=" << rec.collision->storage_collisions.size();
        }
        if (config.timing)
        {
            out << " [fetch=" << rec.fetch_us << "us detect=" << rec.detect_us
                << "us history=" << rec.history_us << "us collision=" << rec.collision_us
                << "us]";
        }
    }
    out << "\n";
    return out.str();
}
}  // namespace

scan_summary run_scan(
    const std::vector<std::string>& inputs, const scan_config& config, std::ostream& out)
{
    const auto t0 = clock_type::now();

    block_context context;
    uint64_t height = config.height.value_or(0);
    if (config.provider != nullptr)
    {
        const auto latest = config.provider->get_latest_block();
        context = latest.context;
        height = config.height.value_or(latest.height);
        context.number = height;
    }

    analysis_engine engine{config, context, height};

    std::vector<std::string> lines;
    for (const auto& raw : inputs)
    {
        auto line = trim(raw);
        if (!line.empty())
            lines.push_back(std::move(line));
    }

    std::vector<std::optional<scan_record>> results(lines.size());
    std::atomic<size_t> next{0};
    std::mutex flush_mutex;
    size_t flushed = 0;
    std::set<hash256> seen_hashes;
    scan_summary summary;

    // Records are emitted strictly in input order: a finished record waits
    // until every earlier one has been written, so thread count and
    // scheduling never change the output bytes.
    const auto flush_ready = [&] {
        while (flushed < results.size() && results[flushed])
        {
            const auto& rec = *results[flushed];
            bool deduped = false;
            if (rec.code_hash)
                deduped = !seen_hashes.insert(*rec.code_hash).second;
            out << render(rec, deduped, config);
            ++summary.records;
            if (rec.failure)
                ++summary.failures;
            else if (rec.proxy && rec.proxy->is_proxy)
                ++summary.proxies;
            results[flushed].reset();
            ++flushed;
        }
    };

    const auto worker = [&] {
        for (;;)
        {
            const size_t i = next.fetch_add(1);
            if (i >= lines.size())
                return;
            auto rec = process(lines[i], engine, config, height);
            const std::lock_guard lock{flush_mutex};
            results[i] = std::move(rec);
            flush_ready();
        }
    };

    const auto n_workers =
        std::max<size_t>(1, std::min<size_t>(config.workers, std::max<size_t>(lines.size(), 1)));
    if (n_workers == 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (size_t i = 0; i < n_workers; ++i)
            pool.emplace_back(worker);
        for (auto& thread : pool)
            thread.join();
    }

    engine.save_cache();
    summary.emulations = engine.emulations();
    summary.elapsed_us = us_since(t0);

    if (config.json)
    {
        nlohmann::json j;
        j["summary"] = {{"records", summary.records}, {"proxies", summary.proxies},
            {"failures", summary.failures}, {"emulations", summary.emulations}};
        if (config.timing)
        {
            j["summary"]["elapsed_us"] = summary.elapsed_us;
            j["summary"]["throughput_cps"] =
                summary.elapsed_us == 0 ?
                    0.0 :
                    static_cast<double>(summary.records) * 1e6 /
                        static_cast<double>(summary.elapsed_us);
        }
        out << j.dump() << "\n";
    }
    else
    {
        out << "scanned " << summary.records << " inputs: " << summary.proxies << " proxies, "
            << summary.failures << " failures, " << summary.emulations << " emulations";
        if (config.timing)
        {
            out << " in " << summary.elapsed_us / 1000 << " ms";
            if (summary.elapsed_us > 0)
            {
                out << " (" << static_cast<uint64_t>(static_cast<double>(summary.records) * 1e6 /
                                   static_cast<double>(summary.elapsed_us))
                    << "/s)";
            }
        }
        out << "\n";
    }
    return summary;
}
}  // namespace pscan
