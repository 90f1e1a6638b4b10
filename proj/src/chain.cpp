// proxyscan: EVM proxy contract and storage collision analyzer
// Copyright 2026 The proxyscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pscan/chain.hpp>
#include <httplib.h>
#include <json.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace pscan
{
namespace
{
std::string quantity_hex(uint64_t v)
{
    char buf[24];
    std::snprintf(buf, sizeof(buf), "0x%llx", static_cast<unsigned long long>(v));
    return buf;
}

uint64_t parse_quantity(const std::string& s)
{
    return std::stoull(s, nullptr, 16);  // accepts the 0x prefix
}
}  // namespace

slot_history find_slot_history(const chain_state_provider& provider, const address& account,
    const word& slot, uint64_t lower, uint64_t upper)
{
    if (lower > upper)
        std::swap(lower, upper);

    std::map<uint64_t, word> memo;
    const auto query = [&](uint64_t height) -> const word& {
        auto it = memo.find(height);
        if (it == memo.end())
            it = memo.emplace(height, provider.get_storage_at(account, slot, height)).first;
        return it->second;
    };

    // Earliest queried height at which each distinct value was observed.
    std::map<word, uint64_t> first_seen;
    const auto observe = [&](const word& value, uint64_t height) {
        const auto [it, inserted] = first_seen.emplace(value, height);
        if (!inserted && height < it->second)
            it->second = height;
    };

    // Equal endpoints are assumed constant over the range (a value that
    // changes and reverts inside such a range is not observable this way).
    const std::function<void(uint64_t, uint64_t)> search = [&](uint64_t lo, uint64_t hi) {
        const word v_lo = query(lo);
        const word v_hi = query(hi);
        observe(v_lo, lo);
        if (v_lo == v_hi)
            return;
        observe(v_hi, hi);
        const uint64_t mid = lo + (hi - lo) / 2;
        search(lo, mid);
        search(mid + 1, hi);
    };
    search(lower, upper);

    slot_history result;
    result.lower = lower;
    result.upper = upper;
    result.query_count = memo.size();

    std::vector<std::pair<uint64_t, word>> ordered;
    for (const auto& [value, height] : first_seen)
    {
        if (!value.is_zero())
            ordered.emplace_back(height, value);
    }
    std::sort(ordered.begin(), ordered.end(),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [height, value] : ordered)
        result.values.push_back(value);
    return result;
}

logic_history_result logic_history(const chain_state_provider& provider, const address& account,
    const implementation_pointer& pointer, uint64_t lower, uint64_t upper)
{
    logic_history_result result;
    switch (pointer.kind)
    {
    case pointer_kind::hardcoded:
        result.addresses.push_back(pointer.target);
        return result;
    case pointer_kind::unresolved:
        return result;
    case pointer_kind::storage_slot:
    case pointer_kind::eip1967:
    case pointer_kind::eip1822:
        break;
    }
    if (!pointer.slot)
        return result;

    const auto history = find_slot_history(provider, account, *pointer.slot, lower, upper);
    result.query_count = history.query_count;
    for (const auto& value : history.values)
    {
        const auto addr = value.to_address();
        if (std::find(result.addresses.begin(), result.addresses.end(), addr) ==
            result.addresses.end())
            result.addresses.push_back(addr);
    }
    return result;
}

fixture_provider::fixture_provider(const std::string& json_text)
{
    const auto j = nlohmann::json::parse(json_text);
    if (j.contains("accounts"))
    {
        for (const auto& [addr_text, account_json] : j["accounts"].items())
        {
            const auto addr = address_from_hex(addr_text);
            if (!addr)
                throw std::runtime_error("fixture: bad account address: " + addr_text);
            account_state state;
            if (account_json.contains("code"))
            {
                auto code = from_hex(account_json["code"].template get<std::string>());
                if (!code)
                    throw std::runtime_error("fixture: bad code hex for " + addr_text);
                state.code = std::move(*code);
            }
            state.deployed = account_json.value("deployed", uint64_t{0});
            if (account_json.contains("storage"))
            {
                for (const auto& [slot_text, ranges_json] : account_json["storage"].items())
                {
                    const auto slot = word::from_hex(slot_text);
                    if (!slot)
                        throw std::runtime_error("fixture: bad slot key: " + slot_text);
                    std::vector<value_range> ranges;
                    for (const auto& range_json : ranges_json)
                    {
                        value_range range;
                        range.from = range_json.at("from").template get<uint64_t>();
                        range.to = range_json.at("to").template get<uint64_t>();
                        const auto& value_json = range_json.at("value");
                        if (value_json.is_null())
                        {
                            range.unanswerable = true;
                        }
                        else
                        {
                            const auto value =
                                word::from_hex(value_json.template get<std::string>());
                            if (!value)
                                throw std::runtime_error("fixture: bad slot value hex");
                            range.value = *value;
                        }
                        ranges.push_back(range);
                    }
                    state.storage.emplace(*slot, std::move(ranges));
                }
            }
            accounts_.emplace(*addr, std::move(state));
        }
    }

    if (!j.contains("latest") || !j["latest"].contains("height"))
        throw std::runtime_error("fixture: missing latest.height");
    const auto& latest = j["latest"];
    latest_.height = latest["height"].template get<uint64_t>();
    latest_.context.number = latest_.height;
    latest_.context.timestamp = latest.value("timestamp", uint64_t{0});
    latest_.context.gaslimit = latest.value("gaslimit", uint64_t{30'000'000});
    latest_.context.chainid = latest.value("chainid", uint64_t{1});
    if (latest.contains("basefee"))
        latest_.context.basefee =
            word::from_hex(latest["basefee"].template get<std::string>()).value_or(word{});
    if (latest.contains("prevrandao"))
        latest_.context.prevrandao =
            word::from_hex(latest["prevrandao"].template get<std::string>()).value_or(word{});
    if (latest.contains("coinbase"))
    {
        if (const auto cb = address_from_hex(latest["coinbase"].template get<std::string>()))
            latest_.context.coinbase = *cb;
    }
}

fixture_provider fixture_provider::from_file(const std::string& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        throw std::runtime_error("fixture: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return fixture_provider{buf.str()};
}

bytes fixture_provider::get_code(const address& account, uint64_t height) const
{
    const auto it = accounts_.find(account);
    if (it == accounts_.end())
        return {};
    if (height < it->second.deployed)
        return {};
    return it->second.code;
}

word fixture_provider::get_storage_at(
    const address& account, const word& slot, uint64_t height) const
{
    const auto it = accounts_.find(account);
    if (it == accounts_.end())
        return {};
    const auto slot_it = it->second.storage.find(slot);
    if (slot_it == it->second.storage.end())
        return {};
    for (const auto& range : slot_it->second)
    {
        if (height >= range.from && height <= range.to)
        {
            if (range.unanswerable)
                throw provider_error{
                    "eth_getStorageAt", "fixture range marked unanswerable", false};
            return range.value;
        }
    }
    return {};
}

latest_block fixture_provider::get_latest_block() const
{
    return latest_;
}

uint64_t fixture_provider::deploy_height(const address& account) const
{
    const auto it = accounts_.find(account);
    return it == accounts_.end() ? 0 : it->second.deployed;
}

rpc_provider::rpc_provider(std::string url, rpc_options options) : options_(options)
{
    const auto scheme_end = url.find("://");
    const auto path_start =
        url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    if (path_start == std::string::npos)
    {
        origin_ = std::move(url);
        path_ = "/";
    }
    else
    {
        origin_ = url.substr(0, path_start);
        path_ = url.substr(path_start);
    }
}

std::string rpc_provider::call(const std::string& method, const std::string& params_json) const
{
    const std::string body =
        R"({"jsonrpc":"2.0","id":1,"method":")" + method + R"(","params":)" + params_json + "}";

    {
        const std::lock_guard lock{mutex_};
        const auto it = memo_.find(body);
        if (it != memo_.end())
            return it->second;
    }

    std::string last_failure = "no attempt made";
    for (int attempt = 0; attempt < std::max(1, options_.retries); ++attempt)
    {
        if (attempt > 0)
            std::this_thread::sleep_for(
                std::chrono::milliseconds{options_.backoff_ms << (attempt - 1)});

        httplib::Client client{origin_};
        client.set_connection_timeout(10);
        client.set_read_timeout(30);
        const auto res = client.Post(path_, body, "application/json");
        if (!res)
        {
            last_failure = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200)
        {
            last_failure = "HTTP status " + std::to_string(res->status);
            continue;
        }

        nlohmann::json reply;
        try
        {
            reply = nlohmann::json::parse(res->body);
        }
        catch (const nlohmann::json::exception& e)
        {
            last_failure = std::string{"bad JSON reply: "} + e.what();
            continue;
        }
        if (reply.contains("error"))
        {
            const auto code = reply["error"].value("code", int64_t{0});
            const auto message = reply["error"].value("message", std::string{"unknown"});
            const bool retriable = code >= -32099 && code <= -32000;  // server-side errors
            if (!retriable)
                throw provider_error{method, "RPC error " + std::to_string(code) + ": " + message,
                    false};
            last_failure = "RPC error " + std::to_string(code) + ": " + message;
            continue;
        }
        if (!reply.contains("result"))
        {
            last_failure = "reply without result";
            continue;
        }

        auto result = reply["result"].dump();
        const std::lock_guard lock{mutex_};
        return memo_.emplace(body, std::move(result)).first->second;
    }
    throw provider_error{method, last_failure, true};
}

bytes rpc_provider::get_code(const address& account, uint64_t height) const
{
    const auto result = call(
        "eth_getCode", R"([")" + hex0x(account) + R"(",")" + quantity_hex(height) + R"("])");
    const auto j = nlohmann::json::parse(result);
    auto code = from_hex(j.template get<std::string>());
    if (!code)
        throw provider_error{"eth_getCode", "malformed code hex in reply", false};
    return *code;
}

word rpc_provider::get_storage_at(const address& account, const word& slot, uint64_t height) const
{
    const auto result = call("eth_getStorageAt", R"([")" + hex0x(account) + R"(",")" +
                                                     slot.to_hex_full() + R"(",")" +
                                                     quantity_hex(height) + R"("])");
    const auto j = nlohmann::json::parse(result);
    const auto value = word::from_hex(j.template get<std::string>());
    if (!value)
        throw provider_error{"eth_getStorageAt", "malformed value hex in reply", false};
    return *value;
}

latest_block rpc_provider::get_latest_block() const
{
    const auto result = call("eth_getBlockByNumber", R"(["latest",false])");
    const auto j = nlohmann::json::parse(result);
    if (!j.is_object())
        throw provider_error{"eth_getBlockByNumber", "null block in reply", false};

    latest_block block;
    try
    {
        block.height = parse_quantity(j.at("number").template get<std::string>());
        block.context.number = block.height;
        block.context.timestamp = parse_quantity(j.at("timestamp").template get<std::string>());
        if (j.contains("gasLimit"))
            block.context.gaslimit = parse_quantity(j["gasLimit"].template get<std::string>());
        if (j.contains("baseFeePerGas"))
            block.context.basefee =
                word::from_hex(j["baseFeePerGas"].template get<std::string>()).value_or(word{});
        // Post-merge blocks carry randomness in mixHash; difficulty is zero.
        if (j.contains("mixHash"))
            block.context.prevrandao =
                word::from_hex(j["mixHash"].template get<std::string>()).value_or(word{});
        if (block.context.prevrandao.is_zero() && j.contains("difficulty"))
            block.context.prevrandao =
                word::from_hex(j["difficulty"].template get<std::string>()).value_or(word{});
        if (j.contains("miner"))
        {
            if (const auto miner = address_from_hex(j["miner"].template get<std::string>()))
                block.context.coinbase = *miner;
        }
    }
    catch (const std::exception& e)
    {
        throw provider_error{"eth_getBlockByNumber", std::string{"malformed block: "} + e.what(),
            false};
    }
    return block;
}
}  // namespace pscan
