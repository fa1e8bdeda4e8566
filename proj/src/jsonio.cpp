// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/jsonio.hpp"

#include "illum/illparse.hpp"

namespace illum {

namespace {

// Internal builders throw JsonError as a plain exception type; the public
// entry points catch it along with the library's own parse exceptions.
struct JsonError {
    std::string msg;
};

[[noreturn]] void bad(const std::string& msg) { throw JsonError{msg}; }

Value value_of(const Json& j);

Bag bag_of(const Json& j) {
    if (!j.is_object()) bad("bag must be an object");
    Bag out;
    for (const auto& [token, amount] : j.items()) {
        if (!amount.is_number_integer()) bad("bag amount must be an integer");
        out.set(token, amount.get<i64>());
    }
    return out;
}

Value value_of(const Json& j) {
    if (j.is_number_integer()) return Value::of_int(j.get<i64>());
    if (j.is_string()) {
        if (j.get<std::string>() == "star") return Value::star();
        bad("unknown value literal " + j.get<std::string>());
    }
    if (!j.is_object() || j.size() != 1) bad("value must be a number, \"star\" or a tagged object");
    const std::string& tag = j.begin().key();
    const Json& body = j.begin().value();
    if (tag == "part") {
        if (!body.is_string()) bad("participant name must be a string");
        return Value::participant(body.get<std::string>());
    }
    if (tag == "bytes") {
        if (!body.is_string()) bad("bytes must be a hex string");
        auto raw = from_hex(body.get<std::string>());
        if (!raw) bad("bad hex in bytes value");
        return Value::bytes(*raw);
    }
    if (tag == "map") {
        if (!body.is_array()) bad("map must be an array of pairs");
        std::vector<std::pair<Value, Value>> entries;
        for (const auto& pair : body) {
            if (!pair.is_array() || pair.size() != 2) bad("map entry must be a [key, value] pair");
            entries.emplace_back(value_of(pair[0]), value_of(pair[1]));
        }
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first.cmp(b.first) < 0; });
        for (size_t i = 1; i < entries.size(); ++i)
            if (entries[i - 1].first == entries[i].first) bad("duplicate map key");
        return Value::map(std::move(entries));
    }
    if (tag == "list") {
        if (!body.is_array()) bad("list must be an array");
        std::vector<Value> items;
        for (const auto& item : body) items.push_back(value_of(item));
        return Value::list(std::move(items));
    }
    if (tag == "bag") return Value::bag(bag_of(body));
    bad("unknown value tag " + tag);
}

Json value_json(const Value& v) {
    switch (v.kind()) {
        case Value::Kind::Int:
            return v.as_int();
        case Value::Kind::Part:
            return Json{{"part", v.part_name()}};
        case Value::Kind::Star:
            return "star";
        case Value::Kind::Bytes:
            return Json{{"bytes", to_hex(v.raw_bytes())}};
        case Value::Kind::Map: {
            Json body = Json::array();
            for (const auto& [k, val] : v.map_entries())
                body.push_back(Json::array({value_json(k), value_json(val)}));
            return Json{{"map", body}};
        }
        case Value::Kind::List: {
            Json body = Json::array();
            for (const auto& item : v.list_items()) body.push_back(value_json(item));
            return Json{{"list", body}};
        }
        case Value::Kind::Bag: {
            Json body = Json::object();
            for (const auto& [token, amount] : v.as_bag().entries()) body[token] = amount;
            return Json{{"bag", body}};
        }
    }
    die("value_json unreachable");
}

Json bag_json(const Bag& b) {
    Json out = Json::object();
    for (const auto& [token, amount] : b.entries()) out[token] = amount;
    return out;
}

Branch branch_of(const Json& j) {
    if (!j.is_string()) bad("branch must be a string in clause syntax");
    auto b = parse_branch(j.get<std::string>());
    if (!b) bad("branch does not parse: " + b.err().detail);
    return b.take();
}

const char* adv_kind_name(Advertisement::Kind k) {
    switch (k) {
        case Advertisement::Kind::Init:
            return "init";
        case Advertisement::Kind::Continue:
            return "continue";
        case Advertisement::Kind::Destroy:
            return "destroy";
    }
    die("adv_kind_name unreachable");
}

Json advert_json(const Advertisement& a) {
    Json out;
    out["kind"] = adv_kind_name(a.kind);
    out["complete"] = a.complete;
    switch (a.kind) {
        case Advertisement::Kind::Init: {
            out["clause"] = a.clause;
            Json internals = Json::array();
            for (const auto& v : a.internals) internals.push_back(value_json(v));
            out["internals"] = internals;
            Json externals = Json::array();
            for (const auto& v : a.externals) externals.push_back(value_json(v));
            out["externals"] = externals;
            break;
        }
        case Advertisement::Kind::Continue:
            out["branch"] = branch_str(a.branch);
            out["contract"] = a.contract;
            out["branch_index"] = a.branch_index;
            break;
        case Advertisement::Kind::Destroy:
            break;
    }
    out["deposits"] = a.deposits;
    out["w"] = a.w.star ? Json("star") : bag_json(a.w.amount);
    if (a.nonce) out["nonce"] = a.nonce;
    return out;
}

Advertisement advert_of(const Json& j) {
    if (!j.is_object()) bad("advertisement must be an object");
    Advertisement a;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "init")
        a.kind = Advertisement::Kind::Init;
    else if (kind == "continue")
        a.kind = Advertisement::Kind::Continue;
    else if (kind == "destroy")
        a.kind = Advertisement::Kind::Destroy;
    else
        bad("unknown advertisement kind " + kind);
    a.complete = j.value("complete", true);
    if (a.kind == Advertisement::Kind::Init) {
        a.clause = j.at("clause").get<std::string>();
        for (const auto& v : j.at("internals")) a.internals.push_back(value_of(v));
        for (const auto& v : j.at("externals")) a.externals.push_back(value_of(v));
    } else if (a.kind == Advertisement::Kind::Continue) {
        a.branch = branch_of(j.at("branch"));
        a.contract = j.at("contract").get<std::string>();
        a.branch_index = j.at("branch_index").get<i64>();
    }
    if (j.contains("deposits"))
        for (const auto& z : j.at("deposits")) a.deposits.push_back(z.get<std::string>());
    if (j.contains("w")) {
        const Json& w = j.at("w");
        a.w = (w.is_string() && w.get<std::string>() == "star") ? WField::of_star()
                                                                : WField::of(bag_of(w));
    }
    a.nonce = j.value("nonce", static_cast<i64>(0));
    return a;
}

struct ActionKindName {
    SymbolicAction::Kind kind;
    const char* name;
};

constexpr ActionKindName kActionKinds[] = {
    {SymbolicAction::Kind::Msg, "msg"},
    {SymbolicAction::Kind::Adv, "adv"},
    {SymbolicAction::Kind::AuthIn, "auth-in"},
    {SymbolicAction::Kind::AuthAct, "auth-act"},
    {SymbolicAction::Kind::Init, "init"},
    {SymbolicAction::Kind::Call, "call"},
    {SymbolicAction::Kind::Send, "send"},
    {SymbolicAction::Kind::Destroy, "destroy"},
    {SymbolicAction::Kind::Delay, "delay"},
    {SymbolicAction::Kind::AuthJoin, "auth-join"},
    {SymbolicAction::Kind::Join, "join"},
    {SymbolicAction::Kind::AuthDivide, "auth-divide"},
    {SymbolicAction::Kind::Divide, "divide"},
    {SymbolicAction::Kind::AuthDonate, "auth-donate"},
    {SymbolicAction::Kind::Donate, "donate"},
};

bool action_uses_advert(SymbolicAction::Kind k) {
    switch (k) {
        case SymbolicAction::Kind::Msg:
        case SymbolicAction::Kind::Adv:
        case SymbolicAction::Kind::AuthIn:
        case SymbolicAction::Kind::AuthAct:
        case SymbolicAction::Kind::Init:
        case SymbolicAction::Kind::Call:
        case SymbolicAction::Kind::Send:
        case SymbolicAction::Kind::Destroy:
            return true;
        default:
            return false;
    }
}

Json action_json(const SymbolicAction& a) {
    Json out;
    for (const auto& k : kActionKinds)
        if (k.kind == a.kind) out["kind"] = k.name;
    if (action_uses_advert(a.kind)) out["adv"] = advert_json(a.adv);
    if (!a.who.empty()) out["who"] = a.who;
    if (!a.z1.empty()) out["z1"] = a.z1;
    if (!a.z2.empty()) out["z2"] = a.z2;
    if (a.pos) out["pos"] = a.pos;
    if (!a.amount1.empty()) out["amount1"] = bag_json(a.amount1);
    if (!a.amount2.empty()) out["amount2"] = bag_json(a.amount2);
    if (!a.donee.empty()) out["donee"] = a.donee;
    if (a.delta) out["delta"] = a.delta;
    return out;
}

SymbolicAction action_of(const Json& j) {
    if (!j.is_object()) bad("action must be an object");
    SymbolicAction a;
    std::string kind = j.at("kind").get<std::string>();
    bool found = false;
    for (const auto& k : kActionKinds)
        if (kind == k.name) {
            a.kind = k.kind;
            found = true;
        }
    if (!found) bad("unknown action kind " + kind);
    if (action_uses_advert(a.kind)) a.adv = advert_of(j.at("adv"));
    a.who = j.value("who", std::string());
    a.z1 = j.value("z1", std::string());
    a.z2 = j.value("z2", std::string());
    a.pos = j.value("pos", static_cast<i64>(0));
    if (j.contains("amount1")) a.amount1 = bag_of(j.at("amount1"));
    if (j.contains("amount2")) a.amount2 = bag_of(j.at("amount2"));
    a.donee = j.value("donee", std::string());
    a.delta = j.value("delta", static_cast<i64>(0));
    return a;
}

Json auth_json(const Authorization& a) {
    static const char* kNames[] = {"", "deposit-in", "branch-act", "join", "divide", "donate"};
    Json out;
    out["who"] = a.who;
    out["kind"] = kNames[static_cast<int>(a.kind)];
    if (!a.adv_id.empty()) out["adv_id"] = to_hex(a.adv_id);
    if (!a.z1.empty()) out["z1"] = a.z1;
    if (!a.z2.empty()) out["z2"] = a.z2;
    if (a.pos) out["pos"] = a.pos;
    if (!a.amount1.empty()) out["amount1"] = bag_json(a.amount1);
    if (!a.amount2.empty()) out["amount2"] = bag_json(a.amount2);
    if (!a.donee.empty()) out["donee"] = a.donee;
    return out;
}

Authorization auth_of(const Json& j) {
    Authorization a;
    a.who = j.at("who").get<std::string>();
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "deposit-in")
        a.kind = Authorization::Kind::DepositIn;
    else if (kind == "branch-act")
        a.kind = Authorization::Kind::BranchAct;
    else if (kind == "join")
        a.kind = Authorization::Kind::Join;
    else if (kind == "divide")
        a.kind = Authorization::Kind::Divide;
    else if (kind == "donate")
        a.kind = Authorization::Kind::Donate;
    else
        bad("unknown authorization kind " + kind);
    if (j.contains("adv_id")) {
        auto raw = from_hex(j.at("adv_id").get<std::string>());
        if (!raw) bad("bad hex in adv_id");
        a.adv_id = *raw;
    }
    a.z1 = j.value("z1", std::string());
    a.z2 = j.value("z2", std::string());
    a.pos = j.value("pos", static_cast<i64>(0));
    if (j.contains("amount1")) a.amount1 = bag_of(j.at("amount1"));
    if (j.contains("amount2")) a.amount2 = bag_of(j.at("amount2"));
    a.donee = j.value("donee", std::string());
    return a;
}

Json config_json(const Configuration& g) {
    Json out;
    Json deposits = Json::array();
    for (const auto& d : g.deposits)
        deposits.push_back(Json{{"name", d.name}, {"owner", d.owner}, {"value", bag_json(d.value)}});
    out["deposits"] = deposits;
    Json contracts = Json::array();
    for (const auto& c : g.contracts) {
        Json branches = Json::array();
        for (const auto& b : c.process) branches.push_back(branch_str(b));
        contracts.push_back(Json{{"name", c.name},
                                 {"activation", c.activation},
                                 {"process", branches},
                                 {"balance", bag_json(c.balance)}});
    }
    out["contracts"] = contracts;
    Json adverts = Json::array();
    for (const auto& a : g.adverts) adverts.push_back(advert_json(a));
    out["adverts"] = adverts;
    Json auths = Json::array();
    for (const auto& a : g.auths) auths.push_back(auth_json(a));
    out["auths"] = auths;
    out["destroyed"] = bag_json(g.destroyed);
    out["time"] = g.time;
    out["name_counter"] = g.name_counter;
    return out;
}

Configuration config_of(const Json& j) {
    if (!j.is_object()) bad("configuration must be an object");
    Configuration g;
    for (const auto& d : j.value("deposits", Json::array())) {
        Deposit out;
        out.name = d.at("name").get<std::string>();
        out.owner = d.at("owner").get<std::string>();
        out.value = bag_of(d.at("value"));
        g.deposits.push_back(std::move(out));
    }
    for (const auto& c : j.value("contracts", Json::array())) {
        ContractTerm out;
        out.name = c.at("name").get<std::string>();
        out.activation = c.at("activation").get<i64>();
        for (const auto& b : c.at("process")) out.process.push_back(branch_of(b));
        out.balance = bag_of(c.at("balance"));
        g.contracts.push_back(std::move(out));
    }
    for (const auto& a : j.value("adverts", Json::array())) g.adverts.push_back(advert_of(a));
    for (const auto& a : j.value("auths", Json::array())) g.auths.push_back(auth_of(a));
    if (j.contains("destroyed")) g.destroyed = bag_of(j.at("destroyed"));
    g.time = j.value("time", static_cast<i64>(0));
    g.name_counter = j.value("name_counter", static_cast<i64>(0));
    return g;
}

template <typename F>
auto guard(F&& f) -> Res<decltype(f())> {
    try {
        return f();
    } catch (const JsonError& e) {
        return Error{"JsonError", e.msg};
    } catch (const Json::exception& e) {
        return Error{"JsonError", e.what()};
    }
}

} // namespace

Json value_to_json(const Value& v) { return value_json(v); }
Res<Value> value_from_json(const Json& j) {
    return guard([&] { return value_of(j); });
}

Json bag_to_json(const Bag& b) { return bag_json(b); }
Res<Bag> bag_from_json(const Json& j) {
    return guard([&] { return bag_of(j); });
}

Json advert_to_json(const Advertisement& a) { return advert_json(a); }
Res<Advertisement> advert_from_json(const Json& j) {
    return guard([&] { return advert_of(j); });
}

Json action_to_json(const SymbolicAction& a) { return action_json(a); }
Res<SymbolicAction> action_from_json(const Json& j) {
    return guard([&] { return action_of(j); });
}

Json config_to_json(const Configuration& g) { return config_json(g); }
Res<Configuration> config_from_json(const Json& j) {
    return guard([&] { return config_of(j); });
}

Json run_to_json(const SymbolicRun& r) {
    Json out;
    out["initial"] = config_json(r.initial);
    Json actions = Json::array();
    for (const auto& a : r.actions) actions.push_back(action_json(a));
    out["actions"] = actions;
    return out;
}

Res<SymbolicRun> run_from_json(const Json& j) {
    return guard([&] {
        SymbolicRun r;
        r.initial = config_of(j.at("initial"));
        for (const auto& a : j.at("actions")) r.actions.push_back(action_of(a));
        return r;
    });
}

Res<Json> json_parse(const std::string& text) {
    return guard([&] { return Json::parse(text); });
}

} // namespace illum
