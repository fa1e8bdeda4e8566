// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/comprun.hpp"

#include <array>

#include "illum/jsonio.hpp"

namespace illum {

namespace {

Error json_error(const std::string& detail) { return Error{"JsonError", detail}; }

// ---------------------------------------------------------------------------
// Script operator table

struct OpInfo {
    Script::Kind kind;
    const char* name;
    int arity;
};

constexpr std::array<OpInfo, 26> kOps{{
    {Script::Kind::Const, "const", 0},
    {Script::Kind::Add, "add", 2},
    {Script::Kind::Sub, "sub", 2},
    {Script::Kind::Eq, "eq", 2},
    {Script::Kind::Lt, "lt", 2},
    {Script::Kind::Elem, "elem", 2},
    {Script::Kind::Rtxw, "rtxw", 0},
    {Script::Kind::Size, "size", 1},
    {Script::Kind::Hash, "hash", 1},
    {Script::Kind::If, "if", 3},
    {Script::Kind::VerSig, "versig", 2},
    {Script::Kind::AbsAfter, "absafter", 2},
    {Script::Kind::RelAfter, "relafter", 2},
    {Script::Kind::CtxField, "ctx", 0},
    {Script::Kind::RtxField, "rtx", 1},
    {Script::Kind::InIdx, "inidx", 0},
    {Script::Kind::InLenCtx, "inlenctx", 0},
    {Script::Kind::InLenRtx, "inlenrtx", 0},
    {Script::Kind::OutLenCtx, "outlenctx", 0},
    {Script::Kind::OutLenRtx, "outlenrtx", 0},
    {Script::Kind::VerScr, "verscr", 1},
    {Script::Kind::VerRec, "verrec", 1},
    {Script::Kind::MapGet, "mapget", 2},
    {Script::Kind::MapPut, "mapput", 3},
    {Script::Kind::KeyOf, "keyof", 1},
    {Script::Kind::BagOf, "bagof", 1},
}};

const OpInfo* op_by_kind(Script::Kind k) {
    for (const auto& o : kOps)
        if (o.kind == k) return &o;
    return nullptr;
}

const OpInfo* op_by_name(const std::string& name) {
    for (const auto& o : kOps)
        if (name == o.name) return &o;
    return nullptr;
}

Res<std::string> hex_field(const Json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_string())
        return json_error(std::string(field) + " must be a hex string");
    auto raw = from_hex(j[field].get<std::string>());
    if (!raw) return json_error(std::string(field) + " is not valid hex");
    return *raw;
}

Res<i64> int_field(const Json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number_integer())
        return json_error(std::string(field) + " must be an integer");
    return j[field].get<i64>();
}

Res<std::string> string_field(const Json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_string())
        return json_error(std::string(field) + " must be a string");
    return j[field].get<std::string>();
}

} // namespace

// ---------------------------------------------------------------------------
// Identities and tokens

std::string unsigned_txid(const Transaction& tx) {
    Hash256 h = sha256(tx.serialize_unsigned());
    return std::string(h.begin(), h.end());
}

std::string outref_token(const OutRef& ref) {
    return "out:" + to_hex(ref.txid) + ":" + std::to_string(ref.index);
}

std::optional<OutRef> outref_of_token(const std::string& token) {
    if (token.rfind("out:", 0) != 0) return std::nullopt;
    size_t colon = token.find(':', 4);
    if (colon == std::string::npos) return std::nullopt;
    auto txid = from_hex(token.substr(4, colon - 4));
    if (!txid || txid->size() != 32) return std::nullopt;
    const std::string digits = token.substr(colon + 1);
    if (digits.empty() || digits.size() > 9) return std::nullopt;
    u32 index = 0;
    for (char c : digits) {
        if (c < '0' || c > '9') return std::nullopt;
        index = index * 10 + static_cast<u32>(c - '0');
    }
    return OutRef{*txid, index};
}

Res<Chain> run_chain(const ComputationalRun& rc, const KeyDirectory& keys) {
    Chain chain;
    chain.keys = keys;
    i64 time = 0;
    for (size_t i = 0; i < rc.labels.size(); ++i) {
        const CompLabel& l = rc.labels[i];
        if (l.kind == CompLabel::Kind::Delay) {
            i64 next = 0;
            if (!checked_add(time, l.delta, next))
                return Error{"Overflow", "label " + std::to_string(i) + ": time overflows"};
            time = next;
        } else if (l.kind == CompLabel::Kind::Tx) {
            auto next = chain_append(chain, l.tx, time);
            if (!next)
                return Error{next.err().code,
                             "label " + std::to_string(i) + ": " + next.err().detail};
            chain = next.take();
        }
    }
    return chain;
}

// ---------------------------------------------------------------------------
// Script JSON

Json script_to_json(const ScriptPtr& s) {
    if (!s) die("script_to_json on null script");
    const OpInfo* op = op_by_kind(s->kind);
    if (!op) die("script_to_json on unknown operator");
    Json j;
    j["op"] = op->name;
    switch (s->kind) {
        case Script::Kind::Const:
            j["value"] = value_to_json(s->value);
            break;
        case Script::Kind::CtxField:
        case Script::Kind::RtxField:
            j["field"] = s->field == Script::Field::Arg ? "arg" : "val";
            break;
        case Script::Kind::BagOf:
            j["token"] = s->token;
            break;
        case Script::Kind::VerScr:
            j["inner"] = script_to_json(s->inner);
            break;
        default:
            break;
    }
    if (!s->kids.empty()) {
        Json kids = Json::array();
        for (const auto& k : s->kids) kids.push_back(script_to_json(k));
        j["kids"] = std::move(kids);
    }
    return j;
}

Res<ScriptPtr> script_from_json(const Json& j) {
    if (!j.is_object()) return json_error("script node must be an object");
    auto name = string_field(j, "op");
    if (!name) return name.err();
    const OpInfo* op = op_by_name(*name);
    if (!op) return json_error("unknown script operator " + *name);

    auto node = std::make_shared<Script>();
    node->kind = op->kind;

    switch (op->kind) {
        case Script::Kind::Const: {
            if (!j.contains("value")) return json_error("const needs a value");
            auto v = value_from_json(j["value"]);
            if (!v) return v.err();
            node->value = v.take();
            break;
        }
        case Script::Kind::CtxField:
        case Script::Kind::RtxField: {
            auto f = string_field(j, "field");
            if (!f) return f.err();
            if (*f == "arg")
                node->field = Script::Field::Arg;
            else if (*f == "val")
                node->field = Script::Field::Val;
            else
                return json_error("field must be arg or val");
            break;
        }
        case Script::Kind::BagOf: {
            auto t = string_field(j, "token");
            if (!t) return t.err();
            node->token = t.take();
            break;
        }
        case Script::Kind::VerScr: {
            if (!j.contains("inner")) return json_error("verscr needs an inner script");
            auto inner = script_from_json(j["inner"]);
            if (!inner) return inner.err();
            node->inner = inner.take();
            break;
        }
        default:
            break;
    }

    size_t want = static_cast<size_t>(op->arity);
    const Json* kids = j.contains("kids") ? &j["kids"] : nullptr;
    size_t have = kids && kids->is_array() ? kids->size() : 0;
    if (kids && !kids->is_array()) return json_error("kids must be an array");
    if (have != want)
        return json_error(std::string(op->name) + " takes " + std::to_string(want) +
                          " operands, got " + std::to_string(have));
    for (size_t i = 0; i < have; ++i) {
        auto k = script_from_json((*kids)[i]);
        if (!k) return k.err();
        node->kids.push_back(k.take());
    }
    return ScriptPtr(node);
}

// ---------------------------------------------------------------------------
// Transaction JSON

Json transaction_to_json(const Transaction& tx) {
    Json j;
    Json ins = Json::array();
    for (const auto& in : tx.inputs)
        ins.push_back(Json{{"txid", to_hex(in.txid)}, {"index", in.index}});
    j["inputs"] = std::move(ins);

    Json wits = Json::array();
    for (const auto& w : tx.witnesses) {
        Json slot = Json::array();
        for (const auto& v : w) slot.push_back(value_to_json(v));
        wits.push_back(std::move(slot));
    }
    j["witnesses"] = std::move(wits);

    Json outs = Json::array();
    for (const auto& o : tx.outputs) {
        Json out;
        out["value"] = bag_to_json(o.value);
        out["script"] = script_to_json(o.script);
        Json args = Json::array();
        for (const auto& a : o.args) args.push_back(value_to_json(a));
        out["args"] = std::move(args);
        outs.push_back(std::move(out));
    }
    j["outputs"] = std::move(outs);

    j["abs_lock"] = tx.abs_lock;
    j["rel_locks"] = tx.rel_locks;
    return j;
}

Res<Transaction> transaction_from_json(const Json& j) {
    if (!j.is_object()) return json_error("transaction must be an object");
    Transaction tx;

    if (!j.contains("inputs") || !j["inputs"].is_array())
        return json_error("transaction needs an inputs array");
    for (const auto& in : j["inputs"]) {
        auto txid = hex_field(in, "txid");
        if (!txid) return txid.err();
        auto index = int_field(in, "index");
        if (!index) return index.err();
        if (*index < 0 || *index > 0xffffffffll) return json_error("input index out of range");
        tx.inputs.push_back(OutRef{txid.take(), static_cast<u32>(*index)});
    }

    if (!j.contains("witnesses") || !j["witnesses"].is_array())
        return json_error("transaction needs a witnesses array");
    for (const auto& w : j["witnesses"]) {
        if (!w.is_array()) return json_error("witness entry must be an array");
        std::vector<Value> slot;
        for (const auto& v : w) {
            auto val = value_from_json(v);
            if (!val) return val.err();
            slot.push_back(val.take());
        }
        tx.witnesses.push_back(std::move(slot));
    }

    if (!j.contains("outputs") || !j["outputs"].is_array())
        return json_error("transaction needs an outputs array");
    for (const auto& o : j["outputs"]) {
        if (!o.is_object()) return json_error("output must be an object");
        Output out;
        if (!o.contains("value")) return json_error("output needs a value bag");
        auto bag = bag_from_json(o["value"]);
        if (!bag) return bag.err();
        out.value = bag.take();
        if (!o.contains("script")) return json_error("output needs a script");
        auto scr = script_from_json(o["script"]);
        if (!scr) return scr.err();
        out.script = scr.take();
        if (!o.contains("args") || !o["args"].is_array())
            return json_error("output needs an args array");
        for (const auto& a : o["args"]) {
            auto val = value_from_json(a);
            if (!val) return val.err();
            out.args.push_back(val.take());
        }
        tx.outputs.push_back(std::move(out));
    }

    auto abs = int_field(j, "abs_lock");
    if (!abs) return abs.err();
    tx.abs_lock = *abs;

    if (!j.contains("rel_locks") || !j["rel_locks"].is_array())
        return json_error("transaction needs a rel_locks array");
    for (const auto& r : j["rel_locks"]) {
        if (!r.is_number_integer()) return json_error("rel_locks entries must be integers");
        tx.rel_locks.push_back(r.get<i64>());
    }
    return tx;
}

// ---------------------------------------------------------------------------
// Message and label JSON

Json message_to_json(const Message& m) {
    Json j;
    switch (m.kind) {
        case Message::Kind::Advert:
            j["kind"] = "advert";
            j["advert"] = advert_to_json(m.advert);
            break;
        case Message::Kind::TxEncoding:
            j["kind"] = "tx";
            j["tx"] = transaction_to_json(m.tx);
            break;
        case Message::Kind::Witness:
            j["kind"] = "witness";
            j["txid"] = to_hex(m.wit.txid);
            j["input"] = m.wit.input;
            j["signature"] = to_hex(m.wit.signature);
            j["slot"] = m.wit.slot;
            break;
        case Message::Kind::KeyAnnounce:
            j["kind"] = "key";
            j["participant"] = m.participant;
            j["pubkey"] = to_hex(m.pubkey);
            break;
        case Message::Kind::Opaque:
            j["kind"] = "opaque";
            j["blob"] = to_hex(m.blob);
            break;
    }
    return j;
}

Res<Message> message_from_json(const Json& j) {
    if (!j.is_object()) return json_error("message must be an object");
    auto kind = string_field(j, "kind");
    if (!kind) return kind.err();
    Message m;
    if (*kind == "advert") {
        m.kind = Message::Kind::Advert;
        if (!j.contains("advert")) return json_error("advert message needs an advert");
        auto a = advert_from_json(j["advert"]);
        if (!a) return a.err();
        m.advert = a.take();
    } else if (*kind == "tx") {
        m.kind = Message::Kind::TxEncoding;
        if (!j.contains("tx")) return json_error("tx message needs a transaction");
        auto t = transaction_from_json(j["tx"]);
        if (!t) return t.err();
        m.tx = t.take();
    } else if (*kind == "witness") {
        m.kind = Message::Kind::Witness;
        auto txid = hex_field(j, "txid");
        if (!txid) return txid.err();
        m.wit.txid = txid.take();
        auto input = int_field(j, "input");
        if (!input) return input.err();
        m.wit.input = *input;
        auto sig = hex_field(j, "signature");
        if (!sig) return sig.err();
        m.wit.signature = sig.take();
        auto slot = int_field(j, "slot");
        if (!slot) return slot.err();
        m.wit.slot = *slot;
    } else if (*kind == "key") {
        m.kind = Message::Kind::KeyAnnounce;
        auto who = string_field(j, "participant");
        if (!who) return who.err();
        m.participant = who.take();
        auto pk = hex_field(j, "pubkey");
        if (!pk) return pk.err();
        m.pubkey = pk.take();
    } else if (*kind == "opaque") {
        m.kind = Message::Kind::Opaque;
        auto blob = hex_field(j, "blob");
        if (!blob) return blob.err();
        m.blob = blob.take();
    } else {
        return json_error("unknown message kind " + *kind);
    }
    return m;
}

Json complabel_to_json(const CompLabel& l) {
    Json j;
    switch (l.kind) {
        case CompLabel::Kind::Tx:
            j["kind"] = "tx";
            j["tx"] = transaction_to_json(l.tx);
            break;
        case CompLabel::Kind::Delay:
            j["kind"] = "delay";
            j["delta"] = l.delta;
            break;
        case CompLabel::Kind::Broadcast:
            j["kind"] = "broadcast";
            j["sender"] = l.sender;
            j["message"] = message_to_json(l.message);
            break;
    }
    return j;
}

Res<CompLabel> complabel_from_json(const Json& j) {
    if (!j.is_object()) return json_error("label must be an object");
    auto kind = string_field(j, "kind");
    if (!kind) return kind.err();
    CompLabel l;
    if (*kind == "tx") {
        l.kind = CompLabel::Kind::Tx;
        if (!j.contains("tx")) return json_error("tx label needs a transaction");
        auto t = transaction_from_json(j["tx"]);
        if (!t) return t.err();
        l.tx = t.take();
    } else if (*kind == "delay") {
        l.kind = CompLabel::Kind::Delay;
        auto d = int_field(j, "delta");
        if (!d) return d.err();
        l.delta = *d;
    } else if (*kind == "broadcast") {
        l.kind = CompLabel::Kind::Broadcast;
        auto s = string_field(j, "sender");
        if (!s) return s.err();
        l.sender = s.take();
        if (!j.contains("message")) return json_error("broadcast label needs a message");
        auto m = message_from_json(j["message"]);
        if (!m) return m.err();
        l.message = m.take();
    } else {
        return json_error("unknown label kind " + *kind);
    }
    return l;
}

Json comprun_to_json(const ComputationalRun& r) {
    Json labels = Json::array();
    for (const auto& l : r.labels) labels.push_back(complabel_to_json(l));
    return Json{{"labels", std::move(labels)}};
}

Res<ComputationalRun> comprun_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("labels") || !j["labels"].is_array())
        return json_error("run must be an object with a labels array");
    ComputationalRun r;
    for (const auto& l : j["labels"]) {
        auto lab = complabel_from_json(l);
        if (!lab) return lab.err();
        r.labels.push_back(lab.take());
    }
    return r;
}

} // namespace illum
