// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/chain.hpp"

#include <set>
#include <sstream>

namespace illum {

namespace {

std::optional<Value> fail() { return std::nullopt; }

std::optional<i64> eval_int(const ScriptPtr& s, const ScriptEnv& env) {
    auto v = eval_script(s, env);
    if (!v || !v->is_int()) return std::nullopt;
    return v->as_int();
}

Value arg_list(const Output& o) {
    return Value::list(o.args);
}

} // namespace

std::optional<Value> eval_script(const ScriptPtr& s, const ScriptEnv& env) {
    switch (s->kind) {
        case Script::Kind::Const:
            return s->value;
        case Script::Kind::Add:
        case Script::Kind::Sub: {
            auto a = eval_script(s->kids[0], env);
            auto b = eval_script(s->kids[1], env);
            if (!a || !b) return fail();
            const bool adding = s->kind == Script::Kind::Add;
            if (a->is_int() && b->is_int()) {
                i64 r;
                bool over = adding ? __builtin_add_overflow(a->as_int(), b->as_int(), &r)
                                   : __builtin_sub_overflow(a->as_int(), b->as_int(), &r);
                if (over) return fail();
                return Value::of_int(r);
            }
            if (a->is_bag() && b->is_bag()) {
                Bag r;
                bool ok = adding ? Bag::add(a->as_bag(), b->as_bag(), r)
                                 : Bag::sub(a->as_bag(), b->as_bag(), r);
                if (!ok) return fail();
                return Value::bag(r);
            }
            return fail();
        }
        case Script::Kind::Eq: {
            auto a = eval_script(s->kids[0], env);
            auto b = eval_script(s->kids[1], env);
            if (!a || !b) return fail();
            if (a->kind() != b->kind()) return fail();
            return Value::of_bool(*a == *b);
        }
        case Script::Kind::Lt: {
            auto a = eval_script(s->kids[0], env);
            auto b = eval_script(s->kids[1], env);
            if (!a || !b || !a->is_int() || !b->is_int()) return fail();
            return Value::of_bool(a->as_int() < b->as_int());
        }
        case Script::Kind::Elem: {
            auto list = eval_script(s->kids[0], env);
            auto n = eval_int(s->kids[1], env);
            if (!list || !list->is_list() || !n) return fail();
            const auto& items = list->list_items();
            if (*n < 1 || static_cast<u64>(*n) > items.size()) return fail();
            return items[static_cast<std::size_t>(*n - 1)];
        }
        case Script::Kind::Rtxw: {
            if (env.in >= env.red->witnesses.size()) return fail();
            return Value::list(env.red->witnesses[env.in]);
        }
        case Script::Kind::Size: {
            auto v = eval_script(s->kids[0], env);
            if (!v) return fail();
            if (v->is_map()) return Value::of_int(static_cast<i64>(v->map_entries().size()));
            if (v->is_list()) return Value::of_int(static_cast<i64>(v->list_items().size()));
            if (v->is_bytes()) return Value::of_int(static_cast<i64>(v->raw_bytes().size()));
            return fail();
        }
        case Script::Kind::Hash: {
            auto v = eval_script(s->kids[0], env);
            if (!v) return fail();
            return Value::of_int(value_hash64(*v));
        }
        case Script::Kind::If: {
            auto c = eval_script(s->kids[0], env);
            if (!c || !c->is_bool()) return fail();
            return eval_script(c->as_bool() ? s->kids[1] : s->kids[2], env);
        }
        case Script::Kind::VerSig: {
            auto key = eval_script(s->kids[0], env);
            auto sig = eval_script(s->kids[1], env);
            if (!key || !sig || !key->is_bytes() || !sig->is_bytes()) return fail();
            return Value::of_bool(verify_tx(*env.red, sig->raw_bytes(), key->raw_bytes()));
        }
        case Script::Kind::AbsAfter: {
            auto t = eval_int(s->kids[0], env);
            if (!t) return fail();
            if (env.red->abs_lock < *t) return fail();
            return eval_script(s->kids[1], env);
        }
        case Script::Kind::RelAfter: {
            auto d = eval_int(s->kids[0], env);
            if (!d) return fail();
            if (env.in >= env.red->rel_locks.size()) return fail();
            if (env.red->rel_locks[env.in] < *d) return fail();
            return eval_script(s->kids[1], env);
        }
        case Script::Kind::CtxField: {
            const auto& out = env.prev->outputs[env.prev_out];
            return s->field == Script::Field::Arg ? arg_list(out) : Value::bag(out.value);
        }
        case Script::Kind::RtxField: {
            auto n = eval_int(s->kids[0], env);
            if (!n || *n < 1 || static_cast<u64>(*n) > env.red->outputs.size()) return fail();
            const auto& out = env.red->outputs[static_cast<std::size_t>(*n - 1)];
            return s->field == Script::Field::Arg ? arg_list(out) : Value::bag(out.value);
        }
        case Script::Kind::InIdx:
            return Value::of_int(static_cast<i64>(env.in) + 1);
        case Script::Kind::InLenCtx:
            return Value::of_int(static_cast<i64>(env.prev->inputs.size()));
        case Script::Kind::InLenRtx:
            return Value::of_int(static_cast<i64>(env.red->inputs.size()));
        case Script::Kind::OutLenCtx:
            return Value::of_int(static_cast<i64>(env.prev->outputs.size()));
        case Script::Kind::OutLenRtx:
            return Value::of_int(static_cast<i64>(env.red->outputs.size()));
        case Script::Kind::VerScr: {
            auto n = eval_int(s->kids[0], env);
            if (!n || *n < 1 || static_cast<u64>(*n) > env.red->outputs.size()) return fail();
            const auto& out = env.red->outputs[static_cast<std::size_t>(*n - 1)];
            return Value::of_bool(script_equal(out.script, s->inner));
        }
        case Script::Kind::VerRec: {
            auto n = eval_int(s->kids[0], env);
            if (!n || *n < 1 || static_cast<u64>(*n) > env.red->outputs.size()) return fail();
            const auto& out = env.red->outputs[static_cast<std::size_t>(*n - 1)];
            return Value::of_bool(script_equal(out.script, env.prev->outputs[env.prev_out].script));
        }
        case Script::Kind::MapGet: {
            auto m = eval_script(s->kids[0], env);
            auto k = eval_script(s->kids[1], env);
            if (!m || !k || !m->is_map()) return fail();
            auto hit = m->map_get(*k);
            if (!hit) return fail();
            return *hit;
        }
        case Script::Kind::MapPut: {
            auto m = eval_script(s->kids[0], env);
            auto k = eval_script(s->kids[1], env);
            auto v = eval_script(s->kids[2], env);
            if (!m || !k || !v || !m->is_map()) return fail();
            return m->map_put(*k, *v);
        }
        case Script::Kind::KeyOf: {
            auto p = eval_script(s->kids[0], env);
            if (!p || !p->is_part() || p->is_null_part() || env.keys == nullptr) return fail();
            auto it = env.keys->find(p->part_name());
            if (it == env.keys->end()) return fail();
            return Value::bytes(it->second);
        }
        case Script::Kind::BagOf: {
            auto amount = eval_int(s->kids[0], env);
            if (!amount || *amount < 0) return fail();
            return Value::bag(Bag::single(s->token, *amount));
        }
    }
    return fail();
}

bool can_redeem(const Transaction& prev, std::size_t out, i64 t_prev,
                const Transaction& red, std::size_t in, i64 t_red,
                const KeyDirectory& keys) {
    if (in >= red.inputs.size() || out >= prev.outputs.size()) return false;
    if (in >= red.witnesses.size() || in >= red.rel_locks.size()) return false;
    if (red.inputs[in].txid != prev.id() || red.inputs[in].index != out) return false;
    if (t_red < red.abs_lock) return false;
    if (t_red - t_prev < red.rel_locks[in]) return false;
    ScriptEnv env{&prev, out, &red, in, &keys};
    auto v = eval_script(prev.outputs[out].script, env);
    return v && *v == Value::of_bool(true);
}

const ChainEntry* Chain::find_tx(const std::string& txid) const {
    for (const auto& e : entries)
        if (e.txid == txid) return &e;
    return nullptr;
}

const Output* Chain::resolve(const OutRef& ref) const {
    const ChainEntry* e = find_tx(ref.txid);
    if (e == nullptr || ref.index >= e->tx.outputs.size()) return nullptr;
    return &e->tx.outputs[ref.index];
}

bool Chain::is_spent(const OutRef& ref) const {
    for (const auto& e : entries)
        for (const auto& in : e.tx.inputs)
            if (in == ref) return true;
    return false;
}

Res<Chain> chain_append(const Chain& chain, const Transaction& tx, i64 time) {
    if (!tx.well_formed())
        return Error{"Malformed", "transaction shape invariant violated"};
    if (chain.entries.empty()) {
        if (!tx.is_coinbase() || time != 0)
            return Error{"BadGenesis", "chain must start with a coinbase at time 0"};
    } else {
        if (time < chain.now())
            return Error{"TimeRegression", "timestamps must be nondecreasing"};
        if (tx.is_coinbase())
            return Error{"SecondCoinbase", "only the first transaction may be a coinbase"};
    }

    Bag in_total;
    std::set<OutRef> used;
    for (std::size_t k = 0; k < tx.inputs.size(); ++k) {
        const OutRef& ref = tx.inputs[k];
        const ChainEntry* prev = chain.find_tx(ref.txid);
        if (prev == nullptr || ref.index >= prev->tx.outputs.size())
            return Error{"MissingOutput", "input " + std::to_string(k) + " references " + ref.str()};
        if (chain.is_spent(ref) || !used.insert(ref).second)
            return Error{"DoubleSpend", "input " + std::to_string(k) + " respends " + ref.str()};
        if (time < tx.abs_lock)
            return Error{"TimelockViolated", "absolute lock " + std::to_string(tx.abs_lock) +
                                                 " not reached at " + std::to_string(time)};
        if (time - prev->time < tx.rel_locks[k])
            return Error{"TimelockViolated", "relative lock " + std::to_string(tx.rel_locks[k]) +
                                                 " on input " + std::to_string(k) +
                                                 " not reached at " + std::to_string(time)};
        const Output& out = prev->tx.outputs[ref.index];
        ScriptEnv env{&prev->tx, ref.index, &tx, k, &chain.keys};
        auto v = eval_script(out.script, env);
        if (!v || *v != Value::of_bool(true))
            return Error{"ScriptFailed", "input " + std::to_string(k) + " spending " + ref.str() +
                                             (v ? ": script evaluated to " + v->str()
                                                : ": script evaluation failed")};
        if (!Bag::add(in_total, out.value, in_total))
            return Error{"ValueCreated", "input value overflow"};
    }

    if (!tx.is_coinbase()) {
        Bag out_total;
        for (const auto& o : tx.outputs)
            if (!Bag::add(out_total, o.value, out_total))
                return Error{"ValueCreated", "output value overflow"};
        if (!in_total.covers(out_total))
            return Error{"ValueCreated", "outputs " + out_total.str() + " exceed inputs " +
                                             in_total.str()};
    }

    Chain next = chain;
    next.entries.push_back(ChainEntry{tx, tx.id(), time});
    return next;
}

std::vector<UtxoEntry> utxo_set(const Chain& chain) {
    std::set<OutRef> spent;
    for (const auto& e : chain.entries)
        for (const auto& in : e.tx.inputs) spent.insert(in);
    std::vector<UtxoEntry> out;
    for (const auto& e : chain.entries) {
        for (u32 i = 0; i < e.tx.outputs.size(); ++i) {
            OutRef ref{e.txid, i};
            if (spent.count(ref) == 0) out.push_back(UtxoEntry{ref, e.tx.outputs[i]});
        }
    }
    return out;
}

namespace {

std::string hex_of(const std::string& raw) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(raw.size() * 2);
    for (unsigned char c : raw) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

} // namespace

Json output_to_json(const Output& o) {
    Json args = Json::array();
    for (const auto& a : o.args) args.push_back(value_to_json(a));
    return Json{{"value", bag_to_json(o.value)},
                {"script", script_str(o.script)},
                {"args", std::move(args)}};
}

Json tx_to_json(const Transaction& tx) {
    Json inputs = Json::array();
    for (const auto& in : tx.inputs)
        inputs.push_back(Json{{"txid", hex_of(in.txid)}, {"index", in.index}});
    Json wits = Json::array();
    for (const auto& wit : tx.witnesses) {
        Json one = Json::array();
        for (const auto& v : wit) one.push_back(value_to_json(v));
        wits.push_back(std::move(one));
    }
    Json outs = Json::array();
    for (const auto& o : tx.outputs) outs.push_back(output_to_json(o));
    return Json{{"id", hex_of(tx.id())},      {"inputs", std::move(inputs)},
                {"witnesses", std::move(wits)}, {"outputs", std::move(outs)},
                {"absLock", tx.abs_lock},     {"relLocks", tx.rel_locks}};
}

Json chain_to_json(const Chain& chain) {
    Json keys = Json::object();
    for (const auto& [name, pub] : chain.keys) keys[name] = hex_of(pub);
    Json entries = Json::array();
    for (const auto& e : chain.entries)
        entries.push_back(Json{{"time", e.time}, {"tx", tx_to_json(e.tx)}});
    return Json{{"keys", std::move(keys)}, {"entries", std::move(entries)}};
}

} // namespace illum
