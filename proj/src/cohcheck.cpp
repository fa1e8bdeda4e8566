// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/coherence.hpp"

#include <set>

#include "illum/compile.hpp"
#include "illum/reconstruct.hpp"

namespace illum {

namespace {

// What an output must look like to count as a deposit on the chain: the
// canonical deposit script and the three bookkeeping arguments, with a
// real (non-Null) owner in the third slot.
struct DepositShape {
    std::string owner;
    Bag value;
};

std::optional<DepositShape> read_deposit_shape(const Output& o) {
    if (o.args.size() != 3) return std::nullopt;
    if (!o.args[0].is_int() || !o.args[1].is_int() || !o.args[2].is_part()) return std::nullopt;
    if (o.args[2].part_name().empty()) return std::nullopt;
    if (!script_equal(o.script, deposit_script())) return std::nullopt;
    return DepositShape{o.args[2].part_name(), o.value};
}

// A transaction whose every input spends a tracked live deposit and whose
// outputs re-encode them as one of the three deposit rewrites. Such a
// transaction is a deposit operation, never a destroy proposal.
struct OpShape {
    enum class Kind : u8 { None = 0, Join, Divide, Donate };

    Kind kind = Kind::None;
    std::string z1, z2;
    std::string owner; // owner of the spent deposits
    std::string donee; // Donate: owner of the rebuilt deposit
    Bag amount1, amount2;
};

// The walker shared by parsing and checking: it replays the computational
// run against the growing symbolic configuration, translating each label
// into at most one symbolic action. Parsing collects the actions; checking
// matches them against a given run and maps.
struct Walker {
    const Program& p;
    const SymbolicRun* rs = nullptr;      // checking only
    const CoherenceMaps* maps = nullptr;  // checking only

    Configuration g;
    Chain chain;
    KeyDirectory key;
    std::map<std::string, OutRef> txout;
    std::map<OutRef, std::string> ref2name;
    std::map<std::string, std::string> prev_tx;
    std::map<std::string, Advertisement> prev_adv; // unsigned txid -> proposal
    std::map<std::string, Transaction> seen_tx;    // unsigned txid -> encoding
    std::set<std::string> used_quads;              // txid | input | signer

    SymbolicRun out;   // parsing result
    size_t cursor = 0; // checking: next unmatched symbolic action
    size_t at_label = 0;

    std::optional<Error> error;
    std::optional<CounterExample> cex;

    Walker(const Program& prog) : p(prog) {}

    bool checking() const { return rs != nullptr; }

    bool fail(const std::string& code, const std::string& detail) {
        if (checking())
            cex = CounterExample{at_label, cursor, detail};
        else
            error = Error{code, "label " + std::to_string(at_label) + ": " + detail};
        return false;
    }

    // Records a derived action: parsing appends it, checking matches it
    // against the claimed run. The configuration advances either way.
    bool emit(const SymbolicAction& act, const StepOutcome& outcome) {
        if (checking()) {
            if (cursor >= rs->actions.size())
                return fail("InconsistentRun",
                            "computational step has no symbolic counterpart: " + act.str());
            if (!action_equal(rs->actions[cursor], act))
                return fail("InconsistentRun", "symbolic run has " + rs->actions[cursor].str() +
                                                   " where the chain implies " + act.str());
            ++cursor;
        } else {
            out.actions.push_back(act);
        }
        g = outcome.next;
        return true;
    }

    void add_mapping(const std::string& name, const OutRef& ref) {
        txout[name] = ref;
        ref2name[ref] = name;
    }

    OutputResolver resolver() const {
        return [this](const OutRef& ref) { return chain.resolve(ref); };
    }

    // Declared timelocks of an offered transaction, measured against the
    // current chain: a proposal only counts once appending it has become
    // possible timewise.
    bool qualifying(const Transaction& tx) const {
        if (tx.abs_lock > g.time) return false;
        if (tx.rel_locks.size() != tx.inputs.size()) return false;
        for (size_t j = 0; j < tx.inputs.size(); ++j) {
            const ChainEntry* e = chain.find_tx(tx.inputs[j].txid);
            if (!e) return false;
            if (tx.inputs[j].index >= e->tx.outputs.size()) return false;
            if (g.time - e->time < tx.rel_locks[j]) return false;
        }
        return true;
    }

    OpShape op_shape(const Transaction& tx) const {
        OpShape none;
        std::vector<const Deposit*> spent;
        for (const auto& in : tx.inputs) {
            auto it = ref2name.find(in);
            if (it == ref2name.end()) return none;
            const Deposit* d = g.find_deposit(it->second);
            if (!d) return none;
            spent.push_back(d);
        }
        if (spent.size() == 2 && tx.outputs.size() == 1) {
            auto o = read_deposit_shape(tx.outputs[0]);
            if (!o) return none;
            if (spent[0]->owner != spent[1]->owner || o->owner != spent[0]->owner) return none;
            if (spent[0]->name == spent[1]->name) return none;
            Bag total;
            if (!Bag::add(spent[0]->value, spent[1]->value, total)) return none;
            if (!(o->value == total)) return none;
            OpShape s;
            s.kind = OpShape::Kind::Join;
            s.z1 = spent[0]->name;
            s.z2 = spent[1]->name;
            s.owner = spent[0]->owner;
            return s;
        }
        if (spent.size() == 1 && tx.outputs.size() == 2) {
            auto o1 = read_deposit_shape(tx.outputs[0]);
            auto o2 = read_deposit_shape(tx.outputs[1]);
            if (!o1 || !o2) return none;
            if (o1->owner != spent[0]->owner || o2->owner != spent[0]->owner) return none;
            Bag total;
            if (!Bag::add(o1->value, o2->value, total)) return none;
            if (!(total == spent[0]->value)) return none;
            OpShape s;
            s.kind = OpShape::Kind::Divide;
            s.z1 = spent[0]->name;
            s.owner = spent[0]->owner;
            s.amount1 = o1->value;
            s.amount2 = o2->value;
            return s;
        }
        if (spent.size() == 1 && tx.outputs.size() == 1) {
            auto o = read_deposit_shape(tx.outputs[0]);
            if (!o) return none;
            if (!(o->value == spent[0]->value)) return none;
            OpShape s;
            s.kind = OpShape::Kind::Donate;
            s.z1 = spent[0]->name;
            s.owner = spent[0]->owner;
            s.donee = o->owner;
            return s;
        }
        return none;
    }

    // ------------------------------------------------------------------
    // Broadcast labels

    // An incomplete proposal travels with output tokens where the symbolic
    // names would be; a broadcast that translates and steps becomes a
    // proposal-message action, anything else is noise.
    bool on_advert_msg(const Advertisement& raw) {
        if (raw.complete) return true; // complete proposals travel as transactions
        Advertisement a = raw;
        for (auto& z : a.deposits) {
            auto ref = outref_of_token(z);
            if (!ref) return true;
            auto it = ref2name.find(*ref);
            if (it == ref2name.end()) return true;
            z = it->second;
        }
        if (a.kind == Advertisement::Kind::Continue) {
            auto ref = outref_of_token(a.contract);
            if (!ref) return true;
            auto it = ref2name.find(*ref);
            if (it == ref2name.end()) return true;
            a.contract = it->second;
        }
        SymbolicAction act;
        act.kind = SymbolicAction::Kind::Msg;
        act.adv = a;
        auto r = step(g, act, p);
        if (!r) return true; // repeat broadcast
        return emit(act, *r);
    }

    // A transaction encoding that spends tracked outputs, reads back as a
    // proposal, became appendable timewise and steps as an advertisement
    // registers; everything else is recorded for later witnesses and
    // otherwise ignored.
    bool on_tx_encoding(const Transaction& tx) {
        std::string uid = unsigned_txid(tx);
        seen_tx.emplace(uid, tx);
        if (prev_adv.count(uid)) return true; // re-broadcast
        if (!qualifying(tx)) return true;
        if (op_shape(tx).kind != OpShape::Kind::None) return true; // deposit rewrite
        auto cls = classify_transaction(tx, txout, key, g, p, resolver());
        if (!cls) return true;
        if (cls->kind == TxClass::Kind::Unrelated) return true;
        SymbolicAction act;
        act.kind = SymbolicAction::Kind::Adv;
        act.adv = cls->adv;
        auto r = step(g, act, p);
        if (!r) return true; // duplicate or no longer valid
        if (!emit(act, *r)) return false;
        prev_tx[cls->adv.serialize()] = uid;
        prev_adv[uid] = cls->adv;
        return true;
    }

    // A detached signature authorizes exactly one symbolic step, fixed by
    // the transaction it covers and the input it redeems. Only the first
    // stepping instance per (transaction, input, signer) counts.
    bool on_quad(const WitnessQuad& w) {
        auto it = seen_tx.find(w.txid);
        if (it == seen_tx.end()) return true;
        const Transaction& tx = it->second;
        if (w.input < 1 || w.input > static_cast<i64>(tx.inputs.size())) return true;
        if (w.slot < 1) return true;

        std::string signer;
        for (const auto& [who, pub] : key)
            if (verify_tx(tx, w.signature, pub)) {
                signer = who;
                break;
            }
        if (signer.empty()) return true;

        std::string dedup = to_hex(w.txid) + "#" + std::to_string(w.input) + "#" + signer;
        if (used_quads.count(dedup)) return true;
        size_t j = static_cast<size_t>(w.input);

        SymbolicAction act;
        auto reg = prev_adv.find(w.txid);
        if (reg != prev_adv.end()) {
            const Advertisement& f = reg->second;
            bool continuing = f.kind == Advertisement::Kind::Continue;
            if (continuing && j == 1) {
                auto parties = branch_auth_parties(f.branch);
                if (w.slot > static_cast<i64>(parties.size())) return true;
                if (parties[static_cast<size_t>(w.slot) - 1] != signer) return true;
                act.kind = SymbolicAction::Kind::AuthAct;
                act.adv = f;
                act.who = signer;
            } else {
                if (w.slot != 1) return true;
                size_t d = continuing ? j - 2 : j - 1;
                if (d >= f.deposits.size()) return true; // extra input, nothing to authorize
                act.kind = SymbolicAction::Kind::AuthIn;
                act.adv = f;
                act.who = signer;
                act.z1 = f.deposits[d];
            }
        } else {
            OpShape s = op_shape(tx);
            if (s.kind == OpShape::Kind::None || w.slot != 1) return true;
            switch (s.kind) {
                case OpShape::Kind::Join:
                    act.kind = SymbolicAction::Kind::AuthJoin;
                    act.who = signer;
                    act.z1 = s.z1;
                    act.z2 = s.z2;
                    act.pos = static_cast<i64>(j);
                    break;
                case OpShape::Kind::Divide:
                    act.kind = SymbolicAction::Kind::AuthDivide;
                    act.who = signer;
                    act.z1 = s.z1;
                    act.amount1 = s.amount1;
                    act.amount2 = s.amount2;
                    break;
                case OpShape::Kind::Donate:
                    act.kind = SymbolicAction::Kind::AuthDonate;
                    act.who = signer;
                    act.z1 = s.z1;
                    act.donee = s.donee;
                    break;
                case OpShape::Kind::None:
                    return true;
            }
        }
        auto r = step(g, act, p);
        if (!r) return true; // wrong signer, stale proposal, repeat
        if (!emit(act, *r)) return false;
        used_quads.insert(dedup);
        return true;
    }

    bool on_broadcast(const Message& m) {
        switch (m.kind) {
            case Message::Kind::KeyAnnounce:
            case Message::Kind::Opaque:
                return true;
            case Message::Kind::Advert:
                return on_advert_msg(m.advert);
            case Message::Kind::TxEncoding:
                return on_tx_encoding(m.tx);
            case Message::Kind::Witness:
                return on_quad(m.wit);
        }
        die("on_broadcast unreachable");
    }

    // ------------------------------------------------------------------
    // Append and delay labels

    bool on_delay(i64 delta) {
        SymbolicAction act;
        act.kind = SymbolicAction::Kind::Delay;
        act.delta = delta;
        auto r = step(g, act, p);
        if (!r) return fail("InconsistentRun", "delay of " + std::to_string(delta));
        return emit(act, *r);
    }

    bool on_append(const Transaction& tx) {
        auto next = chain_append(chain, tx, g.time);
        if (!next)
            return fail("InconsistentRun",
                        "chain rejects transaction: " + next.err().code + ": " +
                            next.err().detail);

        bool any_mapped = false;
        for (const auto& in : tx.inputs)
            if (ref2name.count(in)) {
                any_mapped = true;
                break;
            }
        if (!any_mapped) { // spends nothing tracked
            chain = next.take();
            return true;
        }

        std::string uid = unsigned_txid(tx);
        auto reg = prev_adv.find(uid);
        if (reg != prev_adv.end()) {
            const Advertisement& f = reg->second;
            SymbolicAction act;
            act.adv = f;
            switch (f.kind) {
                case Advertisement::Kind::Init:
                    act.kind = SymbolicAction::Kind::Init;
                    break;
                case Advertisement::Kind::Continue:
                    act.kind = f.branch.is_call ? SymbolicAction::Kind::Call
                                                : SymbolicAction::Kind::Send;
                    break;
                case Advertisement::Kind::Destroy:
                    act.kind = SymbolicAction::Kind::Destroy;
                    break;
            }
            auto r = step(g, act, p);
            if (!r)
                return fail("InconsistentRun", "proposal realized without its premises: " +
                                                   r.err().code + ": " + r.err().detail);
            if (r->created.size() > tx.outputs.size())
                return fail("InconsistentRun", "fewer outputs than created terms");
            chain = next.take();
            std::string full = tx.id();
            if (!emit(act, *r)) return false;
            for (size_t i = 0; i < r->created.size(); ++i)
                add_mapping(r->created[i], OutRef{full, static_cast<u32>(i)});
            return true;
        }

        OpShape s = op_shape(tx);
        if (s.kind != OpShape::Kind::None) {
            SymbolicAction act;
            switch (s.kind) {
                case OpShape::Kind::Join:
                    act.kind = SymbolicAction::Kind::Join;
                    act.z1 = s.z1;
                    act.z2 = s.z2;
                    break;
                case OpShape::Kind::Divide:
                    act.kind = SymbolicAction::Kind::Divide;
                    act.z1 = s.z1;
                    act.amount1 = s.amount1;
                    act.amount2 = s.amount2;
                    break;
                case OpShape::Kind::Donate:
                    act.kind = SymbolicAction::Kind::Donate;
                    act.z1 = s.z1;
                    act.donee = s.donee;
                    break;
                case OpShape::Kind::None:
                    die("op_shape vanished");
            }
            auto r = step(g, act, p);
            if (!r)
                return fail("InconsistentRun", "deposit rewrite applied without authorization: " +
                                                   r.err().code + ": " + r.err().detail);
            chain = next.take();
            std::string full = tx.id();
            if (!emit(act, *r)) return false;
            for (size_t i = 0; i < r->created.size(); ++i)
                add_mapping(r->created[i], OutRef{full, static_cast<u32>(i)});
            return true;
        }

        // A spend of tracked outputs that was never proposed. If it reads
        // back as a builder product the run merely skipped the broadcast;
        // if not, a script admitted a spend the builder cannot produce.
        auto cls = classify_transaction(tx, txout, key, g, p, resolver());
        if (!cls || cls->kind == TxClass::Kind::Unrelated)
            return fail("UnclassifiableTransaction",
                        "appended spend of tracked outputs has no builder reading" +
                            (cls ? std::string() : ": " + cls.err().detail));
        return fail("InconsistentRun", "appended spend of tracked outputs was never broadcast");
    }

    // ------------------------------------------------------------------
    // Prefix and driver

    bool build_initial_parsing() {
        const Transaction& cb = chain.entries[0].tx;
        const std::string& cbid = chain.entries[0].txid;
        for (u32 k = 0; k < cb.outputs.size(); ++k) {
            auto shape = read_deposit_shape(cb.outputs[k]);
            if (!shape) continue;
            if (!key.count(shape->owner)) continue;
            std::string z = g.fresh_name();
            g.deposits.push_back(Deposit{z, shape->owner, shape->value});
            add_mapping(z, OutRef{cbid, k});
        }
        out.initial = g;
        return true;
    }

    bool build_initial_checking() {
        const Configuration& g0 = rs->initial;
        if (g0.time != 0 || !g0.contracts.empty() || !g0.adverts.empty() || !g0.auths.empty() ||
            !(g0.destroyed == Bag{}))
            return fail("InconsistentRun", "initial configuration is not a base configuration");
        if (maps->key != key)
            return fail("InconsistentRun", "key map does not match the announcements");
        const std::string& cbid = chain.entries[0].txid;
        const Transaction& cb = chain.entries[0].tx;
        std::set<OutRef> used;
        for (const Deposit& z : g0.deposits) {
            auto it = maps->txout.find(z.name);
            if (it == maps->txout.end())
                return fail("InconsistentRun", "initial deposit " + z.name + " is unmapped");
            const OutRef& ref = it->second;
            if (ref.txid != cbid || ref.index >= cb.outputs.size())
                return fail("InconsistentRun",
                            "initial deposit " + z.name + " maps outside the coinbase");
            if (!used.insert(ref).second)
                return fail("InconsistentRun", "two initial deposits share one output");
            auto shape = read_deposit_shape(cb.outputs[ref.index]);
            if (!shape || shape->owner != z.owner || !(shape->value == z.value))
                return fail("InconsistentRun",
                            "coinbase output does not carry deposit " + z.name);
            add_mapping(z.name, ref);
        }
        g = g0;
        return true;
    }

    bool finish() {
        if (!checking()) return true;
        at_label = static_cast<size_t>(-1);
        if (cursor < rs->actions.size())
            return fail("InconsistentRun",
                        "symbolic action has no computational counterpart: " +
                            rs->actions[cursor].str());
        if (maps->txout != txout) return fail("InconsistentRun", "output map does not match");
        if (maps->prev_tx != prev_tx)
            return fail("InconsistentRun", "proposal map does not match");
        return true;
    }

    bool run(const ComputationalRun& rc) {
        at_label = 0;
        if (rc.labels.empty() || rc.labels[0].kind != CompLabel::Kind::Tx ||
            !rc.labels[0].tx.is_coinbase())
            return fail("InconsistentRun", "run does not begin with a coinbase transaction");

        size_t i = 1;
        for (; i < rc.labels.size(); ++i) {
            const CompLabel& l = rc.labels[i];
            if (l.kind != CompLabel::Kind::Broadcast ||
                l.message.kind != Message::Kind::KeyAnnounce)
                break;
            at_label = i;
            const std::string& who = l.message.participant;
            auto it = key.find(who);
            if (it != key.end() && it->second != l.message.pubkey)
                return fail("InconsistentRun", "conflicting key announcement for " + who);
            key[who] = l.message.pubkey;
        }
        if (key.empty())
            return fail("InconsistentRun", "no key announcements after the coinbase");

        chain.keys = key;
        auto genesis = chain_append(chain, rc.labels[0].tx, 0);
        if (!genesis) {
            at_label = 0;
            return fail("InconsistentRun", "coinbase rejected: " + genesis.err().detail);
        }
        chain = genesis.take();

        if (checking() ? !build_initial_checking() : !build_initial_parsing()) return false;

        for (; i < rc.labels.size(); ++i) {
            at_label = i;
            const CompLabel& l = rc.labels[i];
            bool ok = true;
            switch (l.kind) {
                case CompLabel::Kind::Tx:
                    ok = on_append(l.tx);
                    break;
                case CompLabel::Kind::Delay:
                    ok = on_delay(l.delta);
                    break;
                case CompLabel::Kind::Broadcast:
                    ok = on_broadcast(l.message);
                    break;
            }
            if (!ok) return false;
        }
        return finish();
    }
};

} // namespace

Res<ParsedRun> parse_run(const ComputationalRun& rc, const Program& p) {
    Walker w(p);
    if (!w.run(rc)) return *w.error;
    ParsedRun out;
    out.run = std::move(w.out);
    out.maps.txout = std::move(w.txout);
    out.maps.key = std::move(w.key);
    out.maps.prev_tx = std::move(w.prev_tx);
    return out;
}

std::optional<CounterExample> check_coherence(const SymbolicRun& rs, const ComputationalRun& rc,
                                              const CoherenceMaps& maps, const Program& p) {
    Walker w(p);
    w.rs = &rs;
    w.maps = &maps;
    if (!w.run(rc)) return w.cex;
    return std::nullopt;
}

std::optional<BalanceViolation> check_balance_preservation(const SymbolicRun& rs,
                                                           const ComputationalRun& rc,
                                                           const CoherenceMaps& maps,
                                                           const Program& p) {
    auto fin = replay_run(rs, p);
    if (!fin)
        return BalanceViolation{"symbolic run does not replay: " + fin.err().code + ": " +
                                fin.err().detail};
    auto chain = run_chain(rc, maps.key);
    if (!chain)
        return BalanceViolation{"computational run does not append: " + chain.err().code + ": " +
                                chain.err().detail};

    auto utxo = utxo_set(*chain);
    std::map<OutRef, const Output*> unspent;
    for (const auto& e : utxo) unspent[e.ref] = &e.out;

    auto live_term = [&](const std::string& name,
                         const Bag& bag) -> std::optional<BalanceViolation> {
        auto it = maps.txout.find(name);
        if (it == maps.txout.end()) return BalanceViolation{name + " has no mapped output"};
        auto u = unspent.find(it->second);
        if (u == unspent.end())
            return BalanceViolation{name + " is live but its output is spent"};
        if (!(u->second->value == bag))
            return BalanceViolation{name + " holds " + bag.str() + " but its output carries " +
                                    u->second->value.str()};
        return std::nullopt;
    };

    for (const auto& z : fin->deposits)
        if (auto v = live_term(z.name, z.value)) return v;
    for (const auto& x : fin->contracts)
        if (auto v = live_term(x.name, x.balance)) return v;

    std::set<OutRef> mapped;
    for (const auto& [name, ref] : maps.txout) {
        mapped.insert(ref);
        if (!chain->resolve(ref))
            return BalanceViolation{name + " maps to a position not on the chain"};
        bool live = fin->find_deposit(name) || fin->find_contract(name);
        if (!live && unspent.count(ref))
            return BalanceViolation{name + " was consumed but its output is unspent"};
    }

    Bag loose;
    for (const auto& e : utxo) {
        if (mapped.count(e.ref)) continue;
        Bag next;
        if (!Bag::add(loose, e.out.value, next))
            return BalanceViolation{"unmapped unspent value overflows"};
        loose = next;
    }
    if (!fin->destroyed.covers(loose))
        return BalanceViolation{"destroyed counter " + fin->destroyed.str() +
                                " does not cover unmapped unspent value " + loose.str()};
    return std::nullopt;
}

} // namespace illum
