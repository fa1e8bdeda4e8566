// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/reconstruct.hpp"

namespace illum {

namespace {

Error unclassifiable(const std::string& why) {
    return Error{"UnclassifiableTransaction", why};
}

// First argument of each output, the compiler's nonce slot. A padding zero
// keeps the list nonempty for output-free transactions; recompilation
// compares the results, so a lie here surfaces as a mismatch.
std::vector<i64> output_nonces(const Transaction& tx) {
    std::vector<i64> out;
    for (const auto& o : tx.outputs)
        out.push_back(!o.args.empty() && o.args[0].is_int() ? o.args[0].as_int() : 0);
    if (out.empty()) out.push_back(0);
    return out;
}

const ClauseDef* program_clause_by_hash(const Program& p, i64 h) {
    for (const auto& c : p.clauses)
        if (name_hash64(c.name) == h) return &c;
    return nullptr;
}

// Reads an Init advertisement back from a single-output transaction and
// recompiles it. Empty result means the transaction is not an Init build;
// that is not an error, it merely falls through to the destroy case.
std::optional<TxClass> try_init(const Transaction& tx,
                                const std::map<std::string, OutRef>& txout,
                                const KeyDirectory& key,
                                const Program& p,
                                const std::vector<ResolvedInput>& resolved,
                                const std::vector<std::string>& mapped_names,
                                const WField& w) {
    if (tx.outputs.size() != 1) return std::nullopt;
    const Output& o = tx.outputs[0];
    if (o.args.size() < 3 || !o.script) return std::nullopt;
    if (!o.args[0].is_int() || !o.args[1].is_int() || !o.args[2].is_int()) return std::nullopt;
    if (o.args[1].as_int() != 0) return std::nullopt;

    const ClauseDef* c = program_clause_by_hash(p, o.args[2].as_int());
    if (!c) return std::nullopt;
    if (o.args.size() != 3 + c->internals.size() + c->externals.size()) return std::nullopt;
    auto unit = compile_unit(p, c->name);
    if (!unit.ok() || !script_equal(o.script, unit->script)) return std::nullopt;

    Advertisement adv;
    adv.kind = Advertisement::Kind::Init;
    adv.complete = true;
    adv.clause = c->name;
    auto first = o.args.begin() + 3;
    adv.internals.assign(first, first + static_cast<long>(c->internals.size()));
    adv.externals.assign(first + static_cast<long>(c->internals.size()), o.args.end());
    adv.deposits = mapped_names;
    adv.w = w;
    adv.nonce = o.args[0].as_int();

    CompilerInputs ci{adv, txout, key, resolved, tx.abs_lock, tx.rel_locks, output_nonces(tx)};
    auto built = compile_advertisement(p, ci);
    if (!built.ok()) return std::nullopt;
    if (built->serialize_unsigned() != tx.serialize_unsigned()) return std::nullopt;

    TxClass out;
    out.kind = TxClass::Kind::Init;
    out.adv = std::move(adv);
    out.inputs = std::move(ci);
    return out;
}

} // namespace

Res<TxClass> classify_transaction(const Transaction& tx,
                                  const std::map<std::string, OutRef>& txout,
                                  const KeyDirectory& key,
                                  const Configuration& g,
                                  const Program& p,
                                  const OutputResolver& resolve) {
    std::map<OutRef, std::string> preimage;
    for (const auto& [name, ref] : txout) preimage[ref] = name;

    struct MappedIn {
        size_t pos;
        std::string name;
    };
    std::vector<MappedIn> mapped;
    std::vector<ResolvedInput> resolved;
    Bag extra_sum;
    bool any_extra = false;
    for (size_t i = 0; i < tx.inputs.size(); ++i) {
        const Output* o = resolve(tx.inputs[i]);
        if (!o) return Error{"UnresolvedInput", tx.inputs[i].str()};
        resolved.push_back({tx.inputs[i], *o});
        auto it = preimage.find(tx.inputs[i]);
        if (it != preimage.end()) {
            mapped.push_back({i, it->second});
        } else {
            any_extra = true;
            if (!Bag::add(extra_sum, o->value, extra_sum))
                return unclassifiable("untracked input values overflow");
        }
    }

    TxClass out;
    if (mapped.empty()) return out;

    const WField w = any_extra ? WField::of(extra_sum) : WField::of_star();
    std::vector<std::string> mapped_names;
    for (const auto& m : mapped) mapped_names.push_back(m.name);

    // A spent contract output forces the compiler-generated shape.
    const ContractTerm* parent = nullptr;
    size_t parent_pos = 0;
    std::string parent_name;
    for (const auto& m : mapped) {
        if (!g.find_contract(m.name)) continue;
        if (parent) return unclassifiable("two inputs spend tracked contracts");
        parent = g.find_contract(m.name);
        parent_pos = m.pos;
        parent_name = m.name;
    }

    if (parent) {
        if (parent_pos != 0)
            return unclassifiable("tracked contract spent by an input after the first");

        i64 j = 0;
        if (!tx.outputs.empty()) {
            const auto& args = tx.outputs[0].args;
            if (args.size() < 2 || !args[1].is_int())
                return unclassifiable("first output lacks a branch argument");
            j = args[1].as_int();
        } else {
            for (size_t b = 0; b < parent->process.size(); ++b) {
                if (!parent->process[b].is_call && parent->process[b].sends.empty()) {
                    j = static_cast<i64>(b) + 1;
                    break;
                }
            }
            if (j == 0) return unclassifiable("no branch pays out to zero outputs");
        }
        if (j < 1 || j > static_cast<i64>(parent->process.size()))
            return unclassifiable("branch argument out of range");

        Branch filled = parent->process[static_cast<size_t>(j - 1)];
        if (filled.is_call) {
            if (tx.outputs.size() != filled.calls.size())
                return unclassifiable("output count differs from the branch's callees");
            for (size_t i = 0; i < filled.calls.size(); ++i) {
                CallItem& c = filled.calls[i];
                const ClauseDef* callee = p.find(c.callee);
                if (!callee) return unclassifiable("branch calls an unknown clause");
                const size_t k = callee->internals.size();
                const size_t h = callee->externals.size();
                const auto& args = tx.outputs[i].args;
                if (args.size() != 3 + k + h)
                    return unclassifiable("output argument count differs from the callee's");
                for (size_t l = 0; l < h; ++l)
                    if (!c.externals[l]) c.externals[l] = Expr::cnst(args[3 + k + l]);
            }
        } else if (tx.outputs.size() != filled.sends.size()) {
            return unclassifiable("output count differs from the branch's recipients");
        }

        Advertisement adv;
        adv.kind = Advertisement::Kind::Continue;
        adv.complete = true;
        adv.branch = std::move(filled);
        adv.contract = parent_name;
        adv.branch_index = j;
        for (const auto& m : mapped)
            if (m.pos != parent_pos) adv.deposits.push_back(m.name);
        adv.w = w;
        auto nonces = output_nonces(tx);
        adv.nonce = nonces[0];

        CompilerInputs ci{adv, txout, key, std::move(resolved),
                          tx.abs_lock, tx.rel_locks, std::move(nonces)};
        auto built = compile_advertisement(p, ci);
        if (!built.ok())
            return unclassifiable("recompilation failed: " + built.err().code + ": " +
                                  built.err().detail);
        if (built->serialize_unsigned() != tx.serialize_unsigned())
            return unclassifiable("recompilation differs from the transaction");

        out.kind = TxClass::Kind::Continue;
        out.inputs = std::move(ci);
        out.adv = out.inputs.adv;
        return out;
    }

    // All tracked inputs are deposits: an Init build, or a plain burn.
    for (const auto& m : mapped)
        if (!g.find_deposit(m.name))
            return unclassifiable("spends tracked name " + m.name +
                                  " that is neither a live deposit nor a live contract");

    if (auto init = try_init(tx, txout, key, p, resolved, mapped_names, w))
        return std::move(*init);

    Advertisement adv;
    adv.kind = Advertisement::Kind::Destroy;
    adv.complete = true;
    adv.deposits = std::move(mapped_names);
    adv.w = w;
    adv.nonce = output_nonces(tx)[0];
    out.kind = TxClass::Kind::Destroy;
    out.adv = std::move(adv);
    return out;
}

} // namespace illum
