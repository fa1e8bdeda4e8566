// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/compile.hpp"

#include <set>

#include "illum/semantics.hpp"

namespace illum {

namespace {

constexpr i64 kArgOwner = 3; // deposit outputs store the owner here

// Positions of a clause's parameters inside a compiled output's argument
// list: internals first, then externals, both in declaration order.
std::map<std::string, i64> param_positions(const ClauseDef& c) {
    std::map<std::string, i64> pos;
    i64 at = kArgFirstParam;
    for (const auto& [name, ty] : c.internals) pos[name] = at++;
    for (const auto& [name, ty] : c.externals) pos[name] = at++;
    return pos;
}

// Rewrites a clause expression into a script over one argument list.
// Parameters become argument references: into the spent output when `out`
// is absent, into output `out` of the redeeming transaction otherwise.
ScriptPtr expr_script(const ExprPtr& e, const std::map<std::string, i64>& pos,
                      std::optional<i64> out) {
    auto kid = [&](size_t i) { return expr_script(e->kids[i], pos, out); };
    switch (e->kind) {
    case Expr::Kind::Const: return Script::cnst(e->value);
    case Expr::Kind::Param: {
        auto it = pos.find(e->name);
        if (it == pos.end()) die("unbound parameter in compiled clause: " + e->name);
        if (out) return Script::rtx_arg_n(*out, it->second);
        return Script::ctx_arg_n(it->second);
    }
    case Expr::Kind::Add: return Script::add(kid(0), kid(1));
    case Expr::Kind::Sub: return Script::sub(kid(0), kid(1));
    case Expr::Kind::Eq: return Script::eq(kid(0), kid(1));
    case Expr::Kind::Lt: return Script::lt(kid(0), kid(1));
    case Expr::Kind::Not: return Script::negate(kid(0));
    case Expr::Kind::And: return Script::conj(kid(0), kid(1));
    case Expr::Kind::Or: return Script::disj(kid(0), kid(1));
    case Expr::Kind::If: return Script::cond(kid(0), kid(1), kid(2));
    case Expr::Kind::Size: return Script::size(kid(0));
    case Expr::Kind::Hash: return Script::hash(kid(0));
    case Expr::Kind::MapGet: return Script::map_get(kid(0), kid(1));
    case Expr::Kind::MapPut: return Script::map_put(kid(0), kid(1), kid(2));
    }
    die("unhandled expression kind");
}

bool trivially_true(const ExprPtr& g) {
    return g && g->kind == Expr::Kind::Const && g->value == Value::of_bool(true);
}

// The funding precondition of `callee`, read off the arguments of output
// `out` of the redeeming transaction. A list of amounts adds up to one
// bag; an empty list is the empty bag.
ScriptPtr funding_script(const ClauseDef& callee, i64 out) {
    if (callee.funding.empty()) return Script::cnst(Value::bag(Bag{}));
    auto pos = param_positions(callee);
    ScriptPtr acc;
    for (const auto& f : callee.funding) {
        auto term = Script::bag_of(expr_script(f.amount, pos, out), f.token);
        acc = acc ? Script::add(std::move(acc), std::move(term)) : std::move(term);
    }
    return acc;
}

// Checks forced on output `i` of the redeeming transaction when the branch
// pays a recipient: a three-argument deposit output under the canonical
// deposit script, owned by the advertised recipient, holding the advertised
// amount.
ScriptPtr send_block(const SendItem& s, const std::map<std::string, i64>& cpos, i64 i) {
    return script_all({
        Script::eq(Script::size(Script::rtx_arg(Script::num(i))), Script::num(3)),
        Script::verscr(deposit_script(), Script::num(i)),
        Script::eq(Script::rtx_arg_n(i, kArgOwner), expr_script(s.recipient, cpos, {})),
        Script::eq(Script::rtx_val(Script::num(i)),
                   Script::bag_of(expr_script(s.amount, cpos, {}), s.token)),
    });
}

// Checks forced on output `i` of the redeeming transaction when the branch
// calls a clause: the covenant preserving this script, the argument count,
// the callee name, the caller-determined internal arguments, any externals
// the caller pinned, the funding value, and the callee's guard, the last
// two read off the new output's own arguments.
ScriptPtr call_block(const Program& p, const CallItem& c,
                     const std::map<std::string, i64>& cpos, i64 i) {
    const ClauseDef* callee = p.find(c.callee);
    if (!callee) die("call target vanished during compilation: " + c.callee);
    const i64 k = static_cast<i64>(callee->internals.size());
    const i64 h = static_cast<i64>(callee->externals.size());

    std::vector<ScriptPtr> terms;
    terms.push_back(Script::verrec(Script::num(i)));
    terms.push_back(Script::eq(Script::size(Script::rtx_arg(Script::num(i))), Script::num(3 + k + h)));
    terms.push_back(Script::eq(Script::rtx_arg_n(i, kArgName), Script::num(name_hash64(c.callee))));
    for (i64 l = 0; l < k; ++l)
        terms.push_back(Script::eq(Script::rtx_arg_n(i, kArgFirstParam + l),
                                   expr_script(c.internals[static_cast<size_t>(l)], cpos, {})));
    for (i64 l = 0; l < h; ++l) {
        const auto& slot = c.externals[static_cast<size_t>(l)];
        if (!slot) continue; // placeholder: the redeemer chooses
        terms.push_back(Script::eq(Script::rtx_arg_n(i, kArgFirstParam + k + l),
                                   expr_script(*slot, cpos, {})));
    }
    terms.push_back(Script::eq(Script::rtx_val(Script::num(i)), funding_script(*callee, i)));
    if (!trivially_true(callee->guard))
        terms.push_back(expr_script(callee->guard, param_positions(*callee), i));
    return script_all(terms);
}

// Redeeming transactions taking branch j must carry exactly one output per
// callee or recipient, each tagged with j in its branch slot.
ScriptPtr branch_cond(const Branch& b, i64 j) {
    const i64 n = static_cast<i64>(b.is_call ? b.calls.size() : b.sends.size());
    std::vector<ScriptPtr> terms;
    terms.push_back(Script::eq(Script::outlen_rtx(), Script::num(n)));
    for (i64 i = 1; i <= n; ++i)
        terms.push_back(Script::eq(Script::rtx_arg_n(i, kArgBranch), Script::num(j)));
    return script_all(terms);
}

// One branch's full check: a signature per authorization decoration
// (witness slots in decoration order), then the per-output blocks wrapped
// in one timelock guard per waiting decoration.
ScriptPtr branch_script(const Program& p, const Branch& b,
                        const std::map<std::string, i64>& cpos) {
    std::vector<ScriptPtr> blocks;
    if (b.is_call) {
        for (size_t i = 0; i < b.calls.size(); ++i)
            blocks.push_back(call_block(p, b.calls[i], cpos, static_cast<i64>(i) + 1));
    } else {
        for (size_t i = 0; i < b.sends.size(); ++i)
            blocks.push_back(send_block(b.sends[i], cpos, static_cast<i64>(i) + 1));
    }

    ScriptPtr wrapped = script_all(std::move(blocks));
    for (auto it = b.after_rels.rbegin(); it != b.after_rels.rend(); ++it)
        wrapped = Script::rel_after(expr_script(*it, cpos, {}), std::move(wrapped));
    for (auto it = b.afters.rbegin(); it != b.afters.rend(); ++it)
        wrapped = Script::abs_after(expr_script(*it, cpos, {}), std::move(wrapped));

    std::vector<ScriptPtr> terms;
    for (size_t k = 0; k < b.auths.size(); ++k)
        terms.push_back(Script::versig(Script::key_of(expr_script(b.auths[k], cpos, {})),
                                       Script::elem(Script::rtxw(), static_cast<i64>(k) + 1)));
    terms.push_back(std::move(wrapped));
    return script_all(std::move(terms));
}

// Branch dispatch for one clause: try each branch condition in order, fall
// through to false.
ScriptPtr clause_script(const Program& p, const ClauseDef& c) {
    auto cpos = param_positions(c);
    ScriptPtr acc = Script::falsity();
    for (size_t j = c.process.size(); j > 0; --j)
        acc = Script::cond(branch_cond(c.process[j - 1], static_cast<i64>(j)),
                           branch_script(p, c.process[j - 1], cpos), std::move(acc));
    return acc;
}

} // namespace

const ClauseDef* CompilationUnit::clause_by_hash(const Program& p, i64 h) const {
    for (const auto& name : reachable)
        if (name_hash64(name) == h) return p.find(name);
    return nullptr;
}

Res<CompilationUnit> compile_unit(const Program& p, const std::string& root) {
    if (!p.find(root))
        return Error{"UndefinedClause", "root clause " + root + " is not defined"};

    CompilationUnit u;
    u.root = root;
    u.reachable = reachable_clauses(p, root);
    for (const auto& name : u.reachable) {
        const ClauseDef* c = p.find(name);
        for (const auto& b : c->process) {
            if (!b.is_call) continue;
            for (const auto& call : b.calls)
                if (!p.find(call.callee))
                    return Error{"NonClosedProgram",
                                 name + " calls undefined clause " + call.callee};
        }
    }

    ScriptPtr dispatch = Script::falsity();
    for (auto it = u.reachable.rbegin(); it != u.reachable.rend(); ++it)
        dispatch = Script::cond(
            Script::eq(Script::ctx_arg_n(kArgName), Script::num(name_hash64(*it))),
            clause_script(p, *p.find(*it)), std::move(dispatch));
    u.script = Script::conj(Script::eq(Script::inidx(), Script::num(1)), std::move(dispatch));
    return u;
}

ScriptPtr deposit_script() {
    return Script::versig(Script::key_of(Script::ctx_arg_n(kArgOwner)),
                          Script::elem(Script::rtxw(), 1));
}

Output deposit_output(const std::string& owner, Bag value, i64 nonce, i64 branch) {
    Output o;
    o.value = std::move(value);
    o.script = deposit_script();
    o.args = {Value::of_int(nonce), Value::of_int(branch), Value::participant(owner)};
    return o;
}

i64 CompilerInputs::nonce_at(size_t k) const {
    if (nonce.empty()) die("nonce list must not be empty");
    return k < nonce.size() ? nonce[k] : nonce.back();
}

namespace {

// Evaluates a closed advertised expression down to a value.
Res<Value> closed_value(const ExprPtr& e) { return eval_expr(e, Env{}); }

Res<i64> closed_int(const ExprPtr& e, const char* what) {
    auto v = closed_value(e);
    if (!v.ok()) return v.err();
    if (!v->is_int()) return Error{"TypeMismatch", std::string(what) + " is not an integer"};
    return v->as_int();
}

} // namespace

Res<Transaction> compile_advertisement(const Program& p, const CompilerInputs& ci) {
    const Advertisement& a = ci.adv;
    if (!a.complete)
        return Error{"IncompleteAdvertisement", "placeholders left in " + a.str()};
    if (a.kind == Advertisement::Kind::Destroy)
        return Error{"UnsupportedKind", "destroy advertisements have no compiled form"};
    if (ci.t_rel.size() != ci.in.size())
        return Error{"RelLockArityMismatch", "one relative lock per input required"};
    if (ci.nonce.empty())
        return Error{"NonceMissing", "at least one output nonce required"};

    const bool cont = a.kind == Advertisement::Kind::Continue;

    std::set<size_t> mapped_idx;
    if (cont) {
        auto it = ci.txout.find(a.contract);
        if (it == ci.txout.end())
            return Error{"MissingMapping", "no chain position for contract " + a.contract};
        if (ci.in.empty() || !(ci.in[0].ref == it->second))
            return Error{"FirstInputNotContract",
                         "the first input must spend " + it->second.str()};
        mapped_idx.insert(0);
    }

    // Advertised deposits must be spent in advertisement order; other
    // inputs may interleave freely.
    size_t scan = cont ? 1 : 0;
    for (const auto& z : a.deposits) {
        auto it = ci.txout.find(z);
        if (it == ci.txout.end())
            return Error{"MissingMapping", "no chain position for deposit " + z};
        bool found = false;
        for (size_t i = scan; i < ci.in.size(); ++i) {
            if (ci.in[i].ref == it->second) {
                mapped_idx.insert(i);
                scan = i + 1;
                found = true;
                break;
            }
        }
        if (found) continue;
        for (const auto& ri : ci.in)
            if (ri.ref == it->second)
                return Error{"DepositOrderMismatch", "deposit " + z + " spent out of order"};
        return Error{"MissingInput", "deposit " + z + " is not spent by any input"};
    }

    // Inputs beyond the advertised ones supply the destroyed amount. They
    // must not spend any output the name map knows about.
    std::set<OutRef> known;
    for (const auto& [name, ref] : ci.txout) known.insert(ref);
    Bag extra_sum;
    bool any_extra = false;
    for (size_t i = 0; i < ci.in.size(); ++i) {
        if (mapped_idx.count(i)) continue;
        if (known.count(ci.in[i].ref))
            return Error{"UnexpectedExtraInput",
                         "input " + ci.in[i].ref.str() + " spends a mapped output the advertisement does not name"};
        any_extra = true;
        if (!Bag::add(extra_sum, ci.in[i].out.value, extra_sum))
            return Error{"Overflow", "extra input values overflow"};
    }
    if (a.w.star) {
        if (any_extra)
            return Error{"UnexpectedExtraInput",
                         "wildcard destroyed amount forbids extra inputs"};
    } else if (!(extra_sum == a.w.amount)) {
        return Error{"ExtraInputMismatch",
                     "extra inputs hold " + extra_sum.str() + ", advertised " + a.w.amount.str()};
    }

    // The declared timelocks must cover every waiting decoration, or the
    // compiled script's guards could never pass.
    if (cont) {
        for (const auto& t : a.branch.afters) {
            auto v = closed_int(t, "absolute time bound");
            if (!v.ok()) return v.err();
            if (ci.t_abs < *v)
                return Error{"TimelockTooEarly", "absolute lock below advertised bound"};
        }
        for (const auto& d : a.branch.after_rels) {
            auto v = closed_int(d, "relative time bound");
            if (!v.ok()) return v.err();
            if (ci.t_rel.empty() || ci.t_rel[0] < *v)
                return Error{"TimelockTooEarly", "first relative lock below advertised bound"};
        }
    }

    std::vector<Output> outs;
    if (!cont) {
        auto inst = instantiate(p, a.clause, a.internals, a.externals);
        if (!inst.ok()) return inst.err();
        auto unit = compile_unit(p, a.clause);
        if (!unit.ok()) return unit.err();
        Output o;
        o.value = inst->funding;
        o.script = unit->script;
        o.args = {Value::of_int(ci.nonce_at(0)), Value::of_int(0),
                  Value::of_int(name_hash64(a.clause))};
        o.args.insert(o.args.end(), a.internals.begin(), a.internals.end());
        o.args.insert(o.args.end(), a.externals.begin(), a.externals.end());
        outs.push_back(std::move(o));
    } else if (a.branch.is_call) {
        const ScriptPtr parent = ci.in[0].out.script;
        for (size_t i = 0; i < a.branch.calls.size(); ++i) {
            const CallItem& c = a.branch.calls[i];
            std::vector<Value> iv, ev;
            for (const auto& e : c.internals) {
                auto v = closed_value(e);
                if (!v.ok()) return v.err();
                iv.push_back(v.take());
            }
            for (const auto& slot : c.externals) {
                if (!slot)
                    return Error{"IncompleteAdvertisement",
                                 "placeholder left in call to " + c.callee};
                auto v = closed_value(*slot);
                if (!v.ok()) return v.err();
                ev.push_back(v.take());
            }
            auto inst = instantiate(p, c.callee, iv, ev);
            if (!inst.ok()) return inst.err();
            Output o;
            o.value = inst->funding;
            o.script = parent;
            o.args = {Value::of_int(ci.nonce_at(i)), Value::of_int(a.branch_index),
                      Value::of_int(name_hash64(c.callee))};
            o.args.insert(o.args.end(), iv.begin(), iv.end());
            o.args.insert(o.args.end(), ev.begin(), ev.end());
            outs.push_back(std::move(o));
        }
    } else {
        for (size_t i = 0; i < a.branch.sends.size(); ++i) {
            const SendItem& s = a.branch.sends[i];
            auto amount = closed_int(s.amount, "payout amount");
            if (!amount.ok()) return amount.err();
            if (*amount < 0)
                return Error{"NegativeFunding", "payout amount below zero"};
            auto who = closed_value(s.recipient);
            if (!who.ok()) return who.err();
            if (!who->is_part())
                return Error{"TypeMismatch", "payout recipient is not a participant"};
            outs.push_back(deposit_output(who->part_name(), Bag::single(s.token, *amount),
                                          ci.nonce_at(i), a.branch_index));
        }
    }

    Transaction tx;
    for (const auto& ri : ci.in) tx.inputs.push_back(ri.ref);
    tx.witnesses.assign(ci.in.size(), {});
    tx.outputs = std::move(outs);
    tx.abs_lock = ci.t_abs;
    tx.rel_locks = ci.t_rel;
    return tx;
}

DecodedOutput decode_output(const Output& o, const Program& p, const CompilationUnit& unit) {
    DecodedOutput d;
    d.value = o.value;
    if (!o.script) return d;

    if (o.args.size() == 3 && script_equal(o.script, deposit_script())) {
        if (!o.args[0].is_int() || !o.args[1].is_int() || !o.args[2].is_part()) return d;
        d.kind = DecodedOutput::Kind::Deposit;
        d.nonce = o.args[0].as_int();
        d.branch = o.args[1].as_int();
        d.owner = o.args[2].part_name();
        return d;
    }

    if (o.args.size() >= 3 && script_equal(o.script, unit.script)) {
        if (!o.args[0].is_int() || !o.args[1].is_int() || !o.args[2].is_int()) return d;
        const ClauseDef* c = unit.clause_by_hash(p, o.args[2].as_int());
        if (!c) return d;
        if (o.args.size() != 3 + c->internals.size() + c->externals.size()) return d;
        d.kind = DecodedOutput::Kind::Contract;
        d.clause = c->name;
        d.nonce = o.args[0].as_int();
        d.branch = o.args[1].as_int();
        auto first = o.args.begin() + 3;
        d.internals.assign(first, first + static_cast<long>(c->internals.size()));
        d.externals.assign(first + static_cast<long>(c->internals.size()), o.args.end());
        return d;
    }

    return d;
}

} // namespace illum
