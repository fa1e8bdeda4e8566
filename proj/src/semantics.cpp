// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/semantics.hpp"

#include <algorithm>
#include <set>

namespace illum {

namespace {

bool value_fits(const Value& v, IType t) {
    switch (t) {
        case IType::IntT:
            return v.is_int();
        case IType::PartT:
            return v.is_part();
        case IType::MapT:
            return v.is_map();
        case IType::AnyT:
            return !v.is_star();
    }
    return false;
}

Res<Unit> bind_params(const std::vector<std::pair<std::string, IType>>& formals,
                      const std::vector<Value>& actuals, const std::string& clause, Env& env) {
    if (formals.size() != actuals.size())
        return Error{"ArityMismatch", clause + ": expected " + std::to_string(formals.size()) +
                                          " arguments, got " + std::to_string(actuals.size())};
    for (size_t i = 0; i < formals.size(); ++i) {
        if (actuals[i].is_star())
            return Error{"StarPresent", clause + ": parameter " + formals[i].first +
                                            " is a placeholder"};
        if (!value_fits(actuals[i], formals[i].second))
            return Error{"TypeMismatch", clause + ": parameter " + formals[i].first +
                                             " expects " + itype_str(formals[i].second) +
                                             ", got " + actuals[i].str()};
        env[formals[i].first] = actuals[i];
    }
    return Unit{};
}

Res<Value> eval_to(const ExprPtr& e, const Env& env, bool (Value::*pred)() const,
                   const char* what) {
    auto v = eval_expr(e, env);
    if (!v) return v;
    if (!((*v).*pred)())
        return Error{"TypeMismatch", std::string(what) + " evaluated to " + v->str()};
    return v;
}

// Evaluates every expression of a branch, leaving `?` slots untouched.
Res<Branch> close_branch(const Branch& b, const Env& env) {
    Branch out;
    out.is_call = b.is_call;
    for (const auto& a : b.auths) {
        auto v = eval_to(a, env, &Value::is_part, "authorizer");
        if (!v) return v.err();
        out.auths.push_back(Expr::cnst(*v));
    }
    for (const auto& a : b.afters) {
        auto v = eval_to(a, env, &Value::is_int, "after bound");
        if (!v) return v.err();
        out.afters.push_back(Expr::cnst(*v));
    }
    for (const auto& a : b.after_rels) {
        auto v = eval_to(a, env, &Value::is_int, "afterRel bound");
        if (!v) return v.err();
        out.after_rels.push_back(Expr::cnst(*v));
    }
    if (b.is_call) {
        for (const auto& item : b.calls) {
            CallItem c;
            c.callee = item.callee;
            for (const auto& e : item.internals) {
                auto v = eval_expr(e, env);
                if (!v) return v.err();
                c.internals.push_back(Expr::cnst(*v));
            }
            for (const auto& e : item.externals) {
                if (!e) {
                    c.externals.push_back(std::nullopt);
                } else {
                    auto v = eval_expr(*e, env);
                    if (!v) return v.err();
                    c.externals.push_back(Expr::cnst(*v));
                }
            }
            out.calls.push_back(std::move(c));
        }
    } else {
        for (const auto& item : b.sends) {
            auto amount = eval_to(item.amount, env, &Value::is_int, "withdraw amount");
            if (!amount) return amount.err();
            auto to = eval_to(item.recipient, env, &Value::is_part, "withdraw recipient");
            if (!to) return to.err();
            out.sends.push_back(SendItem{Expr::cnst(*amount), item.token, Expr::cnst(*to)});
        }
    }
    return out;
}

} // namespace

Res<InstantiatedClause> instantiate(const Program& p, const std::string& name,
                                    const std::vector<Value>& internals,
                                    const std::vector<Value>& externals) {
    const ClauseDef* c = p.find(name);
    if (!c) return Error{"UndefinedClause", "no clause named " + name};

    Env env;
    if (auto s = bind_params(c->internals, internals, name, env); !s) return s.err();
    if (auto s = bind_params(c->externals, externals, name, env); !s) return s.err();

    Bag funding;
    for (const auto& f : c->funding) {
        auto amount = eval_to(f.amount, env, &Value::is_int, "funding amount");
        if (!amount) return amount.err();
        if (amount->as_int() < 0)
            return Error{"NegativeFunding", name + ": funding " + std::to_string(amount->as_int()) +
                                                ":" + f.token};
        Bag next;
        if (!Bag::add(funding, Bag::single(f.token, amount->as_int()), next))
            return Error{"Overflow", name + ": funding total overflows"};
        funding = next;
    }

    auto guard = eval_to(c->guard, env, &Value::is_bool, "guard");
    if (!guard) return guard.err();
    if (!guard->as_bool()) return Error{"GuardFalse", name + ": guard is false"};

    Process process;
    for (const auto& b : c->process) {
        auto closed = close_branch(b, env);
        if (!closed) return closed.err();
        process.push_back(closed.take());
    }
    return InstantiatedClause{std::move(funding), std::move(process)};
}

// ---------------------------------------------------------------------------
// Branch matching

namespace {

bool expr_multiset_equal(std::vector<ExprPtr> a, std::vector<ExprPtr> b) {
    if (a.size() != b.size()) return false;
    auto lt = [](const ExprPtr& x, const ExprPtr& y) { return expr_cmp(x, y) < 0; };
    std::sort(a.begin(), a.end(), lt);
    std::sort(b.begin(), b.end(), lt);
    for (size_t i = 0; i < a.size(); ++i)
        if (!expr_equal(a[i], b[i])) return false;
    return true;
}

} // namespace

bool branch_matches(const Branch& advertised, const Branch& declared) {
    if (!expr_multiset_equal(advertised.auths, declared.auths)) return false;
    if (!expr_multiset_equal(advertised.afters, declared.afters)) return false;
    if (!expr_multiset_equal(advertised.after_rels, declared.after_rels)) return false;
    if (advertised.is_call != declared.is_call) return false;

    if (declared.is_call) {
        if (advertised.calls.size() != declared.calls.size()) return false;
        for (size_t i = 0; i < declared.calls.size(); ++i) {
            const auto& a = advertised.calls[i];
            const auto& d = declared.calls[i];
            if (a.callee != d.callee) return false;
            if (a.internals.size() != d.internals.size()) return false;
            for (size_t j = 0; j < d.internals.size(); ++j)
                if (!expr_equal(a.internals[j], d.internals[j])) return false;
            if (a.externals.size() != d.externals.size()) return false;
            for (size_t j = 0; j < d.externals.size(); ++j) {
                if (d.externals[j]) {
                    // Concrete in the contract: the advertisement must agree.
                    if (!a.externals[j] || !expr_equal(*a.externals[j], *d.externals[j]))
                        return false;
                }
                // `?` in the contract: any filling (or none) is acceptable.
            }
        }
        return true;
    }
    if (advertised.sends.size() != declared.sends.size()) return false;
    for (size_t i = 0; i < declared.sends.size(); ++i) {
        const auto& a = advertised.sends[i];
        const auto& d = declared.sends[i];
        if (!expr_equal(a.amount, d.amount)) return false;
        if (a.token != d.token) return false;
        if (!expr_equal(a.recipient, d.recipient)) return false;
    }
    return true;
}

std::vector<std::string> branch_auth_parties(const Branch& b) {
    std::vector<std::string> out;
    for (const auto& a : b.auths) {
        if (!expr_is_const(a) || !a->value.is_part()) die("auth decoration not a participant");
        const std::string& name = a->value.part_name();
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Advertisement validation

namespace {

struct DepositFunds {
    Bag total;
};

Res<DepositFunds> gather_deposits(const Configuration& g, const Advertisement& a) {
    std::set<std::string> seen;
    DepositFunds out;
    for (const auto& z : a.deposits) {
        if (!seen.insert(z).second)
            return Error{"MissingDeposit", "deposit " + z + " listed twice"};
        const Deposit* d = g.find_deposit(z);
        if (!d) return Error{"MissingDeposit", "no deposit named " + z};
        Bag next;
        if (!Bag::add(out.total, d->value, next))
            return Error{"Overflow", "deposit total overflows"};
        out.total = next;
    }
    return out;
}

// True iff every `?` slot of every call is filled and no Star constant
// appears anywhere in the branch.
bool branch_filled(const Branch& b) {
    if (!b.closed()) return false;
    for (const auto& item : b.calls)
        for (const auto& e : item.externals) {
            if (!e) return false;
            if ((*e)->value.is_star()) return false;
        }
    return true;
}

Res<Bag> branch_call_funding(const Program& p, const Branch& b) {
    Bag total;
    for (const auto& item : b.calls) {
        std::vector<Value> internals, externals;
        for (const auto& e : item.internals) internals.push_back(e->value);
        for (const auto& e : item.externals) externals.push_back((*e)->value);
        auto inst = instantiate(p, item.callee, internals, externals);
        if (!inst) return inst.err();
        Bag next;
        if (!Bag::add(total, inst->funding, next))
            return Error{"Overflow", "callee funding total overflows"};
        total = next;
    }
    return total;
}

Res<Bag> branch_send_total(const Branch& b) {
    Bag total;
    for (const auto& s : b.sends) {
        i64 amount = s.amount->value.as_int();
        if (amount < 0)
            return Error{"InsufficientFunds",
                         "negative withdraw amount " + std::to_string(amount)};
        Bag next;
        if (!Bag::add(total, Bag::single(s.token, amount), next))
            return Error{"Overflow", "withdraw total overflows"};
        total = next;
    }
    return total;
}

} // namespace

Status validate_advertisement(const Configuration& g, const Advertisement& a, const Program& p) {
    if (!a.complete) return Error{"StarPresent", "advertisement is incomplete"};

    if (a.kind != Advertisement::Kind::Continue && a.deposits.empty())
        return Error{"MissingDeposit", "advertisement lists no deposits"};

    auto funds = gather_deposits(g, a);
    if (!funds) return funds.err();

    if (!g.destroyed.covers(a.w.effective()))
        return Error{"InsufficientDestroyed", "destroyed counter does not cover w"};

    Bag available;
    if (!Bag::add(funds->total, a.w.effective(), available))
        return Error{"Overflow", "available funds overflow"};

    switch (a.kind) {
        case Advertisement::Kind::Init: {
            auto inst = instantiate(p, a.clause, a.internals, a.externals);
            if (!inst) return inst.err();
            if (!available.covers(inst->funding))
                return Error{"InsufficientFunds", "deposits + w do not cover the funding " +
                                                      inst->funding.str()};
            return ok_status();
        }
        case Advertisement::Kind::Continue: {
            const ContractTerm* x = g.find_contract(a.contract);
            if (!x) return Error{"MissingContract", "no contract named " + a.contract};
            if (a.branch_index < 1 || a.branch_index > static_cast<i64>(x->process.size()))
                return Error{"BranchMismatch",
                             "branch index " + std::to_string(a.branch_index) + " out of range"};
            const Branch& declared = x->process[static_cast<size_t>(a.branch_index - 1)];
            if (!branch_matches(a.branch, declared))
                return Error{"BranchMismatch", "advertised branch does not match branch " +
                                                   std::to_string(a.branch_index)};
            if (!branch_filled(a.branch))
                return Error{"StarPresent", "advertised branch has unfilled slots"};

            for (const auto& e : a.branch.afters)
                if (g.time < e->value.as_int())
                    return Error{"TimelockNotExpired",
                                 "after " + std::to_string(e->value.as_int()) + " at time " +
                                     std::to_string(g.time)};
            for (const auto& e : a.branch.after_rels)
                if (g.time - x->activation < e->value.as_int())
                    return Error{"TimelockNotExpired",
                                 "afterRel " + std::to_string(e->value.as_int()) +
                                     " with contract age " +
                                     std::to_string(g.time - x->activation)};

            Bag with_balance;
            if (!Bag::add(available, x->balance, with_balance))
                return Error{"Overflow", "available funds overflow"};

            auto needed = a.branch.is_call ? branch_call_funding(p, a.branch)
                                           : branch_send_total(a.branch);
            if (!needed) return needed.err();
            if (!with_balance.covers(*needed))
                return Error{"InsufficientFunds",
                             "deposits + w + balance do not cover " + needed->str()};
            return ok_status();
        }
        case Advertisement::Kind::Destroy:
            return ok_status();
    }
    die("validate_advertisement unreachable");
}

// ---------------------------------------------------------------------------
// Transitions

namespace {

Error rule_error(const std::string& premise) { return Error{"RuleNotEnabled", premise}; }

Authorization deposit_auth(const std::string& who, const std::string& adv_id,
                           const std::string& z) {
    Authorization out;
    out.who = who;
    out.kind = Authorization::Kind::DepositIn;
    out.adv_id = adv_id;
    out.z1 = z;
    return out;
}

Authorization act_auth(const std::string& who, const std::string& adv_id) {
    Authorization out;
    out.who = who;
    out.kind = Authorization::Kind::BranchAct;
    out.adv_id = adv_id;
    return out;
}

// Checks that every deposit of the advertisement carries its owner's
// spending authorization.
Status deposit_auths_present(const Configuration& g, const Advertisement& a,
                             const std::string& adv_id) {
    for (const auto& z : a.deposits) {
        const Deposit* d = g.find_deposit(z);
        if (!d) return Error{"MissingDeposit", "no deposit named " + z};
        if (!g.has_auth(deposit_auth(d->owner, adv_id, z)))
            return Error{"MissingAuthorization",
                         d->owner + " has not authorized spending " + z};
    }
    return ok_status();
}

// Removes the advertisement, every authorization that references it, and
// its listed deposits; debits the w field from the destroyed counter.
Status consume_advertisement(Configuration& g, const Advertisement& a) {
    std::string id = a.serialize();
    g.remove_advert(a);
    std::erase_if(g.auths, [&](const Authorization& x) { return x.adv_id == id; });
    for (const auto& z : a.deposits) g.remove_deposit(z);
    Bag next;
    if (!Bag::sub(g.destroyed, a.w.effective(), next))
        return Error{"InsufficientDestroyed", "destroyed counter underflow"};
    g.destroyed = next;
    return ok_status();
}

Res<StepOutcome> do_init(const Configuration& g, const SymbolicAction& act, const Program& p) {
    const Advertisement& a = act.adv;
    if (a.kind != Advertisement::Kind::Init) return rule_error("init needs an Init advertisement");
    if (!g.has_advert(a)) return rule_error("advertisement not in configuration");
    if (auto s = validate_advertisement(g, a, p); !s)
        return Error{"InvalidAdvertisement", s.err().code + ": " + s.err().detail};
    std::string id = a.serialize();
    if (auto s = deposit_auths_present(g, a, id); !s) return s.err();

    auto inst = instantiate(p, a.clause, a.internals, a.externals);
    if (!inst) return Error{"InvalidAdvertisement", inst.err().code + ": " + inst.err().detail};

    StepOutcome out{g, {}};
    if (auto s = consume_advertisement(out.next, a); !s) return s.err();
    std::string x = out.next.fresh_name();
    out.next.contracts.push_back(ContractTerm{x, g.time, inst->process, inst->funding});
    out.created.push_back(x);
    return out;
}

Res<StepOutcome> do_continue(const Configuration& g, const SymbolicAction& act,
                             const Program& p) {
    const Advertisement& a = act.adv;
    bool want_call = act.kind == SymbolicAction::Kind::Call;
    if (a.kind != Advertisement::Kind::Continue)
        return rule_error("continuation needs a Continue advertisement");
    if (!g.has_advert(a)) return rule_error("advertisement not in configuration");
    if (a.branch.is_call != want_call)
        return rule_error(want_call ? "advertised branch does not call"
                                    : "advertised branch does not withdraw");
    if (auto s = validate_advertisement(g, a, p); !s)
        return Error{"InvalidAdvertisement", s.err().code + ": " + s.err().detail};

    std::string id = a.serialize();
    if (auto s = deposit_auths_present(g, a, id); !s) return s.err();
    for (const auto& who : branch_auth_parties(a.branch))
        if (!g.has_auth(act_auth(who, id)))
            return Error{"MissingAuthorization", who + " has not authorized the branch"};

    StepOutcome out{g, {}};
    if (auto s = consume_advertisement(out.next, a); !s) return s.err();
    out.next.remove_contract(a.contract);

    if (want_call) {
        for (const auto& item : a.branch.calls) {
            std::vector<Value> internals, externals;
            for (const auto& e : item.internals) internals.push_back(e->value);
            for (const auto& e : item.externals) externals.push_back((*e)->value);
            auto inst = instantiate(p, item.callee, internals, externals);
            if (!inst)
                return Error{"InvalidAdvertisement", inst.err().code + ": " + inst.err().detail};
            std::string y = out.next.fresh_name();
            out.next.contracts.push_back(ContractTerm{y, g.time, inst->process, inst->funding});
            out.created.push_back(y);
        }
    } else {
        for (const auto& s : a.branch.sends) {
            std::string y = out.next.fresh_name();
            out.next.deposits.push_back(Deposit{y, s.recipient->value.part_name(),
                                                Bag::single(s.token, s.amount->value.as_int())});
            out.created.push_back(y);
        }
    }
    return out;
}

Res<StepOutcome> do_destroy(const Configuration& g, const SymbolicAction& act,
                            const Program& p) {
    const Advertisement& a = act.adv;
    if (a.kind != Advertisement::Kind::Destroy)
        return rule_error("destroy needs a Destroy advertisement");
    if (!g.has_advert(a)) return rule_error("advertisement not in configuration");
    if (auto s = validate_advertisement(g, a, p); !s)
        return Error{"InvalidAdvertisement", s.err().code + ": " + s.err().detail};
    std::string id = a.serialize();
    if (auto s = deposit_auths_present(g, a, id); !s) return s.err();

    Bag total;
    for (const auto& z : a.deposits) {
        Bag next;
        if (!Bag::add(total, g.find_deposit(z)->value, next))
            return Error{"Overflow", "destroyed total overflows"};
        total = next;
    }

    StepOutcome out{g, {}};
    // The w field licenses spending destroyed funds computationally; the
    // counter itself only grows by the destroyed deposits' value.
    std::string adv_id = a.serialize();
    out.next.remove_advert(a);
    std::erase_if(out.next.auths, [&](const Authorization& x) { return x.adv_id == adv_id; });
    for (const auto& z : a.deposits) out.next.remove_deposit(z);
    Bag next_counter;
    if (!Bag::add(out.next.destroyed, total, next_counter))
        return Error{"Overflow", "destroyed counter overflows"};
    out.next.destroyed = next_counter;
    return out;
}

} // namespace

Res<StepOutcome> step(const Configuration& g, const SymbolicAction& act, const Program& p) {
    switch (act.kind) {
        case SymbolicAction::Kind::Msg: {
            if (act.adv.complete) return rule_error("msg carries a complete advertisement");
            if (g.has_advert(act.adv)) return rule_error("advertisement already present");
            StepOutcome out{g, {}};
            out.next.adverts.push_back(act.adv);
            return out;
        }
        case SymbolicAction::Kind::Adv: {
            if (!act.adv.complete) return rule_error("adv carries an incomplete advertisement");
            if (g.has_advert(act.adv)) return rule_error("advertisement already present");
            if (auto s = validate_advertisement(g, act.adv, p); !s)
                return Error{"InvalidAdvertisement", s.err().code + ": " + s.err().detail};
            StepOutcome out{g, {}};
            out.next.adverts.push_back(act.adv);
            return out;
        }
        case SymbolicAction::Kind::AuthIn: {
            if (!g.has_advert(act.adv)) return rule_error("advertisement not in configuration");
            if (auto s = validate_advertisement(g, act.adv, p); !s)
                return Error{"InvalidAdvertisement", s.err().code + ": " + s.err().detail};
            const auto& zs = act.adv.deposits;
            if (std::find(zs.begin(), zs.end(), act.z1) == zs.end())
                return rule_error("deposit " + act.z1 + " not listed by the advertisement");
            const Deposit* d = g.find_deposit(act.z1);
            if (!d) return rule_error("no deposit named " + act.z1);
            if (d->owner != act.who)
                return rule_error(act.who + " does not own " + act.z1);
            Authorization auth = deposit_auth(act.who, act.adv.serialize(), act.z1);
            if (g.has_auth(auth)) return rule_error("authorization already present");
            StepOutcome out{g, {}};
            out.next.auths.push_back(auth);
            return out;
        }
        case SymbolicAction::Kind::AuthAct: {
            if (!g.has_advert(act.adv)) return rule_error("advertisement not in configuration");
            if (act.adv.kind != Advertisement::Kind::Continue)
                return rule_error("auth-act needs a Continue advertisement");
            if (auto s = validate_advertisement(g, act.adv, p); !s)
                return Error{"InvalidAdvertisement", s.err().code + ": " + s.err().detail};
            auto parties = branch_auth_parties(act.adv.branch);
            if (std::find(parties.begin(), parties.end(), act.who) == parties.end())
                return rule_error(act.who + " is not an authorizer of the branch");
            Authorization auth = act_auth(act.who, act.adv.serialize());
            if (g.has_auth(auth)) return rule_error("authorization already present");
            StepOutcome out{g, {}};
            out.next.auths.push_back(auth);
            return out;
        }
        case SymbolicAction::Kind::Init:
            return do_init(g, act, p);
        case SymbolicAction::Kind::Call:
        case SymbolicAction::Kind::Send:
            return do_continue(g, act, p);
        case SymbolicAction::Kind::Destroy:
            return do_destroy(g, act, p);
        case SymbolicAction::Kind::Delay: {
            if (act.delta <= 0) return rule_error("delay must be positive");
            StepOutcome out{g, {}};
            i64 t = 0;
            if (!checked_add(g.time, act.delta, t)) return rule_error("time overflow");
            out.next.time = t;
            return out;
        }
        case SymbolicAction::Kind::AuthJoin: {
            if (act.z1 == act.z2) return rule_error("join needs two distinct deposits");
            const Deposit* d1 = g.find_deposit(act.z1);
            const Deposit* d2 = g.find_deposit(act.z2);
            if (!d1 || !d2) return rule_error("both deposits must exist");
            if (d1->owner != act.who || d2->owner != act.who)
                return rule_error(act.who + " must own both deposits");
            if (act.pos != 1 && act.pos != 2) return rule_error("join side must be 1 or 2");
            Authorization auth;
            auth.who = act.who;
            auth.kind = Authorization::Kind::Join;
            auth.z1 = act.z1;
            auth.z2 = act.z2;
            auth.pos = act.pos;
            if (g.has_auth(auth)) return rule_error("authorization already present");
            StepOutcome out{g, {}};
            out.next.auths.push_back(auth);
            return out;
        }
        case SymbolicAction::Kind::Join: {
            const Deposit* d1 = g.find_deposit(act.z1);
            const Deposit* d2 = g.find_deposit(act.z2);
            if (!d1 || !d2) return rule_error("both deposits must exist");
            if (d1->owner != d2->owner) return rule_error("deposits have different owners");
            std::string owner = d1->owner;
            for (i64 pos : {1, 2}) {
                Authorization auth;
                auth.who = owner;
                auth.kind = Authorization::Kind::Join;
                auth.z1 = act.z1;
                auth.z2 = act.z2;
                auth.pos = pos;
                if (!g.has_auth(auth))
                    return Error{"MissingAuthorization",
                                 owner + " has not authorized side " + std::to_string(pos)};
            }
            Bag total;
            if (!Bag::add(d1->value, d2->value, total))
                return rule_error("joined value overflows");
            StepOutcome out{g, {}};
            std::erase_if(out.next.auths, [&](const Authorization& x) {
                return x.kind == Authorization::Kind::Join && x.z1 == act.z1 && x.z2 == act.z2;
            });
            out.next.remove_deposit(act.z1);
            out.next.remove_deposit(act.z2);
            std::string y = out.next.fresh_name();
            out.next.deposits.push_back(Deposit{y, owner, total});
            out.created.push_back(y);
            return out;
        }
        case SymbolicAction::Kind::AuthDivide: {
            const Deposit* d = g.find_deposit(act.z1);
            if (!d) return rule_error("no deposit named " + act.z1);
            if (d->owner != act.who) return rule_error(act.who + " does not own " + act.z1);
            if (!act.amount1.nonnegative() || !act.amount2.nonnegative())
                return rule_error("split amounts must be nonnegative");
            Bag total;
            if (!Bag::add(act.amount1, act.amount2, total))
                return rule_error("split total overflows");
            if (total != d->value) return rule_error("split amounts must sum to the deposit value");
            Authorization auth;
            auth.who = act.who;
            auth.kind = Authorization::Kind::Divide;
            auth.z1 = act.z1;
            auth.amount1 = act.amount1;
            auth.amount2 = act.amount2;
            if (g.has_auth(auth)) return rule_error("authorization already present");
            StepOutcome out{g, {}};
            out.next.auths.push_back(auth);
            return out;
        }
        case SymbolicAction::Kind::Divide: {
            const Deposit* d = g.find_deposit(act.z1);
            if (!d) return rule_error("no deposit named " + act.z1);
            Authorization auth;
            auth.who = d->owner;
            auth.kind = Authorization::Kind::Divide;
            auth.z1 = act.z1;
            auth.amount1 = act.amount1;
            auth.amount2 = act.amount2;
            if (!g.has_auth(auth))
                return Error{"MissingAuthorization", d->owner + " has not authorized the split"};
            StepOutcome out{g, {}};
            out.next.remove_auth(auth);
            out.next.remove_deposit(act.z1);
            std::string owner = d->owner;
            std::string y1 = out.next.fresh_name();
            out.next.deposits.push_back(Deposit{y1, owner, act.amount1});
            std::string y2 = out.next.fresh_name();
            out.next.deposits.push_back(Deposit{y2, owner, act.amount2});
            out.created.push_back(y1);
            out.created.push_back(y2);
            return out;
        }
        case SymbolicAction::Kind::AuthDonate: {
            const Deposit* d = g.find_deposit(act.z1);
            if (!d) return rule_error("no deposit named " + act.z1);
            if (d->owner != act.who) return rule_error(act.who + " does not own " + act.z1);
            if (act.donee.empty()) return rule_error("donation needs a recipient");
            Authorization auth;
            auth.who = act.who;
            auth.kind = Authorization::Kind::Donate;
            auth.z1 = act.z1;
            auth.donee = act.donee;
            if (g.has_auth(auth)) return rule_error("authorization already present");
            StepOutcome out{g, {}};
            out.next.auths.push_back(auth);
            return out;
        }
        case SymbolicAction::Kind::Donate: {
            const Deposit* d = g.find_deposit(act.z1);
            if (!d) return rule_error("no deposit named " + act.z1);
            Authorization auth;
            auth.who = d->owner;
            auth.kind = Authorization::Kind::Donate;
            auth.z1 = act.z1;
            auth.donee = act.donee;
            if (!g.has_auth(auth))
                return Error{"MissingAuthorization", d->owner + " has not authorized the donation"};
            StepOutcome out{g, {}};
            out.next.remove_auth(auth);
            out.next.remove_deposit(act.z1);
            Bag value = d->value;
            std::string y = out.next.fresh_name();
            out.next.deposits.push_back(Deposit{y, act.donee, value});
            out.created.push_back(y);
            return out;
        }
    }
    die("step unreachable");
}

// ---------------------------------------------------------------------------
// Enabled-action enumeration

std::vector<SymbolicAction> enabled_actions(const Configuration& g, const Program& p) {
    std::vector<SymbolicAction> candidates;

    for (const auto& a : g.adverts) {
        if (!a.complete) continue;
        SymbolicAction consume;
        consume.adv = a;
        switch (a.kind) {
            case Advertisement::Kind::Init:
                consume.kind = SymbolicAction::Kind::Init;
                break;
            case Advertisement::Kind::Continue:
                consume.kind = a.branch.is_call ? SymbolicAction::Kind::Call
                                                : SymbolicAction::Kind::Send;
                break;
            case Advertisement::Kind::Destroy:
                consume.kind = SymbolicAction::Kind::Destroy;
                break;
        }
        candidates.push_back(consume);

        for (const auto& z : a.deposits) {
            const Deposit* d = g.find_deposit(z);
            if (!d) continue;
            SymbolicAction auth;
            auth.kind = SymbolicAction::Kind::AuthIn;
            auth.adv = a;
            auth.who = d->owner;
            auth.z1 = z;
            candidates.push_back(auth);
        }
        if (a.kind == Advertisement::Kind::Continue) {
            for (const auto& who : branch_auth_parties(a.branch)) {
                SymbolicAction auth;
                auth.kind = SymbolicAction::Kind::AuthAct;
                auth.adv = a;
                auth.who = who;
                candidates.push_back(auth);
            }
        }
    }

    // Deposit-op authorizations whose parameters all come from existing
    // terms: join sides over same-owner pairs, donations to any owner
    // already present. Splits are not enumerated (amounts are free).
    std::vector<std::string> owners;
    for (const auto& d : g.deposits)
        if (std::find(owners.begin(), owners.end(), d.owner) == owners.end())
            owners.push_back(d.owner);
    for (const auto& d1 : g.deposits) {
        for (const auto& d2 : g.deposits) {
            if (d1.name == d2.name || d1.owner != d2.owner) continue;
            for (i64 pos : {1, 2}) {
                SymbolicAction act;
                act.kind = SymbolicAction::Kind::AuthJoin;
                act.who = d1.owner;
                act.z1 = d1.name;
                act.z2 = d2.name;
                act.pos = pos;
                candidates.push_back(act);
            }
        }
        for (const auto& owner : owners) {
            SymbolicAction act;
            act.kind = SymbolicAction::Kind::AuthDonate;
            act.who = d1.owner;
            act.z1 = d1.name;
            act.donee = owner;
            candidates.push_back(act);
        }
    }

    for (const auto& auth : g.auths) {
        switch (auth.kind) {
            case Authorization::Kind::Join: {
                if (auth.pos != 1) break;
                SymbolicAction act;
                act.kind = SymbolicAction::Kind::Join;
                act.z1 = auth.z1;
                act.z2 = auth.z2;
                candidates.push_back(act);
                break;
            }
            case Authorization::Kind::Divide: {
                SymbolicAction act;
                act.kind = SymbolicAction::Kind::Divide;
                act.z1 = auth.z1;
                act.amount1 = auth.amount1;
                act.amount2 = auth.amount2;
                candidates.push_back(act);
                break;
            }
            case Authorization::Kind::Donate: {
                SymbolicAction act;
                act.kind = SymbolicAction::Kind::Donate;
                act.z1 = auth.z1;
                act.donee = auth.donee;
                candidates.push_back(act);
                break;
            }
            default:
                break;
        }
    }

    std::vector<SymbolicAction> enabled;
    for (const auto& a : candidates)
        if (step(g, a, p)) enabled.push_back(a);
    return enabled;
}

Bag configuration_total(const Configuration& g) {
    Bag total = g.destroyed;
    for (const auto& d : g.deposits) {
        Bag next;
        if (!Bag::add(total, d.value, next)) die("configuration total overflows");
        total = next;
    }
    for (const auto& c : g.contracts) {
        Bag next;
        if (!Bag::add(total, c.balance, next)) die("configuration total overflows");
        total = next;
    }
    return total;
}

Res<Configuration> replay_run(const SymbolicRun& r, const Program& p) {
    Configuration g = r.initial;
    for (size_t i = 0; i < r.actions.size(); ++i) {
        auto out = step(g, r.actions[i], p);
        if (!out)
            return Error{out.err().code, "action " + std::to_string(i) + " (" +
                                             r.actions[i].str() + "): " + out.err().detail};
        g = std::move(out->next);
    }
    return g;
}

namespace {

// Renames every configuration name through the map, extending it with a
// fresh canonical name on first sight.
struct Renamer {
    std::map<std::string, std::string> map;
    i64 next = 0;

    std::string operator()(const std::string& name) {
        if (name.empty()) return name;
        auto it = map.find(name);
        if (it != map.end()) return it->second;
        std::string fresh = "x" + std::to_string(next++);
        map.emplace(name, fresh);
        return fresh;
    }
};

void rename_advert(Advertisement& a, Renamer& ren) {
    for (auto& z : a.deposits) z = ren(z);
    if (a.kind == Advertisement::Kind::Continue) a.contract = ren(a.contract);
}

void rename_action(SymbolicAction& act, Renamer& ren) {
    rename_advert(act.adv, ren);
    act.z1 = ren(act.z1);
    act.z2 = ren(act.z2);
}

} // namespace

SymbolicRun normalize_run_names(const SymbolicRun& r) {
    Renamer ren;
    SymbolicRun out = r;
    for (auto& d : out.initial.deposits) d.name = ren(d.name);
    for (auto& c : out.initial.contracts) c.name = ren(c.name);
    for (auto& a : out.initial.adverts) rename_advert(a, ren);
    for (auto& a : out.initial.auths) {
        a.z1 = ren(a.z1);
        a.z2 = ren(a.z2);
    }
    for (auto& act : out.actions) rename_action(act, ren);
    out.initial.name_counter = ren.next;
    return out;
}

bool run_equal(const SymbolicRun& a, const SymbolicRun& b) {
    if (!config_equal(a.initial, b.initial)) return false;
    if (a.actions.size() != b.actions.size()) return false;
    for (size_t i = 0; i < a.actions.size(); ++i)
        if (!action_equal(a.actions[i], b.actions[i])) return false;
    return true;
}

} // namespace illum
