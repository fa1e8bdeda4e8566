// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/clause.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace illum {

namespace {

bool exprs_closed(const std::vector<ExprPtr>& es) {
    return std::all_of(es.begin(), es.end(), expr_is_const);
}

} // namespace

bool Branch::closed() const {
    if (!exprs_closed(auths) || !exprs_closed(afters) || !exprs_closed(after_rels)) return false;
    for (const auto& c : calls) {
        if (!exprs_closed(c.internals)) return false;
        for (const auto& e : c.externals)
            if (e && !expr_is_const(*e)) return false;
    }
    for (const auto& s : sends)
        if (!expr_is_const(s.amount) || !expr_is_const(s.recipient)) return false;
    return true;
}

TypeEnv ClauseDef::param_types() const {
    TypeEnv env;
    for (const auto& [n, t] : internals) env[n] = t;
    for (const auto& [n, t] : externals) env[n] = t;
    return env;
}

std::vector<std::string> ClauseDef::param_names() const {
    std::vector<std::string> out;
    for (const auto& [n, t] : internals) out.push_back(n);
    for (const auto& [n, t] : externals) out.push_back(n);
    return out;
}

const ClauseDef* Program::find(const std::string& name) const {
    for (const auto& c : clauses)
        if (c.name == name) return &c;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Static checks

namespace {

Status check_typed(const ExprPtr& e, const TypeEnv& env, IType want, const std::string& where) {
    auto t = type_expr(e, env);
    if (!t) return Error{t.err().code, where + ": " + t.err().detail};
    if (!itype_compat(*t, want))
        return Error{"TypeMismatch",
                     where + ": expected " + itype_str(want) + ", got " + itype_str(*t)};
    return ok_status();
}

Status check_branch(const Program& p, const ClauseDef& c, const Branch& b, size_t idx) {
    TypeEnv env = c.param_types();
    std::string where = c.name + " branch " + std::to_string(idx + 1);

    for (const auto& a : b.auths)
        if (auto s = check_typed(a, env, IType::PartT, where + " auth"); !s) return s;
    for (const auto& a : b.afters)
        if (auto s = check_typed(a, env, IType::IntT, where + " after"); !s) return s;
    for (const auto& a : b.after_rels)
        if (auto s = check_typed(a, env, IType::IntT, where + " afterRel"); !s) return s;

    if (b.is_call) {
        if (b.calls.empty()) return Error{"EmptyCall", where + ": call with no callees"};
        for (const auto& item : b.calls) {
            const ClauseDef* callee = p.find(item.callee);
            if (!callee)
                return Error{"UndefinedClause", where + ": call to undefined " + item.callee};
            if (item.internals.size() != callee->internals.size() ||
                item.externals.size() != callee->externals.size())
                return Error{"ArityMismatch", where + ": call to " + item.callee + " with " +
                                                  std::to_string(item.internals.size()) + ";" +
                                                  std::to_string(item.externals.size()) +
                                                  " actuals"};
            for (size_t i = 0; i < item.internals.size(); ++i)
                if (auto s = check_typed(item.internals[i], env, callee->internals[i].second,
                                         where + " arg " + callee->internals[i].first);
                    !s)
                    return s;
            for (size_t i = 0; i < item.externals.size(); ++i)
                if (item.externals[i])
                    if (auto s = check_typed(*item.externals[i], env, callee->externals[i].second,
                                             where + " arg " + callee->externals[i].first);
                        !s)
                        return s;
        }
    } else {
        for (const auto& s : b.sends) {
            if (auto st = check_typed(s.amount, env, IType::IntT, where + " amount"); !st)
                return st;
            if (auto st = check_typed(s.recipient, env, IType::PartT, where + " recipient"); !st)
                return st;
        }
    }
    return ok_status();
}

} // namespace

Status check_program(const Program& p) {
    std::set<std::string> names;
    for (const auto& c : p.clauses)
        if (!names.insert(c.name).second)
            return Error{"DuplicateClause", "clause " + c.name + " defined twice"};

    for (const auto& c : p.clauses) {
        std::set<std::string> params;
        for (const auto& [n, t] : c.internals)
            if (!params.insert(n).second)
                return Error{"DuplicateClause", c.name + ": duplicate parameter " + n};
        for (const auto& [n, t] : c.externals)
            if (!params.insert(n).second)
                return Error{"DuplicateClause", c.name + ": duplicate parameter " + n};

        TypeEnv env = c.param_types();
        for (const auto& f : c.funding)
            if (auto s = check_typed(f.amount, env, IType::IntT, c.name + " funding"); !s)
                return s;
        if (auto s = check_typed(c.guard, env, IType::IntT, c.name + " guard"); !s) return s;

        if (c.process.empty()) return Error{"EmptyProcess", c.name + " has no branches"};
        for (size_t i = 0; i < c.process.size(); ++i)
            if (auto s = check_branch(p, c, c.process[i], i); !s) return s;
    }
    return ok_status();
}

std::vector<std::string> reachable_clauses(const Program& p, const std::string& root) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    std::vector<std::string> stack{root};
    while (!stack.empty()) {
        std::string name = stack.back();
        stack.pop_back();
        if (!seen.insert(name).second) continue;
        order.push_back(name);
        const ClauseDef* c = p.find(name);
        if (!c) continue;
        // Push callees in reverse so they pop in source order.
        std::vector<std::string> next;
        for (const auto& b : c->process)
            for (const auto& item : b.calls)
                if (!seen.count(item.callee)) next.push_back(item.callee);
        for (auto it = next.rbegin(); it != next.rend(); ++it) stack.push_back(*it);
    }
    return order;
}

// ---------------------------------------------------------------------------
// Comparison and serialization

namespace {

int expr_vec_cmp(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i)
        if (int c = expr_cmp(a[i], b[i])) return c;
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

} // namespace

int branch_cmp(const Branch& a, const Branch& b) {
    if (int c = expr_vec_cmp(a.auths, b.auths)) return c;
    if (int c = expr_vec_cmp(a.afters, b.afters)) return c;
    if (int c = expr_vec_cmp(a.after_rels, b.after_rels)) return c;
    if (a.is_call != b.is_call) return a.is_call ? -1 : 1;
    if (a.is_call) {
        size_t n = std::min(a.calls.size(), b.calls.size());
        for (size_t i = 0; i < n; ++i) {
            const auto& x = a.calls[i];
            const auto& y = b.calls[i];
            if (x.callee != y.callee) return x.callee < y.callee ? -1 : 1;
            if (int c = expr_vec_cmp(x.internals, y.internals)) return c;
            size_t m = std::min(x.externals.size(), y.externals.size());
            for (size_t j = 0; j < m; ++j) {
                bool xe = x.externals[j].has_value();
                bool ye = y.externals[j].has_value();
                if (xe != ye) return xe ? 1 : -1;
                if (xe)
                    if (int c = expr_cmp(*x.externals[j], *y.externals[j])) return c;
            }
            if (x.externals.size() != y.externals.size())
                return x.externals.size() < y.externals.size() ? -1 : 1;
        }
        if (a.calls.size() != b.calls.size()) return a.calls.size() < b.calls.size() ? -1 : 1;
        return 0;
    }
    size_t n = std::min(a.sends.size(), b.sends.size());
    for (size_t i = 0; i < n; ++i) {
        const auto& x = a.sends[i];
        const auto& y = b.sends[i];
        if (int c = expr_cmp(x.amount, y.amount)) return c;
        if (x.token != y.token) return x.token < y.token ? -1 : 1;
        if (int c = expr_cmp(x.recipient, y.recipient)) return c;
    }
    if (a.sends.size() != b.sends.size()) return a.sends.size() < b.sends.size() ? -1 : 1;
    return 0;
}

bool branch_equal(const Branch& a, const Branch& b) { return branch_cmp(a, b) == 0; }

namespace {

void put_count(std::string& out, size_t n) { out.push_back(static_cast<char>(n)); }

void serialize_expr_vec(const std::vector<ExprPtr>& es, std::string& out) {
    put_count(out, es.size());
    for (const auto& e : es) expr_serialize(e, out);
}

} // namespace

void branch_serialize(const Branch& b, std::string& out) {
    serialize_expr_vec(b.auths, out);
    serialize_expr_vec(b.afters, out);
    serialize_expr_vec(b.after_rels, out);
    out.push_back(b.is_call ? 1 : 0);
    if (b.is_call) {
        put_count(out, b.calls.size());
        for (const auto& item : b.calls) {
            Value::bytes(item.callee).serialize(out);
            serialize_expr_vec(item.internals, out);
            put_count(out, item.externals.size());
            for (const auto& e : item.externals) {
                out.push_back(e ? 1 : 0);
                if (e) expr_serialize(*e, out);
            }
        }
    } else {
        put_count(out, b.sends.size());
        for (const auto& s : b.sends) {
            expr_serialize(s.amount, out);
            Value::bytes(s.token).serialize(out);
            expr_serialize(s.recipient, out);
        }
    }
}

// ---------------------------------------------------------------------------
// Rendering

std::string branch_str(const Branch& b) {
    std::ostringstream os;
    for (const auto& a : b.auths) os << "auth(" << expr_str(a) << ") . ";
    for (const auto& a : b.afters) os << "after(" << expr_str(a) << ") . ";
    for (const auto& a : b.after_rels) os << "afterRel(" << expr_str(a) << ") . ";
    if (b.is_call) {
        os << "call(";
        for (size_t i = 0; i < b.calls.size(); ++i) {
            if (i) os << " || ";
            const auto& item = b.calls[i];
            os << item.callee << "(";
            for (size_t j = 0; j < item.internals.size(); ++j) {
                if (j) os << ", ";
                os << expr_str(item.internals[j]);
            }
            os << ";";
            for (size_t j = 0; j < item.externals.size(); ++j) {
                os << (j ? ", " : " ");
                os << (item.externals[j] ? expr_str(*item.externals[j]) : "?");
            }
            os << ")";
        }
        os << ")";
    } else {
        os << "withdraw(";
        for (size_t i = 0; i < b.sends.size(); ++i) {
            if (i) os << " || ";
            os << expr_str(b.sends[i].amount) << ":" << b.sends[i].token << " -> "
               << expr_str(b.sends[i].recipient);
        }
        os << ")";
    }
    return os.str();
}

std::string clause_str(const ClauseDef& c) {
    std::ostringstream os;
    os << "clause " << c.name << "(";
    for (size_t i = 0; i < c.internals.size(); ++i) {
        if (i) os << ", ";
        os << c.internals[i].first << ": " << itype_str(c.internals[i].second);
    }
    os << ";";
    for (size_t i = 0; i < c.externals.size(); ++i) {
        os << (i ? ", " : " ");
        os << c.externals[i].first << ": " << itype_str(c.externals[i].second);
    }
    os << ") =\n  { ";
    if (c.funding.empty()) {
        os << "0";
    } else {
        for (size_t i = 0; i < c.funding.size(); ++i) {
            if (i) os << " + ";
            os << expr_str(c.funding[i].amount) << ":" << c.funding[i].token;
        }
    }
    bool trivial_guard = expr_is_const(c.guard) && c.guard->value.is_bool() &&
                         c.guard->value.as_bool();
    if (!trivial_guard) os << " | if " << expr_str(c.guard);
    os << " }\n";
    for (size_t i = 0; i < c.process.size(); ++i)
        os << (i == 0 ? "    " : "  + ") << branch_str(c.process[i]) << "\n";
    return os.str();
}

std::string program_str(const Program& p) {
    std::ostringstream os;
    for (size_t i = 0; i < p.clauses.size(); ++i) {
        if (i) os << "\n";
        os << clause_str(p.clauses[i]);
    }
    return os.str();
}

} // namespace illum
