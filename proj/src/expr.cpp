// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/expr.hpp"

#include <sstream>

namespace illum {

namespace {

ExprPtr node(Expr::Kind kind, std::vector<ExprPtr> kids) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->kids = std::move(kids);
    for (const auto& k : e->kids)
        if (!k) die("null child in expression node");
    return e;
}

} // namespace

ExprPtr Expr::cnst(Value v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Const;
    e->value = std::move(v);
    return e;
}

ExprPtr Expr::param(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Param;
    e->name = std::move(name);
    return e;
}

ExprPtr Expr::add(ExprPtr a, ExprPtr b) { return node(Kind::Add, {std::move(a), std::move(b)}); }
ExprPtr Expr::sub(ExprPtr a, ExprPtr b) { return node(Kind::Sub, {std::move(a), std::move(b)}); }
ExprPtr Expr::eq(ExprPtr a, ExprPtr b) { return node(Kind::Eq, {std::move(a), std::move(b)}); }
ExprPtr Expr::lt(ExprPtr a, ExprPtr b) { return node(Kind::Lt, {std::move(a), std::move(b)}); }
ExprPtr Expr::negate(ExprPtr a) { return node(Kind::Not, {std::move(a)}); }
ExprPtr Expr::conj(ExprPtr a, ExprPtr b) { return node(Kind::And, {std::move(a), std::move(b)}); }
ExprPtr Expr::disj(ExprPtr a, ExprPtr b) { return node(Kind::Or, {std::move(a), std::move(b)}); }
ExprPtr Expr::cond(ExprPtr c, ExprPtr a, ExprPtr b) {
    return node(Kind::If, {std::move(c), std::move(a), std::move(b)});
}
ExprPtr Expr::size(ExprPtr a) { return node(Kind::Size, {std::move(a)}); }
ExprPtr Expr::hash(ExprPtr a) { return node(Kind::Hash, {std::move(a)}); }
ExprPtr Expr::map_get(ExprPtr m, ExprPtr k) {
    return node(Kind::MapGet, {std::move(m), std::move(k)});
}
ExprPtr Expr::map_put(ExprPtr m, ExprPtr k, ExprPtr v) {
    return node(Kind::MapPut, {std::move(m), std::move(k), std::move(v)});
}

bool expr_is_const(const ExprPtr& e) { return e && e->kind == Expr::Kind::Const; }

int expr_cmp(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind)
        return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
    switch (a->kind) {
        case Expr::Kind::Const:
            return a->value.cmp(b->value);
        case Expr::Kind::Param:
            if (a->name != b->name) return a->name < b->name ? -1 : 1;
            return 0;
        default: {
            size_t n = std::min(a->kids.size(), b->kids.size());
            for (size_t i = 0; i < n; ++i)
                if (int c = expr_cmp(a->kids[i], b->kids[i])) return c;
            if (a->kids.size() != b->kids.size())
                return a->kids.size() < b->kids.size() ? -1 : 1;
            return 0;
        }
    }
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) { return expr_cmp(a, b) == 0; }

namespace {

void collect_params(const ExprPtr& e, std::vector<std::string>& out) {
    if (e->kind == Expr::Kind::Param) {
        for (const auto& seen : out)
            if (seen == e->name) return;
        out.push_back(e->name);
        return;
    }
    for (const auto& k : e->kids) collect_params(k, out);
}

} // namespace

std::vector<std::string> expr_params(const ExprPtr& e) {
    std::vector<std::string> out;
    collect_params(e, out);
    return out;
}

void expr_serialize(const ExprPtr& e, std::string& out) {
    out.push_back(static_cast<char>(0x40 + static_cast<int>(e->kind)));
    switch (e->kind) {
        case Expr::Kind::Const:
            e->value.serialize(out);
            break;
        case Expr::Kind::Param: {
            Value::bytes(e->name).serialize(out);
            break;
        }
        default:
            out.push_back(static_cast<char>(e->kids.size()));
            for (const auto& k : e->kids) expr_serialize(k, out);
            break;
    }
}

// ---------------------------------------------------------------------------
// Printing. Precedence levels, loosest first: or < and < not < comparison
// < additive < primary. The conditional always parenthesizes when nested.

namespace {

int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::If:
            return 0;
        case Expr::Kind::Or:
            return 1;
        case Expr::Kind::And:
            return 2;
        case Expr::Kind::Not:
            return 3;
        case Expr::Kind::Eq:
        case Expr::Kind::Lt:
            return 4;
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            return 5;
        default:
            return 6;
    }
}

void print_expr(const ExprPtr& e, int parent_prec, std::ostringstream& os) {
    int prec = precedence(e->kind);
    bool paren = prec < parent_prec;
    if (paren) os << "(";
    switch (e->kind) {
        case Expr::Kind::Const:
            os << e->value.str();
            break;
        case Expr::Kind::Param:
            os << e->name;
            break;
        case Expr::Kind::Add:
            print_expr(e->kids[0], prec, os);
            os << " + ";
            print_expr(e->kids[1], prec + 1, os);
            break;
        case Expr::Kind::Sub:
            print_expr(e->kids[0], prec, os);
            os << " - ";
            print_expr(e->kids[1], prec + 1, os);
            break;
        case Expr::Kind::Eq:
            print_expr(e->kids[0], prec + 1, os);
            os << " = ";
            print_expr(e->kids[1], prec + 1, os);
            break;
        case Expr::Kind::Lt:
            print_expr(e->kids[0], prec + 1, os);
            os << " < ";
            print_expr(e->kids[1], prec + 1, os);
            break;
        case Expr::Kind::Not:
            os << "not ";
            print_expr(e->kids[0], prec, os);
            break;
        case Expr::Kind::And:
            print_expr(e->kids[0], prec, os);
            os << " and ";
            print_expr(e->kids[1], prec + 1, os);
            break;
        case Expr::Kind::Or:
            print_expr(e->kids[0], prec, os);
            os << " or ";
            print_expr(e->kids[1], prec + 1, os);
            break;
        case Expr::Kind::If:
            os << "if ";
            print_expr(e->kids[0], 1, os);
            os << " then ";
            print_expr(e->kids[1], 1, os);
            os << " else ";
            print_expr(e->kids[2], 1, os);
            break;
        case Expr::Kind::Size:
            os << "|";
            print_expr(e->kids[0], 0, os);
            os << "|";
            break;
        case Expr::Kind::Hash:
            os << "H(";
            print_expr(e->kids[0], 0, os);
            os << ")";
            break;
        case Expr::Kind::MapGet:
            print_expr(e->kids[0], 6, os);
            os << "[";
            print_expr(e->kids[1], 0, os);
            os << "]";
            break;
        case Expr::Kind::MapPut:
            print_expr(e->kids[0], 6, os);
            os << "[";
            print_expr(e->kids[1], 0, os);
            os << " -> ";
            print_expr(e->kids[2], 0, os);
            os << "]";
            break;
    }
    if (paren) os << ")";
}

} // namespace

std::string expr_str(const ExprPtr& e) {
    std::ostringstream os;
    print_expr(e, 0, os);
    return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Res<Value> eval_bool_operand(const ExprPtr& e, const Env& env) {
    auto v = eval_expr(e, env);
    if (!v) return v;
    if (!v->is_bool())
        return Error{"TypeMismatch", "boolean operand expected, got " + v->str()};
    return v;
}

} // namespace

Res<Value> eval_expr(const ExprPtr& e, const Env& env) {
    switch (e->kind) {
        case Expr::Kind::Const:
            if (e->value.is_star())
                return Error{"TypeMismatch", "placeholder cannot be evaluated"};
            return e->value;
        case Expr::Kind::Param: {
            auto it = env.find(e->name);
            if (it == env.end())
                return Error{"UnboundParameter", "parameter " + e->name + " is not bound"};
            if (it->second.is_star())
                return Error{"TypeMismatch", "parameter " + e->name + " bound to placeholder"};
            return it->second;
        }
        case Expr::Kind::Add:
        case Expr::Kind::Sub: {
            auto a = eval_expr(e->kids[0], env);
            if (!a) return a;
            auto b = eval_expr(e->kids[1], env);
            if (!b) return b;
            if (!a->is_int() || !b->is_int())
                return Error{"TypeMismatch", "arithmetic on non-integers"};
            i64 out = 0;
            bool fits = e->kind == Expr::Kind::Add ? checked_add(a->as_int(), b->as_int(), out)
                                                   : checked_sub(a->as_int(), b->as_int(), out);
            if (!fits) return Error{"Overflow", "64-bit arithmetic overflow"};
            return Value::of_int(out);
        }
        case Expr::Kind::Eq: {
            auto a = eval_expr(e->kids[0], env);
            if (!a) return a;
            auto b = eval_expr(e->kids[1], env);
            if (!b) return b;
            if (a->kind() != b->kind())
                return Error{"TypeMismatch",
                             "equality between " + a->str() + " and " + b->str()};
            return Value::of_bool(a->cmp(*b) == 0);
        }
        case Expr::Kind::Lt: {
            auto a = eval_expr(e->kids[0], env);
            if (!a) return a;
            auto b = eval_expr(e->kids[1], env);
            if (!b) return b;
            if (!a->is_int() || !b->is_int())
                return Error{"TypeMismatch", "ordering on non-integers"};
            return Value::of_bool(a->as_int() < b->as_int());
        }
        case Expr::Kind::Not: {
            auto a = eval_bool_operand(e->kids[0], env);
            if (!a) return a;
            return Value::of_bool(!a->as_bool());
        }
        case Expr::Kind::And: {
            auto a = eval_bool_operand(e->kids[0], env);
            if (!a) return a;
            if (!a->as_bool()) return Value::of_bool(false);
            return eval_bool_operand(e->kids[1], env);
        }
        case Expr::Kind::Or: {
            auto a = eval_bool_operand(e->kids[0], env);
            if (!a) return a;
            if (a->as_bool()) return Value::of_bool(true);
            return eval_bool_operand(e->kids[1], env);
        }
        case Expr::Kind::If: {
            auto c = eval_bool_operand(e->kids[0], env);
            if (!c) return c;
            return eval_expr(c->as_bool() ? e->kids[1] : e->kids[2], env);
        }
        case Expr::Kind::Size: {
            auto m = eval_expr(e->kids[0], env);
            if (!m) return m;
            if (!m->is_map()) return Error{"TypeMismatch", "size of non-map"};
            return Value::of_int(static_cast<i64>(m->map_entries().size()));
        }
        case Expr::Kind::Hash: {
            auto v = eval_expr(e->kids[0], env);
            if (!v) return v;
            return Value::of_int(value_hash64(*v));
        }
        case Expr::Kind::MapGet: {
            auto m = eval_expr(e->kids[0], env);
            if (!m) return m;
            auto k = eval_expr(e->kids[1], env);
            if (!k) return k;
            if (!m->is_map()) return Error{"TypeMismatch", "lookup on non-map"};
            auto v = m->map_get(*k);
            if (!v) return Error{"MapKeyAbsent", "no entry for key " + k->str()};
            return *v;
        }
        case Expr::Kind::MapPut: {
            auto m = eval_expr(e->kids[0], env);
            if (!m) return m;
            auto k = eval_expr(e->kids[1], env);
            if (!k) return k;
            auto v = eval_expr(e->kids[2], env);
            if (!v) return v;
            if (!m->is_map()) return Error{"TypeMismatch", "update on non-map"};
            return m->map_put(*k, *v);
        }
    }
    die("eval_expr unreachable");
}

// ---------------------------------------------------------------------------
// Typing

std::string itype_str(IType t) {
    switch (t) {
        case IType::IntT:
            return "int";
        case IType::PartT:
            return "part";
        case IType::MapT:
            return "map";
        case IType::AnyT:
            return "any";
    }
    die("itype_str unreachable");
}

bool itype_compat(IType a, IType b) { return a == b || a == IType::AnyT || b == IType::AnyT; }

namespace {

Res<IType> require_type(const ExprPtr& e, const TypeEnv& env, IType want,
                        const char* what) {
    auto t = type_expr(e, env);
    if (!t) return t;
    if (!itype_compat(*t, want))
        return Error{"TypeMismatch",
                     std::string(what) + " expects " + itype_str(want) + ", got " + itype_str(*t)};
    return want;
}

} // namespace

Res<IType> type_expr(const ExprPtr& e, const TypeEnv& env) {
    switch (e->kind) {
        case Expr::Kind::Const:
            switch (e->value.kind()) {
                case Value::Kind::Int:
                    return IType::IntT;
                case Value::Kind::Part:
                    return IType::PartT;
                case Value::Kind::Map:
                    return IType::MapT;
                default:
                    return Error{"TypeMismatch", "literal " + e->value.str() + " has no clause type"};
            }
        case Expr::Kind::Param: {
            auto it = env.find(e->name);
            if (it == env.end())
                return Error{"UnboundParameter", "parameter " + e->name + " is not declared"};
            return it->second;
        }
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
        case Expr::Kind::Lt: {
            if (auto t = require_type(e->kids[0], env, IType::IntT, "arithmetic"); !t) return t;
            if (auto t = require_type(e->kids[1], env, IType::IntT, "arithmetic"); !t) return t;
            return IType::IntT;
        }
        case Expr::Kind::Eq: {
            auto a = type_expr(e->kids[0], env);
            if (!a) return a;
            auto b = type_expr(e->kids[1], env);
            if (!b) return b;
            if (!itype_compat(*a, *b))
                return Error{"TypeMismatch", "equality between " + itype_str(*a) + " and " +
                                                 itype_str(*b)};
            return IType::IntT;
        }
        case Expr::Kind::Not:
            return require_type(e->kids[0], env, IType::IntT, "negation");
        case Expr::Kind::And:
        case Expr::Kind::Or: {
            if (auto t = require_type(e->kids[0], env, IType::IntT, "connective"); !t) return t;
            if (auto t = require_type(e->kids[1], env, IType::IntT, "connective"); !t) return t;
            return IType::IntT;
        }
        case Expr::Kind::If: {
            if (auto t = require_type(e->kids[0], env, IType::IntT, "condition"); !t) return t;
            auto a = type_expr(e->kids[1], env);
            if (!a) return a;
            auto b = type_expr(e->kids[2], env);
            if (!b) return b;
            if (!itype_compat(*a, *b))
                return Error{"TypeMismatch", "conditional branches of different types"};
            return *a == IType::AnyT ? *b : *a;
        }
        case Expr::Kind::Size:
            if (auto t = require_type(e->kids[0], env, IType::MapT, "size"); !t) return t;
            return IType::IntT;
        case Expr::Kind::Hash: {
            auto t = type_expr(e->kids[0], env);
            if (!t) return t;
            return IType::IntT;
        }
        case Expr::Kind::MapGet: {
            if (auto t = require_type(e->kids[0], env, IType::MapT, "lookup"); !t) return t;
            auto k = type_expr(e->kids[1], env);
            if (!k) return k;
            if (*k == IType::MapT)
                return Error{"TypeMismatch", "map keys must be integers or participants"};
            return IType::AnyT;
        }
        case Expr::Kind::MapPut: {
            if (auto t = require_type(e->kids[0], env, IType::MapT, "update"); !t) return t;
            auto k = type_expr(e->kids[1], env);
            if (!k) return k;
            if (*k == IType::MapT)
                return Error{"TypeMismatch", "map keys must be integers or participants"};
            auto v = type_expr(e->kids[2], env);
            if (!v) return v;
            if (*v == IType::MapT)
                return Error{"TypeMismatch", "map values must be integers or participants"};
            return IType::MapT;
        }
    }
    die("type_expr unreachable");
}

} // namespace illum
