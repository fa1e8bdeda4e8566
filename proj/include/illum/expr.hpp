// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_EXPR_HPP
#define ILLUM_EXPR_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "illum/value.hpp"

namespace illum {

// Clause-level expression language: constants, parameter references,
// checked arithmetic, comparisons, lazy boolean connectives, a conditional,
// map size/lookup/update and the hash operator. Loop-free by construction.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind : u8 {
        Const,   // literal Value (never Star)
        Param,   // parameter reference by name
        Add,     // a + b (checked)
        Sub,     // a - b (checked)
        Eq,      // a = b (same-kind values)
        Lt,      // a < b (integers)
        Not,     // boolean negation
        And,     // lazy conjunction
        Or,      // lazy disjunction
        If,      // if c then a else b (branches lazy)
        Size,    // |a| (map entry count)
        Hash,    // H(a)
        MapGet,  // m[k]
        MapPut,  // m[k -> v]
    };

    Kind kind;
    Value value;                  // Const
    std::string name;             // Param
    std::vector<ExprPtr> kids;

    static ExprPtr cnst(Value v);
    static ExprPtr num(i64 v) { return cnst(Value::of_int(v)); }
    static ExprPtr boolean(bool b) { return cnst(Value::of_bool(b)); }
    static ExprPtr part(const std::string& who) { return cnst(Value::participant(who)); }
    static ExprPtr param(std::string name);
    static ExprPtr add(ExprPtr a, ExprPtr b);
    static ExprPtr sub(ExprPtr a, ExprPtr b);
    static ExprPtr eq(ExprPtr a, ExprPtr b);
    static ExprPtr lt(ExprPtr a, ExprPtr b);
    static ExprPtr negate(ExprPtr a);
    static ExprPtr conj(ExprPtr a, ExprPtr b);
    static ExprPtr disj(ExprPtr a, ExprPtr b);
    static ExprPtr cond(ExprPtr c, ExprPtr a, ExprPtr b);
    static ExprPtr size(ExprPtr a);
    static ExprPtr hash(ExprPtr a);
    static ExprPtr map_get(ExprPtr m, ExprPtr k);
    static ExprPtr map_put(ExprPtr m, ExprPtr k, ExprPtr v);
};

// True iff the expression is a single Const node.
bool expr_is_const(const ExprPtr& e);

// Structural comparison; total order used for decoration multisets and
// canonical serialization.
int expr_cmp(const ExprPtr& a, const ExprPtr& b);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Names of all parameters occurring in e, in first-occurrence order.
std::vector<std::string> expr_params(const ExprPtr& e);

// Canonical length-prefixed binary form (stable; feeds hashing).
void expr_serialize(const ExprPtr& e, std::string& out);

// Concrete-syntax rendering with minimal parentheses.
std::string expr_str(const ExprPtr& e);

// ---------------------------------------------------------------------------
// Evaluation

using Env = std::map<std::string, Value>;

// Full reduction under env. Arithmetic is checked; boolean connectives and
// the conditional do not evaluate untaken operands; everything else is
// strict. Errors: UnboundParameter, TypeMismatch, Overflow, MapKeyAbsent.
Res<Value> eval_expr(const ExprPtr& e, const Env& env);

// ---------------------------------------------------------------------------
// Typing

// Coarse clause-level types. Booleans are integers restricted to {0,1};
// map lookups type as Any since map value kinds are not tracked.
enum class IType : u8 { IntT = 1, PartT, MapT, AnyT };

std::string itype_str(IType t);
bool itype_compat(IType a, IType b);

using TypeEnv = std::map<std::string, IType>;

// Checks e under the parameter typing; error codes TypeMismatch and
// UnboundParameter.
Res<IType> type_expr(const ExprPtr& e, const TypeEnv& env);

} // namespace illum

#endif // ILLUM_EXPR_HPP
