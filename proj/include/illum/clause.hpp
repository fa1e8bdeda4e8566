// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_CLAUSE_HPP
#define ILLUM_CLAUSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "illum/expr.hpp"

namespace illum {

// One callee of a call terminal. Internal actuals are fixed by the caller;
// external slots are either a concrete expression or the `?` placeholder
// left for the participants to choose at continuation time.
struct CallItem {
    std::string callee;
    std::vector<ExprPtr> internals;
    std::vector<std::optional<ExprPtr>> externals; // nullopt = `?`
};

// One recipient of a withdraw terminal: amount of a token to a participant.
struct SendItem {
    ExprPtr amount;
    std::string token;
    ExprPtr recipient;
};

// A decorated alternative of a process. Decorations are stored canonically:
// authorizations first, then absolute time bounds, then relative ones, each
// group in source order; their order carries no meaning.
struct Branch {
    std::vector<ExprPtr> auths;
    std::vector<ExprPtr> afters;
    std::vector<ExprPtr> after_rels;

    bool is_call = false;
    std::vector<CallItem> calls; // nonempty when is_call
    std::vector<SendItem> sends; // possibly empty when !is_call

    bool closed() const; // every expression a constant, `?` slots allowed
};

// A process is a nonempty choice among branches.
using Process = std::vector<Branch>;

struct FundingEntry {
    ExprPtr amount;
    std::string token;
};

struct ClauseDef {
    std::string name;
    std::vector<std::pair<std::string, IType>> internals;
    std::vector<std::pair<std::string, IType>> externals;
    std::vector<FundingEntry> funding; // empty list = zero funding
    ExprPtr guard;                     // boolean; Expr::boolean(true) if absent
    Process process;

    TypeEnv param_types() const;
    std::vector<std::string> param_names() const; // internals then externals
};

struct Program {
    std::vector<ClauseDef> clauses; // source order

    const ClauseDef* find(const std::string& name) const;
};

// Static checks: globally unique clause names, every call target defined
// with matching arities and compatible types, every free name a declared
// parameter, decorations and terminals well-typed, call lists nonempty.
// Error codes: DuplicateClause, UndefinedClause, ArityMismatch,
// TypeMismatch, UnboundParameter, EmptyProcess, EmptyCall.
Status check_program(const Program& p);

// Call-reachable clause names from root, depth-first in source order,
// root first. Unknown targets are skipped (check_program reports them).
std::vector<std::string> reachable_clauses(const Program& p, const std::string& root);

// Structural comparison of closed or open branches (exact, including
// decoration group order; callers canonicalize groups on construction).
int branch_cmp(const Branch& a, const Branch& b);
bool branch_equal(const Branch& a, const Branch& b);

// Canonical binary forms, feeding advertisement identities.
void branch_serialize(const Branch& b, std::string& out);

// Concrete-syntax rendering.
std::string branch_str(const Branch& b);
std::string clause_str(const ClauseDef& c);
std::string program_str(const Program& p);

} // namespace illum

#endif // ILLUM_CLAUSE_HPP
