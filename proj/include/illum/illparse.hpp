// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_ILLPARSE_HPP
#define ILLUM_ILLPARSE_HPP

#include <string>

#include "illum/clause.hpp"

namespace illum {

// Text front end for clause programs. The grammar accepted here is exactly
// the language produced by program_str, clause_str, branch_str and expr_str,
// plus a few conveniences for hand-written files: `//` line comments, the
// comparison shorthands `>`, `>=`, `<=` and `!=` (rewritten to `<`, `=` and
// `not`), the literals `true` and `false`, and unparenthesized `else if`
// chains.
Res<Program> parse_program(const std::string& source);

// Parses a single expression; the whole input must be consumed.
Res<ExprPtr> parse_expression(const std::string& source);

// Parses a single branch (decorations plus terminal); the whole input must
// be consumed.
Res<Branch> parse_branch(const std::string& source);

} // namespace illum

#endif // ILLUM_ILLPARSE_HPP
