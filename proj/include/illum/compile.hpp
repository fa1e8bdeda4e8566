// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_COMPILE_HPP
#define ILLUM_COMPILE_HPP

#include <map>

#include "illum/config.hpp"
#include "illum/crypto.hpp"
#include "illum/script.hpp"
#include "illum/tx.hpp"

namespace illum {

// Argument positions shared by every compiled output. Contract outputs
// carry the clause parameters after the three bookkeeping slots; deposit
// outputs carry the owner in the third slot instead.
inline constexpr i64 kArgNonce = 1;
inline constexpr i64 kArgBranch = 2;
inline constexpr i64 kArgName = 3;
inline constexpr i64 kArgFirstParam = 4;

// A root clause, the clauses reachable from it by following calls (root
// first, depth-first in source order), and the output script they all
// share. Clause names appear in scripts and arguments as name_hash64
// values.
struct CompilationUnit {
    std::string root;
    std::vector<std::string> reachable;
    ScriptPtr script;

    // Reachable clause whose name hashes to h, if any.
    const ClauseDef* clause_by_hash(const Program& p, i64 h) const;
};

// Compile the call closure of `root` into the shared output script. The
// script admits only redeeming transactions whose outputs re-encode the
// contract state per the clause the spent output names.
// Errors: UndefinedClause, NonClosedProgram.
Res<CompilationUnit> compile_unit(const Program& p, const std::string& root);

// Canonical script of a deposit output: the owner named by the third
// argument signs with the first witness slot.
ScriptPtr deposit_script();

// A deposit output as the compiler lays it out: three bookkeeping
// arguments and the canonical script.
Output deposit_output(const std::string& owner, Bag value, i64 nonce, i64 branch);

// An input of the transaction under construction: the chain position being
// spent together with the output found there.
struct ResolvedInput {
    OutRef ref;
    Output out;
};

// Everything the transaction builder consumes besides the program: the
// advertisement to realize, the chain positions of the named deposits and
// contracts, the key directory, the resolved inputs in order, the
// timelocks, and the per-output nonces (output k takes the k-th entry, the
// last one repeating when the list is shorter).
struct CompilerInputs {
    Advertisement adv;
    std::map<std::string, OutRef> txout;
    KeyDirectory key;
    std::vector<ResolvedInput> in;
    i64 t_abs = 0;
    std::vector<i64> t_rel;
    std::vector<i64> nonce;

    i64 nonce_at(size_t k) const;
};

// Build the transaction realizing a complete Init or Continue
// advertisement. Witness lists are left empty for the signers to fill; the
// signature payload ignores them, so filling later does not change the
// transaction id's preimage under signing.
//
// The builder refuses inputs the script layer would reject: the contract
// being continued must be spent by the first input, the advertised
// deposits must appear among the inputs in order, any remaining inputs
// must add up to the advertised destroyed amount (and are forbidden when
// that amount is the wildcard), and the declared timelocks must cover
// every waiting decoration of the advertised branch.
//
// Errors: IncompleteAdvertisement, UnsupportedKind, RelLockArityMismatch,
// NonceMissing, MissingMapping, FirstInputNotContract, MissingInput,
// DepositOrderMismatch, UnexpectedExtraInput, ExtraInputMismatch,
// Overflow, TimelockTooEarly, TypeMismatch, NegativeFunding, plus
// instantiation and evaluation errors.
Res<Transaction> compile_advertisement(const Program& p, const CompilerInputs& ci);

// What an output encodes under a compilation unit: an active contract, a
// deposit, or neither. Classification is structural (script bytes and
// argument layout), mirroring how the chain itself constrains outputs.
struct DecodedOutput {
    enum class Kind : u8 { Unknown = 0, Contract, Deposit };

    Kind kind = Kind::Unknown;

    // Contract: resolved clause and its parameter values.
    std::string clause;
    std::vector<Value> internals;
    std::vector<Value> externals;

    // Deposit: the owner named by the third argument.
    std::string owner;

    // Both: bookkeeping arguments and the token value.
    i64 nonce = 0;
    i64 branch = 0;
    Bag value;
};

DecodedOutput decode_output(const Output& o, const Program& p, const CompilationUnit& unit);

} // namespace illum

#endif // ILLUM_COMPILE_HPP
