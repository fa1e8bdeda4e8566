// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_CHAIN_HPP
#define ILLUM_CHAIN_HPP

#include <optional>
#include <string>
#include <vector>

#include "illum/jsonio.hpp"
#include "illum/tx.hpp"

namespace illum {

// Evaluation context of a script: the output being spent (prev, prev_out)
// and the redeeming input (red, in), both 0-based, plus the directory
// resolving participant names to public keys for key().
struct ScriptEnv {
    const Transaction* prev = nullptr;
    std::size_t prev_out = 0;
    const Transaction* red = nullptr;
    std::size_t in = 0;
    const KeyDirectory* keys = nullptr;
};

// Strict evaluation; nullopt is the failure value. Every operator fails on
// a failed operand; only the untaken branch of a conditional is skipped.
std::optional<Value> eval_script(const ScriptPtr& s, const ScriptEnv& env);

// True iff input `in` of `red` published at time `t_red` can redeem output
// `out` of `prev` published at time `t_prev`: the input references the
// output, the output script evaluates to true, and both timelocks of the
// redeeming transaction are respected.
bool can_redeem(const Transaction& prev, std::size_t out, i64 t_prev,
                const Transaction& red, std::size_t in, i64 t_red,
                const KeyDirectory& keys);

struct ChainEntry {
    Transaction tx;
    std::string txid; // cached tx.id()
    i64 time = 0;
};

// An append-only transaction log with nondecreasing timestamps. Immutable:
// chain_append returns the extended chain. The key directory is fixed at
// construction and only feeds script evaluation.
struct Chain {
    KeyDirectory keys;
    std::vector<ChainEntry> entries;

    const ChainEntry* find_tx(const std::string& txid) const;
    const Output* resolve(const OutRef& ref) const;
    bool is_spent(const OutRef& ref) const;
    i64 now() const { return entries.empty() ? 0 : entries.back().time; }
};

// Appends (tx, time) after checking every consistency condition: a single
// coinbase at time 0, nondecreasing time, all inputs resolving to unspent
// outputs with passing scripts and respected timelocks, and per-token
// output value bounded by input value. Error codes: Malformed, BadGenesis,
// SecondCoinbase, TimeRegression, MissingOutput, DoubleSpend, ScriptFailed,
// TimelockViolated, ValueCreated.
Res<Chain> chain_append(const Chain& chain, const Transaction& tx, i64 time);

struct UtxoEntry {
    OutRef ref;
    Output out;
};

// All unspent outputs in chain order (transaction order, then output index).
std::vector<UtxoEntry> utxo_set(const Chain& chain);

// One-way JSON debug encodings.
Json output_to_json(const Output& o);
Json tx_to_json(const Transaction& tx);
Json chain_to_json(const Chain& chain);

} // namespace illum

#endif // ILLUM_CHAIN_HPP
