// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_RECONSTRUCT_HPP
#define ILLUM_RECONSTRUCT_HPP

#include <functional>

#include "illum/compile.hpp"

namespace illum {

// Looks up the output a transaction input spends. Returns nullptr when the
// position is unknown; classification then fails rather than guessing.
using OutputResolver = std::function<const Output*(const OutRef&)>;

// How a transaction relates to the tracked contract state.
//
//   Unrelated: spends no tracked output; carries no meaning here.
//   Init:      builds a fresh contract from tracked deposits.
//   Continue:  first input spends a tracked contract; outputs re-encode it.
//   Destroy:   spends tracked deposits without building anything tracked.
//
// For Init and Continue the classifier recovers the advertisement and the
// exact builder inputs whose recompilation reproduces the transaction
// (witnesses aside); for Destroy only the advertisement is meaningful.
struct TxClass {
    enum class Kind : u8 { Unrelated = 0, Init, Continue, Destroy };

    Kind kind = Kind::Unrelated;
    Advertisement adv;
    CompilerInputs inputs;
};

// Inverts the transaction builder against a symbolic configuration. The
// caller supplies the name map, the known keys, the configuration holding
// the live contracts, and a resolver for spent outputs.
//
// A transaction spending a tracked contract output must prove itself
// compiler generated: the advertisement is read back from its fields and
// recompiled, and the result must reproduce the transaction exactly. A
// failure there is reported as UnclassifiableTransaction; it signals that
// a script admitted a transaction the builder cannot produce, and must
// never happen on runs the chain accepted.
//
// Errors: UnclassifiableTransaction, UnresolvedInput.
Res<TxClass> classify_transaction(const Transaction& tx,
                                  const std::map<std::string, OutRef>& txout,
                                  const KeyDirectory& key,
                                  const Configuration& g,
                                  const Program& p,
                                  const OutputResolver& resolve);

} // namespace illum

#endif // ILLUM_RECONSTRUCT_HPP
