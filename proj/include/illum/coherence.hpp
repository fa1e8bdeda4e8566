// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_COHERENCE_HPP
#define ILLUM_COHERENCE_HPP

#include <map>
#include <optional>

#include "illum/comprun.hpp"
#include "illum/semantics.hpp"

namespace illum {

// The bookkeeping tying a symbolic run to a computational one.
//
//   txout    configuration name (deposit or contract) -> the chain output
//            realizing it; entries are never removed, so a consumed name
//            still points at its (by then spent) output
//   key      participant -> announced verification key
//   prev_tx  advertisement identity (its canonical serialization) -> the
//            witness-nulled id of the broadcast transaction realizing it
struct CoherenceMaps {
    std::map<std::string, OutRef> txout;
    KeyDirectory key;
    std::map<std::string, std::string> prev_tx;
};

struct ParsedRun {
    SymbolicRun run;
    CoherenceMaps maps;
};

// Reads the symbolic meaning out of a computational run: the coinbase and
// key announcements fix the initial configuration, every later label either
// translates to exactly one symbolic action or is provably meaningless
// noise, and the maps record the correspondence as it is built.
//
// Errors: InconsistentRun for a run the chain rejects or one whose appends
// skip required broadcasts, UnclassifiableTransaction when the chain
// accepted a spend of a tracked output that no builder input reproduces.
Res<ParsedRun> parse_run(const ComputationalRun& rc, const Program& p);

// First place a claimed correspondence breaks down: the offending
// computational label, the symbolic action cursor at that point, and what
// went wrong. Base-configuration and final-map mismatches report the label
// index past the end of the run.
struct CounterExample {
    size_t label = 0;
    size_t action = 0;
    std::string detail;
};

// Decides whether the symbolic run, the computational run and the maps
// describe the same history, replaying both in lockstep. Returns the first
// divergence, or nothing when the correspondence holds everywhere.
std::optional<CounterExample> check_coherence(const SymbolicRun& rs, const ComputationalRun& rc,
                                              const CoherenceMaps& maps, const Program& p);

struct BalanceViolation {
    std::string detail;
};

// Checks the value correspondence at the end of the runs: every live
// deposit and contract maps to an unspent output carrying the identical
// token bag, every consumed name maps to a spent output, and the destroyed
// counter covers the total value sitting in unmapped unspent outputs.
std::optional<BalanceViolation> check_balance_preservation(const SymbolicRun& rs,
                                                           const ComputationalRun& rc,
                                                           const CoherenceMaps& maps,
                                                           const Program& p);

} // namespace illum

#endif // ILLUM_COHERENCE_HPP
