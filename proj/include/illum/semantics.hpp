// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_SEMANTICS_HPP
#define ILLUM_SEMANTICS_HPP

#include "illum/config.hpp"

namespace illum {

// A clause call reduced to spendable form: evaluated funding and the closed
// process the new contract will run.
struct InstantiatedClause {
    Bag funding;
    Process process;
};

// X(internals; externals) reduces iff arities and types match, no external
// is a placeholder, the guard evaluates to true and every funding amount is
// nonnegative. Errors: UndefinedClause, ArityMismatch, TypeMismatch,
// StarPresent, GuardFalse, NegativeFunding, plus evaluation errors.
Res<InstantiatedClause> instantiate(const Program& p, const std::string& name,
                                    const std::vector<Value>& internals,
                                    const std::vector<Value>& externals);

// True iff `advertised` is obtainable from `declared` by filling `?` slots
// of call terminals with concrete values, comparing each decoration group
// as a multiset.
bool branch_matches(const Branch& advertised, const Branch& declared);

// Validity of a complete advertisement against a configuration: deposit and
// contract presence, destroyed-counter coverage, branch matching, timing,
// and funding arithmetic. Errors: MissingDeposit, MissingContract,
// BranchMismatch, TimelockNotExpired, InsufficientFunds, GuardFalse,
// InsufficientDestroyed, StarPresent, plus instantiation errors.
Status validate_advertisement(const Configuration& g, const Advertisement& a, const Program& p);

// One transition of the labeled system. Returns the successor configuration
// and the names created by the step. Errors: RuleNotEnabled,
// InvalidAdvertisement, MissingAuthorization.
Res<StepOutcome> step(const Configuration& g, const SymbolicAction& act, const Program& p);

// Finite over-approximation of the enabled non-delay actions whose
// parameters come from terms already in g; every returned action is
// guaranteed to step successfully (checked by replay).
std::vector<SymbolicAction> enabled_actions(const Configuration& g, const Program& p);

// Distinct participants named by a branch's authorization decorations, in
// decoration order. Requires a closed branch.
std::vector<std::string> branch_auth_parties(const Branch& b);

// Per-token total locked in the configuration: deposits + contract
// balances + destroyed counter.
Bag configuration_total(const Configuration& g);

// A run at the clause level: an initial configuration together with the
// actions taken from it, in order.
struct SymbolicRun {
    Configuration initial;
    std::vector<SymbolicAction> actions;
};

// Replays every action of the run in sequence; fails with the first action
// that does not step.
Res<Configuration> replay_run(const SymbolicRun& r, const Program& p);

// Rewrites configuration names (deposits, contracts and the names embedded
// in actions) to x0, x1, ... in order of first appearance, so that runs
// that differ only in name choice compare equal. The result is a
// comparison key, not a replayable run: names a step would create afresh
// are renamed by first mention, not by creation order.
SymbolicRun normalize_run_names(const SymbolicRun& r);

bool run_equal(const SymbolicRun& a, const SymbolicRun& b);

} // namespace illum

#endif // ILLUM_SEMANTICS_HPP
