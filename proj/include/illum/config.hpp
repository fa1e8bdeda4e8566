// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_CONFIG_HPP
#define ILLUM_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "illum/clause.hpp"

namespace illum {

// A deposit term: named, owned, funded.
struct Deposit {
    std::string name;
    std::string owner;
    Bag value;
};

// An active contract term: the remaining choice (closed form), its balance,
// and the time it was activated (relative time bounds count from there).
struct ContractTerm {
    std::string name;
    i64 activation = 0;
    Process process;
    Bag balance;
};

// The amount of destroyed funds an advertisement claims to consume: either
// a concrete per-token amount or the wildcard (any amount, written `star`),
// which honest participants use to stay independent of adversarial junk.
struct WField {
    bool star = false;
    Bag amount; // ignored when star

    static WField of_star() { return WField{true, Bag{}}; }
    static WField of(Bag b) { return WField{false, std::move(b)}; }

    // Arithmetic reading: star counts as zero.
    const Bag& effective() const;
};

// A proposal term: initiate a contract, continue one along a branch, or
// destroy deposits. Incomplete proposals may still contain placeholders in
// external positions; only complete ones can be acted upon.
struct Advertisement {
    enum class Kind : u8 { Init = 1, Continue, Destroy };

    Kind kind = Kind::Init;
    bool complete = true;

    // Init: the instantiated root call X(internals; externals).
    std::string clause;
    std::vector<Value> internals;
    std::vector<Value> externals; // may contain Star when incomplete

    // Continue: the advertised branch (closed), target contract and its
    // branch index j (1-based).
    Branch branch;
    std::string contract;
    i64 branch_index = 0;

    // Shared: deposits to consume, destroyed-funds field, nonce.
    std::vector<std::string> deposits;
    WField w;
    i64 nonce = 0;

    // Canonical identity: two advertisements are the same configuration
    // term iff their serializations agree.
    std::string serialize() const;
    std::string str() const;
};

bool adv_equal(const Advertisement& a, const Advertisement& b);

// An authorization term A[...]: a participant enabling a specific step.
struct Authorization {
    enum class Kind : u8 {
        DepositIn = 1, // spend deposit z1 for advertisement adv_id
        BranchAct,     // take the auth-decorated branch of advertisement adv_id
        Join,          // merge z1 and z2 (pos tells which deposit this covers)
        Divide,        // split z1 into amount1 + amount2
        Donate,        // give z1 to donee
    };

    std::string who;
    Kind kind = Kind::DepositIn;
    std::string adv_id; // DepositIn/BranchAct
    std::string z1, z2;
    i64 pos = 0;
    Bag amount1, amount2;
    std::string donee;

    std::string serialize() const;
    std::string str() const;
};

bool auth_equal(const Authorization& a, const Authorization& b);

// A full configuration. Term vectors keep insertion order; replaying the
// same actions reproduces identical configurations, fresh-name counter
// included.
struct Configuration {
    std::vector<Deposit> deposits;
    std::vector<ContractTerm> contracts;
    std::vector<Advertisement> adverts; // complete and incomplete
    std::vector<Authorization> auths;
    Bag destroyed;
    i64 time = 0;
    i64 name_counter = 0;

    const Deposit* find_deposit(const std::string& name) const;
    const ContractTerm* find_contract(const std::string& name) const;
    bool has_advert(const Advertisement& a) const;
    bool has_auth(const Authorization& a) const;

    std::string fresh_name();
    void remove_deposit(const std::string& name);
    void remove_contract(const std::string& name);
    void remove_advert(const Advertisement& a);
    void remove_auth(const Authorization& a);

    std::string str() const;
};

// One label of the symbolic transition system.
struct SymbolicAction {
    enum class Kind : u8 {
        Msg = 1,  // broadcast an incomplete advertisement
        Adv,      // publish a complete, valid advertisement
        AuthIn,   // who authorizes deposit z1 for advertisement
        AuthAct,  // who authorizes the advertised branch
        Init,     // consume an Init advertisement, create a contract
        Call,     // consume a Continue advertisement, spawn callees
        Send,     // consume a Continue advertisement, pay recipients
        Destroy,  // consume a Destroy advertisement
        Delay,
        AuthJoin,
        Join,
        AuthDivide,
        Divide,
        AuthDonate,
        Donate,
    };

    Kind kind = Kind::Delay;
    Advertisement adv; // Msg/Adv/AuthIn/AuthAct/Init/Call/Send/Destroy
    std::string who;   // auth actions
    std::string z1, z2;
    i64 pos = 0;
    Bag amount1, amount2;
    std::string donee;
    i64 delta = 0;

    std::string str() const;
};

bool action_equal(const SymbolicAction& a, const SymbolicAction& b);

// True when the configurations hold the same terms in the same order and
// agree on time and the destroyed counter. The fresh-name counter is not
// compared.
bool config_equal(const Configuration& a, const Configuration& b);

// Result of applying an action: the successor configuration plus the names
// created by this step, in creation order (used to maintain output maps).
struct StepOutcome {
    Configuration next;
    std::vector<std::string> created;
};

} // namespace illum

#endif // ILLUM_CONFIG_HPP
