// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/config.hpp"

#include <algorithm>
#include <sstream>

namespace illum {

const Bag& WField::effective() const {
    static const Bag zero;
    return star ? zero : amount;
}

// ---------------------------------------------------------------------------
// Advertisement

std::string Advertisement::serialize() const {
    std::string out;
    out.push_back(static_cast<char>(kind));
    out.push_back(complete ? 1 : 0);
    switch (kind) {
        case Kind::Init: {
            Value::bytes(clause).serialize(out);
            Value::list(internals).serialize(out);
            Value::list(externals).serialize(out);
            break;
        }
        case Kind::Continue: {
            branch_serialize(branch, out);
            Value::bytes(contract).serialize(out);
            Value::of_int(branch_index).serialize(out);
            break;
        }
        case Kind::Destroy:
            break;
    }
    std::vector<Value> zs;
    for (const auto& z : deposits) zs.push_back(Value::bytes(z));
    Value::list(zs).serialize(out);
    out.push_back(w.star ? 1 : 0);
    if (!w.star) Value::bag(w.amount).serialize(out);
    Value::of_int(nonce).serialize(out);
    return out;
}

std::string Advertisement::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Init: {
            os << "Init(" << clause << "(";
            for (size_t i = 0; i < internals.size(); ++i) {
                if (i) os << ", ";
                os << internals[i].str();
            }
            os << ";";
            for (size_t i = 0; i < externals.size(); ++i) {
                os << (i ? ", " : " ");
                os << externals[i].str();
            }
            os << ")";
            break;
        }
        case Kind::Continue:
            os << "Continue(" << branch_str(branch) << ", " << contract << ", " << branch_index;
            break;
        case Kind::Destroy:
            os << "Destroy(";
            break;
    }
    os << ", [";
    for (size_t i = 0; i < deposits.size(); ++i) {
        if (i) os << ", ";
        os << deposits[i];
    }
    os << "], w=" << (w.star ? "star" : w.amount.str()) << ", h=" << nonce << ")";
    if (!complete) os << " incomplete";
    return os.str();
}

bool adv_equal(const Advertisement& a, const Advertisement& b) {
    return a.serialize() == b.serialize();
}

// ---------------------------------------------------------------------------
// Authorization

std::string Authorization::serialize() const {
    std::string out;
    Value::bytes(who).serialize(out);
    out.push_back(static_cast<char>(kind));
    Value::bytes(adv_id).serialize(out);
    Value::bytes(z1).serialize(out);
    Value::bytes(z2).serialize(out);
    Value::of_int(pos).serialize(out);
    Value::bag(amount1).serialize(out);
    Value::bag(amount2).serialize(out);
    Value::bytes(donee).serialize(out);
    return out;
}

std::string Authorization::str() const {
    std::ostringstream os;
    os << who << "[";
    switch (kind) {
        case Kind::DepositIn:
            os << z1 << " > adv";
            break;
        case Kind::BranchAct:
            os << "act > adv";
            break;
        case Kind::Join:
            os << z1 << "," << z2 << "," << pos << " > join";
            break;
        case Kind::Divide:
            os << z1 << " > " << amount1.str() << " / " << amount2.str();
            break;
        case Kind::Donate:
            os << z1 << " > " << donee;
            break;
    }
    os << "]";
    return os.str();
}

bool auth_equal(const Authorization& a, const Authorization& b) {
    return a.serialize() == b.serialize();
}

// ---------------------------------------------------------------------------
// Configuration

const Deposit* Configuration::find_deposit(const std::string& name) const {
    for (const auto& d : deposits)
        if (d.name == name) return &d;
    return nullptr;
}

const ContractTerm* Configuration::find_contract(const std::string& name) const {
    for (const auto& c : contracts)
        if (c.name == name) return &c;
    return nullptr;
}

bool Configuration::has_advert(const Advertisement& a) const {
    return std::any_of(adverts.begin(), adverts.end(),
                       [&](const Advertisement& x) { return adv_equal(x, a); });
}

bool Configuration::has_auth(const Authorization& a) const {
    return std::any_of(auths.begin(), auths.end(),
                       [&](const Authorization& x) { return auth_equal(x, a); });
}

std::string Configuration::fresh_name() { return "x" + std::to_string(name_counter++); }

void Configuration::remove_deposit(const std::string& name) {
    std::erase_if(deposits, [&](const Deposit& d) { return d.name == name; });
}

void Configuration::remove_contract(const std::string& name) {
    std::erase_if(contracts, [&](const ContractTerm& c) { return c.name == name; });
}

void Configuration::remove_advert(const Advertisement& a) {
    std::string id = a.serialize();
    std::erase_if(adverts, [&](const Advertisement& x) { return x.serialize() == id; });
}

void Configuration::remove_auth(const Authorization& a) {
    std::string id = a.serialize();
    std::erase_if(auths, [&](const Authorization& x) { return x.serialize() == id; });
}

std::string Configuration::str() const {
    std::ostringstream os;
    os << "t=" << time << " destroyed={" << destroyed.str() << "}\n";
    for (const auto& d : deposits)
        os << "  <" << d.name << ": " << d.owner << ", " << d.value.str() << ">\n";
    for (const auto& c : contracts) {
        os << "  <" << c.name << "@" << c.activation << ", " << c.balance.str() << ">:\n";
        for (size_t i = 0; i < c.process.size(); ++i)
            os << "    " << (i == 0 ? "  " : "+ ") << branch_str(c.process[i]) << "\n";
    }
    for (const auto& a : adverts) os << "  " << a.str() << "\n";
    for (const auto& a : auths) os << "  " << a.str() << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// SymbolicAction

std::string SymbolicAction::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Msg:
            os << "msg(" << adv.str() << ")";
            break;
        case Kind::Adv:
            os << "adv(" << adv.str() << ")";
            break;
        case Kind::AuthIn:
            os << "auth-in(" << who << ", " << z1 << ", " << adv.str() << ")";
            break;
        case Kind::AuthAct:
            os << "auth-act(" << who << ", " << adv.str() << ")";
            break;
        case Kind::Init:
            os << "init(" << adv.str() << ")";
            break;
        case Kind::Call:
            os << "call(" << adv.str() << ")";
            break;
        case Kind::Send:
            os << "send(" << adv.str() << ")";
            break;
        case Kind::Destroy:
            os << "destroy(" << adv.str() << ")";
            break;
        case Kind::Delay:
            os << "delay(" << delta << ")";
            break;
        case Kind::AuthJoin:
            os << "auth-join(" << who << ", " << z1 << ", " << z2 << ", " << pos << ")";
            break;
        case Kind::Join:
            os << "join(" << z1 << ", " << z2 << ")";
            break;
        case Kind::AuthDivide:
            os << "auth-divide(" << who << ", " << z1 << ", " << amount1.str() << ", "
               << amount2.str() << ")";
            break;
        case Kind::Divide:
            os << "divide(" << z1 << ")";
            break;
        case Kind::AuthDonate:
            os << "auth-donate(" << who << ", " << z1 << ", " << donee << ")";
            break;
        case Kind::Donate:
            os << "donate(" << z1 << ")";
            break;
    }
    return os.str();
}

bool action_equal(const SymbolicAction& a, const SymbolicAction& b) {
    return a.kind == b.kind && adv_equal(a.adv, b.adv) && a.who == b.who && a.z1 == b.z1 &&
           a.z2 == b.z2 && a.pos == b.pos && a.amount1 == b.amount1 && a.amount2 == b.amount2 &&
           a.donee == b.donee && a.delta == b.delta;
}

bool config_equal(const Configuration& a, const Configuration& b) {
    if (a.deposits.size() != b.deposits.size() || a.contracts.size() != b.contracts.size() ||
        a.adverts.size() != b.adverts.size() || a.auths.size() != b.auths.size())
        return false;
    for (size_t i = 0; i < a.deposits.size(); ++i) {
        const Deposit& x = a.deposits[i];
        const Deposit& y = b.deposits[i];
        if (x.name != y.name || x.owner != y.owner || x.value != y.value) return false;
    }
    for (size_t i = 0; i < a.contracts.size(); ++i) {
        const ContractTerm& x = a.contracts[i];
        const ContractTerm& y = b.contracts[i];
        if (x.name != y.name || x.activation != y.activation || x.balance != y.balance)
            return false;
        if (x.process.size() != y.process.size()) return false;
        for (size_t j = 0; j < x.process.size(); ++j)
            if (!branch_equal(x.process[j], y.process[j])) return false;
    }
    for (size_t i = 0; i < a.adverts.size(); ++i)
        if (!adv_equal(a.adverts[i], b.adverts[i])) return false;
    for (size_t i = 0; i < a.auths.size(); ++i)
        if (!auth_equal(a.auths[i], b.auths[i])) return false;
    return a.destroyed == b.destroyed && a.time == b.time;
}

} // namespace illum
