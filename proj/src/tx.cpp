// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/tx.hpp"

#include <sstream>

namespace illum {

namespace {

// Canonical encoding version tag.
const char kMagic[4] = {'u', 't', 'x', '1'};

void put_u32(std::string& out, u32 v) {
    for (int shift = 24; shift >= 0; shift -= 8)
        out.push_back(static_cast<char>((v >> shift) & 0xff));
}

void put_i64(std::string& out, i64 v) {
    auto u = static_cast<u64>(v);
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<char>((u >> shift) & 0xff));
}

void serialize_tx(const Transaction& tx, bool with_witnesses, std::string& out) {
    out.append(kMagic, sizeof kMagic);
    put_u32(out, static_cast<u32>(tx.inputs.size()));
    for (const auto& in : tx.inputs) {
        out += in.txid;
        put_u32(out, in.index);
    }
    if (with_witnesses) {
        put_u32(out, static_cast<u32>(tx.witnesses.size()));
        for (const auto& wit : tx.witnesses) {
            put_u32(out, static_cast<u32>(wit.size()));
            for (const auto& v : wit) v.serialize(out);
        }
    } else {
        put_u32(out, 0);
    }
    put_u32(out, static_cast<u32>(tx.outputs.size()));
    for (const auto& o : tx.outputs) {
        Value::bag(o.value).serialize(out);
        script_serialize(o.script, out);
        put_u32(out, static_cast<u32>(o.args.size()));
        for (const auto& a : o.args) a.serialize(out);
    }
    put_i64(out, tx.abs_lock);
    put_u32(out, static_cast<u32>(tx.rel_locks.size()));
    for (i64 d : tx.rel_locks) put_i64(out, d);
}

} // namespace

std::string OutRef::str() const {
    std::ostringstream os;
    Hash256 h{};
    if (txid.size() == h.size()) {
        std::copy(txid.begin(), txid.end(), h.begin());
        os << hash_hex(h).substr(0, 12);
    } else {
        os << "<bad txid>";
    }
    os << ":" << index;
    return os.str();
}

bool Transaction::well_formed() const {
    if (witnesses.size() != inputs.size() || rel_locks.size() != inputs.size()) return false;
    if (abs_lock < 0) return false;
    for (i64 d : rel_locks)
        if (d < 0) return false;
    for (const auto& in : inputs)
        if (in.txid.size() != 32) return false;
    for (const auto& o : outputs) {
        if (!o.script) return false;
        if (!o.value.nonnegative()) return false;
    }
    return true;
}

std::string Transaction::serialize() const {
    std::string out;
    serialize_tx(*this, true, out);
    return out;
}

std::string Transaction::serialize_unsigned() const {
    std::string out;
    serialize_tx(*this, false, out);
    return out;
}

std::string Transaction::id() const {
    Hash256 h = sha256(serialize());
    return std::string(h.begin(), h.end());
}

std::string sign_tx(const Transaction& tx, const std::string& secret_key) {
    return ed25519_sign(tx.serialize_unsigned(), secret_key);
}

bool verify_tx(const Transaction& tx, const std::string& signature, const std::string& public_key) {
    return ed25519_verify(tx.serialize_unsigned(), signature, public_key);
}

} // namespace illum
