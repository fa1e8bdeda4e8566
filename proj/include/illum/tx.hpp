// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_TX_HPP
#define ILLUM_TX_HPP

#include <string>
#include <vector>

#include "illum/crypto.hpp"
#include "illum/script.hpp"
#include "illum/value.hpp"

namespace illum {

// Reference to the `index`-th output (0-based) of the transaction whose id
// is `txid` (32 raw bytes of SHA-256 over the canonical serialization).
struct OutRef {
    std::string txid;
    u32 index = 0;

    bool operator==(const OutRef& o) const { return txid == o.txid && index == o.index; }
    bool operator<(const OutRef& o) const {
        return txid != o.txid ? txid < o.txid : index < o.index;
    }
    std::string str() const;
};

struct Output {
    Bag value;
    ScriptPtr script;
    std::vector<Value> args;
};

// A transaction is the 5-tuple of inputs, witnesses, outputs, an absolute
// timelock and per-input relative timelocks. Witnesses and relative locks
// run parallel to the inputs; a coinbase transaction has all three empty.
struct Transaction {
    std::vector<OutRef> inputs;
    std::vector<std::vector<Value>> witnesses;
    std::vector<Output> outputs;
    i64 abs_lock = 0;
    std::vector<i64> rel_locks;

    bool is_coinbase() const { return inputs.empty(); }
    bool well_formed() const;

    // Canonical encoding: 4-byte magic, then each field length-prefixed.
    // serialize_unsigned() is the same encoding with every witness list
    // replaced by an empty one; it is the payload that signatures cover, so
    // filling in witnesses never invalidates a signature.
    std::string serialize() const;
    std::string serialize_unsigned() const;

    // SHA-256 of serialize(); raw 32 bytes.
    std::string id() const;
};

// Detached signature over the witness-nulled serialization.
std::string sign_tx(const Transaction& tx, const std::string& secret_key);
bool verify_tx(const Transaction& tx, const std::string& signature, const std::string& public_key);

} // namespace illum

#endif // ILLUM_TX_HPP
