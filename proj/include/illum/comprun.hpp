// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_COMPRUN_HPP
#define ILLUM_COMPRUN_HPP

#include <optional>
#include <string>
#include <vector>

#include "illum/chain.hpp"
#include "illum/config.hpp"

namespace illum {

// A detached transaction signature sent over the network: which broadcast
// transaction it covers (by witness-nulled id), which input it redeems and
// which witness slot it is meant to fill. Input and slot are 1-based, as in
// the script language.
struct WitnessQuad {
    std::string txid; // raw 32 bytes, sha256 over serialize_unsigned()
    i64 input = 0;
    std::string signature; // raw signature bytes
    i64 slot = 0;
};

// One network message. Advertisement messages carry an incomplete proposal
// whose deposit and contract names are replaced by output tokens (see
// outref_token); configuration names mean nothing on the wire.
struct Message {
    enum class Kind : u8 {
        Advert = 1,  // incomplete proposal, names tokenized
        TxEncoding,  // a transaction offered for signing and appending
        Witness,     // a detached signature quad
        KeyAnnounce, // participant publishes a verification key
        Opaque,      // arbitrary bytes
    };

    Kind kind = Kind::Opaque;
    Advertisement advert;    // Advert
    Transaction tx;          // TxEncoding
    WitnessQuad wit;         // Witness
    std::string participant; // KeyAnnounce
    std::string pubkey;      // KeyAnnounce, raw key bytes
    std::string blob;        // Opaque
};

// One label of a computational run: a transaction appended to the chain, a
// time advance, or a network broadcast.
struct CompLabel {
    enum class Kind : u8 { Tx = 1, Delay, Broadcast };

    Kind kind = Kind::Delay;
    Transaction tx;     // Tx
    i64 delta = 0;      // Delay
    std::string sender; // Broadcast
    Message message;    // Broadcast
};

// A run of the transaction layer: a coinbase, the participants' key
// announcements, then appends, broadcasts and delays in network order.
struct ComputationalRun {
    std::vector<CompLabel> labels;
};

// Identity used by broadcast bookkeeping. A transaction travels without
// witnesses and is appended with them filled in, and both sightings must
// count as the same transaction, so broadcasts are tracked by the hash of
// the witness-nulled serialization rather than by id().
std::string unsigned_txid(const Transaction& tx);

// Printable token naming a chain position inside advertisement messages.
std::string outref_token(const OutRef& ref);
std::optional<OutRef> outref_of_token(const std::string& token);

// Replays the Tx labels against an empty chain, appending each at the time
// accumulated from the preceding Delay labels. The key directory only
// feeds script evaluation.
Res<Chain> run_chain(const ComputationalRun& rc, const KeyDirectory& keys);

// JSON round-trips for run files. Scripts are encoded structurally (an
// operator tag plus child list) and re-validated on the way in, so a run
// file can never smuggle in a malformed operator tree. Every *_from_json
// inverts the corresponding *_to_json; malformed input yields a JsonError.
Json script_to_json(const ScriptPtr& s);
Res<ScriptPtr> script_from_json(const Json& j);

Json transaction_to_json(const Transaction& tx);
Res<Transaction> transaction_from_json(const Json& j);

Json message_to_json(const Message& m);
Res<Message> message_from_json(const Json& j);

Json complabel_to_json(const CompLabel& l);
Res<CompLabel> complabel_from_json(const Json& j);

Json comprun_to_json(const ComputationalRun& r);
Res<ComputationalRun> comprun_from_json(const Json& j);

} // namespace illum

#endif // ILLUM_COMPRUN_HPP
