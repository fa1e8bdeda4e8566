// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_CRYPTO_HPP
#define ILLUM_CRYPTO_HPP

#include <array>
#include <map>
#include <string>

#include "illum/common.hpp"

namespace illum {

using Hash256 = std::array<u8, 32>;

Hash256 sha256(const std::string& data);
std::string hash_hex(const Hash256& h);

// Ed25519 over the SHA-256 of the signed payload (libsodium-backed).
struct KeyPair {
    std::string pub;  // 32 bytes
    std::string sec;  // 64 bytes

    // Deterministic key generation from a seed string; the same participant
    // name always yields the same pair within a seeded scenario.
    static KeyPair from_seed(const std::string& seed);
};

std::string ed25519_sign(const std::string& payload, const std::string& secret_key);
bool ed25519_verify(const std::string& payload, const std::string& signature, const std::string& public_key);

// Participant name -> public key. At the computational level this directory
// is established by the key broadcasts at the head of a run.
using KeyDirectory = std::map<std::string, std::string>;

} // namespace illum

#endif // ILLUM_CRYPTO_HPP
