// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/crypto.hpp"

#include <sodium.h>

namespace illum {

namespace {

void ensure_sodium() {
    static const int rc = sodium_init();
    if (rc < 0) die("libsodium initialization failed");
}

} // namespace

Hash256 sha256(const std::string& data) {
    ensure_sodium();
    Hash256 out{};
    crypto_hash_sha256(out.data(), reinterpret_cast<const u8*>(data.data()), data.size());
    return out;
}

std::string hash_hex(const Hash256& h) { return to_hex(h.data(), h.size()); }

KeyPair KeyPair::from_seed(const std::string& seed) {
    ensure_sodium();
    Hash256 seed_bytes = sha256("keypair-seed:" + seed);
    static_assert(crypto_sign_SEEDBYTES == 32);
    u8 pk[crypto_sign_PUBLICKEYBYTES];
    u8 sk[crypto_sign_SECRETKEYBYTES];
    crypto_sign_seed_keypair(pk, sk, seed_bytes.data());
    KeyPair kp;
    kp.pub.assign(reinterpret_cast<char*>(pk), sizeof pk);
    kp.sec.assign(reinterpret_cast<char*>(sk), sizeof sk);
    return kp;
}

std::string ed25519_sign(const std::string& payload, const std::string& secret_key) {
    ensure_sodium();
    if (secret_key.size() != crypto_sign_SECRETKEYBYTES) die("bad secret key length");
    Hash256 digest = sha256(payload);
    u8 sig[crypto_sign_BYTES];
    unsigned long long sig_len = 0;
    crypto_sign_detached(sig, &sig_len, digest.data(), digest.size(),
                         reinterpret_cast<const u8*>(secret_key.data()));
    return std::string(reinterpret_cast<char*>(sig), sig_len);
}

bool ed25519_verify(const std::string& payload, const std::string& signature,
                    const std::string& public_key) {
    ensure_sodium();
    if (signature.size() != crypto_sign_BYTES) return false;
    if (public_key.size() != crypto_sign_PUBLICKEYBYTES) return false;
    Hash256 digest = sha256(payload);
    return crypto_sign_verify_detached(reinterpret_cast<const u8*>(signature.data()),
                                       digest.data(), digest.size(),
                                       reinterpret_cast<const u8*>(public_key.data())) == 0;
}

std::string to_hex(const u8* data, size_t len) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (size_t i = 0; i < len; ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0xf]);
    }
    return out;
}

std::string to_hex(const std::string& bytes) {
    return to_hex(reinterpret_cast<const u8*>(bytes.data()), bytes.size());
}

std::optional<std::string> from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) return std::nullopt;
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    std::string out;
    out.reserve(hex.size() / 2);
    for (size_t i = 0; i < hex.size(); i += 2) {
        int hi = nibble(hex[i]);
        int lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out.push_back(static_cast<char>((hi << 4) | lo));
    }
    return out;
}

} // namespace illum
