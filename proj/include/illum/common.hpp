// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_COMMON_HPP
#define ILLUM_COMMON_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace illum {

using i64 = std::int64_t;
using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Domain failure with a stable machine-readable code ("Overflow",
// "DoubleSpend", ...) plus a human-oriented detail string. Codes are part of
// the tested interface; details are not.
struct Error {
    std::string code;
    std::string detail;

    Error() = default;
    Error(std::string c, std::string d) : code(std::move(c)), detail(std::move(d)) {}
};

// Minimal expected-or-error carrier. Deliberately tiny: no monadic sugar,
// call sites check ok() and propagate by hand, which keeps control flow
// visible in the semantics code.
template <typename T>
class Res {
public:
    Res(T v) : v_(std::move(v)) {}
    Res(Error e) : v_(std::move(e)) {}

    bool ok() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return ok(); }

    const T& operator*() const { return std::get<T>(v_); }
    T& operator*() { return std::get<T>(v_); }
    const T* operator->() const { return &std::get<T>(v_); }
    T* operator->() { return &std::get<T>(v_); }

    const Error& err() const { return std::get<Error>(v_); }
    const std::string& code() const { return err().code; }

    T take() { return std::move(std::get<T>(v_)); }

private:
    std::variant<T, Error> v_;
};

// Unit result for operations that only succeed or fail.
struct Unit {};
using Status = Res<Unit>;

inline Status ok_status() { return Status(Unit{}); }

// Internal invariant violation; never used for domain failures.
[[noreturn]] inline void die(const std::string& msg) {
    throw std::logic_error("internal error: " + msg);
}

std::string to_hex(const u8* data, size_t len);
std::string to_hex(const std::string& bytes);
std::optional<std::string> from_hex(const std::string& hex);

// Checked 64-bit arithmetic. Wraparound is never silently produced.
inline bool checked_add(i64 a, i64 b, i64& out) { return !__builtin_add_overflow(a, b, &out); }
inline bool checked_sub(i64 a, i64 b, i64& out) { return !__builtin_sub_overflow(a, b, &out); }

} // namespace illum

#endif // ILLUM_COMMON_HPP
