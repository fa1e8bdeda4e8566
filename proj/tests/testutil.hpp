// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_TESTS_TESTUTIL_HPP
#define ILLUM_TESTS_TESTUTIL_HPP

#include <doctest.h>

#include "illum/illparse.hpp"
#include "illum/rng.hpp"
#include "illum/semantics.hpp"

namespace illum::testutil {

// Failure text for assertion messages; empty when the result is fine.
template <typename T>
std::string fail_detail(const Res<T>& r) {
    return r.ok() ? std::string() : r.err().code + ": " + r.err().detail;
}

// Parses or aborts the test; keeps fixture setup terse.
inline Program must_parse_program(const std::string& src) {
    auto p = parse_program(src);
    REQUIRE_MESSAGE(p.ok(), fail_detail(p));
    auto chk = check_program(*p);
    REQUIRE_MESSAGE(chk.ok(), fail_detail(chk));
    return p.take();
}

inline ExprPtr must_parse_expr(const std::string& src) {
    auto e = parse_expression(src);
    REQUIRE_MESSAGE(e.ok(), fail_detail(e));
    return e.take();
}

inline Branch must_parse_branch(const std::string& src) {
    auto b = parse_branch(src);
    REQUIRE_MESSAGE(b.ok(), fail_detail(b));
    return b.take();
}

inline Deposit dep(const std::string& name, const std::string& owner, i64 amount,
                   const std::string& token = "T") {
    return Deposit{name, owner, Bag::single(token, amount)};
}

// A random Value whose kind and content are driven by the generator;
// depth-bounded so maps and lists stay small.
inline Value random_value(Rng& rng, int depth = 0) {
    u64 k = rng.below(depth >= 2 ? 4 : 6);
    switch (k) {
        case 0:
            return Value::of_int(static_cast<i64>(rng.next()) % 1000);
        case 1:
            return Value::participant(std::string(1, static_cast<char>('A' + rng.below(5))));
        case 2:
            return Value::null_participant();
        case 3: {
            std::string raw;
            for (u64 i = rng.below(4); i > 0; --i)
                raw.push_back(static_cast<char>(rng.below(256)));
            return Value::bytes(raw);
        }
        case 4: {
            std::vector<std::pair<Value, Value>> entries;
            for (u64 i = rng.below(3); i > 0; --i) {
                Value key = Value::of_int(static_cast<i64>(rng.below(10)));
                bool dup = false;
                for (const auto& e : entries) dup = dup || e.first == key;
                if (!dup) entries.emplace_back(key, random_value(rng, depth + 1));
            }
            std::sort(entries.begin(), entries.end(),
                      [](const auto& a, const auto& b) { return a.first.cmp(b.first) < 0; });
            return Value::map(std::move(entries));
        }
        default: {
            std::vector<Value> items;
            for (u64 i = rng.below(3); i > 0; --i) items.push_back(random_value(rng, depth + 1));
            return Value::list(std::move(items));
        }
    }
}

// A random well-formed expression over integer parameters a, b and map
// parameter M; used for printer/parser round-trip properties.
inline ExprPtr random_int_expr(Rng& rng, int depth = 0) {
    if (depth >= 4 || rng.chance(1, 3)) {
        switch (rng.below(3)) {
            case 0:
                return Expr::num(static_cast<i64>(rng.below(100)));
            case 1:
                return Expr::param("a");
            default:
                return Expr::param("b");
        }
    }
    switch (rng.below(8)) {
        case 0:
            return Expr::add(random_int_expr(rng, depth + 1), random_int_expr(rng, depth + 1));
        case 1:
            return Expr::sub(random_int_expr(rng, depth + 1), random_int_expr(rng, depth + 1));
        case 2:
            return Expr::cond(
                Expr::lt(random_int_expr(rng, depth + 1), random_int_expr(rng, depth + 1)),
                random_int_expr(rng, depth + 1), random_int_expr(rng, depth + 1));
        case 3:
            return Expr::hash(random_int_expr(rng, depth + 1));
        case 4:
            return Expr::map_get(Expr::param("M"), random_int_expr(rng, depth + 1));
        case 5:
            return Expr::size(
                Expr::map_put(Expr::param("M"), random_int_expr(rng, depth + 1),
                              random_int_expr(rng, depth + 1)));
        case 6: {
            ExprPtr cmp =
                Expr::eq(random_int_expr(rng, depth + 1), random_int_expr(rng, depth + 1));
            ExprPtr other =
                Expr::lt(random_int_expr(rng, depth + 1), random_int_expr(rng, depth + 1));
            return Expr::cond(rng.chance(1, 2) ? Expr::conj(cmp, other)
                                               : Expr::disj(Expr::negate(cmp), other),
                              random_int_expr(rng, depth + 1), random_int_expr(rng, depth + 1));
        }
        default:
            return Expr::sub(random_int_expr(rng, depth + 1), random_int_expr(rng, depth + 1));
    }
}

} // namespace illum::testutil

#endif // ILLUM_TESTS_TESTUTIL_HPP
