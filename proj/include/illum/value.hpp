// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_VALUE_HPP
#define ILLUM_VALUE_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "illum/common.hpp"

namespace illum {

// A bag of tokens: token id -> amount. Normalized so that no entry is zero;
// the empty bag is the zero value. Amounts may not be negative in any bag
// stored in a configuration or transaction output; arithmetic helpers report
// when an operation would go negative instead of clamping.
class Bag {
public:
    Bag() = default;

    static Bag single(const std::string& token, i64 amount);

    i64 get(const std::string& token) const;
    void set(const std::string& token, i64 amount);

    bool empty() const { return entries_.empty(); }
    bool nonnegative() const;

    // Componentwise comparison: true iff this >= other on every token.
    bool covers(const Bag& other) const;

    // Checked arithmetic; false on 64-bit overflow.
    static bool add(const Bag& a, const Bag& b, Bag& out);
    static bool sub(const Bag& a, const Bag& b, Bag& out);

    const std::map<std::string, i64>& entries() const { return entries_; }

    bool operator==(const Bag& o) const { return entries_ == o.entries_; }
    bool operator!=(const Bag& o) const { return !(*this == o); }
    bool operator<(const Bag& o) const { return entries_ < o.entries_; }

    std::string str() const;

private:
    std::map<std::string, i64> entries_;
};

// The value domain shared by the symbolic interpreter and the script machine.
//
// Clause parameters and configuration terms only ever hold Int, Part
// (participant identity, with the distinguished Null), Map or Star (the `?`
// placeholder). Bytes (signatures), Bag (output values) and List (argument
// and witness vectors) exist for script evaluation and transaction fields.
class Value {
public:
    enum class Kind : u8 { Int = 1, Part, Map, Star, Bytes, Bag, List };

    Value() : kind_(Kind::Int), int_(0) {}

    static Value of_int(i64 v);
    static Value of_bool(bool b) { return of_int(b ? 1 : 0); }
    static Value participant(const std::string& name); // "" means Null
    static Value null_participant() { return participant(""); }
    static Value star();
    static Value bytes(std::string raw);
    static Value map(std::vector<std::pair<Value, Value>> sorted_entries);
    static Value empty_map() { return map({}); }
    static Value bag(Bag b);
    static Value list(std::vector<Value> items);

    Kind kind() const { return kind_; }
    bool is_int() const { return kind_ == Kind::Int; }
    bool is_part() const { return kind_ == Kind::Part; }
    bool is_map() const { return kind_ == Kind::Map; }
    bool is_star() const { return kind_ == Kind::Star; }
    bool is_bytes() const { return kind_ == Kind::Bytes; }
    bool is_bag() const { return kind_ == Kind::Bag; }
    bool is_list() const { return kind_ == Kind::List; }
    bool is_bool() const { return is_int() && (int_ == 0 || int_ == 1); }
    bool is_null_part() const { return is_part() && str_.empty(); }

    i64 as_int() const;
    bool as_bool() const { return as_int() != 0; }
    const std::string& part_name() const;   // empty for Null
    const std::string& raw_bytes() const;
    const Bag& as_bag() const;
    const std::vector<std::pair<Value, Value>>& map_entries() const;
    const std::vector<Value>& list_items() const;

    // Map operations (functional; keys kept sorted and unique).
    std::optional<Value> map_get(const Value& key) const;
    Value map_put(const Value& key, const Value& val) const;

    bool operator==(const Value& o) const { return cmp(o) == 0; }
    bool operator!=(const Value& o) const { return cmp(o) != 0; }
    bool operator<(const Value& o) const { return cmp(o) < 0; }
    int cmp(const Value& o) const;

    // True iff no Star occurs anywhere inside this value.
    bool star_free() const;

    // Canonical length-prefixed binary serialization (stable across runs;
    // used for hashing and for script-level equality).
    void serialize(std::string& out) const;
    std::string serialize() const;

    std::string str() const; // display form

private:
    Kind kind_;
    i64 int_ = 0;
    std::string str_; // participant name or raw bytes
    std::shared_ptr<const std::vector<std::pair<Value, Value>>> map_;
    std::shared_ptr<const Bag> bag_;
    std::shared_ptr<const std::vector<Value>> list_;
};

// First 8 bytes of SHA-256 over the canonical serialization, as a signed
// big-endian 64-bit integer. This is the script-level H as well as the
// embedding of clause names into output arguments.
i64 value_hash64(const Value& v);
i64 name_hash64(const std::string& name);

} // namespace illum

#endif // ILLUM_VALUE_HPP
