// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/value.hpp"

#include <algorithm>
#include <sstream>

#include "illum/crypto.hpp"

namespace illum {

namespace {

void put_u32(std::string& out, u32 v) {
    out.push_back(static_cast<char>((v >> 24) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>(v & 0xff));
}

void put_i64(std::string& out, i64 v) {
    auto u = static_cast<u64>(v);
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<char>((u >> shift) & 0xff));
}

void put_str(std::string& out, const std::string& s) {
    put_u32(out, static_cast<u32>(s.size()));
    out += s;
}

} // namespace

// ---------------------------------------------------------------------------
// Bag

Bag Bag::single(const std::string& token, i64 amount) {
    Bag out;
    out.set(token, amount);
    return out;
}

i64 Bag::get(const std::string& token) const {
    auto it = entries_.find(token);
    return it == entries_.end() ? 0 : it->second;
}

void Bag::set(const std::string& token, i64 amount) {
    if (amount == 0)
        entries_.erase(token);
    else
        entries_[token] = amount;
}

bool Bag::nonnegative() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const auto& e) { return e.second >= 0; });
}

bool Bag::covers(const Bag& other) const {
    for (const auto& [token, amount] : other.entries_)
        if (get(token) < amount) return false;
    return true;
}

bool Bag::add(const Bag& a, const Bag& b, Bag& out) {
    out = a;
    for (const auto& [token, amount] : b.entries_) {
        i64 sum = 0;
        if (!checked_add(out.get(token), amount, sum)) return false;
        out.set(token, sum);
    }
    return true;
}

bool Bag::sub(const Bag& a, const Bag& b, Bag& out) {
    out = a;
    for (const auto& [token, amount] : b.entries_) {
        i64 diff = 0;
        if (!checked_sub(out.get(token), amount, diff)) return false;
        out.set(token, diff);
    }
    return out.nonnegative();
}

std::string Bag::str() const {
    if (entries_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [token, amount] : entries_) {
        if (!first) os << " + ";
        first = false;
        os << amount << ":" << token;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Value factories

Value Value::of_int(i64 v) {
    Value out;
    out.kind_ = Kind::Int;
    out.int_ = v;
    return out;
}

Value Value::participant(const std::string& name) {
    Value out;
    out.kind_ = Kind::Part;
    out.str_ = name;
    return out;
}

Value Value::star() {
    Value out;
    out.kind_ = Kind::Star;
    return out;
}

Value Value::bytes(std::string raw) {
    Value out;
    out.kind_ = Kind::Bytes;
    out.str_ = std::move(raw);
    return out;
}

Value Value::map(std::vector<std::pair<Value, Value>> sorted_entries) {
    std::sort(sorted_entries.begin(), sorted_entries.end(),
              [](const auto& a, const auto& b) { return a.first.cmp(b.first) < 0; });
    Value out;
    out.kind_ = Kind::Map;
    out.map_ =
        std::make_shared<const std::vector<std::pair<Value, Value>>>(std::move(sorted_entries));
    return out;
}

Value Value::bag(Bag b) {
    Value out;
    out.kind_ = Kind::Bag;
    out.bag_ = std::make_shared<const Bag>(std::move(b));
    return out;
}

Value Value::list(std::vector<Value> items) {
    Value out;
    out.kind_ = Kind::List;
    out.list_ = std::make_shared<const std::vector<Value>>(std::move(items));
    return out;
}

// ---------------------------------------------------------------------------
// Accessors

i64 Value::as_int() const {
    if (kind_ != Kind::Int) die("Value::as_int on non-integer");
    return int_;
}

const std::string& Value::part_name() const {
    if (kind_ != Kind::Part) die("Value::part_name on non-participant");
    return str_;
}

const std::string& Value::raw_bytes() const {
    if (kind_ != Kind::Bytes) die("Value::raw_bytes on non-bytes");
    return str_;
}

const Bag& Value::as_bag() const {
    if (kind_ != Kind::Bag) die("Value::as_bag on non-bag");
    return *bag_;
}

const std::vector<std::pair<Value, Value>>& Value::map_entries() const {
    if (kind_ != Kind::Map) die("Value::map_entries on non-map");
    return *map_;
}

const std::vector<Value>& Value::list_items() const {
    if (kind_ != Kind::List) die("Value::list_items on non-list");
    return *list_;
}

std::optional<Value> Value::map_get(const Value& key) const {
    for (const auto& [k, v] : map_entries())
        if (k.cmp(key) == 0) return v;
    return std::nullopt;
}

Value Value::map_put(const Value& key, const Value& val) const {
    std::vector<std::pair<Value, Value>> entries = map_entries();
    for (auto& [k, v] : entries) {
        if (k.cmp(key) == 0) {
            v = val;
            return map(std::move(entries));
        }
    }
    entries.emplace_back(key, val);
    return map(std::move(entries));
}

bool Value::star_free() const {
    switch (kind_) {
        case Kind::Star:
            return false;
        case Kind::Map:
            for (const auto& [k, v] : *map_)
                if (!k.star_free() || !v.star_free()) return false;
            return true;
        case Kind::List:
            for (const auto& item : *list_)
                if (!item.star_free()) return false;
            return true;
        default:
            return true;
    }
}

// ---------------------------------------------------------------------------
// Comparison: total order by kind tag, then payload.

int Value::cmp(const Value& other) const {
    if (kind_ != other.kind_)
        return static_cast<int>(kind_) < static_cast<int>(other.kind_) ? -1 : 1;
    switch (kind_) {
        case Kind::Int:
            if (int_ != other.int_) return int_ < other.int_ ? -1 : 1;
            return 0;
        case Kind::Part:
        case Kind::Bytes:
            if (str_ != other.str_) return str_ < other.str_ ? -1 : 1;
            return 0;
        case Kind::Star:
            return 0;
        case Kind::Bag:
            if (*bag_ != *other.bag_) return *bag_ < *other.bag_ ? -1 : 1;
            return 0;
        case Kind::Map: {
            const auto& a = *map_;
            const auto& b = *other.map_;
            size_t n = std::min(a.size(), b.size());
            for (size_t i = 0; i < n; ++i) {
                if (int c = a[i].first.cmp(b[i].first)) return c;
                if (int c = a[i].second.cmp(b[i].second)) return c;
            }
            if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
            return 0;
        }
        case Kind::List: {
            const auto& a = *list_;
            const auto& b = *other.list_;
            size_t n = std::min(a.size(), b.size());
            for (size_t i = 0; i < n; ++i)
                if (int c = a[i].cmp(b[i])) return c;
            if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
            return 0;
        }
    }
    die("Value::cmp unreachable");
}

// ---------------------------------------------------------------------------
// Canonical serialization: one tag byte per node, big-endian integers,
// length-prefixed strings and containers. Two values serialize identically
// iff they compare equal, so hashing and script-level equality can reuse
// this encoding.

void Value::serialize(std::string& out) const {
    out.push_back(static_cast<char>(kind_));
    switch (kind_) {
        case Kind::Int:
            put_i64(out, int_);
            break;
        case Kind::Part:
        case Kind::Bytes:
            put_str(out, str_);
            break;
        case Kind::Star:
            break;
        case Kind::Bag: {
            const auto& entries = bag_->entries();
            put_u32(out, static_cast<u32>(entries.size()));
            for (const auto& [token, amount] : entries) {
                put_str(out, token);
                put_i64(out, amount);
            }
            break;
        }
        case Kind::Map:
            put_u32(out, static_cast<u32>(map_->size()));
            for (const auto& [k, v] : *map_) {
                k.serialize(out);
                v.serialize(out);
            }
            break;
        case Kind::List:
            put_u32(out, static_cast<u32>(list_->size()));
            for (const auto& item : *list_) item.serialize(out);
            break;
    }
}

std::string Value::serialize() const {
    std::string out;
    serialize(out);
    return out;
}

std::string Value::str() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Int:
            os << int_;
            break;
        case Kind::Part:
            os << (str_.empty() ? "Null" : "@" + str_);
            break;
        case Kind::Star:
            os << "*";
            break;
        case Kind::Bytes:
            os << "0x" << to_hex(str_);
            break;
        case Kind::Bag:
            os << "{" << bag_->str() << "}";
            break;
        case Kind::Map: {
            os << "map(";
            bool first = true;
            for (const auto& [k, v] : *map_) {
                if (!first) os << ", ";
                first = false;
                os << k.str() << " -> " << v.str();
            }
            os << ")";
            break;
        }
        case Kind::List: {
            os << "[";
            bool first = true;
            for (const auto& item : *list_) {
                if (!first) os << ", ";
                first = false;
                os << item.str();
            }
            os << "]";
            break;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// 64-bit hashes: first eight bytes of the SHA-256 of the canonical encoding,
// read as a big-endian signed integer. Used for clause names inside scripts
// and for advertisement identifiers.

i64 value_hash64(const Value& v) {
    Hash256 h = sha256(v.serialize());
    u64 out = 0;
    for (int i = 0; i < 8; ++i) out = (out << 8) | h[static_cast<size_t>(i)];
    return static_cast<i64>(out);
}

i64 name_hash64(const std::string& name) { return value_hash64(Value::bytes(name)); }

} // namespace illum
