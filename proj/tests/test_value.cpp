// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "testutil.hpp"

#include <limits>

using namespace illum;
using testutil::random_value;

TEST_CASE("bag arithmetic is per token and drops zero entries") {
    Bag a = Bag::single("T", 3);
    Bag b = Bag::single("U", 2);
    Bag sum;
    REQUIRE(Bag::add(a, b, sum));
    CHECK(sum.get("T") == 3);
    CHECK(sum.get("U") == 2);

    Bag diff;
    REQUIRE(Bag::sub(sum, Bag::single("T", 3), diff));
    CHECK(diff.get("T") == 0);
    CHECK(diff == b);
    CHECK(diff.entries().size() == 1);
    CHECK_FALSE(Bag::sub(sum, Bag::single("T", 4), diff));
    CHECK_FALSE(Bag::sub(sum, Bag::single("V", 1), diff));

    Bag empty;
    CHECK(empty.empty());
    Bag same;
    REQUIRE(Bag::add(a, empty, same));
    CHECK(same == a);
}

TEST_CASE("bag covers compares every token") {
    Bag funds;
    funds.set("T", 5);
    funds.set("U", 1);
    CHECK(funds.covers(Bag::single("T", 5)));
    CHECK(funds.covers(funds));
    CHECK_FALSE(funds.covers(Bag::single("T", 6)));
    CHECK_FALSE(funds.covers(Bag::single("V", 1)));
    CHECK(Bag().covers(Bag()));

    Bag negative;
    negative.set("T", -1);
    CHECK_FALSE(negative.nonnegative());
    CHECK(funds.covers(negative));
}

TEST_CASE("bag addition reports overflow instead of wrapping") {
    Bag big = Bag::single("T", std::numeric_limits<i64>::max());
    Bag out;
    CHECK_FALSE(Bag::add(big, Bag::single("T", 1), out));
    CHECK(Bag::add(big, Bag::single("U", 1), out));
}

TEST_CASE("value constructors and accessors agree") {
    CHECK(Value::of_int(7).as_int() == 7);
    CHECK(Value::of_bool(true).as_int() == 1);
    CHECK(Value::of_bool(false).is_bool());
    CHECK_FALSE(Value::of_int(2).is_bool());
    CHECK(Value::participant("A").part_name() == "A");
    CHECK(Value::participant("").is_null_part());
    CHECK(Value::null_participant() == Value::participant(""));
    CHECK(Value::star().is_star());
}

TEST_CASE("value ordering is a total order on random samples") {
    Rng rng(11);
    std::vector<Value> vs;
    for (int i = 0; i < 60; ++i) vs.push_back(random_value(rng));
    for (const auto& a : vs)
        for (const auto& b : vs) {
            int ab = a.cmp(b);
            int ba = b.cmp(a);
            CHECK(ab == -ba);
            CHECK((ab == 0) == (a == b));
            for (const auto& c : vs)
                if (a.cmp(b) < 0 && b.cmp(c) < 0) CHECK(a.cmp(c) < 0);
        }
}

TEST_CASE("map lookup and functional update") {
    Value m = Value::map({{Value::of_int(1), Value::of_int(10)}});
    auto hit = m.map_get(Value::of_int(1));
    REQUIRE(hit.has_value());
    CHECK(hit->as_int() == 10);
    CHECK_FALSE(m.map_get(Value::of_int(2)).has_value());

    Value m2 = m.map_put(Value::of_int(2), Value::of_int(20));
    CHECK(m2.map_entries().size() == 2);
    CHECK(m.map_entries().size() == 1);

    Value m3 = m.map_put(Value::of_int(1), Value::of_int(99));
    CHECK(m3.map_get(Value::of_int(1))->as_int() == 99);
    CHECK(m.map_get(Value::of_int(1))->as_int() == 10);
}

TEST_CASE("star detection descends into containers") {
    CHECK(Value::of_int(1).star_free());
    CHECK_FALSE(Value::star().star_free());
    Value inner = Value::list({Value::of_int(1), Value::star()});
    CHECK_FALSE(inner.star_free());
    Value m = Value::map({{Value::of_int(0), Value::star()}});
    CHECK_FALSE(m.star_free());
}

// The byte-level encoding is load-bearing: hashes, transaction ids and
// script equality all sit on top of it. These constants pin it down.
TEST_CASE("canonical serialization matches the frozen format") {
    std::string out;
    Value::of_int(5).serialize(out);
    CHECK(to_hex(out) == "010000000000000005");

    out.clear();
    Value::participant("A").serialize(out);
    CHECK(to_hex(out) == "020000000141");

    out.clear();
    Value::star().serialize(out);
    CHECK(to_hex(out) == "04");

    out.clear();
    Value::map({{Value::of_int(1), Value::of_int(2)}}).serialize(out);
    CHECK(to_hex(out) == "0300000001010000000000000001010000000000000002");
}

// Expectations computed with an independent SHA-256 implementation over
// the serialized bytes (first eight digest bytes, big-endian, signed).
TEST_CASE("value hash matches the frozen digests") {
    CHECK(value_hash64(Value::of_int(5)) == 5061068834767570290LL);
    CHECK(value_hash64(Value::participant("A")) == -4741617654353624340LL);
    CHECK(value_hash64(Value::star()) == -1932716795306695865LL);
    CHECK(value_hash64(Value::map({{Value::of_int(1), Value::of_int(2)}})) ==
          -8405254552746184915LL);
    CHECK(name_hash64("Bid") == 2262056914875605464LL);
}

TEST_CASE("serialization equality coincides with value equality") {
    Rng rng(12);
    for (int i = 0; i < 2000; ++i) {
        Value a = random_value(rng);
        Value b = random_value(rng);
        std::string sa, sb;
        a.serialize(sa);
        b.serialize(sb);
        CHECK((sa == sb) == (a == b));
    }
}

TEST_CASE("display forms for each kind") {
    CHECK(Value::of_int(-3).str() == "-3");
    CHECK(Value::participant("A").str() == "@A");
    CHECK(Value::null_participant().str() == "Null");
    CHECK(Value::star().str() == "*");
    CHECK(Value::map({{Value::of_int(1), Value::participant("B")}}).str() == "map(1 -> @B)");
    CHECK(Value::list({Value::of_int(1), Value::of_int(2)}).str() == "[1, 2]");
}
