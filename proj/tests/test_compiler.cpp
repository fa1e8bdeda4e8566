// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "testutil.hpp"

#include "illum/chain.hpp"
#include "illum/compile.hpp"
#include "illum/reconstruct.hpp"

using namespace illum;
using testutil::fail_detail;
using testutil::must_parse_branch;
using testutil::must_parse_program;

namespace {

const char* kAuctionSrc = R"(
clause AInit(;) = { 0 }
    call(Bid(0; ?, ?))

clause Bid(oldBid: int; newBid: int, bidder: part) =
  { newBid:T | if newBid > oldBid and bidder != Null }
    call(Bid(newBid; ?, ?) || Pay(newBid, bidder;))
  + after(1000) . auth(@Owner) . withdraw(newBid:T -> @Owner)

clause Pay(v: int, A: part;) = { v:T }
    withdraw(v:T -> A)
)";

const char* kWaitSrc = R"(
clause X(a: int; b: int) = { b:T | if b > a }
    afterRel(10) . withdraw(b:T -> @A)
  + auth(@B) . call(X(b; ?))
)";

// Smallest contract with one call branch and one payout branch; drives the
// exhaustive redeemer enumeration.
const char* kTinySrc = R"(
clause Tiny(a: int;) = { a:T }
    auth(@A) . call(Tiny(a;))
  + withdraw(a:T -> @B)
)";

CompilationUnit must_unit(const Program& p, const std::string& root) {
    auto u = compile_unit(p, root);
    REQUIRE_MESSAGE(u.ok(), fail_detail(u));
    return u.take();
}

Transaction must_compile(const Program& p, const CompilerInputs& ci) {
    auto t = compile_advertisement(p, ci);
    REQUIRE_MESSAGE(t.ok(), fail_detail(t));
    return t.take();
}

std::string compile_err(const Program& p, const CompilerInputs& ci) {
    auto t = compile_advertisement(p, ci);
    REQUIRE_MESSAGE(!t.ok(), "compilation unexpectedly produced a transaction");
    return t.err().code;
}

Advertisement init_adv(const std::string& clause, std::vector<Value> internals,
                       std::vector<Value> externals, std::vector<std::string> deposits,
                       WField w = WField::of_star()) {
    Advertisement a;
    a.kind = Advertisement::Kind::Init;
    a.clause = clause;
    a.internals = std::move(internals);
    a.externals = std::move(externals);
    a.deposits = std::move(deposits);
    a.w = std::move(w);
    return a;
}

Advertisement continue_adv(const std::string& contract, i64 branch_index, const Branch& branch,
                           std::vector<std::string> deposits, WField w = WField::of_star()) {
    Advertisement a;
    a.kind = Advertisement::Kind::Continue;
    a.contract = contract;
    a.branch_index = branch_index;
    a.branch = branch;
    a.deposits = std::move(deposits);
    a.w = std::move(w);
    return a;
}

// Conditional navigation; the boolean shorthands compile to conditionals,
// so a conjunction's left operand is the condition slot.
ScriptPtr cnd(const ScriptPtr& s) {
    REQUIRE(s->kind == Script::Kind::If);
    return s->kids[0];
}
ScriptPtr thn(const ScriptPtr& s) {
    REQUIRE(s->kind == Script::Kind::If);
    return s->kids[1];
}
ScriptPtr els(const ScriptPtr& s) {
    REQUIRE(s->kind == Script::Kind::If);
    return s->kids[2];
}

void check_same_script(const ScriptPtr& got, const ScriptPtr& want) {
    CHECK_MESSAGE(script_equal(got, want),
                  ("got " + script_str(got) + "\nwant " + script_str(want)));
}

bool eval_accepts(const ScriptPtr& s, const Transaction& prev, std::size_t prev_out,
                  const Transaction& red, const KeyDirectory& keys) {
    ScriptEnv env;
    env.prev = &prev;
    env.prev_out = prev_out;
    env.red = &red;
    env.in = 0;
    env.keys = &keys;
    auto v = eval_script(s, env);
    return v.has_value() && *v == Value::of_bool(true);
}

Value sig_of(const Transaction& tx, const KeyPair& k) {
    return Value::bytes(sign_tx(tx, k.sec));
}

Chain must_append(const Chain& c, const Transaction& tx, i64 time) {
    auto next = chain_append(c, tx, time);
    REQUIRE_MESSAGE(next.ok(), fail_detail(next));
    return next.take();
}

} // namespace

TEST_CASE("reachable clauses are collected root-first") {
    Program p = must_parse_program(kAuctionSrc);
    auto unit = must_unit(p, "AInit");
    CHECK(unit.reachable == std::vector<std::string>{"AInit", "Bid", "Pay"});

    auto bid_only = must_unit(p, "Pay");
    CHECK(bid_only.reachable == std::vector<std::string>{"Pay"});
    CHECK_FALSE(script_equal(bid_only.script, unit.script));
}

TEST_CASE("compile_unit rejects open programs") {
    auto p = parse_program("clause X(;) = { 0 }\n    call(Ghost(;))\n");
    REQUIRE_MESSAGE(p.ok(), fail_detail(p));
    auto u = compile_unit(*p, "X");
    REQUIRE_FALSE(u.ok());
    CHECK(u.code() == "NonClosedProgram");

    auto missing = compile_unit(*p, "Nope");
    REQUIRE_FALSE(missing.ok());
    CHECK(missing.code() == "UndefinedClause");
}

TEST_CASE("the auction compiles to the worked branch conditions") {
    Program p = must_parse_program(kAuctionSrc);
    auto unit = must_unit(p, "AInit");

    const i64 hInit = name_hash64("AInit");
    const i64 hBid = name_hash64("Bid");
    const i64 hPay = name_hash64("Pay");

    // Top level: the spent output must be redeemed by the first input, then
    // the clause named by the third argument is dispatched.
    check_same_script(cnd(unit.script), Script::eq(Script::inidx(), Script::num(1)));
    ScriptPtr dispatch = thn(unit.script);
    check_same_script(els(unit.script), Script::falsity());

    check_same_script(cnd(dispatch),
                      Script::eq(Script::ctx_arg_n(kArgName), Script::num(hInit)));
    ScriptPtr after_init = els(dispatch);
    check_same_script(cnd(after_init),
                      Script::eq(Script::ctx_arg_n(kArgName), Script::num(hBid)));
    ScriptPtr scr_bid = thn(after_init);
    ScriptPtr after_bid = els(after_init);
    check_same_script(cnd(after_bid),
                      Script::eq(Script::ctx_arg_n(kArgName), Script::num(hPay)));
    check_same_script(els(after_bid), Script::falsity());

    // Bid branch 1 calls two clauses, so the redeeming transaction carries
    // exactly two outputs, both tagged with branch 1.
    check_same_script(cnd(scr_bid),
                      script_all({Script::eq(Script::outlen_rtx(), Script::num(2)),
                                  Script::eq(Script::rtx_arg_n(1, kArgBranch), Script::num(1)),
                                  Script::eq(Script::rtx_arg_n(2, kArgBranch), Script::num(1))}));

    // Bid branch 2 pays a single recipient.
    ScriptPtr bid_tail = els(scr_bid);
    check_same_script(cnd(bid_tail),
                      script_all({Script::eq(Script::outlen_rtx(), Script::num(1)),
                                  Script::eq(Script::rtx_arg_n(1, kArgBranch), Script::num(2))}));
    check_same_script(els(bid_tail), Script::falsity());

    // Bid parameters sit at positions 4 (oldBid), 5 (newBid), 6 (bidder).
    // The first callee re-encodes Bid: its oldBid is pinned to the current
    // newBid, its funding and guard are read off its own arguments.
    auto bid_guard_at = [&](i64 i) {
        return Script::conj(
            Script::lt(Script::rtx_arg_n(i, 4), Script::rtx_arg_n(i, 5)),
            Script::negate(Script::eq(Script::rtx_arg_n(i, 6), Script::part(""))));
    };
    ScriptPtr call_bid = script_all({
        Script::verrec(Script::num(1)),
        Script::eq(Script::size(Script::rtx_arg(Script::num(1))), Script::num(6)),
        Script::eq(Script::rtx_arg_n(1, kArgName), Script::num(hBid)),
        Script::eq(Script::rtx_arg_n(1, 4), Script::ctx_arg_n(5)),
        Script::eq(Script::rtx_val(Script::num(1)),
                   Script::bag_of(Script::rtx_arg_n(1, 5), "T")),
        bid_guard_at(1),
    });
    ScriptPtr call_pay = script_all({
        Script::verrec(Script::num(2)),
        Script::eq(Script::size(Script::rtx_arg(Script::num(2))), Script::num(5)),
        Script::eq(Script::rtx_arg_n(2, kArgName), Script::num(hPay)),
        Script::eq(Script::rtx_arg_n(2, 4), Script::ctx_arg_n(5)),
        Script::eq(Script::rtx_arg_n(2, 5), Script::ctx_arg_n(6)),
        Script::eq(Script::rtx_val(Script::num(2)),
                   Script::bag_of(Script::rtx_arg_n(2, 4), "T")),
    });
    check_same_script(thn(scr_bid), script_all({call_bid, call_pay}));

    // Branch 2: the owner signs, the deadline gates the payout block, and
    // the single output is a deposit owned by the auction owner.
    ScriptPtr payout = script_all({
        Script::eq(Script::size(Script::rtx_arg(Script::num(1))), Script::num(3)),
        Script::verscr(deposit_script(), Script::num(1)),
        Script::eq(Script::rtx_arg_n(1, 3), Script::part("Owner")),
        Script::eq(Script::rtx_val(Script::num(1)),
                   Script::bag_of(Script::ctx_arg_n(5), "T")),
    });
    check_same_script(
        thn(bid_tail),
        script_all({Script::versig(Script::key_of(Script::part("Owner")),
                                   Script::elem(Script::rtxw(), 1)),
                    Script::abs_after(Script::num(1000), payout)}));

    // The stipulation clause pins Bid's internal argument to the literal 0.
    ScriptPtr scr_init = thn(dispatch);
    check_same_script(cnd(scr_init),
                      script_all({Script::eq(Script::outlen_rtx(), Script::num(1)),
                                  Script::eq(Script::rtx_arg_n(1, kArgBranch), Script::num(1))}));
    ScriptPtr init_call = script_all({
        Script::verrec(Script::num(1)),
        Script::eq(Script::size(Script::rtx_arg(Script::num(1))), Script::num(6)),
        Script::eq(Script::rtx_arg_n(1, kArgName), Script::num(hBid)),
        Script::eq(Script::rtx_arg_n(1, 4), Script::num(0)),
        Script::eq(Script::rtx_val(Script::num(1)),
                   Script::bag_of(Script::rtx_arg_n(1, 5), "T")),
        bid_guard_at(1),
    });
    check_same_script(thn(scr_init), init_call);
}

TEST_CASE("a single payout clause compiles to one send block") {
    Program p = must_parse_program("clause X(;) = { 0 }\n    withdraw(0:T -> Null)\n");
    auto unit = must_unit(p, "X");

    ScriptPtr block = script_all({
        Script::eq(Script::size(Script::rtx_arg(Script::num(1))), Script::num(3)),
        Script::verscr(deposit_script(), Script::num(1)),
        Script::eq(Script::rtx_arg_n(1, 3), Script::part("")),
        Script::eq(Script::rtx_val(Script::num(1)), Script::bag_of(Script::num(0), "T")),
    });
    ScriptPtr want = Script::conj(
        Script::eq(Script::inidx(), Script::num(1)),
        Script::cond(Script::eq(Script::ctx_arg_n(kArgName),
                                Script::num(name_hash64("X"))),
                     Script::cond(script_all({Script::eq(Script::outlen_rtx(), Script::num(1)),
                                              Script::eq(Script::rtx_arg_n(1, kArgBranch),
                                                         Script::num(1))}),
                                  block, Script::falsity()),
                     Script::falsity()));
    check_same_script(unit.script, want);
}

TEST_CASE("deposit outputs verify only the owner's signature") {
    auto kA = KeyPair::from_seed("A");
    auto kB = KeyPair::from_seed("B");
    KeyDirectory keys{{"A", kA.pub}, {"B", kB.pub}};

    Transaction prev;
    prev.outputs.push_back(deposit_output("A", Bag::single("T", 1), 0, 0));
    CHECK(prev.outputs[0].args.size() == 3);
    CHECK(prev.outputs[0].value == Bag::single("T", 1));

    Transaction red;
    red.inputs.push_back({prev.id(), 0});
    red.witnesses.push_back({});
    red.rel_locks.push_back(0);
    red.outputs.push_back(deposit_output("B", Bag::single("T", 1), 0, 0));

    red.witnesses[0] = {sig_of(red, kA)};
    CHECK(eval_accepts(prev.outputs[0].script, prev, 0, red, keys));
    red.witnesses[0] = {sig_of(red, kB)};
    CHECK_FALSE(eval_accepts(prev.outputs[0].script, prev, 0, red, keys));

    Program p = must_parse_program(kWaitSrc);
    auto unit = must_unit(p, "X");
    auto d = decode_output(prev.outputs[0], p, unit);
    CHECK(d.kind == DecodedOutput::Kind::Deposit);
    CHECK(d.owner == "A");
    CHECK(d.value == Bag::single("T", 1));
}

TEST_CASE("decoding recognizes contracts and rejects junk") {
    Program p = must_parse_program(kAuctionSrc);
    auto unit = must_unit(p, "AInit");

    Output bid;
    bid.value = Bag::single("T", 10);
    bid.script = unit.script;
    bid.args = {Value::of_int(0), Value::of_int(1), Value::of_int(name_hash64("Bid")),
                Value::of_int(6), Value::of_int(10), Value::participant("A")};
    auto d = decode_output(bid, p, unit);
    REQUIRE(d.kind == DecodedOutput::Kind::Contract);
    CHECK(d.clause == "Bid");
    CHECK(d.internals == std::vector<Value>{Value::of_int(6)});
    CHECK(d.externals == std::vector<Value>{Value::of_int(10), Value::participant("A")});
    CHECK(d.value == Bag::single("T", 10));
    CHECK(d.nonce == 0);
    CHECK(d.branch == 1);

    // Wrong argument count for the named clause.
    Output short_args = bid;
    short_args.args.pop_back();
    CHECK(decode_output(short_args, p, unit).kind == DecodedOutput::Kind::Unknown);

    // Name hash outside the unit.
    Output bad_name = bid;
    bad_name.args[2] = Value::of_int(12345);
    CHECK(decode_output(bad_name, p, unit).kind == DecodedOutput::Kind::Unknown);

    // Free-form script.
    Output freeform = bid;
    freeform.script = Script::truth();
    CHECK(decode_output(freeform, p, unit).kind == DecodedOutput::Kind::Unknown);

    // Deposit layout with a non-participant owner slot.
    Output fake_dep;
    fake_dep.value = Bag::single("T", 1);
    fake_dep.script = deposit_script();
    fake_dep.args = {Value::of_int(0), Value::of_int(0), Value::of_int(9)};
    CHECK(decode_output(fake_dep, p, unit).kind == DecodedOutput::Kind::Unknown);
}

TEST_CASE("the transaction builder enforces its side conditions") {
    Program p = must_parse_program(kWaitSrc);
    auto kB = KeyPair::from_seed("B");
    auto kC = KeyPair::from_seed("C");
    KeyDirectory keys{{"B", kB.pub}, {"C", kC.pub}};

    Transaction cb;
    cb.outputs.push_back(deposit_output("C", Bag::single("T", 1), 1, 0));
    cb.outputs.push_back(deposit_output("B", Bag::single("T", 2), 2, 0));
    cb.outputs.push_back(deposit_output("B", Bag::single("T", 3), 3, 0));

    std::map<std::string, OutRef> txout{
        {"z1", {cb.id(), 0}}, {"z2", {cb.id(), 1}}, {"z3", {cb.id(), 2}}};

    CompilerInputs base;
    base.adv = init_adv("X", {Value::of_int(0)}, {Value::of_int(1)}, {"z1"});
    base.txout = txout;
    base.key = keys;
    base.in = {{txout["z1"], cb.outputs[0]}};
    base.t_rel = {0};
    base.nonce = {4};

    SUBCASE("well-formed stipulation compiles and decodes back") {
        Transaction t = must_compile(p, base);
        REQUIRE(t.outputs.size() == 1);
        auto unit = must_unit(p, "X");
        CHECK(script_equal(t.outputs[0].script, unit.script));
        CHECK(t.outputs[0].value == Bag::single("T", 1));
        auto d = decode_output(t.outputs[0], p, unit);
        REQUIRE(d.kind == DecodedOutput::Kind::Contract);
        CHECK(d.clause == "X");
        CHECK(d.internals == std::vector<Value>{Value::of_int(0)});
        CHECK(d.externals == std::vector<Value>{Value::of_int(1)});
        CHECK(d.nonce == 4);
        CHECK(d.branch == 0);
    }

    SUBCASE("destroy advertisements have no compiled form") {
        CompilerInputs ci = base;
        ci.adv.kind = Advertisement::Kind::Destroy;
        CHECK(compile_err(p, ci) == "UnsupportedKind");
    }

    SUBCASE("incomplete advertisements are refused") {
        CompilerInputs ci = base;
        ci.adv.complete = false;
        CHECK(compile_err(p, ci) == "IncompleteAdvertisement");
    }

    SUBCASE("one relative lock per input") {
        CompilerInputs ci = base;
        ci.t_rel = {0, 0};
        CHECK(compile_err(p, ci) == "RelLockArityMismatch");
    }

    SUBCASE("at least one nonce") {
        CompilerInputs ci = base;
        ci.nonce.clear();
        CHECK(compile_err(p, ci) == "NonceMissing");
    }

    SUBCASE("advertised deposits must be spent") {
        CompilerInputs ci = base;
        ci.in.clear();
        ci.t_rel.clear();
        CHECK(compile_err(p, ci) == "MissingInput");
    }

    SUBCASE("advertised deposits must be spent in order") {
        CompilerInputs ci = base;
        ci.adv.deposits = {"z2", "z1"};
        ci.in = {{txout["z1"], cb.outputs[0]}, {txout["z2"], cb.outputs[1]}};
        ci.t_rel = {0, 0};
        CHECK(compile_err(p, ci) == "DepositOrderMismatch");
    }

    SUBCASE("unknown names have no chain position") {
        CompilerInputs ci = base;
        ci.adv.deposits = {"z9"};
        CHECK(compile_err(p, ci) == "MissingMapping");
    }

    SUBCASE("the wildcard destroyed amount forbids extra inputs") {
        CompilerInputs ci = base;
        Transaction junk;
        junk.outputs.push_back(deposit_output("B", Bag::single("T", 5), 9, 0));
        ci.in.push_back({{junk.id(), 0}, junk.outputs[0]});
        ci.t_rel = {0, 0};
        CHECK(compile_err(p, ci) == "UnexpectedExtraInput");
    }

    SUBCASE("extra inputs must add up to the advertised amount") {
        CompilerInputs ci = base;
        ci.adv.w = WField::of(Bag::single("T", 2));
        Transaction junk;
        junk.outputs.push_back(deposit_output("B", Bag::single("T", 5), 9, 0));
        ci.in.push_back({{junk.id(), 0}, junk.outputs[0]});
        ci.t_rel = {0, 0};
        CHECK(compile_err(p, ci) == "ExtraInputMismatch");

        ci.adv.w = WField::of(Bag::single("T", 5));
        Transaction t = must_compile(p, ci);
        CHECK(t.inputs.size() == 2);
    }

    SUBCASE("mapped outputs cannot slip in as extra inputs") {
        CompilerInputs ci = base;
        ci.adv.w = WField::of(Bag::single("T", 3));
        ci.in.push_back({txout["z3"], cb.outputs[2]});
        ci.t_rel = {0, 0};
        CHECK(compile_err(p, ci) == "UnexpectedExtraInput");
    }

    SUBCASE("guards are checked at build time") {
        CompilerInputs ci = base;
        ci.adv = init_adv("X", {Value::of_int(5)}, {Value::of_int(1)}, {"z1"});
        CHECK(compile_err(p, ci) == "GuardFalse");
    }
}

TEST_CASE("declared timelocks must cover the advertised waiting bounds") {
    Program p = must_parse_program(kWaitSrc);
    auto unit = must_unit(p, "X");

    Transaction parent;
    Output po;
    po.value = Bag::single("T", 3);
    po.script = unit.script;
    po.args = {Value::of_int(0), Value::of_int(0), Value::of_int(name_hash64("X")),
               Value::of_int(1), Value::of_int(3)};
    parent.outputs.push_back(po);
    OutRef pref{parent.id(), 0};

    Branch takeout = must_parse_branch("afterRel(10) . withdraw(3:T -> @A)");
    CompilerInputs ci;
    ci.adv = continue_adv("x", 1, takeout, {});
    ci.txout = {{"x", pref}};
    ci.in = {{pref, po}};
    ci.t_rel = {5};
    ci.nonce = {0};
    CHECK(compile_err(p, ci) == "TimelockTooEarly");

    ci.t_rel = {10};
    Transaction t = must_compile(p, ci);
    CHECK(t.rel_locks == std::vector<i64>{10});
}

TEST_CASE("the waiting contract walkthrough rides the chain") {
    Program p = must_parse_program(kWaitSrc);
    auto unit = must_unit(p, "X");

    auto kA = KeyPair::from_seed("A");
    auto kB = KeyPair::from_seed("B");
    auto kC = KeyPair::from_seed("C");
    KeyDirectory keys{{"A", kA.pub}, {"B", kB.pub}, {"C", kC.pub}};

    Chain chain;
    chain.keys = keys;

    // The deposits of the initial configuration, in coinbase order.
    Transaction cb;
    cb.outputs.push_back(deposit_output("C", Bag::single("T", 1), 1, 0));
    cb.outputs.push_back(deposit_output("B", Bag::single("T", 2), 2, 0));
    cb.outputs.push_back(deposit_output("B", Bag::single("T", 3), 3, 0));
    chain = must_append(chain, cb, 0);

    std::map<std::string, OutRef> txout{
        {"z1", {cb.id(), 0}}, {"z2", {cb.id(), 1}}, {"z3", {cb.id(), 2}}};

    // C stipulates X(0;1), spending z1.
    CompilerInputs ci1;
    ci1.adv = init_adv("X", {Value::of_int(0)}, {Value::of_int(1)}, {"z1"});
    ci1.txout = txout;
    ci1.key = keys;
    ci1.in = {{txout["z1"], cb.outputs[0]}};
    ci1.t_rel = {0};
    ci1.nonce = {4};
    Transaction t1 = must_compile(p, ci1);
    t1.witnesses[0] = {sig_of(t1, kC)};
    chain = must_append(chain, t1, 0);
    txout["x4"] = {t1.id(), 0};
    CHECK(script_equal(t1.outputs[0].script, unit.script));

    // B restarts the contract with balance 3, spending z2.
    Branch restart = must_parse_branch("auth(@B) . call(X(1; 3))");
    CompilerInputs ci2;
    ci2.adv = continue_adv("x4", 2, restart, {"z2"});
    ci2.txout = txout;
    ci2.key = keys;
    ci2.in = {{txout["x4"], t1.outputs[0]}, {txout["z2"], cb.outputs[1]}};
    ci2.t_rel = {0, 0};
    ci2.nonce = {5};
    Transaction t2 = must_compile(p, ci2);
    Value sig = sig_of(t2, kB);
    t2.witnesses[0] = {sig};
    t2.witnesses[1] = {sig};
    chain = must_append(chain, t2, 0);
    txout["x5"] = {t2.id(), 0};

    // Contract outputs along the run share one script to the byte.
    CHECK(script_serialize(t2.outputs[0].script) == script_serialize(t1.outputs[0].script));
    auto d = decode_output(t2.outputs[0], p, unit);
    REQUIRE(d.kind == DecodedOutput::Kind::Contract);
    CHECK(d.clause == "X");
    CHECK(d.internals == std::vector<Value>{Value::of_int(1)});
    CHECK(d.externals == std::vector<Value>{Value::of_int(3)});
    CHECK(d.value == Bag::single("T", 3));

    // After ten idle units A may take the balance.
    Branch takeout = must_parse_branch("afterRel(10) . withdraw(3:T -> @A)");
    CompilerInputs ci3;
    ci3.adv = continue_adv("x5", 1, takeout, {});
    ci3.txout = txout;
    ci3.key = keys;
    ci3.in = {{txout["x5"], t2.outputs[0]}};
    ci3.t_rel = {10};
    ci3.nonce = {6};
    Transaction t3 = must_compile(p, ci3);

    auto early = chain_append(chain, t3, 5);
    REQUIRE_FALSE(early.ok());
    CHECK(early.code() == "TimelockViolated");

    chain = must_append(chain, t3, 10);

    // Final unspent outputs: the untouched z3 and the prize for A.
    auto utxo = utxo_set(chain);
    REQUIRE(utxo.size() == 2);
    CHECK(utxo[0].ref == txout["z3"]);
    auto prize = decode_output(utxo[1].out, p, unit);
    REQUIRE(prize.kind == DecodedOutput::Kind::Deposit);
    CHECK(prize.owner == "A");
    CHECK(prize.value == Bag::single("T", 3));

    Bag total;
    for (const auto& e : utxo) REQUIRE(Bag::add(total, e.out.value, total));
    CHECK(total == Bag::single("T", 6));
}

TEST_CASE("random continuations satisfy the parent script") {
    Program p = must_parse_program(kAuctionSrc);
    auto unit = must_unit(p, "AInit");

    auto kOwner = KeyPair::from_seed("Owner");
    auto kA = KeyPair::from_seed("A");
    KeyDirectory keys{{"Owner", kOwner.pub}, {"A", kA.pub},
                      {"B", KeyPair::from_seed("B").pub},
                      {"C", KeyPair::from_seed("C").pub}};

    Rng rng(0xC011EC7);
    const std::string bidders[] = {"A", "B", "C"};

    for (int round = 0; round < 50; ++round) {
        const i64 prev_bid = static_cast<i64>(rng.below(5));
        const i64 cur_bid = prev_bid + 1 + static_cast<i64>(rng.below(5));
        const std::string cur_who = bidders[rng.below(3)];

        // A live Bid contract as the parent output.
        auto inst = instantiate(p, "Bid", {Value::of_int(prev_bid)},
                                {Value::of_int(cur_bid), Value::participant(cur_who)});
        REQUIRE_MESSAGE(inst.ok(), fail_detail(inst));
        Transaction parent;
        Output po;
        po.value = Bag::single("T", cur_bid);
        po.script = unit.script;
        po.args = {Value::of_int(static_cast<i64>(rng.below(100))), Value::of_int(1),
                   Value::of_int(name_hash64("Bid")), Value::of_int(prev_bid),
                   Value::of_int(cur_bid), Value::participant(cur_who)};
        parent.outputs.push_back(po);
        OutRef pref{parent.id(), 0};

        CompilerInputs ci;
        ci.txout = {{"x", pref}};
        ci.key = keys;
        ci.in = {{pref, po}};
        ci.t_rel = {0};
        ci.nonce = {round, round + 100};

        if (round % 2 == 0) {
            // Raise: fill the two placeholders of the re-encoded Bid.
            const i64 new_bid = cur_bid + 1 + static_cast<i64>(rng.below(5));
            const std::string new_who = bidders[rng.below(3)];
            Branch raise = inst->process[0];
            REQUIRE(raise.is_call);
            raise.calls[0].externals[0] = Expr::num(new_bid);
            raise.calls[0].externals[1] = Expr::part(new_who);
            ci.adv = continue_adv("x", 1, raise, {});
            Transaction red = must_compile(p, ci);

            CHECK(eval_accepts(unit.script, parent, 0, red, keys));
            CHECK(red.outputs[0].value == Bag::single("T", new_bid));
            CHECK(red.outputs[1].value == Bag::single("T", cur_bid));

            auto d0 = decode_output(red.outputs[0], p, unit);
            REQUIRE(d0.kind == DecodedOutput::Kind::Contract);
            CHECK(d0.clause == "Bid");
            CHECK(d0.internals == std::vector<Value>{Value::of_int(cur_bid)});
            CHECK(d0.externals ==
                  (std::vector<Value>{Value::of_int(new_bid), Value::participant(new_who)}));
            auto d1 = decode_output(red.outputs[1], p, unit);
            REQUIRE(d1.kind == DecodedOutput::Kind::Contract);
            CHECK(d1.clause == "Pay");
            CHECK(d1.internals ==
                  (std::vector<Value>{Value::of_int(cur_bid), Value::participant(cur_who)}));

            // Funding mismatch.
            Transaction bad = red;
            Bag bumped;
            REQUIRE(Bag::add(bad.outputs[0].value, Bag::single("T", 1), bumped));
            bad.outputs[0].value = bumped;
            CHECK_FALSE(eval_accepts(unit.script, parent, 0, bad, keys));

            // Caller-pinned internal rewritten.
            bad = red;
            bad.outputs[0].args[3] = Value::of_int(cur_bid + 1);
            CHECK_FALSE(eval_accepts(unit.script, parent, 0, bad, keys));

            // Guard violation: a bid that does not raise, with consistent funding.
            bad = red;
            bad.outputs[0].args[4] = Value::of_int(cur_bid);
            bad.outputs[0].value = Bag::single("T", cur_bid);
            CHECK_FALSE(eval_accepts(unit.script, parent, 0, bad, keys));

            // Recipient clause swapped out.
            bad = red;
            bad.outputs[1].args[2] = Value::of_int(name_hash64("Bid"));
            CHECK_FALSE(eval_accepts(unit.script, parent, 0, bad, keys));
        } else {
            // Timeout: the owner collects after the deadline.
            Branch close = inst->process[1];
            REQUIRE_FALSE(close.is_call);
            ci.adv = continue_adv("x", 2, close, {});
            ci.t_abs = 1000 + static_cast<i64>(rng.below(50));
            Transaction red = must_compile(p, ci);
            red.witnesses[0] = {sig_of(red, kOwner)};

            CHECK(eval_accepts(unit.script, parent, 0, red, keys));
            auto d = decode_output(red.outputs[0], p, unit);
            REQUIRE(d.kind == DecodedOutput::Kind::Deposit);
            CHECK(d.owner == "Owner");
            CHECK(d.value == Bag::single("T", cur_bid));

            // A declared lock below the deadline fails the timelock guard.
            Transaction bad = red;
            bad.abs_lock = 999;
            bad.witnesses[0] = {sig_of(bad, kOwner)};
            CHECK_FALSE(eval_accepts(unit.script, parent, 0, bad, keys));

            // The wrong signer cannot close.
            bad = red;
            bad.witnesses[0] = {sig_of(bad, kA)};
            CHECK_FALSE(eval_accepts(unit.script, parent, 0, bad, keys));

            // No signature at all.
            bad = red;
            bad.witnesses[0] = {};
            CHECK_FALSE(eval_accepts(unit.script, parent, 0, bad, keys));
        }
    }
}

TEST_CASE("every accepted redeemer of a tiny contract is rebuildable") {
    Program p = must_parse_program(kTinySrc);
    auto unit = must_unit(p, "Tiny");

    auto kA = KeyPair::from_seed("A");
    auto kB = KeyPair::from_seed("B");
    KeyDirectory keys{{"A", kA.pub}, {"B", kB.pub}};

    Transaction parent;
    Output po;
    po.value = Bag::single("T", 1);
    po.script = unit.script;
    po.args = {Value::of_int(0), Value::of_int(0), Value::of_int(name_hash64("Tiny")),
               Value::of_int(1)};
    parent.outputs.push_back(po);
    OutRef pref{parent.id(), 0};

    auto inst = instantiate(p, "Tiny", {Value::of_int(1)}, {});
    REQUIRE_MESSAGE(inst.ok(), fail_detail(inst));
    Configuration g;
    g.contracts.push_back(ContractTerm{"x", 0, inst->process, Bag::single("T", 1)});

    std::map<std::string, OutRef> txout{{"x", pref}};
    auto resolve = [&](const OutRef& r) -> const Output* {
        return r == pref ? &parent.outputs[0] : nullptr;
    };

    // Candidate outputs: every combination of argument layout, script and
    // value from a small domain.
    std::vector<Output> pool;
    std::vector<ScriptPtr> scripts{unit.script, deposit_script(), Script::truth()};
    std::vector<Bag> values{Bag{}, Bag::single("T", 1)};
    for (const auto& script : scripts) {
        for (const auto& value : values) {
            for (i64 b = 0; b <= 2; ++b) {
                for (i64 nm : {name_hash64("Tiny"), i64{7}}) {
                    for (i64 av = 0; av <= 2; ++av) {
                        Output o;
                        o.value = value;
                        o.script = script;
                        o.args = {Value::of_int(0), Value::of_int(b), Value::of_int(nm),
                                  Value::of_int(av)};
                        pool.push_back(o);
                    }
                }
                for (const char* owner : {"A", "B"}) {
                    Output o;
                    o.value = value;
                    o.script = script;
                    o.args = {Value::of_int(0), Value::of_int(b), Value::participant(owner)};
                    pool.push_back(o);
                }
            }
        }
    }
    REQUIRE(pool.size() == 144);

    auto base_tx = [&]() {
        Transaction r;
        r.inputs.push_back(pref);
        r.witnesses.push_back({});
        r.rel_locks.push_back(0);
        return r;
    };

    // Anything the script accepts must classify as a continuation whose
    // advertisement is valid in the configuration; the empty-witness sweep
    // shows the call branch truly needs the signature.
    int accepted_signed = 0;
    int accepted_unsigned = 0;
    auto audit = [&](const Transaction& red) {
        auto cls = classify_transaction(red, txout, keys, g, p, resolve);
        REQUIRE_MESSAGE(cls.ok(), fail_detail(cls));
        REQUIRE(cls->kind == TxClass::Kind::Continue);
        auto valid = validate_advertisement(g, cls->adv, p);
        REQUIRE_MESSAGE(valid.ok(), fail_detail(valid));
        CHECK(cls->adv.w.star);
    };

    for (size_t i = 0; i < pool.size(); ++i) {
        Transaction red = base_tx();
        red.outputs.push_back(pool[i]);

        red.witnesses[0] = {sig_of(red, kA)};
        if (eval_accepts(unit.script, parent, 0, red, keys)) {
            ++accepted_signed;
            audit(red);
        }
        red.witnesses[0] = {};
        if (eval_accepts(unit.script, parent, 0, red, keys)) {
            ++accepted_unsigned;
            audit(red);
            auto cls = classify_transaction(red, txout, keys, g, p, resolve);
            REQUIRE(cls.ok());
            CHECK(cls->adv.branch_index == 2);
        }
    }
    CHECK(accepted_signed == 2);
    CHECK(accepted_unsigned == 1);

    // No two-output or empty redeemer gets through: both branches fix the
    // output count at one. Witnesses cannot help past that gate.
    Transaction none = base_tx();
    CHECK_FALSE(eval_accepts(unit.script, parent, 0, none, keys));
    int accepted_pairs = 0;
    for (size_t i = 0; i < pool.size(); ++i) {
        for (size_t j = 0; j < pool.size(); ++j) {
            Transaction red = base_tx();
            red.outputs.push_back(pool[i]);
            red.outputs.push_back(pool[j]);
            if (eval_accepts(unit.script, parent, 0, red, keys)) ++accepted_pairs;
        }
    }
    CHECK(accepted_pairs == 0);
}

TEST_CASE("transaction classification spots builds, burns and bystanders") {
    Program p = must_parse_program(kWaitSrc);
    auto kB = KeyPair::from_seed("B");
    auto kC = KeyPair::from_seed("C");
    KeyDirectory keys{{"B", kB.pub}, {"C", kC.pub}};

    Transaction cb;
    cb.outputs.push_back(deposit_output("C", Bag::single("T", 1), 1, 0));
    cb.outputs.push_back(deposit_output("B", Bag::single("T", 2), 2, 0));
    cb.outputs.push_back(deposit_output("B", Bag::single("T", 4), 3, 0));

    std::map<std::string, OutRef> txout{{"z1", {cb.id(), 0}}, {"z2", {cb.id(), 1}}};
    Configuration g;
    g.deposits.push_back(Deposit{"z1", "C", Bag::single("T", 1)});
    g.deposits.push_back(Deposit{"z2", "B", Bag::single("T", 2)});

    auto resolve = [&](const OutRef& r) -> const Output* {
        if (r.txid != cb.id() || r.index >= cb.outputs.size()) return nullptr;
        return &cb.outputs[r.index];
    };

    SUBCASE("a compiled stipulation classifies as its own advertisement") {
        CompilerInputs ci;
        ci.adv = init_adv("X", {Value::of_int(0)}, {Value::of_int(1)}, {"z1"});
        ci.adv.nonce = 4;
        ci.txout = txout;
        ci.key = keys;
        ci.in = {{txout.at("z1"), cb.outputs[0]}};
        ci.t_rel = {0};
        ci.nonce = {4};
        Transaction t = must_compile(p, ci);
        t.witnesses[0] = {sig_of(t, kC)};

        auto cls = classify_transaction(t, txout, keys, g, p, resolve);
        REQUIRE_MESSAGE(cls.ok(), fail_detail(cls));
        CHECK(cls->kind == TxClass::Kind::Init);
        CHECK(cls->adv.serialize() == ci.adv.serialize());
    }

    SUBCASE("spending only untracked outputs carries no meaning") {
        Transaction t;
        t.inputs.push_back({cb.id(), 2});
        t.witnesses.push_back({sig_of(t, kB)});
        t.rel_locks.push_back(0);

        auto cls = classify_transaction(t, txout, keys, g, p, resolve);
        REQUIRE_MESSAGE(cls.ok(), fail_detail(cls));
        CHECK(cls->kind == TxClass::Kind::Unrelated);
    }

    SUBCASE("a free-form spend of tracked deposits reads as a burn") {
        Transaction t;
        t.inputs.push_back({cb.id(), 0});
        t.inputs.push_back({cb.id(), 2});
        t.witnesses = {{}, {}};
        t.rel_locks = {0, 0};
        Output loot;
        loot.value = Bag::single("T", 5);
        loot.script = Script::truth();
        t.outputs.push_back(loot);

        auto cls = classify_transaction(t, txout, keys, g, p, resolve);
        REQUIRE_MESSAGE(cls.ok(), fail_detail(cls));
        CHECK(cls->kind == TxClass::Kind::Destroy);
        CHECK(cls->adv.deposits == std::vector<std::string>{"z1"});
        REQUIRE_FALSE(cls->adv.w.star);
        CHECK(cls->adv.w.amount == Bag::single("T", 4));
    }

    SUBCASE("spending a tracked contract without the compiled shape is flagged") {
        auto unit = must_unit(p, "X");
        Transaction holder;
        Output po;
        po.value = Bag::single("T", 3);
        po.script = unit.script;
        po.args = {Value::of_int(0), Value::of_int(0), Value::of_int(name_hash64("X")),
                   Value::of_int(1), Value::of_int(3)};
        holder.outputs.push_back(po);

        std::map<std::string, OutRef> txout2{{"x", {holder.id(), 0}}};
        Configuration g2;
        auto inst = instantiate(p, "X", {Value::of_int(1)}, {Value::of_int(3)});
        REQUIRE_MESSAGE(inst.ok(), fail_detail(inst));
        g2.contracts.push_back(ContractTerm{"x", 0, inst->process, Bag::single("T", 3)});
        auto resolve2 = [&](const OutRef& r) -> const Output* {
            return r == OutRef{holder.id(), 0} ? &holder.outputs[0] : nullptr;
        };

        Transaction theft;
        theft.inputs.push_back({holder.id(), 0});
        theft.witnesses.push_back({});
        theft.rel_locks.push_back(0);
        Output loot;
        loot.value = Bag::single("T", 3);
        loot.script = Script::truth();
        theft.outputs.push_back(loot);

        auto cls = classify_transaction(theft, txout2, keys, g2, p, resolve2);
        REQUIRE_FALSE(cls.ok());
        CHECK(cls.code() == "UnclassifiableTransaction");
    }
}
