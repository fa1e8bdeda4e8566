// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_SCRIPT_HPP
#define ILLUM_SCRIPT_HPP

#include <memory>
#include <string>
#include <vector>

#include "illum/value.hpp"

namespace illum {

// Output-script language of the transaction layer: loop-free expressions
// over values, with transaction introspection, signature verification,
// timelock guards and the two output-script covenants. Indices appearing
// in scripts (list elements, output positions, the input position) are
// 1-based; the surrounding C++ structures are 0-based.
struct Script;
using ScriptPtr = std::shared_ptr<const Script>;

struct Script {
    enum class Kind : u8 {
        Const = 1, // literal Value
        Add,       // a + b (ints or bags, checked)
        Sub,       // a - b (ints or bags, checked)
        Eq,        // a = b (same-kind values)
        Lt,        // a < b (integers)
        Elem,      // a.n, the n-th element of list a
        Rtxw,      // witness list attached to the redeeming input
        Size,      // |a| (map entry count, list length or byte length)
        Hash,      // H(a)
        If,        // condition strict, untaken branch unevaluated
        VerSig,    // versig(key, sig) over the redeeming tx with witnesses nulled
        AbsAfter,  // absAfter t { body }: redeeming tx absLock must reach t
        RelAfter,  // relAfter d { body }: redeeming input relLock must reach d
        CtxField,  // ctxo.arg / ctxo.val of the output being spent
        RtxField,  // rtxo(n).arg / rtxo(n).val of the redeeming tx
        InIdx,     // 1-based position of the redeeming input
        InLenCtx,  // number of inputs of the spent tx
        InLenRtx,  // number of inputs of the redeeming tx
        OutLenCtx, // number of outputs of the spent tx
        OutLenRtx, // number of outputs of the redeeming tx
        VerScr,    // verscr(scr, n): redeeming output n carries exactly scr
        VerRec,    // verrec(n): redeeming output n carries the current script
        MapGet,    // m[k]
        MapPut,    // m[k -> v]
        KeyOf,     // key(p): public key registered for participant p
        BagOf,     // amount * token: single-token bag
    };
    enum class Field : u8 { Arg = 1, Val };

    Kind kind;
    Value value;              // Const
    Field field = Field::Arg; // CtxField / RtxField
    std::string token;        // BagOf
    ScriptPtr inner;          // VerScr script literal
    std::vector<ScriptPtr> kids;

    static ScriptPtr cnst(Value v);
    static ScriptPtr num(i64 v) { return cnst(Value::of_int(v)); }
    static ScriptPtr part(const std::string& who) { return cnst(Value::participant(who)); }
    static ScriptPtr add(ScriptPtr a, ScriptPtr b);
    static ScriptPtr sub(ScriptPtr a, ScriptPtr b);
    static ScriptPtr eq(ScriptPtr a, ScriptPtr b);
    static ScriptPtr lt(ScriptPtr a, ScriptPtr b);
    static ScriptPtr elem(ScriptPtr list, ScriptPtr index);
    static ScriptPtr elem(ScriptPtr list, i64 index) { return elem(std::move(list), num(index)); }
    static ScriptPtr rtxw();
    static ScriptPtr size(ScriptPtr a);
    static ScriptPtr hash(ScriptPtr a);
    static ScriptPtr cond(ScriptPtr c, ScriptPtr t, ScriptPtr f);
    static ScriptPtr versig(ScriptPtr key, ScriptPtr sig);
    static ScriptPtr abs_after(ScriptPtr t, ScriptPtr body);
    static ScriptPtr rel_after(ScriptPtr d, ScriptPtr body);
    static ScriptPtr ctx_field(Field f);
    static ScriptPtr ctx_arg() { return ctx_field(Field::Arg); }
    static ScriptPtr ctx_val() { return ctx_field(Field::Val); }
    static ScriptPtr ctx_arg_n(i64 n) { return elem(ctx_arg(), n); }
    static ScriptPtr rtx_field(Field f, ScriptPtr index);
    static ScriptPtr rtx_arg(ScriptPtr index) { return rtx_field(Field::Arg, std::move(index)); }
    static ScriptPtr rtx_val(ScriptPtr index) { return rtx_field(Field::Val, std::move(index)); }
    static ScriptPtr rtx_arg_n(i64 out, i64 n) { return elem(rtx_arg(num(out)), n); }
    static ScriptPtr inidx();
    static ScriptPtr inlen_ctx();
    static ScriptPtr inlen_rtx();
    static ScriptPtr outlen_ctx();
    static ScriptPtr outlen_rtx();
    static ScriptPtr verscr(ScriptPtr scr, ScriptPtr index);
    static ScriptPtr verrec(ScriptPtr index);
    static ScriptPtr map_get(ScriptPtr m, ScriptPtr k);
    static ScriptPtr map_put(ScriptPtr m, ScriptPtr k, ScriptPtr v);
    static ScriptPtr key_of(ScriptPtr p);
    static ScriptPtr bag_of(ScriptPtr amount, std::string token);

    // Standard boolean shorthands; these build constants and conditionals,
    // they are not separate node kinds.
    static ScriptPtr truth() { return num(1); }
    static ScriptPtr falsity() { return num(0); }
    static ScriptPtr negate(ScriptPtr a);
    static ScriptPtr conj(ScriptPtr a, ScriptPtr b);
    static ScriptPtr disj(ScriptPtr a, ScriptPtr b);
};

// Right-nested conjunction of all terms; empty input yields true.
ScriptPtr script_all(std::vector<ScriptPtr> terms);

// Structural comparison; total order.
int script_cmp(const ScriptPtr& a, const ScriptPtr& b);

// Script equality as used by the covenants: canonical-serialization
// equality, never semantic equivalence.
bool script_equal(const ScriptPtr& a, const ScriptPtr& b);

// Canonical tag-prefixed binary form (stable; self-delimiting).
void script_serialize(const ScriptPtr& e, std::string& out);
std::string script_serialize(const ScriptPtr& e);

// Display form for diagnostics and JSON debug dumps.
std::string script_str(const ScriptPtr& e);

} // namespace illum

#endif // ILLUM_SCRIPT_HPP
