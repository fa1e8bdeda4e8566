// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/script.hpp"

#include <sstream>

namespace illum {

namespace {

ScriptPtr node(Script::Kind kind, std::vector<ScriptPtr> kids) {
    auto n = std::make_shared<Script>();
    n->kind = kind;
    n->kids = std::move(kids);
    return n;
}

void put_u32(std::string& out, u32 v) {
    for (int shift = 24; shift >= 0; shift -= 8)
        out.push_back(static_cast<char>((v >> shift) & 0xff));
}

} // namespace

ScriptPtr Script::cnst(Value v) {
    auto n = std::make_shared<Script>();
    n->kind = Kind::Const;
    n->value = std::move(v);
    return n;
}

ScriptPtr Script::add(ScriptPtr a, ScriptPtr b) { return node(Kind::Add, {std::move(a), std::move(b)}); }
ScriptPtr Script::sub(ScriptPtr a, ScriptPtr b) { return node(Kind::Sub, {std::move(a), std::move(b)}); }
ScriptPtr Script::eq(ScriptPtr a, ScriptPtr b) { return node(Kind::Eq, {std::move(a), std::move(b)}); }
ScriptPtr Script::lt(ScriptPtr a, ScriptPtr b) { return node(Kind::Lt, {std::move(a), std::move(b)}); }
ScriptPtr Script::elem(ScriptPtr list, ScriptPtr index) {
    return node(Kind::Elem, {std::move(list), std::move(index)});
}
ScriptPtr Script::rtxw() { return node(Kind::Rtxw, {}); }
ScriptPtr Script::size(ScriptPtr a) { return node(Kind::Size, {std::move(a)}); }
ScriptPtr Script::hash(ScriptPtr a) { return node(Kind::Hash, {std::move(a)}); }
ScriptPtr Script::cond(ScriptPtr c, ScriptPtr t, ScriptPtr f) {
    return node(Kind::If, {std::move(c), std::move(t), std::move(f)});
}
ScriptPtr Script::versig(ScriptPtr key, ScriptPtr sig) {
    return node(Kind::VerSig, {std::move(key), std::move(sig)});
}
ScriptPtr Script::abs_after(ScriptPtr t, ScriptPtr body) {
    return node(Kind::AbsAfter, {std::move(t), std::move(body)});
}
ScriptPtr Script::rel_after(ScriptPtr d, ScriptPtr body) {
    return node(Kind::RelAfter, {std::move(d), std::move(body)});
}
ScriptPtr Script::ctx_field(Field f) {
    auto n = std::make_shared<Script>();
    n->kind = Kind::CtxField;
    n->field = f;
    return n;
}
ScriptPtr Script::rtx_field(Field f, ScriptPtr index) {
    auto n = std::make_shared<Script>();
    n->kind = Kind::RtxField;
    n->field = f;
    n->kids.push_back(std::move(index));
    return n;
}
ScriptPtr Script::inidx() { return node(Kind::InIdx, {}); }
ScriptPtr Script::inlen_ctx() { return node(Kind::InLenCtx, {}); }
ScriptPtr Script::inlen_rtx() { return node(Kind::InLenRtx, {}); }
ScriptPtr Script::outlen_ctx() { return node(Kind::OutLenCtx, {}); }
ScriptPtr Script::outlen_rtx() { return node(Kind::OutLenRtx, {}); }
ScriptPtr Script::verscr(ScriptPtr scr, ScriptPtr index) {
    auto n = std::make_shared<Script>();
    n->kind = Kind::VerScr;
    n->inner = std::move(scr);
    n->kids.push_back(std::move(index));
    return n;
}
ScriptPtr Script::verrec(ScriptPtr index) { return node(Kind::VerRec, {std::move(index)}); }
ScriptPtr Script::map_get(ScriptPtr m, ScriptPtr k) {
    return node(Kind::MapGet, {std::move(m), std::move(k)});
}
ScriptPtr Script::map_put(ScriptPtr m, ScriptPtr k, ScriptPtr v) {
    return node(Kind::MapPut, {std::move(m), std::move(k), std::move(v)});
}
ScriptPtr Script::key_of(ScriptPtr p) { return node(Kind::KeyOf, {std::move(p)}); }
ScriptPtr Script::bag_of(ScriptPtr amount, std::string token) {
    auto n = std::make_shared<Script>();
    n->kind = Kind::BagOf;
    n->token = std::move(token);
    n->kids.push_back(std::move(amount));
    return n;
}

ScriptPtr Script::negate(ScriptPtr a) { return cond(std::move(a), falsity(), truth()); }
ScriptPtr Script::conj(ScriptPtr a, ScriptPtr b) { return cond(std::move(a), std::move(b), falsity()); }
ScriptPtr Script::disj(ScriptPtr a, ScriptPtr b) { return cond(std::move(a), truth(), std::move(b)); }

ScriptPtr script_all(std::vector<ScriptPtr> terms) {
    if (terms.empty()) return Script::truth();
    ScriptPtr acc = terms.back();
    for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it)
        acc = Script::conj(*it, std::move(acc));
    return acc;
}

int script_cmp(const ScriptPtr& a, const ScriptPtr& b) {
    if (a->kind != b->kind)
        return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
    switch (a->kind) {
        case Script::Kind::Const: {
            int c = a->value.cmp(b->value);
            if (c != 0) return c;
            break;
        }
        case Script::Kind::CtxField:
        case Script::Kind::RtxField:
            if (a->field != b->field)
                return static_cast<int>(a->field) < static_cast<int>(b->field) ? -1 : 1;
            break;
        case Script::Kind::BagOf:
            if (a->token != b->token) return a->token < b->token ? -1 : 1;
            break;
        case Script::Kind::VerScr: {
            int c = script_cmp(a->inner, b->inner);
            if (c != 0) return c;
            break;
        }
        default:
            break;
    }
    if (a->kids.size() != b->kids.size())
        return a->kids.size() < b->kids.size() ? -1 : 1;
    for (std::size_t i = 0; i < a->kids.size(); ++i) {
        int c = script_cmp(a->kids[i], b->kids[i]);
        if (c != 0) return c;
    }
    return 0;
}

bool script_equal(const ScriptPtr& a, const ScriptPtr& b) {
    return script_serialize(a) == script_serialize(b);
}

void script_serialize(const ScriptPtr& e, std::string& out) {
    out.push_back(static_cast<char>(e->kind));
    switch (e->kind) {
        case Script::Kind::Const:
            e->value.serialize(out);
            break;
        case Script::Kind::CtxField:
        case Script::Kind::RtxField:
            out.push_back(static_cast<char>(e->field));
            break;
        case Script::Kind::BagOf:
            put_u32(out, static_cast<u32>(e->token.size()));
            out += e->token;
            break;
        case Script::Kind::VerScr:
            script_serialize(e->inner, out);
            break;
        default:
            break;
    }
    for (const auto& kid : e->kids) script_serialize(kid, out);
}

std::string script_serialize(const ScriptPtr& e) {
    std::string out;
    script_serialize(e, out);
    return out;
}

namespace {

// Precedence levels for printing: conditionals lowest, then comparisons,
// additive operators, postfix element access, atoms.
enum { kPrecIf = 0, kPrecCmp = 1, kPrecAdd = 2, kPrecPost = 3, kPrecAtom = 4 };

int prec_of(const ScriptPtr& e) {
    switch (e->kind) {
        case Script::Kind::If:
            return kPrecIf;
        case Script::Kind::Eq:
        case Script::Kind::Lt:
            return kPrecCmp;
        case Script::Kind::Add:
        case Script::Kind::Sub:
            return kPrecAdd;
        case Script::Kind::Elem:
        case Script::Kind::MapGet:
        case Script::Kind::MapPut:
        case Script::Kind::BagOf:
            return kPrecPost;
        default:
            return kPrecAtom;
    }
}

void print(std::ostringstream& os, const ScriptPtr& e, int min_prec);

void print_paren(std::ostringstream& os, const ScriptPtr& e, int min_prec) {
    if (prec_of(e) < min_prec) {
        os << "(";
        print(os, e, kPrecIf);
        os << ")";
    } else {
        print(os, e, min_prec);
    }
}

void print(std::ostringstream& os, const ScriptPtr& e, int) {
    switch (e->kind) {
        case Script::Kind::Const:
            os << e->value.str();
            break;
        case Script::Kind::Add:
        case Script::Kind::Sub:
            print_paren(os, e->kids[0], kPrecAdd);
            os << (e->kind == Script::Kind::Add ? " + " : " - ");
            print_paren(os, e->kids[1], kPrecAdd + 1);
            break;
        case Script::Kind::Eq:
        case Script::Kind::Lt:
            print_paren(os, e->kids[0], kPrecAdd);
            os << (e->kind == Script::Kind::Eq ? " = " : " < ");
            print_paren(os, e->kids[1], kPrecAdd);
            break;
        case Script::Kind::Elem:
            print_paren(os, e->kids[0], kPrecPost);
            os << ".";
            print_paren(os, e->kids[1], kPrecAtom);
            break;
        case Script::Kind::Rtxw:
            os << "rtxw";
            break;
        case Script::Kind::Size:
            os << "|";
            print(os, e->kids[0], kPrecIf);
            os << "|";
            break;
        case Script::Kind::Hash:
            os << "H(";
            print(os, e->kids[0], kPrecIf);
            os << ")";
            break;
        case Script::Kind::If:
            os << "if ";
            print_paren(os, e->kids[0], kPrecCmp);
            os << " then ";
            print_paren(os, e->kids[1], kPrecCmp);
            os << " else ";
            print_paren(os, e->kids[2], kPrecCmp);
            break;
        case Script::Kind::VerSig:
            os << "versig(";
            print(os, e->kids[0], kPrecIf);
            os << ", ";
            print(os, e->kids[1], kPrecIf);
            os << ")";
            break;
        case Script::Kind::AbsAfter:
        case Script::Kind::RelAfter:
            os << (e->kind == Script::Kind::AbsAfter ? "absAfter " : "relAfter ");
            print_paren(os, e->kids[0], kPrecAtom);
            os << " { ";
            print(os, e->kids[1], kPrecIf);
            os << " }";
            break;
        case Script::Kind::CtxField:
            os << (e->field == Script::Field::Arg ? "ctxo.arg" : "ctxo.val");
            break;
        case Script::Kind::RtxField:
            os << "rtxo(";
            print(os, e->kids[0], kPrecIf);
            os << (e->field == Script::Field::Arg ? ").arg" : ").val");
            break;
        case Script::Kind::InIdx:
            os << "inidx";
            break;
        case Script::Kind::InLenCtx:
            os << "inlen(ctx)";
            break;
        case Script::Kind::InLenRtx:
            os << "inlen(rtx)";
            break;
        case Script::Kind::OutLenCtx:
            os << "outlen(ctx)";
            break;
        case Script::Kind::OutLenRtx:
            os << "outlen(rtx)";
            break;
        case Script::Kind::VerScr:
            os << "verscr(";
            print(os, e->inner, kPrecIf);
            os << ", ";
            print(os, e->kids[0], kPrecIf);
            os << ")";
            break;
        case Script::Kind::VerRec:
            os << "verrec(";
            print(os, e->kids[0], kPrecIf);
            os << ")";
            break;
        case Script::Kind::MapGet:
            print_paren(os, e->kids[0], kPrecPost);
            os << "[";
            print(os, e->kids[1], kPrecIf);
            os << "]";
            break;
        case Script::Kind::MapPut:
            print_paren(os, e->kids[0], kPrecPost);
            os << "[";
            print(os, e->kids[1], kPrecIf);
            os << " -> ";
            print(os, e->kids[2], kPrecIf);
            os << "]";
            break;
        case Script::Kind::KeyOf:
            os << "key(";
            print(os, e->kids[0], kPrecIf);
            os << ")";
            break;
        case Script::Kind::BagOf:
            print_paren(os, e->kids[0], kPrecPost);
            os << "*" << e->token;
            break;
    }
}

} // namespace

std::string script_str(const ScriptPtr& e) {
    std::ostringstream os;
    print(os, e, kPrecIf);
    return os.str();
}

} // namespace illum
