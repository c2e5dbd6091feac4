#include "iqu/syntax.hpp"

#include <sstream>
#include <utility>

namespace iqu {

// ---------------------------------------------------------------------------
// Types

namespace {

TypePtr make_ground(TypeKind k) {
    auto t = std::make_shared<Type>();
    t->kind = k;
    return t;
}

} // namespace

const TypePtr& Type::nat() {
    static const TypePtr t = make_ground(TypeKind::Nat);
    return t;
}
const TypePtr& Type::cvar() {
    static const TypePtr t = make_ground(TypeKind::CVar);
    return t;
}
const TypePtr& Type::qvar() {
    static const TypePtr t = make_ground(TypeKind::QVar);
    return t;
}
const TypePtr& Type::cmd() {
    static const TypePtr t = make_ground(TypeKind::Cmd);
    return t;
}
const TypePtr& Type::circ() {
    static const TypePtr t = make_ground(TypeKind::Circ);
    return t;
}

TypePtr Type::ground(TypeKind k) {
    switch (k) {
        case TypeKind::Nat: return nat();
        case TypeKind::CVar: return cvar();
        case TypeKind::QVar: return qvar();
        case TypeKind::Cmd: return cmd();
        case TypeKind::Circ: return circ();
        case TypeKind::Arrow: break;
    }
    return nullptr;
}

TypePtr Type::arrow(TypePtr dom, TypePtr cod) {
    auto t = std::make_shared<Type>();
    t->kind = TypeKind::Arrow;
    t->dom = std::move(dom);
    t->cod = std::move(cod);
    return t;
}

bool operator==(const Type& a, const Type& b) {
    if (a.kind != b.kind)
        return false;
    if (a.kind != TypeKind::Arrow)
        return true;
    return *a.dom == *b.dom && *a.cod == *b.cod;
}

bool type_eq(const TypePtr& a, const TypePtr& b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return *a == *b;
}

std::string to_string(const Type& t) {
    switch (t.kind) {
        case TypeKind::Nat: return "Nat";
        case TypeKind::CVar: return "cVar";
        case TypeKind::QVar: return "qVar";
        case TypeKind::Cmd: return "cmd";
        case TypeKind::Circ: return "circ";
        case TypeKind::Arrow: {
            std::string dom = to_string(*t.dom);
            if (t.dom->kind == TypeKind::Arrow)
                dom = "(" + dom + ")";
            return dom + " -> " + to_string(*t.cod);
        }
    }
    return "?";
}

std::string to_string(const TypePtr& t) { return t ? to_string(*t) : std::string("?"); }

// ---------------------------------------------------------------------------
// Circuits

CircuitPtr Circuit::gate_ref(std::string name, unsigned arity) {
    auto c = std::make_shared<Circuit>();
    c->kind = Kind::Gate;
    c->gate = std::move(name);
    c->arity = arity;
    return c;
}

CircuitPtr Circuit::seq(CircuitPtr left, CircuitPtr right) {
    auto c = std::make_shared<Circuit>();
    c->kind = Kind::Seq;
    c->left = std::move(left);
    c->right = std::move(right);
    return c;
}

CircuitPtr Circuit::par(CircuitPtr left, CircuitPtr right) {
    auto c = std::make_shared<Circuit>();
    c->kind = Kind::Par;
    c->left = std::move(left);
    c->right = std::move(right);
    return c;
}

bool operator==(const Circuit& a, const Circuit& b) {
    if (a.kind != b.kind)
        return false;
    if (a.kind == Circuit::Kind::Gate)
        return a.gate == b.gate && a.arity == b.arity;
    return *a.left == *b.left && *a.right == *b.right;
}

bool circuit_eq(const CircuitPtr& a, const CircuitPtr& b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return *a == *b;
}

namespace {

// :: prints at level 0, || at level 1, gates are atoms.
void print_circuit(std::ostream& out, const Circuit& c, int level) {
    switch (c.kind) {
        case Circuit::Kind::Gate:
            out << c.gate << "^" << c.arity;
            return;
        case Circuit::Kind::Seq: {
            bool paren = level > 0;
            if (paren)
                out << "(";
            print_circuit(out, *c.left, 0);
            out << " :: ";
            // left-assoc: parenthesize a Seq right child
            print_circuit(out, *c.right, c.right->kind == Circuit::Kind::Seq ? 1 : 0);
            if (paren)
                out << ")";
            return;
        }
        case Circuit::Kind::Par: {
            bool paren = level > 1;
            if (paren)
                out << "(";
            print_circuit(out, *c.left, 1);
            out << " || ";
            print_circuit(out, *c.right, c.right->kind == Circuit::Kind::Par ? 2 : 1);
            if (paren)
                out << ")";
            return;
        }
    }
}

} // namespace

std::string to_string(const Circuit& c) {
    std::ostringstream out;
    print_circuit(out, c, 0);
    return out.str();
}

std::string to_string(const CircuitPtr& c) { return c ? to_string(*c) : std::string("?"); }

std::string to_string(const Location& loc) {
    return (loc.kind == LocationKind::Classical ? "cvar@" : "qvar@") + std::to_string(loc.serial);
}

// ---------------------------------------------------------------------------
// Term factories

namespace {

std::shared_ptr<Term> node(TermKind kind, SourcePos pos) {
    auto t = std::make_shared<Term>();
    t->kind = kind;
    t->pos = pos;
    return t;
}

} // namespace

TermPtr mk_var(std::string name, SourcePos pos) {
    auto t = node(TermKind::Var, pos);
    t->name = std::move(name);
    return t;
}

TermPtr mk_num(uint64_t n, SourcePos pos) {
    auto t = node(TermKind::Num, pos);
    t->nat = n;
    return t;
}

TermPtr mk_pred(SourcePos pos) { return node(TermKind::Pred, pos); }
TermPtr mk_succ(SourcePos pos) { return node(TermKind::Succ, pos); }
TermPtr mk_if(SourcePos pos) { return node(TermKind::If, pos); }

TermPtr mk_abs(std::string name, TypePtr annotation, TermPtr body, SourcePos pos) {
    auto t = node(TermKind::Abs, pos);
    t->name = std::move(name);
    t->type = std::move(annotation);
    t->a = std::move(body);
    return t;
}

TermPtr mk_app(TermPtr fun, TermPtr arg, SourcePos pos) {
    auto t = node(TermKind::App, pos);
    t->a = std::move(fun);
    t->b = std::move(arg);
    return t;
}

TermPtr mk_fix(TypePtr at, SourcePos pos) {
    auto t = node(TermKind::Fix, pos);
    t->type = std::move(at);
    return t;
}

TermPtr mk_skip(SourcePos pos) { return node(TermKind::Skip, pos); }

TermPtr mk_seq(TermPtr first, TermPtr second, SourcePos pos) {
    auto t = node(TermKind::Seq, pos);
    t->a = std::move(first);
    t->b = std::move(second);
    return t;
}

TermPtr mk_while(TermPtr guard, TermPtr body, SourcePos pos) {
    auto t = node(TermKind::While, pos);
    t->a = std::move(guard);
    t->b = std::move(body);
    return t;
}

TermPtr mk_assign(TermPtr lhs, TermPtr rhs, SourcePos pos) {
    auto t = node(TermKind::Assign, pos);
    t->a = std::move(lhs);
    t->b = std::move(rhs);
    return t;
}

TermPtr mk_read(TermPtr inner, SourcePos pos) {
    auto t = node(TermKind::Read, pos);
    t->a = std::move(inner);
    return t;
}

TermPtr mk_cnew(std::string name, TermPtr init, TermPtr body, SourcePos pos) {
    auto t = node(TermKind::CNew, pos);
    t->name = std::move(name);
    t->a = std::move(init);
    t->b = std::move(body);
    return t;
}

TermPtr mk_gate(std::string name, uint64_t arity, SourcePos pos) {
    auto t = node(TermKind::Gate, pos);
    t->name = std::move(name);
    t->nat = arity;
    return t;
}

TermPtr mk_seqcomp(TermPtr a, TermPtr b, SourcePos pos) {
    auto t = node(TermKind::SeqComp, pos);
    t->a = std::move(a);
    t->b = std::move(b);
    return t;
}

TermPtr mk_parcomp(TermPtr a, TermPtr b, SourcePos pos) {
    auto t = node(TermKind::ParComp, pos);
    t->a = std::move(a);
    t->b = std::move(b);
    return t;
}

TermPtr mk_reverse(TermPtr inner, SourcePos pos) {
    auto t = node(TermKind::Reverse, pos);
    t->a = std::move(inner);
    return t;
}

TermPtr mk_csize(TermPtr inner, SourcePos pos) {
    auto t = node(TermKind::CSize, pos);
    t->a = std::move(inner);
    return t;
}

TermPtr mk_rsize(TermPtr inner, SourcePos pos) {
    auto t = node(TermKind::RSize, pos);
    t->a = std::move(inner);
    return t;
}

TermPtr mk_qapply(TermPtr target, TermPtr circuit, SourcePos pos) {
    auto t = node(TermKind::QApply, pos);
    t->a = std::move(target);
    t->b = std::move(circuit);
    return t;
}

TermPtr mk_meas(TermPtr count, TermPtr target, SourcePos pos) {
    auto t = node(TermKind::Meas, pos);
    t->a = std::move(count);
    t->b = std::move(target);
    return t;
}

TermPtr mk_qnew(std::string name, TermPtr size, TermPtr body, SourcePos pos) {
    auto t = node(TermKind::QNew, pos);
    t->name = std::move(name);
    t->a = std::move(size);
    t->b = std::move(body);
    return t;
}

TermPtr mk_loc(Location loc, SourcePos pos) {
    auto t = node(TermKind::Loc, pos);
    t->loc = loc;
    return t;
}

TermPtr mk_ite(TermPtr guard, TermPtr then_branch, TermPtr else_branch, SourcePos pos) {
    return mk_app(mk_app(mk_app(mk_if(pos), std::move(guard), pos), std::move(then_branch), pos),
                  std::move(else_branch), pos);
}

// ---------------------------------------------------------------------------
// Structural equality

bool operator==(const Term& a, const Term& b) {
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
        case TermKind::Var: return a.name == b.name;
        case TermKind::Num: return a.nat == b.nat;
        case TermKind::Pred:
        case TermKind::Succ:
        case TermKind::If:
        case TermKind::Skip: return true;
        case TermKind::Abs:
            return a.name == b.name && type_eq(a.type, b.type) && term_eq(a.a, b.a);
        case TermKind::Fix: return type_eq(a.type, b.type);
        case TermKind::Gate: return a.name == b.name && a.nat == b.nat;
        case TermKind::Loc: return a.loc == b.loc;
        case TermKind::CNew:
        case TermKind::QNew:
            return a.name == b.name && term_eq(a.a, b.a) && term_eq(a.b, b.b);
        case TermKind::Read:
        case TermKind::Reverse:
        case TermKind::CSize:
        case TermKind::RSize: return term_eq(a.a, b.a);
        default: return term_eq(a.a, b.a) && term_eq(a.b, b.b);
    }
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return *a == *b;
}

// ---------------------------------------------------------------------------
// Free variables and substitution

namespace {

void collect_free(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
    if (!t)
        return;
    switch (t->kind) {
        case TermKind::Var:
            if (!bound.count(t->name))
                out.insert(t->name);
            return;
        case TermKind::Abs: {
            bool added = bound.insert(t->name).second;
            collect_free(t->a, bound, out);
            if (added)
                bound.erase(t->name);
            return;
        }
        case TermKind::CNew:
        case TermKind::QNew: {
            collect_free(t->a, bound, out); // init/size is outside the scope
            bool added = bound.insert(t->name).second;
            collect_free(t->b, bound, out);
            if (added)
                bound.erase(t->name);
            return;
        }
        default:
            collect_free(t->a, bound, out);
            collect_free(t->b, bound, out);
            return;
    }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string candidate = base + "'";
    while (avoid.count(candidate))
        candidate += "'";
    return candidate;
}

TermPtr subst(const TermPtr& t, const std::string& name, const TermPtr& repl,
              const std::set<std::string>& repl_fv) {
    if (!t)
        return t;
    switch (t->kind) {
        case TermKind::Var:
            return t->name == name ? repl : t;
        case TermKind::Num:
        case TermKind::Pred:
        case TermKind::Succ:
        case TermKind::If:
        case TermKind::Fix:
        case TermKind::Skip:
        case TermKind::Gate:
        case TermKind::Loc:
            return t;
        case TermKind::Abs: {
            if (t->name == name)
                return t; // shadowed
            if (repl_fv.count(t->name) && free_vars(t->a).count(name)) {
                // the binder would capture a free variable of the replacement
                std::set<std::string> avoid = repl_fv;
                auto body_fv = free_vars(t->a);
                avoid.insert(body_fv.begin(), body_fv.end());
                avoid.insert(name);
                std::string renamed = fresh_name(t->name, avoid);
                TermPtr body = subst(t->a, t->name, mk_var(renamed), {});
                return mk_abs(renamed, t->type, subst(body, name, repl, repl_fv), t->pos);
            }
            TermPtr body = subst(t->a, name, repl, repl_fv);
            return body == t->a ? t : mk_abs(t->name, t->type, body, t->pos);
        }
        case TermKind::CNew:
        case TermKind::QNew: {
            TermPtr init = subst(t->a, name, repl, repl_fv);
            if (t->name == name) {
                if (init == t->a)
                    return t;
                auto copy = std::make_shared<Term>(*t);
                copy->a = init;
                return copy;
            }
            TermPtr body = t->b;
            std::string binder = t->name;
            if (repl_fv.count(binder) && free_vars(body).count(name)) {
                std::set<std::string> avoid = repl_fv;
                auto body_fv = free_vars(body);
                avoid.insert(body_fv.begin(), body_fv.end());
                avoid.insert(name);
                binder = fresh_name(binder, avoid);
                body = subst(body, t->name, mk_var(binder), {});
            }
            body = subst(body, name, repl, repl_fv);
            if (init == t->a && body == t->b && binder == t->name)
                return t;
            auto copy = std::make_shared<Term>(*t);
            copy->name = binder;
            copy->a = init;
            copy->b = body;
            return copy;
        }
        default: {
            TermPtr a = subst(t->a, name, repl, repl_fv);
            TermPtr b = subst(t->b, name, repl, repl_fv);
            if (a == t->a && b == t->b)
                return t;
            auto copy = std::make_shared<Term>(*t);
            copy->a = a;
            copy->b = b;
            return copy;
        }
    }
}

} // namespace

std::set<std::string> free_vars(const TermPtr& t) {
    std::set<std::string> bound, out;
    collect_free(t, bound, out);
    return out;
}

TermPtr substitute(const TermPtr& body, const std::string& name, const TermPtr& replacement) {
    return subst(body, name, replacement, free_vars(replacement));
}

// ---------------------------------------------------------------------------
// AST dump

namespace {

const char* kind_label(TermKind k) {
    switch (k) {
        case TermKind::Var: return "Var";
        case TermKind::Num: return "Num";
        case TermKind::Pred: return "Pred";
        case TermKind::Succ: return "Succ";
        case TermKind::If: return "If";
        case TermKind::Abs: return "Abs";
        case TermKind::App: return "App";
        case TermKind::Fix: return "Fix";
        case TermKind::Skip: return "Skip";
        case TermKind::Seq: return "Seq";
        case TermKind::While: return "While";
        case TermKind::Assign: return "Assign";
        case TermKind::Read: return "Read";
        case TermKind::CNew: return "CNew";
        case TermKind::Gate: return "Gate";
        case TermKind::SeqComp: return "SeqComp";
        case TermKind::ParComp: return "ParComp";
        case TermKind::Reverse: return "Reverse";
        case TermKind::CSize: return "CSize";
        case TermKind::RSize: return "RSize";
        case TermKind::QApply: return "QApply";
        case TermKind::Meas: return "Meas";
        case TermKind::QNew: return "QNew";
        case TermKind::Loc: return "Loc";
    }
    return "?";
}

void dump(std::ostream& out, const TermPtr& t, int indent) {
    for (int i = 0; i < indent; ++i)
        out << "  ";
    out << kind_label(t->kind);
    switch (t->kind) {
        case TermKind::Var: out << " " << t->name; break;
        case TermKind::Num: out << " " << t->nat; break;
        case TermKind::Abs: out << " " << t->name << " : " << to_string(t->type); break;
        case TermKind::Fix: out << " : " << to_string(t->type); break;
        case TermKind::CNew:
        case TermKind::QNew: out << " " << t->name; break;
        case TermKind::Gate: out << " " << t->name << "^" << t->nat; break;
        case TermKind::Loc: out << " " << to_string(t->loc); break;
        default: break;
    }
    out << "\n";
    if (t->a)
        dump(out, t->a, indent + 1);
    if (t->b)
        dump(out, t->b, indent + 1);
}

} // namespace

std::string ast_dump(const TermPtr& t) {
    std::ostringstream out;
    dump(out, t, 0);
    return out.str();
}

// ---------------------------------------------------------------------------
// Values

Value Value::num(uint64_t n) {
    Value v;
    v.kind = Kind::Num;
    v.nat = n;
    return v;
}

Value Value::skip() {
    Value v;
    v.kind = Kind::Skip;
    return v;
}

Value Value::circuit(CircuitPtr c) {
    Value v;
    v.kind = Kind::Circ;
    v.circ = std::move(c);
    return v;
}

Value Value::location(Location loc) {
    Value v;
    v.kind = loc.kind == LocationKind::Classical ? Kind::CVar : Kind::QVar;
    v.loc = loc;
    return v;
}

bool operator==(const Value& a, const Value& b) {
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
        case Value::Kind::Num: return a.nat == b.nat;
        case Value::Kind::Skip: return true;
        case Value::Kind::Circ: return circuit_eq(a.circ, b.circ);
        case Value::Kind::CVar:
        case Value::Kind::QVar: return a.loc == b.loc;
    }
    return false;
}

std::string to_string(const Value& v) {
    switch (v.kind) {
        case Value::Kind::Num: return std::to_string(v.nat);
        case Value::Kind::Skip: return "skip";
        case Value::Kind::Circ: return to_string(v.circ);
        case Value::Kind::CVar:
        case Value::Kind::QVar: return to_string(v.loc);
    }
    return "?";
}

} // namespace iqu
