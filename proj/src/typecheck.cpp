#include "iqu/typecheck.hpp"

#include <algorithm>

#include "iqu/gates.hpp"
#include "iqu/parser.hpp"

namespace iqu {

Base::Base(std::initializer_list<std::pair<std::string, TypePtr>> entries) {
    for (auto& e : entries)
        bind(e.first, e.second);
}

void Base::bind(std::string name, TypePtr type) {
    entries_.emplace_back(std::move(name), std::move(type));
}

const TypePtr* Base::lookup(const std::string& name) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
        if (it->first == name)
            return &it->second;
    return nullptr;
}

namespace {

std::string summary(const TermPtr& t) {
    std::string s = pretty(t);
    if (s.size() > 60)
        s = s.substr(0, 57) + "...";
    return s;
}

[[noreturn]] void rule_error(const char* rule, const TermPtr& at, const std::string& expected,
                             const std::string& actual) {
    throw TypeError(rule, at->pos, expected, actual, summary(at));
}

TypePtr require(const char* rule, const Base& base, const TermPtr& t, const TypePtr& want);

// Conditionals are typed on whole application spines: the constant if has
// the scheme Nat -> beta -> beta -> beta over ground beta, which only turns
// into a monotype once both branches are present.
TypePtr infer_if_spine(const Base& base, const TermPtr& t,
                       const std::vector<TermPtr>& args, const TermPtr& if_head) {
    if (args.size() < 3)
        rule_error("(ti)", t, "a conditional applied to guard and both branches",
                   "partial application (result type unresolved)");
    require("(ti)", base, args[0], Type::nat());
    TypePtr then_ty = infer(base, args[1]);
    if (!then_ty->is_ground())
        rule_error("(ti)", args[1], "ground branch type", to_string(then_ty));
    TypePtr else_ty = infer(base, args[2]);
    if (!type_eq(then_ty, else_ty))
        rule_error("(ti)", args[2], to_string(then_ty), to_string(else_ty));
    // a ground result cannot be applied further
    if (args.size() > 3)
        rule_error("(tap)", t, "function type", to_string(then_ty));
    (void)if_head;
    return then_ty;
}

TypePtr infer_node(const Base& base, const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var: {
            const TypePtr* ty = base.lookup(t->name);
            if (!ty)
                rule_error("(tv)", t, "a bound variable", "unbound variable " + t->name);
            return *ty;
        }
        case TermKind::Num:
            return Type::nat();
        case TermKind::Succ:
        case TermKind::Pred:
            return Type::arrow(Type::nat(), Type::nat());
        case TermKind::If:
            rule_error("(ti)", t, "a conditional applied to guard and both branches",
                       "bare if (result type unresolved)");
        case TermKind::Abs: {
            Base extended = base;
            extended.bind(t->name, t->type);
            return Type::arrow(t->type, infer(extended, t->a));
        }
        case TermKind::App: {
            // walk to the spine head to detect conditionals
            std::vector<TermPtr> args;
            TermPtr head = t;
            while (head->kind == TermKind::App) {
                args.push_back(head->b);
                head = head->a;
            }
            std::reverse(args.begin(), args.end());
            if (head->kind == TermKind::If)
                return infer_if_spine(base, t, args, head);
            TypePtr fun = infer(base, t->a);
            if (fun->kind != TypeKind::Arrow)
                rule_error("(tap)", t->a, "function type", to_string(fun));
            TypePtr arg = infer(base, t->b);
            if (!type_eq(fun->dom, arg))
                rule_error("(tap)", t->b, to_string(fun->dom), to_string(arg));
            return fun->cod;
        }
        case TermKind::Fix:
            return Type::arrow(Type::arrow(t->type, t->type), t->type);
        case TermKind::Skip:
            return Type::cmd();
        case TermKind::Seq: {
            require("(tc)", base, t->a, Type::cmd());
            TypePtr rest = infer(base, t->b);
            if (!rest->is_ground())
                rule_error("(tc)", t->b, "ground type", to_string(rest));
            return rest;
        }
        case TermKind::While:
            require("(tw)", base, t->a, Type::nat());
            require("(tw)", base, t->b, Type::cmd());
            return Type::cmd();
        case TermKind::Assign:
            require("(tA)", base, t->a, Type::cvar());
            require("(tA)", base, t->b, Type::nat());
            return Type::cmd();
        case TermKind::Read:
            require("(tR)", base, t->a, Type::cvar());
            return Type::nat();
        case TermKind::CNew: {
            require("(tcnw)", base, t->a, Type::nat());
            Base extended = base;
            extended.bind(t->name, Type::cvar());
            TypePtr body = infer(extended, t->b);
            if (!body->is_ground())
                rule_error("(tcnw)", t->b, "ground type", to_string(body));
            return body;
        }
        case TermKind::Gate: {
            const GateDef* g = find_gate(t->name);
            if (!g || g->arity != t->nat)
                rule_error("(tc1)", t, "a gate from the gate table",
                           t->name + "^" + std::to_string(t->nat));
            return Type::circ();
        }
        case TermKind::SeqComp:
            require("(tc2)", base, t->a, Type::circ());
            require("(tc2)", base, t->b, Type::circ());
            return Type::circ();
        case TermKind::ParComp:
            require("(tc3)", base, t->a, Type::circ());
            require("(tc3)", base, t->b, Type::circ());
            return Type::circ();
        case TermKind::Reverse:
            require("(tmc)", base, t->a, Type::circ());
            return Type::circ();
        case TermKind::CSize:
            require("(tsc)", base, t->a, Type::circ());
            return Type::nat();
        case TermKind::RSize:
            require("(tsr)", base, t->a, Type::qvar());
            return Type::nat();
        case TermKind::QApply:
            require("(tC)", base, t->a, Type::qvar());
            require("(tC)", base, t->b, Type::circ());
            return Type::cmd();
        case TermKind::Meas:
            require("(tM)", base, t->b, Type::qvar());
            require("(tM)", base, t->a, Type::nat());
            return Type::nat();
        case TermKind::QNew: {
            require("(tqnw)", base, t->a, Type::nat());
            Base extended = base;
            extended.bind(t->name, Type::qvar());
            TypePtr body = infer(extended, t->b);
            if (!body->is_ground())
                rule_error("(tqnw)", t->b, "ground type", to_string(body));
            return body;
        }
        case TermKind::Loc:
            // runtime location literals; outside Table 1
            return t->loc.kind == LocationKind::Classical ? Type::cvar() : Type::qvar();
    }
    throw std::logic_error("infer: bad term kind");
}

TypePtr require(const char* rule, const Base& base, const TermPtr& t, const TypePtr& want) {
    TypePtr got = infer(base, t);
    if (!type_eq(got, want))
        rule_error(rule, t, to_string(want), to_string(got));
    return got;
}

} // namespace

TypePtr infer(const Base& base, const TermPtr& t) { return infer_node(base, t); }

TypePtr check_program(const TermPtr& t, const Base& base) {
    for (const auto& [name, type] : base.entries())
        if (type->kind != TypeKind::CVar && type->kind != TypeKind::QVar)
            throw TypeError("(tv)", t->pos, "free variables must be store variables (cVar/qVar)",
                            name + " : " + to_string(type), "");
    TypePtr ty = infer(base, t);
    if (!ty->is_ground())
        throw TypeError("(tap)", t->pos, "program type must be ground", to_string(ty), "");
    return ty;
}

} // namespace iqu
