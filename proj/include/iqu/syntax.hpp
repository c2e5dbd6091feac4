#pragma once

// Abstract syntax shared by the whole pipeline: types, terms, evaluated
// circuits and result values. All nodes are immutable and shared through
// shared_ptr, so terms can be duplicated freely during call-by-name
// substitution and across measurement branches.

#include <cstdint>
#include <memory>
#include <set>
#include <string>

#include "iqu/diag.hpp"

namespace iqu {

// ---------------------------------------------------------------------------
// Types: ground types Nat, cVar, qVar, cmd, circ plus arrows.

enum class TypeKind { Nat, CVar, QVar, Cmd, Circ, Arrow };

class Type;
using TypePtr = std::shared_ptr<const Type>;

class Type {
  public:
    TypeKind kind;
    TypePtr dom; // Arrow only
    TypePtr cod; // Arrow only

    bool is_ground() const { return kind != TypeKind::Arrow; }

    static const TypePtr& nat();
    static const TypePtr& cvar();
    static const TypePtr& qvar();
    static const TypePtr& cmd();
    static const TypePtr& circ();
    static TypePtr ground(TypeKind k);
    static TypePtr arrow(TypePtr dom, TypePtr cod);
};

bool operator==(const Type& a, const Type& b);
inline bool operator!=(const Type& a, const Type& b) { return !(a == b); }
bool type_eq(const TypePtr& a, const TypePtr& b);
std::string to_string(const Type& t);
std::string to_string(const TypePtr& t);

// ---------------------------------------------------------------------------
// Evaluated circuits: gate references under sequential (::) and parallel (||)
// composition. These are the values of type circ.

struct Circuit;
using CircuitPtr = std::shared_ptr<const Circuit>;

struct Circuit {
    enum class Kind { Gate, Seq, Par };

    Kind kind;
    std::string gate;   // Gate: canonical gate name
    unsigned arity = 0; // Gate: wire count
    CircuitPtr left;
    CircuitPtr right;

    static CircuitPtr gate_ref(std::string name, unsigned arity);
    static CircuitPtr seq(CircuitPtr left, CircuitPtr right);
    static CircuitPtr par(CircuitPtr left, CircuitPtr right);
};

bool operator==(const Circuit& a, const Circuit& b);
inline bool operator!=(const Circuit& a, const Circuit& b) { return !(a == b); }
bool circuit_eq(const CircuitPtr& a, const CircuitPtr& b);
std::string to_string(const Circuit& c);
std::string to_string(const CircuitPtr& c);

// ---------------------------------------------------------------------------
// Store locations. Binders never reach the store by name: evaluation replaces
// a cnew/qnew-bound variable with a freshly allocated location literal, so
// store freshness is by construction rather than by renaming.

enum class LocationKind { Classical, Quantum };

struct Location {
    LocationKind kind;
    uint64_t serial;

    friend bool operator==(const Location& a, const Location& b) {
        return a.kind == b.kind && a.serial == b.serial;
    }
    friend bool operator!=(const Location& a, const Location& b) { return !(a == b); }
    friend bool operator<(const Location& a, const Location& b) {
        if (a.kind != b.kind)
            return a.kind < b.kind;
        return a.serial < b.serial;
    }
};

std::string to_string(const Location& loc);

// ---------------------------------------------------------------------------
// Terms.

enum class TermKind {
    Var,     // name
    Num,     // nat
    Pred,    // constant
    Succ,    // constant
    If,      // constant, used curried: if M then L else R = ((If M) L) R
    Abs,     // name : type . a
    App,     // a b
    Fix,     // type index (the paper's Y_sigma)
    Skip,    //
    Seq,     // a ; b
    While,   // while a do b
    Assign,  // a := b
    Read,    // read a
    CNew,    // cnew name := a in b
    Gate,    // name ^ nat
    SeqComp, // a :: b
    ParComp, // a || b
    Reverse, // reverse a
    CSize,   // csize a
    RSize,   // rsize a
    QApply,  // a <| b      (a target, b circuit)
    Meas,    // meas^a b    (a count, b target)
    QNew,    // qnew name := a in b
    Loc,     // runtime-only location literal (never produced by the parser)
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    TermKind kind;
    SourcePos pos{};
    std::string name; // Var, binders, Gate
    uint64_t nat = 0; // Num value, Gate arity
    TypePtr type;     // Abs annotation, Fix index
    Location loc{};   // Loc
    TermPtr a;
    TermPtr b;
};

// Factories. Positions default to "unknown" and can be patched by the parser.
TermPtr mk_var(std::string name, SourcePos pos = {});
TermPtr mk_num(uint64_t n, SourcePos pos = {});
TermPtr mk_pred(SourcePos pos = {});
TermPtr mk_succ(SourcePos pos = {});
TermPtr mk_if(SourcePos pos = {});
TermPtr mk_abs(std::string name, TypePtr annotation, TermPtr body, SourcePos pos = {});
TermPtr mk_app(TermPtr fun, TermPtr arg, SourcePos pos = {});
TermPtr mk_fix(TypePtr at, SourcePos pos = {});
TermPtr mk_skip(SourcePos pos = {});
TermPtr mk_seq(TermPtr first, TermPtr second, SourcePos pos = {});
TermPtr mk_while(TermPtr guard, TermPtr body, SourcePos pos = {});
TermPtr mk_assign(TermPtr lhs, TermPtr rhs, SourcePos pos = {});
TermPtr mk_read(TermPtr t, SourcePos pos = {});
TermPtr mk_cnew(std::string name, TermPtr init, TermPtr body, SourcePos pos = {});
TermPtr mk_gate(std::string name, uint64_t arity, SourcePos pos = {});
TermPtr mk_seqcomp(TermPtr a, TermPtr b, SourcePos pos = {});
TermPtr mk_parcomp(TermPtr a, TermPtr b, SourcePos pos = {});
TermPtr mk_reverse(TermPtr t, SourcePos pos = {});
TermPtr mk_csize(TermPtr t, SourcePos pos = {});
TermPtr mk_rsize(TermPtr t, SourcePos pos = {});
TermPtr mk_qapply(TermPtr target, TermPtr circuit, SourcePos pos = {});
TermPtr mk_meas(TermPtr count, TermPtr target, SourcePos pos = {});
TermPtr mk_qnew(std::string name, TermPtr size, TermPtr body, SourcePos pos = {});
TermPtr mk_loc(Location loc, SourcePos pos = {});

// Sugar: if guard then then_branch else else_branch as a curried If spine.
TermPtr mk_ite(TermPtr guard, TermPtr then_branch, TermPtr else_branch, SourcePos pos = {});

// Structural equality: binder names compare literally (not alpha), source
// positions are ignored.
bool operator==(const Term& a, const Term& b);
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }
bool term_eq(const TermPtr& a, const TermPtr& b);

// Free variables under the three binders Abs, CNew, QNew.
std::set<std::string> free_vars(const TermPtr& t);

// Capture-avoiding substitution of replacement for free occurrences of name.
// Binders that would capture a free variable of the replacement are renamed
// with prime suffixes.
TermPtr substitute(const TermPtr& body, const std::string& name, const TermPtr& replacement);

// Indented structural dump, one node per line (the `parse` subcommand output).
std::string ast_dump(const TermPtr& t);

// ---------------------------------------------------------------------------
// Values: what closed ground-typed programs evaluate to.

struct Value {
    enum class Kind { Num, Skip, Circ, CVar, QVar };

    Kind kind;
    uint64_t nat = 0; // Num
    CircuitPtr circ;  // Circ
    Location loc{};   // CVar / QVar

    static Value num(uint64_t n);
    static Value skip();
    static Value circuit(CircuitPtr c);
    static Value location(Location loc);
};

bool operator==(const Value& a, const Value& b);
inline bool operator!=(const Value& a, const Value& b) { return !(a == b); }
std::string to_string(const Value& v);

} // namespace iqu
