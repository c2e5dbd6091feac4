#pragma once

// Seeded random generators shared by the property tests and the acceptance
// suite: evaluated circuits (arity-directed), random states, raw surface
// terms for parser round-trips, and well-typed closed programs for the
// type-safety suite. Programs are well-typed by construction and never
// access a location that escaped its binder, so the only runtime error they
// may hit is fuel exhaustion.

#include <algorithm>
#include <cassert>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "iqu/gates.hpp"
#include "iqu/quantum.hpp"
#include "iqu/syntax.hpp"

namespace iqu::testgen {

class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t below(uint64_t n) { return engine_() % n; }
    bool coin(double p = 0.5) { return uniform() < p; }
    double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Evaluated circuits

inline const std::vector<std::string>& gates_of_arity(unsigned arity) {
    static const std::vector<std::string> a1 = {"Id", "Not", "Y", "Z", "H",
                                                "S",  "Sdg", "T", "Tdg"};
    static const std::vector<std::string> a2 = {"CNOT", "CZ", "SWAP"};
    static const std::vector<std::string> a3 = {"Toffoli"};
    static const std::vector<std::string> none;
    switch (arity) {
        case 1: return a1;
        case 2: return a2;
        case 3: return a3;
        default: return none;
    }
}

inline CircuitPtr gen_circuit(Rng& rng, unsigned arity, int depth) {
    assert(arity >= 1);
    auto gate = [&]() -> CircuitPtr {
        const auto& names = gates_of_arity(arity);
        const std::string& name = names[rng.below(names.size())];
        return Circuit::gate_ref(name, arity);
    };
    if (depth <= 0 || rng.coin(0.25)) {
        if (arity <= 3)
            return gate();
        unsigned split = 1 + unsigned(rng.below(arity - 1));
        return Circuit::par(gen_circuit(rng, split, depth - 1),
                            gen_circuit(rng, arity - split, depth - 1));
    }
    switch (rng.below(arity >= 2 ? 3 : 2)) {
        case 0:
            if (arity <= 3)
                return gate();
            [[fallthrough]];
        case 1:
            return Circuit::seq(gen_circuit(rng, arity, depth - 1),
                                gen_circuit(rng, arity, depth - 1));
        default: {
            unsigned split = 1 + unsigned(rng.below(arity - 1));
            return Circuit::par(gen_circuit(rng, split, depth - 1),
                                gen_circuit(rng, arity - split, depth - 1));
        }
    }
}

inline StateVector gen_state(Rng& rng, unsigned qubits) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    StateVector v(size_t(1) << qubits);
    for (auto& c : v)
        c = Complex(gauss(rng.engine()), gauss(rng.engine()));
    double n = norm(v);
    for (auto& c : v)
        c /= n;
    return v;
}

// ---------------------------------------------------------------------------
// Surface terms for parser round-trips (syntactically valid, types ignored)

inline TypePtr gen_type(Rng& rng, int depth) {
    if (depth <= 0 || rng.coin(0.7)) {
        switch (rng.below(5)) {
            case 0: return Type::nat();
            case 1: return Type::cvar();
            case 2: return Type::qvar();
            case 3: return Type::cmd();
            default: return Type::circ();
        }
    }
    return Type::arrow(gen_type(rng, depth - 1), gen_type(rng, depth - 1));
}

inline TermPtr gen_surface(Rng& rng, int depth, std::vector<std::string>& scope) {
    auto var_name = [&]() -> std::string {
        if (!scope.empty() && rng.coin(0.7))
            return scope[rng.below(scope.size())];
        static const char* pool[] = {"x", "y", "z", "f", "g", "r", "k", "u", "w"};
        return pool[rng.below(9)];
    };
    if (depth <= 0) {
        switch (rng.below(4)) {
            case 0: return mk_num(rng.below(10));
            case 1: return mk_skip();
            case 2: return mk_var(var_name());
            default: {
                unsigned arity = 1 + unsigned(rng.below(3));
                const auto& names = gates_of_arity(arity);
                return mk_gate(names[rng.below(names.size())], arity);
            }
        }
    }
    auto sub = [&](int d = -1) { return gen_surface(rng, d < 0 ? depth - 1 : d, scope); };
    switch (rng.below(19)) {
        case 0: return mk_num(rng.below(100));
        case 1: return mk_skip();
        case 2: return mk_var(var_name());
        case 3: return mk_seq(sub(), sub());
        case 4: return mk_assign(sub(), sub());
        case 5: return mk_qapply(sub(), sub());
        case 6: return mk_seqcomp(sub(), sub());
        case 7: return mk_parcomp(sub(), sub());
        case 8: return mk_read(sub());
        case 9: return mk_reverse(sub());
        case 10: return mk_csize(sub());
        case 11: return mk_rsize(sub());
        case 12: // count is a literal or a parenthesized term
            return mk_meas(rng.coin() ? mk_num(rng.below(5)) : sub(), sub());
        case 13: return mk_ite(sub(), sub(), sub());
        case 14: return mk_while(sub(), sub());
        case 15: {
            std::string name = var_name();
            scope.push_back(name);
            TermPtr body = sub();
            scope.pop_back();
            return mk_abs(name, gen_type(rng, 2), body, {});
        }
        case 16: return mk_fix(gen_type(rng, 2));
        case 17: {
            std::string name = var_name();
            TermPtr init = sub();
            scope.push_back(name);
            TermPtr body = sub();
            scope.pop_back();
            return rng.coin() ? mk_cnew(name, init, body) : mk_qnew(name, init, body);
        }
        default: {
            TermPtr fun = sub();
            TermPtr arg = sub();
            if (rng.coin(0.2))
                fun = rng.coin() ? mk_succ() : mk_pred();
            return mk_app(fun, arg);
        }
    }
}

// ---------------------------------------------------------------------------
// Well-typed closed programs

class TypedGen {
  public:
    explicit TypedGen(uint64_t seed) : rng_(seed) {}

    Rng& rng() { return rng_; }

    // A closed program of the given ground type.
    TermPtr program(TypeKind target, int depth) {
        fresh_ = 0;
        env_.clear();
        switch (target) {
            case TypeKind::Nat: return nat(depth);
            case TypeKind::Cmd: return cmd(depth);
            case TypeKind::Circ: return circ(1 + unsigned(rng_.below(3)), depth);
            case TypeKind::CVar: {
                // the location may escape; a program may return it but the
                // generator never reads through it afterwards
                std::string x = fresh("c");
                TermPtr body = rng_.coin() ? mk_seq(with_cvar(x, [&] { return cmd(depth - 1); }),
                                                    mk_var(x))
                                           : mk_var(x);
                return mk_cnew(x, mk_num(rng_.below(5)), body);
            }
            case TypeKind::QVar: {
                std::string r = fresh("q");
                TermPtr body = rng_.coin() ? mk_seq(with_qvar(r, 1 + rng_.below(2),
                                                              [&] { return cmd(depth - 1); }),
                                                    mk_var(r))
                                           : mk_var(r);
                return mk_qnew(r, mk_num(1 + rng_.below(2)), body);
            }
            default: assert(false); return mk_num(0);
        }
    }

    // Open typed term generation for the typechecker property tests: target
    // may be an arrow; the environment is caller-provided names.
    TermPtr open_term(const std::vector<std::pair<std::string, TypePtr>>& base, TypePtr target,
                      int depth) {
        fresh_ = 1000;
        env_.clear();
        for (const auto& [name, ty] : base) {
            VarInfo info;
            info.name = name;
            info.type = ty;
            if (ty->kind == TypeKind::Circ)
                info.circ_arity = 1;
            if (ty->kind == TypeKind::QVar)
                info.qubits = 1;
            env_.push_back(info);
        }
        return typed(target, depth);
    }

  private:
    struct VarInfo {
        std::string name;
        TypePtr type;
        std::optional<unsigned> circ_arity; // known arity for circ vars
        std::optional<uint64_t> qubits;     // known size for qVar vars
    };

    Rng rng_;
    std::vector<VarInfo> env_;
    int fresh_ = 0;

    std::string fresh(const char* stem) { return std::string(stem) + std::to_string(fresh_++); }

    template <typename F>
    TermPtr scoped(VarInfo info, F&& body) {
        env_.push_back(std::move(info));
        TermPtr t = body();
        env_.pop_back();
        return t;
    }
    template <typename F>
    TermPtr with_cvar(const std::string& name, F&& body) {
        return scoped(VarInfo{name, Type::cvar(), {}, {}}, body);
    }
    template <typename F>
    TermPtr with_qvar(const std::string& name, uint64_t qubits, F&& body) {
        return scoped(VarInfo{name, Type::qvar(), {}, qubits}, body);
    }

    std::vector<const VarInfo*> vars_of(TypeKind kind) {
        std::vector<const VarInfo*> out;
        for (const auto& v : env_)
            if (v.type->kind == kind)
                out.push_back(&v);
        return out;
    }

    // store variables: an environment variable, possibly under a conditional
    TermPtr store_var(TypeKind kind, int depth) {
        auto candidates = vars_of(kind);
        assert(!candidates.empty());
        TermPtr picked = mk_var(candidates[rng_.below(candidates.size())]->name);
        if (depth > 1 && candidates.size() >= 2 && rng_.coin(0.2)) {
            TermPtr other = mk_var(candidates[rng_.below(candidates.size())]->name);
            return mk_ite(nat(depth - 1), picked, other);
        }
        return picked;
    }

    TermPtr nat(int depth) {
        if (depth <= 0)
            return mk_num(rng_.below(6));
        switch (rng_.below(12)) {
            case 0: return mk_num(rng_.below(6));
            case 1: return mk_app(mk_succ(), nat(depth - 1));
            case 2: return mk_app(mk_pred(), nat(depth - 1));
            case 3: return mk_ite(nat(depth - 1), nat(depth - 1), nat(depth - 1));
            case 4: return mk_seq(cmd(depth - 1), nat(depth - 1));
            case 5: {
                if (!vars_of(TypeKind::CVar).empty())
                    return mk_read(store_var(TypeKind::CVar, depth - 1));
                std::string x = fresh("c");
                return mk_cnew(x, mk_num(rng_.below(5)),
                               with_cvar(x, [&] { return mk_read(mk_var(x)); }));
            }
            case 6: return mk_csize(circ(1 + unsigned(rng_.below(3)), depth - 1));
            case 7: {
                if (!vars_of(TypeKind::QVar).empty())
                    return mk_rsize(store_var(TypeKind::QVar, depth - 1));
                std::string r = fresh("q");
                uint64_t n = 1 + rng_.below(2);
                return mk_qnew(r, mk_num(n),
                               with_qvar(r, n, [&] { return mk_rsize(mk_var(r)); }));
            }
            case 8: { // measurement: the only branching construct
                TermPtr count = mk_num(rng_.below(4));
                if (!vars_of(TypeKind::QVar).empty())
                    return mk_meas(count, store_var(TypeKind::QVar, depth - 1));
                std::string r = fresh("q");
                uint64_t n = 1 + rng_.below(2);
                return mk_qnew(r, mk_num(n),
                               with_qvar(r, n, [&] { return mk_meas(count, mk_var(r)); }));
            }
            case 9: return redex(Type::nat(), depth);
            case 10: { // Y at Nat; the functional usually drops its argument
                std::string w = fresh("w");
                bool terminate = rng_.coin(0.97);
                TermPtr body = terminate
                                   ? scoped(VarInfo{w, Type::nat(), {}, {}},
                                            [&] { return nat(depth - 1); })
                                   : mk_var(w);
                return mk_app(mk_fix(Type::nat()), mk_abs(w, Type::nat(), body));
            }
            default: {
                std::string x = fresh("c");
                return mk_cnew(x, mk_num(rng_.below(5)),
                               with_cvar(x, [&] { return nat(depth - 1); }));
            }
        }
    }

    TermPtr cmd(int depth) {
        if (depth <= 0)
            return mk_skip();
        switch (rng_.below(10)) {
            case 0: return mk_skip();
            case 1: {
                if (!vars_of(TypeKind::CVar).empty())
                    return mk_assign(store_var(TypeKind::CVar, depth - 1), nat(depth - 1));
                std::string x = fresh("c");
                return mk_cnew(x, mk_num(rng_.below(5)), with_cvar(x, [&] {
                                   return mk_assign(mk_var(x), nat(depth - 1));
                               }));
            }
            case 2: return mk_seq(cmd(depth - 1), cmd(depth - 1));
            case 3: return counting_loop(depth);
            case 4: return mk_ite(nat(depth - 1), cmd(depth - 1), cmd(depth - 1));
            case 5: { // circuit application; arity mismatches only warn
                if (!vars_of(TypeKind::QVar).empty()) {
                    auto qs = vars_of(TypeKind::QVar);
                    const VarInfo* q = qs[rng_.below(qs.size())];
                    unsigned arity = unsigned(q->qubits.value_or(1));
                    if (rng_.coin(0.15))
                        arity += 1;
                    return mk_qapply(mk_var(q->name), circ(arity, depth - 1));
                }
                std::string r = fresh("q");
                uint64_t n = 1 + rng_.below(2);
                return mk_qnew(r, mk_num(n), with_qvar(r, n, [&] {
                                   return mk_qapply(mk_var(r), circ(unsigned(n), depth - 1));
                               }));
            }
            case 6: return redex(Type::cmd(), depth);
            case 7: {
                std::string r = fresh("q");
                uint64_t n = 1 + rng_.below(2);
                return mk_qnew(r, mk_num(n), with_qvar(r, n, [&] { return cmd(depth - 1); }));
            }
            default: {
                std::string x = fresh("c");
                return mk_cnew(x, mk_num(rng_.below(5)),
                               with_cvar(x, [&] { return cmd(depth - 1); }));
            }
        }
    }

    // while over a countdown counter; always terminates
    TermPtr counting_loop(int depth) {
        std::string x = fresh("c");
        return mk_cnew(
            x, mk_num(1 + rng_.below(3)), with_cvar(x, [&] {
                TermPtr step = mk_assign(mk_var(x), mk_app(mk_pred(), mk_read(mk_var(x))));
                TermPtr body = depth > 2 && rng_.coin(0.4)
                                   ? mk_seq(cmd(depth - 2), step)
                                   : step;
                return mk_while(mk_read(mk_var(x)), body);
            }));
    }

    TermPtr circ(unsigned arity, int depth) {
        auto gate_or_split = [&]() -> TermPtr {
            if (arity <= 3) {
                const auto& names = gates_of_arity(arity);
                return mk_gate(names[rng_.below(names.size())], arity);
            }
            unsigned split = 1 + unsigned(rng_.below(arity - 1));
            return mk_parcomp(circ(split, 0), circ(arity - split, 0));
        };
        // circ-typed lambda parameters of matching arity
        std::vector<const VarInfo*> matching;
        for (const auto& v : env_)
            if (v.type->kind == TypeKind::Circ && v.circ_arity == arity)
                matching.push_back(&v);
        if (depth <= 0)
            return gate_or_split();
        switch (rng_.below(8)) {
            case 0: return gate_or_split();
            case 1: return mk_seqcomp(circ(arity, depth - 1), circ(arity, depth - 1));
            case 2: {
                if (arity < 2)
                    return gate_or_split();
                unsigned split = 1 + unsigned(rng_.below(arity - 1));
                return mk_parcomp(circ(split, depth - 1), circ(arity - split, depth - 1));
            }
            case 3: return mk_reverse(circ(arity, depth - 1));
            case 4: return mk_ite(nat(depth - 1), circ(arity, depth - 1), circ(arity, depth - 1));
            case 5: return mk_seq(cmd(depth - 1), circ(arity, depth - 1));
            case 6:
                if (!matching.empty())
                    return mk_var(matching[rng_.below(matching.size())]->name);
                return gate_or_split();
            default: return circ_redex(arity, depth);
        }
    }

    // a beta redex whose body has the requested type
    TermPtr redex(const TypePtr& target, int depth) {
        std::string x = fresh("v");
        unsigned arg_arity = 1 + unsigned(rng_.below(2));
        TypePtr sigma;
        TermPtr arg;
        switch (rng_.below(3)) {
            case 0:
                sigma = Type::nat();
                arg = nat(depth - 1);
                break;
            case 1:
                sigma = Type::cmd();
                arg = cmd(depth - 1);
                break;
            default:
                sigma = Type::circ();
                arg = circ(arg_arity, depth - 1);
                break;
        }
        VarInfo info{x, sigma, {}, {}};
        if (sigma->kind == TypeKind::Circ)
            info.circ_arity = arg_arity;
        TermPtr body = scoped(info, [&] { return typed(target, depth - 1); });
        return mk_app(mk_abs(x, sigma, body), arg);
    }

    TermPtr circ_redex(unsigned arity, int depth) {
        std::string x = fresh("v");
        TermPtr arg = circ(arity, depth - 1);
        VarInfo info{x, Type::circ(), arity, {}};
        TermPtr body = scoped(info, [&] { return circ(arity, depth - 1); });
        return mk_app(mk_abs(x, Type::circ(), body), arg);
    }

    TermPtr typed(const TypePtr& target, int depth) {
        switch (target->kind) {
            case TypeKind::Nat: return nat(depth);
            case TypeKind::Cmd: return cmd(depth);
            case TypeKind::Circ: return circ(1 + unsigned(rng_.below(3)), depth);
            case TypeKind::CVar:
                if (!vars_of(TypeKind::CVar).empty())
                    return store_var(TypeKind::CVar, depth);
                else {
                    std::string x = fresh("c");
                    return mk_cnew(x, mk_num(0), mk_var(x));
                }
            case TypeKind::QVar:
                if (!vars_of(TypeKind::QVar).empty())
                    return store_var(TypeKind::QVar, depth);
                else {
                    std::string r = fresh("q");
                    return mk_qnew(r, mk_num(1), mk_var(r));
                }
            case TypeKind::Arrow: {
                // match variables of exactly this type first
                for (const auto& v : env_)
                    if (type_eq(v.type, target) && rng_.coin(0.3))
                        return mk_var(v.name);
                std::string x = fresh("a");
                VarInfo info{x, target->dom, {}, {}};
                if (target->dom->kind == TypeKind::Circ)
                    info.circ_arity = 1;
                if (target->dom->kind == TypeKind::QVar)
                    info.qubits = 1;
                TermPtr body = scoped(info, [&] { return typed(target->cod, depth - 1); });
                return mk_abs(x, target->dom, body);
            }
        }
        return mk_num(0);
    }
};

} // namespace iqu::testgen
