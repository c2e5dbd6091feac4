#include "iqu/eval.hpp"

#include <algorithm>
#include <cassert>
#include <iostream>
#include <random>
#include <sstream>

#include "iqu/parser.hpp"
#include "iqu/quantum.hpp"

namespace iqu {

namespace {

std::string short_term(const Term& t) {
    std::string s = pretty(t);
    if (s.size() > 48)
        s = s.substr(0, 45) + "...";
    return s;
}

[[noreturn]] void invariant_failure(const char* what, const Term& t) {
    throw std::logic_error(std::string("evaluator invariant violated (") + what +
                           "): " + short_term(t) + " — input was not type-checked?");
}

class Evaluator {
  public:
    Evaluator(const EvalConfig& cfg, LocationAllocator& alloc)
        : cfg_(cfg), alloc_(alloc), rng_(cfg.seed) {}

    // One completed (or fuel-exhausted) evaluation path.
    struct Res {
        Store store;
        Value value;
        double prob = 1.0;
        uint64_t fuel = 0;
        bool exhausted = false;
    };
    using Results = std::vector<Res>;

    Results run(const Store& s, const TermPtr& t, double prob, uint64_t fuel) {
        return eval(s, t, prob, fuel, 0);
    }

  private:
    const EvalConfig& cfg_;
    LocationAllocator& alloc_;
    std::mt19937_64 rng_;

    static Res done(Store s, Value v, double p, uint64_t fuel) {
        return Res{std::move(s), std::move(v), p, fuel, false};
    }
    static Res out_of_fuel(double p) { return Res{{}, Value::skip(), p, 0, true}; }

    // Each big-step rule application costs one unit of fuel.
    static bool pay(uint64_t& fuel) {
        if (fuel == 0)
            return false;
        --fuel;
        return true;
    }

    void trace(const char* rule, double p, const Term& t, int depth) {
        if (!cfg_.trace)
            return;
        std::ostream& out = cfg_.trace_out ? *cfg_.trace_out : std::cerr;
        for (int i = 0; i < depth; ++i)
            out << "  ";
        out << "(" << rule << ")  " << p << "  " << short_term(t) << "\n";
    }

    void warn(const std::string& message) {
        std::ostream& out = cfg_.diagnostics ? *cfg_.diagnostics : std::cerr;
        out << "warning: " << message << "\n";
    }

    double next_uniform() {
        return double(rng_() >> 11) * 0x1.0p-53; // 53-bit uniform in [0,1)
    }

    // Applies cont to every completed path, passing exhausted paths through.
    template <typename F>
    Results for_each_done(Results rs, F&& cont) {
        Results out;
        for (auto& r : rs) {
            if (r.exhausted) {
                out.push_back(std::move(r));
                continue;
            }
            Results sub = cont(std::move(r));
            out.insert(out.end(), std::make_move_iterator(sub.begin()),
                       std::make_move_iterator(sub.end()));
        }
        return out;
    }

    static uint64_t expect_num(const Res& r, const Term& at) {
        if (r.value.kind != Value::Kind::Num)
            invariant_failure("numeral expected", at);
        return r.value.nat;
    }
    static void expect_skip(const Res& r, const Term& at) {
        if (r.value.kind != Value::Kind::Skip)
            invariant_failure("skip expected", at);
    }
    static CircuitPtr expect_circ(const Res& r, const Term& at) {
        if (r.value.kind != Value::Kind::Circ)
            invariant_failure("circuit expected", at);
        return r.value.circ;
    }
    static Location expect_cvar(const Res& r, const Term& at) {
        if (r.value.kind != Value::Kind::CVar)
            invariant_failure("classical variable expected", at);
        return r.value.loc;
    }
    static Location expect_qvar(const Res& r, const Term& at) {
        if (r.value.kind != Value::Kind::QVar)
            invariant_failure("quantum variable expected", at);
        return r.value.loc;
    }

    Results eval(Store s, TermPtr t, double p, uint64_t fuel, int depth) {
        for (;;) {
            switch (t->kind) {
                case TermKind::Num:
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    trace("en", p, *t, depth);
                    return {done(std::move(s), Value::num(t->nat), p, fuel)};

                case TermKind::Skip:
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    trace("esk", p, *t, depth);
                    return {done(std::move(s), Value::skip(), p, fuel)};

                case TermKind::Loc:
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    trace("eVar", p, *t, depth);
                    return {done(std::move(s), Value::location(t->loc), p, fuel)};

                case TermKind::Gate:
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    trace("eu1", p, *t, depth);
                    return {done(std::move(s), Value::circuit(Circuit::gate_ref(t->name, unsigned(t->nat))),
                                 p, fuel)};

                case TermKind::App: {
                    auto stepped = head_reduce(s, t, p, fuel, depth);
                    if (stepped.finished)
                        return std::move(stepped.results);
                    // a conditional or succ/pred resolved to a plain term
                    s = std::move(stepped.store);
                    t = std::move(stepped.next);
                    p = stepped.prob;
                    fuel = stepped.fuel;
                    continue;
                }

                case TermKind::Seq: {
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    trace("e;", p, *t, depth);
                    Results firsts = eval(s, t->a, p, fuel, depth + 1);
                    if (firsts.size() == 1 && !firsts[0].exhausted) {
                        expect_skip(firsts[0], *t->a);
                        s = std::move(firsts[0].store);
                        p = firsts[0].prob;
                        fuel = firsts[0].fuel;
                        t = t->b;
                        continue;
                    }
                    TermPtr rest = t->b;
                    TermPtr first = t->a;
                    return for_each_done(std::move(firsts), [&](Res r) {
                        expect_skip(r, *first);
                        return eval(std::move(r.store), rest, r.prob, r.fuel, depth + 1);
                    });
                }

                case TermKind::While:
                    return eval_while(std::move(s), t, p, fuel, depth);

                case TermKind::Assign: {
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    trace("ecA", p, *t, depth);
                    TermPtr node = t;
                    // the right-hand side (the value to store) evaluates first
                    Results rhs = eval(std::move(s), t->b, p, fuel, depth + 1);
                    return for_each_done(std::move(rhs), [&](Res r) {
                        uint64_t n = expect_num(r, *node->b);
                        Results lhs = eval(std::move(r.store), node->a, r.prob, r.fuel, depth + 1);
                        return for_each_done(std::move(lhs), [&](Res l) -> Results {
                            Location loc = expect_cvar(l, *node->a);
                            Store updated = l.store.write_classical(loc, n);
                            return {done(std::move(updated), Value::skip(), l.prob, l.fuel)};
                        });
                    });
                }

                case TermKind::Read: {
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    trace("ecR", p, *t, depth);
                    TermPtr node = t;
                    Results inner = eval(std::move(s), t->a, p, fuel, depth + 1);
                    return for_each_done(std::move(inner), [&](Res r) -> Results {
                        Location loc = expect_cvar(r, *node->a);
                        uint64_t n = r.store.read_classical(loc);
                        return {done(std::move(r.store), Value::num(n), r.prob, r.fuel)};
                    });
                }

                case TermKind::CNew:
                case TermKind::QNew: {
                    bool classical = t->kind == TermKind::CNew;
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    trace(classical ? "ecN" : "eqN", p, *t, depth);
                    TermPtr node = t;
                    Results inits = eval(std::move(s), t->a, p, fuel, depth + 1);
                    return for_each_done(std::move(inits), [&](Res r) {
                        uint64_t n = expect_num(r, *node->a);
                        auto [extended, loc] =
                            classical ? alloc_classical(r.store, alloc_, n)
                                      : alloc_quantum(r.store, alloc_, n, cfg_.max_qubits);
                        TermPtr body = substitute(node->b, node->name, mk_loc(loc));
                        Results bodies = eval(std::move(extended), body, r.prob, r.fuel, depth + 1);
                        return for_each_done(std::move(bodies), [&](Res br) -> Results {
                            Store final_store = br.store.restrict(loc);
                            return {done(std::move(final_store), std::move(br.value), br.prob,
                                         br.fuel)};
                        });
                    });
                }

                case TermKind::SeqComp: {
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    trace("eu2", p, *t, depth);
                    TermPtr node = t;
                    Results lefts = eval(std::move(s), t->a, p, fuel, depth + 1);
                    return for_each_done(std::move(lefts), [&](Res l) {
                        CircuitPtr c0 = expect_circ(l, *node->a);
                        Results rights = eval(std::move(l.store), node->b, l.prob, l.fuel, depth + 1);
                        return for_each_done(std::move(rights), [&](Res r) -> Results {
                            CircuitPtr c1 = expect_circ(r, *node->b);
                            auto w0 = wires(c0);
                            auto w1 = wires(c1);
                            if (!w0 || !w1 || *w0 != *w1) {
                                if (cfg_.faithful_divergence) {
                                    // the paper's reading: no rule applies, the
                                    // evaluation diverges; spin the fuel away
                                    uint64_t f = r.fuel;
                                    while (pay(f)) {
                                    }
                                    return {out_of_fuel(r.prob)};
                                }
                                throw RuntimeError(
                                    RuntimeError::Kind::IllFormedCircuit,
                                    "sequential composition of circuits with wire counts " +
                                        (w0 ? std::to_string(*w0) : std::string("undefined")) +
                                        " and " +
                                        (w1 ? std::to_string(*w1) : std::string("undefined")));
                            }
                            return {done(std::move(r.store),
                                         Value::circuit(Circuit::seq(c0, c1)), r.prob, r.fuel)};
                        });
                    });
                }

                case TermKind::ParComp: {
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    trace("eu3", p, *t, depth);
                    TermPtr node = t;
                    Results lefts = eval(std::move(s), t->a, p, fuel, depth + 1);
                    return for_each_done(std::move(lefts), [&](Res l) {
                        CircuitPtr c0 = expect_circ(l, *node->a);
                        Results rights = eval(std::move(l.store), node->b, l.prob, l.fuel, depth + 1);
                        return for_each_done(std::move(rights), [&](Res r) -> Results {
                            CircuitPtr c1 = expect_circ(r, *node->b);
                            return {done(std::move(r.store),
                                         Value::circuit(Circuit::par(c0, c1)), r.prob, r.fuel)};
                        });
                    });
                }

                case TermKind::Reverse: {
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    TermPtr node = t;
                    int d = depth;
                    Results inner = eval(std::move(s), t->a, p, fuel, depth + 1);
                    return for_each_done(std::move(inner), [&](Res r) -> Results {
                        CircuitPtr c = expect_circ(r, *node->a);
                        const char* rule = c->kind == Circuit::Kind::Gate  ? "er1"
                                           : c->kind == Circuit::Kind::Seq ? "er2"
                                                                           : "er3";
                        trace(rule, r.prob, *node, d);
                        return {done(std::move(r.store), Value::circuit(structural_adjoint(c)),
                                     r.prob, r.fuel)};
                    });
                }

                case TermKind::CSize: {
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    trace("ecsz", p, *t, depth);
                    TermPtr node = t;
                    Results inner = eval(std::move(s), t->a, p, fuel, depth + 1);
                    return for_each_done(std::move(inner), [&](Res r) -> Results {
                        CircuitPtr c = expect_circ(r, *node->a);
                        auto w = wires(c);
                        if (!w)
                            invariant_failure("evaluated circuit without wire count", *node);
                        return {done(std::move(r.store), Value::num(*w), r.prob, r.fuel)};
                    });
                }

                case TermKind::RSize: {
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    trace("ersz", p, *t, depth);
                    TermPtr node = t;
                    Results inner = eval(std::move(s), t->a, p, fuel, depth + 1);
                    return for_each_done(std::move(inner), [&](Res r) -> Results {
                        Location loc = expect_qvar(r, *node->a);
                        uint64_t n = r.store.qubit_count(loc);
                        return {done(std::move(r.store), Value::num(n), r.prob, r.fuel)};
                    });
                }

                case TermKind::QApply: {
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    TermPtr node = t;
                    int d = depth;
                    // the circuit expression evaluates before the target
                    Results circs = eval(std::move(s), t->b, p, fuel, depth + 1);
                    return for_each_done(std::move(circs), [&](Res cr) {
                        CircuitPtr c = expect_circ(cr, *node->b);
                        Results targets =
                            eval(std::move(cr.store), node->a, cr.prob, cr.fuel, depth + 1);
                        return for_each_done(std::move(targets), [&](Res tr) -> Results {
                            Location loc = expect_qvar(tr, *node->a);
                            auto w = wires(c);
                            unsigned qubits = tr.store.qubit_count(loc);
                            if (!w || *w != qubits) {
                                // (eqA1): type safety keeps the program running but
                                // the transformation is forgotten
                                trace("eqA1", tr.prob, *node, d);
                                warn("circuit with " +
                                     (w ? std::to_string(*w) + " wires"
                                        : std::string("undefined wire count")) +
                                     " applied to register " + to_string(loc) + " of " +
                                     std::to_string(qubits) + " qubits; transformation skipped");
                                return {done(std::move(tr.store), Value::skip(), tr.prob,
                                             tr.fuel)};
                            }
                            trace("eqA0", tr.prob, *node, d);
                            auto next = std::make_shared<StateVector>(
                                apply_circuit(*c, tr.store.read_quantum(loc)));
                            Store updated = tr.store.write_quantum(loc, std::move(next));
                            return {done(std::move(updated), Value::skip(), tr.prob, tr.fuel)};
                        });
                    });
                }

                case TermKind::Meas: {
                    if (!pay(fuel))
                        return {out_of_fuel(p)};
                    trace("eqM", p, *t, depth);
                    TermPtr node = t;
                    // the count evaluates before the target
                    Results counts = eval(std::move(s), t->a, p, fuel, depth + 1);
                    return for_each_done(std::move(counts), [&](Res kr) {
                        uint64_t k = expect_num(kr, *node->a);
                        Results targets =
                            eval(std::move(kr.store), node->b, kr.prob, kr.fuel, depth + 1);
                        return for_each_done(std::move(targets), [&](Res tr) -> Results {
                            Location loc = expect_qvar(tr, *node->b);
                            auto branches = partial_measure(tr.store.read_quantum(loc), k);
                            if (branches.empty())
                                invariant_failure("measurement produced no outcomes", *node);
                            if (cfg_.mode == EvalConfig::Mode::Sample) {
                                double u = next_uniform();
                                size_t pick = branches.size() - 1;
                                double acc = 0.0;
                                for (size_t i = 0; i < branches.size(); ++i) {
                                    acc += branches[i].probability;
                                    if (u < acc) {
                                        pick = i;
                                        break;
                                    }
                                }
                                const auto& b = branches[pick];
                                Store updated = tr.store.write_quantum(loc, b.residual);
                                return {done(std::move(updated), Value::num(b.result),
                                             tr.prob * b.probability, tr.fuel)};
                            }
                            Results out;
                            out.reserve(branches.size());
                            for (const auto& b : branches) {
                                Store updated = tr.store.write_quantum(loc, b.residual);
                                out.push_back(done(std::move(updated), Value::num(b.result),
                                                   tr.prob * b.probability, tr.fuel));
                            }
                            return out;
                        });
                    });
                }

                case TermKind::Var:
                    invariant_failure("free variable reached evaluation", *t);
                case TermKind::Abs:
                case TermKind::Fix:
                case TermKind::If:
                case TermKind::Succ:
                case TermKind::Pred:
                    invariant_failure("term of arrow type evaluated directly", *t);
            }
        }
    }

    // Head reduction of an application spine: (ebeta) and (eY) steps, the
    // curried conditional, and the succ/pred constants. Returns either final
    // results or the term evaluation should continue with.
    struct StepOut {
        bool finished = false;
        Results results;
        Store store;
        TermPtr next;
        double prob = 1.0;
        uint64_t fuel = 0;
    };

    StepOut head_reduce(Store s, TermPtr t, double p, uint64_t fuel, int depth) {
        TermPtr head = t;
        std::vector<TermPtr> args;
        for (;;) {
            while (head->kind == TermKind::App) {
                args.push_back(head->b);
                head = head->a;
            }
            if (args.empty()) {
                // the redex contracted to a plain term; evaluate it in place
                StepOut out;
                out.store = std::move(s);
                out.next = std::move(head);
                out.prob = p;
                out.fuel = fuel;
                return out;
            }
            // args are innermost-last; index from the back
            switch (head->kind) {
                case TermKind::Abs: {
                    if (args.empty())
                        invariant_failure("unapplied abstraction evaluated", *head);
                    if (!pay(fuel)) {
                        StepOut out;
                        out.finished = true;
                        out.results = {out_of_fuel(p)};
                        return out;
                    }
                    trace("eb", p, *t, depth);
                    TermPtr arg = args.back();
                    args.pop_back();
                    head = substitute(head->a, head->name, arg);
                    break;
                }
                case TermKind::Fix: {
                    if (args.empty())
                        invariant_failure("unapplied fix evaluated", *head);
                    if (!pay(fuel)) {
                        StepOut out;
                        out.finished = true;
                        out.results = {out_of_fuel(p)};
                        return out;
                    }
                    trace("eY", p, *t, depth);
                    TermPtr m = args.back();
                    args.pop_back();
                    args.push_back(mk_app(head, m)); // Y M P... -> M (Y M) P...
                    head = m;
                    break;
                }
                case TermKind::If: {
                    if (args.size() != 3)
                        invariant_failure("conditional with missing branches", *t);
                    if (!pay(fuel)) {
                        StepOut out;
                        out.finished = true;
                        out.results = {out_of_fuel(p)};
                        return out;
                    }
                    TermPtr guard = args[2];
                    TermPtr then_branch = args[1];
                    TermPtr else_branch = args[0];
                    Results guards = eval(std::move(s), guard, p, fuel, depth + 1);
                    if (guards.size() == 1 && !guards[0].exhausted) {
                        uint64_t n = expect_num(guards[0], *guard);
                        trace(n == 0 ? "eif_l" : "eif_r", guards[0].prob, *t, depth);
                        StepOut out;
                        out.store = std::move(guards[0].store);
                        out.next = n == 0 ? then_branch : else_branch;
                        out.prob = guards[0].prob;
                        out.fuel = guards[0].fuel;
                        return out;
                    }
                    StepOut out;
                    out.finished = true;
                    out.results = for_each_done(std::move(guards), [&](Res r) {
                        uint64_t n = expect_num(r, *guard);
                        trace(n == 0 ? "eif_l" : "eif_r", r.prob, *t, depth);
                        return eval(std::move(r.store), n == 0 ? then_branch : else_branch,
                                    r.prob, r.fuel, depth + 1);
                    });
                    return out;
                }
                case TermKind::Succ:
                case TermKind::Pred: {
                    if (args.size() != 1)
                        invariant_failure("succ/pred applied at non-Nat type", *t);
                    bool is_succ = head->kind == TermKind::Succ;
                    if (!pay(fuel)) {
                        StepOut out;
                        out.finished = true;
                        out.results = {out_of_fuel(p)};
                        return out;
                    }
                    trace(is_succ ? "es" : "ep", p, *t, depth);
                    TermPtr operand = args[0];
                    Results inner = eval(std::move(s), operand, p, fuel, depth + 1);
                    StepOut out;
                    out.finished = true;
                    out.results = for_each_done(std::move(inner), [&](Res r) -> Results {
                        uint64_t n = expect_num(r, *operand);
                        if (is_succ) {
                            if (n == UINT64_MAX)
                                throw RuntimeError(RuntimeError::Kind::Overflow,
                                                   "succ past the 64-bit natural range");
                            return {done(std::move(r.store), Value::num(n + 1), r.prob, r.fuel)};
                        }
                        if (n == 0) {
                            if (cfg_.strict_pred)
                                throw RuntimeError(RuntimeError::Kind::PredOfZeroStrict,
                                                   "pred 0 has no derivation under (ep)");
                            return {done(std::move(r.store), Value::num(0), r.prob, r.fuel)};
                        }
                        return {done(std::move(r.store), Value::num(n - 1), r.prob, r.fuel)};
                    });
                    return out;
                }
                default:
                    invariant_failure("application of a non-function", *t);
            }
        }
    }

    Results eval_while(Store s, const TermPtr& t, double p, uint64_t fuel, int depth) {
        struct Pending {
            Store store;
            double prob;
            uint64_t fuel;
        };
        std::vector<Pending> pending;
        pending.push_back({std::move(s), p, fuel});
        Results out;
        while (!pending.empty()) {
            Pending cur = std::move(pending.back());
            pending.pop_back();
            if (!pay(cur.fuel)) {
                out.push_back(out_of_fuel(cur.prob));
                continue;
            }
            Results guards = eval(std::move(cur.store), t->a, cur.prob, cur.fuel, depth + 1);
            for (auto& g : guards) {
                if (g.exhausted) {
                    out.push_back(std::move(g));
                    continue;
                }
                uint64_t n = expect_num(g, *t->a);
                if (n == 0) {
                    trace("ew0", g.prob, *t, depth);
                    out.push_back(done(std::move(g.store), Value::skip(), g.prob, g.fuel));
                    continue;
                }
                trace("ew1", g.prob, *t, depth);
                Results bodies = eval(std::move(g.store), t->b, g.prob, g.fuel, depth + 1);
                for (auto& b : bodies) {
                    if (b.exhausted) {
                        out.push_back(std::move(b));
                        continue;
                    }
                    expect_skip(b, *t->b);
                    pending.push_back({std::move(b.store), b.prob, b.fuel});
                }
            }
        }
        return out;
    }
};

} // namespace

EvalResult eval(const Store& s, const TermPtr& t, const EvalConfig& cfg,
                LocationAllocator& alloc) {
    Evaluator ev(cfg, alloc);
    auto results = ev.run(s, t, 1.0, cfg.fuel);

    EvalResult out;
    for (auto& r : results) {
        if (r.exhausted)
            out.lost_probability += r.prob;
        else
            out.outcomes.push_back(Outcome{std::move(r.store), std::move(r.value), r.prob});
    }
    if (out.outcomes.empty() && out.lost_probability > 0.0)
        throw RuntimeError(RuntimeError::Kind::FuelExhausted,
                           "no evaluation path terminated within the fuel budget");
    return out;
}

bool value_matches_ground_type(const Value& v, const TypePtr& ground) {
    switch (ground->kind) {
        case TypeKind::Nat: return v.kind == Value::Kind::Num;
        case TypeKind::Cmd: return v.kind == Value::Kind::Skip;
        case TypeKind::CVar: return v.kind == Value::Kind::CVar;
        case TypeKind::QVar: return v.kind == Value::Kind::QVar;
        case TypeKind::Circ:
            return v.kind == Value::Kind::Circ && wires(v.circ).has_value();
        case TypeKind::Arrow: return false;
    }
    return false;
}

std::vector<ReportLine> merge_outcomes(const std::vector<Outcome>& outcomes) {
    std::vector<std::pair<Value, double>> merged;
    for (const auto& o : outcomes) {
        bool found = false;
        for (auto& [v, prob] : merged) {
            if (v == o.value) {
                prob += o.probability;
                found = true;
                break;
            }
        }
        if (!found)
            merged.emplace_back(o.value, o.probability);
    }
    std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
        if (a.first.kind == Value::Kind::Num && b.first.kind == Value::Kind::Num)
            return a.first.nat < b.first.nat;
        return to_string(a.first) < to_string(b.first);
    });
    std::vector<ReportLine> out;
    out.reserve(merged.size());
    for (auto& [v, prob] : merged)
        out.push_back(ReportLine{to_string(v), prob});
    return out;
}

RunReport run_program(std::string_view source, const std::vector<Binding>& bindings,
                      const EvalConfig& cfg) {
    TermPtr program = parse_program(source);

    Base base;
    for (const auto& b : bindings)
        base.bind(b.name,
                  b.kind == LocationKind::Classical ? Type::cvar() : Type::qvar());
    TypePtr type = check_program(program, base);

    LocationAllocator alloc;
    Store store;
    for (const auto& b : bindings) {
        Location loc{};
        if (b.kind == LocationKind::Classical) {
            std::tie(store, loc) = alloc_classical(store, alloc, b.value);
        } else {
            std::tie(store, loc) = alloc_quantum(store, alloc, b.value, cfg.max_qubits);
        }
        program = substitute(program, b.name, mk_loc(loc));
    }

    EvalResult result = eval(store, program, cfg, alloc);
    for (const auto& o : result.outcomes) {
        if (!value_matches_ground_type(o.value, type))
            throw std::logic_error("progress violation: value " + to_string(o.value) +
                                   " does not match program type " + to_string(type));
    }

    RunReport report;
    report.program_type = type;
    report.outcomes = std::move(result.outcomes);
    report.merged = merge_outcomes(report.outcomes);
    report.lost_probability = result.lost_probability;
    return report;
}

} // namespace iqu
