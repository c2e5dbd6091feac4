// Acceptance suite: each check prints one [PASS]/[FAIL] line; the exit code
// is the number of failed checks. Tolerances are pinned in the checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gen.hpp"
#include "iqu/eval.hpp"
#include "iqu/gates.hpp"
#include "iqu/parser.hpp"
#include "iqu/quantum.hpp"
#include "iqu/typecheck.hpp"
#include "typing_cases.hpp"

using namespace iqu;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<void()>& body) {
    auto start = std::chrono::steady_clock::now();
    try {
        body();
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            start)
                      .count();
        std::printf("[PASS] %d. %s (%.1f ms)\n", number, name.c_str(), ms);
    } catch (const std::exception& e) {
        std::printf("[FAIL] %d. %s: %s\n", number, name.c_str(), e.what());
        ++g_failures;
    }
    std::fflush(stdout);
}

void expect(bool cond, const std::string& message) {
    if (!cond)
        throw std::runtime_error(message);
}

void expect_near(double actual, double wanted, double tol, const std::string& message) {
    if (std::abs(actual - wanted) > tol)
        throw std::runtime_error(message + ": expected " + std::to_string(wanted) + ", got " +
                                 std::to_string(actual) + " (tolerance " + std::to_string(tol) +
                                 ")");
}

std::string corpus_file(const char* name) {
    std::string path = std::string(IQU_CORPUS_DIR) + "/" + name;
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

EvalConfig quiet() {
    static std::ostringstream sink;
    EvalConfig cfg;
    cfg.diagnostics = &sink;
    return cfg;
}

RunReport run_src(const std::string& source, EvalConfig cfg) {
    return run_program(source, {}, cfg);
}

double merged_probability(const RunReport& report, const std::string& value) {
    for (const auto& line : report.merged)
        if (line.value == value)
            return line.probability;
    return 0.0;
}

double state_diff(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

StateVector matrix_apply(const Matrix& m, const StateVector& v) {
    StateVector out(v.size());
    for (size_t r = 0; r < m.dim; ++r) {
        Complex acc{};
        for (size_t c = 0; c < m.dim; ++c)
            acc += m.at(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

// --------------------------------------------------------------------------

void bell_experiment() {
    auto start = std::chrono::steady_clock::now();
    RunReport report = run_src(corpus_file("bell.iqu"), quiet());
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    expect(report.merged.size() == 2, "expected exactly two merged outcomes");
    expect_near(merged_probability(report, "0"), 0.5, 1e-9, "probability of 0");
    expect_near(merged_probability(report, "1"), 0.5, 1e-9, "probability of 1");
    expect(seconds < 0.1, "runtime " + std::to_string(seconds) + "s exceeds 0.1s");
}

void pmeas_worked_example() {
    StateVector v(16);
    v[2] = 1.0 / std::sqrt(2.0); // |0010>
    v[11] = 0.5;                 // |1011>
    v[1] = 0.5;                  // |0001>

    auto outcomes = partial_measure(v, 2);
    expect(outcomes.size() == 2, "expected exactly two outcomes");
    expect(outcomes[0].result == 0 && outcomes[1].result == 2, "results must be 00 and 10");
    expect_near(outcomes[0].probability, 0.75, 1e-9, "p(00)");
    expect_near(outcomes[1].probability, 0.25, 1e-9, "p(10)");

    StateVector res0(16), res1(16);
    res0[2] = std::sqrt(2.0 / 3.0);
    res0[1] = std::sqrt(1.0 / 3.0);
    res1[11] = 1.0;
    expect(state_diff(*outcomes[0].residual, res0) < 1e-9, "residual for 00");
    expect(state_diff(*outcomes[1].residual, res1) < 1e-9, "residual for 10");

    // period identity, elementwise (n = 4, so k and k + 5 coincide)
    auto shifted = partial_measure(v, 7);
    expect(shifted.size() == outcomes.size(), "period identity: outcome counts");
    for (size_t i = 0; i < outcomes.size(); ++i) {
        expect(shifted[i].result == outcomes[i].result, "period identity: results");
        expect_near(shifted[i].probability, outcomes[i].probability, 1e-9,
                    "period identity: probabilities");
        expect(state_diff(*shifted[i].residual, *outcomes[i].residual) < 1e-9,
               "period identity: residuals");
    }
}

void deutsch_jozsa() {
    for (const char* file : {"dj_const2.iqu", "dj_const3.iqu"}) {
        RunReport report = run_src(corpus_file(file), quiet());
        expect_near(merged_probability(report, "0"), 1.0, 1e-9,
                    std::string(file) + ": constant oracle must measure all zeros");
    }
    for (const char* file : {"dj_bal2.iqu", "dj_bal3.iqu"}) {
        RunReport report = run_src(corpus_file(file), quiet());
        expect(merged_probability(report, "0") < 1e-9,
               std::string(file) + ": balanced oracle must never measure all zeros");
    }
}

void simon_subroutine() {
    const std::string header =
        "(fun par:(circ -> Nat -> circ).\n"
        "  qnew r := 4 in (\n"
        "    r <| ((par H^1 1) || (par Id^1 1))\n"
        "         :: (";
    const std::string footer =
        ")\n"
        "         :: ((par H^1 1) || (par Id^1 1));\n"
        "    meas^2 r))\n"
        "(fun u:circ. fun k:Nat.\n"
        "  (fix:(circ -> Nat -> circ))\n"
        "    (fun w:(circ -> Nat -> circ). fun u:circ. fun k:Nat.\n"
        "       if k then u else (u || (w u (pred k))))\n"
        "    u k)\n";
    const std::string cnot_1_to_3 =
        "(SWAP^2 || Id^1 || Id^1) :: (Id^1 || CNOT^2 || Id^1) :: (SWAP^2 || Id^1 || Id^1)";
    const std::string cnot_2_to_3 = "Id^1 || CNOT^2 || Id^1";

    struct Instance {
        uint64_t s;
        std::string source;
    };
    std::vector<Instance> instances = {
        {0b01, header + cnot_1_to_3 + footer},       // f(x) = x1
        {0b10, header + cnot_2_to_3 + footer},       // f(x) = x2
        {0b11, corpus_file("simon2.iqu")},           // f(x) = x1 xor x2
    };

    for (const auto& inst : instances) {
        RunReport report = run_src(inst.source, quiet());
        expect(!report.merged.empty(), "empty distribution");
        double total = 0.0;
        for (const auto& line : report.merged) {
            uint64_t y = std::stoull(line.value);
            total += line.probability;
            // brute force the defining property over the support
            expect(__builtin_popcountll(y & inst.s) % 2 == 0,
                   "outcome " + line.value + " is not orthogonal to s=" +
                       std::to_string(inst.s));
        }
        expect_near(total, 1.0, 1e-9, "probabilities must sum to one");
    }
}

// 200 circuits of up to 5 wires over the full gate table, shared by
// criteria 5 and 6.
const std::vector<CircuitPtr>& acceptance_circuits() {
    static const std::vector<CircuitPtr> circuits = [] {
        testgen::Rng rng(20250517);
        std::vector<CircuitPtr> out;
        out.reserve(200);
        for (int i = 0; i < 200; ++i) {
            unsigned arity = 1 + unsigned(rng.below(5));
            out.push_back(testgen::gen_circuit(rng, arity, 5));
        }
        return out;
    }();
    return circuits;
}

void oracle_equivalence() {
    testgen::Rng rng(777);
    for (const CircuitPtr& c : acceptance_circuits()) {
        Matrix m = build_matrix(*c);
        unsigned arity = unsigned(*wires(c));
        for (int k = 0; k < 20; ++k) {
            StateVector v = testgen::gen_state(rng, arity);
            StateVector fast = apply_circuit(*c, v);
            StateVector slow = matrix_apply(m, v);
            expect(state_diff(fast, slow) < 1e-9, "apply_circuit disagrees with build_matrix");
        }
    }
}

void adjoint_soundness() {
    for (const CircuitPtr& c : acceptance_circuits()) {
        CircuitPtr adj = structural_adjoint(c);
        expect(circuit_eq(structural_adjoint(adj), c), "adjoint is not an involution");
        Matrix direct = dagger(build_matrix(*c));
        Matrix structural = build_matrix(*adj);
        expect(max_abs_diff(direct, structural) < 1e-9,
               "structural adjoint does not match the conjugate transpose");
    }
}

void type_safety_suite() {
    const TypeKind grounds[] = {TypeKind::Nat, TypeKind::Cmd, TypeKind::Circ, TypeKind::CVar,
                                TypeKind::QVar};
    int evaluated = 0, exhausted = 0;
    for (int i = 0; i < 1000; ++i) {
        testgen::TypedGen gen(40000 + uint64_t(i));
        TermPtr prog = gen.program(grounds[i % 5], 8);
        TypePtr ty = check_program(prog);

        EvalConfig cfg = quiet();
        cfg.fuel = 20'000;
        cfg.max_qubits = 8;
        LocationAllocator alloc;
        EvalResult result;
        try {
            result = eval(Store{}, prog, cfg, alloc);
        } catch (const RuntimeError& e) {
            expect(e.kind == RuntimeError::Kind::FuelExhausted,
                   std::string("forbidden runtime error: ") + e.what());
            ++exhausted;
            continue;
        }
        ++evaluated;
        for (const auto& o : result.outcomes)
            expect(value_matches_ground_type(o.value, ty),
                   "outcome " + to_string(o.value) + " does not match type " + to_string(ty));
    }
    expect(evaluated >= 900, "too few programs terminated: " + std::to_string(evaluated));
    (void)exhausted;
}

void typing_rule_suite() {
    auto cases = testcases::typing_rule_cases();
    expect(cases.size() == 46, "expected 46 rule cases");
    for (const auto& c : cases) {
        if (c.positive) {
            TypePtr got = infer(c.base, c.term);
            expect(type_eq(got, c.expected),
                   c.rule + " positive (" + c.label + "): inferred " + to_string(got));
        } else {
            bool failed = false;
            try {
                infer(c.base, c.term);
            } catch (const TypeError&) {
                failed = true;
            }
            expect(failed, c.rule + " negative (" + c.label + "): type error expected");
        }
    }

    // the register-initialization derivation: |101> = 5, measured deterministically
    const std::string source = "qnew r := 3 in (r <| (Not^1 || Id^1) || Not^1; meas^3 r)";
    TypePtr ty = check_program(parse_program(source));
    expect(type_eq(ty, Type::nat()), "program must type at Nat");
    RunReport report = run_src(source, quiet());
    expect(report.merged.size() == 1, "the measurement must be deterministic");
    expect_near(merged_probability(report, "5"), 1.0, 1e-9, "probability of 5");
}

void determinism_and_sampling() {
    const std::string bell = corpus_file("bell.iqu");

    auto sampled = [&](uint64_t seed) {
        std::ostringstream trace;
        EvalConfig cfg = quiet();
        cfg.mode = EvalConfig::Mode::Sample;
        cfg.seed = seed;
        cfg.trace = true;
        cfg.trace_out = &trace;
        RunReport r = run_program(bell, {}, cfg);
        std::ostringstream rendered;
        for (const auto& line : r.merged)
            rendered << line.value << "\t" << line.probability << "\n";
        return std::make_pair(rendered.str(), trace.str());
    };
    for (uint64_t seed : {1ULL, 77ULL, 123456789ULL}) {
        auto a = sampled(seed);
        auto b = sampled(seed);
        expect(a.first == b.first && a.second == b.second,
               "fixed-seed runs are not bit-identical");
    }

    int zeros = 0;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
        EvalConfig cfg = quiet();
        cfg.mode = EvalConfig::Mode::Sample;
        cfg.seed = uint64_t(i) * 2654435761u + 17;
        RunReport r = run_program(bell, {}, cfg);
        if (r.outcomes.at(0).value == Value::num(0))
            ++zeros;
    }
    double freq = double(zeros) / samples;
    expect(freq >= 0.48 && freq <= 0.52,
           "frequency of outcome 0 is " + std::to_string(freq) + ", outside [0.48, 0.52]");
}

} // namespace

int main() {
    criterion(1, "Bell experiment: distribution {0: 1/2, 1: 1/2} under 0.1s", bell_experiment);
    criterion(2, "partial measurement worked example and period identity", pmeas_worked_example);
    criterion(3, "Deutsch-Jozsa: constant vs balanced oracles, n = 2 and 3", deutsch_jozsa);
    criterion(4, "Simon subroutine: support orthogonal to every hidden s", simon_subroutine);
    criterion(5, "oracle equivalence: 200 circuits x 20 states within 1e-9", oracle_equivalence);
    criterion(6, "adjoint soundness: dagger matrices and structural involution",
              adjoint_soundness);
    criterion(7, "type safety: 1000 random programs evaluate to well-shaped values",
              type_safety_suite);
    criterion(8, "typing rules: positive and negative case per rule; |101> program",
              typing_rule_suite);
    criterion(9, "determinism and sampling: bit-identical runs; 10k-sample frequency",
              determinism_and_sampling);

    if (g_failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    return g_failures;
}
