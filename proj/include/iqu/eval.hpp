#pragma once

// Big-step probabilistic evaluation of well-typed ground programs, in two
// modes: exhaustive branch enumeration (distribution) and seeded sampling.
// Measurement is the only source of branching; every other rule is
// deterministic and carries probability 1.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iqu/store.hpp"
#include "iqu/syntax.hpp"
#include "iqu/typecheck.hpp"

namespace iqu {

struct EvalConfig {
    enum class Mode { Distribution, Sample };

    Mode mode = Mode::Distribution;
    uint64_t seed = 0;                      // Sample mode only
    uint64_t fuel = 10'000'000;             // rule-application budget per path
    unsigned max_qubits = 20;
    bool strict_pred = false;               // pred 0 is an error instead of 0
    bool faithful_divergence = false;       // wr-undefined :: spins fuel away
    bool trace = false;
    std::ostream* trace_out = nullptr;      // defaults to stderr
    std::ostream* diagnostics = nullptr;    // (eqA1) warnings etc.; stderr
};

struct Outcome {
    Store store;
    Value value;
    double probability; // product of branch probabilities along the path
};

struct EvalResult {
    std::vector<Outcome> outcomes;
    double lost_probability = 0.0; // mass of fuel-exhausted branches (distribution mode)
};

// Evaluates a closed, well-typed term of ground type starting from s.
// Distribution mode returns one outcome per terminating branch path;
// sample mode returns exactly one outcome. Throws RuntimeError on the
// error conditions; FuelExhausted only when no branch terminates.
EvalResult eval(const Store& s, const TermPtr& t, const EvalConfig& cfg,
                LocationAllocator& alloc);

// ---------------------------------------------------------------------------
// Whole-pipeline driver: parse, check, bind free store variables, evaluate.

struct Binding {
    std::string name;
    LocationKind kind;
    uint64_t value; // initial natural (classical) or qubit count (quantum)
};

struct ReportLine {
    std::string value;  // rendered value, merged across branches
    double probability; // summed over branches with this value
};

struct RunReport {
    TypePtr program_type;
    std::vector<Outcome> outcomes;   // raw, per branch
    std::vector<ReportLine> merged;  // by value, sorted (numerals numerically)
    double lost_probability = 0.0;
};

RunReport run_program(std::string_view source, const std::vector<Binding>& bindings,
                      const EvalConfig& cfg);

std::vector<ReportLine> merge_outcomes(const std::vector<Outcome>& outcomes);

// Asserts the Progress-theorem shape: Nat programs yield numerals, circ
// programs yield wire-consistent circuits, cVar/qVar names, cmd skip.
bool value_matches_ground_type(const Value& v, const TypePtr& ground);

} // namespace iqu
