#pragma once

// The simulated co-processor: wire counting, circuit application on dense
// state vectors, the structural adjoint, and partial measurement of the
// leftmost qubits.
//
// Index convention: basis state |b1 b2 ... bn> maps to the index whose most
// significant bit is b1, i.e. the leftmost ket symbol / top circuit wire /
// left factor of || owns the high bits.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "iqu/matrix.hpp"
#include "iqu/syntax.hpp"

namespace iqu {

using StateVector = std::vector<Complex>;
using StatePtr = std::shared_ptr<const StateVector>;

// |0...0> on n qubits.
StateVector zero_state(unsigned qubits);

double norm(const StateVector& v);

// Wire count of an evaluated circuit. Partial: a sequential composition of
// components with different (or undefined) counts has no wire count.
std::optional<uint64_t> wires(const Circuit& c);
std::optional<uint64_t> wires(const CircuitPtr& c);

// Applies the circuit's unitary to the state. Precondition (caller-checked,
// asserted here): wires(c) is defined and 2^wires(c) == v.size(). Works by
// structural recursion; no full matrix is ever built, so 20-qubit registers
// stay cheap.
StateVector apply_circuit(const Circuit& c, const StateVector& v);

// Dense unitary of the circuit, computed directly from the evaluation map
// (sequential = matrix product, parallel = Kronecker product). Independent
// oracle for apply_circuit; guarded to at most 10 wires.
Matrix build_matrix(const Circuit& c);

// reverse: gates are replaced by their adjoints, sequential components swap
// order, parallel components keep it.
CircuitPtr structural_adjoint(const CircuitPtr& c);

struct MeasurementOutcome {
    uint64_t result;     // the measured prefix as a natural number
    StatePtr residual;   // normalized post-measurement state, same dimension
    double probability;  // in (0, 1]
};

// Measures the leftmost (k mod (n+1)) qubits of an n-qubit state. Outcomes
// with probability <= prune_tolerance are dropped. k = 0 (mod n+1) yields the
// single outcome (0, v, 1).
std::vector<MeasurementOutcome> partial_measure(const StateVector& v, uint64_t k,
                                                double prune_tolerance = 1e-12);

} // namespace iqu
