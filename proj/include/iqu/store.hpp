#pragma once

// The store: classical locations holding naturals and quantum locations
// holding (state vector, qubit count) pairs. Stores are values — every
// update returns a new Store — so measurement branches can diverge without
// copying state vectors (registers are shared until written).

#include <cstdint>
#include <map>

#include "iqu/diag.hpp"
#include "iqu/quantum.hpp"
#include "iqu/syntax.hpp"

namespace iqu {

struct QuantumRegister {
    StatePtr state;
    unsigned qubits; // the paper's s#(x); fixed for the register's lifetime
};

class Store {
  public:
    bool contains(const Location& loc) const;
    size_t size() const { return classical_.size() + quantum_.size(); }

    // Reads throw DanglingLocation when loc is not in the domain (a location
    // can only dangle after escaping its binder's scope).
    uint64_t read_classical(const Location& loc) const;
    const QuantumRegister& quantum_register(const Location& loc) const;
    unsigned qubit_count(const Location& loc) const;
    const StateVector& read_quantum(const Location& loc) const;

    // Functional updates.
    Store write_classical(const Location& loc, uint64_t value) const;
    Store write_quantum(const Location& loc, StatePtr state) const;
    Store with_classical(const Location& loc, uint64_t value) const;    // extend domain
    Store with_quantum(const Location& loc, QuantumRegister reg) const; // extend domain
    Store restrict(const Location& loc) const;                          // s except on loc

    const std::map<uint64_t, uint64_t>& classical() const { return classical_; }
    const std::map<uint64_t, QuantumRegister>& quantum() const { return quantum_; }

    friend bool operator==(const Store& a, const Store& b);

  private:
    std::map<uint64_t, uint64_t> classical_;
    std::map<uint64_t, QuantumRegister> quantum_;
};

bool operator==(const Store& a, const Store& b);
inline bool operator!=(const Store& a, const Store& b) { return !(a == b); }

// Serial numbers are owned by one evaluation run and never reused, so
// locations allocated on different measurement branches stay distinct.
class LocationAllocator {
  public:
    Location fresh(LocationKind kind) { return Location{kind, next_++}; }

  private:
    uint64_t next_ = 0;
};

std::pair<Store, Location> alloc_classical(const Store& s, LocationAllocator& alloc,
                                           uint64_t init);

// Allocates an n-qubit register initialized to |0...0>. Throws Capacity when
// n is zero or exceeds max_qubits.
std::pair<Store, Location> alloc_quantum(const Store& s, LocationAllocator& alloc, uint64_t n,
                                         unsigned max_qubits);

} // namespace iqu
