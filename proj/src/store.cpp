#include "iqu/store.hpp"

#include <cmath>

namespace iqu {

namespace {

[[noreturn]] void dangling(const Location& loc) {
    throw RuntimeError(RuntimeError::Kind::DanglingLocation,
                       to_string(loc) + " is not in the store");
}

} // namespace

bool Store::contains(const Location& loc) const {
    if (loc.kind == LocationKind::Classical)
        return classical_.count(loc.serial) != 0;
    return quantum_.count(loc.serial) != 0;
}

uint64_t Store::read_classical(const Location& loc) const {
    auto it = classical_.find(loc.serial);
    if (loc.kind != LocationKind::Classical || it == classical_.end())
        dangling(loc);
    return it->second;
}

const QuantumRegister& Store::quantum_register(const Location& loc) const {
    auto it = quantum_.find(loc.serial);
    if (loc.kind != LocationKind::Quantum || it == quantum_.end())
        dangling(loc);
    return it->second;
}

unsigned Store::qubit_count(const Location& loc) const { return quantum_register(loc).qubits; }

const StateVector& Store::read_quantum(const Location& loc) const {
    return *quantum_register(loc).state;
}

Store Store::write_classical(const Location& loc, uint64_t value) const {
    if (!contains(loc))
        dangling(loc);
    Store out = *this;
    out.classical_[loc.serial] = value;
    return out;
}

Store Store::write_quantum(const Location& loc, StatePtr state) const {
    const QuantumRegister& reg = quantum_register(loc);
    if (state->size() != size_t(1) << reg.qubits)
        throw std::logic_error("write_quantum: state size does not match register");
    Store out = *this;
    out.quantum_[loc.serial].state = std::move(state);
    return out;
}

Store Store::with_classical(const Location& loc, uint64_t value) const {
    Store out = *this;
    out.classical_[loc.serial] = value;
    return out;
}

Store Store::with_quantum(const Location& loc, QuantumRegister reg) const {
    Store out = *this;
    out.quantum_[loc.serial] = std::move(reg);
    return out;
}

Store Store::restrict(const Location& loc) const {
    Store out = *this;
    if (loc.kind == LocationKind::Classical)
        out.classical_.erase(loc.serial);
    else
        out.quantum_.erase(loc.serial);
    return out;
}

bool operator==(const Store& a, const Store& b) {
    if (a.classical_ != b.classical_)
        return false;
    if (a.quantum_.size() != b.quantum_.size())
        return false;
    auto ita = a.quantum_.begin();
    auto itb = b.quantum_.begin();
    for (; ita != a.quantum_.end(); ++ita, ++itb) {
        if (ita->first != itb->first || ita->second.qubits != itb->second.qubits)
            return false;
        if (*ita->second.state != *itb->second.state)
            return false;
    }
    return true;
}

std::pair<Store, Location> alloc_classical(const Store& s, LocationAllocator& alloc,
                                           uint64_t init) {
    Location loc = alloc.fresh(LocationKind::Classical);
    return {s.with_classical(loc, init), loc};
}

std::pair<Store, Location> alloc_quantum(const Store& s, LocationAllocator& alloc, uint64_t n,
                                         unsigned max_qubits) {
    if (n == 0 || n > max_qubits)
        throw RuntimeError(RuntimeError::Kind::Capacity,
                           "register of " + std::to_string(n) + " qubits (limit " +
                               std::to_string(max_qubits) + ", minimum 1)");
    Location loc = alloc.fresh(LocationKind::Quantum);
    QuantumRegister reg{std::make_shared<StateVector>(zero_state(unsigned(n))), unsigned(n)};
    return {s.with_quantum(loc, std::move(reg)), loc};
}

} // namespace iqu
