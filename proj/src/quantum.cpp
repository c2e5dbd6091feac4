#include "iqu/quantum.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "iqu/gates.hpp"

namespace iqu {

StateVector zero_state(unsigned qubits) {
    StateVector v(size_t(1) << qubits);
    v[0] = 1.0;
    return v;
}

double norm(const StateVector& v) {
    double sum = 0.0;
    for (const Complex& c : v)
        sum += std::norm(c);
    return std::sqrt(sum);
}

std::optional<uint64_t> wires(const Circuit& c) {
    switch (c.kind) {
        case Circuit::Kind::Gate:
            return c.arity;
        case Circuit::Kind::Seq: {
            auto l = wires(*c.left);
            auto r = wires(*c.right);
            if (l && r && *l == *r)
                return l;
            return std::nullopt;
        }
        case Circuit::Kind::Par: {
            auto l = wires(*c.left);
            auto r = wires(*c.right);
            if (l && r)
                return *l + *r;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::optional<uint64_t> wires(const CircuitPtr& c) {
    return c ? wires(*c) : std::nullopt;
}

namespace {

unsigned log2_size(size_t n) {
    unsigned bits = 0;
    while ((size_t(1) << bits) < n)
        ++bits;
    assert((size_t(1) << bits) == n);
    return bits;
}

// Applies a k-wire gate to wires [offset+1, offset+k] (1-based from the top)
// of an n-qubit state, in place. With the MSB-first convention those wires
// occupy the contiguous index bits [lo, lo+k).
void apply_gate(const Matrix& u, unsigned k, unsigned offset, unsigned total, StateVector& v) {
    const unsigned lo = total - offset - k;
    const size_t block = size_t(1) << k;
    const size_t low_count = size_t(1) << lo;
    const size_t high_count = v.size() >> (lo + k);

    std::vector<Complex> in(block), out(block);
    for (size_t hi = 0; hi < high_count; ++hi) {
        const size_t base_hi = hi << (lo + k);
        for (size_t lo_bits = 0; lo_bits < low_count; ++lo_bits) {
            const size_t base = base_hi | lo_bits;
            for (size_t g = 0; g < block; ++g)
                in[g] = v[base | (g << lo)];
            for (size_t r = 0; r < block; ++r) {
                Complex acc{};
                for (size_t g = 0; g < block; ++g)
                    acc += u.at(r, g) * in[g];
                out[r] = acc;
            }
            for (size_t r = 0; r < block; ++r)
                v[base | (r << lo)] = out[r];
        }
    }
}

void apply_rec(const Circuit& c, unsigned offset, unsigned total, StateVector& v) {
    switch (c.kind) {
        case Circuit::Kind::Gate: {
            const GateDef* g = find_gate(c.gate);
            if (!g || g->arity != c.arity)
                throw std::logic_error("apply_circuit: unknown gate " + c.gate);
            apply_gate(g->unitary, g->arity, offset, total, v);
            return;
        }
        case Circuit::Kind::Seq:
            // left component acts first
            apply_rec(*c.left, offset, total, v);
            apply_rec(*c.right, offset, total, v);
            return;
        case Circuit::Kind::Par: {
            auto lw = wires(*c.left);
            assert(lw);
            apply_rec(*c.left, offset, total, v);
            apply_rec(*c.right, offset + unsigned(*lw), total, v);
            return;
        }
    }
}

} // namespace

StateVector apply_circuit(const Circuit& c, const StateVector& v) {
    auto w = wires(c);
    if (!w)
        throw std::logic_error("apply_circuit: circuit has no wire count");
    const unsigned total = log2_size(v.size());
    if (*w != total)
        throw std::logic_error("apply_circuit: circuit arity does not match state size");
    StateVector out = v;
    apply_rec(c, 0, total, out);
    return out;
}

Matrix build_matrix(const Circuit& c) {
    auto w = wires(c);
    if (!w)
        throw std::invalid_argument("build_matrix: circuit has no wire count");
    if (*w > 10)
        throw std::invalid_argument("build_matrix: more than 10 wires");
    switch (c.kind) {
        case Circuit::Kind::Gate: {
            const GateDef* g = find_gate(c.gate);
            if (!g || g->arity != c.arity)
                throw std::invalid_argument("build_matrix: unknown gate " + c.gate);
            return g->unitary;
        }
        case Circuit::Kind::Seq:
            // cEval(C0 :: C1) = cEval(C1) . cEval(C0)
            return matmul(build_matrix(*c.right), build_matrix(*c.left));
        case Circuit::Kind::Par:
            return kron(build_matrix(*c.left), build_matrix(*c.right));
    }
    throw std::logic_error("build_matrix: bad circuit node");
}

CircuitPtr structural_adjoint(const CircuitPtr& c) {
    switch (c->kind) {
        case Circuit::Kind::Gate: {
            auto adj = gate_adjoint(c->gate);
            if (!adj)
                throw std::logic_error("structural_adjoint: unknown gate " + c->gate);
            if (*adj == c->gate)
                return c;
            return Circuit::gate_ref(*adj, c->arity);
        }
        case Circuit::Kind::Seq:
            return Circuit::seq(structural_adjoint(c->right), structural_adjoint(c->left));
        case Circuit::Kind::Par:
            return Circuit::par(structural_adjoint(c->left), structural_adjoint(c->right));
    }
    throw std::logic_error("structural_adjoint: bad circuit node");
}

std::vector<MeasurementOutcome> partial_measure(const StateVector& v, uint64_t k,
                                                double prune_tolerance) {
    const unsigned n = log2_size(v.size());
    assert(n >= 1);
    const uint64_t j = k % (uint64_t(n) + 1);
    const unsigned suffix_bits = unsigned(n - j);
    const size_t suffix_count = size_t(1) << suffix_bits;
    const size_t prefix_count = v.size() >> suffix_bits;

    std::vector<MeasurementOutcome> outcomes;
    for (size_t m = 0; m < prefix_count; ++m) {
        const size_t base = m << suffix_bits;
        double p = 0.0;
        for (size_t r = 0; r < suffix_count; ++r)
            p += std::norm(v[base | r]);
        if (p <= prune_tolerance)
            continue;
        auto residual = std::make_shared<StateVector>(v.size());
        const double scale = 1.0 / std::sqrt(p);
        for (size_t r = 0; r < suffix_count; ++r)
            (*residual)[base | r] = v[base | r] * scale;
        outcomes.push_back({m, std::move(residual), p});
    }
    return outcomes;
}

} // namespace iqu
