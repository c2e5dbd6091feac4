#include "iqu/gates.hpp"

#include <cmath>
#include <unordered_map>

namespace iqu {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix gate2(Complex a, Complex b, Complex c, Complex d) { return Matrix(2, {a, b, c, d}); }

// Basis convention everywhere: |b1 b2 ... bk> with b1 (the top wire) as the
// most significant bit of the index.
std::vector<GateDef> build_table() {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex t = std::polar(1.0, M_PI / 4.0);

    std::vector<GateDef> g;
    g.push_back({"Id", 1, "Id", gate2(1, 0, 0, 1)});
    g.push_back({"Not", 1, "Not", gate2(0, 1, 1, 0)});
    g.push_back({"Y", 1, "Y", gate2(0, -kI, kI, 0)});
    g.push_back({"Z", 1, "Z", gate2(1, 0, 0, -1)});
    g.push_back({"H", 1, "H", gate2(s, s, s, -s)});
    g.push_back({"S", 1, "Sdg", gate2(1, 0, 0, kI)});
    g.push_back({"Sdg", 1, "S", gate2(1, 0, 0, -kI)});
    g.push_back({"T", 1, "Tdg", gate2(1, 0, 0, t)});
    g.push_back({"Tdg", 1, "T", gate2(1, 0, 0, std::conj(t))});

    // control on the top wire
    Matrix cnot(4);
    cnot.at(0, 0) = cnot.at(1, 1) = cnot.at(2, 3) = cnot.at(3, 2) = 1.0;
    g.push_back({"CNOT", 2, "CNOT", cnot});

    Matrix cz = Matrix::identity(4);
    cz.at(3, 3) = -1.0;
    g.push_back({"CZ", 2, "CZ", cz});

    Matrix swap(4);
    swap.at(0, 0) = swap.at(1, 2) = swap.at(2, 1) = swap.at(3, 3) = 1.0;
    g.push_back({"SWAP", 2, "SWAP", swap});

    Matrix toffoli = Matrix::identity(8);
    toffoli.at(6, 6) = toffoli.at(7, 7) = 0.0;
    toffoli.at(6, 7) = toffoli.at(7, 6) = 1.0;
    g.push_back({"Toffoli", 3, "Toffoli", toffoli});

    return g;
}

const std::unordered_map<std::string, size_t>& index() {
    static const std::unordered_map<std::string, size_t> idx = [] {
        std::unordered_map<std::string, size_t> m;
        const auto& table = gate_table();
        for (size_t i = 0; i < table.size(); ++i)
            m.emplace(table[i].name, i);
        m.emplace("X", m.at("Not"));
        m.emplace("CCNOT", m.at("Toffoli"));
        return m;
    }();
    return idx;
}

} // namespace

const std::vector<GateDef>& gate_table() {
    static const std::vector<GateDef> table = build_table();
    return table;
}

const GateDef* find_gate(std::string_view name) {
    const auto& idx = index();
    auto it = idx.find(std::string(name));
    if (it == idx.end())
        return nullptr;
    return &gate_table()[it->second];
}

std::optional<std::string> gate_adjoint(std::string_view name) {
    const GateDef* g = find_gate(name);
    if (!g)
        return std::nullopt;
    return g->adjoint;
}

} // namespace iqu
