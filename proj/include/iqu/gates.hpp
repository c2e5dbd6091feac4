#pragma once

// The compiled-in gate table: a small universal set (Clifford+T plus the
// gates the corpus uses). Every entry records its adjoint partner; the
// adjoint map is an arity-preserving involution.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iqu/matrix.hpp"

namespace iqu {

struct GateDef {
    std::string name;    // canonical name
    unsigned arity;      // wire count, >= 1
    std::string adjoint; // canonical name of the adjoint gate
    Matrix unitary;      // 2^arity x 2^arity
};

// Table in dump order. Stable across runs.
const std::vector<GateDef>& gate_table();

// Canonical lookup; accepts the aliases X (Not) and CCNOT (Toffoli).
// Returns nullptr for unknown names.
const GateDef* find_gate(std::string_view name);

// Canonical adjoint name; empty optional for unknown gates.
std::optional<std::string> gate_adjoint(std::string_view name);

} // namespace iqu
