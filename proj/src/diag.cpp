#include "iqu/diag.hpp"

#include <sstream>

namespace iqu {

std::string ParseError::render(const SourcePos& pos, const std::vector<std::string>& expected,
                               const std::string& found) {
    std::ostringstream out;
    if (pos.known())
        out << pos.line << ":" << pos.col << ": ";
    out << "parse error: expected ";
    if (expected.empty()) {
        out << "<nothing>";
    } else {
        for (size_t i = 0; i < expected.size(); ++i) {
            if (i)
                out << (i + 1 == expected.size() ? " or " : ", ");
            out << expected[i];
        }
    }
    out << ", found " << found;
    return out.str();
}

std::string TypeError::render(const std::string& rule, const SourcePos& pos,
                              const std::string& expected, const std::string& actual,
                              const std::string& subterm) {
    std::ostringstream out;
    if (pos.known())
        out << pos.line << ":" << pos.col << ": ";
    out << "rule " << rule << ": expected " << expected << ", found " << actual;
    if (!subterm.empty())
        out << " in " << subterm;
    return out.str();
}

const char* RuntimeError::kind_name(Kind k) {
    switch (k) {
        case Kind::IllFormedCircuit: return "IllFormedCircuit";
        case Kind::DanglingLocation: return "DanglingLocation";
        case Kind::FuelExhausted: return "FuelExhausted";
        case Kind::Overflow: return "Overflow";
        case Kind::PredOfZeroStrict: return "PredOfZeroStrict";
        case Kind::Capacity: return "Capacity";
    }
    return "?";
}

std::string RuntimeError::render(Kind kind, const std::string& detail) {
    std::string out = "runtime error (";
    out += kind_name(kind);
    out += ")";
    if (!detail.empty()) {
        out += ": ";
        out += detail;
    }
    return out;
}

} // namespace iqu
