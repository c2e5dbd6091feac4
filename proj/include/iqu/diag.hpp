#pragma once

// Source positions and the three error families the pipeline can raise.
// Parse, type and runtime failures are exceptions; the CLI maps each family
// to its own exit code.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace iqu {

struct SourcePos {
    uint32_t line = 0;   // 1-based; 0 means "no position"
    uint32_t col = 0;    // 1-based
    uint32_t offset = 0; // byte offset into the source

    bool known() const { return line != 0; }
};

class ParseError : public std::runtime_error {
  public:
    ParseError(SourcePos pos, std::vector<std::string> expected, std::string found)
        : std::runtime_error(render(pos, expected, found)),
          pos(pos),
          expected(std::move(expected)),
          found(std::move(found)) {}

    SourcePos pos;
    std::vector<std::string> expected;
    std::string found;

  private:
    static std::string render(const SourcePos& pos, const std::vector<std::string>& expected,
                              const std::string& found);
};

class TypeError : public std::runtime_error {
  public:
    TypeError(std::string rule, SourcePos pos, std::string expected, std::string actual,
              std::string subterm)
        : std::runtime_error(render(rule, pos, expected, actual, subterm)),
          rule(std::move(rule)),
          pos(pos),
          expected(std::move(expected)),
          actual(std::move(actual)),
          subterm(std::move(subterm)) {}

    std::string rule; // Table 1 label, e.g. "(tA)"
    SourcePos pos;
    std::string expected;
    std::string actual;
    std::string subterm;

  private:
    static std::string render(const std::string& rule, const SourcePos& pos,
                              const std::string& expected, const std::string& actual,
                              const std::string& subterm);
};

class RuntimeError : public std::runtime_error {
  public:
    enum class Kind {
        IllFormedCircuit,
        DanglingLocation,
        FuelExhausted,
        Overflow,
        PredOfZeroStrict,
        Capacity,
    };

    RuntimeError(Kind kind, std::string detail)
        : std::runtime_error(render(kind, detail)), kind(kind), detail(std::move(detail)) {}

    Kind kind;
    std::string detail;

    static const char* kind_name(Kind k);

  private:
    static std::string render(Kind kind, const std::string& detail);
};

} // namespace iqu
