#pragma once

// Syntax-directed inference for every Table 1 rule. Bases map names to
// types; extension shadows, matching the "w.l.o.g. x not in dom(B)"
// convention. Inference is deterministic: each term form matches exactly
// one rule.

#include <optional>
#include <string>
#include <vector>

#include "iqu/diag.hpp"
#include "iqu/syntax.hpp"

namespace iqu {

class Base {
  public:
    Base() = default;
    Base(std::initializer_list<std::pair<std::string, TypePtr>> entries);

    // Later bindings shadow earlier ones.
    void bind(std::string name, TypePtr type);
    const TypePtr* lookup(const std::string& name) const;

    const std::vector<std::pair<std::string, TypePtr>>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

  private:
    std::vector<std::pair<std::string, TypePtr>> entries_;
};

// The unique type derivable for t under base; throws TypeError naming the
// first rule that fails.
TypePtr infer(const Base& base, const TermPtr& t);

// Program check: infer must give a ground type and every base entry must be
// a store variable (cVar or qVar). Returns the program type.
TypePtr check_program(const TermPtr& t, const Base& base = {});

} // namespace iqu
