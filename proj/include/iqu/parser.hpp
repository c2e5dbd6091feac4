#pragma once

// Concrete syntax. Precedence, loosest to tightest:
//   ;  (right)  <  :=  <|  (non-assoc)  <  ::  (left)  <  ||  (left)
//   <  application (left)  <  unary (read reverse csize rsize meas^N succ pred)
//   <  atoms.
// Binder bodies (fun ... . M, cnew/qnew ... in M) extend as far to the right
// as possible. while-do bodies and if-then-else branches stop at ';', so the
// mixfix forms sequence like statements. The pretty printer parenthesizes all
// of these forms wherever they are operands.

#include <string>
#include <string_view>
#include <vector>

#include "iqu/syntax.hpp"

namespace iqu {

enum class TokKind {
    // keywords
    KwSkip, KwWhile, KwDo, KwIf, KwThen, KwElse, KwRead, KwCnew, KwQnew,
    KwIn, KwMeas, KwReverse, KwCsize, KwRsize, KwFix, KwFun,
    // symbols
    Semi, Assign, TriLeft, ColonColon, ParPar, Caret, LParen, RParen, Dot,
    Colon, Arrow,
    // payloads
    Ident, NatLit,
    End,
};

struct Token {
    TokKind kind;
    std::string lexeme;
    uint64_t nat = 0; // NatLit
    SourcePos pos{};

    enum class Category { Keyword, Identifier, NaturalLiteral, Symbol, End };
    Category category() const;
};

std::vector<Token> tokenize(std::string_view source);

TermPtr parse_tokens(const std::vector<Token>& tokens);

// tokenize + parse + require end of input.
TermPtr parse_program(std::string_view source);

// Single-line pretty printer; parse_program(pretty(t)) == t for every term
// the surface grammar can express.
std::string pretty(const Term& t);
std::string pretty(const TermPtr& t);

} // namespace iqu
