#include "iqu/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "iqu/gates.hpp"

namespace iqu {

// ---------------------------------------------------------------------------
// Lexer

namespace {

const std::map<std::string, TokKind, std::less<>>& keywords() {
    static const std::map<std::string, TokKind, std::less<>> kw = {
        {"skip", TokKind::KwSkip},     {"while", TokKind::KwWhile},
        {"do", TokKind::KwDo},         {"if", TokKind::KwIf},
        {"then", TokKind::KwThen},     {"else", TokKind::KwElse},
        {"read", TokKind::KwRead},     {"cnew", TokKind::KwCnew},
        {"qnew", TokKind::KwQnew},     {"in", TokKind::KwIn},
        {"meas", TokKind::KwMeas},     {"reverse", TokKind::KwReverse},
        {"csize", TokKind::KwCsize},   {"rsize", TokKind::KwRsize},
        {"fix", TokKind::KwFix},       {"fun", TokKind::KwFun},
    };
    return kw;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_cont(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

} // namespace

Token::Category Token::category() const {
    switch (kind) {
        case TokKind::Ident: return Category::Identifier;
        case TokKind::NatLit: return Category::NaturalLiteral;
        case TokKind::End: return Category::End;
        case TokKind::Semi:
        case TokKind::Assign:
        case TokKind::TriLeft:
        case TokKind::ColonColon:
        case TokKind::ParPar:
        case TokKind::Caret:
        case TokKind::LParen:
        case TokKind::RParen:
        case TokKind::Dot:
        case TokKind::Colon:
        case TokKind::Arrow: return Category::Symbol;
        default: return Category::Keyword;
    }
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    uint32_t line = 1, col = 1;
    size_t i = 0;

    auto pos_here = [&]() { return SourcePos{line, col, uint32_t(i)}; };
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto push = [&](TokKind kind, SourcePos pos, std::string lexeme, uint64_t nat = 0) {
        out.push_back(Token{kind, std::move(lexeme), nat, pos});
    };
    auto fail = [&](const std::string& found) -> void {
        throw ParseError(pos_here(), {"token"}, found);
    };

    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '-') {
            if (i + 1 < src.size() && src[i + 1] == '-') {
                while (i < src.size() && src[i] != '\n')
                    advance(1);
                continue;
            }
            if (i + 1 < src.size() && src[i + 1] == '>') {
                push(TokKind::Arrow, pos_here(), "->");
                advance(2);
                continue;
            }
            fail("'-'");
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            SourcePos pos = pos_here();
            uint64_t value = 0;
            std::string lexeme;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                uint64_t digit = uint64_t(src[i] - '0');
                if (value > (UINT64_MAX - digit) / 10)
                    throw ParseError(pos, {"natural literal within 64 bits"}, "larger literal");
                value = value * 10 + digit;
                lexeme += src[i];
                advance(1);
            }
            push(TokKind::NatLit, pos, std::move(lexeme), value);
            continue;
        }
        if (ident_start(c)) {
            SourcePos pos = pos_here();
            std::string lexeme;
            while (i < src.size() && ident_cont(src[i])) {
                lexeme += src[i];
                advance(1);
            }
            auto kw = keywords().find(lexeme);
            if (kw != keywords().end())
                push(kw->second, pos, std::move(lexeme));
            else
                push(TokKind::Ident, pos, std::move(lexeme));
            continue;
        }
        SourcePos pos = pos_here();
        auto two = [&](char second) { return i + 1 < src.size() && src[i + 1] == second; };
        switch (c) {
            case ';': push(TokKind::Semi, pos, ";"); advance(1); continue;
            case '^': push(TokKind::Caret, pos, "^"); advance(1); continue;
            case '(': push(TokKind::LParen, pos, "("); advance(1); continue;
            case ')': push(TokKind::RParen, pos, ")"); advance(1); continue;
            case '.': push(TokKind::Dot, pos, "."); advance(1); continue;
            case ':':
                if (two('=')) {
                    push(TokKind::Assign, pos, ":=");
                    advance(2);
                } else if (two(':')) {
                    push(TokKind::ColonColon, pos, "::");
                    advance(2);
                } else {
                    push(TokKind::Colon, pos, ":");
                    advance(1);
                }
                continue;
            case '|':
                if (two('|')) {
                    push(TokKind::ParPar, pos, "||");
                    advance(2);
                    continue;
                }
                fail("'|'");
                break;
            case '<':
                if (two('|')) {
                    push(TokKind::TriLeft, pos, "<|");
                    advance(2);
                    continue;
                }
                fail("'<'");
                break;
            default:
                fail(std::string("'") + c + "'");
        }
    }
    out.push_back(Token{TokKind::End, "<end of input>", 0, pos_here()});
    return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
  public:
    explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

    TermPtr parse() {
        TermPtr t = term();
        expect(TokKind::End, "end of input");
        return t;
    }

  private:
    const std::vector<Token>& toks_;
    size_t cur_ = 0;

    const Token& peek(size_t ahead = 0) const {
        size_t idx = cur_ + ahead;
        if (idx >= toks_.size())
            idx = toks_.size() - 1;
        return toks_[idx];
    }
    const Token& advance() {
        const Token& t = toks_[cur_];
        if (cur_ + 1 < toks_.size())
            ++cur_;
        return t;
    }
    bool check(TokKind k) const { return peek().kind == k; }
    bool match(TokKind k) {
        if (!check(k))
            return false;
        ++cur_;
        return true;
    }
    const Token& expect(TokKind k, const std::string& what) {
        if (!check(k))
            throw ParseError(peek().pos, {what}, describe(peek()));
        const Token& t = peek();
        ++cur_;
        return t;
    }
    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw ParseError(peek().pos, std::move(expected), describe(peek()));
    }

    static std::string describe(const Token& t) {
        if (t.kind == TokKind::End)
            return "end of input";
        return "'" + t.lexeme + "'";
    }

    bool starts_expr(const Token& t) const {
        switch (t.kind) {
            case TokKind::NatLit:
            case TokKind::Ident:
            case TokKind::LParen:
            case TokKind::KwSkip:
            case TokKind::KwIf:
            case TokKind::KwWhile:
            case TokKind::KwFun:
            case TokKind::KwFix:
            case TokKind::KwCnew:
            case TokKind::KwQnew:
            case TokKind::KwRead:
            case TokKind::KwReverse:
            case TokKind::KwCsize:
            case TokKind::KwRsize:
            case TokKind::KwMeas:
                return true;
            default:
                return false;
        }
    }

    // term := assign (';' term)?     (right-assoc)
    TermPtr term() {
        TermPtr first = assign_level();
        if (check(TokKind::Semi)) {
            SourcePos pos = peek().pos;
            advance();
            return mk_seq(first, term(), pos);
        }
        return first;
    }

    // assign := seqcomp ((':=' | '<|') seqcomp)?
    TermPtr assign_level() {
        TermPtr lhs = seqcomp_level();
        if (check(TokKind::Assign)) {
            SourcePos pos = peek().pos;
            advance();
            return mk_assign(lhs, seqcomp_level(), pos);
        }
        if (check(TokKind::TriLeft)) {
            SourcePos pos = peek().pos;
            advance();
            return mk_qapply(lhs, seqcomp_level(), pos);
        }
        return lhs;
    }

    TermPtr seqcomp_level() {
        TermPtr t = parcomp_level();
        while (check(TokKind::ColonColon)) {
            SourcePos pos = peek().pos;
            advance();
            t = mk_seqcomp(t, parcomp_level(), pos);
        }
        return t;
    }

    TermPtr parcomp_level() {
        TermPtr t = app_level();
        while (check(TokKind::ParPar)) {
            SourcePos pos = peek().pos;
            advance();
            t = mk_parcomp(t, app_level(), pos);
        }
        return t;
    }

    TermPtr app_level() {
        TermPtr t = unary_level();
        while (starts_expr(peek()))
            t = mk_app(t, unary_level(), t->pos);
        return t;
    }

    TermPtr unary_level() {
        SourcePos pos = peek().pos;
        switch (peek().kind) {
            case TokKind::KwRead:
                advance();
                return mk_read(unary_level(), pos);
            case TokKind::KwReverse:
                advance();
                return mk_reverse(unary_level(), pos);
            case TokKind::KwCsize:
                advance();
                return mk_csize(unary_level(), pos);
            case TokKind::KwRsize:
                advance();
                return mk_rsize(unary_level(), pos);
            case TokKind::KwMeas: {
                advance();
                expect(TokKind::Caret, "'^'");
                TermPtr count = meas_count();
                return mk_meas(count, unary_level(), pos);
            }
            case TokKind::Ident:
                // succ/pred are prefix operators with an optional operand, so
                // the bare constants stay expressible, e.g. `(succ)` or `f succ`.
                if (peek().lexeme == "succ" || peek().lexeme == "pred") {
                    bool is_succ = peek().lexeme == "succ";
                    advance();
                    TermPtr op = is_succ ? mk_succ(pos) : mk_pred(pos);
                    if (starts_expr(peek()))
                        return mk_app(op, unary_level(), pos);
                    return op;
                }
                return atom();
            default:
                return atom();
        }
    }

    // the count after meas^: a natural literal or a parenthesized term
    TermPtr meas_count() {
        if (check(TokKind::NatLit)) {
            const Token& t = advance();
            return mk_num(t.nat, t.pos);
        }
        if (check(TokKind::LParen)) {
            advance();
            TermPtr t = term();
            expect(TokKind::RParen, "')'");
            return t;
        }
        fail({"natural literal", "'('"});
    }

    TermPtr atom() {
        SourcePos pos = peek().pos;
        switch (peek().kind) {
            case TokKind::NatLit: {
                const Token& t = advance();
                return mk_num(t.nat, t.pos);
            }
            case TokKind::KwSkip:
                advance();
                return mk_skip(pos);
            case TokKind::LParen: {
                advance();
                TermPtr t = term();
                expect(TokKind::RParen, "')'");
                return t;
            }
            case TokKind::KwIf: {
                // branches stop at ';' so a conditional sequences like a
                // statement: if g then a else b; c  ==  (if g then a else b); c
                advance();
                TermPtr guard = term();
                expect(TokKind::KwThen, "'then'");
                TermPtr then_branch = assign_level();
                expect(TokKind::KwElse, "'else'");
                TermPtr else_branch = assign_level();
                return mk_ite(guard, then_branch, else_branch, pos);
            }
            case TokKind::KwWhile: {
                // the body stops at ';' as well
                advance();
                TermPtr guard = term();
                expect(TokKind::KwDo, "'do'");
                return mk_while(guard, assign_level(), pos);
            }
            case TokKind::KwFun: {
                advance();
                std::string name = expect(TokKind::Ident, "parameter name").lexeme;
                expect(TokKind::Colon, "':'");
                TypePtr ty = type();
                expect(TokKind::Dot, "'.'");
                return mk_abs(std::move(name), ty, term(), pos);
            }
            case TokKind::KwFix: {
                advance();
                expect(TokKind::Colon, "':' (fix requires a type annotation)");
                return mk_fix(type(), pos);
            }
            case TokKind::KwCnew:
            case TokKind::KwQnew: {
                bool classical = peek().kind == TokKind::KwCnew;
                advance();
                std::string name = expect(TokKind::Ident, "variable name").lexeme;
                expect(TokKind::Assign, "':='");
                TermPtr init = term();
                expect(TokKind::KwIn, "'in'");
                TermPtr body = term();
                return classical ? mk_cnew(std::move(name), init, body, pos)
                                 : mk_qnew(std::move(name), init, body, pos);
            }
            case TokKind::Ident: {
                const Token& t = advance();
                if (check(TokKind::Caret)) {
                    advance();
                    const Token& arity = expect(TokKind::NatLit, "gate arity");
                    const GateDef* g = find_gate(t.lexeme);
                    if (!g)
                        throw ParseError(t.pos, {"known gate name"}, "'" + t.lexeme + "'");
                    if (g->arity != arity.nat)
                        throw ParseError(arity.pos,
                                         {"arity " + std::to_string(g->arity) + " for gate " +
                                          g->name},
                                         "'" + arity.lexeme + "'");
                    return mk_gate(g->name, g->arity, t.pos);
                }
                return mk_var(t.lexeme, t.pos);
            }
            default:
                fail({"expression"});
        }
    }

    // type := tatom ('->' type)?
    TypePtr type() {
        TypePtr dom = type_atom();
        if (match(TokKind::Arrow))
            return Type::arrow(dom, type());
        return dom;
    }

    TypePtr type_atom() {
        if (check(TokKind::LParen)) {
            advance();
            TypePtr t = type();
            expect(TokKind::RParen, "')'");
            return t;
        }
        const Token& t = expect(TokKind::Ident, "type (Nat, cVar, qVar, cmd, circ)");
        if (t.lexeme == "Nat")
            return Type::nat();
        if (t.lexeme == "cVar")
            return Type::cvar();
        if (t.lexeme == "qVar")
            return Type::qvar();
        if (t.lexeme == "cmd")
            return Type::cmd();
        if (t.lexeme == "circ")
            return Type::circ();
        throw ParseError(t.pos, {"type (Nat, cVar, qVar, cmd, circ)"}, "'" + t.lexeme + "'");
    }
};

} // namespace

TermPtr parse_tokens(const std::vector<Token>& tokens) { return Parser(tokens).parse(); }

TermPtr parse_program(std::string_view source) { return parse_tokens(tokenize(source)); }

// ---------------------------------------------------------------------------
// Pretty printer. Levels match the parser: 0 seq, 1 assign/<|, 2 ::, 3 ||,
// 4 application, 5 unary, 6 atom. Open-ended forms (if, while, fun, cnew,
// qnew) always print parenthesized so bodies cannot swallow a following
// operator when re-parsed.

namespace {

struct IfSpine {
    TermPtr guard, then_branch, else_branch;
};

bool match_if_spine(const Term& t, IfSpine& out) {
    if (t.kind != TermKind::App || !t.a || t.a->kind != TermKind::App)
        return false;
    const Term& inner = *t.a;
    if (!inner.a || inner.a->kind != TermKind::App)
        return false;
    const Term& innermost = *inner.a;
    if (!innermost.a || innermost.a->kind != TermKind::If)
        return false;
    out.guard = innermost.b;
    out.then_branch = inner.b;
    out.else_branch = t.b;
    return true;
}

void print_term(std::ostream& out, const Term& t, int level);

void print_at(std::ostream& out, const TermPtr& t, int level) { print_term(out, *t, level); }

void print_open_form(std::ostream& out, const Term& t) {
    switch (t.kind) {
        case TermKind::Abs:
            out << "fun " << t.name << ":" << to_string(t.type) << ". ";
            print_at(out, t.a, 0);
            return;
        case TermKind::While:
            out << "while ";
            print_at(out, t.a, 0);
            out << " do ";
            print_at(out, t.b, 0);
            return;
        case TermKind::CNew:
        case TermKind::QNew:
            out << (t.kind == TermKind::CNew ? "cnew " : "qnew ") << t.name << " := ";
            print_at(out, t.a, 0);
            out << " in ";
            print_at(out, t.b, 0);
            return;
        default: {
            IfSpine sp;
            if (match_if_spine(t, sp)) {
                out << "if ";
                print_term(out, *sp.guard, 0);
                out << " then ";
                print_term(out, *sp.then_branch, 0);
                out << " else ";
                print_term(out, *sp.else_branch, 0);
                return;
            }
            break;
        }
    }
}

bool is_open_form(const Term& t) {
    switch (t.kind) {
        case TermKind::Abs:
        case TermKind::While:
        case TermKind::CNew:
        case TermKind::QNew:
            return true;
        default: {
            IfSpine sp;
            return match_if_spine(t, sp);
        }
    }
}

void print_term(std::ostream& out, const Term& t, int level) {
    if (is_open_form(t)) {
        out << "(";
        print_open_form(out, t);
        out << ")";
        return;
    }
    switch (t.kind) {
        case TermKind::Var:
            out << t.name;
            return;
        case TermKind::Num:
            out << t.nat;
            return;
        case TermKind::Pred:
            out << "pred";
            return;
        case TermKind::Succ:
            out << "succ";
            return;
        case TermKind::If:
            out << "if"; // partial conditional: diagnostics only
            return;
        case TermKind::Fix:
            out << "fix:";
            if (t.type && t.type->kind == TypeKind::Arrow)
                out << "(" << to_string(t.type) << ")";
            else
                out << to_string(t.type);
            return;
        case TermKind::Skip:
            out << "skip";
            return;
        case TermKind::Gate:
            out << t.name << "^" << t.nat;
            return;
        case TermKind::Loc:
            out << to_string(t.loc);
            return;
        case TermKind::Seq: {
            bool paren = level > 0;
            if (paren)
                out << "(";
            print_at(out, t.a, 1);
            out << "; ";
            print_at(out, t.b, 0);
            if (paren)
                out << ")";
            return;
        }
        case TermKind::Assign:
        case TermKind::QApply: {
            bool paren = level > 1;
            if (paren)
                out << "(";
            print_at(out, t.a, 2);
            out << (t.kind == TermKind::Assign ? " := " : " <| ");
            print_at(out, t.b, 2);
            if (paren)
                out << ")";
            return;
        }
        case TermKind::SeqComp: {
            bool paren = level > 2;
            if (paren)
                out << "(";
            print_at(out, t.a, 2);
            out << " :: ";
            print_at(out, t.b, 3);
            if (paren)
                out << ")";
            return;
        }
        case TermKind::ParComp: {
            bool paren = level > 3;
            if (paren)
                out << "(";
            print_at(out, t.a, 3);
            out << " || ";
            print_at(out, t.b, 4);
            if (paren)
                out << ")";
            return;
        }
        case TermKind::App: {
            // succ/pred applications read back as unary forms
            if (t.a && (t.a->kind == TermKind::Succ || t.a->kind == TermKind::Pred)) {
                bool paren = level > 5;
                if (paren)
                    out << "(";
                out << (t.a->kind == TermKind::Succ ? "succ " : "pred ");
                print_at(out, t.b, 5);
                if (paren)
                    out << ")";
                return;
            }
            bool paren = level > 4;
            if (paren)
                out << "(";
            print_at(out, t.a, 4);
            out << " ";
            print_at(out, t.b, 5);
            if (paren)
                out << ")";
            return;
        }
        case TermKind::Read:
        case TermKind::Reverse:
        case TermKind::CSize:
        case TermKind::RSize: {
            bool paren = level > 5;
            if (paren)
                out << "(";
            switch (t.kind) {
                case TermKind::Read: out << "read "; break;
                case TermKind::Reverse: out << "reverse "; break;
                case TermKind::CSize: out << "csize "; break;
                default: out << "rsize "; break;
            }
            print_at(out, t.a, 5);
            if (paren)
                out << ")";
            return;
        }
        case TermKind::Meas: {
            bool paren = level > 5;
            if (paren)
                out << "(";
            out << "meas^";
            if (t.a->kind == TermKind::Num)
                out << t.a->nat;
            else {
                out << "(";
                print_at(out, t.a, 0);
                out << ")";
            }
            out << " ";
            print_at(out, t.b, 5);
            if (paren)
                out << ")";
            return;
        }
        default:
            return;
    }
}

} // namespace

std::string pretty(const Term& t) {
    std::ostringstream out;
    print_term(out, t, 0);
    return out.str();
}

std::string pretty(const TermPtr& t) { return pretty(*t); }

} // namespace iqu
