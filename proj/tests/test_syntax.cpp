#include <doctest.h>

#include "gen.hpp"
#include "iqu/syntax.hpp"

using namespace iqu;

TEST_CASE("free_vars under the three binders") {
    // fun x:Nat. x — bound
    CHECK(free_vars(mk_abs("x", Type::nat(), mk_var("x"))).empty());
    // r <| H^1 — one free occurrence
    auto qa = mk_qapply(mk_var("r"), mk_gate("H", 1));
    CHECK(free_vars(qa) == std::set<std::string>{"r"});
    // cnew x := 0 in x := read y — the binder removes x
    auto cn = mk_cnew("x", mk_num(0), mk_assign(mk_var("x"), mk_read(mk_var("y"))));
    CHECK(free_vars(cn) == std::set<std::string>{"y"});
    // the initializer is outside the scope
    auto cn2 = mk_cnew("x", mk_read(mk_var("x")), mk_skip());
    CHECK(free_vars(cn2) == std::set<std::string>{"x"});
}

TEST_CASE("substitute basics") {
    CHECK(term_eq(substitute(mk_var("x"), "x", mk_num(3)), mk_num(3)));

    auto shadowed = mk_abs("x", Type::nat(), mk_var("x"));
    CHECK(term_eq(substitute(shadowed, "x", mk_num(3)), shadowed));

    auto app = mk_app(mk_var("f"), mk_var("x"));
    CHECK(term_eq(substitute(app, "x", mk_skip()), mk_app(mk_var("f"), mk_skip())));
}

TEST_CASE("substitute avoids capture by renaming") {
    // (fun y:Nat. x) [y/x] must not capture the free y
    auto body = mk_abs("y", Type::nat(), mk_var("x"));
    auto out = substitute(body, "x", mk_var("y"));
    REQUIRE(out->kind == TermKind::Abs);
    CHECK(out->name != "y");
    CHECK(term_eq(out->a, mk_var("y")));
    CHECK(free_vars(out) == std::set<std::string>{"y"});
}

TEST_CASE("substitution identity and free-variable algebra") {
    testgen::Rng rng(20260810);
    std::vector<std::string> scope;
    int with_x = 0;
    for (int i = 0; i < 300; ++i) {
        scope.clear();
        TermPtr body = testgen::gen_surface(rng, 4, scope);
        TermPtr repl = testgen::gen_surface(rng, 3, scope);
        auto body_fv = free_vars(body);
        TermPtr out = substitute(body, "x", repl);
        if (!body_fv.count("x")) {
            CHECK(term_eq(out, body));
            continue;
        }
        ++with_x;
        auto expect = body_fv;
        expect.erase("x");
        auto repl_fv = free_vars(repl);
        expect.insert(repl_fv.begin(), repl_fv.end());
        CHECK(free_vars(out) == expect);
    }
    CHECK(with_x > 10); // the generator actually exercised the interesting case
}

TEST_CASE("circuit printing uses :: and || with minimal parens") {
    auto bell = Circuit::seq(Circuit::par(Circuit::gate_ref("H", 1), Circuit::gate_ref("Id", 1)),
                             Circuit::gate_ref("CNOT", 2));
    CHECK(to_string(bell) == "H^1 || Id^1 :: CNOT^2");
    auto nested = Circuit::par(Circuit::gate_ref("H", 1),
                               Circuit::seq(Circuit::gate_ref("T", 1), Circuit::gate_ref("H", 1)));
    CHECK(to_string(nested) == "H^1 || (T^1 :: H^1)");
}

TEST_CASE("value rendering") {
    CHECK(to_string(Value::num(5)) == "5");
    CHECK(to_string(Value::skip()) == "skip");
    CHECK(to_string(Value::location(Location{LocationKind::Quantum, 3})) == "qvar@3");
}
