#include "doctest.h"

#include "generators.hpp"
#include "helpers.hpp"
#include "rho/gates.hpp"

using namespace rho;
using namespace rho::testing;

namespace {
Signature gate_sig() {
    Signature s = unit_sig();
    s.declare("m", 3);
    return s;
}
Term G(const std::string& text) {
    Signature s = gate_sig();
    return parse_term(text, s);
}
}  // namespace

TEST_CASE("weak subsumption") {
    CHECK(weakly_subsumes(G("m(a, y, c)"), G("k(b, [x -> x](c))")));
    CHECK_FALSE(weakly_subsumes(G("g(a)"), G("h([x -> x](c))")));
    CHECK(weakly_subsumes(G("x"), G("{a, [a -> b](c)}")));
    CHECK_FALSE(weakly_subsumes(G("g(a)"), G("g(y)")));
}

TEST_CASE("prefilterable") {
    CHECK(is_prefilterable(G("a"), G("a")));
    CHECK_FALSE(is_prefilterable(G("f(x, x)"), G("f(a, [a -> a](a))")));
    CHECK(is_prefilterable(G("x"), G("{a}")));
    CHECK(is_prefilterable(G("f(x, x)"), G("f(a, b)")));  // ground first-order subject
    CHECK_THROWS_AS(is_prefilterable(G("[x](a)"), G("a")), Error);
}

TEST_CASE("safety and calculability") {
    CHECK_FALSE(is_safe(Term::empty()));
    CHECK_FALSE(is_safe(G("[a](b)")));
    CHECK(is_safe(G("[x -> x](a)")));
    CHECK_FALSE(is_safe(G("[g(x) -> x](a)")));  // lhs does not subsume the argument
    CHECK_FALSE(is_safe(G("{a, b}")));
    CHECK(is_safe(G("{a}")));

    CHECK(is_calculable(G("a"), G("a")));
    CHECK_FALSE(is_calculable(G("x"), Term::empty()));
    CHECK(is_calculable(G("g(x)"), G("g([x -> x](a))")));
}

TEST_CASE("rule classes") {
    CHECK(is_quasi_regular(G("x -> f(x, y)")));
    CHECK_FALSE(is_quasi_regular(G("x -> {x, y}")));
    CHECK(is_quasi_regular(G("x -> {}")));
    CHECK_FALSE(is_quasi_regular(G("x -> y -> x")));  // the nested rule drops y

    CHECK(is_strictly_right_linear(G("x -> f(z, z)")));
    CHECK_FALSE(is_strictly_right_linear(G("x -> f(x, x)")));
    CHECK(is_strictly_right_linear(G("x -> {g(x), g(x)}")));

    CHECK(is_stable(G("x -> {x, y}")));
    Term set_lhs = Term::rule(G("{f(x, y), g(x)}"), G("x"));
    CHECK(is_stable(set_lhs));
    // FV(rhs) n FV(lhs) = {x}, FV(rhs) n PV(lhs) = {}
    Term unstable = Term::rule(G("{g(x), h(y)}"), G("x"));
    CHECK_FALSE(is_stable(unstable));
}

TEST_CASE("fire gates") {
    CHECK(fire_allowed(Gate::ConfStrat, G("a"), G("b"), G("a")));
    CHECK_FALSE(fire_allowed(Gate::ConfStrat, G("x"), G("b"), Term::empty()));
    CHECK(fire_allowed(Gate::None, G("x"), G("b"), Term::empty()));
    // without a gate the empty argument can be consumed by Fire
    auto g = reduction_graph(G("[x -> b]({})"), Gate::None, 100, 8);
    std::set<std::string> nfs;
    for (auto i : g.normal_forms()) nfs.insert(print(g.nodes[i]));
    CHECK(nfs == std::set<std::string>{"{}", "{b}"});
    CHECK(fire_allowed(Gate::ConfStratLin, G("x"), G("x"), Term::empty()));
    CHECK_FALSE(fire_allowed(Gate::ConfStratLin, G("x"), G("b"), Term::empty()));
    CHECK_FALSE(fire_allowed(Gate::ConfStratLin, G("x"), G("f(x, x)"), G("{a, b}")));
    CHECK(fire_allowed(Gate::ConfStratLin, G("x"), G("g(x)"), G("{a, b}")));

    CHECK(fire_allowed(Gate::Strict, G("x"), G("x -> x"), G("f(a, b)")));
    CHECK_FALSE(fire_allowed(Gate::Strict, G("x"), G("x"), G("g(y)")));
    CHECK_FALSE(fire_allowed(Gate::FirstOrder, G("x"), G("x -> x"), G("a")));
    CHECK(fire_allowed(Gate::FirstOrder, G("g(x)"), G("f(x, x)"), G("g(a)")));
    Term unstable = Term::rule(G("{g(z), h(w)}"), G("z"));
    CHECK_FALSE(fire_allowed(Gate::ConfStratStable, G("x"), unstable, G("a")));
    CHECK(fire_allowed(Gate::ConfStratStable, G("x"), G("y -> {y, z}"), G("a")));
}

TEST_CASE("gate names") {
    for (Gate g : {Gate::None, Gate::Strict, Gate::ConfStrat, Gate::ConfStratLin, Gate::ConfStratStable,
                   Gate::FirstOrder, Gate::Prefilter})
        CHECK(parse_gate(gate_name(g)) == g);
    CHECK_FALSE(parse_gate("bogus").has_value());
}

TEST_CASE("property: gates are monotone") {
    Rng rng(41);
    Signature sig = fo_signature();
    int fo = 0, cs = 0, lin = 0;
    for (int i = 0; i < 3000; ++i) {
        auto [l, t] = random_match_pair(rng, sig, 3);
        Term r = coin(rng, 0.5) ? random_fo_term(rng, sig, {"x", "y", "z"}, 2) : random_core_term(rng, sig, 5);
        bool a = fire_allowed(Gate::FirstOrder, l, r, t);
        bool b = fire_allowed(Gate::ConfStrat, l, r, t);
        bool c = fire_allowed(Gate::ConfStratLin, l, r, t);
        if (a) CHECK(b);
        if (b) CHECK(c);
        fo += a;
        cs += b;
        lin += c;
    }
    CHECK(fo > 0);
    CHECK(cs > fo);
    CHECK(lin >= cs);
}
