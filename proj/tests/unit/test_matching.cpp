#include "doctest.h"

#include "generators.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "rho/matching.hpp"

using namespace rho;
using namespace rho::testing;

namespace {
// The brute-force oracle keeps trivial x/x bindings.
Subst strip_identity(Subst s) {
    for (auto it = s.begin(); it != s.end();)
        it = (it->second.is_var() && it->second.name() == it->first) ? s.erase(it) : std::next(it);
    return s;
}
}  // namespace

TEST_CASE("syntactic matching") {
    auto m = match_syntactic(T("f(x, g(k(x, y)))"), T("f(a, g(k(a, b)))"));
    REQUIRE(m.ok);
    CHECK(m.subst == Subst{{"x", T("a")}, {"y", T("b")}});

    m = match_syntactic(T("f(x, x)"), T("f(a, b)"));
    CHECK_FALSE(m.ok);
    CHECK(m.reason == Clash::MergingClash);

    m = match_syntactic(T("x"), T("x"));
    REQUIRE(m.ok);
    CHECK(m.subst.empty());

    CHECK(match_syntactic(T("a"), T("b")).reason == Clash::SymbolClash);
    CHECK(match_syntactic(T("g(a)"), T("g(x)")).reason == Clash::SymbolVariableClash);
    // non-symbol subjects under a symbol pattern
    CHECK(match_syntactic(T("a"), T("{a}")).reason == Clash::SymbolClash);
    CHECK(match_syntactic(T("a"), T("[a -> a](a)")).reason == Clash::SymbolClash);
    CHECK(match_syntactic(T("g(x)"), T("g({a, b})")).ok);
}

TEST_CASE("malformed patterns are rejected") {
    try {
        match_syntactic(T("[x](a)"), T("a"));
        FAIL("expected malformed-pattern");
    } catch (const Error& e) {
        CHECK(e.code() == "malformed-pattern");
    }
}

TEST_CASE("solution sets") {
    CHECK(solution(T("a"), T("b")).empty());
    auto s = solution(T("x"), T("g(a)"));
    REQUIRE(s.size() == 1);
    CHECK(s[0] == Subst{{"x", T("g(a)")}});

    Term subject = T("g([a -> b](a))");
    s = solution(T("g(x)"), subject);
    REQUIRE(s.size() == 1);
    CHECK(s[0].at("x") == T("[a -> b](a)"));
    CHECK(apply_subst(s[0], T("g(x)")) == subject);

    CHECK(solution(T("a"), T("a")).size() == 1);
    CHECK(subsumes(T("f(x, y)"), T("f(a, g(b))")));
    CHECK_FALSE(subsumes(T("f(x, x)"), T("f(a, g(b))")));
}

TEST_CASE("property: soundness and oracle agreement") {
    Rng rng(31);
    Signature sig = fo_signature();
    for (int i = 0; i < 2000; ++i) {
        auto [l, t] = random_match_pair(rng, sig, 4);
        auto m = match_syntactic(l, t);
        auto o = brute_force_match(l, t);
        CHECK(m.ok == o.has_value());
        if (m.ok) {
            CHECK(apply_subst(m.subst, l) == t);
            CHECK(m.subst == strip_identity(*o));
        }
    }
}

TEST_CASE("property: outcome does not depend on decomposition order") {
    Rng rng(32);
    Signature sig = fo_signature();
    for (int i = 0; i < 1000; ++i) {
        auto [l, t] = random_match_pair(rng, sig, 4);
        auto base = match_syntactic(l, t);
        for (std::uint64_t seed : {1u, 7u, 99u}) {
            MatchOptions opt;
            opt.shuffle_seed = seed + i;
            auto m = match_syntactic(l, t, opt);
            CHECK(m.ok == base.ok);
            if (m.ok) CHECK(m.subst == base.subst);
        }
    }
}
