#include "rho/combinators.hpp"

#include <array>
#include <utility>

namespace rho {

namespace {

constexpr std::array<std::pair<Combinator, const char*>, 19> kNames{{
    {Combinator::Id, "id"},
    {Combinator::Fail, "fail"},
    {Combinator::Seq, "seq"},
    {Combinator::Try, "try"},
    {Combinator::First, "first"},
    {Combinator::Dc, "dc"},
    {Combinator::Phi, "phi"},
    {Combinator::Psi, "psi"},
    {Combinator::Theta, "theta"},
    {Combinator::SD, "sd"},
    {Combinator::SDS, "sds"},
    {Combinator::BottomUp, "bottomup"},
    {Combinator::TopDown, "topdown"},
    {Combinator::OnceBu, "oncebu"},
    {Combinator::OnceTd, "oncetd"},
    {Combinator::RepeatStar, "repeat*"},
    {Combinator::Im, "im"},
    {Combinator::Om, "om"},
    {Combinator::IMrec, "IM"},
}};

Term var(NameSupply& names, std::set<std::string>& avoid) {
    std::string n = names.fresh(avoid);
    avoid.insert(n);
    return Term::var(n);
}

std::set<std::string> vars_of(std::initializer_list<const Term*> ts) {
    std::set<std::string> out;
    for (const Term* t : ts) {
        auto v = all_vars(*t);
        out.insert(v.begin(), v.end());
    }
    return out;
}

}  // namespace

const char* combinator_name(Combinator c) {
    for (const auto& [k, n] : kNames)
        if (k == c) return n;
    return "?";
}

std::optional<Combinator> parse_combinator(std::string_view keyword) {
    for (const auto& [k, n] : kNames)
        if (keyword == n) return k;
    return std::nullopt;
}

NameSupply& builder_names() {
    thread_local NameSupply supply;
    return supply;
}

Term make_id(NameSupply& names) {
    std::set<std::string> avoid;
    Term x = var(names, avoid);
    return Term::rule(x, x);
}

Term make_fail(NameSupply& names) {
    std::set<std::string> avoid;
    return Term::rule(var(names, avoid), Term::empty());
}

Term make_seq(const Term& u, const Term& v, NameSupply& names) {
    auto avoid = vars_of({&u, &v});
    Term x = var(names, avoid);
    return Term::rule(x, Term::app(v, Term::app(u, x)));
}

Term make_try(const Term& s, NameSupply& names) { return Term::first({s, make_id(names)}); }

Term make_traverse(Combinator kind, const Term& r, const Signature& sig, bool expand, NameSupply& names) {
    if (kind != Combinator::Phi && kind != Combinator::Psi)
        throw Error("invalid-combinator", "traversal must be phi or psi");
    if (!expand) return kind == Combinator::Phi ? Term::phi(r) : Term::psi(r);
    if (sig.symbols().empty()) throw Error("empty-signature", "no symbols to expand the traversal over");
    Terms alts;
    for (const auto& [f, n] : sig.symbols()) {
        if (kind == Combinator::Psi) {
            alts.push_back(Term::fun(f, Terms(static_cast<std::size_t>(n), r)));
            continue;
        }
        for (int i = 0; i < n; ++i) {
            Terms args;
            for (int j = 0; j < n; ++j) args.push_back(i == j ? r : make_id(names));
            alts.push_back(Term::fun(f, std::move(args)));
        }
    }
    if (kind == Combinator::Psi) return Term::set(std::move(alts));
    if (alts.empty()) return make_fail(names);
    return Term::first(std::move(alts));
}

Term make_fixpoint(NameSupply& names) {
    std::set<std::string> avoid;
    Term x = var(names, avoid);
    Term y = var(names, avoid);
    // x -> (y -> [y]([[x](x)](y)))
    Term a = Term::rule(x, Term::rule(y, Term::app(y, Term::app(Term::app(x, x), y))));
    return Term::app(a, a);
}

Term make_body(Combinator kind, const Term& r, NameSupply& names) {
    auto avoid = vars_of({&r});
    Term f = var(names, avoid);
    Term x = var(names, avoid);
    auto lam = [&](Term body) { return Term::rule(f, Term::rule(x, body)); };
    switch (kind) {
        case Combinator::SD:
            return lam(Term::choice({Term::app(make_seq(Term::psi(f), r, names), x)}));
        case Combinator::SDS:
            return lam(Term::app(make_seq(Term::psi(f), r, names), x));
        case Combinator::BottomUp:
            return lam(Term::app(
                make_seq(Term::first({Term::psi(f), make_id(names)}), Term::first({r, make_id(names)}), names), x));
        case Combinator::TopDown:
            return lam(Term::choice({Term::app(
                make_seq(Term::first({r, make_id(names)}), Term::first({Term::psi(f), make_id(names)}), names), x)}));
        case Combinator::OnceBu:
            return lam(Term::app(Term::first({Term::phi(f), r}), x));
        case Combinator::OnceTd:
            return lam(Term::app(Term::first({r, Term::phi(f)}), x));
        case Combinator::RepeatStar:
            return lam(Term::app(Term::first({make_seq(r, f, names), make_id(names)}), x));
        default:
            throw Error("invalid-combinator", std::string("not a recursive combinator: ") + combinator_name(kind));
    }
}

Term make_recursor(Combinator kind, const Term& r, NameSupply& names) {
    Term body = make_body(kind, r, names);
    return Term::app(make_fixpoint(names), body);
}

Term make_normalizer(Combinator kind, const Term& rules, NameSupply& names) {
    auto check = [](const Term& t) {
        if (!t.is(Kind::Rule)) throw Error("non-rule-element", "not a rewrite rule: " + print(t));
    };
    if (rules.is(Kind::Set)) {
        for (const auto& k : rules.kids()) check(k);
    } else {
        check(rules);
    }
    Combinator once;
    switch (kind) {
        case Combinator::Im: once = Combinator::OnceBu; break;
        case Combinator::Om: once = Combinator::OnceTd; break;
        default: throw Error("invalid-combinator", "normalizer must be im or om");
    }
    return make_recursor(Combinator::RepeatStar, make_recursor(once, rules, names), names);
}

}  // namespace rho
