#pragma once

#include <optional>
#include <string_view>

#include "rho/substitution.hpp"
#include "rho/term.hpp"

namespace rho {

enum class Combinator {
    Id,
    Fail,
    Seq,
    Try,
    First,
    Dc,
    Phi,
    Psi,
    Theta,
    SD,
    SDS,
    BottomUp,
    TopDown,
    OnceBu,
    OnceTd,
    RepeatStar,
    Im,
    Om,
    IMrec,
};

const char* combinator_name(Combinator c);
std::optional<Combinator> parse_combinator(std::string_view keyword);

// Supply used by the builders when none is given.
NameSupply& builder_names();

Term make_id(NameSupply& names = builder_names());
Term make_fail(NameSupply& names = builder_names());
Term make_seq(const Term& u, const Term& v, NameSupply& names = builder_names());
Term make_try(const Term& s, NameSupply& names = builder_names());

// Native Phi/Psi operator, or with `expand` the first/set forms over the
// symbols of `sig` (throws "empty-signature" if there are none).
Term make_traverse(Combinator kind, const Term& r, const Signature& sig, bool expand,
                   NameSupply& names = builder_names());

Term make_fixpoint(NameSupply& names = builder_names());

// The function body used by a recursive combinator: f -> (x -> ...).
Term make_body(Combinator kind, const Term& r, NameSupply& names = builder_names());
// [theta](body) for SD, SDS, BottomUp, TopDown, OnceBu, OnceTd, RepeatStar.
Term make_recursor(Combinator kind, const Term& r, NameSupply& names = builder_names());

// im(r) = repeat*(oncebu(r)), om(r) = repeat*(oncetd(r)). `rules` must be a
// rule or a set of rules, else Error("non-rule-element").
Term make_normalizer(Combinator kind, const Term& rules, NameSupply& names = builder_names());

}  // namespace rho
