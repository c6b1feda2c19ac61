#pragma once

#include <utility>

#include "rho/evaluator.hpp"
#include "rho/matching.hpp"
#include "rho/term.hpp"
#include "rho/type.hpp"

namespace rho {

// Type errors use Error codes: inconsistent-context, no-profile,
// set-element-type-mismatch, rule-context-mismatch, untypable-application,
// needs-annotation, unbound-variable, unsupported-construct, and
// type-mismatch when a term checked against a type has another one.

bool is_consistent(const Context& ctx);

// Symbol profiles, closed under the arrow lifting of pairs of profiles and
// its inverse.
bool has_profile(const Signature& sig, const std::string& f, const std::vector<Type>& args, const Type& result);

struct Typed {
    Type type;
    Term term;  // every rule carries the types of all its binders
};

// Synthesis. A bare empty set has no synthesized type (needs-annotation).
Typed infer_typed(const Context& ctx, const Term& t, const Signature& sig);
Type infer_type(const Context& ctx, const Term& t, const Signature& sig);
// Checking against an expected type.
Term check_type(const Context& ctx, const Term& t, const Type& expected, const Signature& sig);
bool well_typed(const Context& ctx, const Term& t, const Type& expected, const Signature& sig);

// Syntactic matching plus a type check of every binding: x:A/u fails with
// TypeClash unless tctx gives u the type A.
MatchOutcome match_typed(const Context& lctx, const Term& l, const Context& tctx, const Term& t,
                         const Signature& sig);

// The typing context at position `at`: ctx plus the binder contexts of the
// rules crossed on the way down.
Context context_at(const Context& ctx, const Term& root, const Position& at);

struct TypedResult {
    Type type;
    NormalizeResult result;
};

// Elaborates t, then normalizes with typed Fire. With `check_steps` every
// intermediate term is checked against the initial type; a failure throws
// Error("subject-reduction-violation").
TypedResult typed_normalize(const Context& ctx, const Term& t, const Signature& sig, ReductionConfig cfg,
                            bool check_steps = true);

}  // namespace rho
