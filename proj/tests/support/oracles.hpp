#pragma once

// Independent reference implementations used only by the tests.

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rho/debruijn.hpp"
#include "rho/encodings.hpp"
#include "rho/substitution.hpp"
#include "rho/term.hpp"

namespace rho::testing {

// Enumerates assignments of subject subterms to the pattern variables, one
// variable at a time, pruning on the already-fixed structure.
std::optional<Subst> brute_force_match(const Term& pattern, const Term& subject);

// Alpha-equivalence through a locally nameless encoding written from scratch.
bool alpha_equal_oracle(const Term& a, const Term& b);

// Every normal form reachable from a ground term (the system must terminate).
std::set<Term> trs_normal_forms(const std::vector<Term>& rules, const Term& t);
// A leftmost-innermost derivation from t to a normal form.
RewriteDerivation trs_innermost_derivation(const std::vector<Term>& rules, const Term& t);

// Normal-order beta reduction with capture-avoiding substitution; nullopt if
// no normal form within `max_steps`.
std::optional<LambdaTerm> beta_normalize(const LambdaTerm& t, std::size_t max_steps, std::size_t* steps = nullptr);

// The two polynomial interpretations used for termination of the
// substitution rules, compared lexicographically.
using BigInt = boost::multiprecision::cpp_int;
std::pair<BigInt, BigInt> sigma_measure(const db::DB& t);

}  // namespace rho::testing
