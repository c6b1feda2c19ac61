#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rho/term.hpp"

namespace rho {

// Lambda terms, with constants and applied function symbols.
enum class LKind { Var, Const, Abs, App, Fun };

class LambdaTerm {
public:
    static LambdaTerm var(std::string x);
    static LambdaTerm cnst(std::string c);
    static LambdaTerm abs(std::string x, LambdaTerm body);
    static LambdaTerm app(LambdaTerm f, LambdaTerm a);
    static LambdaTerm fun(std::string f, std::vector<LambdaTerm> args);

    LKind kind() const;
    const std::string& name() const;  // variable, binder or symbol
    const std::vector<LambdaTerm>& kids() const;
    const LambdaTerm& kid(std::size_t i) const { return kids()[i]; }
    std::size_t size() const;

    // Syntactic equality; see lambda_alpha_equal for binders.
    friend bool operator==(const LambdaTerm& a, const LambdaTerm& b);
    friend bool operator!=(const LambdaTerm& a, const LambdaTerm& b) { return !(a == b); }

private:
    struct Node;
    explicit LambdaTerm(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static LambdaTerm make(LKind k, std::string name, std::vector<LambdaTerm> kids);
    std::shared_ptr<const Node> n_;
};

// "\x. body", "(f a)", "f(a, b)".
std::string print(const LambdaTerm& t);
bool lambda_alpha_equal(const LambdaTerm& a, const LambdaTerm& b);

// phi: \x.t becomes x -> phi(t), application becomes [.](.).
Term lambda_to_rho(const LambdaTerm& t);
// delta: the inverse on variable-lhs rules and singleton sets (braces are
// erased). Anything else throws Error("fragment-error").
LambdaTerm rho_to_lambda(const Term& t);

struct DerivationStep {
    Term rule;  // first-order l -> r
    Position position;
};

struct RewriteDerivation {
    Term initial;
    std::vector<DerivationStep> steps;
};

// Replays the derivation; throws Error("ill-formed-derivation") if a step
// does not match. Returns every intermediate term, initial first.
std::vector<Term> replay(const RewriteDerivation& d);

enum class DerivationEncoding {
    Congruence,  // the rule planted at the step position: t[l -> r]_p
    FireOnly,    // the lifted rule t[l]_p -> t[r]_p
};

// [u_n](...[u_1](t)...); [id](t) for an empty derivation.
Term derivation_to_rho(const RewriteDerivation& d, DerivationEncoding enc = DerivationEncoding::Congruence);

// l -> [True -> r]([im(normRules)](cond)). Throws Error("missing-True-symbol")
// unless True is a constant of `sig`.
Term encode_conditional_rule(const Term& l, const Term& r, const Term& cond, const Term& normRules,
                             const Signature& sig);

struct ConditionalRule {
    Term lhs, rhs;
    std::optional<Term> cond;
};

// [theta](f -> (y -> [im({l_i -> [True -> r_i]([f](c_i))} u Rn)](y))).
Term encode_conditional_system(const std::vector<ConditionalRule>& rules, const Signature& sig);

}  // namespace rho
