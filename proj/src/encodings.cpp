#include "rho/encodings.hpp"

#include <map>
#include <sstream>

#include "rho/combinators.hpp"
#include "rho/matching.hpp"
#include "rho/substitution.hpp"

namespace rho {

struct LambdaTerm::Node {
    LKind kind;
    std::string name;
    std::vector<LambdaTerm> kids;
    std::size_t size = 1;
};

LambdaTerm LambdaTerm::make(LKind k, std::string name, std::vector<LambdaTerm> kids) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->name = std::move(name);
    for (const auto& c : kids) n->size += c.size();
    n->kids = std::move(kids);
    return LambdaTerm(std::move(n));
}

LambdaTerm LambdaTerm::var(std::string x) { return make(LKind::Var, std::move(x), {}); }
LambdaTerm LambdaTerm::cnst(std::string c) { return make(LKind::Const, std::move(c), {}); }
LambdaTerm LambdaTerm::abs(std::string x, LambdaTerm body) {
    return make(LKind::Abs, std::move(x), {std::move(body)});
}
LambdaTerm LambdaTerm::app(LambdaTerm f, LambdaTerm a) {
    return make(LKind::App, "", {std::move(f), std::move(a)});
}
LambdaTerm LambdaTerm::fun(std::string f, std::vector<LambdaTerm> args) {
    return make(LKind::Fun, std::move(f), std::move(args));
}

LKind LambdaTerm::kind() const { return n_->kind; }
const std::string& LambdaTerm::name() const { return n_->name; }
const std::vector<LambdaTerm>& LambdaTerm::kids() const { return n_->kids; }
std::size_t LambdaTerm::size() const { return n_->size; }

bool operator==(const LambdaTerm& a, const LambdaTerm& b) {
    if (a.n_ == b.n_) return true;
    if (a.kind() != b.kind() || a.name() != b.name() || a.kids().size() != b.kids().size()) return false;
    for (std::size_t i = 0; i < a.kids().size(); ++i)
        if (a.kid(i) != b.kid(i)) return false;
    return true;
}

namespace {

void lprint(std::ostream& os, const LambdaTerm& t) {
    switch (t.kind()) {
        case LKind::Var:
        case LKind::Const: os << t.name(); return;
        case LKind::Abs:
            os << '\\' << t.name() << ". ";
            lprint(os, t.kid(0));
            return;
        case LKind::App:
            os << '(';
            lprint(os, t.kid(0));
            os << ' ';
            lprint(os, t.kid(1));
            os << ')';
            return;
        case LKind::Fun:
            os << t.name() << '(';
            for (std::size_t i = 0; i < t.kids().size(); ++i) {
                if (i) os << ", ";
                lprint(os, t.kid(i));
            }
            os << ')';
            return;
    }
}

// Binder depth per name on the way down; free variables compare by name.
bool alpha_rec(const LambdaTerm& a, const LambdaTerm& b, std::map<std::string, std::vector<int>>& ea,
               std::map<std::string, std::vector<int>>& eb, int depth) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case LKind::Var: {
            auto ia = ea.find(a.name());
            auto ib = eb.find(b.name());
            bool ba = ia != ea.end() && !ia->second.empty();
            bool bb = ib != eb.end() && !ib->second.empty();
            if (ba != bb) return false;
            if (!ba) return a.name() == b.name();
            return ia->second.back() == ib->second.back();
        }
        case LKind::Const: return a.name() == b.name();
        case LKind::Abs: {
            ea[a.name()].push_back(depth);
            eb[b.name()].push_back(depth);
            bool ok = alpha_rec(a.kid(0), b.kid(0), ea, eb, depth + 1);
            ea[a.name()].pop_back();
            eb[b.name()].pop_back();
            return ok;
        }
        default:
            if (a.name() != b.name() || a.kids().size() != b.kids().size()) return false;
            for (std::size_t i = 0; i < a.kids().size(); ++i)
                if (!alpha_rec(a.kid(i), b.kid(i), ea, eb, depth)) return false;
            return true;
    }
}

}  // namespace

std::string print(const LambdaTerm& t) {
    std::ostringstream os;
    lprint(os, t);
    return os.str();
}

bool lambda_alpha_equal(const LambdaTerm& a, const LambdaTerm& b) {
    std::map<std::string, std::vector<int>> ea, eb;
    return alpha_rec(a, b, ea, eb, 0);
}

Term lambda_to_rho(const LambdaTerm& t) {
    switch (t.kind()) {
        case LKind::Var: return Term::var(t.name());
        case LKind::Const: return Term::fun(t.name());
        case LKind::Abs: return Term::rule(Term::var(t.name()), lambda_to_rho(t.kid(0)));
        case LKind::App: return Term::app(lambda_to_rho(t.kid(0)), lambda_to_rho(t.kid(1)));
        case LKind::Fun: {
            Terms args;
            for (const auto& k : t.kids()) args.push_back(lambda_to_rho(k));
            return Term::fun(t.name(), std::move(args));
        }
    }
    return Term();
}

LambdaTerm rho_to_lambda(const Term& t) {
    switch (t.kind()) {
        case Kind::Var: return LambdaTerm::var(t.name());
        case Kind::Fun: {
            if (t.arity() == 0) return LambdaTerm::cnst(t.name());
            std::vector<LambdaTerm> args;
            for (const auto& k : t.kids()) args.push_back(rho_to_lambda(k));
            return LambdaTerm::fun(t.name(), std::move(args));
        }
        case Kind::Set:
            if (t.arity() == 1) return rho_to_lambda(t.kid(0));
            throw Error("fragment-error", "set of size " + std::to_string(t.arity()) + " has no lambda form");
        case Kind::Rule:
            if (!t.lhs().is_var()) throw Error("fragment-error", "rule with a non-variable left-hand side: " + print(t));
            return LambdaTerm::abs(t.lhs().name(), rho_to_lambda(t.rhs()));
        case Kind::App: return LambdaTerm::app(rho_to_lambda(t.fn()), rho_to_lambda(t.arg()));
        default:
            throw Error("fragment-error", std::string("no lambda form for ") + kind_name(t.kind()));
    }
}

std::vector<Term> replay(const RewriteDerivation& d) {
    std::vector<Term> out{d.initial};
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const auto& s = d.steps[i];
        auto bad = [&](const std::string& why) {
            return Error("ill-formed-derivation", "step " + std::to_string(i + 1) + ": " + why);
        };
        if (!s.rule.is(Kind::Rule) || !s.rule.lhs().first_order() || !s.rule.rhs().first_order())
            throw bad("not a first-order rule: " + print(s.rule));
        const Term& cur = out.back();
        Term w;
        try {
            w = subterm_at(cur, s.position);
        } catch (const Error&) {
            throw bad("no position " + position_str(s.position) + " in " + print(cur));
        }
        MatchOutcome m = match_syntactic(s.rule.lhs(), w);
        if (!m.ok) throw bad(print(s.rule.lhs()) + " does not match " + print(w));
        out.push_back(replace_at(cur, s.position, graft(m.subst, s.rule.rhs())));
    }
    return out;
}

Term derivation_to_rho(const RewriteDerivation& d, DerivationEncoding enc) {
    std::vector<Term> terms = replay(d);
    if (d.steps.empty()) return Term::app(make_id(), d.initial);
    Term acc = d.initial;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const Term& ti = terms[i];
        const auto& s = d.steps[i];
        Term u = enc == DerivationEncoding::Congruence
                     ? replace_at(ti, s.position, s.rule)
                     : Term::rule(replace_at(ti, s.position, s.rule.lhs()), replace_at(ti, s.position, s.rule.rhs()));
        acc = Term::app(u, acc);
    }
    return acc;
}

namespace {
void require_true(const Signature& sig) {
    auto a = sig.arity("True");
    if (!a || *a != 0) throw Error("missing-True-symbol", "the constant True is not declared");
}
}  // namespace

Term encode_conditional_rule(const Term& l, const Term& r, const Term& cond, const Term& normRules,
                             const Signature& sig) {
    require_true(sig);
    Term check = Term::app(make_normalizer(Combinator::Im, normRules), cond);
    return Term::rule(l, Term::app(Term::rule(Term::fun("True"), r), check));
}

Term encode_conditional_system(const std::vector<ConditionalRule>& rules, const Signature& sig) {
    require_true(sig);
    NameSupply& names = builder_names();
    std::set<std::string> avoid;
    for (const auto& cr : rules) {
        for (const auto& v : all_vars(cr.lhs)) avoid.insert(v);
        for (const auto& v : all_vars(cr.rhs)) avoid.insert(v);
        if (cr.cond)
            for (const auto& v : all_vars(*cr.cond)) avoid.insert(v);
    }
    Term f = Term::var(names.fresh(avoid));
    avoid.insert(f.name());
    Term y = Term::var(names.fresh(avoid));
    Terms elems;
    for (const auto& cr : rules) {
        if (cr.cond)
            elems.push_back(Term::rule(cr.lhs, Term::app(Term::rule(Term::fun("True"), cr.rhs), Term::app(f, *cr.cond))));
        else
            elems.push_back(Term::rule(cr.lhs, cr.rhs));
    }
    Term body = Term::rule(f, Term::rule(y, Term::app(make_normalizer(Combinator::Im, Term::set(elems), names), y)));
    return Term::app(make_fixpoint(names), body);
}

}  // namespace rho
