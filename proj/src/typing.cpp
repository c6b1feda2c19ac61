#include "rho/typing.hpp"

#include <algorithm>

namespace rho {

namespace {

[[noreturn]] void type_error(const char* code, const std::string& msg) { throw Error(code, msg); }

bool is_soft(const Error& e) { return e.code() == "needs-annotation"; }

void close_profiles(const Profile& p, std::vector<Profile>& out) {
    for (const auto& q : out)
        if (q.result == p.result && q.args == p.args) return;
    out.push_back(p);
    if (!p.result.is_arrow()) return;
    Profile d{{}, p.result.dom()}, c{{}, p.result.cod()};
    for (const auto& a : p.args) {
        if (!a.is_arrow()) return;
        d.args.push_back(a.dom());
        c.args.push_back(a.cod());
    }
    close_profiles(d, out);
    close_profiles(c, out);
}

std::vector<Profile> base_profiles(const Signature& sig, const std::string& f) {
    std::vector<Profile> out;
    for (const auto& p : sig.profiles(f)) close_profiles(p, out);
    return out;
}

bool all_arrows(const std::vector<Type>& ts) {
    return std::all_of(ts.begin(), ts.end(), [](const Type& t) { return t.is_arrow(); });
}

void split(const std::vector<Type>& ts, std::vector<Type>& doms, std::vector<Type>& cods) {
    for (const auto& t : ts) {
        doms.push_back(t.dom());
        cods.push_back(t.cod());
    }
}

// Result types f can produce from these argument types.
std::vector<Type> results(const Signature& sig, const std::string& f, const std::vector<Type>& args) {
    std::vector<Type> out;
    auto add = [&](const Type& t) {
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    };
    for (const auto& p : base_profiles(sig, f))
        if (p.args == args) add(p.result);
    if (!args.empty() && all_arrows(args)) {
        std::vector<Type> doms, cods;
        split(args, doms, cods);
        for (const auto& a : results(sig, f, doms))
            for (const auto& b : results(sig, f, cods)) add(Type::arrow(a, b));
    }
    return out;
}

class Checker {
public:
    explicit Checker(const Signature& sig) : sig_(sig) {}

    Typed synth(const Context& e, const Term& t) {
        switch (t.kind()) {
            case Kind::Var: return {var_type(e, t.name()), t};
            case Kind::Fun: return synth_fun(e, t);
            case Kind::Set: return synth_set(e, t);
            case Kind::Rule: {
                Context local;
                Context inner = bind(e, t, std::nullopt, local);
                Typed l = synth(inner, t.lhs());
                Typed r = synth(inner, t.rhs());
                return {Type::arrow(l.type, r.type), Term::rule(l.term, r.term, local)};
            }
            case Kind::App: return synth_app(e, t);
            default:
                type_error("unsupported-construct", std::string("no typing rule for ") + kind_name(t.kind()) +
                                                        " in " + print(t));
        }
    }

    Term check(const Context& e, const Term& t, const Type& x) {
        switch (t.kind()) {
            case Kind::Var: {
                Type a = var_type(e, t.name());
                if (a != x) mismatch(t, x, a);
                return t;
            }
            case Kind::Set: {
                Terms kids;
                for (const auto& k : t.kids()) kids.push_back(check(e, k, x));
                return Term::set(std::move(kids));
            }
            case Kind::Rule: {
                if (!x.is_arrow()) type_error("type-mismatch", print(t) + " is a rule, expected type " + x.str());
                Context local;
                Context inner = bind(e, t, x.dom(), local);
                Term l = check(inner, t.lhs(), x.dom());
                Term r = check(inner, t.rhs(), x.cod());
                return Term::rule(l, r, local);
            }
            case Kind::Fun: return check_fun(e, t, x);
            case Kind::App: return check_app(e, t, x);
            default: {
                Typed s = synth(e, t);
                if (s.type != x) mismatch(t, x, s.type);
                return s.term;
            }
        }
    }

private:
    [[noreturn]] void mismatch(const Term& t, const Type& want, const Type& got) {
        type_error("type-mismatch", print(t) + " has type " + got.str() + ", expected " + want.str());
    }

    // The argument of [u](v) against the domain of u's type.
    Term check_arg(const Context& e, const Term& t, const Type& fn_type) {
        try {
            return check(e, t.arg(), fn_type.dom());
        } catch (const Error& err) {
            if (err.code() != "type-mismatch") throw;
            type_error("untypable-application",
                       "cannot apply " + print(t.fn()) + " : " + fn_type.str() + " here: " + err.what());
        }
    }

    Type var_type(const Context& e, const std::string& x) {
        const Type* a = lookup(e, x);
        if (!a) type_error("unbound-variable", "no type for variable " + x);
        return *a;
    }

    // Typing context for the inside of a rule; `local` receives the types of
    // all its binders.
    Context bind(const Context& e, const Term& rule, const std::optional<Type>& hint, Context& local) {
        const Context annot = rule.ctx() ? *rule.ctx() : Context{};
        if (!is_consistent(annot)) type_error("inconsistent-context", "rule context " + to_string(annot) + " of " + print(rule));
        const VarNames& bs = rule.lhs().fv();
        for (const auto& [x, _] : annot)
            if (!std::binary_search(bs.begin(), bs.end(), x))
                type_error("rule-context-mismatch",
                           "context of " + print(rule) + " types " + x + ", which is not bound by the rule");
        local.clear();
        for (const auto& b : bs) {
            if (const Type* a = lookup(annot, b)) {
                local.emplace_back(b, *a);
            } else if (hint && rule.lhs().is_var()) {
                local.emplace_back(b, *hint);
            } else if (const Type* a = lookup(e, b)) {
                local.emplace_back(b, *a);
            } else {
                type_error("needs-annotation", "binder " + b + " of " + print(rule) + " has no type");
            }
        }
        Context inner = e;
        inner.insert(inner.end(), local.begin(), local.end());
        return inner;
    }

    Typed synth_fun(const Context& e, const Term& t) {
        std::vector<Type> ts;
        Terms kids;
        try {
            for (const auto& k : t.kids()) {
                Typed s = synth(e, k);
                ts.push_back(s.type);
                kids.push_back(s.term);
            }
        } catch (const Error& err) {
            if (!is_soft(err)) throw;
            // some argument has no synthesized type: try the declared profiles
            std::optional<Typed> found;
            for (const auto& p : base_profiles(sig_, t.name())) {
                if (p.args.size() != t.arity()) continue;
                try {
                    Term u = check_args(e, t, p.args);
                    if (found && found->type != p.result)
                        type_error("needs-annotation", "ambiguous type for " + print(t));
                    found = Typed{p.result, u};
                } catch (const Error& e2) {
                    if (e2.code() == "needs-annotation" && found) throw;
                }
            }
            if (!found) throw;
            return *found;
        }
        auto rs = results(sig_, t.name(), ts);
        if (rs.empty()) type_error("no-profile", "no profile of " + t.name() + " fits " + print(t) + arg_list(ts));
        if (rs.size() > 1) type_error("needs-annotation", "ambiguous type for " + print(t));
        return {rs[0], Term::fun(t.name(), std::move(kids))};
    }

    static std::string arg_list(const std::vector<Type>& ts) {
        std::string s = " (arguments:";
        for (const auto& t : ts) s += " " + t.str();
        return s + ")";
    }

    Term check_args(const Context& e, const Term& t, const std::vector<Type>& as) {
        Terms kids;
        for (std::size_t i = 0; i < t.arity(); ++i) kids.push_back(check(e, t.kid(i), as[i]));
        return Term::fun(t.name(), std::move(kids));
    }

    Term check_fun(const Context& e, const Term& t, const Type& x) {
        if (t.arity() == 0) {
            if (!has_profile(sig_, t.name(), {}, x)) type_error("no-profile", "constant " + t.name() + " has no type " + x.str());
            return t;
        }
        std::vector<Type> ts;
        Terms kids;
        bool synthesized = true;
        try {
            for (const auto& k : t.kids()) {
                Typed s = synth(e, k);
                ts.push_back(s.type);
                kids.push_back(s.term);
            }
        } catch (const Error& err) {
            if (!is_soft(err)) throw;
            synthesized = false;
        }
        if (synthesized) {
            if (!has_profile(sig_, t.name(), ts, x))
                type_error("no-profile", "no profile of " + t.name() + " gives " + x.str() + arg_list(ts));
            return Term::fun(t.name(), std::move(kids));
        }
        for (const auto& p : base_profiles(sig_, t.name())) {
            if (p.result != x || p.args.size() != t.arity()) continue;
            try {
                return check_args(e, t, p.args);
            } catch (const Error&) {
            }
        }
        type_error("needs-annotation", "cannot type the arguments of " + print(t));
    }

    Typed synth_set(const Context& e, const Term& t) {
        std::optional<Type> a;
        for (const auto& k : t.kids()) {
            if (k.is_empty_set()) continue;
            Typed s;
            try {
                s = synth(e, k);
            } catch (const Error& err) {
                if (is_soft(err)) continue;
                throw;
            }
            if (a && *a != s.type)
                type_error("set-element-type-mismatch", "elements of " + print(t) + " have types " + a->str() + " and " +
                                                            s.type.str());
            a = s.type;
        }
        if (!a) type_error("needs-annotation", "cannot infer the type of " + print(t));
        return {*a, check(e, t, *a)};
    }

    Typed synth_app(const Context& e, const Term& t) {
        std::optional<Typed> f;
        try {
            f = synth(e, t.fn());
        } catch (const Error& err) {
            if (!is_soft(err)) throw;
        }
        if (f && f->type.is_arrow()) {
            Term a = check_arg(e, t, f->type);
            return {f->type.cod(), Term::app(f->term, a)};
        }
        if (f && !t.fn().is_fun())
            type_error("untypable-application", print(t.fn()) + " has non-arrow type " + f->type.str() + " in " + print(t));
        // the function is a symbol application or an untyped set: type it from the argument
        Typed a = synth(e, t.arg());
        std::vector<Type> cands{a.type};
        if (f) cands.push_back(f->type);
        if (t.fn().is_fun())
            for (const auto& p : base_profiles(sig_, t.fn().name()))
                if (std::find(cands.begin(), cands.end(), p.result) == cands.end()) cands.push_back(p.result);
        for (const auto& r : cands) {
            try {
                Term u = check(e, t.fn(), Type::arrow(a.type, r));
                return {r, Term::app(u, a.term)};
            } catch (const Error&) {
            }
        }
        if (!f) type_error("needs-annotation", "cannot infer the type of " + print(t.fn()));
        type_error("untypable-application", "cannot apply " + print(t.fn()) + " to an argument of type " + a.type.str());
    }

    Term check_app(const Context& e, const Term& t, const Type& x) {
        std::optional<Typed> f;
        try {
            f = synth(e, t.fn());
        } catch (const Error& err) {
            if (!is_soft(err)) throw;
        }
        if (f && f->type.is_arrow()) {
            if (f->type.cod() != x) mismatch(t, x, f->type.cod());
            return Term::app(f->term, check_arg(e, t, f->type));
        }
        if (f && !t.fn().is_fun())
            type_error("untypable-application", print(t.fn()) + " has non-arrow type " + f->type.str() + " in " + print(t));
        Typed a = synth(e, t.arg());
        try {
            return Term::app(check(e, t.fn(), Type::arrow(a.type, x)), a.term);
        } catch (const Error& err) {
            if (err.code() == "no-profile")
                type_error("untypable-application", "cannot apply " + print(t.fn()) + " to an argument of type " +
                                                        a.type.str() + " giving " + x.str());
            throw;
        }
    }

    const Signature& sig_;
};

void check_ctx(const Context& ctx) {
    if (!is_consistent(ctx)) type_error("inconsistent-context", "context " + to_string(ctx) + " gives a variable two types");
}

bool typed_bindings(const Context& lctx, const Term& l, const Context& tctx, const Term& t, const Signature& sig) {
    if (l.is_var()) {
        const Type* a = lookup(lctx, l.name());
        return a && well_typed(tctx, t, *a, sig);
    }
    for (std::size_t i = 0; i < l.arity(); ++i)
        if (!typed_bindings(lctx, l.kid(i), tctx, t.kid(i), sig)) return false;
    return true;
}

}  // namespace

bool is_consistent(const Context& ctx) {
    for (std::size_t i = 0; i < ctx.size(); ++i)
        for (std::size_t j = i + 1; j < ctx.size(); ++j)
            if (ctx[i].first == ctx[j].first && ctx[i].second != ctx[j].second) return false;
    return true;
}

bool has_profile(const Signature& sig, const std::string& f, const std::vector<Type>& args, const Type& result) {
    for (const auto& p : base_profiles(sig, f))
        if (p.args == args && p.result == result) return true;
    if (!result.is_arrow() || !all_arrows(args)) return false;
    std::vector<Type> doms, cods;
    split(args, doms, cods);
    return has_profile(sig, f, doms, result.dom()) && has_profile(sig, f, cods, result.cod());
}

Typed infer_typed(const Context& ctx, const Term& t, const Signature& sig) {
    check_ctx(ctx);
    return Checker(sig).synth(ctx, t);
}

Type infer_type(const Context& ctx, const Term& t, const Signature& sig) { return infer_typed(ctx, t, sig).type; }

Term check_type(const Context& ctx, const Term& t, const Type& expected, const Signature& sig) {
    check_ctx(ctx);
    return Checker(sig).check(ctx, t, expected);
}

bool well_typed(const Context& ctx, const Term& t, const Type& expected, const Signature& sig) {
    try {
        check_type(ctx, t, expected, sig);
        return true;
    } catch (const Error&) {
        return false;
    }
}

MatchOutcome match_typed(const Context& lctx, const Term& l, const Context& tctx, const Term& t, const Signature& sig) {
    MatchOutcome m = match_syntactic(l, t);
    if (!m) return m;
    if (!typed_bindings(lctx, l, tctx, t, sig)) return MatchOutcome::failure(Clash::TypeClash);
    return m;
}

Context context_at(const Context& ctx, const Term& root, const Position& at) {
    Context e = ctx;
    const Term* cur = &root;
    for (int i : at) {
        if (cur->is(Kind::Rule) && cur->ctx()) e.insert(e.end(), cur->ctx()->begin(), cur->ctx()->end());
        cur = &cur->kid(static_cast<std::size_t>(i - 1));
    }
    return e;
}

TypedResult typed_normalize(const Context& ctx, const Term& t, const Signature& sig, ReductionConfig cfg,
                            bool check_steps) {
    Typed start = infer_typed(ctx, t, sig);
    cfg.matcher = [&ctx, &sig](const Term& root, const Position& at, const Term& redex) {
        Context e = context_at(ctx, root, at);
        const Term& rule = redex.fn();
        Context lctx = e;
        if (rule.ctx()) lctx.insert(lctx.end(), rule.ctx()->begin(), rule.ctx()->end());
        return match_typed(lctx, rule.lhs(), e, redex.arg(), sig);
    };
    Evaluator ev(cfg);
    TypedResult out{start.type, {}};
    NormalizeResult& res = out.result;
    res.term = start.term;
    for (;;) {
        auto s = ev.step(res.term);
        if (!s) {
            res.normal_form = true;
            return out;
        }
        if (res.steps >= cfg.max_steps) return out;
        if (check_steps && !well_typed(ctx, s->first, start.type, sig))
            throw Error("subject-reduction-violation", format_step(res.steps + 1, s->second) +
                                                           " does not preserve type " + start.type.str());
        if (cfg.trace) res.trace.push_back(s->second);
        res.term = s->first;
        ++res.steps;
    }
}

}  // namespace rho
