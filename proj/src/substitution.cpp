#include "rho/substitution.hpp"

#include <algorithm>

namespace rho {

std::set<std::string> subst_domain(const Subst& s) {
    std::set<std::string> d;
    for (const auto& [x, _] : s) d.insert(x);
    return d;
}

std::set<std::string> subst_range_vars(const Subst& s) {
    std::set<std::string> r;
    for (const auto& [_, t] : s) r.insert(t.fv().begin(), t.fv().end());
    return r;
}

std::string print(const Subst& s) {
    std::string out = "<";
    bool first = true;
    for (const auto& [x, t] : s) {
        if (!first) out += ", ";
        first = false;
        out += x + "/" + print(t);
    }
    return out + ">";
}

bool is_reserved_name(const std::string& x) { return !x.empty() && x[0] == NameSupply::prefix; }

std::string NameSupply::fresh(const std::set<std::string>& avoid) {
    for (;;) {
        std::string n = std::string(1, prefix) + std::to_string(next_++);
        if (!avoid.count(n)) return n;
    }
}

namespace {

bool touches(const Subst& s, const Term& t) {
    for (const auto& x : t.fv())
        if (s.count(x)) return true;
    return false;
}

Context rename_ctx(const Context& ctx, const std::map<std::string, std::string>& ren) {
    Context out = ctx;
    for (auto& [x, _] : out) {
        auto it = ren.find(x);
        if (it != ren.end()) x = it->second;
    }
    return out;
}

Term subst_rec(const Subst& s, const Term& t, NameSupply& names);

Term subst_rule(const Subst& s, const Term& t, NameSupply& names) {
    std::set<std::string> bound = binders(t);
    Subst inner;
    for (const auto& [x, u] : s)
        if (!bound.count(x)) inner.emplace(x, u);
    if (inner.empty() || !touches(inner, t.rhs())) return t;

    // only images of variables that actually occur matter for capture
    std::set<std::string> range;
    for (const auto& x : t.rhs().fv()) {
        auto it = inner.find(x);
        if (it != inner.end()) range.insert(it->second.fv().begin(), it->second.fv().end());
    }
    Term lhs = t.lhs(), rhs = t.rhs();
    std::optional<Context> ctx = t.ctx();
    std::map<std::string, std::string> ren;
    for (const auto& b : bound)
        if (range.count(b)) ren[b] = "";
    if (!ren.empty()) {
        std::set<std::string> avoid = all_vars(t);
        avoid.insert(range.begin(), range.end());
        for (const auto& [x, _] : inner) avoid.insert(x);
        Subst r;
        for (auto& [b, n] : ren) {
            n = names.fresh(avoid);
            avoid.insert(n);
            r.emplace(b, Term::var(n));
        }
        lhs = subst_rec(r, lhs, names);
        rhs = subst_rec(r, rhs, names);
        if (ctx) ctx = rename_ctx(*ctx, ren);
    }
    return Term::rule(lhs, subst_rec(inner, rhs, names), ctx);
}

Term subst_rec(const Subst& s, const Term& t, NameSupply& names) {
    if (!touches(s, t)) return t;
    switch (t.kind()) {
        case Kind::Var: {
            auto it = s.find(t.name());
            return it == s.end() ? t : it->second;
        }
        case Kind::Rule:
            return subst_rule(s, t, names);
        default: {
            Terms kids;
            kids.reserve(t.arity());
            for (const auto& k : t.kids()) kids.push_back(subst_rec(s, k, names));
            return Term::with_children(t, std::move(kids));
        }
    }
}

Term rename_rec(const Term& t, const std::set<std::string>& avoid, NameSupply& names) {
    if (t.kind() == Kind::Var) return t;
    if (t.kind() != Kind::Rule) {
        Terms kids;
        kids.reserve(t.arity());
        for (const auto& k : t.kids()) kids.push_back(rename_rec(k, avoid, names));
        return Term::with_children(t, std::move(kids));
    }
    std::set<std::string> bound = binders(t);
    Subst r;
    std::map<std::string, std::string> ren;
    std::set<std::string> taken = all_vars(t);
    taken.insert(avoid.begin(), avoid.end());
    for (const auto& b : bound) {
        if (!avoid.count(b)) continue;
        std::string n = names.fresh(taken);
        taken.insert(n);
        ren[b] = n;
        r.emplace(b, Term::var(n));
    }
    Term lhs = t.lhs(), rhs = t.rhs();
    std::optional<Context> ctx = t.ctx();
    if (!r.empty()) {
        lhs = subst_rec(r, lhs, names);
        rhs = subst_rec(r, rhs, names);
        if (ctx) ctx = rename_ctx(*ctx, ren);
    }
    return Term::rule(rename_rec(lhs, avoid, names), rename_rec(rhs, avoid, names), ctx);
}

Term graft_rec(const Subst& s, const Term& t) {
    if (t.kind() == Kind::Var) {
        auto it = s.find(t.name());
        return it == s.end() ? t : it->second;
    }
    if (t.arity() == 0) return t;
    Terms kids;
    kids.reserve(t.arity());
    for (const auto& k : t.kids()) kids.push_back(graft_rec(s, k));
    return Term::with_children(t, std::move(kids));
}

void first_occurrences(const Term& t, std::vector<std::string>& out) {
    if (t.kind() == Kind::Var) {
        if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
        return;
    }
    if (t.kind() == Kind::Rule) {
        // a rule inside a pattern contributes only its free variables
        for (const auto& x : t.fv())
            if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
        return;
    }
    for (const auto& k : t.kids()) first_occurrences(k, out);
}

Term normalize_rec(const Term& t, int depth, NameSupply& names) {
    if (t.kind() == Kind::Var || t.arity() == 0) return t;
    if (t.kind() != Kind::Rule) {
        Terms kids;
        kids.reserve(t.arity());
        for (const auto& k : t.kids()) kids.push_back(normalize_rec(k, depth, names));
        return Term::with_children(t, std::move(kids));
    }
    std::vector<std::string> order;
    first_occurrences(t.lhs(), order);
    Subst r;
    std::map<std::string, std::string> ren;
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::string n = "%" + std::to_string(depth) + "." + std::to_string(i + 1);
        ren[order[i]] = n;
        r.emplace(order[i], Term::var(n));
    }
    Term lhs = graft_rec(r, t.lhs());
    Term rhs = subst_rec(r, t.rhs(), names);
    std::optional<Context> ctx = t.ctx();
    if (ctx) ctx = rename_ctx(*ctx, ren);
    return Term::rule(normalize_rec(lhs, depth + 1, names), normalize_rec(rhs, depth + 1, names), ctx);
}

}  // namespace

Term apply_subst(const Subst& s, const Term& t, NameSupply& names) {
    if (s.empty()) return t;
    return subst_rec(s, t, names);
}

Term apply_subst(const Subst& s, const Term& t) {
    thread_local NameSupply supply;
    return apply_subst(s, t, supply);
}

Term alpha_rename(const Term& t, const std::set<std::string>& avoid, NameSupply& names) {
    return rename_rec(t, avoid, names);
}

Term graft(const Subst& s, const Term& t) { return s.empty() ? t : graft_rec(s, t); }

Term alpha_normalize(const Term& t) {
    if (!contains_kind(t, Kind::Rule)) return t;
    NameSupply names;
    return normalize_rec(t, 0, names);
}

bool alpha_equal(const Term& a, const Term& b) {
    if (a == b) return true;
    if (a.fv() != b.fv() || a.size() != b.size()) return false;
    return alpha_normalize(a) == alpha_normalize(b);
}

}  // namespace rho
