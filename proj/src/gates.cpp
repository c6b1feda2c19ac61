#include "rho/gates.hpp"

#include <algorithm>
#include <map>

#include "rho/matching.hpp"

namespace rho {

const char* gate_name(Gate g) {
    switch (g) {
        case Gate::None: return "none";
        case Gate::Strict: return "strict";
        case Gate::ConfStrat: return "confstrat";
        case Gate::ConfStratLin: return "confstratlin";
        case Gate::ConfStratStable: return "confstratstable";
        case Gate::FirstOrder: return "firstorder";
        case Gate::Prefilter: return "prefilter";
    }
    return "?";
}

std::optional<Gate> parse_gate(std::string_view s) {
    for (Gate g : {Gate::None, Gate::Strict, Gate::ConfStrat, Gate::ConfStratLin, Gate::ConfStratStable,
                   Gate::FirstOrder, Gate::Prefilter})
        if (s == gate_name(g)) return g;
    return std::nullopt;
}

bool weakly_subsumes(const Term& l, const Term& t) {
    if (!l.is_fun()) return true;
    if (!t.is_fun()) return false;
    std::size_t n = std::min(l.arity(), t.arity());
    for (std::size_t i = 0; i < n; ++i)
        if (!weakly_subsumes(l.kid(i), t.kid(i))) return false;
    return true;
}

bool is_prefilterable(const Term& l, const Term& t) {
    if (!l.first_order()) throw Error("malformed-pattern", "pattern is not first-order: " + print(l));
    return t.ground_first_order() || (is_linear(l) && weakly_subsumes(l, t));
}

namespace {

bool has_bad_set(const Term& t) {
    if (t.is(Kind::Set) && t.arity() != 1) return true;
    for (const auto& k : t.kids())
        if (has_bad_set(k)) return true;
    return false;
}

bool contains_empty_set(const Term& t) {
    if (t.is_empty_set()) return true;
    for (const auto& k : t.kids())
        if (contains_empty_set(k)) return true;
    return false;
}

bool has_multi_set(const Term& t) {
    if (t.is(Kind::Set) && t.arity() > 1) return true;
    for (const auto& k : t.kids())
        if (has_multi_set(k)) return true;
    return false;
}

// Every application has a rule as function, and that rule's lhs matches the argument.
bool apps_well_formed(const Term& t) {
    if (t.is(Kind::App)) {
        const Term& f = t.fn();
        if (!f.is(Kind::Rule)) return false;
        if (!f.lhs().first_order() || !match_syntactic(f.lhs(), t.arg())) return false;
    }
    for (const auto& k : t.kids())
        if (!apps_well_formed(k)) return false;
    return true;
}

bool apps_have_rules(const Term& t) {
    if (t.is(Kind::App) && !t.fn().is(Kind::Rule)) return false;
    for (const auto& k : t.kids())
        if (!apps_have_rules(k)) return false;
    return true;
}

bool apps_subsume(const Term& t) {
    if (t.is(Kind::App) && t.fn().is(Kind::Rule)) {
        const Term& l = t.fn().lhs();
        if (!l.first_order() || !match_syntactic(l, t.arg())) return false;
    }
    for (const auto& k : t.kids())
        if (!apps_subsume(k)) return false;
    return true;
}

template <class F>
bool all_rules_in(const Term& t, F&& pred) {
    if (t.is(Kind::Rule) && !pred(t)) return false;
    for (const auto& k : t.kids())
        if (!all_rules_in(k, pred)) return false;
    return true;
}

bool subset(const VarNames& a, const VarSet& b) {
    return std::all_of(a.begin(), a.end(), [&](const std::string& x) { return b.contains(x); });
}

// Free occurrences of the watched variables; false once some non-set subterm
// holds one of them twice.
bool linear_counts(const Term& t, const std::set<std::string>& watch, std::map<std::string, int>& out) {
    switch (t.kind()) {
        case Kind::Var:
            if (watch.count(t.name())) out[t.name()] = 1;
            return true;
        case Kind::Rule: {
            std::set<std::string> inner;
            std::set<std::string> b = binders(t);
            for (const auto& x : watch)
                if (!b.count(x)) inner.insert(x);
            return linear_counts(t.rhs(), inner, out);
        }
        default: break;
    }
    for (const auto& k : t.kids()) {
        std::map<std::string, int> sub;
        if (!linear_counts(k, watch, sub)) return false;
        for (const auto& [x, n] : sub) out[x] += n;
    }
    if (t.is(Kind::Set)) return true;
    return std::all_of(out.begin(), out.end(), [](const auto& e) { return e.second <= 1; });
}

}  // namespace

bool is_safe(const Term& t) { return !has_bad_set(t) && apps_well_formed(t); }

bool is_calculable(const Term& l, const Term& t) { return is_prefilterable(l, t) && is_safe(t); }

bool is_quasi_regular(const Term& rule) {
    if (!rule.is(Kind::Rule)) return false;
    if (!subset(rule.lhs().fv(), present_vars(rule.rhs()))) return false;
    return all_rules_in(rule.rhs(), [](const Term& r) { return is_quasi_regular(r); });
}

bool is_strictly_right_linear(const Term& rule) {
    if (!rule.is(Kind::Rule)) return false;
    std::set<std::string> watch(rule.lhs().fv().begin(), rule.lhs().fv().end());
    std::map<std::string, int> counts;
    if (!linear_counts(rule.rhs(), watch, counts)) return false;
    return all_rules_in(rule.rhs(), [](const Term& r) { return is_strictly_right_linear(r); });
}

bool is_stable(const Term& rule) {
    if (!rule.is(Kind::Rule)) return false;
    const VarNames& fl = rule.lhs().fv();
    VarSet pl = present_vars(rule.lhs());
    for (const auto& x : rule.rhs().fv()) {
        bool in_fl = std::binary_search(fl.begin(), fl.end(), x);
        bool in_pl = in_fl && pl.contains(x);
        if (in_fl != in_pl) return false;
    }
    return all_rules_in(rule.rhs(), [](const Term& r) { return is_stable(r); });
}

bool fire_allowed(Gate g, const Term& l, const Term& r, const Term& t) {
    if (!l.first_order()) return false;
    switch (g) {
        case Gate::None:
            return true;
        case Gate::Strict:
            return t.ground_first_order();
        case Gate::ConfStrat:
            return is_calculable(l, t);
        case Gate::Prefilter:
            return is_prefilterable(l, t);
        case Gate::FirstOrder:
            return r.first_order() && t.ground_first_order();
        case Gate::ConfStratLin:
        case Gate::ConfStratStable: {
            bool ok = t.ground_first_order();
            if (!ok && is_linear(l) && weakly_subsumes(l, t)) {
                Term rule = Term::rule(l, r);
                bool empty_ok = is_quasi_regular(rule) ||
                                (!contains_empty_set(t) && apps_have_rules(t) && apps_subsume(t));
                bool sets_ok = is_strictly_right_linear(rule) || !has_multi_set(t);
                ok = empty_ok && sets_ok;
            }
            if (!ok || g == Gate::ConfStratLin) return ok;
            return all_rules_in(r, [](const Term& x) { return is_stable(x); });
        }
    }
    return false;
}

}  // namespace rho
