#include "rho/matching.hpp"

#include <random>
#include <utility>

namespace rho {

const char* clash_name(Clash c) {
    switch (c) {
        case Clash::None: return "none";
        case Clash::SymbolClash: return "SymbolClash";
        case Clash::MergingClash: return "MergingClash";
        case Clash::SymbolVariableClash: return "SymbolVariableClash";
        case Clash::TypeClash: return "TypeClash";
    }
    return "?";
}

MatchOutcome match_syntactic(const Term& l, const Term& t, const MatchOptions& opt) {
    if (!l.first_order()) throw Error("malformed-pattern", "pattern is not first-order: " + print(l));

    std::vector<std::pair<Term, Term>> pending{{l, t}};
    std::mt19937_64 rng(opt.shuffle_seed);
    Subst bound;
    while (!pending.empty()) {
        if (opt.shuffle_seed && pending.size() > 1) {
            std::uniform_int_distribution<std::size_t> pick(0, pending.size() - 1);
            std::swap(pending[pick(rng)], pending.back());
        }
        auto [p, s] = std::move(pending.back());
        pending.pop_back();
        if (p.is_var()) {
            auto [it, fresh] = bound.emplace(p.name(), s);
            if (!fresh && !alpha_equal(it->second, s)) return MatchOutcome::failure(Clash::MergingClash);
            continue;
        }
        // p is a function symbol application
        if (s.is_var()) return MatchOutcome::failure(Clash::SymbolVariableClash);
        if (!s.is_fun() || s.name() != p.name() || s.arity() != p.arity())
            return MatchOutcome::failure(Clash::SymbolClash);
        // pushed in reverse so the leftmost argument comes out first
        for (std::size_t i = p.arity(); i-- > 0;) pending.emplace_back(p.kid(i), s.kid(i));
    }
    for (auto it = bound.begin(); it != bound.end();) {
        if (it->second.is_var() && it->second.name() == it->first)
            it = bound.erase(it);
        else
            ++it;
    }
    return MatchOutcome::success(std::move(bound));
}

std::vector<Subst> solution(const Term& l, const Term& t) {
    auto r = match_syntactic(l, t);
    if (!r) return {};
    return {std::move(r.subst)};
}

bool subsumes(const Term& l, const Term& t) { return l.first_order() && match_syntactic(l, t).ok; }

}  // namespace rho
