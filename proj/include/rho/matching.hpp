#pragma once

#include <cstdint>
#include <vector>

#include "rho/substitution.hpp"
#include "rho/term.hpp"

namespace rho {

enum class Clash { None, SymbolClash, MergingClash, SymbolVariableClash, TypeClash };

const char* clash_name(Clash c);

struct MatchOutcome {
    bool ok = false;
    Subst subst;
    Clash reason = Clash::None;

    explicit operator bool() const { return ok; }
    static MatchOutcome success(Subst s) { return {true, std::move(s), Clash::None}; }
    static MatchOutcome failure(Clash c) { return {false, {}, c}; }
};

struct MatchOptions {
    // 0 keeps leftmost decomposition; any other value processes pending
    // equations in a pseudo-random order seeded by it.
    std::uint64_t shuffle_seed = 0;
};

// Syntactic matching of a first-order pattern. Throws Error("malformed-pattern")
// if `l` contains anything but variables and function symbols.
MatchOutcome match_syntactic(const Term& l, const Term& t, const MatchOptions& opt = {});

// Empty on failure, a singleton otherwise.
std::vector<Subst> solution(const Term& l, const Term& t);

// l matches t (l first-order). False for non first-order l.
bool subsumes(const Term& l, const Term& t);

}  // namespace rho
