#pragma once

#include <map>
#include <set>
#include <string>

#include "rho/term.hpp"

namespace rho {

// Finite mapping from variable names to terms, applied simultaneously.
using Subst = std::map<std::string, Term>;

std::set<std::string> subst_domain(const Subst& s);
std::set<std::string> subst_range_vars(const Subst& s);  // union of FV over the range
std::string print(const Subst& s);                       // "<x/a, y/b>"

// Fresh variable names: the reserved prefix "_" plus a counter. A supply
// belongs to one evaluation session.
class NameSupply {
public:
    static constexpr char prefix = '_';

    explicit NameSupply(unsigned long start = 1) : next_(start) {}
    std::string fresh(const std::set<std::string>& avoid);
    unsigned long peek() const { return next_; }

private:
    unsigned long next_;
};

bool is_reserved_name(const std::string& x);

// Renames every rule-bound variable that occurs in `avoid`.
Term alpha_rename(const Term& t, const std::set<std::string>& avoid, NameSupply& names);

// Capture-avoiding simultaneous substitution.
Term apply_subst(const Subst& s, const Term& t, NameSupply& names);
Term apply_subst(const Subst& s, const Term& t);  // uses a thread-local supply

// Plain replacement of every variable occurrence; binders are ignored.
Term graft(const Subst& s, const Term& t);

// Renames bound variables to canonical names derived from binder depth and
// first-occurrence order. Alpha-equivalent terms map to equal terms (up to
// set-patterns in rule left-hand sides).
Term alpha_normalize(const Term& t);
bool alpha_equal(const Term& a, const Term& b);

}  // namespace rho
