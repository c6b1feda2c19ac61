#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rho/type.hpp"

namespace rho {

// Base class for every error the library reports. `code` is a short
// machine-readable tag such as "invalid-position".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct Profile {
    std::vector<Type> args;
    Type result;
};

class Signature {
public:
    void declare(const std::string& sym, int arity);
    std::optional<int> arity(const std::string& sym) const;
    bool has(const std::string& sym) const { return arity_.count(sym) != 0; }
    const std::map<std::string, int>& symbols() const { return arity_; }

    void add_profile(const std::string& sym, Profile p);
    const std::vector<Profile>& profiles(const std::string& sym) const;
    bool has_profiles() const { return !profiles_.empty(); }

private:
    std::map<std::string, int> arity_;
    std::map<std::string, std::vector<Profile>> profiles_;
};

enum class Kind : std::uint8_t {
    Var,
    Fun,
    Set,
    Rule,
    App,
    First,
    Choice,   // ordered pending choice <..>
    Dc,
    UChoice,  // unordered pending choice <<..>>
    Phi,      // one-argument generic congruence
    Psi,      // all-arguments generic congruence
};

const char* kind_name(Kind k);

class Term;
using Terms = std::vector<Term>;
using VarNames = std::vector<std::string>;  // sorted, unique

// Immutable, shared term. Copies are cheap.
class Term {
public:
    Term();  // the empty set

    static Term var(std::string name);
    static Term fun(std::string sym, Terms args = {});
    static Term set(Terms elems);  // canonicalizes
    static Term empty() { return Term(); }
    static Term rule(Term lhs, Term rhs, std::optional<Context> ctx = std::nullopt);
    static Term app(Term fn, Term arg);
    static Term first(Terms args);
    static Term choice(Terms args);
    static Term dc(Terms args);
    static Term uchoice(Terms args);  // canonicalizes
    static Term phi(Term r);
    static Term psi(Term r);
    // Generic rebuild with the same head as `like` and new children.
    static Term with_children(const Term& like, Terms kids);

    Kind kind() const;
    const std::string& name() const;  // variable name or function symbol
    const Terms& kids() const;
    std::size_t arity() const { return kids().size(); }
    const Term& kid(std::size_t i) const { return kids()[i]; }

    const Term& lhs() const { return kid(0); }
    const Term& rhs() const { return kid(1); }
    const Term& fn() const { return kid(0); }
    const Term& arg() const { return kid(1); }
    const std::optional<Context>& ctx() const;

    bool is(Kind k) const { return kind() == k; }
    bool is_empty_set() const { return kind() == Kind::Set && kids().empty(); }
    bool is_var() const { return kind() == Kind::Var; }
    bool is_fun() const { return kind() == Kind::Fun; }
    bool is_constant() const { return kind() == Kind::Fun && kids().empty(); }

    // Cached analyses.
    const VarNames& fv() const;
    std::size_t size() const;           // node count
    bool first_order() const;           // only Var and Fun nodes
    bool ground_first_order() const;    // only Fun nodes
    std::size_t hash() const;

    const void* identity() const;

    friend int compare(const Term& a, const Term& b);
    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
    friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static Term make(Kind k, std::string name, Terms kids, std::optional<Context> ctx);
    std::shared_ptr<const Node> n_;
};

// Sorts and deduplicates in place under the structural order.
void canonicalize(Terms& elems);

using Position = std::vector<int>;
std::string position_str(const Position& p);  // "eps" or "1.2.1"

const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& s);
std::vector<Position> positions(const Term& t);

std::set<std::string> free_vars(const Term& t);
std::set<std::string> all_vars(const Term& t);  // free and bound
bool is_closed(const Term& t);

// Present variables. `all` stands for the set of every variable.
struct VarSet {
    bool all = false;
    std::set<std::string> vars;
    bool contains(const std::string& x) const { return all || vars.count(x) != 0; }
    friend bool operator==(const VarSet& a, const VarSet& b) {
        return a.all == b.all && (a.all || a.vars == b.vars);
    }
};
VarSet present_vars(const Term& t);

bool is_linear(const Term& t);
bool contains_kind(const Term& t, Kind k);
std::size_t count_kind(const Term& t, Kind k);

// Rule binders: the variables of the left-hand side.
std::set<std::string> binders(const Term& rule);

std::string print(const Term& t);
std::ostream& operator<<(std::ostream& os, const Term& t);

}  // namespace rho
