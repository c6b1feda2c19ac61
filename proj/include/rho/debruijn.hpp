#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rho/gates.hpp"
#include "rho/term.hpp"

namespace rho::db {

// One node type for both sorts: terms (MetaVar .. Closure) and explicit
// substitutions (SMeta .. Comp).
enum class DKind {
    MetaVar,
    Index,
    Fun,
    Set,
    Rule,     // lhs ->n rhs, n binders
    App,
    Closure,  // t<s>
    SMeta,
    Id,
    Shift,
    Lift,
    Cons,     // t . s
    Comp,     // s o t
};

class DB;
using DBs = std::vector<DB>;

class DB {
public:
    DB();  // empty set

    static DB meta(std::string name);
    static DB index(int n);
    static DB fun(std::string sym, DBs args = {});
    static DB set(DBs elems);  // canonicalizes
    static DB rule(DB lhs, DB rhs, int n);
    static DB app(DB fn, DB arg);
    static DB closure(DB t, DB s);
    static DB smeta(std::string name);
    static DB id();
    static DB shift();
    static DB shift(int n);  // n >= 1, right-nested composition of shifts
    static DB lift(DB s);
    static DB lift(DB s, int n);  // n-fold; n = 0 gives s
    static DB cons(DB t, DB s);
    static DB comp(DB s, DB t);
    static DB with_kids(const DB& like, DBs kids);

    DKind kind() const;
    bool is_subst() const { return kind() >= DKind::SMeta; }
    const std::string& name() const;
    int n() const;  // index value or binder count
    const DBs& kids() const;
    const DB& kid(std::size_t i) const { return kids()[i]; }
    std::size_t arity() const { return kids().size(); }
    std::size_t size() const;
    bool is(DKind k) const { return kind() == k; }
    bool is_empty_set() const { return kind() == DKind::Set && kids().empty(); }

    friend int compare(const DB& a, const DB& b);
    friend bool operator==(const DB& a, const DB& b) { return compare(a, b) == 0; }
    friend bool operator!=(const DB& a, const DB& b) { return compare(a, b) != 0; }
    friend bool operator<(const DB& a, const DB& b) { return compare(a, b) < 0; }

private:
    struct Node;
    explicit DB(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static DB make(DKind k, std::string name, int n, DBs kids);
    std::shared_ptr<const Node> n_;
};

using DBTerm = DB;
using ExplicitSubst = DB;

std::string print(const DB& t);

// Named to de Bruijn. Rule binders are the lhs variables in left-to-right
// first-occurrence order, prepended to the referential.
DB to_debruijn(const Term& t, const std::vector<std::string>& referential = {});
// Back to names; binders get names "%b<k>", indices past the referential "%f<k>".
Term from_debruijn(const DB& t, const std::vector<std::string>& referential = {});

// Index matching. On success t1. ... .tn.ID with ti bound to index i.
std::optional<DB> match_db(const DB& l, const DB& t, int n);

// Substitution-calculus rules.
enum class SigmaRule {
    lam, app, clos, vs1, vs2, fv, fvl1, fvl2, rv, rvl1, rvl2, id, set,
    ass, map, sc, sl1, sl2, l1, l2, le, il, ir, li, op,
};
const char* sigma_rule_name(SigmaRule r);

using DPosition = std::vector<int>;

struct SigmaStep {
    SigmaRule rule;
    DPosition position;
    DB after;  // whole term
};

std::optional<DB> sigma_head(const DB& t, SigmaRule* which = nullptr);
// Leftmost-outermost step.
std::optional<SigmaStep> sigma_step(const DB& t);
// Every one-step reduct.
std::vector<SigmaStep> sigma_successors(const DB& t);
DB sigma_normalize(const DB& t, std::size_t* steps = nullptr);

bool has_closure(const DB& t);
// Normal-form shapes of ground substitutions: ID, t.s, shift^n, lift(s) o shift^n.
bool subst_nf_shape(const DB& s);

const DB& db_subterm(const DB& t, const DPosition& p);
DB db_replace(const DB& t, const DPosition& p, const DB& s);

struct SigmaConfig {
    Gate gate = Gate::ConfStrat;
    std::size_t max_steps = 100000;  // base and substitution steps together
};

struct SigmaResult {
    bool normal_form = false;
    DB term;
    std::size_t base_steps = 0;
    std::size_t sigma_steps = 0;
};

// Base evaluation rules interleaved with substitution normalization: the
// term is brought to substitution normal form before every base step.
SigmaResult rhosigma_normalize(const DB& t, const SigmaConfig& cfg = {});

}  // namespace rho::db
