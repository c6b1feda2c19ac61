#include "rho/term.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

namespace rho {

// ---------------------------------------------------------------- Signature

void Signature::declare(const std::string& sym, int arity) {
    if (arity < 0) throw Error("bad-arity", "negative arity for symbol " + sym);
    auto it = arity_.find(sym);
    if (it != arity_.end() && it->second != arity)
        throw Error("arity-conflict", "symbol " + sym + " declared with arities " +
                                          std::to_string(it->second) + " and " + std::to_string(arity));
    arity_[sym] = arity;
}

std::optional<int> Signature::arity(const std::string& sym) const {
    auto it = arity_.find(sym);
    if (it == arity_.end()) return std::nullopt;
    return it->second;
}

void Signature::add_profile(const std::string& sym, Profile p) {
    auto a = arity(sym);
    if (!a) throw Error("unknown-symbol", "profile for undeclared symbol " + sym);
    if (static_cast<int>(p.args.size()) != *a)
        throw Error("bad-profile", "profile of " + sym + " has " + std::to_string(p.args.size()) +
                                       " argument types, arity is " + std::to_string(*a));
    auto& v = profiles_[sym];
    for (const auto& q : v)
        if (q.result == p.result && q.args == p.args) return;
    v.push_back(std::move(p));
}

const std::vector<Profile>& Signature::profiles(const std::string& sym) const {
    static const std::vector<Profile> none;
    auto it = profiles_.find(sym);
    return it == profiles_.end() ? none : it->second;
}

// --------------------------------------------------------------------- Term

const char* kind_name(Kind k) {
    switch (k) {
    case Kind::Var: return "Var";
    case Kind::Fun: return "Fun";
    case Kind::Set: return "Set";
    case Kind::Rule: return "Rule";
    case Kind::App: return "App";
    case Kind::First: return "First";
    case Kind::Choice: return "Choice";
    case Kind::Dc: return "Dc";
    case Kind::UChoice: return "UChoice";
    case Kind::Phi: return "Phi";
    case Kind::Psi: return "Psi";
    }
    return "?";
}

struct Term::Node {
    Kind kind;
    std::string name;
    Terms kids;
    std::optional<Context> ctx;
    std::shared_ptr<const VarNames> fv;
    std::size_t size;
    bool fo;
    bool gfo;
    std::size_t hash;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const std::shared_ptr<const VarNames>& no_vars() {
    static const auto p = std::make_shared<const VarNames>();
    return p;
}

std::shared_ptr<const VarNames> union_fv(const Terms& kids) {
    std::size_t nonempty = 0;
    for (const auto& k : kids)
        if (!k.fv().empty()) ++nonempty;
    if (nonempty == 0) return no_vars();
    VarNames out;
    for (const auto& k : kids) {
        VarNames merged;
        std::set_union(out.begin(), out.end(), k.fv().begin(), k.fv().end(), std::back_inserter(merged));
        out.swap(merged);
    }
    return std::make_shared<const VarNames>(std::move(out));
}

}  // namespace

Term Term::make(Kind k, std::string name, Terms kids, std::optional<Context> ctx) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->name = std::move(name);
    n->kids = std::move(kids);
    n->ctx = std::move(ctx);
    n->size = 1;
    n->fo = (k == Kind::Var || k == Kind::Fun);
    n->gfo = (k == Kind::Fun);
    std::size_t h = std::hash<int>()(static_cast<int>(k));
    h = mix(h, std::hash<std::string>()(n->name));
    for (const auto& c : n->kids) {
        n->size += c.size();
        n->fo = n->fo && c.first_order();
        n->gfo = n->gfo && c.ground_first_order();
        h = mix(h, c.hash());
    }
    if (n->ctx) {
        for (const auto& [x, ty] : *n->ctx) h = mix(h, std::hash<std::string>()(x + ":" + ty.str()));
    }
    n->hash = h;
    if (k == Kind::Var) {
        n->fv = std::make_shared<const VarNames>(VarNames{n->name});
    } else if (k == Kind::Rule) {
        const auto& r = n->kids[1].fv();
        const auto& l = n->kids[0].fv();
        if (l.empty()) {
            n->fv = n->kids[1].n_->fv;
        } else {
            VarNames out;
            std::set_difference(r.begin(), r.end(), l.begin(), l.end(), std::back_inserter(out));
            n->fv = out.empty() ? no_vars() : std::make_shared<const VarNames>(std::move(out));
        }
    } else if (n->kids.size() == 1) {
        n->fv = n->kids[0].n_->fv;
    } else {
        n->fv = union_fv(n->kids);
    }
    return Term(std::shared_ptr<const Node>(std::move(n)));
}

Term::Term() {
    // bootstrapping: the very first call builds the node directly
    static const std::shared_ptr<const Node> empty = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Set;
        n->fv = no_vars();
        n->size = 1;
        n->fo = false;
        n->gfo = false;
        n->hash = mix(std::hash<int>()(static_cast<int>(Kind::Set)), std::hash<std::string>()(""));
        return std::shared_ptr<const Node>(std::move(n));
    }();
    n_ = empty;
}

Term Term::var(std::string name) { return make(Kind::Var, std::move(name), {}, std::nullopt); }
Term Term::fun(std::string sym, Terms args) { return make(Kind::Fun, std::move(sym), std::move(args), std::nullopt); }

Term Term::set(Terms elems) {
    if (elems.empty()) return Term();
    canonicalize(elems);
    return make(Kind::Set, "", std::move(elems), std::nullopt);
}

Term Term::rule(Term lhs, Term rhs, std::optional<Context> ctx) {
    return make(Kind::Rule, "", Terms{std::move(lhs), std::move(rhs)}, std::move(ctx));
}
Term Term::app(Term fn, Term arg) { return make(Kind::App, "", Terms{std::move(fn), std::move(arg)}, std::nullopt); }

Term Term::first(Terms args) {
    if (args.empty()) throw Error("empty-first", "first needs at least one argument");
    return make(Kind::First, "", std::move(args), std::nullopt);
}
Term Term::choice(Terms args) { return make(Kind::Choice, "", std::move(args), std::nullopt); }
Term Term::dc(Terms args) {
    if (args.empty()) throw Error("empty-dc", "dc needs at least one argument");
    return make(Kind::Dc, "", std::move(args), std::nullopt);
}
Term Term::uchoice(Terms args) {
    canonicalize(args);
    return make(Kind::UChoice, "", std::move(args), std::nullopt);
}
Term Term::phi(Term r) { return make(Kind::Phi, "", Terms{std::move(r)}, std::nullopt); }
Term Term::psi(Term r) { return make(Kind::Psi, "", Terms{std::move(r)}, std::nullopt); }

Term Term::with_children(const Term& like, Terms kids) {
    switch (like.kind()) {
    case Kind::Var: return like;
    case Kind::Fun: return fun(like.name(), std::move(kids));
    case Kind::Set: return set(std::move(kids));
    case Kind::Rule: return rule(std::move(kids[0]), std::move(kids[1]), like.ctx());
    case Kind::App: return app(std::move(kids[0]), std::move(kids[1]));
    case Kind::First: return first(std::move(kids));
    case Kind::Choice: return choice(std::move(kids));
    case Kind::Dc: return dc(std::move(kids));
    case Kind::UChoice: return uchoice(std::move(kids));
    case Kind::Phi: return phi(std::move(kids[0]));
    case Kind::Psi: return psi(std::move(kids[0]));
    }
    return like;
}

Kind Term::kind() const { return n_->kind; }
const std::string& Term::name() const { return n_->name; }
const Terms& Term::kids() const { return n_->kids; }
const std::optional<Context>& Term::ctx() const { return n_->ctx; }
const VarNames& Term::fv() const { return *n_->fv; }
std::size_t Term::size() const { return n_->size; }
bool Term::first_order() const { return n_->fo; }
bool Term::ground_first_order() const { return n_->gfo; }
std::size_t Term::hash() const { return n_->hash; }
const void* Term::identity() const { return n_.get(); }

namespace {
int compare_ctx(const std::optional<Context>& a, const std::optional<Context>& b) {
    if (!a && !b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    if (a->size() != b->size()) return a->size() < b->size() ? -1 : 1;
    for (std::size_t i = 0; i < a->size(); ++i) {
        if (int c = (*a)[i].first.compare((*b)[i].first)) return c < 0 ? -1 : 1;
        if (int c = compare((*a)[i].second, (*b)[i].second)) return c;
    }
    return 0;
}
}  // namespace

int compare(const Term& a, const Term& b) {
    if (a.n_ == b.n_) return 0;
    const auto& x = *a.n_;
    const auto& y = *b.n_;
    if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
    if (int c = x.name.compare(y.name)) return c < 0 ? -1 : 1;
    if (x.kids.size() != y.kids.size()) return x.kids.size() < y.kids.size() ? -1 : 1;
    for (std::size_t i = 0; i < x.kids.size(); ++i)
        if (int c = compare(x.kids[i], y.kids[i])) return c;
    return compare_ctx(x.ctx, y.ctx);
}

bool operator==(const Term& a, const Term& b) {
    if (a.n_ == b.n_) return true;
    if (a.n_->hash != b.n_->hash) return false;
    return compare(a, b) == 0;
}

void canonicalize(Terms& elems) {
    std::sort(elems.begin(), elems.end(), [](const Term& a, const Term& b) { return compare(a, b) < 0; });
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
}

// ---------------------------------------------------------------- Positions

std::string position_str(const Position& p) {
    if (p.empty()) return "eps";
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(p[i]);
    }
    return s;
}

const Term& subterm_at(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (int i : p) {
        if (i < 1 || static_cast<std::size_t>(i) > cur->arity())
            throw Error("invalid-position", "position " + position_str(p) + " does not exist in " + print(t));
        cur = &cur->kid(static_cast<std::size_t>(i - 1));
    }
    return *cur;
}

namespace {
Term replace_rec(const Term& t, const Position& p, std::size_t depth, const Term& s, const Position& full,
                 const Term& root) {
    if (depth == p.size()) return s;
    int i = p[depth];
    if (i < 1 || static_cast<std::size_t>(i) > t.arity())
        throw Error("invalid-position", "position " + position_str(full) + " does not exist in " + print(root));
    Terms kids = t.kids();
    kids[static_cast<std::size_t>(i - 1)] = replace_rec(t.kid(static_cast<std::size_t>(i - 1)), p, depth + 1, s, full, root);
    return Term::with_children(t, std::move(kids));
}

void positions_rec(const Term& t, Position& cur, std::vector<Position>& out) {
    out.push_back(cur);
    for (std::size_t i = 0; i < t.arity(); ++i) {
        cur.push_back(static_cast<int>(i + 1));
        positions_rec(t.kid(i), cur, out);
        cur.pop_back();
    }
}
}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& s) { return replace_rec(t, p, 0, s, p, t); }

std::vector<Position> positions(const Term& t) {
    std::vector<Position> out;
    Position cur;
    positions_rec(t, cur, out);
    return out;
}

// ---------------------------------------------------------------- Variables

std::set<std::string> free_vars(const Term& t) { return {t.fv().begin(), t.fv().end()}; }

namespace {
void all_vars_rec(const Term& t, std::set<std::string>& out) {
    if (t.is_var()) out.insert(t.name());
    for (const auto& k : t.kids()) all_vars_rec(k, out);
}
}  // namespace

std::set<std::string> all_vars(const Term& t) {
    std::set<std::string> out;
    all_vars_rec(t, out);
    return out;
}

bool is_closed(const Term& t) { return t.fv().empty(); }

std::set<std::string> binders(const Term& rule) { return free_vars(rule.lhs()); }

VarSet present_vars(const Term& t) {
    switch (t.kind()) {
    case Kind::Var: return VarSet{false, {t.name()}};
    case Kind::Set:
    case Kind::UChoice: {
        // intersection; the empty set is the top element
        VarSet acc{true, {}};
        for (const auto& k : t.kids()) {
            VarSet v = present_vars(k);
            if (v.all) continue;
            if (acc.all) {
                acc = std::move(v);
            } else {
                std::set<std::string> both;
                std::set_intersection(acc.vars.begin(), acc.vars.end(), v.vars.begin(), v.vars.end(),
                                      std::inserter(both, both.end()));
                acc.vars.swap(both);
            }
        }
        return acc;
    }
    case Kind::Rule: {
        VarSet r = present_vars(t.rhs());
        if (r.all) return r;
        for (const auto& x : t.lhs().fv()) r.vars.erase(x);
        return r;
    }
    default: {
        // function symbols, applications, and the strategy operators: union
        VarSet acc;
        for (const auto& k : t.kids()) {
            VarSet v = present_vars(k);
            if (v.all) return v;
            acc.vars.insert(v.vars.begin(), v.vars.end());
        }
        return acc;
    }
    }
}

namespace {
bool linear_rec(const Term& t, std::set<std::string>& seen) {
    if (t.is_var()) return seen.insert(t.name()).second;
    for (const auto& k : t.kids())
        if (!linear_rec(k, seen)) return false;
    return true;
}
}  // namespace

bool is_linear(const Term& t) {
    std::set<std::string> seen;
    return linear_rec(t, seen);
}

bool contains_kind(const Term& t, Kind k) {
    if (t.kind() == k) return true;
    for (const auto& c : t.kids())
        if (contains_kind(c, k)) return true;
    return false;
}

std::size_t count_kind(const Term& t, Kind k) {
    std::size_t n = t.kind() == k ? 1 : 0;
    for (const auto& c : t.kids()) n += count_kind(c, k);
    return n;
}

// ----------------------------------------------------------------- Printing

namespace {

void print_rec(std::ostream& os, const Term& t, const Context* annot);

std::string print_str(const Term& t, const Context* annot) {
    std::ostringstream os;
    print_rec(os, t, annot);
    return os.str();
}

void print_list(std::ostream& os, const Terms& ts, const Context* annot) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) os << ", ";
        print_rec(os, ts[i], annot);
    }
}

void print_angle(std::ostream& os, const Terms& ts, const char* open, const char* close) {
    std::string body;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) body += ", ";
        body += print_str(ts[i], nullptr);
    }
    os << open;
    if (!body.empty() && body.front() == '<') os << ' ';
    os << body;
    if (!body.empty() && body.back() == '>') os << ' ';
    os << close;
}

void print_rec(std::ostream& os, const Term& t, const Context* annot) {
    switch (t.kind()) {
    case Kind::Var:
        os << t.name();
        if (annot) {
            if (const Type* ty = lookup(*annot, t.name())) {
                os << ':';
                if (ty->is_arrow())
                    os << '(' << ty->str() << ')';
                else
                    os << ty->str();
            }
        }
        return;
    case Kind::Fun:
        os << t.name();
        if (t.arity() > 0) {
            os << '(';
            print_list(os, t.kids(), annot);
            os << ')';
        }
        return;
    case Kind::Set:
        os << '{';
        print_list(os, t.kids(), nullptr);
        os << '}';
        return;
    case Kind::Rule: {
        const Context* la = t.ctx() ? &*t.ctx() : nullptr;
        bool paren = t.lhs().is(Kind::Rule);
        if (paren) os << '(';
        print_rec(os, t.lhs(), la);
        if (paren) os << ')';
        os << " -> ";
        print_rec(os, t.rhs(), nullptr);
        return;
    }
    case Kind::App:
        os << '[';
        print_rec(os, t.fn(), nullptr);
        os << "](";
        print_rec(os, t.arg(), nullptr);
        os << ')';
        return;
    case Kind::First:
        os << "first(";
        print_list(os, t.kids(), nullptr);
        os << ')';
        return;
    case Kind::Dc:
        os << "dc(";
        print_list(os, t.kids(), nullptr);
        os << ')';
        return;
    case Kind::Choice: print_angle(os, t.kids(), "<", ">"); return;
    case Kind::UChoice: print_angle(os, t.kids(), "<<", ">>"); return;
    case Kind::Phi:
        os << "phi(";
        print_rec(os, t.kid(0), nullptr);
        os << ')';
        return;
    case Kind::Psi:
        os << "psi(";
        print_rec(os, t.kid(0), nullptr);
        os << ')';
        return;
    }
}

}  // namespace

std::string print(const Term& t) { return print_str(t, nullptr); }

std::ostream& operator<<(std::ostream& os, const Term& t) {
    print_rec(os, t, nullptr);
    return os;
}

}  // namespace rho
