#include "rho/debruijn.hpp"

#include <algorithm>
#include <sstream>

namespace rho::db {

struct DB::Node {
    DKind kind;
    std::string name;
    int n = 0;
    DBs kids;
    std::size_t size = 1;
    bool closure = false;  // a Closure node occurs inside
};

DB DB::make(DKind k, std::string name, int n, DBs kids) {
    auto node = std::make_shared<Node>();
    node->kind = k;
    node->name = std::move(name);
    node->n = n;
    node->closure = k == DKind::Closure;
    for (const auto& c : kids) {
        node->size += c.size();
        node->closure = node->closure || c.n_->closure;
    }
    node->kids = std::move(kids);
    return DB(std::move(node));
}

DB::DB() {
    static const DB empty = make(DKind::Set, "", 0, {});
    n_ = empty.n_;
}

DB DB::meta(std::string name) { return make(DKind::MetaVar, std::move(name), 0, {}); }

DB DB::index(int n) {
    if (n < 1) throw Error("invalid-index", "de Bruijn indices start at 1");
    return make(DKind::Index, "", n, {});
}

DB DB::fun(std::string sym, DBs args) { return make(DKind::Fun, std::move(sym), 0, std::move(args)); }

DB DB::set(DBs elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (elems.empty()) return DB();
    return make(DKind::Set, "", 0, std::move(elems));
}

DB DB::rule(DB lhs, DB rhs, int n) { return make(DKind::Rule, "", n, {std::move(lhs), std::move(rhs)}); }
DB DB::app(DB fn, DB arg) { return make(DKind::App, "", 0, {std::move(fn), std::move(arg)}); }
DB DB::closure(DB t, DB s) { return make(DKind::Closure, "", 0, {std::move(t), std::move(s)}); }
DB DB::smeta(std::string name) { return make(DKind::SMeta, std::move(name), 0, {}); }

DB DB::id() {
    static const DB v = make(DKind::Id, "", 0, {});
    return v;
}

DB DB::shift() {
    static const DB v = make(DKind::Shift, "", 0, {});
    return v;
}

DB DB::shift(int n) {
    if (n < 1) throw Error("invalid-shift", "shift power must be at least 1");
    DB s = shift();
    for (int i = 1; i < n; ++i) s = comp(shift(), s);
    return s;
}

DB DB::lift(DB s) { return make(DKind::Lift, "", 0, {std::move(s)}); }

DB DB::lift(DB s, int n) {
    for (int i = 0; i < n; ++i) s = lift(std::move(s));
    return s;
}

DB DB::cons(DB t, DB s) { return make(DKind::Cons, "", 0, {std::move(t), std::move(s)}); }
DB DB::comp(DB s, DB t) { return make(DKind::Comp, "", 0, {std::move(s), std::move(t)}); }

DB DB::with_kids(const DB& like, DBs kids) {
    if (like.kind() == DKind::Set) return set(std::move(kids));
    return make(like.kind(), like.name(), like.n(), std::move(kids));
}

DKind DB::kind() const { return n_->kind; }
const std::string& DB::name() const { return n_->name; }
int DB::n() const { return n_->n; }
const DBs& DB::kids() const { return n_->kids; }
std::size_t DB::size() const { return n_->size; }

int compare(const DB& a, const DB& b) {
    if (a.n_ == b.n_) return 0;
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    if (int c = a.name().compare(b.name())) return c < 0 ? -1 : 1;
    if (a.n() != b.n()) return a.n() < b.n() ? -1 : 1;
    if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (int c = compare(a.kid(i), b.kid(i))) return c;
    return 0;
}

bool has_closure(const DB& t) { return t.kind() == DKind::Closure || std::any_of(t.kids().begin(), t.kids().end(), has_closure); }

namespace {

int shift_power(const DB& s) {
    if (s.is(DKind::Shift)) return 1;
    if (s.is(DKind::Comp) && s.kid(0).is(DKind::Shift)) {
        int k = shift_power(s.kid(1));
        return k ? k + 1 : 0;
    }
    return 0;
}

void print_rec(std::ostream& os, const DB& t) {
    auto list = [&](const DBs& ks) {
        for (std::size_t i = 0; i < ks.size(); ++i) {
            if (i) os << ", ";
            print_rec(os, ks[i]);
        }
    };
    switch (t.kind()) {
        case DKind::MetaVar:
        case DKind::SMeta: os << '?' << t.name(); return;
        case DKind::Index: os << t.n(); return;
        case DKind::Fun:
            os << t.name();
            if (t.arity()) {
                os << '(';
                list(t.kids());
                os << ')';
            }
            return;
        case DKind::Set:
            os << '{';
            list(t.kids());
            os << '}';
            return;
        case DKind::Rule:
            if (t.kid(0).is(DKind::Rule)) os << '(';
            print_rec(os, t.kid(0));
            if (t.kid(0).is(DKind::Rule)) os << ')';
            os << " ->" << t.n() << ' ';
            print_rec(os, t.kid(1));
            return;
        case DKind::App:
            os << '[';
            print_rec(os, t.kid(0));
            os << "](";
            print_rec(os, t.kid(1));
            os << ')';
            return;
        case DKind::Closure:
            os << '(';
            print_rec(os, t.kid(0));
            os << ")[";
            print_rec(os, t.kid(1));
            os << ']';
            return;
        case DKind::Id: os << "id"; return;
        case DKind::Shift: os << '^'; return;
        case DKind::Lift:
            os << "lift(";
            print_rec(os, t.kid(0));
            os << ')';
            return;
        case DKind::Cons:
            print_rec(os, t.kid(0));
            os << " . ";
            print_rec(os, t.kid(1));
            return;
        case DKind::Comp: {
            if (int k = shift_power(t)) {
                os << "^" << k;
                return;
            }
            os << '(';
            print_rec(os, t.kid(0));
            os << " o ";
            print_rec(os, t.kid(1));
            os << ')';
            return;
        }
    }
}

void first_occurrences(const Term& t, std::vector<std::string>& out) {
    if (t.is_var()) {
        if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
        return;
    }
    for (const auto& k : t.kids()) first_occurrences(k, out);
}

DB to_rec(const Term& t, const std::vector<std::string>& ref) {
    switch (t.kind()) {
        case Kind::Var: {
            auto it = std::find(ref.begin(), ref.end(), t.name());
            if (it == ref.end()) throw Error("unbound-variable", "variable " + t.name() + " is not in the referential");
            return DB::index(static_cast<int>(it - ref.begin()) + 1);
        }
        case Kind::Fun: {
            DBs args;
            for (const auto& k : t.kids()) args.push_back(to_rec(k, ref));
            return DB::fun(t.name(), std::move(args));
        }
        case Kind::Set: {
            DBs es;
            for (const auto& k : t.kids()) es.push_back(to_rec(k, ref));
            return DB::set(std::move(es));
        }
        case Kind::App: return DB::app(to_rec(t.fn(), ref), to_rec(t.arg(), ref));
        case Kind::Rule: {
            if (!t.lhs().first_order())
                throw Error("unsupported-construct", "rule with a non first-order left-hand side: " + print(t));
            std::vector<std::string> bound;
            first_occurrences(t.lhs(), bound);
            std::vector<std::string> inner = bound;
            inner.insert(inner.end(), ref.begin(), ref.end());
            return DB::rule(to_rec(t.lhs(), inner), to_rec(t.rhs(), inner), static_cast<int>(bound.size()));
        }
        default:
            throw Error("unsupported-construct", std::string("no de Bruijn form for ") + kind_name(t.kind()));
    }
}

Term from_rec(const DB& t, const std::vector<std::string>& ref, int& counter) {
    switch (t.kind()) {
        case DKind::MetaVar: return Term::var("?" + t.name());
        case DKind::Index: {
            auto i = static_cast<std::size_t>(t.n());
            if (i <= ref.size()) return Term::var(ref[i - 1]);
            return Term::var("%f" + std::to_string(i - ref.size()));
        }
        case DKind::Fun: {
            Terms args;
            for (const auto& k : t.kids()) args.push_back(from_rec(k, ref, counter));
            return Term::fun(t.name(), std::move(args));
        }
        case DKind::Set: {
            Terms es;
            for (const auto& k : t.kids()) es.push_back(from_rec(k, ref, counter));
            return Term::set(std::move(es));
        }
        case DKind::App: return Term::app(from_rec(t.kid(0), ref, counter), from_rec(t.kid(1), ref, counter));
        case DKind::Rule: {
            std::vector<std::string> inner;
            for (int i = 0; i < t.n(); ++i) inner.push_back("%b" + std::to_string(++counter));
            inner.insert(inner.end(), ref.begin(), ref.end());
            return Term::rule(from_rec(t.kid(0), inner, counter), from_rec(t.kid(1), inner, counter));
        }
        default:
            throw Error("unsupported-construct", "no named form for " + print(t));
    }
}

bool match_rec(const DB& l, const DB& t, std::vector<std::optional<DB>>& b) {
    if (l.is(DKind::Index)) {
        auto i = static_cast<std::size_t>(l.n());
        if (i > b.size()) return false;
        auto& slot = b[i - 1];
        if (slot) return *slot == t;
        slot = t;
        return true;
    }
    if (!l.is(DKind::Fun) || !t.is(DKind::Fun) || l.name() != t.name() || l.arity() != t.arity()) return false;
    for (std::size_t i = 0; i < l.arity(); ++i)
        if (!match_rec(l.kid(i), t.kid(i), b)) return false;
    return true;
}

using Heads = std::vector<std::pair<SigmaRule, DB>>;

void heads(const DB& t, Heads& out, bool all) {
    auto add = [&](SigmaRule r, DB v) { out.emplace_back(r, std::move(v)); };
    auto done = [&] { return !all && !out.empty(); };
    switch (t.kind()) {
        case DKind::Closure: {
            const DB& u = t.kid(0);
            const DB& s = t.kid(1);
            switch (u.kind()) {
                case DKind::Rule: {
                    DB ls = DB::lift(s, u.n());
                    add(SigmaRule::lam, DB::rule(DB::closure(u.kid(0), ls), DB::closure(u.kid(1), ls), u.n()));
                    break;
                }
                case DKind::App:
                    add(SigmaRule::app, DB::app(DB::closure(u.kid(0), s), DB::closure(u.kid(1), s)));
                    break;
                case DKind::Closure:
                    add(SigmaRule::clos, DB::closure(u.kid(0), DB::comp(u.kid(1), s)));
                    break;
                case DKind::Set: {
                    DBs es;
                    for (const auto& e : u.kids()) es.push_back(DB::closure(e, s));
                    add(SigmaRule::set, DB::set(std::move(es)));
                    break;
                }
                case DKind::Fun: {
                    DBs args;
                    for (const auto& a : u.kids()) args.push_back(DB::closure(a, s));
                    add(SigmaRule::op, DB::fun(u.name(), std::move(args)));
                    break;
                }
                case DKind::Index: {
                    int k = u.n();
                    if (s.is(DKind::Shift)) add(SigmaRule::vs1, DB::index(k + 1));
                    if (s.is(DKind::Comp) && s.kid(0).is(DKind::Shift))
                        add(SigmaRule::vs2, DB::closure(DB::index(k + 1), s.kid(1)));
                    if (k == 1) {
                        if (s.is(DKind::Cons)) add(SigmaRule::fv, s.kid(0));
                        if (s.is(DKind::Lift)) add(SigmaRule::fvl1, DB::index(1));
                        if (s.is(DKind::Comp) && s.kid(0).is(DKind::Lift))
                            add(SigmaRule::fvl2, DB::closure(DB::index(1), s.kid(1)));
                    } else {
                        if (s.is(DKind::Cons)) add(SigmaRule::rv, DB::closure(DB::index(k - 1), s.kid(1)));
                        if (s.is(DKind::Lift))
                            add(SigmaRule::rvl1, DB::closure(DB::index(k - 1), DB::comp(s.kid(0), DB::shift())));
                        if (s.is(DKind::Comp) && s.kid(0).is(DKind::Lift))
                            add(SigmaRule::rvl2, DB::closure(DB::index(k - 1),
                                                             DB::comp(s.kid(0).kid(0), DB::comp(DB::shift(), s.kid(1)))));
                    }
                    break;
                }
                default:
                    break;
            }
            if (done()) return;
            if (s.is(DKind::Id)) add(SigmaRule::id, u);
            return;
        }
        case DKind::Comp: {
            const DB& a = t.kid(0);
            const DB& b = t.kid(1);
            if (a.is(DKind::Comp)) add(SigmaRule::ass, DB::comp(a.kid(0), DB::comp(a.kid(1), b)));
            if (done()) return;
            if (a.is(DKind::Cons)) add(SigmaRule::map, DB::cons(DB::closure(a.kid(0), b), DB::comp(a.kid(1), b)));
            if (done()) return;
            if (a.is(DKind::Shift)) {
                if (b.is(DKind::Cons)) add(SigmaRule::sc, b.kid(1));
                if (b.is(DKind::Lift)) add(SigmaRule::sl1, DB::comp(b.kid(0), DB::shift()));
                if (b.is(DKind::Comp) && b.kid(0).is(DKind::Lift))
                    add(SigmaRule::sl2, DB::comp(b.kid(0).kid(0), DB::comp(DB::shift(), b.kid(1))));
            }
            if (done()) return;
            if (a.is(DKind::Lift)) {
                if (b.is(DKind::Lift)) add(SigmaRule::l1, DB::lift(DB::comp(a.kid(0), b.kid(0))));
                if (b.is(DKind::Comp) && b.kid(0).is(DKind::Lift))
                    add(SigmaRule::l2, DB::comp(DB::lift(DB::comp(a.kid(0), b.kid(0).kid(0))), b.kid(1)));
                if (b.is(DKind::Cons)) add(SigmaRule::le, DB::cons(b.kid(0), DB::comp(a.kid(0), b.kid(1))));
            }
            if (done()) return;
            if (a.is(DKind::Id)) add(SigmaRule::il, b);
            if (done()) return;
            if (b.is(DKind::Id)) add(SigmaRule::ir, a);
            return;
        }
        case DKind::Lift:
            if (t.kid(0).is(DKind::Id)) add(SigmaRule::li, DB::id());
            return;
        default:
            return;
    }
}

bool sigma_find(const DB& t, DPosition& p, SigmaRule& r, DB& out) {
    Heads h;
    heads(t, h, false);
    if (!h.empty()) {
        r = h.front().first;
        out = h.front().second;
        return true;
    }
    for (std::size_t i = 0; i < t.arity(); ++i) {
        const DB& k = t.kid(i);
        if (!k.is_subst() && !has_closure(k)) continue;
        p.push_back(static_cast<int>(i + 1));
        if (sigma_find(k, p, r, out)) return true;
        p.pop_back();
    }
    return false;
}

void sigma_all(const DB& root, const DB& t, DPosition& p, std::vector<SigmaStep>& out) {
    Heads h;
    heads(t, h, true);
    for (auto& [r, v] : h) out.push_back(SigmaStep{r, p, db_replace(root, p, v)});
    for (std::size_t i = 0; i < t.arity(); ++i) {
        p.push_back(static_cast<int>(i + 1));
        sigma_all(root, t.kid(i), p, out);
        p.pop_back();
    }
}

DB nf(const DB& t, std::size_t& steps) {
    if (!t.is_subst() && !has_closure(t)) return t;
    DBs kids;
    kids.reserve(t.arity());
    for (const auto& k : t.kids()) kids.push_back(nf(k, steps));
    DB u = DB::with_kids(t, std::move(kids));
    Heads h;
    heads(u, h, false);
    if (h.empty()) return u;
    ++steps;
    return nf(h.front().second, steps);
}

// ------------------------------------------------------------ base rules

enum class Base { Fire, Congruence, Congruence_fail, Distrib, Batch, Switch_R, OpOnSet, Flat };

struct BaseRedex {
    Base rule;
    std::size_t index = 0;
};

class BaseEval {
public:
    explicit BaseEval(Gate g) : gate_(g) {}

    std::optional<BaseRedex> head(const DB& t) const {
        switch (t.kind()) {
            case DKind::App: {
                const DB& u = t.kid(0);
                const DB& v = t.kid(1);
                if (v.is(DKind::Set)) return BaseRedex{Base::Batch};
                if (u.is(DKind::Set)) return BaseRedex{Base::Distrib};
                if (u.is(DKind::Rule) && fire_ok(t)) return BaseRedex{Base::Fire};
                if (u.is(DKind::Fun) && v.is(DKind::Fun)) {
                    bool same = u.name() == v.name() && u.arity() == v.arity();
                    return BaseRedex{same ? Base::Congruence : Base::Congruence_fail};
                }
                return std::nullopt;
            }
            case DKind::Rule:
                if (t.kid(1).is(DKind::Set)) return BaseRedex{Base::Switch_R};
                return std::nullopt;
            case DKind::Fun:
                for (std::size_t i = 0; i < t.arity(); ++i)
                    if (t.kid(i).is(DKind::Set)) return BaseRedex{Base::OpOnSet, i};
                return std::nullopt;
            case DKind::Set:
                for (const auto& k : t.kids())
                    if (k.is(DKind::Set)) return BaseRedex{Base::Flat};
                return std::nullopt;
            default:
                return std::nullopt;
        }
    }

    DB apply(const DB& t, const BaseRedex& r) const {
        DBs out;
        switch (r.rule) {
            case Base::Fire: {
                const DB& rule = t.kid(0);
                auto s = match_db(rule.kid(0), t.kid(1), rule.n());
                if (!s) return DB();
                return DB::set({DB::closure(rule.kid(1), *s)});
            }
            case Base::Congruence: {
                DBs args;
                for (std::size_t i = 0; i < t.kid(0).arity(); ++i)
                    args.push_back(DB::app(t.kid(0).kid(i), t.kid(1).kid(i)));
                return DB::set({DB::fun(t.kid(0).name(), std::move(args))});
            }
            case Base::Congruence_fail: return DB();
            case Base::Distrib:
                for (const auto& u : t.kid(0).kids()) out.push_back(DB::app(u, t.kid(1)));
                return DB::set(std::move(out));
            case Base::Batch:
                for (const auto& v : t.kid(1).kids()) out.push_back(DB::app(t.kid(0), v));
                return DB::set(std::move(out));
            case Base::Switch_R:
                for (const auto& v : t.kid(1).kids()) out.push_back(DB::rule(t.kid(0), v, t.n()));
                return DB::set(std::move(out));
            case Base::OpOnSet:
                for (const auto& e : t.kid(r.index).kids()) {
                    DBs args = t.kids();
                    args[r.index] = e;
                    out.push_back(DB::fun(t.name(), std::move(args)));
                }
                return DB::set(std::move(out));
            case Base::Flat:
                for (const auto& k : t.kids()) {
                    if (k.is(DKind::Set))
                        out.insert(out.end(), k.kids().begin(), k.kids().end());
                    else
                        out.push_back(k);
                }
                return DB::set(std::move(out));
        }
        return t;
    }

    bool find_weak(const DB& t, DPosition& p, BaseRedex& r) const {
        if (auto h = head(t)) {
            r = *h;
            return true;
        }
        auto kid = [&](std::size_t i) {
            p.push_back(static_cast<int>(i + 1));
            if (find_weak(t.kid(i), p, r)) return true;
            p.pop_back();
            return false;
        };
        switch (t.kind()) {
            case DKind::Rule: return false;
            case DKind::App: return kid(1) || kid(0);
            default:
                for (std::size_t i = 0; i < t.arity(); ++i)
                    if (kid(i)) return true;
                return false;
        }
    }

    bool find_strong(const DB& t, DPosition& p, BaseRedex& r) const {
        auto kid = [&](std::size_t i, bool any) {
            p.push_back(static_cast<int>(i + 1));
            if (any ? find_any(t.kid(i), p, r) : find_strong(t.kid(i), p, r)) return true;
            p.pop_back();
            return false;
        };
        switch (t.kind()) {
            case DKind::Rule: return kid(0, true) || kid(1, true);
            case DKind::App: return kid(1, false) || kid(0, false);
            default:
                for (std::size_t i = 0; i < t.arity(); ++i)
                    if (kid(i, false)) return true;
                return false;
        }
    }

    bool find_any(const DB& t, DPosition& p, BaseRedex& r) const { return find_weak(t, p, r) || find_strong(t, p, r); }

private:
    bool fire_ok(const DB& app) const {
        if (gate_ == Gate::None) return true;
        // gate predicates are name-independent: check them on a named copy
        Term named = from_debruijn(app);
        return fire_allowed(gate_, named.fn().lhs(), named.fn().rhs(), named.arg());
    }

    Gate gate_;
};

}  // namespace

std::string print(const DB& t) {
    std::ostringstream os;
    print_rec(os, t);
    return os.str();
}

DB to_debruijn(const Term& t, const std::vector<std::string>& referential) { return to_rec(t, referential); }

Term from_debruijn(const DB& t, const std::vector<std::string>& referential) {
    int counter = 0;
    return from_rec(t, referential, counter);
}

std::optional<DB> match_db(const DB& l, const DB& t, int n) {
    std::vector<std::optional<DB>> b(static_cast<std::size_t>(std::max(n, 0)));
    if (!match_rec(l, t, b)) return std::nullopt;
    DB s = DB::id();
    for (int i = n; i >= 1; --i) {
        const auto& slot = b[static_cast<std::size_t>(i - 1)];
        s = DB::cons(slot ? *slot : DB::index(i), s);
    }
    return s;
}

const char* sigma_rule_name(SigmaRule r) {
    static const char* names[] = {"lam", "app", "clos", "vs1", "vs2", "fv", "fvl1", "fvl2", "rv",
                                  "rvl1", "rvl2", "id", "set", "ass", "map", "sc", "sl1", "sl2",
                                  "l1", "l2", "le", "il", "ir", "li", "op"};
    return names[static_cast<int>(r)];
}

std::optional<DB> sigma_head(const DB& t, SigmaRule* which) {
    Heads h;
    heads(t, h, false);
    if (h.empty()) return std::nullopt;
    if (which) *which = h.front().first;
    return h.front().second;
}

std::optional<SigmaStep> sigma_step(const DB& t) {
    DPosition p;
    SigmaRule r = SigmaRule::id;
    DB v;
    if (!sigma_find(t, p, r, v)) return std::nullopt;
    return SigmaStep{r, p, db_replace(t, p, v)};
}

std::vector<SigmaStep> sigma_successors(const DB& t) {
    std::vector<SigmaStep> out;
    DPosition p;
    sigma_all(t, t, p, out);
    return out;
}

DB sigma_normalize(const DB& t, std::size_t* steps) {
    std::size_t n = 0;
    DB out = nf(t, n);
    if (steps) *steps += n;
    return out;
}

bool subst_nf_shape(const DB& s) {
    switch (s.kind()) {
        case DKind::Id:
        case DKind::Shift:
            return true;
        case DKind::Cons:
            return !has_closure(s.kid(0)) && subst_nf_shape(s.kid(1));
        case DKind::Lift:
            return !s.kid(0).is(DKind::Id) && subst_nf_shape(s.kid(0));
        case DKind::Comp:
            if (shift_power(s)) return true;
            return s.kid(0).is(DKind::Lift) && subst_nf_shape(s.kid(0)) && shift_power(s.kid(1)) > 0;
        default:
            return false;
    }
}

const DB& db_subterm(const DB& t, const DPosition& p) {
    const DB* cur = &t;
    for (int i : p) {
        if (i < 1 || static_cast<std::size_t>(i) > cur->arity())
            throw Error("invalid-position", "no such position in " + print(t));
        cur = &cur->kid(static_cast<std::size_t>(i - 1));
    }
    return *cur;
}

namespace {
DB replace_rec(const DB& t, const DPosition& p, std::size_t d, const DB& s) {
    if (d == p.size()) return s;
    auto i = static_cast<std::size_t>(p[d] - 1);
    if (p[d] < 1 || i >= t.arity()) throw Error("invalid-position", "no such position in " + print(t));
    DBs kids = t.kids();
    kids[i] = replace_rec(t.kid(i), p, d + 1, s);
    return DB::with_kids(t, std::move(kids));
}
}  // namespace

DB db_replace(const DB& t, const DPosition& p, const DB& s) { return replace_rec(t, p, 0, s); }

SigmaResult rhosigma_normalize(const DB& t, const SigmaConfig& cfg) {
    BaseEval ev(cfg.gate);
    SigmaResult res;
    res.term = t;
    for (;;) {
        res.term = sigma_normalize(res.term, &res.sigma_steps);
        DPosition p;
        BaseRedex r{Base::Fire};
        if (!ev.find_any(res.term, p, r)) {
            res.normal_form = true;
            return res;
        }
        if (res.base_steps + res.sigma_steps >= cfg.max_steps) return res;
        res.term = db_replace(res.term, p, ev.apply(db_subterm(res.term, p), r));
        ++res.base_steps;
    }
}

}  // namespace rho::db
