#include "rho/evaluator.hpp"

#include <deque>
#include <sstream>
#include <unordered_map>

namespace rho {

const char* rule_name(EvalRule r) {
    switch (r) {
        case EvalRule::Fire: return "Fire";
        case EvalRule::Congruence: return "Congruence";
        case EvalRule::Congruence_fail: return "Congruence_fail";
        case EvalRule::Distrib: return "Distrib";
        case EvalRule::Batch: return "Batch";
        case EvalRule::Switch_L: return "Switch_L";
        case EvalRule::Switch_R: return "Switch_R";
        case EvalRule::OpOnSet: return "OpOnSet";
        case EvalRule::Flat: return "Flat";
        case EvalRule::First: return "First";
        case EvalRule::First_fail: return "First_fail";
        case EvalRule::First_success: return "First_success";
        case EvalRule::First_single: return "First_single";
        case EvalRule::DC: return "DC";
        case EvalRule::DC_fail: return "DC_fail";
        case EvalRule::DC_success: return "DC_success";
        case EvalRule::DC_single: return "DC_single";
        case EvalRule::Traverse_seq: return "Traverse_seq";
        case EvalRule::Traverse_par: return "Traverse_par";
    }
    return "?";
}

const char* rule_set_name(RuleSet r) {
    switch (r) {
        case RuleSet::Core: return "core";
        case RuleSet::CoreFirst: return "core+first";
        case RuleSet::CoreFirstTraverse: return "core+first+traverse";
    }
    return "?";
}

RuleSet rule_set_for(const Term& t) {
    for (Kind k : {Kind::First, Kind::Choice, Kind::Dc, Kind::UChoice, Kind::Phi, Kind::Psi})
        if (contains_kind(t, k)) return RuleSet::CoreFirstTraverse;
    return RuleSet::Core;
}

Gate effective_gate(Gate g, RuleSet rs) {
    if (rs == RuleSet::Core) return g;
    switch (g) {
        case Gate::ConfStrat:
        case Gate::ConfStratLin:
        case Gate::ConfStratStable:
            return Gate::Prefilter;
        default:
            return g;
    }
}

std::string format_step(std::size_t n, const StepInfo& s) {
    std::ostringstream os;
    os << "step " << n << ": " << rule_name(s.rule) << " @ " << position_str(s.position) << " : "
       << print(s.before) << " ==> " << print(s.after);
    return os.str();
}

Evaluator::Evaluator(ReductionConfig cfg) : cfg_(std::move(cfg)), gate_(effective_gate(cfg_.gate, cfg_.rule_set)) {
    if (cfg_.max_steps == 0) throw Error("invalid-config", "max_steps must be at least 1");
}

namespace {

bool fire_ok(Gate g, const Term& rule, const Term& subject, bool ignore_gate) {
    if (!rule.lhs().first_order()) return false;
    return ignore_gate || fire_allowed(g, rule.lhs(), rule.rhs(), subject);
}

}  // namespace

// The radical test inside First_success may ignore the gate; the normal
// search never does.
static void collect_heads(const Term& t, Gate g, RuleSet rs, bool all, bool ignore_gate,
                          const Evaluator& ev, std::vector<HeadRedex>& out) {
    bool first_rules = rs != RuleSet::Core;
    bool traverse = rs == RuleSet::CoreFirstTraverse;
    auto done = [&] { return !all && !out.empty(); };
    switch (t.kind()) {
        case Kind::App: {
            const Term& u = t.fn();
            const Term& v = t.arg();
            if (v.is(Kind::Set)) out.push_back({EvalRule::Batch});
            if (done()) return;
            if (u.is(Kind::Set)) out.push_back({EvalRule::Distrib});
            if (done()) return;
            switch (u.kind()) {
                case Kind::Rule:
                    if (fire_ok(g, u, v, ignore_gate)) out.push_back({EvalRule::Fire});
                    break;
                case Kind::Fun:
                    if (v.is_fun()) {
                        bool same = u.name() == v.name() && u.arity() == v.arity();
                        out.push_back({same ? EvalRule::Congruence : EvalRule::Congruence_fail});
                    }
                    break;
                case Kind::First:
                    if (first_rules) out.push_back({EvalRule::First});
                    break;
                case Kind::Dc:
                    if (first_rules) out.push_back({EvalRule::DC});
                    break;
                case Kind::Phi:
                    if (traverse && v.is_fun()) out.push_back({EvalRule::Traverse_seq});
                    break;
                case Kind::Psi:
                    if (traverse && v.is_fun()) out.push_back({EvalRule::Traverse_par});
                    break;
                default:
                    break;
            }
            return;
        }
        case Kind::Rule:
            if (t.lhs().is(Kind::Set)) out.push_back({EvalRule::Switch_L});
            if (done()) return;
            if (t.rhs().is(Kind::Set)) out.push_back({EvalRule::Switch_R});
            return;
        case Kind::Fun:
            for (std::size_t i = 0; i < t.arity() && !done(); ++i)
                if (t.kid(i).is(Kind::Set)) out.push_back({EvalRule::OpOnSet, i});
            return;
        case Kind::Set:
            for (const auto& k : t.kids())
                if (k.is(Kind::Set)) {
                    out.push_back({EvalRule::Flat});
                    break;
                }
            return;
        case Kind::Choice:
            if (!first_rules) return;
            if (t.arity() == 0) {
                out.push_back({EvalRule::First_single});
            } else if (t.kid(0).is_empty_set()) {
                out.push_back({EvalRule::First_fail});
            } else if (is_closed(t.kid(0)) && !ev.has_radical(t.kid(0))) {
                out.push_back({EvalRule::First_success});
            }
            return;
        case Kind::UChoice: {
            if (!first_rules) return;
            if (t.arity() == 0) {
                out.push_back({EvalRule::DC_single});
                return;
            }
            for (const auto& k : t.kids())
                if (k.is_empty_set()) {
                    out.push_back({EvalRule::DC_fail});
                    break;
                }
            for (std::size_t i = 0; i < t.arity() && !done(); ++i) {
                const Term& k = t.kid(i);
                if (!k.is_empty_set() && is_closed(k) && !ev.has_radical(k))
                    out.push_back({EvalRule::DC_success, i});
            }
            return;
        }
        default:
            return;
    }
}

std::vector<HeadRedex> Evaluator::head_rules(const Term& t, bool all) const {
    std::vector<HeadRedex> out;
    collect_heads(t, gate_, cfg_.rule_set, all, false, *this, out);
    return out;
}

bool Evaluator::has_radical(const Term& t) const {
    std::vector<HeadRedex> out;
    collect_heads(t, gate_, cfg_.rule_set, false, cfg_.strict_radicals, *this, out);
    if (!out.empty()) return true;
    if (t.is(Kind::Phi) || t.is(Kind::Psi)) return false;
    for (const auto& k : t.kids())
        if (has_radical(k)) return true;
    return false;
}

Term Evaluator::apply_head(const Term& root, const Position& at, const Term& t, const HeadRedex& r) {
    Terms out;
    switch (r.rule) {
        case EvalRule::Fire: {
            const Term& rule = t.fn();
            MatchOutcome m = cfg_.matcher ? cfg_.matcher(root, at, t) : match_syntactic(rule.lhs(), t.arg());
            if (!m) return Term::empty();
            return Term::set({apply_subst(m.subst, rule.rhs(), names_)});
        }
        case EvalRule::Congruence: {
            const Term& u = t.fn();
            const Term& v = t.arg();
            Terms args;
            for (std::size_t i = 0; i < u.arity(); ++i) args.push_back(Term::app(u.kid(i), v.kid(i)));
            return Term::set({Term::fun(u.name(), std::move(args))});
        }
        case EvalRule::Congruence_fail:
        case EvalRule::First_single:
        case EvalRule::DC_single:
            return Term::empty();
        case EvalRule::Distrib:
            for (const auto& u : t.fn().kids()) out.push_back(Term::app(u, t.arg()));
            return Term::set(std::move(out));
        case EvalRule::Batch:
            for (const auto& v : t.arg().kids()) out.push_back(Term::app(t.fn(), v));
            return Term::set(std::move(out));
        case EvalRule::Switch_L:
            for (const auto& u : t.lhs().kids()) out.push_back(Term::rule(u, t.rhs(), t.ctx()));
            return Term::set(std::move(out));
        case EvalRule::Switch_R:
            for (const auto& v : t.rhs().kids()) out.push_back(Term::rule(t.lhs(), v, t.ctx()));
            return Term::set(std::move(out));
        case EvalRule::OpOnSet:
            for (const auto& e : t.kid(r.index).kids()) {
                Terms args = t.kids();
                args[r.index] = e;
                out.push_back(Term::fun(t.name(), std::move(args)));
            }
            return Term::set(std::move(out));
        case EvalRule::Flat:
            for (const auto& k : t.kids()) {
                if (k.is(Kind::Set))
                    out.insert(out.end(), k.kids().begin(), k.kids().end());
                else
                    out.push_back(k);
            }
            return Term::set(std::move(out));
        case EvalRule::First:
            for (const auto& s : t.fn().kids()) out.push_back(Term::app(s, t.arg()));
            return Term::choice(std::move(out));
        case EvalRule::First_fail:
            out.assign(t.kids().begin() + 1, t.kids().end());
            return Term::choice(std::move(out));
        case EvalRule::First_success:
            return Term::set({t.kid(0)});
        case EvalRule::DC:
            for (const auto& s : t.fn().kids()) out.push_back(Term::app(s, t.arg()));
            return Term::uchoice(std::move(out));
        case EvalRule::DC_fail:
            for (const auto& k : t.kids())
                if (!k.is_empty_set()) out.push_back(k);
            return Term::uchoice(std::move(out));
        case EvalRule::DC_success:
            return Term::set({t.kid(r.index)});
        case EvalRule::Traverse_seq: {
            const Term& s = t.arg();
            const Term& strat = t.fn().kid(0);
            if (s.arity() == 0) return Term::choice({Term::empty()});
            for (std::size_t i = 0; i < s.arity(); ++i) {
                Terms args = s.kids();
                args[i] = Term::app(strat, args[i]);
                out.push_back(Term::set({Term::fun(s.name(), std::move(args))}));
            }
            return Term::choice(std::move(out));
        }
        case EvalRule::Traverse_par: {
            const Term& s = t.arg();
            const Term& strat = t.fn().kid(0);
            Terms args;
            for (const auto& u : s.kids()) args.push_back(Term::app(strat, u));
            return Term::set({Term::fun(s.name(), std::move(args))});
        }
    }
    return t;
}

Term Evaluator::contract(const Term& root, const Position& at, const HeadRedex& r) {
    const Term& redex = subterm_at(root, at);
    return replace_at(root, at, apply_head(root, at, redex, r));
}

bool Evaluator::find_weak(const Term& t, Position& p, HeadRedex& r) const {
    std::vector<HeadRedex> hs = head_rules(t, false);
    if (!hs.empty()) {
        r = hs.front();
        return true;
    }
    auto try_kid = [&](std::size_t i, bool any) {
        p.push_back(static_cast<int>(i + 1));
        if (any ? find_any(t.kid(i), p, r) : find_weak(t.kid(i), p, r)) return true;
        p.pop_back();
        return false;
    };
    switch (t.kind()) {
        case Kind::Rule:
        case Kind::Phi:
        case Kind::Psi:
            return false;
        case Kind::App:
            if (cfg_.function_first && t.fn().is(Kind::App)) return try_kid(0, false) || try_kid(1, false);
            return try_kid(1, false) || try_kid(0, false);
        case Kind::Choice:
        case Kind::UChoice:
            // settle the first alternative before looking at the others
            for (std::size_t i = 0; i < t.arity(); ++i)
                if (try_kid(i, i == 0)) return true;
            return false;
        default:
            for (std::size_t i = 0; i < t.arity(); ++i)
                if (try_kid(i, false)) return true;
            return false;
    }
}

bool Evaluator::find_strong(const Term& t, Position& p, HeadRedex& r) const {
    auto try_kid = [&](std::size_t i, bool any) {
        p.push_back(static_cast<int>(i + 1));
        if (any ? find_any(t.kid(i), p, r) : find_strong(t.kid(i), p, r)) return true;
        p.pop_back();
        return false;
    };
    switch (t.kind()) {
        case Kind::Phi:
        case Kind::Psi:
            return false;
        case Kind::Rule:
            return try_kid(0, true) || try_kid(1, true);
        case Kind::App:
            return try_kid(1, false) || try_kid(0, false);
        case Kind::Choice:
        case Kind::UChoice:
            for (std::size_t i = 1; i < t.arity(); ++i)
                if (try_kid(i, false)) return true;
            return false;
        default:
            for (std::size_t i = 0; i < t.arity(); ++i)
                if (try_kid(i, false)) return true;
            return false;
    }
}

bool Evaluator::find_any(const Term& t, Position& p, HeadRedex& r) const {
    return find_weak(t, p, r) || find_strong(t, p, r);
}

std::optional<std::pair<Term, StepInfo>> Evaluator::step(const Term& t) {
    Position p;
    HeadRedex r{EvalRule::Fire};
    if (!find_any(t, p, r)) return std::nullopt;
    Term after = contract(t, p, r);
    return std::make_pair(after, StepInfo{r.rule, p, t, after});
}

NormalizeResult Evaluator::normalize(const Term& t) {
    NormalizeResult res;
    res.term = t;
    for (;;) {
        Position p;
        HeadRedex r{EvalRule::Fire};
        if (!find_any(res.term, p, r)) {
            res.normal_form = true;
            return res;
        }
        if (res.steps >= cfg_.max_steps) return res;
        Term after = contract(res.term, p, r);
        if (cfg_.trace) res.trace.push_back(StepInfo{r.rule, p, res.term, after});
        res.term = after;
        ++res.steps;
    }
}

std::vector<std::pair<Term, StepInfo>> Evaluator::successors(const Term& t) {
    std::vector<std::pair<Term, StepInfo>> out;
    for (const Position& p : positions(t)) {
        for (const HeadRedex& r : head_rules(subterm_at(t, p), true)) {
            Term after = contract(t, p, r);
            out.emplace_back(after, StepInfo{r.rule, p, t, after});
        }
    }
    return out;
}

std::optional<EvalRule> head_redex(const Term& t, const ReductionConfig& cfg) {
    Evaluator ev(cfg);
    auto hs = ev.head_rules(t, false);
    if (hs.empty()) return std::nullopt;
    return hs.front().rule;
}

std::optional<EvalRule> head_redex(const Term& t, Gate gate) {
    ReductionConfig cfg;
    cfg.gate = gate;
    cfg.rule_set = rule_set_for(t);
    return head_redex(t, cfg);
}

std::optional<std::pair<Term, StepInfo>> step(const Term& t, const ReductionConfig& cfg) {
    Evaluator ev(cfg);
    return ev.step(t);
}

NormalizeResult normalize(const Term& t, const ReductionConfig& cfg) {
    Evaluator ev(cfg);
    return ev.normalize(t);
}

std::vector<std::size_t> ReductionGraph::normal_forms() const {
    std::vector<bool> has_out(nodes.size(), false);
    for (const auto& e : edges) has_out[e.from] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (expanded[i] && !has_out[i]) out.push_back(i);
    return out;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '"' || c == '\\') o += '\\';
        o += c;
    }
    return o;
}

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

}  // namespace

std::string ReductionGraph::to_dot() const {
    std::ostringstream os;
    os << "digraph reductions {\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        os << "  n" << i << " [label=\"" << dot_escape(print(nodes[i])) << "\"";
        if (!expanded[i]) os << ", style=dashed";
        os << "];\n";
    }
    for (const auto& e : edges)
        os << "  n" << e.from << " -> n" << e.to << " [label=\"" << rule_name(e.rule) << " @ "
           << position_str(e.position) << "\"];\n";
    os << "}\n";
    return os.str();
}

ReductionGraph reduction_graph(const Term& t, const ReductionConfig& cfg, std::size_t node_limit,
                               std::size_t depth_limit) {
    if (node_limit == 0 || depth_limit == 0) throw Error("invalid-config", "graph limits must be positive");
    Evaluator ev(cfg);
    ReductionGraph g;
    std::unordered_map<Term, std::size_t, TermHash> index;
    auto add = [&](const Term& u, std::size_t d) -> std::optional<std::size_t> {
        Term key = alpha_normalize(u);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        if (g.nodes.size() >= node_limit) return std::nullopt;
        index.emplace(key, g.nodes.size());
        g.nodes.push_back(key);
        g.depth.push_back(d);
        g.expanded.push_back(false);
        return g.nodes.size() - 1;
    };
    add(t, 0);
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        if (g.depth[i] >= depth_limit) {
            // a frontier node without successors is still a normal form
            if (ev.successors(g.nodes[i]).empty())
                g.expanded[i] = true;
            else
                g.truncated = true;
            continue;
        }
        Term cur = g.nodes[i];
        std::size_t d = g.depth[i];
        bool complete = true;
        for (auto& [next, info] : ev.successors(cur)) {
            std::size_t before = g.nodes.size();
            auto j = add(next, d + 1);
            if (!j) {
                complete = false;
                g.truncated = true;
                continue;
            }
            g.edges.push_back(GraphEdge{i, *j, info.rule, info.position});
            if (g.nodes.size() > before) queue.push_back(*j);
        }
        g.expanded[i] = complete;
    }
    return g;
}

ReductionGraph reduction_graph(const Term& t, Gate gate, std::size_t node_limit, std::size_t depth_limit) {
    ReductionConfig cfg;
    cfg.gate = gate;
    cfg.rule_set = rule_set_for(t);
    return reduction_graph(t, cfg, node_limit, depth_limit);
}

}  // namespace rho
