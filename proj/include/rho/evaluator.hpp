#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rho/gates.hpp"
#include "rho/matching.hpp"
#include "rho/substitution.hpp"
#include "rho/term.hpp"

namespace rho {

enum class EvalRule {
    Fire,
    Congruence,
    Congruence_fail,
    Distrib,
    Batch,
    Switch_L,
    Switch_R,
    OpOnSet,
    Flat,
    First,
    First_fail,
    First_success,
    First_single,
    DC,
    DC_fail,
    DC_success,
    DC_single,
    Traverse_seq,
    Traverse_par,
};

const char* rule_name(EvalRule r);

// Which families of evaluation rules are enabled.
enum class RuleSet { Core, CoreFirst, CoreFirstTraverse };

const char* rule_set_name(RuleSet r);
// Core unless t uses first/dc/choice/traversal constructs.
RuleSet rule_set_for(const Term& t);
// The confluence gates reject every strategy application (first, dc, phi,
// psi are not rules); with those rule families on, they fall back to the
// prefilter condition alone.
Gate effective_gate(Gate g, RuleSet rs);

// Replaces syntactic matching in Fire. Receives the whole term, the redex
// position and the redex [l -> r](t).
using FireMatcher = std::function<MatchOutcome(const Term& root, const Position& at, const Term& redex)>;

struct ReductionConfig {
    Gate gate = Gate::ConfStrat;
    std::size_t max_steps = 10000;
    bool trace = false;
    RuleSet rule_set = RuleSet::Core;
    // Count gate-blocked Fire applications as radicals when deciding First_success.
    bool strict_radicals = false;
    // In [u](v) with u itself an application, search u before v (normal
    // order for lambda-style terms). Off by default: recursion through theta
    // relies on arguments being reduced first.
    bool function_first = false;
    FireMatcher matcher;
};

struct StepInfo {
    EvalRule rule;
    Position position;
    Term before;  // whole term
    Term after;   // whole term
};

// "step <n>: <rule> @ <pos> : <before> ==> <after>"
std::string format_step(std::size_t n, const StepInfo& s);

struct NormalizeResult {
    bool normal_form = false;  // false: the step limit was reached
    Term term;
    std::size_t steps = 0;
    std::vector<StepInfo> trace;
};

// One candidate head rule. `index` selects the set argument for OpOnSet and
// the committed element for DC_success.
struct HeadRedex {
    EvalRule rule;
    std::size_t index = 0;
};

// One evaluation session: holds the configuration and the fresh-name supply.
class Evaluator {
public:
    explicit Evaluator(ReductionConfig cfg = {});

    const ReductionConfig& config() const { return cfg_; }
    Gate gate() const { return gate_; }
    NameSupply& names() { return names_; }

    // Head rules applicable at the root of t, highest priority first.
    std::vector<HeadRedex> head_rules(const Term& t, bool all = true) const;
    bool has_radical(const Term& t) const;

    // Rewrites the subterm at `at` of `root` by `r`.
    Term contract(const Term& root, const Position& at, const HeadRedex& r);

    std::optional<std::pair<Term, StepInfo>> step(const Term& t);
    NormalizeResult normalize(const Term& t);
    // Every one-step reduct at every position.
    std::vector<std::pair<Term, StepInfo>> successors(const Term& t);

private:
    bool find_weak(const Term& t, Position& p, HeadRedex& r) const;
    bool find_strong(const Term& t, Position& p, HeadRedex& r) const;
    bool find_any(const Term& t, Position& p, HeadRedex& r) const;
    Term apply_head(const Term& root, const Position& at, const Term& t, const HeadRedex& r);

    ReductionConfig cfg_;
    Gate gate_;
    NameSupply names_;
};

std::optional<EvalRule> head_redex(const Term& t, Gate gate);
std::optional<EvalRule> head_redex(const Term& t, const ReductionConfig& cfg);
std::optional<std::pair<Term, StepInfo>> step(const Term& t, const ReductionConfig& cfg);
NormalizeResult normalize(const Term& t, const ReductionConfig& cfg);

struct GraphEdge {
    std::size_t from, to;
    EvalRule rule;
    Position position;
};

struct ReductionGraph {
    Terms nodes;  // alpha-normalized; nodes[0] is the start
    std::vector<std::size_t> depth;
    std::vector<bool> expanded;
    std::vector<GraphEdge> edges;
    bool truncated = false;

    // Expanded nodes without successors.
    std::vector<std::size_t> normal_forms() const;
    std::string to_dot() const;
};

ReductionGraph reduction_graph(const Term& t, const ReductionConfig& cfg, std::size_t node_limit,
                               std::size_t depth_limit);
ReductionGraph reduction_graph(const Term& t, Gate gate, std::size_t node_limit, std::size_t depth_limit);

}  // namespace rho
