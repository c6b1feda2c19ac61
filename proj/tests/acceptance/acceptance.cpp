// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance <path-to-rho-binary> <golden-dir>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "generators.hpp"
#include "oracles.hpp"
#include "rho/combinators.hpp"
#include "rho/debruijn.hpp"
#include "rho/encodings.hpp"
#include "rho/evaluator.hpp"
#include "rho/syntax.hpp"
#include "rho/typing.hpp"

using namespace rho;
using namespace rho::testing;
namespace fs = std::filesystem;

namespace {

// Pinned sizes and budgets.
constexpr int kMatchPairs = 10000;
constexpr int kMatchMaxVars = 4;
constexpr int kConfluenceTerms = 1000;
constexpr std::size_t kCoreTermSize = 10;
constexpr std::size_t kGraphDepth = 8;
constexpr std::size_t kGraphNodes = 2000;
// the fixed counter-example terms are explored to exhaustion
constexpr std::size_t kFamilyDepth = 64;
constexpr std::size_t kFamilyNodes = 100000;
constexpr int kTypedTerms = 1000;
constexpr int kTypedDepth = 4;
constexpr std::size_t kTypedBudgetFactor = 10;  // budget = factor * size^2
constexpr int kDbTerms = 1000;
constexpr std::size_t kDbTermSize = 10;
constexpr std::size_t kSigmaGraphNodes = 5000;
constexpr int kAgreementTerms = 500;
constexpr int kLambdaTerms = 500;
constexpr std::size_t kLambdaSize = 12;
constexpr std::size_t kBetaSteps = 50;
constexpr std::size_t kRhoLambdaBudget = 200000;
constexpr int kTrsCount = 50;
constexpr int kTrsMaxRules = 4;
constexpr std::size_t kTrsTermSize = 8;
constexpr std::size_t kEvalBudget = 500000;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    int failures = 0;

    void fail(const std::string& why) {
        pass = false;
        if (failures++ < 3) detail << "\n    " << why;
    }
};

NormalizeResult evaluate(const Term& t, Gate gate = Gate::ConfStrat, std::size_t budget = kEvalBudget) {
    ReductionConfig cfg;
    cfg.gate = gate;
    cfg.max_steps = budget;
    cfg.rule_set = rule_set_for(t);
    return normalize(t, cfg);
}

std::set<Term> graph_normal_forms(const Term& t, Gate gate, std::size_t depth = kGraphDepth,
                                  std::size_t nodes = kGraphNodes, bool* truncated = nullptr) {
    ReductionConfig cfg;
    cfg.gate = gate;
    cfg.rule_set = rule_set_for(t);
    auto g = reduction_graph(t, cfg, nodes, depth);
    if (truncated) *truncated = g.truncated;
    std::set<Term> out;
    for (auto i : g.normal_forms()) out.insert(g.nodes[i]);
    return out;
}

// ---------------------------------------------------------------- 1

struct Golden {
    std::string label, source, expect;
};

Outcome golden_examples() {
    Outcome o;
    const std::vector<Golden> cases{
        {"single rule", "sig a/0, b/0; [a -> b](a);", "{b}"},
        {"rule set", "sig a/0, b/0, c/0; [{a -> b, a -> c}](a);", "{b, c}"},
        {"nested application", "sig a/0, f/1; [x -> f(x)]([y -> y](a));", "{f(a)}"},
        {"matching failure", "sig a/0, b/0, c/0, f/1; [f(a) -> f(b)](f(c));", "{}"},
        {"batch over a set", "sig a/0, b/0; [a -> b]({a, b});", "{b}"},
        {"failure propagation", "sig a/0, b/0, c/0, g/2; g([a -> b](c), [a -> b](a));", "{}"},
        {"first, first rule", "sig a/0, b/0, c/0, d/0; [first(a -> b, a -> c, a -> d)](a);", "{b}"},
        {"first, second rule", "sig a/0, b/0, c/0, d/0; [first(a -> b, b -> c, a -> d)](b);", "{c}"},
        {"first, none", "sig a/0, b/0, c/0, d/0; [first(a -> b, a -> c, a -> d)](b);", "{}"},
        {"bottomup constant", "sig a/0, b/0, f/2, g/1; [bottomup(a -> b)](a);", "{b}"},
        {"bottomup unary", "sig a/0, b/0, f/2, g/1; [bottomup(a -> b)](g(a));", "{g(b)}"},
        {"bottomup binary", "sig a/0, b/0, f/2, g/1; [bottomup(a -> b)](f(a, g(a)));", "{f(b, g(b))}"},
        {"oncebu constant", "sig a/0, b/0, f/2, g/1; [oncebu(a -> b)](a);", "{b}"},
        {"oncebu binary", "sig a/0, b/0, f/2, g/1; [oncebu(a -> b)](f(a, g(a)));", "{f(b, g(a))}"},
        {"repeat*", "sig a/0, b/0, c/0; [repeat*({a -> b, b -> c})](a);", "{c}"},
        {"im", "sig a/0, b/0, f/2, g/1; [im({a -> b, f(x, g(x)) -> x})](f(a, g(a)));", "{b}"},
        {"om, non-confluent rules", "sig a/0, b/0, c/0, f/2; [om({a -> b, a -> c, f(x, x) -> x})](f(a, a));", "{b, c}"},
        {"im, non-confluent rules", "sig a/0, b/0, c/0, f/2; [im({a -> b, a -> c, f(x, x) -> x})](f(a, a));",
         "{b, f(c, b), f(b, c), c}"},
    };
    for (const auto& g : cases) {
        auto f = parse_file(g.source);
        auto r = evaluate(f.terms.at(0));
        Signature sig = f.sig;
        Term want = parse_term(g.expect, sig);
        if (!r.normal_form || !alpha_equal(r.term, want))
            o.fail(g.label + ": got " + print(r.term) + ", expected " + g.expect);
    }

    // SKK
    using L = LambdaTerm;
    L S = L::abs("x", L::abs("y", L::abs("z", L::app(L::app(L::var("x"), L::var("z")),
                                                     L::app(L::var("y"), L::var("z"))))));
    L K = L::abs("x", L::abs("y", L::var("x")));
    auto skk = evaluate(Term::app(Term::app(lambda_to_rho(S), lambda_to_rho(K)), lambda_to_rho(K)));
    if (!skk.normal_form || !alpha_equal(skk.term, Term::set({lambda_to_rho(L::abs("x", L::var("x")))})))
        o.fail("SKK: got " + print(skk.term));

    // conditional rule, numbers in unary notation
    Signature sig;
    for (const char* c : {"True", "False", "0", "a", "b"}) sig.declare(c, 0);
    for (const char* c : {"s", "f", "g", "h"}) sig.declare(c, 1);
    sig.declare("ge", 2);
    sig.declare("eq", 2);
    auto P = [&](const std::string& s) { return parse_term(s, sig); };
    Term ge = P("{ge(s(x), 0) -> True, ge(0, s(y)) -> False, ge(s(x), s(y)) -> ge(x, y), ge(0, 0) -> True}");
    Term cond = encode_conditional_rule(P("f(x)"), P("g(x)"), P("ge(x, s(0))"), ge, sig);
    auto cond_run = evaluate(Term::app(cond, P("f(s(s(0)))")));
    if (!cond_run.normal_form || cond_run.term != P("{g(s(s(0)))}")) o.fail("conditional rule: got " + print(cond_run.term));

    // recursive conditional system
    std::vector<ConditionalRule> rs{{P("eq(x, x)"), P("True"), std::nullopt},
                                    {P("f(x)"), P("g(x)"), P("eq(h(x), b)")},
                                    {P("h(x)"), P("b"), P("eq(x, a)")}};
    auto system_run = evaluate(Term::app(encode_conditional_system(rs, sig), P("f(a)")));
    if (!system_run.normal_form || system_run.term != P("{g(a)}")) o.fail("conditional system: got " + print(system_run.term));

    // de Bruijn translation
    auto f71 = parse_file("sig a/0, b/0, f/2, g/3; [f(x, y) -> g(x, y, z)](f(a, b));");
    db::DB tr = db::to_debruijn(f71.terms[0], {"z"});
    if (db::print(tr) != "[f(1, 2) ->2 g(1, 2, 3)](f(a, b))") o.fail("translation: " + db::print(tr));
    auto explicit_run = db::rhosigma_normalize(tr);
    if (db::print(explicit_run.term) != "{g(a, b, 1)}") o.fail("explicit evaluation: " + db::print(explicit_run.term));

    o.detail << (o.pass ? "" : "\n   ") << " " << cases.size() + 4 << " examples";
    return o;
}

// ---------------------------------------------------------------- 2

Outcome matching() {
    Outcome o;
    Rng rng(20201);
    Signature sig = fo_signature();
    int successes = 0;
    for (int i = 0; i < kMatchPairs; ++i) {
        auto [l, t] = random_match_pair(rng, sig, kMatchMaxVars);
        auto m = match_syntactic(l, t);
        if (m.ok) {
            ++successes;
            if (apply_subst(m.subst, l) != t) o.fail("unsound: " + print(l) + " vs " + print(t));
        }
        auto b = brute_force_match(l, t);
        if (m.ok != b.has_value()) o.fail("oracle disagrees on " + print(l) + " vs " + print(t));
    }
    o.detail << " " << kMatchPairs << " pairs, " << successes << " matches";
    return o;
}

// ---------------------------------------------------------------- 3

Outcome confluence() {
    Outcome o;
    Rng rng(20301);
    Signature sig = fo_signature();
    int truncated = 0;
    for (int i = 0; i < kConfluenceTerms; ++i) {
        Term t = random_core_term(rng, sig, kCoreTermSize);
        auto g = reduction_graph(t, Gate::ConfStrat, kGraphNodes, kGraphDepth);
        truncated += g.truncated;
        auto n = g.normal_forms().size();
        if (n != 1) o.fail(print(t) + " has " + std::to_string(n) + " normal forms");
    }

    struct Family {
        std::string label, source;
        Gate gate;
    };
    const std::vector<Family> families{
        {"argument reduced under the rule", "[x -> [a -> b](x)](a)", Gate::ConfStrat},
        {"set subject", "[f(x) -> f(x)]({f(a)})", Gate::ConfStrat},
        {"reducible subject", "[a -> b]([a -> a](a))", Gate::ConfStrat},
        {"non-linear pattern", "[g(x, x) -> x](g(a, [a -> a](a)))", Gate::ConfStrat},
        {"empty subject", "[x -> b]({})", Gate::ConfStratLin},
        {"subject reducing to empty", "[x -> b]([a -> b](b))", Gate::ConfStratLin},
        {"subject instantiated to empty", "[y -> [x -> b](y)]({})", Gate::ConfStratLin},
        {"right non-linear on a set", "[x -> g(x, x)]({a, b})", Gate::ConfStratLin},
        {"right non-linear, subject reducing to a set", "[x -> g(x, x)]([a -> {a, b}](a))", Gate::ConfStratLin},
        {"right non-linear, subject instantiated to a set", "[y -> [x -> g(x, x)](y)]({a, b})", Gate::ConfStratLin},
    };
    for (const auto& fam : families) {
        Signature s;
        s.declare("a", 0);
        s.declare("b", 0);
        s.declare("f", 1);
        s.declare("g", 2);
        Term t = parse_term(fam.source, s);
        // terminal nodes of a partial graph are still normal forms, so only the
        // gated count needs the whole graph
        bool cut = false;
        auto none = graph_normal_forms(t, Gate::None, kFamilyDepth, kFamilyNodes);
        auto gated = graph_normal_forms(t, fam.gate, kFamilyDepth, kFamilyNodes, &cut);
        if (cut) o.fail(fam.label + ": gated reduction graph not exhausted");
        if (none.size() < 2) o.fail(fam.label + ": " + std::to_string(none.size()) + " normal forms without a gate");
        if (gated.size() != 1)
            o.fail(fam.label + ": " + std::to_string(gated.size()) + " normal forms under " + gate_name(fam.gate));
    }
    o.detail << " " << kConfluenceTerms << " terms (" << truncated << " graphs truncated), " << families.size()
             << " counter-examples";
    return o;
}

// ---------------------------------------------------------------- 4 and 5

struct TypedRun {
    int preserved_failures = 0;
    int limit_hits = 0;
    std::size_t max_steps_seen = 0;
    std::vector<std::string> problems;
};

TypedRun typed_runs() {
    static std::optional<TypedRun> cached;
    if (cached) return *cached;
    TypedRun out;
    Rng rng(20401);
    Signature sig = typed_signature();
    Type A = Type::atom("A"), B = Type::atom("B");
    std::vector<Type> targets{A, A, A, B, Type::arrow(A, A), Type::arrow(A, B)};
    for (int i = 0; i < kTypedTerms; ++i) {
        const Type& target = targets[uniform(rng, 0, int(targets.size()) - 1)];
        Term t = random_typed_term(rng, sig, target, kTypedDepth);
        ReductionConfig cfg;
        cfg.max_steps = kTypedBudgetFactor * t.size() * t.size();
        try {
            auto r = typed_normalize({}, t, sig, cfg, true);
            if (r.type != target || !well_typed({}, r.result.term, target, sig)) {
                ++out.preserved_failures;
                out.problems.push_back("type changed: " + print(t));
            }
            if (!r.result.normal_form) {
                ++out.limit_hits;
                out.problems.push_back("step limit: " + print(t));
            }
            out.max_steps_seen = std::max(out.max_steps_seen, r.result.steps);
        } catch (const Error& e) {
            ++out.preserved_failures;
            out.problems.push_back(e.code() + " on " + print(t));
        }
    }
    cached = out;
    return out;
}

Outcome subject_reduction() {
    Outcome o;
    auto r = typed_runs();
    for (const auto& p : r.problems)
        if (p.rfind("step limit", 0) != 0) o.fail(p);
    // self-application is rejected whatever the binder type
    Signature sig = typed_signature();
    int rejected = 0;
    for (const char* ty : {"A", "A -> A", "(A -> A) -> A"}) {
        Type T = parse_type(ty);
        Term w = Term::rule(Term::var("x"), Term::app(Term::var("x"), Term::var("x")), Context{{"x", T}});
        try {
            infer_type({}, Term::app(w, w), sig);
            o.fail(std::string("self-application accepted at ") + ty);
        } catch (const Error&) {
            ++rejected;
        }
    }
    o.detail << " " << kTypedTerms << " terms, every step checked; self-application rejected " << rejected << "/3";
    return o;
}

Outcome strong_normalization() {
    Outcome o;
    auto r = typed_runs();
    for (const auto& p : r.problems)
        if (p.rfind("step limit", 0) == 0) o.fail(p);
    o.detail << " " << kTypedTerms << " terms, budget " << kTypedBudgetFactor << "*size^2, " << r.limit_hits
             << " limit hits, longest " << r.max_steps_seen << " steps";
    return o;
}

// ---------------------------------------------------------------- 6

bool measure_decreases(const db::DB& before, const db::DB& after) {
    return sigma_measure(before) > sigma_measure(after);
}

bool subst_shapes_ok(const db::DB& t) {
    if (t.is_subst() && !subst_nf_shape(t)) return false;
    for (const auto& k : t.kids())
        if (!subst_shapes_ok(k)) return false;
    return true;
}

Outcome sigma_calculus() {
    Outcome o;
    Rng rng(20601);
    std::size_t edges = 0, increases = 0, graphs_capped = 0;
    std::string first_increase;
    // non-decreasing steps per rule: the redex alone vs only inside its context
    std::map<std::string, std::pair<std::size_t, std::size_t>> by_rule;
    for (int i = 0; i < kDbTerms; ++i) {
        db::DB t = random_db_term(rng, kDbTermSize);
        db::DB n = db::sigma_normalize(t);
        if (has_closure(n)) o.fail("closure left in " + db::print(n));
        if (!subst_shapes_ok(n)) o.fail("substitution shape in " + db::print(n));

        // every interleaving: all terminal nodes of the exhaustive graph
        std::set<db::DB> seen{t};
        std::vector<db::DB> frontier{t};
        std::set<db::DB> terminals;
        while (!frontier.empty() && seen.size() < kSigmaGraphNodes) {
            db::DB u = frontier.back();
            frontier.pop_back();
            auto succ = db::sigma_successors(u);
            if (succ.empty()) terminals.insert(u);
            for (auto& s : succ) {
                ++edges;
                if (!measure_decreases(u, s.after)) {
                    std::string rule = db::sigma_rule_name(s.rule);
                    if (increases++ == 0) first_increase = rule + " on " + db::print(u);
                    // sets are canonical, so contract the redex on its own
                    db::DB redex = db::db_subterm(u, s.position);
                    db::SigmaRule which;
                    auto h = db::sigma_head(redex, &which);
                    bool local = !h || which != s.rule || measure_decreases(redex, *h);
                    auto& c = by_rule[rule];
                    (local ? c.second : c.first) += 1;
                }
                if (seen.insert(s.after).second) frontier.push_back(s.after);
            }
        }
        if (!frontier.empty()) ++graphs_capped;
        if (terminals.size() > 1 || (frontier.empty() && terminals.size() != 1) ||
            (!terminals.empty() && *terminals.begin() != n))
            o.fail("interleavings disagree from " + db::print(t));
    }
    if (increases) {
        o.fail("measure does not decrease on " + std::to_string(increases) + " of " + std::to_string(edges) +
               " steps; first: " + first_increase);
        std::string split = "by rule (redex itself / only in context):";
        for (const auto& [rule, c] : by_rule)
            split += " " + rule + " " + std::to_string(c.first) + "/" + std::to_string(c.second);
        o.fail(split);
    }
    o.detail << " " << kDbTerms << " terms, " << edges << " steps checked, " << graphs_capped << " graphs capped";
    return o;
}

// ---------------------------------------------------------------- 7

Outcome named_explicit() {
    Outcome o;
    Rng rng(20701);
    Signature sig = fo_signature();
    std::size_t base = 0, sigma = 0;
    for (int i = 0; i < kAgreementTerms; ++i) {
        Term t = random_core_term(rng, sig, kCoreTermSize);
        auto named = evaluate(t);
        auto ex = db::rhosigma_normalize(db::to_debruijn(t));
        base += ex.base_steps;
        sigma += ex.sigma_steps;
        if (!named.normal_form || !ex.normal_form) {
            o.fail("no normal form for " + print(t));
            continue;
        }
        if (db::to_debruijn(named.term) != ex.term)
            o.fail(print(t) + ": " + print(named.term) + " vs " + db::print(ex.term));
    }
    o.detail << " " << kAgreementTerms << " terms, " << base << " base and " << sigma << " substitution steps";
    return o;
}

// ---------------------------------------------------------------- 8

Outcome lambda_simulation() {
    Outcome o;
    Rng rng(20801);
    int accepted = 0, drawn = 0;
    std::size_t beta_total = 0;
    while (accepted < kLambdaTerms) {
        ++drawn;
        LambdaTerm t = random_lambda(rng, kLambdaSize);
        std::size_t steps = 0;
        auto nf = beta_normalize(t, kBetaSteps, &steps);
        if (!nf) continue;
        ++accepted;
        beta_total += steps;
        ReductionConfig cfg;
        cfg.gate = Gate::None;
        cfg.function_first = true;
        cfg.max_steps = kRhoLambdaBudget;
        auto r = normalize(lambda_to_rho(t), cfg);
        if (!r.normal_form) {
            o.fail("no normal form for " + print(t));
            continue;
        }
        try {
            if (!lambda_alpha_equal(rho_to_lambda(r.term), *nf))
                o.fail(print(t) + ": " + print(r.term) + " vs " + print(*nf));
        } catch (const Error& e) {
            o.fail(print(t) + ": " + e.code() + " on " + print(r.term));
        }
    }
    o.detail << " " << accepted << " terms (" << drawn << " drawn), " << beta_total << " beta steps";
    return o;
}

// ---------------------------------------------------------------- 9

// A ground term with an instance of some left-hand side planted at a random position.
Term planted_term(Rng& rng, const Signature& sig, const Terms& rules) {
    Term host = random_fo_term(rng, sig, {}, 2);
    const Term& rule = rules[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(rules.size()) - 1))];
    Subst s;
    for (const auto& x : rule.lhs().fv()) s[x] = random_fo_term(rng, sig, {}, 1);
    auto ps = positions(host);
    const Position& at = ps[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(ps.size()) - 1))];
    return replace_at(host, at, apply_subst(s, rule.lhs()));
}

Outcome rewriting_simulation() {
    Outcome o;
    Rng rng(20901);
    Signature sig = fo_signature();
    int systems = 0;
    std::size_t derivation_steps = 0;
    while (systems < kTrsCount) {
        auto rules = random_decreasing_trs(rng, sig, kTrsMaxRules);
        // confluence on a sample of ground terms, including the one used
        bool confluent = true;
        std::vector<Term> samples;
        for (int k = 0; k < 12; ++k) {
            Term t = k % 2 ? planted_term(rng, sig, rules) : random_fo_term(rng, sig, {}, 3);
            if (t.size() <= kTrsTermSize) samples.push_back(t);
        }
        if (samples.empty()) continue;
        for (const auto& t : samples)
            if (trs_normal_forms(rules, t).size() != 1) confluent = false;
        if (!confluent) continue;
        ++systems;
        Term rs = Term::set(rules);
        // the sample with the longest derivation
        Term t = samples.front();
        auto d = trs_innermost_derivation(rules, t);
        for (const auto& u : samples) {
            auto du = trs_innermost_derivation(rules, u);
            if (du.steps.size() > d.steps.size()) {
                t = u;
                d = std::move(du);
            }
        }
        derivation_steps += d.steps.size();
        Term last = replay(d).back();
        auto r = evaluate(derivation_to_rho(d));
        if (!r.normal_form || r.term != Term::set({last}))
            o.fail("derivation of " + print(t) + " under " + print(rs) + " gives " + print(r.term));
        auto expect = trs_normal_forms(rules, t);
        auto im = evaluate(Term::app(make_normalizer(Combinator::Im, rs), t));
        std::set<Term> got;
        if (im.term.is(Kind::Set)) got.insert(im.term.kids().begin(), im.term.kids().end());
        if (!im.normal_form || got != expect)
            o.fail("im on " + print(t) + " under " + print(rs) + " gives " + print(im.term));
    }
    o.detail << " " << systems << " systems, " << derivation_steps << " derivation steps";
    return o;
}

// ---------------------------------------------------------------- 10

struct Run {
    std::string out, err;
    int code = -1;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

Run run_cli(const std::string& rho, const std::string& args, const std::string& env = "") {
    fs::path err = fs::temp_directory_path() / ("rho_acceptance_" + std::to_string(::getpid()) + ".err");
    std::string cmd = env + quote(rho) + " " + args + " 2>" + quote(err.string()) + " </dev/null";
    Run r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = ::pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.err = slurp(err);
    fs::remove(err);
    return r;
}

Outcome cli_contract(const std::string& rho, const fs::path& dir) {
    Outcome o;
    int cases = 0;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".rho") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        ++cases;
        fs::path stem = f;
        stem.replace_extension();
        auto side = [&](const char* ext) { return fs::path(stem.string() + ext); };
        std::string args;
        if (fs::exists(side(".args"))) {
            args = slurp(side(".args"));
            while (!args.empty() && std::isspace(static_cast<unsigned char>(args.back()))) args.pop_back();
        }
        Run r = run_cli(rho, args + " " + quote(f.string()));
        Run again = run_cli(rho, args + " " + quote(f.string()));
        std::string name = stem.filename().string();
        if (r.out != slurp(side(".out"))) o.fail(name + ": stdout differs:\n" + r.out);
        if (std::to_string(r.code) != [&] {
                std::string c = slurp(side(".code"));
                while (!c.empty() && std::isspace(static_cast<unsigned char>(c.back()))) c.pop_back();
                return c;
            }())
            o.fail(name + ": exit code " + std::to_string(r.code));
        if (fs::exists(side(".err")) && r.err != slurp(side(".err"))) o.fail(name + ": stderr differs: " + r.err);
        if (r.out != again.out || r.err != again.err || r.code != again.code) o.fail(name + ": not deterministic");
    }

    struct CodeCase {
        std::string args;
        int code;
    };
    const std::vector<CodeCase> codes{
        {"-e " + quote("sig a/0, b/0; [a -> b](a);"), 0},
        {"-e " + quote("sig a/0, b/0; [a -> b](c);"), 0},
        {"-e " + quote("[x -> [x](x)](x -> [x](x));") + " --strategy none --max-steps 10", 2},
        {"-e " + quote("[a -> b](a"), 3},
        {"-e " + quote("_k;"), 3},
        {"-e " + quote("[x:A -> x](x:A -> x);") + " --typed", 3},
        {quote((dir / "does-not-exist.rho").string()), 3},
        {"--strategy bogus -e " + quote("a;"), 3},
    };
    for (const auto& c : codes) {
        Run r = run_cli(rho, c.args);
        if (r.code != c.code)
            o.fail(c.args + ": exit " + std::to_string(r.code) + ", expected " + std::to_string(c.code));
        if (c.code == 3 && r.err.rfind("error: ", 0) != 0 && c.args.rfind("--strategy", 0) != 0)
            o.fail(c.args + ": no error line");
    }
    // the environment sets the default budget
    Run env = run_cli(rho, "--strategy none -e " + quote("[x -> [x](x)](x -> [x](x));"), "RHO_MAX_STEPS=3 ");
    if (env.code != 2 || env.err != "step limit reached after 3 steps\n") o.fail("RHO_MAX_STEPS ignored: " + env.err);

    // parse/print round trip
    std::istringstream corpus(slurp(dir / "roundtrip.txt"));
    std::string line;
    int lines = 0;
    while (std::getline(corpus, line)) {
        if (line.empty()) continue;
        ++lines;
        Signature sig;
        for (const char* c : {"a", "b", "c", "d"}) sig.declare(c, 0);
        try {
            Term t = parse_term(line, sig);
            std::string printed = print(t);
            if (normalize_whitespace(printed) != normalize_whitespace(line)) o.fail("round trip: " + line + " printed as " + printed);
            if (parse_term(printed, sig) != t) o.fail("reparse differs: " + line);
        } catch (const Error& e) {
            o.fail("round trip: " + line + ": " + e.what());
        }
    }
    o.detail << " " << cases << " golden files, " << codes.size() << " exit-code cases, " << lines
             << " round-trip terms";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <rho-binary> <golden-dir>\n";
        return 2;
    }
    std::string rho = argv[1];
    fs::path golden = argv[2];

    const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
        {1, golden_examples},
        {2, matching},
        {3, confluence},
        {4, subject_reduction},
        {5, strong_normalization},
        {6, sigma_calculus},
        {7, named_explicit},
        {8, lambda_simulation},
        {9, rewriting_simulation},
        {10, [&] { return cli_contract(rho, golden); }},
    };
    int failed = 0;
    for (const auto& [n, fn] : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " (" << std::fixed
                  << std::setprecision(1) << secs << " s)" << o.detail.str() << std::endl;
    }
    return failed ? 1 : 0;
}
