// Command-line front end: batch evaluation of .rho files and a REPL.

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rho/debruijn.hpp"
#include "rho/evaluator.hpp"
#include "rho/syntax.hpp"
#include "rho/typing.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_step_limit = 2;
constexpr int exit_error = 3;

struct Options {
    std::string strategy = "confstrat";
    std::size_t max_steps = 10000;
    bool trace = false;
    bool typed = false;
    bool debruijn = false;
    bool graph = false;
    std::size_t depth = 8;
    std::size_t nodes = 2000;
    bool expand_traverse = false;
    std::string file;
    std::string eval;
};

struct Session {
    Options opt;
    rho::Gate gate = rho::Gate::ConfStrat;
    rho::Signature sig;
    rho::Context ctx;

    rho::ParseOptions parse_options() const {
        rho::ParseOptions p;
        p.expand_traverse = opt.expand_traverse;
        return p;
    }

    rho::ReductionConfig config(const rho::Term& t) const {
        rho::ReductionConfig cfg;
        cfg.gate = gate;
        cfg.max_steps = opt.max_steps;
        cfg.trace = opt.trace;
        cfg.rule_set = rho::rule_set_for(t);
        return cfg;
    }
};

void report(const rho::Error& e) { std::cerr << "error: " << e.code() << ": " << e.what() << "\n"; }

void emit_graph(const Session& s, const rho::Term& t) {
    rho::ReductionGraph g = rho::reduction_graph(t, s.config(t), s.opt.nodes, s.opt.depth);
    std::cout << g.to_dot();
}

// Evaluates one term and returns its exit status.
int run_term(Session& s, const rho::Term& t) {
    if (s.opt.graph) {
        emit_graph(s, t);
        return exit_ok;
    }
    rho::ReductionConfig cfg = s.config(t);
    rho::NormalizeResult r;
    std::string type_suffix;
    try {
        if (s.opt.typed) {
            rho::TypedResult tr = rho::typed_normalize(s.ctx, t, s.sig, cfg);
            r = std::move(tr.result);
            type_suffix = " : " + tr.type.str();
        } else {
            r = rho::normalize(t, cfg);
        }
    } catch (const rho::Error& e) {
        report(e);
        return exit_error;
    }
    for (std::size_t i = 0; i < r.trace.size(); ++i) std::cout << rho::format_step(i + 1, r.trace[i]) << "\n";
    std::cout << rho::print(r.term) << type_suffix << "\n";
    int status = exit_ok;
    if (!r.normal_form) {
        std::cerr << "step limit reached after " << r.steps << " steps\n";
        status = exit_step_limit;
    }
    if (s.opt.debruijn) {
        try {
            std::vector<std::string> ref(t.fv().begin(), t.fv().end());
            rho::db::SigmaConfig sc;
            sc.gate = rho::effective_gate(s.gate, cfg.rule_set);
            sc.max_steps = s.opt.max_steps;
            rho::db::DB d = rho::db::to_debruijn(t, ref);
            rho::db::SigmaResult dr = rho::db::rhosigma_normalize(d, sc);
            std::cout << "debruijn: " << rho::db::print(d) << " ==> " << rho::db::print(dr.term) << "\n";
            if (!dr.normal_form) {
                std::cerr << "step limit reached in the explicit-substitution run\n";
                status = std::max(status, exit_step_limit);
            }
        } catch (const rho::Error& e) {
            report(e);
            return exit_error;
        }
    }
    return status;
}

int run_source(Session& s, const std::string& text) {
    rho::SourceFile f;
    try {
        f = rho::parse_file(text, s.parse_options());
    } catch (const rho::Error& e) {
        report(e);
        return exit_error;
    }
    s.sig = f.sig;
    s.ctx = f.ctx;
    int status = exit_ok;
    for (const auto& t : f.terms) {
        int st = run_term(s, t);
        if (st == exit_error) return st;
        status = std::max(status, st);
    }
    return status;
}

bool starts_with_word(const std::string& line, const std::string& w) {
    std::size_t i = line.find_first_not_of(" \t");
    if (i == std::string::npos || line.compare(i, w.size(), w) != 0) return false;
    std::size_t j = i + w.size();
    return j == line.size() || std::isspace(static_cast<unsigned char>(line[j]));
}

int run_repl(Session& s) {
    bool tty = isatty(STDIN_FILENO);
    std::string prelude;
    std::string line;
    auto prompt = [&] {
        if (tty) std::cout << "rho> " << std::flush;
    };
    prompt();
    while (std::getline(std::cin, line)) {
        std::string body = line;
        std::size_t i = body.find_first_not_of(" \t");
        if (i == std::string::npos || body[i] == '#') {
            prompt();
            continue;
        }
        body = body.substr(i);
        try {
            if (body == ":q" || body == ":quit") break;
            if (starts_with_word(body, "sig") || starts_with_word(body, "profile") || starts_with_word(body, "ctx")) {
                rho::SourceFile f = rho::parse_file(prelude + body + "\n", s.parse_options());
                prelude += body + "\n";
                s.sig = f.sig;
                s.ctx = f.ctx;
            } else if (starts_with_word(body, ":t")) {
                rho::Signature sig = s.sig;
                rho::Term t = rho::parse_term(body.substr(2), sig, s.parse_options());
                std::cout << rho::infer_type(s.ctx, t, sig).str() << "\n";
            } else if (starts_with_word(body, ":g")) {
                rho::Signature sig = s.sig;
                rho::Term t = rho::parse_term(body.substr(2), sig, s.parse_options());
                emit_graph(s, t);
            } else if (body[0] == ':') {
                std::cerr << "error: unknown command " << body.substr(0, body.find(' ')) << "\n";
            } else {
                rho::Signature saved = s.sig;
                rho::Term t = rho::parse_term(body, s.sig, s.parse_options());
                run_term(s, t);
                s.sig = saved;
            }
        } catch (const rho::Error& e) {
            report(e);
        }
        prompt();
    }
    return exit_ok;
}

std::optional<std::size_t> env_max_steps() {
    const char* v = std::getenv("RHO_MAX_STEPS");
    if (!v || !*v) return std::nullopt;
    try {
        return static_cast<std::size_t>(std::stoull(v));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

int main(int argc, char** argv) {
    Session s;
    if (auto m = env_max_steps()) s.opt.max_steps = *m;

    CLI::App app{"Evaluator for rewriting-calculus terms"};
    app.add_option("file", s.opt.file, "Source file ('-' reads standard input); without it a REPL starts");
    app.add_option("-e,--eval", s.opt.eval, "Evaluate the given source text");
    app.add_option("--strategy", s.opt.strategy, "Fire gate")
        ->check(CLI::IsMember({"none", "strict", "confstrat", "confstratlin", "confstratstable", "firstorder",
                               "prefilter"}));
    app.add_option("--max-steps", s.opt.max_steps, "Step budget per term (default 10000 or RHO_MAX_STEPS)");
    app.add_flag("--trace", s.opt.trace, "Print every reduction step");
    app.add_flag("--typed", s.opt.typed, "Type check and evaluate with typed matching");
    app.add_flag("--debruijn", s.opt.debruijn, "Also evaluate through explicit substitutions");
    app.add_flag("--graph", s.opt.graph, "Print the reduction graph in DOT instead of evaluating");
    app.add_option("--depth", s.opt.depth, "Graph depth limit");
    app.add_option("--nodes", s.opt.nodes, "Graph node limit");
    app.add_flag("--expand-traverse", s.opt.expand_traverse, "Expand phi/psi over the signature");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_error;
    }
    s.gate = *rho::parse_gate(s.opt.strategy);

    if (!s.opt.eval.empty()) return run_source(s, s.opt.eval);
    if (s.opt.file.empty()) return run_repl(s);
    std::stringstream buf;
    if (s.opt.file == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(s.opt.file);
        if (!in) {
            std::cerr << "error: io: cannot read " << s.opt.file << "\n";
            return exit_error;
        }
        buf << in.rdbuf();
    }
    return run_source(s, buf.str());
}
