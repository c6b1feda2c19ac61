#pragma once

#include <string>

#include "rho/evaluator.hpp"
#include "rho/syntax.hpp"
#include "rho/term.hpp"

namespace rho::testing {

// Shared signature for the unit tests.
inline Signature unit_sig() {
    Signature s;
    for (const char* c : {"a", "b", "c", "d", "e", "True"}) s.declare(c, 0);
    s.declare("g", 1);
    s.declare("h", 1);
    s.declare("f", 2);
    s.declare("k", 2);
    return s;
}

inline Term T(const std::string& text) {
    Signature s = unit_sig();
    return parse_term(text, s);
}

inline NormalizeResult run(const Term& t, Gate gate = Gate::ConfStrat, std::size_t max_steps = 20000) {
    ReductionConfig cfg;
    cfg.gate = gate;
    cfg.max_steps = max_steps;
    cfg.rule_set = rule_set_for(t);
    return normalize(t, cfg);
}

// Printed normal form of a source term.
inline std::string nf(const std::string& text, Gate gate = Gate::ConfStrat) {
    auto r = run(T(text), gate);
    return r.normal_form ? print(r.term) : "<limit>";
}

}  // namespace rho::testing
