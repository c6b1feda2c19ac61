#pragma once

#include <optional>
#include <string_view>

#include "rho/term.hpp"

namespace rho {

// Conditions under which a rule application [l -> r](t) may fire.
enum class Gate {
    None,
    Strict,           // t ground first-order
    ConfStrat,        // prefilterable and safe
    ConfStratLin,
    ConfStratStable,
    FirstOrder,       // l, r first-order and t ground first-order
    Prefilter,        // prefilterable only; used when strategy operators are enabled
};

const char* gate_name(Gate g);
std::optional<Gate> parse_gate(std::string_view s);

bool weakly_subsumes(const Term& l, const Term& t);
bool is_prefilterable(const Term& l, const Term& t);  // throws malformed-pattern
bool is_safe(const Term& t);
bool is_calculable(const Term& l, const Term& t);

bool is_quasi_regular(const Term& rule);
bool is_strictly_right_linear(const Term& rule);
bool is_stable(const Term& rule);

bool fire_allowed(Gate g, const Term& l, const Term& r, const Term& t);

}  // namespace rho
