#pragma once

#include <string>
#include <vector>

#include "rho/substitution.hpp"
#include "rho/term.hpp"
#include "rho/type.hpp"

namespace rho {

// Concrete syntax.
//
//   sig f/2, g/1, a/0;          function symbols; other identifiers are variables
//   profile f : A, B -> C;      type profile of f (constants: profile a : A;)
//   ctx x : A, y : A -> B;      types of free variables
//   <term> ;                    a term to evaluate
//
// Terms: l -> r (right associative), [t](u), {t1, t2}, f(t1, t2), (t),
// <t1, t2> and <<t1, t2>> pending choices, x:A annotations on rule
// left-hand-side variables, and the combinator keywords
// id fail try first dc phi psi theta seq sd bottomup topdown oncebu oncetd
// repeat* im om. `#` starts a line comment.

struct ParseOptions {
    bool allow_reserved = false;   // accept identifiers starting with '_'
    bool expand_traverse = false;  // phi/psi as expansions over the signature
};

struct SourceFile {
    Signature sig;
    Context ctx;
    std::vector<Term> terms;
};

// Errors carry code "parse-error", "arity-mismatch" or "reserved-identifier"
// and a message starting with "line:col: ".
SourceFile parse_file(const std::string& text, const ParseOptions& opt = {});
// Parses a single term against `sig`; undeclared identifiers applied to
// arguments are declared on the fly.
Term parse_term(const std::string& text, Signature& sig, const ParseOptions& opt = {});
Term parse_term(const std::string& text, const ParseOptions& opt = {});
Type parse_type(const std::string& text);

// Collapses runs of whitespace, dropping it next to punctuation.
std::string normalize_whitespace(const std::string& s);

}  // namespace rho
