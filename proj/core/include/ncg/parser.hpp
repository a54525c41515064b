#pragma once

#include <memory>
#include <optional>
#include <string>

#include "ncg/alg.hpp"

namespace ncg {

struct ParseOptions {
  // When set, q is read as the constant s0^2 (and q^(k/2) as s0^k), so that
  // everything downstream computes at a rational point.
  std::optional<mpq_class> s0;
};

// Scalar expression: rationals, i, q-powers, + - * / ( ).
Scalar parse_scalar(const std::string& text, const ParseOptions& opt = {});

// Algebra expression over a presentation; see the presentation file grammar.
AlgElem parse_expr(const std::string& text, const Presentation& p, const ParseOptions& opt = {});

// Line-oriented presentation file with [generators], [rules], [star] and an
// optional [inverse] section declaring mutually inverse generator pairs.
std::shared_ptr<Presentation> parse_presentation(const std::string& text,
                                                 const ParseOptions& opt = {});

}  // namespace ncg
