#pragma once

#include "fedq/poly_jet.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace fedq {

class ParseError : public Error {
public:
  ParseError(std::size_t pos, const std::string& msg)
      : Error("parse error at " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

// Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := rational | 'i' | ident | '(' expr ')'
//   rational := int ('/' uint)?
PolyJet parse_poly(std::string_view src, const VarsPtr& vars, int cap = PolyJet::kNoCap);

std::string print_monomial(Mono m, const VarList& vars);

/// Deterministic rendering in canonical term order, e.g. "-1/2*i*x*y + x^2".
std::string print_canonical(const PolyJet& p);

}  // namespace fedq
