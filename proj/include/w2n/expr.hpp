#pragma once

#include <optional>

#include "w2n/wgen.hpp"

namespace w2n {

// Parsed field expression: generator/current/vertex references combined by
// normal products, derivatives, scalar multiples and sums.
struct FieldExpr {
  enum class kind { generator, current, vertex, normal_product, derivative, scalar_mul, sum };
  kind k = kind::current;

  char gen = 0;          // E H F T W L Z
  int n = 0, m = 0;      // generator / vertex realization
  std::string label;     // current name, e.g. "A1", "Q+", "Y"
  int deriv = 0;         // current derivative order
  bool star = false;     // vertex: V vs V*
  RatK scalar;           // scalar_mul
  std::vector<FieldExpr> args;

  friend bool operator==(const FieldExpr& a, const FieldExpr& b);
};

FieldExpr parse_expression(const std::string& text);
std::string render_expression(const FieldExpr& e);

struct ResolvedField {
  RootData rd;
  VertexField field;
};

// Resolves against the (n, m) context; explicit references must agree with it
// (and with each other) and supply it when absent.
ResolvedField resolve_expression(const FieldExpr& e, std::optional<std::pair<int, int>> nm);

} // namespace w2n
