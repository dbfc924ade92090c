#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gm/integrand.hpp"
#include "gm/piecewise.hpp"

namespace gm {

// Expressions over a fixed vocabulary: numbers, 't', + - * /, '^' with an
// integer exponent, sin, cos, exp, abs, and piecewise(b, left, right) which
// is `left` for t < b and `right` otherwise (b a numeric literal).
// Reproducible configs instead of plugin code.
class Expr {
 public:
  static Expr parse(const std::string& text);  // throws ConfigError with a column

  double operator()(double t) const;
  // Split points contributed by piecewise() nodes.
  std::vector<double> breakpoints() const;
  // The whole expression as a polynomial in t, when it is one.
  std::optional<Polynomial> as_polynomial() const;
  bool constant_value(double* out) const;

  // Piecewise view on [lo, hi]: polynomial pieces where possible (exact
  // antiderivatives), callable pieces otherwise.
  PiecewiseFn to_piecewise(double lo, double hi) const;
  Integrand to_integrand() const;

  const std::string& text() const { return text_; }

 private:
  struct Node;
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace gm
