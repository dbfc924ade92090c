#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "gm/interval.hpp"

namespace gm {

// Dense polynomial, coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;  // zero
  explicit Polynomial(std::vector<double> coeffs);
  static Polynomial constant(double c) { return Polynomial({c}); }

  double operator()(double t) const;
  Polynomial antiderivative() const;  // F with F(0) = 0
  Polynomial plus(const Polynomial& o) const;
  Polynomial times(const Polynomial& o) const;
  Polynomial scaled(double a) const;
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

 private:
  std::vector<double> c_;
};

// A smooth function given by a callable, with an optional exact
// antiderivative.  Pieces without one fall back to internal quadrature.
struct SmoothFn {
  std::function<double(double)> fn;
  std::function<double(double)> antiderivative;  // may be empty
};

using PieceFn = std::variant<Polynomial, SmoothFn>;

double piece_eval(const PieceFn& p, double t);
bool piece_has_antiderivative(const PieceFn& p);
// Integral of the piece over [l, r]; exact when an antiderivative is known,
// otherwise adaptive Gauss-Kronrod at `quad_tol` absolute tolerance.
double piece_integral(const PieceFn& p, double l, double r, double quad_tol = 1e-12);
PieceFn piece_negate(const PieceFn& p);
PieceFn piece_scale(const PieceFn& p, double a);
PieceFn piece_product(const PieceFn& a, const PieceFn& b);

// Adaptive Gauss-Kronrod (G7K15) to an absolute tolerance.  Plumbing used by
// pieces without a closed-form antiderivative; not the gauge integrator.
double gauss_kronrod_adaptive(const std::function<double(double)>& f, double l, double r,
                              double abs_tol, int max_depth = 60);

// Piecewise function on [b_0, b_K], with an optional tail piece on
// [b_K, +inf).  Evaluates to 0 outside its domain.  Pieces live on
// [b_i, b_{i+1}); the last bounded piece also owns its right endpoint.
class PiecewiseFn {
 public:
  PiecewiseFn() = default;  // identically zero
  PiecewiseFn(std::vector<double> breakpoints, std::vector<PieceFn> pieces,
              std::optional<PieceFn> tail = std::nullopt);

  static PiecewiseFn constant(double c, double lo, double hi);
  static PiecewiseFn from_poly(Polynomial p, double lo, double hi);

  double operator()(double t) const;
  // Integral over [l, r] clipped to the domain (plus tail piece if present);
  // r must be finite.
  double integrate(double l, double r) const;

  bool trivial() const { return bps_.empty(); }
  const std::vector<double>& breakpoints() const { return bps_; }
  const std::vector<PieceFn>& pieces() const { return pieces_; }
  bool has_tail() const { return tail_.has_value(); }
  const PieceFn* tail_piece() const { return tail_ ? &*tail_ : nullptr; }
  double domain_lo() const { return bps_.empty() ? 0.0 : bps_.front(); }
  double domain_hi() const { return bps_.empty() ? 0.0 : bps_.back(); }

  // Cumulative integral from domain_lo to x (x clipped to the bounded
  // domain; values beyond domain_hi extend through the tail piece).
  double cumulative(double x) const;

  PiecewiseFn scaled(double a) const;
  // Sum of scaled piecewise functions over the union of their breakpoints.
  static PiecewiseFn linear_combination(
      const std::vector<std::pair<double, const PiecewiseFn*>>& terms);
  PiecewiseFn product(const PiecewiseFn& o) const;

  // Points where the function changes sign, found by sampling plus
  // bisection refinement.  Throws SignChangeResolutionFailure when the count
  // does not stabilize under sample doubling or exceeds `max_roots`.
  std::vector<double> sign_change_points(int max_roots = 512) const;

  // |f|: splits pieces at sign changes and negates negative spans, so
  // polynomial pieces keep exact antiderivatives.
  PiecewiseFn absolute() const;

  // Piecewise-constant sign of f (+1/-1 per span, split at sign changes).
  PiecewiseFn sign_piecewise() const;

 private:
  void build_cumulative();
  std::vector<double> bps_;
  std::vector<PieceFn> pieces_;
  std::optional<PieceFn> tail_;
  std::vector<double> cum_;  // cumulative integral at each breakpoint
};

}  // namespace gm
