#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gm/interval.hpp"
#include "gm/piecewise.hpp"

namespace gm {

// A scalar integrand: a callable plus the structure the integrator can
// exploit.  Declared breakpoints become initial cell boundaries (simple
// functions then integrate exactly); exempt points are finite sets the tags
// must avoid, standing in for "defined m-almost everywhere".
class Integrand {
 public:
  Integrand() : fn_([](double) { return 0.0; }) {}
  explicit Integrand(std::function<double(double)> fn) : fn_(std::move(fn)) {}

  static Integrand constant(double c) {
    return Integrand([c](double) { return c; });
  }
  static Integrand from_piecewise(const PiecewiseFn& p);

  double operator()(double t) const { return fn_(t); }

  Integrand& with_breakpoints(std::vector<double> bps);
  Integrand& add_breakpoints(const std::vector<double>& bps);
  Integrand& with_exempt(std::vector<double> pts);
  // Value at the ideal point +inf; must be 0 for tails to contribute 0.
  Integrand& with_value_at_infinity(double v);
  // b -> bound on |integral over (b, +inf)|, used by the unbounded driver.
  Integrand& with_tail_bound(std::function<double(double)> bound);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& exempt() const { return exempt_; }
  bool at_infinity_declared() const { return at_infinity_.has_value(); }
  double value_at_infinity() const { return at_infinity_.value_or(0.0); }
  const std::function<double(double)>& tail_bound() const { return tail_bound_; }
  bool is_exempt(double t) const;

  // chi_A * f: zero outside A, with A's endpoints declared as breakpoints.
  Integrand masked_to(const MeasurableSet& a) const;
  // f * chi_{T \ M}: zero on M.
  Integrand masked_zero_on(const MeasurableSet& m) const;

  static Integrand product(const Integrand& a, const Integrand& b);
  static Integrand linear(double alpha, const Integrand& a, double beta, const Integrand& b);
  static Integrand abs_difference(const Integrand& a, const Integrand& b);
  static Integrand absolute(const Integrand& a);

 private:
  std::function<double(double)> fn_;
  std::vector<double> breakpoints_;
  std::vector<double> exempt_;
  std::optional<double> at_infinity_;
  std::function<double(double)> tail_bound_;
};

}  // namespace gm
