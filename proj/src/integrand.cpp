#include "gm/integrand.hpp"

#include <algorithm>

namespace gm {

namespace {
std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<double> merged(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a);
  out.insert(out.end(), b.begin(), b.end());
  return sorted_unique(std::move(out));
}
}  // namespace

Integrand Integrand::from_piecewise(const PiecewiseFn& p) {
  Integrand out([p](double t) { return p(t); });
  out.breakpoints_ = p.breakpoints();
  return out;
}

Integrand& Integrand::with_breakpoints(std::vector<double> bps) {
  breakpoints_ = sorted_unique(std::move(bps));
  return *this;
}

Integrand& Integrand::add_breakpoints(const std::vector<double>& bps) {
  breakpoints_ = merged(breakpoints_, bps);
  return *this;
}

Integrand& Integrand::with_exempt(std::vector<double> pts) {
  exempt_ = sorted_unique(std::move(pts));
  return *this;
}

Integrand& Integrand::with_value_at_infinity(double v) {
  at_infinity_ = v;
  return *this;
}

Integrand& Integrand::with_tail_bound(std::function<double(double)> bound) {
  tail_bound_ = std::move(bound);
  return *this;
}

bool Integrand::is_exempt(double t) const {
  return std::binary_search(exempt_.begin(), exempt_.end(), t);
}

Integrand Integrand::masked_to(const MeasurableSet& a) const {
  Integrand out([fn = fn_, a](double t) { return a.contains(t) ? fn(t) : 0.0; });
  out.breakpoints_ = breakpoints_;
  for (const auto& iv : a.parts()) {
    out.breakpoints_.push_back(iv.lo);
    if (iv.hi != kInf) out.breakpoints_.push_back(iv.hi);
  }
  out.breakpoints_ = sorted_unique(std::move(out.breakpoints_));
  out.exempt_ = exempt_;
  out.at_infinity_ = at_infinity_ ? std::optional<double>(0.0) : std::nullopt;
  if (a.unbounded() && at_infinity_) out.at_infinity_ = at_infinity_;
  out.tail_bound_ = tail_bound_;
  return out;
}

Integrand Integrand::masked_zero_on(const MeasurableSet& m) const {
  Integrand out([fn = fn_, m](double t) { return m.contains(t) ? 0.0 : fn(t); });
  out.breakpoints_ = breakpoints_;
  for (const auto& iv : m.parts()) {
    out.breakpoints_.push_back(iv.lo);
    if (iv.hi != kInf) out.breakpoints_.push_back(iv.hi);
  }
  out.breakpoints_ = sorted_unique(std::move(out.breakpoints_));
  out.exempt_ = exempt_;
  out.at_infinity_ = at_infinity_;
  out.tail_bound_ = tail_bound_;
  return out;
}

Integrand Integrand::product(const Integrand& a, const Integrand& b) {
  Integrand out([fa = a.fn_, fb = b.fn_](double t) { return fa(t) * fb(t); });
  out.breakpoints_ = merged(a.breakpoints_, b.breakpoints_);
  out.exempt_ = merged(a.exempt_, b.exempt_);
  if (a.at_infinity_ && b.at_infinity_)
    out.at_infinity_ = *a.at_infinity_ * *b.at_infinity_;
  return out;
}

Integrand Integrand::linear(double alpha, const Integrand& a, double beta, const Integrand& b) {
  Integrand out(
      [alpha, fa = a.fn_, beta, fb = b.fn_](double t) { return alpha * fa(t) + beta * fb(t); });
  out.breakpoints_ = merged(a.breakpoints_, b.breakpoints_);
  out.exempt_ = merged(a.exempt_, b.exempt_);
  if (a.at_infinity_ && b.at_infinity_)
    out.at_infinity_ = alpha * *a.at_infinity_ + beta * *b.at_infinity_;
  return out;
}

Integrand Integrand::abs_difference(const Integrand& a, const Integrand& b) {
  Integrand out([fa = a.fn_, fb = b.fn_](double t) { return std::abs(fa(t) - fb(t)); });
  out.breakpoints_ = merged(a.breakpoints_, b.breakpoints_);
  out.exempt_ = merged(a.exempt_, b.exempt_);
  if (a.at_infinity_ && b.at_infinity_)
    out.at_infinity_ = std::abs(*a.at_infinity_ - *b.at_infinity_);
  return out;
}

Integrand Integrand::absolute(const Integrand& a) {
  Integrand out([fa = a.fn_](double t) { return std::abs(fa(t)); });
  out.breakpoints_ = a.breakpoints_;
  out.exempt_ = a.exempt_;
  if (a.at_infinity_) out.at_infinity_ = std::abs(*a.at_infinity_);
  return out;
}

}  // namespace gm
