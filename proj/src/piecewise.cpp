#include "gm/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gm/errors.hpp"

namespace gm {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double t) const {
  double v = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) v = v * t + c_[i];
  return v;
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(c_.size() + 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / static_cast<double>(i + 1);
  return Polynomial(std::move(a));
}

Polynomial Polynomial::plus(const Polynomial& o) const {
  std::vector<double> a(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) a[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) a[i] += o.c_[i];
  return Polynomial(std::move(a));
}

Polynomial Polynomial::times(const Polynomial& o) const {
  if (c_.empty() || o.c_.empty()) return Polynomial();
  std::vector<double> a(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) a[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(a));
}

Polynomial Polynomial::scaled(double s) const {
  std::vector<double> a(c_);
  for (double& x : a) x *= s;
  return Polynomial(std::move(a));
}

double piece_eval(const PieceFn& p, double t) {
  if (const auto* poly = std::get_if<Polynomial>(&p)) return (*poly)(t);
  return std::get<SmoothFn>(p).fn(t);
}

bool piece_has_antiderivative(const PieceFn& p) {
  if (std::holds_alternative<Polynomial>(p)) return true;
  return static_cast<bool>(std::get<SmoothFn>(p).antiderivative);
}

double piece_integral(const PieceFn& p, double l, double r, double quad_tol) {
  if (l == r) return 0.0;
  if (const auto* poly = std::get_if<Polynomial>(&p)) {
    const Polynomial F = poly->antiderivative();
    return F(r) - F(l);
  }
  const SmoothFn& s = std::get<SmoothFn>(p);
  if (s.antiderivative) return s.antiderivative(r) - s.antiderivative(l);
  return gauss_kronrod_adaptive(s.fn, l, r, quad_tol);
}

PieceFn piece_negate(const PieceFn& p) { return piece_scale(p, -1.0); }

PieceFn piece_scale(const PieceFn& p, double a) {
  if (const auto* poly = std::get_if<Polynomial>(&p)) return poly->scaled(a);
  const SmoothFn& s = std::get<SmoothFn>(p);
  SmoothFn out;
  out.fn = [f = s.fn, a](double t) { return a * f(t); };
  if (s.antiderivative)
    out.antiderivative = [F = s.antiderivative, a](double t) { return a * F(t); };
  return out;
}

PieceFn piece_product(const PieceFn& a, const PieceFn& b) {
  const auto* pa = std::get_if<Polynomial>(&a);
  const auto* pb = std::get_if<Polynomial>(&b);
  if (pa && pb) return pa->times(*pb);
  SmoothFn out;
  out.fn = [a, b](double t) { return piece_eval(a, t) * piece_eval(b, t); };
  return out;
}

namespace {

// G7K15 nodes/weights on [-1, 1] (positive half; symmetric).
constexpr double kKx[8] = {0.0,
                           0.207784955007898467600689403773245,
                           0.405845151377397166906606412076961,
                           0.586087235467691130294144838258730,
                           0.741531185599394439863864773280788,
                           0.864864423359769072789712788640926,
                           0.949107912342758524526189684047851,
                           0.991455371120812639206854697526329};
constexpr double kKw[8] = {0.209482141084727828012999174891714,
                           0.204432940075298892414161999234649,
                           0.190350578064785409913256402421014,
                           0.169004726639267902826583426598550,
                           0.140653259715525918745189590510238,
                           0.104790010322250183839876322541518,
                           0.063092092629978553290700663189204,
                           0.022935322010529224963732008058970};
constexpr double kGw[4] = {0.417959183673469387755102040816327,
                           0.381830050505118944950369775488975,
                           0.279705391489276667901467771423780,
                           0.129484966168869693270611432679082};

void gk15(const std::function<double(double)>& f, double a, double b, double& value,
          double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double f0 = f(c);
  double k = kKw[0] * f0;
  double g = kGw[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double x = h * kKx[i];
    const double s = f(c + x) + f(c - x);
    k += kKw[i] * s;
    if (i % 2 == 0) g += kGw[i / 2] * s;
  }
  value = k * h;
  err = std::abs((k - g) * h);
}

void gk_recurse(const std::function<double(double)>& f, double a, double b, double tol,
                int depth, double& acc) {
  double v, e;
  gk15(f, a, b, v, e);
  if (e <= tol || depth <= 0) {
    acc += v;
    return;
  }
  const double m = 0.5 * (a + b);
  gk_recurse(f, a, m, 0.5 * tol, depth - 1, acc);
  gk_recurse(f, m, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace

double gauss_kronrod_adaptive(const std::function<double(double)>& f, double l, double r,
                              double abs_tol, int max_depth) {
  if (l == r) return 0.0;
  double acc = 0.0;
  gk_recurse(f, l, r, std::max(abs_tol, 1e-300), max_depth, acc);
  return acc;
}

PiecewiseFn::PiecewiseFn(std::vector<double> breakpoints, std::vector<PieceFn> pieces,
                         std::optional<PieceFn> tail)
    : bps_(std::move(breakpoints)), pieces_(std::move(pieces)), tail_(std::move(tail)) {
  if (bps_.size() != pieces_.size() + 1)
    throw std::invalid_argument("piecewise: need breakpoints = pieces + 1");
  if (!std::is_sorted(bps_.begin(), bps_.end()))
    throw std::invalid_argument("piecewise: breakpoints not sorted");
  build_cumulative();
}

PiecewiseFn PiecewiseFn::constant(double c, double lo, double hi) {
  return PiecewiseFn({lo, hi}, {Polynomial::constant(c)});
}

PiecewiseFn PiecewiseFn::from_poly(Polynomial p, double lo, double hi) {
  return PiecewiseFn({lo, hi}, {std::move(p)});
}

void PiecewiseFn::build_cumulative() {
  cum_.assign(bps_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < bps_.size(); ++i)
    cum_[i + 1] = cum_[i] + piece_integral(pieces_[i], bps_[i], bps_[i + 1]);
}

double PiecewiseFn::operator()(double t) const {
  if (bps_.empty()) return 0.0;
  if (t < bps_.front()) return 0.0;
  if (t >= bps_.back()) {
    if (t == bps_.back() && !pieces_.empty()) return piece_eval(pieces_.back(), t);
    if (tail_) return piece_eval(*tail_, t);
    return 0.0;
  }
  const auto it = std::upper_bound(bps_.begin(), bps_.end(), t);
  const std::size_t idx = static_cast<std::size_t>(it - bps_.begin()) - 1;
  return piece_eval(pieces_[idx], t);
}

double PiecewiseFn::cumulative(double x) const {
  if (bps_.empty()) return 0.0;
  if (x <= bps_.front()) return 0.0;
  if (x >= bps_.back()) {
    double v = cum_.back();
    if (x > bps_.back() && tail_) v += piece_integral(*tail_, bps_.back(), x);
    return v;
  }
  const auto it = std::upper_bound(bps_.begin(), bps_.end(), x);
  const std::size_t idx = static_cast<std::size_t>(it - bps_.begin()) - 1;
  return cum_[idx] + piece_integral(pieces_[idx], bps_[idx], x);
}

double PiecewiseFn::integrate(double l, double r) const {
  if (std::isinf(r)) throw std::invalid_argument("piecewise integrate: r must be finite");
  if (l > r) return -integrate(r, l);
  return cumulative(r) - cumulative(l);
}

PiecewiseFn PiecewiseFn::scaled(double a) const {
  if (bps_.empty()) return PiecewiseFn();
  std::vector<PieceFn> ps;
  ps.reserve(pieces_.size());
  for (const auto& p : pieces_) ps.push_back(piece_scale(p, a));
  std::optional<PieceFn> tail;
  if (tail_) tail = piece_scale(*tail_, a);
  return PiecewiseFn(bps_, std::move(ps), std::move(tail));
}

namespace {

// Union of the breakpoint grids of several piecewise functions.
std::vector<double> merged_breakpoints(
    const std::vector<std::pair<double, const PiecewiseFn*>>& terms) {
  std::vector<double> pts;
  for (const auto& [coef, fn] : terms) {
    (void)coef;
    if (fn->trivial()) continue;
    pts.insert(pts.end(), fn->breakpoints().begin(), fn->breakpoints().end());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Piece of `fn` covering [l, r), or nullptr when outside the domain.
const PieceFn* covering_piece(const PiecewiseFn& fn, double l, double r, bool* is_tail) {
  *is_tail = false;
  if (fn.trivial()) return nullptr;
  const auto& bps = fn.breakpoints();
  if (r <= bps.front()) return nullptr;
  if (l >= bps.back()) {
    *is_tail = true;
    return fn.tail_piece();
  }
  const auto it = std::upper_bound(bps.begin(), bps.end(), l);
  const std::size_t idx = static_cast<std::size_t>(it - bps.begin()) - 1;
  return &fn.pieces()[idx];
}

}  // namespace

PiecewiseFn PiecewiseFn::linear_combination(
    const std::vector<std::pair<double, const PiecewiseFn*>>& terms) {
  std::vector<double> pts = merged_breakpoints(terms);
  if (pts.size() < 2) {
    if (pts.size() == 1) return PiecewiseFn();  // degenerate domain
    return PiecewiseFn();
  }
  std::vector<PieceFn> pieces;
  pieces.reserve(pts.size() - 1);
  bool any_tail = false;
  for (const auto& [coef, fn] : terms) {
    (void)coef;
    if (fn->has_tail()) any_tail = true;
  }

  auto combine_on = [&terms](double l, double r) -> PieceFn {
    // Collect contributing pieces on [l, r).
    std::vector<std::pair<double, const PieceFn*>> cover;
    for (const auto& [coef, fn] : terms) {
      bool is_tail = false;
      const PieceFn* p = covering_piece(*fn, l, r, &is_tail);
      if (p && coef != 0.0) cover.push_back({coef, p});
    }
    bool all_poly = true;
    for (const auto& [c, p] : cover) {
      (void)c;
      if (!std::holds_alternative<Polynomial>(*p)) all_poly = false;
    }
    if (all_poly) {
      Polynomial sum;
      for (const auto& [c, p] : cover) sum = sum.plus(std::get<Polynomial>(*p).scaled(c));
      return sum;
    }
    // General case: capture evaluations; keep an antiderivative only when
    // every term has one.
    bool all_F = true;
    for (const auto& [c, p] : cover) {
      (void)c;
      if (!piece_has_antiderivative(*p)) all_F = false;
    }
    std::vector<std::pair<double, PieceFn>> owned;
    owned.reserve(cover.size());
    for (const auto& [c, p] : cover) owned.push_back({c, *p});
    SmoothFn out;
    out.fn = [owned](double t) {
      double v = 0.0;
      for (const auto& [c, p] : owned) v += c * piece_eval(p, t);
      return v;
    };
    if (all_F) {
      out.antiderivative = [owned](double t) {
        double v = 0.0;
        for (const auto& [c, p] : owned) {
          if (const auto* poly = std::get_if<Polynomial>(&p)) {
            v += c * poly->antiderivative()(t);
          } else {
            v += c * std::get<SmoothFn>(p).antiderivative(t);
          }
        }
        return v;
      };
    }
    return out;
  };

  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    pieces.push_back(combine_on(pts[i], pts[i + 1]));

  std::optional<PieceFn> tail;
  if (any_tail) tail = combine_on(pts.back(), kInf);
  return PiecewiseFn(std::move(pts), std::move(pieces), std::move(tail));
}

PiecewiseFn PiecewiseFn::product(const PiecewiseFn& o) const {
  if (trivial() || o.trivial()) return PiecewiseFn();
  std::vector<double> pts;
  pts.insert(pts.end(), bps_.begin(), bps_.end());
  pts.insert(pts.end(), o.bps_.begin(), o.bps_.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // The product vanishes outside the intersection of the domains.
  const double lo = std::max(domain_lo(), o.domain_lo());
  double hi = std::min(domain_hi(), o.domain_hi());
  const bool both_tails = has_tail() && o.has_tail();
  if (both_tails) hi = std::max(domain_hi(), o.domain_hi());
  std::vector<double> grid;
  for (double p : pts)
    if (p >= lo && p <= hi) grid.push_back(p);
  if (grid.size() < 2) return PiecewiseFn();

  std::vector<PieceFn> pieces;
  auto piece_on = [&](double l, double r) -> PieceFn {
    bool t1 = false, t2 = false;
    const PieceFn* a = covering_piece(*this, l, r, &t1);
    const PieceFn* b = covering_piece(o, l, r, &t2);
    if (!a || !b) return Polynomial();
    return piece_product(*a, *b);
  };
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    pieces.push_back(piece_on(grid[i], grid[i + 1]));
  std::optional<PieceFn> tail;
  if (both_tails) tail = piece_on(grid.back(), kInf);
  return PiecewiseFn(std::move(grid), std::move(pieces), std::move(tail));
}

std::vector<double> PiecewiseFn::sign_change_points(int max_roots) const {
  std::vector<double> roots;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double l = bps_[i];
    const double r = bps_[i + 1];
    if (r <= l) continue;
    const PieceFn& p = pieces_[i];
    auto eval = [&p](double t) { return piece_eval(p, t); };

    // Count sign changes at resolution n, tracking the last nonzero sample
    // so crossings through exact zeros are not missed.
    auto count_at = [&](int n, std::vector<std::pair<double, double>>* brackets) {
      int count = 0;
      double last_t = l;
      double last_v = 0.0;
      bool have_sign = false;
      for (int k = 0; k <= n; ++k) {
        const double t = l + (r - l) * static_cast<double>(k) / n;
        const double v = eval(t);
        if (v == 0.0) continue;
        if (have_sign && ((last_v < 0) != (v < 0))) {
          ++count;
          if (brackets) brackets->push_back({last_t, t});
        }
        last_t = t;
        last_v = v;
        have_sign = true;
      }
      return count;
    };

    // Stability requires the count to agree at three consecutive resolutions.
    std::vector<std::pair<double, double>> brackets;
    bool stable = false;
    for (int n = 64; n <= 4096; n *= 2) {
      brackets.clear();
      const int c1 = count_at(n, &brackets);
      const int c2 = count_at(2 * n, nullptr);
      const int c3 = count_at(4 * n, nullptr);
      if (c1 == c2 && c2 == c3) {
        stable = true;
        break;
      }
    }
    if (!stable)
      throw SignChangeResolutionFailure("sign changes did not stabilize under sampling");
    if (static_cast<int>(roots.size() + brackets.size()) > max_roots)
      throw SignChangeResolutionFailure("too many sign changes");

    std::vector<double> piece_roots;
    for (auto [a, b] : brackets) {
      double fa = eval(a);
      for (int it = 0; it < 100 && b - a > 0.0; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = eval(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fa < 0) == (fm < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      piece_roots.push_back(0.5 * (a + b));
    }

    // Guard against aliasing: between isolated roots the sign must be
    // constant on a finer probe grid.
    std::vector<double> fences{l};
    fences.insert(fences.end(), piece_roots.begin(), piece_roots.end());
    fences.push_back(r);
    for (std::size_t s = 0; s + 1 < fences.size(); ++s) {
      int sign = 0;
      for (int q = 1; q <= 9; ++q) {
        const double t = fences[s] + (fences[s + 1] - fences[s]) * q / 10.0;
        const double v = eval(t);
        if (v == 0.0) continue;
        const int sg = v < 0 ? -1 : 1;
        if (sign == 0) sign = sg;
        else if (sign != sg)
          throw SignChangeResolutionFailure("sign not constant between isolated roots");
      }
    }
    roots.insert(roots.end(), piece_roots.begin(), piece_roots.end());
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

PiecewiseFn PiecewiseFn::sign_piecewise() const {
  if (trivial()) return PiecewiseFn();
  const std::vector<double> roots = sign_change_points();
  std::vector<double> grid(bps_);
  grid.insert(grid.end(), roots.begin(), roots.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<PieceFn> pieces;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double v = (*this)(0.5 * (grid[i] + grid[i + 1]));
    pieces.push_back(Polynomial::constant(v < 0 ? -1.0 : (v > 0 ? 1.0 : 0.0)));
  }
  return PiecewiseFn(std::move(grid), std::move(pieces));
}

PiecewiseFn PiecewiseFn::absolute() const {
  if (trivial()) return PiecewiseFn();
  const std::vector<double> roots = sign_change_points();
  std::vector<double> grid(bps_);
  grid.insert(grid.end(), roots.begin(), roots.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<PieceFn> pieces;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double l = grid[i];
    const double r = grid[i + 1];
    bool is_tail = false;
    const PieceFn* p = covering_piece(*this, l, r, &is_tail);
    if (!p) {
      pieces.push_back(Polynomial());
      continue;
    }
    const double mid_v = piece_eval(*p, 0.5 * (l + r));
    pieces.push_back(mid_v < 0 ? piece_negate(*p) : *p);
  }
  std::optional<PieceFn> tail;
  if (tail_) {
    // Tail sign taken just past the last breakpoint; the declared tail mass
    // governs unbounded queries, so this only affects bounded slices.
    const double probe = grid.back() + 1.0;
    const double v = piece_eval(*tail_, probe);
    tail = v < 0 ? piece_negate(*tail_) : *tail_;
  }
  return PiecewiseFn(std::move(grid), std::move(pieces), std::move(tail));
}

}  // namespace gm
