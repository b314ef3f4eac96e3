#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace airsat {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
};

// Thrown when adaptive refinement runs out of subdivisions; carries the best
// estimate obtained so far and its error bound.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, double best, double bound)
      : std::runtime_error(msg), best_estimate(best), error_bound(bound) {}
  double best_estimate;
  double error_bound;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair (QUADPACK dqk15 constants).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
  double integral;
  double error;
};

template <class F>
PanelResult gauss_kronrod_15(F&& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  double fv1[7], fv2[7];
  const double fc = f(centre);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double absc = hlgth * kXgk[j];
    fv1[j] = f(centre - absc);
    fv2[j] = f(centre + absc);
    const double fsum = fv1[j] + fv2[j];
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc +=
        kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  const double ah = std::abs(hlgth);
  resabs *= ah;
  resasc *= ah;
  double abserr = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0)
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  const double epmach = std::numeric_limits<double>::epsilon();
  const double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * epmach))
    abserr = std::max(epmach * 50.0 * resabs, abserr);
  return {resk * hlgth, abserr};
}

}  // namespace detail

// Globally adaptive quadrature: repeatedly bisects the segment with the
// largest error estimate until |result - true| <= max(abs_tol, rel_tol*|result|)
// is credible, or the subdivision budget is exhausted (QuadratureError).
template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  if (!(a < b)) throw std::domain_error("integrate: requires a < b");
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0))
    throw std::domain_error("integrate: tolerances must be positive");

  struct Segment {
    double a, b, integral, error;
  };
  std::vector<Segment> segs;
  auto first = detail::gauss_kronrod_15(f, a, b);
  segs.push_back({a, b, first.integral, first.error});

  double total = first.integral;
  double total_err = first.error;
  for (int iter = 0; iter < spec.max_subdivisions; ++iter) {
    if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
      return total;
    std::size_t worst = 0;
    for (std::size_t i = 1; i < segs.size(); ++i)
      if (segs[i].error > segs[worst].error) worst = i;
    const Segment seg = segs[worst];
    const double mid = 0.5 * (seg.a + seg.b);
    if (!(seg.a < mid && mid < seg.b)) break;  // interval exhausted
    auto left = detail::gauss_kronrod_15(f, seg.a, mid);
    auto right = detail::gauss_kronrod_15(f, mid, seg.b);
    total += left.integral + right.integral - seg.integral;
    total_err += left.error + right.error - seg.error;
    segs[worst] = {seg.a, mid, left.integral, left.error};
    segs.push_back({mid, seg.b, right.integral, right.error});
  }
  if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
    return total;
  throw QuadratureError("integrate: did not converge within " +
                            std::to_string(spec.max_subdivisions) +
                            " subdivisions",
                        total, total_err);
}

// One partition of an integer, stored as part-size -> multiplicity.
struct IntegerPartition {
  std::map<int, int> multiplicities;
  int total() const {
    int t = 0;
    for (auto [part, count] : multiplicities) t += part * count;
    return t;
  }
};

// All partitions of k (k = 0 yields the single empty partition).
std::vector<IntegerPartition> partitions_of(int k);

// Binomial coefficient; exact for small arguments, <=1e-12 relative otherwise.
double binom(int n, int r);

namespace detail {
// Central finite-difference stencils of second-order accuracy, orders 1..6.
// Entry: {half-width, coefficients over offsets -w..w}.
inline const std::vector<std::vector<double>>& fd_stencils() {
  static const std::vector<std::vector<double>> s = {
      {-0.5, 0.0, 0.5},
      {1.0, -2.0, 1.0},
      {-0.5, 1.0, 0.0, -1.0, 0.5},
      {1.0, -4.0, 6.0, -4.0, 1.0},
      {-0.5, 2.0, -2.5, 0.0, 2.5, -2.0, 0.5},
      {1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0}};
  return s;
}

template <class F>
double fd_estimate(F&& f, double x, int order, double h) {
  const auto& coef = fd_stencils()[order - 1];
  const int w = static_cast<int>(coef.size()) / 2;
  double acc = 0.0;
  for (int i = -w; i <= w; ++i) {
    const double c = coef[i + w];
    if (c != 0.0) acc += c * f(x + i * h);
  }
  return acc / std::pow(h, order);
}
}  // namespace detail

// f^(order)(x) by central differences with one Richardson step (h, h/2).
// Oracle-grade accuracy only; see tests for the contexts it is used in.
template <class F>
double derivative_high_order(F&& f, double x, int order, double step) {
  if (order < 1 || order > 6)
    throw std::domain_error("derivative_high_order: order must be in [1,6]");
  const double d1 = detail::fd_estimate(f, x, order, step);
  const double d2 = detail::fd_estimate(f, x, order, step * 0.5);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace airsat
