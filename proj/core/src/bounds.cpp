#include "rv/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace rv {

namespace {

double ipow(double base, int exponent) {
  if (exponent < 0) throw std::domain_error("ipow: negative exponent");
  double v = 1.0;
  for (int i = 0; i < exponent; ++i) v *= base;
  return v;
}

void check_r(double r) {
  if (!(r > 1.0)) throw std::domain_error("bounds: growth factor must exceed 1");
}

double coin_q(int n) {
  if (n < 2) throw std::domain_error("bounds: need at least 2 robots");
  return std::ldexp(1.0, 1 - n);  // 2 / 2^n
}

}  // namespace

int i_star(double r) {
  check_r(r);
  const double x = std::abs(std::log(r * r - 1.0) / std::log(r * r));
  // The 1e-9 shave keeps exact-power edge cases (r*r == 2 up to rounding) on
  // the mathematically intended side of the ceiling.
  return 1 + static_cast<int>(std::ceil(x - 1e-9));
}

double alpha(int k, double r) {
  if (k < 0) throw std::domain_error("alpha: k must be non-negative");
  return 0.5 * k + static_cast<double>(i_star(r));
}

double p_meet(int n) { return 1.0 - coin_q(n); }

double p_active(double round, double alpha_value, int n) {
  const double q = coin_q(n);
  if (round < alpha_value) return 1.0;
  const double e = round - alpha_value + 1.0;
  const auto ei = static_cast<long long>(std::llround(e));
  if (std::abs(e - static_cast<double>(ei)) < 1e-9 && ei >= 0) {
    double v = 1.0;
    for (long long i = 0; i < ei; ++i) v *= q;
    return v;
  }
  return std::pow(q, e);
}

double stage1_bound(double r, int k) {
  check_r(r);
  if (k < 0) throw std::domain_error("stage1_bound: k must be non-negative");
  const double coef = (r + 2.0 + 1.0 / r) / (r * r - 1.0);
  return ipow(r, k + 2 * i_star(r)) * coef;
}

double stage2_bound(double r, int k, int n) {
  check_r(r);
  if (k < 0) throw std::domain_error("stage2_bound: k must be non-negative");
  if (n < 3) throw std::domain_error("stage2_bound: need at least 3 robots");
  const double q = coin_q(n);
  const double rho = r * r * q;
  if (!(rho < 1.0)) throw std::domain_error("stage2_bound: series diverges for this r and n");
  // Per late-pairing round: a successful pairing costs the slow collection
  // walk, a failed one only the round itself.
  const double c_slow = r * r * r + 2.0 * r * r + 2.0 * r + 1.0 / r + 2.0;
  const double c_fast = r + 2.0 + 1.0 / r;
  const double per_round = (1.0 - q) * c_slow + q * c_fast;
  double term = ipow(r, k + 2 * i_star(r)) * per_round * q;
  double sum = 0.0;
  while (true) {
    sum += term;
    term *= rho;
    if (term / (1.0 - rho) <= 1e-12) break;
  }
  return sum;
}

double stage2_bound_closed3(double r, int k) {
  check_r(r);
  if (k < 0) throw std::domain_error("stage2_bound_closed3: k must be non-negative");
  if (!(r < 2.0)) throw std::domain_error("stage2_bound_closed3: requires r < 2");
  const double num = 0.75 * r * r * r + 1.5 * r * r + 1.75 * r + 1.0 / r + 2.0;
  return ipow(r, k + 2 * i_star(r)) * num / (4.0 - r * r);
}

double competitive_ratio(double r, int n) {
  return 2.0 * (stage1_bound(r, 0) + stage2_bound(r, 0, n));
}

double asymptotic_ratio(double r) { return 2.0 * stage1_bound(r, 0); }

BoundsReport evaluate_bounds(const BoundsInput& input) {
  if (input.n < 3) throw std::domain_error("evaluate_bounds: need at least 3 robots");
  if (input.k < 0) throw std::domain_error("evaluate_bounds: k must be non-negative");
  if (!(input.delta > 0.0) || input.delta > 1.0)
    throw std::domain_error("evaluate_bounds: delta must lie in (0, 1]");
  check_r(input.r);

  BoundsReport rep;
  rep.r = input.r;
  rep.n = input.n;
  rep.k = input.k;
  rep.delta = input.delta;
  rep.d = ipow(input.r, input.k) * std::pow(input.r, input.delta);
  rep.i_star = i_star(input.r);
  rep.alpha = alpha(input.k, input.r);
  rep.p_meet = p_meet(input.n);
  rep.stage1 = stage1_bound(input.r, input.k);
  rep.stage2 = stage2_bound(input.r, input.k, input.n);
  rep.expected_distance = rep.stage1 + rep.stage2;
  rep.ratio_at_delta = 2.0 * rep.expected_distance / rep.d;
  rep.worst_ratio = competitive_ratio(input.r, input.n);
  rep.asymptotic = asymptotic_ratio(input.r);
  return rep;
}

OptimizeResult optimize_growth(double lo, double hi, double step, int n, bool asymptotic) {
  if (!(lo > 1.0) || !(hi < 2.0) || !(lo <= hi))
    throw std::invalid_argument("optimize_growth: need 1 < lo <= hi < 2");
  if (!(step > 0.0)) throw std::invalid_argument("optimize_growth: step must be positive");
  if (!asymptotic && n < 3)
    throw std::invalid_argument("optimize_growth: need at least 3 robots");

  OptimizeResult out;
  out.asymptotic = asymptotic;
  out.n = n;
  const int m = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  out.grid.reserve(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) {
    const double r = lo + step * j;
    const double v = asymptotic ? asymptotic_ratio(r) : competitive_ratio(r, n);
    out.grid.push_back({r, v, i_star(r)});
  }

  std::size_t best = 0;
  for (std::size_t j = 1; j < out.grid.size(); ++j)
    if (out.grid[j].value < out.grid[best].value) best = j;
  out.best = out.grid[best];

  const std::size_t last = out.grid.size() - 1;
  for (std::size_t j = 0; j <= last; ++j) {
    const bool left_ok = (j == 0) || out.grid[j].value <= out.grid[j - 1].value;
    const bool right_ok = (j == last) || out.grid[j].value <= out.grid[j + 1].value;
    if (last > 0 && left_ok && right_ok) out.local_minima.push_back(out.grid[j]);
    if (j > 0 && out.grid[j].i_star != out.grid[j - 1].i_star)
      out.i_star_steps.push_back(out.grid[j].r);
  }
  if (last == 0) out.local_minima.push_back(out.grid[0]);
  return out;
}

}  // namespace rv
