#include "d2dcache/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "d2dcache/errors.hpp"

namespace d2dcache {

namespace {

void require_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
}

double reuse_growth(const TheoryParams& params) {
  return 1.0 + 1.5 * params.effective_delta();
}

double prefactor(const TheoryParams& params, double C) {
  if (params.delta_limit) return C;
  if (!(params.delta > 0.0)) throw DomainError("delta must be positive (or use the limit flag)");
  return 16.0 * C / (params.delta * params.delta);
}

double fixed_point_residual(double gamma, double x) {
  return x - std::log1p((2.0 - gamma) * x);
}

}  // namespace

double alpha_exponent(double gamma) { return (1.0 - gamma) / (2.0 - gamma); }

double solve_fixed_point(double gamma) {
  require_gamma(gamma);
  const double alpha = alpha_exponent(gamma);
  const double slope = 2.0 - gamma;
  constexpr double tol = 1e-13;

  // Starting above the root, the iterates decrease monotonically towards it.
  double x = 2.0;
  for (int it = 0; it < 200000; ++it) {
    const double next = std::log1p(slope * x);
    if (std::abs(next - x) < 1e-16 || next == x) {
      x = next;
      break;
    }
    x = next;
  }
  if (x > alpha && std::abs(fixed_point_residual(gamma, x)) < tol) return x;

  // log1p(slope x) - x is positive at alpha and negative at slope.
  double lo = alpha;
  double hi = std::max(slope, 2.0);
  for (int it = 0; it < 400 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (fixed_point_residual(gamma, mid) < 0.0) lo = mid; else hi = mid;
  }
  x = 0.5 * (lo + hi);
  if (!(x > alpha) || !(std::abs(fixed_point_residual(gamma, x)) < tol)) {
    throw NumericalError("fixed point iteration did not converge");
  }
  return x;
}

TheoryParams TheoryParams::make(double gamma, int M, double delta, bool delta_limit) {
  require_gamma(gamma);
  if (M < 1) throw DomainError("M must be at least 1");
  if (delta < 0.0 || !std::isfinite(delta)) throw DomainError("delta must be nonnegative");
  TheoryParams p;
  p.gamma = gamma;
  p.M = M;
  p.delta = delta;
  p.delta_limit = delta_limit;
  p.alpha = alpha_exponent(gamma);
  const AchievableConstants c = achievable_constants(gamma, M);
  p.a = c.a;
  p.b = c.b;
  p.A = c.A;
  p.x_star = solve_fixed_point(gamma);
  p.rho_star = d2dcache::rho_star(p);
  return p;
}

double zeta(double rho, const TheoryParams& params) {
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  const double g = params.gamma;
  const double scaled = std::pow(reuse_growth(params), 2.0 / (2.0 - g)) * rho;
  return std::pow(scaled, 2.0 - g) * std::pow(static_cast<double>(params.M), 1.0 - g);
}

double rho_star(const TheoryParams& params) {
  const double g = params.gamma;
  const double x = params.x_star > 0.0 ? params.x_star : solve_fixed_point(g);
  return std::pow(x / std::pow(static_cast<double>(params.M), 1.0 - g), 1.0 / (2.0 - g)) /
         std::pow(reuse_growth(params), 2.0 / (2.0 - g));
}

double f_ub(double rho, const TheoryParams& params, double C) {
  const double z = zeta(rho, params);
  return prefactor(params, C) / rho * -std::expm1(-z);
}

double outage_lower_bound_finite(double g, int m, int M, double gamma) {
  if (!(g > 0.0)) throw DomainError("g must be positive");
  if (m < 1 || M < 1) throw DomainError("m and M must be at least 1");
  require_gamma(gamma);
  const double cached = static_cast<double>(M) * g;
  if (cached >= static_cast<double>(m)) return 0.0;
  const double e = 1.0 - gamma;
  const double num = (std::pow(cached, e) - 1.0) / e + 1.0;
  const double den = (std::pow(static_cast<double>(m), e) - 1.0) / e;
  if (!(den > 0.0)) return 0.0;
  return std::clamp(1.0 - num / den, 0.0, 1.0);
}

double sum_throughput_upper_finite(double g, const NetworkConfig& config, int m, double gamma) {
  if (!(g >= 1.0)) throw DomainError("g must be at least 1");
  if (!(config.delta > 0.0)) throw DomainError("delta must be positive");
  const double plb = outage_lower_bound_finite(g, m, config.M, gamma);
  const double growth = 1.0 + 1.5 * config.delta;
  double bracket = 1.0;
  if (plb > 0.0) bracket = -std::expm1(growth * growth * g * std::log(plb));
  return 16.0 * config.link_rate / (config.delta * config.delta) * bracket *
         (static_cast<double>(config.n) / g);
}

double disk_size_for_outage(double p, int m, int M, double gamma) {
  const double lo_g = 1.0 / static_cast<double>(M);
  if (outage_lower_bound_finite(lo_g, m, M, gamma) <= p) return lo_g;
  double lo = lo_g;
  double hi = static_cast<double>(m) / static_cast<double>(M);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (outage_lower_bound_finite(mid, m, M, gamma) <= p) hi = mid; else lo = mid;
  }
  return hi;
}

std::optional<double> per_user_upper_bound_at(double p, const NetworkConfig& config, int m,
                                              double gamma) {
  std::optional<double> best;
  for (int g = 1; g <= config.n; ++g) {
    if (outage_lower_bound_finite(g, m, config.M, gamma) > p) continue;
    const double t = sum_throughput_upper_finite(g, config, m, gamma) / config.n;
    if (!best || t > *best) best = t;
  }
  return best;
}

double AchievableConstants::B(double rho2) const {
  if (!(rho2 > 0.0)) throw DomainError("rho2 must be positive");
  return a * std::pow(rho2, 1.0 - gamma) / (1.0 + a * std::pow(rho2, 2.0 - gamma));
}

AchievableConstants achievable_constants(double gamma, int M) {
  require_gamma(gamma);
  if (M < 1) throw DomainError("M must be at least 1");
  AchievableConstants c;
  c.gamma = gamma;
  c.a = std::pow(gamma, gamma) * std::pow(static_cast<double>(M), 1.0 - gamma);
  c.b = std::pow((1.0 - gamma) / c.a, 1.0 / (2.0 - gamma));
  c.A = std::pow(gamma, gamma / (1.0 - gamma));
  c.D = c.B(c.b);
  return c;
}

OuterBoundCase select_outer_case(const TheoryParams& params, int m, int n) {
  const double m_alpha = std::pow(static_cast<double>(m), params.alpha);
  if (!params.delta_limit) {
    const double window_top = 16.0 / (params.delta * params.delta * params.rho_star);
    if (m_alpha / n > window_top) return OuterBoundCase::Third;
  }
  const double g_max = std::min(static_cast<double>(m) / params.M, static_cast<double>(n));
  return g_max > params.rho_star * m_alpha ? OuterBoundCase::First : OuterBoundCase::Second;
}

double outer_bound_first_line(double p, const TheoryParams& params, double C, int m) {
  if (!(p < 1.0)) return std::numeric_limits<double>::infinity();
  return prefactor(params, C) * params.M /
         (static_cast<double>(m) * std::pow(1.0 - p, 1.0 / (1.0 - params.gamma)));
}

std::vector<CurvePoint> outer_bound_curve(const TheoryParams& params, double C, int m, int n,
                                          std::span<const double> p_grid,
                                          const OuterBoundOptions& options) {
  const double g = params.gamma;
  const double e = 1.0 - g;
  const double md = static_cast<double>(m);
  const double m_alpha = std::pow(md, params.alpha);
  const OuterBoundCase which = select_outer_case(params, m, n);
  const char* tag = which == OuterBoundCase::First ? "O1" : "O2";

  NetworkConfig finite;
  finite.n = n;
  finite.M = params.M;
  finite.delta = params.delta;
  finite.link_rate = C;
  const bool has_finite = !params.delta_limit && params.delta > 0.0;

  const double g_max = std::min(md / params.M, static_cast<double>(n));
  const double p_min = 1.0 - std::pow(params.M * g_max / md, e);
  const double knee = 1.0 - std::pow(params.M * params.rho_star, e) / m_alpha;
  const double rho_line = options.rho_prime ? std::max(*options.rho_prime, params.rho_star)
                                            : std::numeric_limits<double>::infinity();
  const double line_knee = std::isfinite(rho_line)
                               ? 1.0 - std::pow(params.M * rho_line, e) / m_alpha
                               : -std::numeric_limits<double>::infinity();

  std::vector<CurvePoint> out;
  out.reserve(p_grid.size());
  for (double p : p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("outage grid must lie in [0, 1]");
    CurvePoint pt;
    pt.p = p;
    if (which == OuterBoundCase::Third) {
      const double ratio = params.M * static_cast<double>(n) / md;
      if (p >= 1.0 - std::pow(ratio, e)) {
        pt.feasible = true;
        pt.t = C * std::pow(ratio, e);
        pt.regime = "O3";
        pt.g = static_cast<double>(n);
      } else {
        pt.regime = "infeasible";
      }
    } else if (p < p_min - 1e-15) {
      pt.regime = "infeasible";
    } else if (p >= knee) {
      pt.feasible = true;
      pt.t = f_ub(params.rho_star, params, C) / m_alpha;
      pt.regime = std::string(tag) + "-L3";
      pt.g = params.rho_star * m_alpha;
    } else {
      pt.feasible = true;
      const double rho = std::pow((1.0 - p) * m_alpha, 1.0 / e) / params.M;
      pt.g = rho * m_alpha;
      const double first = outer_bound_first_line(p, params, C, m);
      if (p < line_knee) {
        pt.t = first;
        pt.regime = std::string(tag) + "-L1";
      } else {
        pt.t = std::min(first, f_ub(rho, params, C) / m_alpha);
        pt.regime = std::string(tag) + "-L2";
      }
    }
    if (pt.feasible && has_finite) {
      const double gd = std::max(1.0, disk_size_for_outage(p, m, params.M, g));
      if (gd <= static_cast<double>(n)) {
        pt.t_finite = sum_throughput_upper_finite(gd, finite, m, g) / n;
      }
    }
    out.push_back(std::move(pt));
  }
  return out;
}

double achievable_middle_branch(double p, const TheoryParams& params, double C, int K, int m) {
  if (!(p < 1.0)) return std::numeric_limits<double>::infinity();
  return C * params.A / K * params.M /
         (static_cast<double>(m) * std::pow(1.0 - p, 1.0 / (1.0 - params.gamma)));
}

std::vector<CurvePoint> achievable_curve(const TheoryParams& params, double C, int K, int m,
                                         int n, std::span<const double> p_grid,
                                         const AchievableOptions& options) {
  if (K < 1) throw DomainError("K must be at least 1");
  const double g = params.gamma;
  const double e = 1.0 - g;
  const double md = static_cast<double>(m);
  const double m_alpha = std::pow(md, params.alpha);
  const AchievableConstants c = achievable_constants(g, params.M);
  const double rho2 = options.rho2 ? *options.rho2 : c.b;
  if (!(rho2 >= c.b)) throw DomainError("rho2 must be at least b");
  const double top = 1.0 - c.a * std::pow(c.b, e) / m_alpha;
  const double third = 1.0 - c.a * std::pow(rho2, e) / m_alpha;

  std::vector<CurvePoint> out;
  out.reserve(p_grid.size());
  for (double p : p_grid) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("outage grid must lie in (0, 1]");
    CurvePoint pt;
    pt.p = p;
    if (p >= top) {
      pt.t = C * c.D / K / m_alpha;
      pt.g = c.b * m_alpha;
      pt.regime = "R4";
    } else if (p >= third) {
      pt.t = C * c.B(rho2) / K / m_alpha;
      pt.g = rho2 * m_alpha;
      pt.regime = "R3";
    } else if (p >= 1.0 - g) {
      pt.t = achievable_middle_branch(p, params, C, K, m);
      pt.g = md / params.M * std::pow(1.0 - p, 1.0 / e) / c.A;
      pt.regime = "R2";
    } else {
      const double rho1 = g - std::log(p / (1.0 - g));
      pt.t = C / K * params.M / (rho1 * md);
      pt.g = rho1 * md / params.M;
      pt.regime = "R1";
    }
    pt.feasible = pt.g <= static_cast<double>(n);
    if (!pt.feasible) {
      pt.t = 0.0;
      pt.regime = "infeasible";
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace d2dcache
