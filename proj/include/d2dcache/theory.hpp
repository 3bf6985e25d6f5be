#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "d2dcache/geometry.hpp"

namespace d2dcache {

// alpha = (1 - gamma) / (2 - gamma).
double alpha_exponent(double gamma);

// Solves x = log(1 + (2 - gamma) x) on x > alpha by the contraction
// iteration, falling back to bisection. Throws NumericalError if neither
// reaches a residual below 1e-13 (x > alpha).
double solve_fixed_point(double gamma);

struct TheoryParams {
  double gamma = 0.5;
  int M = 1;
  double delta = 0.5;
  // Delta -> 0 limit: zeta uses delta = 0 and f_ub drops the 16/delta^2 factor.
  bool delta_limit = false;
  double alpha = 0.0;
  double a = 0.0;  // gamma^gamma M^(1-gamma)
  double b = 0.0;  // ((1-gamma)/a)^(1/(2-gamma))
  double A = 0.0;  // gamma^(gamma/(1-gamma))
  double x_star = 0.0;
  double rho_star = 0.0;

  static TheoryParams make(double gamma, int M, double delta, bool delta_limit = false);

  [[nodiscard]] double effective_delta() const noexcept { return delta_limit ? 0.0 : delta; }
};

// zeta(rho) = ((1 + 3 delta/2)^(2/(2-gamma)) rho)^(2-gamma) M^(1-gamma).
double zeta(double rho, const TheoryParams& params);

// The rho solving zeta(rho) = x_star (closed-form inverse of zeta).
double rho_star(const TheoryParams& params);

// f_ub(rho) = 16 C / (delta^2 rho) (1 - exp(-zeta(rho))). With delta_limit the
// 16/delta^2 factor is dropped. DomainError for delta == 0 without the flag.
double f_ub(double rho, const TheoryParams& params, double C);

// Outage lower bound for a one-hop disk of g nodes: 0 when g >= m/M, else
// 1 - [((Mg)^(1-gamma) - 1)/(1-gamma) + 1] / [(m^(1-gamma) - 1)/(1-gamma)],
// clamped to [0, 1]. Accepts non-integer g for root finding.
double outage_lower_bound_finite(double g, int m, int M, double gamma);

// Sum-throughput upper bound (16C/delta^2) (1 - plb(g)^((1+3delta/2)^2 g)) (n/g).
// Divide by n for the per-user bound.
double sum_throughput_upper_finite(double g, const NetworkConfig& config, int m, double gamma);

// Smallest disk size g (continuous, >= 1/M) with outage_lower_bound_finite(g) <= p.
double disk_size_for_outage(double p, int m, int M, double gamma);

// Per-user finite-n outer bound at outage p: the largest
// sum_throughput_upper_finite(g)/n over integer g in [1, n] whose outage lower
// bound does not exceed p. Empty when no such g exists.
std::optional<double> per_user_upper_bound_at(double p, const NetworkConfig& config, int m,
                                              double gamma);

struct AchievableConstants {
  double gamma = 0.5;
  double a = 0.0;
  double b = 0.0;
  double A = 0.0;
  double D = 0.0;

  // B(rho2) = a rho2^(1-gamma) / (1 + a rho2^(2-gamma)); B(b) == D.
  [[nodiscard]] double B(double rho2) const;
};

AchievableConstants achievable_constants(double gamma, int M);

struct CurvePoint {
  double p = 0.0;
  bool feasible = false;
  double t = 0.0;          // leading-term throughput (bits/slot, includes C)
  std::string regime;      // e.g. "O1-L3", "R2"; "infeasible"
  double g = 0.0;          // disk / cluster size matching p, 0 if not applicable
  std::optional<double> t_finite;  // finite-n per-user outer bound, outer curve only
};

enum class OuterBoundCase { First, Second, Third };

// Finite-size proxy of the scaling conditions: Third when m^alpha/n exceeds
// 16/(delta^2 rho*), First when min(m/M, n) leaves room for disks larger than
// rho* m^alpha, Second otherwise.
OuterBoundCase select_outer_case(const TheoryParams& params, int m, int n);

// 16 C M / (delta^2 m (1-p)^(1/(1-gamma))).
double outer_bound_first_line(double p, const TheoryParams& params, double C, int m);

struct OuterBoundOptions {
  // Below the outage 1 - (M rho')^(1-gamma) m^-alpha the first line is used
  // alone. The default keeps the min-form with rho' tied to p everywhere below
  // the rho* knee.
  std::optional<double> rho_prime;
};

std::vector<CurvePoint> outer_bound_curve(const TheoryParams& params, double C, int m, int n,
                                          std::span<const double> p_grid,
                                          const OuterBoundOptions& options = {});

// (C A / K) M / (m (1-p)^(1/(1-gamma))).
double achievable_middle_branch(double p, const TheoryParams& params, double C, int K, int m);

struct AchievableOptions {
  std::optional<double> rho2;  // defaults to b (third regime collapses onto the fourth)
};

std::vector<CurvePoint> achievable_curve(const TheoryParams& params, double C, int K, int m,
                                         int n, std::span<const double> p_grid,
                                         const AchievableOptions& options = {});

}  // namespace d2dcache
