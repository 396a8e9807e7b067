#include "xyghz/critical.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>
#include <string>

#include "xyghz/teleport.hpp"
#include "xyghz/xychain.hpp"

namespace xyghz {

namespace {

void check_domain(double gamma, double eta, double J) {
  if (!(J > 0.0) || !std::isfinite(J)) throw std::invalid_argument("critical: J must be > 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("critical: gamma must lie in [0, 1]");
  }
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("critical: eta must be >= 0");
  }
}

double threshold_of(CriticalKind kind) {
  switch (kind) {
    case CriticalKind::kConcurrence: return 0.0;
    case CriticalKind::kBellFraction: return 0.5;
    case CriticalKind::kFidelity: return 2.0 / 3.0;
  }
  return 0.0;
}

double asymptote_bound(CriticalKind kind, double gamma, double eta, double J) {
  return kind == CriticalKind::kFidelity ? t3_asymptote(gamma, eta, J)
                                         : t2_asymptote(gamma, eta, J);
}

void check_asymptote_args(double gamma, double eta, double J) {
  if (!(gamma > 0.0)) throw std::invalid_argument("asymptote: gamma must be > 0");
  if (!(eta > 0.0)) throw std::invalid_argument("asymptote: eta must be > 0");
  if (!(J > 0.0)) throw std::invalid_argument("asymptote: J must be > 0");
}

}  // namespace

CriticalKind critical_kind_from_int(int kind) {
  if (kind < 1 || kind > 3) {
    throw std::invalid_argument("critical kind must be 1, 2 or 3, got " + std::to_string(kind));
  }
  return static_cast<CriticalKind>(kind);
}

double critical_function(CriticalKind kind, double gamma, double eta, double J, double T) {
  const ChainParams p{J, gamma, eta, T};
  switch (kind) {
    case CriticalKind::kConcurrence: {
      // Signed lambda difference: continues below zero past the threshold.
      const PairMetrics m = pair_metrics(p);
      return m.lambdas[0] - m.lambdas[1] - m.lambdas[2] - m.lambdas[3];
    }
    case CriticalKind::kBellFraction:
      return pair_metrics(p).fef - 0.5;
    case CriticalKind::kFidelity:
      return fidelity_closed_form(p, TeleportConfig{}).phi_closed - 2.0 / 3.0;
  }
  throw std::invalid_argument("critical_function: unknown kind");
}

double zero_temperature_margin(CriticalKind kind, double gamma, double eta, double J) {
  const ChainParams p{J, gamma, eta, 0.0};
  switch (kind) {
    case CriticalKind::kConcurrence: return pair_metrics(p).concurrence - threshold_of(kind);
    case CriticalKind::kBellFraction: return pair_metrics(p).fef - threshold_of(kind);
    case CriticalKind::kFidelity:
      return fidelity_closed_form(p, TeleportConfig{}).phi_closed - threshold_of(kind);
  }
  throw std::invalid_argument("zero_temperature_margin: unknown kind");
}

CriticalResult solve_critical(CriticalKind kind, double gamma, double eta, double J,
                              const SolverOptions& opts) {
  check_domain(gamma, eta, J);
  if (!(opts.scan_step > 0.0) || !(opts.t_lo > 0.0) || !(opts.t_hi > opts.t_lo) ||
      !(opts.tolerance > 0.0)) {
    throw std::invalid_argument("critical: inconsistent solver options");
  }

  CriticalResult r;
  r.kind = kind;
  r.gamma = gamma;
  r.eta = eta;

  double t_hi = opts.t_hi;
  if (opts.auto_expand && gamma > 0.0 && eta > 2.0) {
    t_hi = std::max(t_hi, 2.0 * asymptote_bound(kind, gamma, eta, J) / J);
  }
  auto f = [&](double t) { return critical_function(kind, gamma, eta, J, t * J); };

  // Descending scan; the first sign change from <= 0 to > 0 brackets the
  // largest root. Keep scanning to count further crossings.
  double upper = t_hi;
  double f_upper = f(upper);
  if (f_upper > 0.0) {
    // Still useful at the top of the range: the bound is too low.
    r.bracket_lo = r.bracket_hi = upper;
    r.t_over_j = upper;
    r.converged = false;
    return r;
  }

  bool found = false;
  double lo = 0.0;
  double hi = 0.0;
  for (long step = 1;; ++step) {
    double t = t_hi - static_cast<double>(step) * opts.scan_step;
    const bool last = t <= opts.t_lo;
    if (last) t = opts.t_lo;
    const double ft = f(t);
    if ((ft > 0.0) != (f_upper > 0.0)) {
      ++r.crossings;
      if (!found && ft > 0.0) {
        found = true;
        lo = t;
        hi = upper;
      }
    }
    upper = t;
    f_upper = ft;
    if (last) break;
  }

  if (!found) {
    // A ground state sitting exactly on the threshold is not useful; allow for
    // rounding in the Bell overlaps.
    r.converged = zero_temperature_margin(kind, gamma, eta, J) <= 1e-12;
    r.t_over_j = 0.0;
    return r;
  }

  const double tol = opts.tolerance;
  int iterations = 0;
  while (hi - lo > tol) {
    if (++iterations > 200) break;
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  r.bracket_lo = lo;
  r.bracket_hi = hi;
  r.t_over_j = 0.5 * (lo + hi);
  r.converged = hi - lo <= tol;
  return r;
}

CriticalResult t1_critical(double gamma, double eta, double J, const SolverOptions& opts) {
  return solve_critical(CriticalKind::kConcurrence, gamma, eta, J, opts);
}

CriticalResult t2_critical(double gamma, double eta, double J, const SolverOptions& opts) {
  return solve_critical(CriticalKind::kBellFraction, gamma, eta, J, opts);
}

CriticalResult t3_critical(double gamma, double eta, double J, const SolverOptions& opts) {
  return solve_critical(CriticalKind::kFidelity, gamma, eta, J, opts);
}

double t2_asymptote(double gamma, double eta, double J) {
  check_asymptote_args(gamma, eta, J);
  return eta * J / (std::log(eta) - std::log(gamma) + std::numbers::ln2);
}

double t3_asymptote(double gamma, double eta, double J) {
  check_asymptote_args(gamma, eta, J);
  return eta * J / (3.0 * std::log(eta) - 3.0 * std::log(gamma) + std::numbers::ln2);
}

std::vector<CriticalResult> sweep(CriticalKind kind, double gamma, std::span<const double> eta_grid,
                                  double J, const SolverOptions& opts, bool parallel) {
  for (std::size_t n = 1; n < eta_grid.size(); ++n) {
    if (!(eta_grid[n] > eta_grid[n - 1])) {
      throw std::invalid_argument("sweep: eta grid must be strictly ascending");
    }
  }
  std::vector<CriticalResult> rows;
  rows.reserve(eta_grid.size());
  if (!parallel) {
    for (double eta : eta_grid) rows.push_back(solve_critical(kind, gamma, eta, J, opts));
    return rows;
  }
  std::vector<std::future<CriticalResult>> pending;
  pending.reserve(eta_grid.size());
  for (double eta : eta_grid) {
    pending.push_back(std::async(std::launch::async, [=, &opts] {
      return solve_critical(kind, gamma, eta, J, opts);
    }));
  }
  for (auto& fut : pending) rows.push_back(fut.get());
  return rows;
}

}  // namespace xyghz
