#include "lerc/certify.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include <fmt/format.h>

#include "lerc/ce_controller.hpp"
#include "lerc/errors.hpp"
#include "lerc/kernels/kernels.hpp"
#include "lerc/kernels/scalar_math.hpp"
#include "lerc/riccati.hpp"

namespace lerc {
namespace {

constexpr int kScanDivisions = 256;

// Clamped sqrt(gamma^2 - P); nullopt when the radicand is genuinely negative.
std::optional<double> clamped_root(double P, double gamma) {
  const double radicand = gamma * gamma - P;
  if (!(radicand >= -kernels::scalar::radicand_slack(gamma))) return std::nullopt;
  return std::sqrt(radicand > 0.0 ? radicand : 0.0);
}

CertificationReport make_report(double a, double gamma, double P, bool feasible,
                                bool curvature, bool negativity) {
  CertificationReport r;
  r.a = a;
  r.gamma = gamma;
  r.P = P;
  r.p_feasible = feasible;
  r.curvature_ok = curvature;
  r.negativity_ok = negativity;
  r.certified = feasible && curvature && negativity;
  return r;
}

}  // namespace

bool curvature_condition(double P, double gamma) {
  return kernels::scalar::curvature_ok(P, gamma);
}

bool strong_negativity(double P, double gamma) {
  const auto root = clamped_root(P, gamma);
  if (!root) {
    throw DomainError(fmt::format(
        "strong_negativity: gamma^2 - P = {} is negative", gamma * gamma - P));
  }
  return kernels::scalar::negativity_ok(P, gamma, *root);
}

CertificationReport certify(double a, double gamma) {
  require(std::isfinite(gamma) && gamma > 0.0, "certify: gamma must be positive");
  const RiccatiResult solved = solve_riccati(Model::make(a, 1.0, 1.0), gamma);
  const auto* s = std::get_if<SolvedModel>(&solved);
  if (s == nullptr || !(s->P > 1.0)) {
    const double P = s ? s->P : std::numeric_limits<double>::quiet_NaN();
    return make_report(a, gamma, P, false, false, false);
  }
  const double P = s->P;
  const auto root = clamped_root(P, gamma);
  const bool negativity =
      root.has_value() && kernels::scalar::negativity_ok(P, gamma, *root);
  return make_report(a, gamma, P, true, curvature_condition(P, gamma), negativity);
}

std::vector<CertificationReport> certify_batch(std::span<const double> a,
                                               std::span<const double> gamma) {
  require(a.size() == gamma.size(), "certify_batch: length mismatch");
  for (double g : gamma) {
    require(std::isfinite(g) && g > 0.0, "certify_batch: gamma must be positive");
  }
  const std::size_t n = a.size();
  std::vector<double> P(n);
  std::vector<std::uint8_t> feasible(n), curvature(n), negativity(n);
  kernels::certify_points(a, gamma,
                          kernels::CertifyColumns{P, feasible, curvature, negativity});
  std::vector<CertificationReport> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(make_report(a[i], gamma[i], P[i], feasible[i] != 0,
                              curvature[i] != 0, negativity[i] != 0));
  }
  return out;
}

double gamma_lower_bound(double a) {
  const double r = std::sqrt(a * a + 1.0);
  return (std::abs(a) + r) * r;
}

double gamma_upper_bound(double a) { return 2.1 * a * a + 2.0; }

GammaStarSearch find_gamma_star(double a, double tol) {
  require(tol > 0.0, "gamma_star: tol must be positive");
  GammaStarSearch result;
  result.a = a;
  result.lower_bound = gamma_lower_bound(a);
  result.upper_bound = gamma_upper_bound(a);
  const double L = result.lower_bound;
  const double U = result.upper_bound;
  const double h = (U - L) / kScanDivisions;
  require(h > 0.0, "gamma_star: empty bound envelope");

  const auto certified = [a](double g) { return certify(a, g).certified; };

  // Bracket (lo, hi) with lo uncertified and hi certified.
  std::optional<std::pair<double, double>> bracket;
  if (certified(L)) {
    for (int j = 1;; ++j) {
      const double g = L - j * h;
      if (g <= 0.0) {
        bracket = std::make_pair(0.0, L - (j - 1) * h);
        break;
      }
      if (!certified(g)) {
        bracket = std::make_pair(g, L - (j - 1) * h);
        break;
      }
    }
  } else {
    std::vector<double> as(kScanDivisions, a), gs(kScanDivisions);
    bool previous = false;
    for (int k0 = 1; !bracket; k0 += kScanDivisions) {
      for (int k = 0; k < kScanDivisions; ++k) gs[k] = L + (k0 + k) * h;
      if (gs[0] > 2.0 * U) break;
      const auto reports = certify_batch(as, gs);
      for (int k = 0; k < kScanDivisions; ++k) {
        if (gs[k] > 2.0 * U) break;
        if (reports[k].certified && !previous) {
          bracket = std::make_pair(L + (k0 + k - 1) * h, gs[k]);
          break;
        }
        previous = reports[k].certified;
      }
    }
  }
  if (!bracket) return result;

  auto [lo, hi] = *bracket;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (certified(mid) ? hi : lo) = mid;
  }
  result.gamma = hi;
  result.within_bounds = hi >= L - tol && hi <= U + tol;
  return result;
}

double gamma_star(double a, double tol) {
  const GammaStarSearch s = find_gamma_star(a, tol);
  if (!s.gamma) {
    throw NotFound(fmt::format("no certified gamma below {} for a = {}",
                               2.0 * s.upper_bound, a));
  }
  require(s.within_bounds,
          fmt::format("gamma* = {} for a = {} outside [{}, {}]", *s.gamma, a,
                      s.lower_bound, s.upper_bound));
  return *s.gamma;
}

IntervalPair interval_pair(double P, double gamma) {
  if (!(P > 1.0)) throw DomainError(fmt::format("interval_pair: P = {} <= 1", P));
  const auto root = clamped_root(P, gamma);
  if (!root) throw DomainError("interval_pair: gamma^2 < P");
  const double g2 = gamma * gamma;
  const double D = (P + 1.0) * (P + 1.0) - 4.0 * g2;
  if (!(D > 0.0)) {
    throw DomainError(fmt::format(
        "interval_pair: curvature fails, (P+1)^2 - 4 gamma^2 = {}", D));
  }
  const double s = *root;
  const double r = 2.0 * s / (P - 1.0);
  const double k = P / (2.0 * g2);
  const double outer = k * (P + 2.0 * g2 - 1.0) / D;
  return IntervalPair{k / (1.0 + r), k / (1.0 - r), outer * (P - 1.0 - 2.0 * s),
                      outer * (P - 1.0 + 2.0 * s)};
}

IntervalPair scale_intervals(const IntervalPair& unit, double x_hat) {
  IntervalPair out{unit.i1_lo * x_hat, unit.i1_hi * x_hat, unit.im1_lo * x_hat,
                   unit.im1_hi * x_hat};
  if (x_hat < 0.0) {
    std::swap(out.i1_lo, out.i1_hi);
    std::swap(out.im1_lo, out.im1_hi);
  }
  return out;
}

std::vector<SweepRow> sweep_points(std::span<const double> grid, double tol) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double a : grid) {
    SweepRow row;
    row.a = a;
    row.lower_bound = gamma_lower_bound(a);
    row.upper_bound = gamma_upper_bound(a);
    row.gamma_star = std::numeric_limits<double>::quiet_NaN();
    row.P = std::numeric_limits<double>::quiet_NaN();
    try {
      const GammaStarSearch s = find_gamma_star(a, tol);
      if (!s.gamma) {
        row.error = "not found";
      } else {
        row.gamma_star = *s.gamma;
        row.within_bounds = s.within_bounds;
        if (!s.within_bounds) row.error = "outside bounds";
        const CertificationReport r = certify(a, *s.gamma);
        row.P = r.P;
        row.p_feasible = r.p_feasible;
        row.curvature_ok = r.curvature_ok;
        row.negativity_ok = r.negativity_ok;
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepRow> sweep(double a_min, double a_max, int steps, double tol) {
  require(steps >= 2, "sweep: steps must be at least 2");
  require(a_min <= a_max, "sweep: a_min must not exceed a_max");
  std::vector<double> grid(static_cast<std::size_t>(steps));
  const double h = (a_max - a_min) / (steps - 1);
  for (int i = 0; i < steps; ++i) grid[i] = i + 1 == steps ? a_max : a_min + i * h;
  return sweep_points(grid, tol);
}

std::vector<QuadfunRow> figure_quadfuns(double a, double gamma, double x_hat,
                                        double l1, double lm1,
                                        std::span<const double> y_grid) {
  const CeController ctrl = CeController::make(a, gamma);
  const std::size_t n = y_grid.size();
  std::vector<double> l1n(n), lm1n(n), thr(n);
  kernels::quadfuns(
      kernels::QuadfunParams{ctrl.P, gamma, ctrl.a_hat, ctrl.g_hat, x_hat, l1, lm1},
      y_grid, l1n, lm1n, thr);
  std::vector<QuadfunRow> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i] = QuadfunRow{y_grid[i], l1n[i], lm1n[i], thr[i]};
  }
  return rows;
}

}  // namespace lerc
