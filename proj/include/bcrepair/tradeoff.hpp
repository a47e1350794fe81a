#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcrepair/capacity_bound.hpp"
#include "bcrepair/model.hpp"
#include "bcrepair/rational.hpp"

namespace bcrepair {

// A point on the storage vs repair-transmission-bandwidth curve, tau = d*beta/r.
struct TradeoffPoint {
  Rational tau{0};
  Rational alpha{0};
  Rational beta{0};
  friend bool operator==(const TradeoffPoint&, const TradeoffPoint&) = default;
};

enum class RepairScheme { Broadcast, Cooperative };

inline std::string to_string(RepairScheme s) { return s == RepairScheme::Broadcast ? "broadcast" : "cooperative"; }

// Packets transmitted by helpers per newcomer.
inline Rational tau_of(int d, int r, const Rational& beta) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  return beta * d / r;
}
inline Rational tau_of(const SystemParams& p) {
  require_valid(p);
  return tau_of(p.d, p.r, p.beta);
}

inline TradeoffPoint point_from_beta(int d, int r, const Rational& alpha, const Rational& beta) {
  return TradeoffPoint{tau_of(d, r, beta), alpha, beta};
}

inline TradeoffPoint point_from_tau(int d, int r, const Rational& tau, const Rational& alpha) {
  return TradeoffPoint{tau, alpha, tau * r / d};
}

// Conditions under which the broadcast/cooperative comparison is stated
// (k a multiple u*r of r with u > 1). Violations are reported, not rejected.
inline std::vector<std::string> comparison_warnings(int k, int d, int r) {
  std::vector<std::string> w;
  if (r < 1 || k % r != 0 || k / r <= 1) w.emplace_back("k is not u*r for an integer u > 1");
  if (d < k) w.emplace_back("d < k");
  return w;
}

// Minimum-storage endpoint (alpha = B/k). For the cooperative scheme beta is
// the broadcast-equivalent d*beta/r = tau.
inline TradeoffPoint ms_point(RepairScheme scheme, int k, int d, int r, const Rational& file_size) {
  if (k < 1 || r < 1 || d < 1) throw std::invalid_argument("k, d, r must be positive");
  if (d + r - k <= 0) throw std::invalid_argument("d + r - k must be positive");
  const int numerator = scheme == RepairScheme::Broadcast ? d : d + r - 1;
  const Rational tau = file_size * Rational(numerator, static_cast<std::int64_t>(k) * (d + r - k));
  return point_from_tau(d, r, tau, file_size / k);
}

// Minimum repair-transmission-bandwidth endpoint (tau = alpha).
inline TradeoffPoint mt_point(RepairScheme scheme, int k, int d, int r, const Rational& file_size) {
  if (k < 1 || r < 1 || d < 1) throw std::invalid_argument("k, d, r must be positive");
  if (2 * d + r - k <= 0) throw std::invalid_argument("2d + r - k must be positive");
  const int numerator = scheme == RepairScheme::Broadcast ? 2 * d : 2 * d + r - 1;
  const Rational tau = file_size * Rational(numerator, static_cast<std::int64_t>(k) * (2 * d + r - k));
  return point_from_tau(d, r, tau, tau);
}

struct DominanceReport {
  TradeoffPoint ms_broadcast, mt_broadcast, ms_cooperative, mt_cooperative;
  Rational ms_gap{0};  // tau_MSC - tau_MSB
  Rational mt_gap{0};  // tau_MTC - tau_MTB
  bool broadcast_dominates = false;
  std::vector<std::string> warnings;
};

inline DominanceReport dominance_report(int k, int d, int r, const Rational& file_size) {
  DominanceReport rep;
  rep.ms_broadcast = ms_point(RepairScheme::Broadcast, k, d, r, file_size);
  rep.mt_broadcast = mt_point(RepairScheme::Broadcast, k, d, r, file_size);
  rep.ms_cooperative = ms_point(RepairScheme::Cooperative, k, d, r, file_size);
  rep.mt_cooperative = mt_point(RepairScheme::Cooperative, k, d, r, file_size);
  rep.ms_gap = rep.ms_cooperative.tau - rep.ms_broadcast.tau;
  rep.mt_gap = rep.mt_cooperative.tau - rep.mt_broadcast.tau;
  rep.broadcast_dominates = rep.ms_gap > 0 && rep.mt_gap > 0;
  rep.warnings = comparison_warnings(k, d, r);
  return rep;
}

// Smallest alpha with min_f (a*alpha + b*beta) >= B, i.e. the max over forms
// with a > 0 of (B - b*beta)/a. Empty when a form with a = 0 has b*beta < B.
inline std::optional<Rational> min_alpha_for_beta(const std::map<LinearForm, CutProfile>& forms,
                                                  const Rational& file_size, const Rational& beta) {
  Rational alpha{0};
  for (const auto& [f, prof] : forms) {
    if (f.a == 0) {
      if (beta * f.b < file_size) return std::nullopt;
      continue;
    }
    alpha = std::max(alpha, (file_size - beta * f.b) / f.a);
  }
  return alpha;
}

// Smallest feasible beta: every alpha-free form must reach B on its own.
inline Rational min_feasible_beta(const std::map<LinearForm, CutProfile>& forms, const Rational& file_size) {
  Rational beta{0};
  for (const auto& [f, prof] : forms) {
    if (f.a == 0) beta = std::max(beta, file_size / f.b);
  }
  return beta;
}

// Smallest beta at which alpha reaches B/k.
inline Rational min_storage_beta(const std::map<LinearForm, CutProfile>& forms, int k, const Rational& file_size) {
  Rational beta = min_feasible_beta(forms, file_size);
  for (const auto& [f, prof] : forms) {
    if (f.a < k) {
      if (f.b == 0) throw std::logic_error("storage bound unreachable");
      beta = std::max(beta, file_size * (k - f.a) / (static_cast<std::int64_t>(k) * f.b));
    }
  }
  return beta;
}

struct Curve {
  SystemParams params;
  Rational file_size{1};
  int horizon = 0;
  std::vector<TradeoffPoint> points;  // increasing beta
  std::vector<LinearForm> forms;
  Rational beta_mt{0};
  Rational beta_ms{0};
};

inline constexpr int kAutoGridPoints = 33;

// Evenly spaced betas from the MT beta up to the MS beta, both included.
inline std::vector<Rational> auto_beta_grid(const Rational& beta_mt, const Rational& beta_ms, int points = kAutoGridPoints) {
  if (beta_mt == beta_ms) return {beta_mt};
  std::vector<Rational> grid;
  for (int i = 0; i < points; ++i) grid.push_back(beta_mt + (beta_ms - beta_mt) * Rational(i, points - 1));
  return grid;
}

// Minimal alpha for each beta in `grid` (or the auto grid when empty). The
// bound's alpha and beta fields of `p` are ignored.
inline Curve sweep_curve(const SystemParams& p, const Rational& file_size, const std::vector<Rational>& grid = {}) {
  require_valid(p);
  if (file_size < 0) throw std::invalid_argument("file size must be nonnegative");
  Curve curve;
  curve.params = p;
  curve.file_size = file_size;
  curve.horizon = effective_horizon(p);
  const auto forms = profile_forms(p, curve.horizon);
  for (const auto& [f, prof] : forms) curve.forms.push_back(f);
  curve.beta_mt = min_feasible_beta(forms, file_size);
  curve.beta_ms = min_storage_beta(forms, p.k, file_size);

  std::vector<Rational> betas = grid.empty() ? auto_beta_grid(curve.beta_mt, curve.beta_ms) : grid;
  std::sort(betas.begin(), betas.end());
  for (const auto& beta : betas) {
    if (beta < 0) throw std::invalid_argument("negative beta");
    const auto alpha = min_alpha_for_beta(forms, file_size, beta);
    if (!alpha) {
      throw std::domain_error("beta = " + to_string(beta) + " is below the feasible range (min " +
                              to_string(curve.beta_mt) + ")");
    }
    curve.points.push_back(point_from_beta(p.d, p.r, *alpha, beta));
  }
  return curve;
}

inline std::string decimal(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", to_double(q));
  return buf;
}

inline void write_dsv_header(std::ostream& os, const std::string& title) {
  os << "# " << title << '\n';
  os << "series,tau,alpha,beta,tau_decimal,alpha_decimal,beta_decimal\n";
}

inline void write_dsv_row(std::ostream& os, const std::string& series, const TradeoffPoint& pt) {
  os << series << ',' << to_string(pt.tau) << ',' << to_string(pt.alpha) << ',' << to_string(pt.beta) << ','
     << decimal(pt.tau) << ',' << decimal(pt.alpha) << ',' << decimal(pt.beta) << '\n';
}

inline std::string params_title(const SystemParams& p, const Rational& file_size) {
  return "n=" + std::to_string(p.n) + " k=" + std::to_string(p.k) + " d=" + std::to_string(p.d) +
         " r=" + std::to_string(p.r) + " T=" + std::to_string(p.T) + " B=" + to_string(file_size);
}

inline void write_curve_dsv(std::ostream& os, const Curve& curve, const std::string& series = "broadcast") {
  write_dsv_header(os, params_title(curve.params, curve.file_size));
  for (const auto& pt : curve.points) write_dsv_row(os, series, pt);
}

}  // namespace bcrepair
