#include "hexlat/decay_fit.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "hexlat/io.hpp"

namespace hexlat {

void PowerLawFit::write_json(std::ostream& out) const {
  out << "{\n"
      << "  \"slope\": " << fmt_g17(slope) << ",\n"
      << "  \"intercept\": " << fmt_g17(intercept) << ",\n"
      << "  \"r_squared\": " << fmt_g17(r_squared) << ",\n"
      << "  \"window\": [" << fmt_g17(t_min) << ", " << fmt_g17(t_max)
      << "],\n"
      << "  \"method\": \""
      << (method == FitMethod::Direct ? "direct" : "dyadic_envelope")
      << "\",\n"
      << "  \"n_samples\": " << n_samples << "\n"
      << "}\n";
}

PowerLawFit fit_power_law(const DecaySeries& series, double t_min,
                          double t_max, FitMethod method) {
  if (!(t_min > 0.0) || !(t_max > t_min)) {
    throw FitError("fit_power_law: degenerate window");
  }
  std::vector<std::pair<double, double>> pts;  // (log t, log value)
  for (const DecaySample& s : series.samples) {
    if (s.t < t_min || s.t > t_max) continue;
    if (!(s.sup_abs > 0.0)) {
      throw FitError("fit_power_law: nonpositive value at t = " +
                     fmt_g17(s.t));
    }
    pts.emplace_back(s.t, s.sup_abs);
  }
  if (pts.size() < 8) {
    throw FitError("fit_power_law: need >= 8 samples in window, have " +
                   std::to_string(pts.size()));
  }
  const int n_raw = int(pts.size());
  if (method == FitMethod::DyadicEnvelope) {
    // One representative per dyadic block [2^k, 2^{k+1}): the block max.
    std::map<int, std::pair<double, double>> blocks;
    for (const auto& [t, v] : pts) {
      const int k = int(std::floor(std::log2(t)));
      auto it = blocks.find(k);
      if (it == blocks.end() || v > it->second.second) {
        blocks[k] = {t, v};
      }
    }
    pts.clear();
    for (const auto& [k, tv] : blocks) pts.push_back(tv);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const double n = double(pts.size());
  for (const auto& [t, v] : pts) {
    const double x = std::log(t), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double den = n * sxx - sx * sx;
  if (den <= 0.0) throw FitError("fit_power_law: collinear abscissae");
  PowerLawFit fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  const double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (const auto& [t, v] : pts) {
    const double r = std::log(v) - (fit.intercept + fit.slope * std::log(t));
    ss_res += r * r;
  }
  fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  if (fit.r_squared > 1.0) fit.r_squared = 1.0;
  fit.t_min = t_min;
  fit.t_max = t_max;
  fit.method = method;
  fit.n_samples = method == FitMethod::DyadicEnvelope ? int(pts.size()) : n_raw;
  return fit;
}

bool is_admissible(double q, double r, double sigma) {
  const double inf = std::numeric_limits<double>::infinity();
  if (!(q >= 2.0) || !(r >= 2.0) || !(sigma > 0.0)) return false;
  const double lhs = (q == inf ? 0.0 : 1.0 / q) + (r == inf ? 0.0 : sigma / r);
  if (std::abs(lhs - sigma / 2.0) > 1e-12) return false;
  if (q == 2.0 && r == inf && sigma == 1.0) return false;
  return true;
}

double strichartz_norm(const std::vector<std::pair<double, WaveField>>& traj,
                       double q, double r) {
  if (traj.empty()) {
    throw std::invalid_argument("strichartz_norm: empty trajectory");
  }
  const double inf = std::numeric_limits<double>::infinity();
  if (q == inf) {
    double m = 0.0;
    for (const auto& [t, u] : traj) m = std::max(m, u.lp_norm(r));
    return m;
  }
  if (traj.size() == 1) return 0.0;
  double acc = 0.0;
  double prev_t = traj.front().first;
  double prev_f = std::pow(traj.front().second.lp_norm(r), q);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double t = traj[i].first;
    if (!(t > prev_t)) {
      throw std::invalid_argument("strichartz_norm: times must increase");
    }
    const double f = std::pow(traj[i].second.lp_norm(r), q);
    acc += 0.5 * (f + prev_f) * (t - prev_t);
    prev_t = t;
    prev_f = f;
  }
  return std::pow(acc, 1.0 / q);
}

}  // namespace hexlat
