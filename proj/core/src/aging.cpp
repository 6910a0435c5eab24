#include "cgra/aging.hpp"

#include <cmath>
#include <cstdio>

namespace cgra::aging {

namespace {

void check_utilization(double u) {
  if (!(u >= 0.0 && u <= 1.0))
    throw std::domain_error("utilization " + std::to_string(u) + " outside [0,1]");
}

void check_time(double t) {
  if (!(t >= 0.0)) throw std::domain_error("negative time " + std::to_string(t));
}

}  // namespace

void AgingParams::validate() const {
  if (!(temperature_k > 0.0)) throw std::invalid_argument("temperature must be > 0 K");
  if (!(vdd > 0.0)) throw std::invalid_argument("vdd must be > 0");
  if (!(delay_threshold > 0.0 && delay_threshold <= 1.0))
    throw std::invalid_argument("delay threshold must be in (0,1]");
  if (!(reference_lifetime_years > 0.0))
    throw std::invalid_argument("reference lifetime must be > 0");
  if (!(reference_utilization > 0.0 && reference_utilization <= 1.0))
    throw std::invalid_argument("reference utilization must be in (0,1]");
}

double delta_vt_raw(const AgingParams& params, double hours, double u) {
  params.validate();
  check_time(hours);
  check_utilization(u);
  return 0.005 * std::exp(-1500.0 / params.temperature_k) * std::pow(params.vdd, 4) *
         std::pow(hours, 1.0 / 6.0) * std::pow(u, 1.0 / 6.0);
}

double delay_increase(const AgingParams& params, double years, double u) {
  params.validate();
  check_time(years);
  check_utilization(u);
  // Linear in dVt, so every model constant cancels against the calibration point.
  const double stress = (years / params.reference_lifetime_years) * (u / params.reference_utilization);
  return params.delay_threshold * std::pow(stress, 1.0 / 6.0);
}

double lifetime(const AgingParams& params, double u) {
  params.validate();
  check_utilization(u);
  if (u == 0.0) throw UnboundedLifetime("zero utilization: lifetime is unbounded");
  return params.reference_lifetime_years * params.reference_utilization / u;
}

double lifetime_improvement(double u_baseline, double u_proposed) {
  check_utilization(u_baseline);
  check_utilization(u_proposed);
  if (u_baseline == 0.0 || u_proposed == 0.0)
    throw UnboundedLifetime("zero utilization: lifetime improvement is unbounded");
  return u_baseline / u_proposed;
}

std::vector<DelayPoint> delay_curve(const AgingParams& params, double u, double horizon_years,
                                    int num_points) {
  if (!(horizon_years > 0.0)) throw std::invalid_argument("horizon must be > 0");
  if (num_points < 2) throw std::invalid_argument("need at least 2 points");
  std::vector<DelayPoint> curve;
  curve.reserve(num_points);
  for (int i = 0; i < num_points; ++i) {
    // Pin the last sample to the horizon exactly.
    const double t = i == num_points - 1 ? horizon_years : horizon_years * i / (num_points - 1);
    curve.push_back({t, delay_increase(params, t, u)});
  }
  return curve;
}

std::string delay_curve_csv(const std::vector<DelayPoint>& curve) {
  std::string out = "t_years,delay_fraction\n";
  char line[64];
  for (const auto& p : curve) {
    std::snprintf(line, sizeof line, "%.6f,%.9f\n", p.years, p.delay);
    out += line;
  }
  return out;
}

}  // namespace cgra::aging
