#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cgra::aging {

/// Long-term NBTI model constants and the delay calibration anchor.
///
/// Threshold shift follows
///   dVt = 0.005 * exp(-1500 / T) * Vdd^4 * t^(1/6) * u^(1/6)
/// with t in hours for the raw evaluation. Delay grows linearly with dVt and is
/// calibrated so that a unit running at `reference_utilization` reaches
/// `delay_threshold` after `reference_lifetime_years`.
struct AgingParams {
  double temperature_k = 350.0;
  double vdd = 1.0;
  double delay_threshold = 0.10;
  double reference_lifetime_years = 3.0;
  double reference_utilization = 1.0;

  /// Throws std::invalid_argument on T <= 0, vdd <= 0, threshold outside (0,1],
  /// reference lifetime <= 0 or reference utilization outside (0,1].
  void validate() const;
};

inline constexpr double kHoursPerYear = 8760.0;

/// Lifetime is unbounded (a unit that is never stressed does not age).
class UnboundedLifetime : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Threshold-voltage shift in volts after `hours` of operation at utilization `u`.
/// Throws std::domain_error for negative time or u outside [0,1].
double delta_vt_raw(const AgingParams& params, double hours, double u);

/// Relative delay increase after `years` at utilization `u`.
double delay_increase(const AgingParams& params, double years, double u);

/// Years until the delay increase reaches the threshold: reference_lifetime * u_ref / u.
/// Throws UnboundedLifetime for u == 0.
double lifetime(const AgingParams& params, double u);

/// lifetime(u_proposed) / lifetime(u_baseline) == u_baseline / u_proposed.
/// Throws UnboundedLifetime when either utilization is 0.
double lifetime_improvement(double u_baseline, double u_proposed);

struct DelayPoint {
  double years = 0.0;
  double delay = 0.0;
};

/// `num_points` evenly spaced samples over [0, horizon_years].
std::vector<DelayPoint> delay_curve(const AgingParams& params, double u, double horizon_years,
                                    int num_points);

/// CSV with header `t_years,delay_fraction`.
std::string delay_curve_csv(const std::vector<DelayPoint>& curve);

}  // namespace cgra::aging
