#pragma once

#include <cstdint>
#include <vector>

namespace decim {

/// Monte Carlo estimate with autocorrelation-aware error bar. tau_int is in
/// units of the recording interval (= sweeps when thinning is 1) and the
/// standard error uses the effective sample size n / (2 tau_int).
struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    double tau_int = 0.5;
    int64_t n_samples = 0;
};

/// Integrated autocorrelation time by automatic windowing: the window W is
/// the smallest lag with W >= c * tau_int(W) (c = 6). Clamped to >= 0.5.
double integrated_autocorrelation_time(const std::vector<double>& series);

/// Standard error from non-overlapping batch means (diagnostic cross-check
/// for the autocorrelation route).
double batch_means_error(const std::vector<double>& series, int64_t batch_length);

Estimate estimate_from_series(const std::vector<double>& series);

/// Combine independent per-replica estimates of the same quantity: pooled
/// mean; error bar the larger of the pooled within-replica error and the
/// between-replica scatter, so stuck replicas widen the bar instead of
/// hiding.
Estimate merge_replicas(const std::vector<Estimate>& replicas);

}  // namespace decim
