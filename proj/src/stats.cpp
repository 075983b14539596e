#include "decim/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace decim {

namespace {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
}

double variance_of(const std::vector<double>& v, double mu) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return s / double(v.size() - 1);
}

}  // namespace

double integrated_autocorrelation_time(const std::vector<double>& series) {
    const int64_t n = int64_t(series.size());
    if (n < 8) return 0.5;
    const double mu = mean_of(series);
    double c0 = 0.0;
    for (double x : series) c0 += (x - mu) * (x - mu);
    c0 /= double(n);
    if (c0 <= 0.0) return 0.5;

    const int64_t max_lag = n / 4;
    double tau = 0.5;
    for (int64_t t = 1; t <= max_lag; ++t) {
        double ct = 0.0;
        for (int64_t i = 0; i + t < n; ++i)
            ct += (series[size_t(i)] - mu) * (series[size_t(i + t)] - mu);
        ct /= double(n - t);
        tau += ct / c0;
        if (double(t) >= 6.0 * tau) break;  // Sokal's automatic window
    }
    return tau < 0.5 ? 0.5 : tau;
}

double batch_means_error(const std::vector<double>& series, int64_t batch_length) {
    if (batch_length < 1) throw std::invalid_argument("batch_means_error: bad batch length");
    const int64_t k = int64_t(series.size()) / batch_length;
    if (k < 2) return 0.0;
    std::vector<double> batches(size_t(k), 0.0);
    for (int64_t b = 0; b < k; ++b) {
        double s = 0.0;
        for (int64_t i = 0; i < batch_length; ++i) s += series[size_t(b * batch_length + i)];
        batches[size_t(b)] = s / double(batch_length);
    }
    const double mu = mean_of(batches);
    return std::sqrt(variance_of(batches, mu) / double(k));
}

Estimate estimate_from_series(const std::vector<double>& series) {
    if (series.empty()) throw std::invalid_argument("estimate_from_series: empty series");
    Estimate e;
    e.n_samples = int64_t(series.size());
    e.mean = mean_of(series);
    const double var = variance_of(series, e.mean);
    e.tau_int = integrated_autocorrelation_time(series);
    e.std_error = var > 0.0 ? std::sqrt(var * 2.0 * e.tau_int / double(e.n_samples)) : 0.0;
    return e;
}

Estimate merge_replicas(const std::vector<Estimate>& replicas) {
    if (replicas.empty()) throw std::invalid_argument("merge_replicas: no replicas");
    const double k = double(replicas.size());
    Estimate out;
    double within2 = 0.0, tau = 0.0;
    for (const Estimate& r : replicas) {
        out.mean += r.mean;
        out.n_samples += r.n_samples;
        within2 += r.std_error * r.std_error;
        tau += r.tau_int;
    }
    out.mean /= k;
    out.tau_int = tau / k;
    const double within = std::sqrt(within2) / k;
    double between = 0.0;
    if (replicas.size() > 1) {
        double s = 0.0;
        for (const Estimate& r : replicas) s += (r.mean - out.mean) * (r.mean - out.mean);
        between = std::sqrt(s / (k - 1.0) / k);
    }
    out.std_error = within > between ? within : between;
    return out;
}

}  // namespace decim
