#pragma once

#include <functional>

#include "decim/hamiltonian.hpp"
#include "decim/rng.hpp"
#include "decim/stats.hpp"

namespace decim {

struct ChainSpec {
    int64_t sweeps = 1000;
    int64_t burn_in = 0;
    uint64_t seed = 1;
    int64_t thinning = 1;
    double proposal_width = pi / 2;  // planar proposals: theta + U(-w, w)

    void validate(SpinKind kind) const;
};

/// probability that a heat-bath step sets a scalar spin to +1
inline double heat_bath_plus_probability(double field, double beta) {
    return 1.0 / (1.0 + std::exp(-2.0 * beta * field));
}

/// Mutable chain state over a FiniteSystem, with flat arrays for constant
/// time kernel fields. Sweeps visit updatable sites in row-major order.
class SamplerState {
public:
    SamplerState(const FiniteSystem& sys, const CouplingModel& model,
                 const InteractionKernel& kernel);

    void sweep(SplitMix64& rng, double proposal_width);

    /// single-site updates; reject frozen or out-of-region sites
    double heat_bath_site(Site s, SplitMix64& rng);
    double metropolis_site(Site s, SplitMix64& rng, double proposal_width);

    double scalar_at(Site s) const;
    double angle_at(Site s) const;
    /// the order-parameter component: sigma for scalar, sin(theta) for planar
    double observable_at(Site s) const;
    double region_mean() const;

    double field_scalar_fast(Site s) const;
    Vec2 field_planar_fast(Site s) const;  // kappa-weighted

    const FiniteSystem& system() const { return sys_; }
    SpinKind kind() const { return sys_.kind; }

private:
    double field_at_index(int64_t idx) const;
    void field_vec_at_index(int64_t idx, double& fx, double& fy) const;
    void set_angle_index(int64_t idx, double theta);

    FiniteSystem sys_;
    const CouplingModel model_;
    InteractionKernel kernel_;
    int64_t stride_ = 0;
    double beta_ = 0.0;
    double kappa_x_ = 1.0;
    std::vector<double> sp_;        // scalar: ±1, 0 when inactive
    std::vector<double> ux_, uy_;   // planar: unit vectors, (0,0) when inactive
    std::vector<double> ang_;
};

using Observable = std::function<double(const SamplerState&)>;

Observable observable_site(Site s);
Observable observable_region_mean();

struct ChainResult {
    std::vector<Estimate> estimates;
    std::vector<std::vector<double>> series;  // kept only on request
};

/// burn_in + sweeps deterministic row-major sweeps; observables recorded
/// every `thinning` sweeps after burn-in. Identical seed and spec give a
/// bit-identical result.
ChainResult run_chain(const FiniteSystem& sys, const CouplingModel& model,
                      const InteractionKernel& kernel, const ChainSpec& spec,
                      const std::vector<Observable>& observables, bool keep_series = false);

/// Finite-volume approximation of the constrained plus measure on the
/// decorated sites of box N: even sites other than the origin frozen to
/// `frozen_even`, everything beyond box N set to the maximal configuration,
/// chain started from the maximal configuration. Returns the estimate of
/// the origin observable (sigma_0, or sin theta_0 for planar models).
Estimate constrained_plus_magnetization(const SpinConfiguration& frozen_even, int32_t N,
                                        const CouplingModel& model,
                                        const InteractionKernel& kernel, const ChainSpec& spec,
                                        std::vector<double>* series_out = nullptr);

}  // namespace decim
