#pragma once

#include "decim/hamiltonian.hpp"

namespace decim {

struct ExactResult {
    double log_partition = 0.0;   // log of the a-priori-normalized partition function
    double partition_value = 0.0; // exp(log_partition)
    double energy_mean = 0.0;
    std::vector<Site> sites;          // free sites, row-major order
    std::vector<double> site_means;   // <sigma_i>, or <sin theta_i> for planar
    std::vector<double> site_means_x; // planar only: <cos theta_i>
    int64_t clock_q = 0;
    int64_t clock_q_alt = 0;
    double discretization_shift = 0.0;  // max site-mean change between q and q_alt

    double site_mean(Site s) const;
};

/// Exact expectations of a scalar system by Gray-code enumeration of all
/// 2^n configurations of the free (updatable) spins. Rejects n > 22.
ExactResult enumerate_ising(const SiteSet& region, const SpinConfiguration& config,
                            const BoundarySpec& bc, const CouplingModel& model,
                            const InteractionKernel& kernel);

/// Exact expectations of the q-state clock approximation of a planar system
/// (angles 2 pi k / q - pi). Rejects more than 8 free sites or q^n beyond
/// ~2e7; requires q >= 8. Reports the shift against a doubled or halved q
/// as the discretization diagnostic.
ExactResult clock_quadrature_rotator(const SiteSet& region, int64_t q,
                                     const SpinConfiguration& config, const BoundarySpec& bc,
                                     const CouplingModel& model, const InteractionKernel& kernel);

/// Spontaneous magnetization of the square-lattice n.n. Ising model:
/// (1 - sinh(2 beta)^-4)^(1/8) above the critical coupling, else 0.
double onsager_reference(double beta);

}  // namespace decim
