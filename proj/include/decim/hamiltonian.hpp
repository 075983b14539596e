#pragma once

#include <optional>

#include "decim/couplings.hpp"

namespace decim {

/// Boundary condition for a finite-volume system: values outside the
/// configuration window. `free` drops all couplings leaving the window.
struct BoundarySpec {
    enum class Kind { free, homogeneous, configuration };
    Kind kind = Kind::free;
    Level level = Level::plus;
    std::optional<SpinConfiguration> config;

    static BoundarySpec free_exterior() { return {}; }
    static BoundarySpec homogeneous_exterior(Level l) {
        BoundarySpec b;
        b.kind = Kind::homogeneous;
        b.level = l;
        return b;
    }
    static BoundarySpec from_configuration(SpinConfiguration c) {
        BoundarySpec b;
        b.kind = Kind::configuration;
        b.config = std::move(c);
        return b;
    }
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Materialized finite-volume system: the update region plus every boundary
/// value within kernel range, flattened over one window. Inactive sites do
/// not participate in energy sums (free boundary).
struct FiniteSystem {
    SpinKind kind = SpinKind::scalar;
    BoxRegion window;             // region bounding box grown by the kernel radius
    std::vector<double> value;    // ±1 or angle; meaningful iff active
    std::vector<uint8_t> active;
    std::vector<uint8_t> in_region;
    std::vector<uint8_t> updatable;  // in_region minus frozen sites
    std::vector<int64_t> update_order;

    int64_t index(Site s) const { return window.index(s); }
    Site site_of(int64_t i) const { return window.site_at(i); }
};

/// Resolve region values from `config`; configuration-window sites outside
/// the region join the system only when frozen (pinned boundary values).
/// Sites beyond the configuration window come from the boundary spec, which
/// must cover the kernel range of the region when it is an explicit
/// configuration.
FiniteSystem assemble_system(const SiteSet& region, const SpinConfiguration& config,
                             const BoundarySpec& bc, const InteractionKernel& kernel);

/// Energy of all truncated pair terms meeting the region, each counted once:
/// -sum_{i in region} J(i,j) <s_i . s_j> over interior pairs and
/// region-boundary pairs.
double total_energy(const FiniteSystem& sys, const CouplingModel& model,
                    const InteractionKernel& kernel);
double total_energy(const SiteSet& region, const SpinConfiguration& config,
                    const BoundarySpec& bc, const CouplingModel& model,
                    const InteractionKernel& kernel);

/// Scalar local field h_i = sum_j J(i,j) s_j, so the site's conditional
/// energy is -h_i s_i. Rejects frozen/non-updatable sites.
double local_field_scalar(const FiniteSystem& sys, Site site, const CouplingModel& model,
                          const InteractionKernel& kernel);

/// Planar local field: kernel-weighted vector sum of neighbor spins, with
/// the anisotropic family weighting the horizontal component by kappa. The
/// site's conditional energy is -<field, u(theta_i)>.
Vec2 local_field_planar(const FiniteSystem& sys, Site site, const CouplingModel& model,
                        const InteractionKernel& kernel);

/// Energy change of replacing the value at one updatable site.
double energy_delta(const FiniteSystem& sys, Site site, double old_value, double new_value,
                    const CouplingModel& model, const InteractionKernel& kernel);

struct AnnulusSchedule {
    int32_t inner_l = 0;
    int64_t outer_n = 0;
    double bound_c = 0.0;
    double alpha_eff = 0.0;
    double asymptotic_exponent = 0.0;  // growth exponent of N(L)
};

/// Worst-case energy difference 2 sum_{x in box L} sum_{y outside box N} J(x,y)
/// between two boundary conditions that agree inside box N: direct summation
/// within the kernel radius, closed beyond it by analytic tail bounds.
double bc_energy_bound(int32_t inner_l, int64_t outer_n, const CouplingModel& model,
                       const InteractionKernel& kernel);

/// Same bound, after checking that the two boundary specs agree on the
/// annulus between the boxes (they may differ only outside box N).
double bc_energy_difference(int32_t inner_l, int64_t outer_n, const CouplingModel& model,
                            const InteractionKernel& kernel, const BoundarySpec& bc1,
                            const BoundarySpec& bc2);

/// Smallest N with bc_energy_bound(L, N) <= target_C, by monotone search.
/// Finite-range families return N = L+1 with a zero bound.
AnnulusSchedule annulus_size(const CouplingModel& model, const InteractionKernel& kernel,
                             int32_t inner_l, double target_c);

}  // namespace decim
