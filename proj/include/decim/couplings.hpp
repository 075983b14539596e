#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "decim/spin_config.hpp"

namespace decim {

enum class Family {
    nn_ising,          // J * 1_{|i-j|=1}
    axial_lr,          // vertical n.n. + horizontal |d1|^-alpha1
    biaxial_lr,        // vertical |d2|^-alpha2 + horizontal |d1|^-alpha1
    iso_lr_ising,      // J * |i-j|^-alpha1, alpha1 > 2
    aniso_nn_rotator,  // n.n., inner product sin.sin + kappa cos.cos
    iso_lr_rotator,    // J * |i-j|^-alpha1, alpha1 in (2,4]
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct CouplingModel {
    Family family = Family::nn_ising;
    double strength = 1.0;  // J
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double kappa = 0.0;
    double beta = 1.0;  // inverse temperature

    SpinKind spin_kind() const;
    bool long_range() const;
    void validate() const;  // throws std::invalid_argument on bad parameters

    nlohmann::json to_json() const;
    static CouplingModel from_json(const nlohmann::json& j);
};

/// Coupling J(i,j) of the model. Rejects i == j.
double coupling(const CouplingModel& model, Site i, Site j);

/// The inner-product factor of a pair term: product of scalars, cos of the
/// angle difference, or the anisotropic sin.sin + kappa cos.cos.
double pair_energy(const CouplingModel& model, double si, double sj);

/// Precomputed table of J(0,v) for 0 < |v| <= R. Axial families store two
/// 1-d arrays (on-axis offsets only); the rest use a dense (2R+1)^2 table.
class InteractionKernel {
public:
    InteractionKernel() = default;

    int32_t radius() const { return radius_; }
    bool axial_storage() const { return axial_; }

    /// constant-time weight lookup; zero outside the truncation radius
    double weight(int32_t d1, int32_t d2) const {
        const int32_t a1 = d1 < 0 ? -d1 : d1;
        const int32_t a2 = d2 < 0 ? -d2 : d2;
        if (a1 > radius_ || a2 > radius_) return 0.0;
        if (axial_) {
            if (a2 == 0 && a1 > 0) return horiz_[size_t(a1)];
            if (a1 == 0 && a2 > 0) return vert_[size_t(a2)];
            return 0.0;
        }
        return dense_[size_t(d1 + radius_) * (2 * radius_ + 1) + size_t(d2 + radius_)];
    }

    const std::vector<double>& dense() const { return dense_; }
    const std::vector<double>& horizontal() const { return horiz_; }
    const std::vector<double>& vertical() const { return vert_; }

    friend InteractionKernel build_kernel(const CouplingModel& model, int32_t radius);

private:
    int32_t radius_ = 0;
    bool axial_ = false;
    std::vector<double> dense_;   // (2R+1)^2, row-major in (d1,d2)
    std::vector<double> horiz_;   // [0..R], [0] unused
    std::vector<double> vert_;
};

InteractionKernel build_kernel(const CouplingModel& model, int32_t radius);

/// Upper bound on the neglected coupling mass sum_{|v|>R} J(0,v): exact
/// partial sums closed by integral bounds. Exactly 0 for finite-range
/// families.
double tail_mass(const CouplingModel& model, int32_t radius);

/// Cheap closed-form bound on the coupling mass beyond Euclidean distance m
/// from a site (per-axis integral bounds; shell-count bound for isotropic
/// families). Used to close truncated double sums analytically.
double tail_beyond(const CouplingModel& model, double m);

}  // namespace decim
