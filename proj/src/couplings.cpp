#include "decim/couplings.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

namespace decim {

std::string family_name(Family f) {
    switch (f) {
        case Family::nn_ising: return "nn_ising";
        case Family::axial_lr: return "axial_lr";
        case Family::biaxial_lr: return "biaxial_lr";
        case Family::iso_lr_ising: return "iso_lr_ising";
        case Family::aniso_nn_rotator: return "aniso_nn_rotator";
        case Family::iso_lr_rotator: return "iso_lr_rotator";
    }
    throw std::logic_error("family_name: bad enum");
}

Family family_from_name(const std::string& name) {
    if (name == "nn_ising") return Family::nn_ising;
    if (name == "axial_lr") return Family::axial_lr;
    if (name == "biaxial_lr") return Family::biaxial_lr;
    if (name == "iso_lr_ising") return Family::iso_lr_ising;
    if (name == "aniso_nn_rotator") return Family::aniso_nn_rotator;
    if (name == "iso_lr_rotator") return Family::iso_lr_rotator;
    throw std::invalid_argument("unknown model family '" + name + "'");
}

SpinKind CouplingModel::spin_kind() const {
    return (family == Family::aniso_nn_rotator || family == Family::iso_lr_rotator)
               ? SpinKind::planar
               : SpinKind::scalar;
}

bool CouplingModel::long_range() const {
    return family == Family::axial_lr || family == Family::biaxial_lr ||
           family == Family::iso_lr_ising || family == Family::iso_lr_rotator;
}

void CouplingModel::validate() const {
    if (strength < 0.0) throw std::invalid_argument("model: J must be >= 0 (ferromagnetic)");
    if (beta < 0.0) throw std::invalid_argument("model: beta must be >= 0");
    switch (family) {
        case Family::nn_ising:
        case Family::aniso_nn_rotator:
            if (family == Family::aniso_nn_rotator && !(kappa > 0.0 && kappa < 1.0))
                throw std::invalid_argument("model: kappa must lie in (0,1)");
            break;
        case Family::axial_lr:
            if (!(alpha1 > 1.0)) throw std::invalid_argument("model: axial_lr needs alpha1 > 1");
            break;
        case Family::biaxial_lr:
            if (!(alpha1 > 1.0) || !(alpha2 > 1.0))
                throw std::invalid_argument("model: biaxial_lr needs alpha1, alpha2 > 1");
            break;
        case Family::iso_lr_ising:
            if (!(alpha1 > 2.0)) throw std::invalid_argument("model: iso_lr_ising needs alpha1 > 2");
            break;
        case Family::iso_lr_rotator:
            if (!(alpha1 > 2.0 && alpha1 <= 4.0))
                throw std::invalid_argument("model: iso_lr_rotator needs alpha1 in (2,4]");
            break;
    }
}

nlohmann::json CouplingModel::to_json() const {
    nlohmann::json j;
    j["family"] = family_name(family);
    j["J"] = strength;
    j["beta"] = beta;
    if (family == Family::axial_lr || family == Family::biaxial_lr ||
        family == Family::iso_lr_ising || family == Family::iso_lr_rotator)
        j["alpha1"] = alpha1;
    if (family == Family::biaxial_lr) j["alpha2"] = alpha2;
    if (family == Family::aniso_nn_rotator) j["kappa"] = kappa;
    return j;
}

CouplingModel CouplingModel::from_json(const nlohmann::json& j) {
    CouplingModel m;
    m.family = family_from_name(j.at("family").get<std::string>());
    m.strength = j.at("J").get<double>();
    m.beta = j.at("beta").get<double>();
    if (j.contains("alpha1")) m.alpha1 = j.at("alpha1").get<double>();
    if (j.contains("alpha2")) m.alpha2 = j.at("alpha2").get<double>();
    if (j.contains("kappa")) m.kappa = j.at("kappa").get<double>();
    m.validate();
    return m;
}

double coupling(const CouplingModel& model, Site i, Site j) {
    if (i == j) throw std::invalid_argument("coupling: i and j must differ");
    const int64_t d1 = std::abs(int64_t(i.i1) - j.i1);
    const int64_t d2 = std::abs(int64_t(i.i2) - j.i2);
    const double J = model.strength;
    switch (model.family) {
        case Family::nn_ising:
        case Family::aniso_nn_rotator:
            return (d1 + d2 == 1) ? J : 0.0;
        case Family::axial_lr: {
            double v = 0.0;
            if (d1 == 0 && d2 == 1) v += J;                               // vertical n.n.
            if (d2 == 0) v += J * std::pow(double(d1), -model.alpha1);    // horizontal long-range
            return v;
        }
        case Family::biaxial_lr: {
            double v = 0.0;
            if (d1 == 0) v += J * std::pow(double(d2), -model.alpha2);
            if (d2 == 0) v += J * std::pow(double(d1), -model.alpha1);
            return v;
        }
        case Family::iso_lr_ising:
        case Family::iso_lr_rotator: {
            const double r2 = double(d1) * d1 + double(d2) * d2;
            return J * std::pow(r2, -model.alpha1 / 2.0);
        }
    }
    throw std::logic_error("coupling: bad family");
}

double pair_energy(const CouplingModel& model, double si, double sj) {
    switch (model.spin_kind()) {
        case SpinKind::scalar:
            if ((si != 1.0 && si != -1.0) || (sj != 1.0 && sj != -1.0))
                throw std::invalid_argument("pair_energy: scalar spins must be +1 or -1");
            return si * sj;
        case SpinKind::planar: {
            double xi, yi, xj, yj;
            unit_vector(normalize_angle(si), xi, yi);
            unit_vector(normalize_angle(sj), xj, yj);
            if (model.family == Family::aniso_nn_rotator)
                return yi * yj + model.kappa * xi * xj;
            return xi * xj + yi * yj;  // cos(si - sj)
        }
    }
    throw std::logic_error("pair_energy: bad kind");
}

InteractionKernel build_kernel(const CouplingModel& model, int32_t radius) {
    if (radius < 1) throw std::invalid_argument("build_kernel: radius must be >= 1");
    model.validate();
    InteractionKernel k;
    k.radius_ = radius;
    k.axial_ = model.family == Family::axial_lr || model.family == Family::biaxial_lr;
    const Site origin{0, 0};
    if (k.axial_) {
        k.horiz_.assign(size_t(radius) + 1, 0.0);
        k.vert_.assign(size_t(radius) + 1, 0.0);
        for (int32_t d = 1; d <= radius; ++d) {
            k.horiz_[size_t(d)] = coupling(model, origin, Site{d, 0});
            k.vert_[size_t(d)] = coupling(model, origin, Site{0, d});
        }
    } else {
        const int32_t w = 2 * radius + 1;
        k.dense_.assign(size_t(w) * w, 0.0);
        for (int32_t d1 = -radius; d1 <= radius; ++d1)
            for (int32_t d2 = -radius; d2 <= radius; ++d2) {
                if (d1 == 0 && d2 == 0) continue;
                const double r2 = double(d1) * d1 + double(d2) * d2;
                if (r2 > double(radius) * radius) continue;  // Euclidean cut
                k.dense_[size_t(d1 + radius) * w + size_t(d2 + radius)] =
                    coupling(model, origin, Site{d1, d2});
            }
    }
    return k;
}

namespace {

// sum_{k=m+1..K} k^-alpha + integral closure beyond K; an upper bound on
// sum_{k>m} k^-alpha that never exceeds the plain integral bound from m.
double axis_tail_sum(double alpha, int64_t m, int64_t terms_cap) {
    const int64_t K = std::min<int64_t>(std::max<int64_t>(100000, 100 * m), terms_cap);
    double s = 0.0;
    for (int64_t k = K; k > m; --k) s += std::pow(double(k), -alpha);
    return s + std::pow(double(K), 1.0 - alpha) / (alpha - 1.0);
}

}  // namespace

double tail_mass(const CouplingModel& model, int32_t radius) {
    if (radius < 1) throw std::invalid_argument("tail_mass: radius must be >= 1");
    const double J = model.strength;
    switch (model.family) {
        case Family::nn_ising:
        case Family::aniso_nn_rotator:
            return 0.0;
        case Family::axial_lr:
            return 2.0 * J * axis_tail_sum(model.alpha1, radius, 10000000);
        case Family::biaxial_lr:
            return 2.0 * J * (axis_tail_sum(model.alpha1, radius, 10000000) +
                              axis_tail_sum(model.alpha2, radius, 10000000));
        case Family::iso_lr_ising:
        case Family::iso_lr_rotator: {
            const double alpha = model.alpha1;
            const int64_t S = std::min<int64_t>(std::max<int64_t>(256, 20 * int64_t(radius)), 4096);
            const double R2 = double(radius) * radius;
            double s = 0.0;
            for (int64_t d1 = -S; d1 <= S; ++d1)
                for (int64_t d2 = -S; d2 <= S; ++d2) {
                    const double r2 = double(d1) * d1 + double(d2) * d2;
                    if (r2 <= R2) continue;
                    s += std::pow(r2, -alpha / 2.0);
                }
            // shells |v|_inf = t > S hold 8t sites, each with |v| >= t
            s += 8.0 * std::pow(double(S), 2.0 - alpha) / (alpha - 2.0);
            return J * s;
        }
    }
    throw std::logic_error("tail_mass: bad family");
}

double tail_beyond(const CouplingModel& model, double m) {
    if (m < 1.0) m = 1.0;
    const double J = model.strength;
    switch (model.family) {
        case Family::nn_ising:
        case Family::aniso_nn_rotator:
            return 0.0;
        case Family::axial_lr:
            return 2.0 * J * std::pow(m, 1.0 - model.alpha1) / (model.alpha1 - 1.0);
        case Family::biaxial_lr:
            return 2.0 * J * (std::pow(m, 1.0 - model.alpha1) / (model.alpha1 - 1.0) +
                              std::pow(m, 1.0 - model.alpha2) / (model.alpha2 - 1.0));
        case Family::iso_lr_ising:
        case Family::iso_lr_rotator: {
            // |v| > m implies |v|_inf >= s0 := floor(m/sqrt(2)) + 1
            const double alpha = model.alpha1;
            const double s0 = std::max(1.0, std::floor(m / std::sqrt(2.0)) + 1.0);
            return 8.0 * J *
                   (std::pow(s0, 1.0 - alpha) + std::pow(s0, 2.0 - alpha) / (alpha - 2.0));
        }
    }
    throw std::logic_error("tail_beyond: bad family");
}

}  // namespace decim
