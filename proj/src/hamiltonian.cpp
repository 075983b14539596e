#include "decim/hamiltonian.hpp"

#include <algorithm>
#include <cstdlib>

namespace decim {

FiniteSystem assemble_system(const SiteSet& region, const SpinConfiguration& config,
                             const BoundarySpec& bc, const InteractionKernel& kernel) {
    if (region.empty()) throw std::invalid_argument("assemble_system: empty region");
    if (config.window().half_width < region.bounding_box().half_width)
        throw std::invalid_argument("assemble_system: configuration does not cover the region");

    FiniteSystem sys;
    sys.kind = config.kind();
    sys.window = BoxRegion(region.bounding_box().half_width + kernel.radius());
    const int64_t n = sys.window.site_count();
    sys.value.assign(size_t(n), 0.0);
    sys.active.assign(size_t(n), 0);
    sys.in_region.assign(size_t(n), 0);
    sys.updatable.assign(size_t(n), 0);

    for (int64_t i = 0; i < n; ++i) {
        const Site s = sys.window.site_at(i);
        if (config.window().contains(s)) {
            // window sites outside the region participate only when frozen
            if (region.contains(s)) {
                sys.active[size_t(i)] = 1;
                sys.value[size_t(i)] = config.value(s);
                sys.in_region[size_t(i)] = 1;
                if (!config.is_frozen(s)) {
                    sys.updatable[size_t(i)] = 1;
                    sys.update_order.push_back(i);
                }
            } else if (config.is_frozen(s)) {
                sys.active[size_t(i)] = 1;
                sys.value[size_t(i)] = config.value(s);
            }
            continue;
        }
        switch (bc.kind) {
            case BoundarySpec::Kind::free:
                break;
            case BoundarySpec::Kind::homogeneous:
                sys.active[size_t(i)] = 1;
                sys.value[size_t(i)] = homogeneous_value(config.kind(), bc.level);
                break;
            case BoundarySpec::Kind::configuration:
                if (!bc.config || !bc.config->window().contains(s))
                    throw std::invalid_argument(
                        "assemble_system: boundary configuration missing values within kernel range");
                if (bc.config->kind() != config.kind())
                    throw std::invalid_argument("assemble_system: boundary spin kind mismatch");
                sys.active[size_t(i)] = 1;
                sys.value[size_t(i)] = bc.config->value(s);
                break;
        }
    }
    return sys;
}

double total_energy(const FiniteSystem& sys, const CouplingModel& model,
                    const InteractionKernel& kernel) {
    const int32_t r = kernel.radius();
    double e = 0.0;
    const int64_t n = sys.window.site_count();
    for (int64_t i = 0; i < n; ++i) {
        if (!sys.in_region[size_t(i)]) continue;
        const Site si = sys.site_of(i);
        const double vi = sys.value[size_t(i)];
        for (int32_t d1 = -r; d1 <= r; ++d1)
            for (int32_t d2 = -r; d2 <= r; ++d2) {
                const double w = kernel.weight(d1, d2);
                if (w == 0.0) continue;
                const Site sj{si.i1 + d1, si.i2 + d2};
                if (!sys.window.contains(sj)) continue;
                const int64_t j = sys.index(sj);
                if (!sys.active[size_t(j)]) continue;
                const double term = -w * pair_energy(model, vi, sys.value[size_t(j)]);
                e += sys.in_region[size_t(j)] ? 0.5 * term : term;  // interior pairs seen twice
            }
    }
    return e;
}

double total_energy(const SiteSet& region, const SpinConfiguration& config,
                    const BoundarySpec& bc, const CouplingModel& model,
                    const InteractionKernel& kernel) {
    return total_energy(assemble_system(region, config, bc, kernel), model, kernel);
}

namespace {

void check_updatable(const FiniteSystem& sys, Site site, const char* who) {
    if (!sys.window.contains(site) || !sys.updatable[size_t(sys.index(site))])
        throw std::invalid_argument(std::string(who) + ": site is frozen or outside the region");
}

}  // namespace

double local_field_scalar(const FiniteSystem& sys, Site site, const CouplingModel& model,
                          const InteractionKernel& kernel) {
    if (model.spin_kind() != SpinKind::scalar || sys.kind != SpinKind::scalar)
        throw std::invalid_argument("local_field_scalar: scalar kind required");
    check_updatable(sys, site, "local_field_scalar");
    const int32_t r = kernel.radius();
    double h = 0.0;
    for (int32_t d1 = -r; d1 <= r; ++d1)
        for (int32_t d2 = -r; d2 <= r; ++d2) {
            const double w = kernel.weight(d1, d2);
            if (w == 0.0) continue;
            const Site sj{site.i1 + d1, site.i2 + d2};
            if (!sys.window.contains(sj)) continue;
            const int64_t j = sys.index(sj);
            if (sys.active[size_t(j)]) h += w * sys.value[size_t(j)];
        }
    return h;
}

Vec2 local_field_planar(const FiniteSystem& sys, Site site, const CouplingModel& model,
                        const InteractionKernel& kernel) {
    if (model.spin_kind() != SpinKind::planar || sys.kind != SpinKind::planar)
        throw std::invalid_argument("local_field_planar: planar kind required");
    check_updatable(sys, site, "local_field_planar");
    const int32_t r = kernel.radius();
    Vec2 f;
    for (int32_t d1 = -r; d1 <= r; ++d1)
        for (int32_t d2 = -r; d2 <= r; ++d2) {
            const double w = kernel.weight(d1, d2);
            if (w == 0.0) continue;
            const Site sj{site.i1 + d1, site.i2 + d2};
            if (!sys.window.contains(sj)) continue;
            const int64_t j = sys.index(sj);
            if (!sys.active[size_t(j)]) continue;
            double x, y;
            unit_vector(sys.value[size_t(j)], x, y);
            f.x += w * x;
            f.y += w * y;
        }
    if (model.family == Family::aniso_nn_rotator) f.x *= model.kappa;
    return f;
}

double energy_delta(const FiniteSystem& sys, Site site, double old_value, double new_value,
                    const CouplingModel& model, const InteractionKernel& kernel) {
    if (sys.kind == SpinKind::scalar) {
        const double h = local_field_scalar(sys, site, model, kernel);
        return -h * new_value + h * old_value;
    }
    const Vec2 f = local_field_planar(sys, site, model, kernel);
    double xo, yo, xn, yn;
    unit_vector(normalize_angle(old_value), xo, yo);
    unit_vector(normalize_angle(new_value), xn, yn);
    return -(f.x * xn + f.y * yn) + (f.x * xo + f.y * yo);
}

namespace {

// sum over y outside box N of J(x,y): kernel offsets summed directly, the
// remainder closed with tail bounds beyond max(kernel radius, distance to
// the exterior).
double exterior_coupling_mass(Site x, int64_t outer_n, const CouplingModel& model,
                              const InteractionKernel& kernel) {
    const int32_t r = kernel.radius();
    double direct = 0.0;
    if (outer_n - sup_norm(x) <= int64_t(r)) {
        for (int32_t d1 = -r; d1 <= r; ++d1)
            for (int32_t d2 = -r; d2 <= r; ++d2) {
                const double w = kernel.weight(d1, d2);
                if (w == 0.0) continue;
                const int64_t y1 = int64_t(x.i1) + d1, y2 = int64_t(x.i2) + d2;
                if (std::max(std::llabs(y1), std::llabs(y2)) > outer_n) direct += w;
            }
    }
    if (!model.long_range()) return direct;

    if (model.family == Family::axial_lr || model.family == Family::biaxial_lr) {
        // per-axis, per-direction exact thresholds
        auto axis_tail = [&](double alpha, int64_t dist_pos, int64_t dist_neg) {
            const double tp = double(std::max<int64_t>(r, dist_pos));
            const double tn = double(std::max<int64_t>(r, dist_neg));
            return model.strength * (std::pow(tp, 1.0 - alpha) + std::pow(tn, 1.0 - alpha)) /
                   (alpha - 1.0);
        };
        double tail = axis_tail(model.alpha1, outer_n - x.i1, outer_n + x.i1);
        if (model.family == Family::biaxial_lr)
            tail += axis_tail(model.alpha2, outer_n - x.i2, outer_n + x.i2);
        return direct + tail;
    }
    // isotropic: every exterior site is at Euclidean distance > N - |x|_inf
    const double t = std::max<double>(r, double(outer_n - sup_norm(x)));
    return direct + tail_beyond(model, t);
}

}  // namespace

double bc_energy_bound(int32_t inner_l, int64_t outer_n, const CouplingModel& model,
                       const InteractionKernel& kernel) {
    if (outer_n <= inner_l)
        throw std::invalid_argument("bc_energy_bound: N must exceed L");
    double s = 0.0;
    SiteSet::all_of(BoxRegion(inner_l)).for_each([&](Site x) {
        s += exterior_coupling_mass(x, outer_n, model, kernel);
    });
    return 2.0 * s;
}

double bc_energy_difference(int32_t inner_l, int64_t outer_n, const CouplingModel& model,
                            const InteractionKernel& kernel, const BoundarySpec& bc1,
                            const BoundarySpec& bc2) {
    if (outer_n <= inner_l)
        throw std::invalid_argument("bc_energy_difference: N must exceed L");

    // the bound itself is geometric; the specs only need to agree on the annulus
    const SpinKind kind = model.spin_kind();
    auto value_at = [&](const BoundarySpec& b, Site s) {
        switch (b.kind) {
            case BoundarySpec::Kind::free: return 0.0;  // no spin: sentinel, compared kind-wise below
            case BoundarySpec::Kind::homogeneous: return homogeneous_value(kind, b.level);
            case BoundarySpec::Kind::configuration:
                if (!b.config || !b.config->window().contains(s))
                    throw std::invalid_argument(
                        "bc_energy_difference: boundary values missing on the annulus");
                return b.config->value(s);
        }
        return 0.0;
    };
    const bool structural = bc1.kind != BoundarySpec::Kind::configuration &&
                            bc2.kind != BoundarySpec::Kind::configuration;
    if (structural) {
        const bool same = bc1.kind == bc2.kind &&
                          (bc1.kind != BoundarySpec::Kind::homogeneous || bc1.level == bc2.level);
        if (!same)
            throw std::invalid_argument(
                "bc_energy_difference: boundary conditions differ inside the annulus");
    } else {
        if ((bc1.kind == BoundarySpec::Kind::free) != (bc2.kind == BoundarySpec::Kind::free))
            throw std::invalid_argument(
                "bc_energy_difference: boundary conditions differ inside the annulus");
        for (int64_t y1 = -outer_n; y1 <= outer_n; ++y1)
            for (int64_t y2 = -outer_n; y2 <= outer_n; ++y2) {
                const Site s{int32_t(y1), int32_t(y2)};
                if (sup_norm(s) <= inner_l) continue;
                if (value_at(bc1, s) != value_at(bc2, s))
                    throw std::invalid_argument(
                        "bc_energy_difference: boundary conditions differ inside the annulus");
            }
    }
    return bc_energy_bound(inner_l, outer_n, model, kernel);
}

AnnulusSchedule annulus_size(const CouplingModel& model, const InteractionKernel& kernel,
                             int32_t inner_l, double target_c) {
    if (target_c <= 0.0) throw std::invalid_argument("annulus_size: target_C must be > 0");
    AnnulusSchedule out;
    out.inner_l = inner_l;
    switch (model.family) {
        case Family::nn_ising:
        case Family::aniso_nn_rotator:
            out.outer_n = inner_l + 1;
            out.bound_c = 0.0;
            out.alpha_eff = 0.0;
            out.asymptotic_exponent = 0.0;
            return out;
        case Family::axial_lr:
            out.alpha_eff = model.alpha1;
            out.asymptotic_exponent = 2.0 / (model.alpha1 - 1.0);
            break;
        case Family::biaxial_lr:
            out.alpha_eff = std::min(model.alpha1, model.alpha2);
            out.asymptotic_exponent = 2.0 / (out.alpha_eff - 1.0);
            break;
        case Family::iso_lr_ising:
        case Family::iso_lr_rotator:
            out.alpha_eff = model.alpha1;
            out.asymptotic_exponent = 2.0 / (model.alpha1 - 2.0);
            break;
    }

    auto bound = [&](int64_t n) { return bc_energy_bound(inner_l, n, model, kernel); };

    int64_t lo = inner_l;  // bound(lo) unknown/infinite, treated as > target
    int64_t hi = inner_l + 1;
    while (bound(hi) > target_c) {
        lo = hi;
        if (hi > (int64_t(1) << 60))
            throw std::runtime_error("annulus_size: no annulus satisfies the target bound");
        hi *= 2;
    }
    while (hi - lo > 1) {
        const int64_t mid = lo + (hi - lo) / 2;
        if (bound(mid) <= target_c) hi = mid;
        else lo = mid;
    }
    out.outer_n = hi;
    out.bound_c = bound(hi);
    return out;
}

}  // namespace decim
