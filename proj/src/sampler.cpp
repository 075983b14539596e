#include "decim/sampler.hpp"

namespace decim {

void ChainSpec::validate(SpinKind kind) const {
    if (sweeps < 1) throw std::invalid_argument("chain: sweeps must be >= 1");
    if (burn_in < 0) throw std::invalid_argument("chain: burn_in must be >= 0");
    if (thinning < 1) throw std::invalid_argument("chain: thinning must be >= 1");
    if (sweeps / thinning < 1) throw std::invalid_argument("chain: nothing would be recorded");
    if (kind == SpinKind::planar && !(proposal_width > 0.0 && proposal_width <= pi))
        throw std::invalid_argument("chain: proposal_width must lie in (0, pi]");
}

SamplerState::SamplerState(const FiniteSystem& sys, const CouplingModel& model,
                           const InteractionKernel& kernel)
    : sys_(sys), model_(model), kernel_(kernel) {
    if (model.spin_kind() != sys.kind)
        throw std::invalid_argument("sampler: model and configuration kinds differ");
    stride_ = sys_.window.side();
    beta_ = model_.beta;
    kappa_x_ = model_.family == Family::aniso_nn_rotator ? model_.kappa : 1.0;
    const size_t n = sys_.value.size();
    if (sys_.kind == SpinKind::scalar) {
        sp_.assign(n, 0.0);
        for (size_t i = 0; i < n; ++i)
            if (sys_.active[i]) sp_[i] = sys_.value[i];
    } else {
        ux_.assign(n, 0.0);
        uy_.assign(n, 0.0);
        ang_.assign(n, 0.0);
        for (size_t i = 0; i < n; ++i) {
            ang_[i] = sys_.value[i];
            if (sys_.active[i]) unit_vector(sys_.value[i], ux_[i], uy_[i]);
        }
    }
}

double SamplerState::field_at_index(int64_t idx) const {
    const int32_t r = kernel_.radius();
    const double* s = sp_.data();
    double h = 0.0;
    if (kernel_.axial_storage()) {
        const double* wh = kernel_.horizontal().data();
        const double* wv = kernel_.vertical().data();
        for (int32_t k = 1; k <= r; ++k) {
            h += wh[k] * (s[idx - int64_t(k) * stride_] + s[idx + int64_t(k) * stride_]);
            h += wv[k] * (s[idx - k] + s[idx + k]);
        }
        return h;
    }
    const int32_t w = 2 * r + 1;
    const double* wt = kernel_.dense().data();
    for (int32_t d1 = 0; d1 < w; ++d1) {
        const double* row = s + idx + int64_t(d1 - r) * stride_ - r;
        const double* wrow = wt + int64_t(d1) * w;
        double acc = 0.0;
        for (int32_t d2 = 0; d2 < w; ++d2) acc += wrow[d2] * row[d2];
        h += acc;
    }
    return h;
}

void SamplerState::field_vec_at_index(int64_t idx, double& fx, double& fy) const {
    const int32_t r = kernel_.radius();
    const double* cx = ux_.data();
    const double* cy = uy_.data();
    fx = 0.0;
    fy = 0.0;
    const int32_t w = 2 * r + 1;
    const double* wt = kernel_.dense().data();
    for (int32_t d1 = 0; d1 < w; ++d1) {
        const double* rx = cx + idx + int64_t(d1 - r) * stride_ - r;
        const double* ry = cy + idx + int64_t(d1 - r) * stride_ - r;
        const double* wrow = wt + int64_t(d1) * w;
        double ax = 0.0, ay = 0.0;
        for (int32_t d2 = 0; d2 < w; ++d2) {
            ax += wrow[d2] * rx[d2];
            ay += wrow[d2] * ry[d2];
        }
        fx += ax;
        fy += ay;
    }
    fx *= kappa_x_;
}

void SamplerState::set_angle_index(int64_t idx, double theta) {
    ang_[size_t(idx)] = theta;
    unit_vector(theta, ux_[size_t(idx)], uy_[size_t(idx)]);
}

void SamplerState::sweep(SplitMix64& rng, double proposal_width) {
    if (sys_.kind == SpinKind::scalar) {
        for (int64_t idx : sys_.update_order) {
            const double h = field_at_index(idx);
            sp_[size_t(idx)] = rng.next_double() < heat_bath_plus_probability(h, beta_) ? 1.0 : -1.0;
        }
        return;
    }
    for (int64_t idx : sys_.update_order) {
        const double trial = normalize_angle(ang_[size_t(idx)] + proposal_width * rng.next_signed());
        double fx, fy, tx, ty;
        field_vec_at_index(idx, fx, fy);
        unit_vector(trial, tx, ty);
        const double de = -(fx * (tx - ux_[size_t(idx)]) + fy * (ty - uy_[size_t(idx)]));
        if (de <= 0.0 || rng.next_double() < std::exp(-beta_ * de)) set_angle_index(idx, trial);
    }
}

double SamplerState::heat_bath_site(Site s, SplitMix64& rng) {
    if (sys_.kind != SpinKind::scalar)
        throw std::invalid_argument("heat_bath_site: scalar kind required");
    const int64_t idx = sys_.index(s);
    if (!sys_.window.contains(s) || !sys_.updatable[size_t(idx)])
        throw std::invalid_argument("heat_bath_site: site is frozen or not updatable");
    const double h = field_at_index(idx);
    sp_[size_t(idx)] = rng.next_double() < heat_bath_plus_probability(h, beta_) ? 1.0 : -1.0;
    return sp_[size_t(idx)];
}

double SamplerState::metropolis_site(Site s, SplitMix64& rng, double proposal_width) {
    if (sys_.kind != SpinKind::planar)
        throw std::invalid_argument("metropolis_site: planar kind required");
    const int64_t idx = sys_.index(s);
    if (!sys_.window.contains(s) || !sys_.updatable[size_t(idx)])
        throw std::invalid_argument("metropolis_site: site is frozen or not updatable");
    const double trial = normalize_angle(ang_[size_t(idx)] + proposal_width * rng.next_signed());
    double fx, fy, tx, ty;
    field_vec_at_index(idx, fx, fy);
    unit_vector(trial, tx, ty);
    const double de = -(fx * (tx - ux_[size_t(idx)]) + fy * (ty - uy_[size_t(idx)]));
    if (de <= 0.0 || rng.next_double() < std::exp(-beta_ * de)) set_angle_index(idx, trial);
    return ang_[size_t(idx)];
}

double SamplerState::scalar_at(Site s) const { return sp_[size_t(sys_.index(s))]; }
double SamplerState::angle_at(Site s) const { return ang_[size_t(sys_.index(s))]; }

double SamplerState::observable_at(Site s) const {
    const size_t i = size_t(sys_.index(s));
    return sys_.kind == SpinKind::scalar ? sp_[i] : uy_[i];
}

double SamplerState::region_mean() const {
    double m = 0.0;
    int64_t n = 0;
    const size_t total = sys_.in_region.size();
    for (size_t i = 0; i < total; ++i) {
        if (!sys_.in_region[i]) continue;
        m += sys_.kind == SpinKind::scalar ? sp_[i] : uy_[i];
        ++n;
    }
    return m / double(n);
}

double SamplerState::field_scalar_fast(Site s) const { return field_at_index(sys_.index(s)); }

Vec2 SamplerState::field_planar_fast(Site s) const {
    Vec2 f;
    field_vec_at_index(sys_.index(s), f.x, f.y);
    return f;
}

Observable observable_site(Site s) {
    return [s](const SamplerState& st) { return st.observable_at(s); };
}

Observable observable_region_mean() {
    return [](const SamplerState& st) { return st.region_mean(); };
}

ChainResult run_chain(const FiniteSystem& sys, const CouplingModel& model,
                      const InteractionKernel& kernel, const ChainSpec& spec,
                      const std::vector<Observable>& observables, bool keep_series) {
    spec.validate(sys.kind);
    if (observables.empty()) throw std::invalid_argument("run_chain: no observables");
    SamplerState state(sys, model, kernel);
    SplitMix64 rng(spec.seed);

    for (int64_t s = 0; s < spec.burn_in; ++s) state.sweep(rng, spec.proposal_width);

    std::vector<std::vector<double>> series(observables.size());
    const int64_t n_rec = spec.sweeps / spec.thinning;
    for (auto& v : series) v.reserve(size_t(n_rec));
    for (int64_t s = 1; s <= spec.sweeps; ++s) {
        state.sweep(rng, spec.proposal_width);
        if (s % spec.thinning == 0)
            for (size_t o = 0; o < observables.size(); ++o)
                series[o].push_back(observables[o](state));
    }

    ChainResult out;
    out.estimates.reserve(series.size());
    for (const auto& v : series) out.estimates.push_back(estimate_from_series(v));
    if (keep_series) out.series = std::move(series);
    return out;
}

Estimate constrained_plus_magnetization(const SpinConfiguration& frozen_even, int32_t N,
                                        const CouplingModel& model,
                                        const InteractionKernel& kernel, const ChainSpec& spec,
                                        std::vector<double>* series_out) {
    const SpinKind kind = model.spin_kind();
    if (frozen_even.kind() != kind)
        throw std::invalid_argument("constrained run: frozen configuration kind mismatch");
    const BoxRegion box(N);
    if (frozen_even.window().half_width < N)
        throw std::invalid_argument("constrained run: frozen assignment does not cover box N");

    SpinConfiguration config = homogeneous(box, kind, Level::plus);
    SiteSet::all_of(box).for_each([&](Site s) {
        if (is_even_site(s) && !(s == Site{0, 0})) {
            config.set_value(s, frozen_even.value(s));
            config.freeze(s);
        }
    });

    const SiteSet region = invisible_sites(box, true);
    const FiniteSystem sys =
        assemble_system(region, config, BoundarySpec::homogeneous_exterior(Level::plus), kernel);
    ChainResult res = run_chain(sys, model, kernel, spec, {observable_site(Site{0, 0})},
                                series_out != nullptr);
    if (series_out) *series_out = std::move(res.series[0]);
    return res.estimates[0];
}

}  // namespace decim
