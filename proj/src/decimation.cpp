#include "decim/decimation.hpp"

#include <cmath>

#include "decim/parallel.hpp"

namespace decim {

SpinConfiguration decimate(const SpinConfiguration& input) {
    const BoxRegion out_box(input.window().half_width / 2);
    SpinConfiguration out(input.kind(), out_box, input.kind() == SpinKind::scalar ? 1.0 : 0.0);
    SiteSet::all_of(out_box).for_each([&](Site s) {
        const Site src{2 * s.i1, 2 * s.i2};
        out.set_value(s, input.value(src));
        if (input.is_frozen(src)) out.freeze(s);
    });
    return out;
}

SpinConfiguration preimage_freeze(const SpinConfiguration& image, BoxRegion box) {
    if (2 * image.window().half_width < box.half_width)
        throw std::invalid_argument("preimage_freeze: image does not cover the half-size window");
    SpinConfiguration out = homogeneous(box, image.kind(), Level::plus);
    SiteSet::all_of(box).for_each([&](Site s) {
        if (!is_even_site(s) || (s == Site{0, 0})) return;
        out.set_value(s, image.value(Site{s.i1 / 2, s.i2 / 2}));
        out.freeze(s);
    });
    return out;
}

double frozen_field_residual(const SpinConfiguration& frozen_config, int32_t N,
                             const CouplingModel& model, const InteractionKernel& kernel) {
    if (frozen_config.window().half_width < N + kernel.radius())
        throw std::invalid_argument(
            "frozen_field_residual: frozen configuration must cover box N plus the kernel radius");
    const bool planar = model.spin_kind() == SpinKind::planar;
    if (frozen_config.kind() != model.spin_kind())
        throw std::invalid_argument("frozen_field_residual: kind mismatch");
    const int32_t r = kernel.radius();
    double worst = 0.0;
    invisible_sites(BoxRegion(N), true).for_each([&](Site s) {
        if (frozen_config.is_frozen(s)) return;  // measure at free sites only
        double f = 0.0;
        for (int32_t d1 = -r; d1 <= r; ++d1)
            for (int32_t d2 = -r; d2 <= r; ++d2) {
                const double w = kernel.weight(d1, d2);
                if (w == 0.0) continue;
                const Site j{s.i1 + d1, s.i2 + d2};
                if (!frozen_config.window().contains(j) || !frozen_config.is_frozen(j)) continue;
                if (planar) {
                    double x, y;
                    unit_vector(frozen_config.value(j), x, y);
                    f += w * y;  // vertical component only
                } else {
                    f += w * frozen_config.value(j);
                }
            }
        worst = std::max(worst, std::fabs(f));
    });
    return worst;
}

namespace {

SpinConfiguration bad_center(SpinKind kind, BoxRegion box, BadImage image, RotatorAxis axis) {
    if (image == BadImage::all_plus) return homogeneous(box, kind, Level::plus);
    if (kind == SpinKind::scalar) return alternating_ising(box);
    return axis == RotatorAxis::horizontal ? alternating_rotator(box)
                                           : alternating_rotator_vertical(box);
}

SpinConfiguration image_side_configuration(SpinKind kind, int32_t L, int32_t N, Level side,
                                           BadImage image, RotatorAxis axis) {
    SpinConfiguration out = homogeneous(BoxRegion(N), kind, side);
    const SpinConfiguration center = bad_center(kind, BoxRegion(L), image, axis);
    SiteSet::all_of(BoxRegion(L)).for_each([&](Site s) { out.set_value(s, center.value(s)); });
    return out;
}

}  // namespace

GapReport discontinuity_probe(const CouplingModel& model, const InteractionKernel& kernel,
                              const ChainSpec& chain, const ProbeOptions& opt) {
    model.validate();
    if (opt.image_n <= opt.image_l)
        throw std::invalid_argument("probe: N must exceed L");
    if (opt.replicas < 1) throw std::invalid_argument("probe: replicas must be >= 1");
    const SpinKind kind = model.spin_kind();

    GapReport report;
    report.image_l = opt.image_l;
    report.image_n = opt.image_n;
    report.eps = opt.eps;
    report.seed_base = chain.seed;
    report.side_observable = kind == SpinKind::scalar ? "sigma_origin" : "sin_theta_origin";
    if (opt.image == BadImage::all_plus) report.side_observable += "_control";

    if (model.long_range()) {
        const AnnulusSchedule sched =
            annulus_size(model, kernel, 2 * opt.image_l, opt.schedule_target_c);
        report.schedule_n = sched.outer_n;
        report.schedule_warning = int64_t(2) * opt.image_n < sched.outer_n;
    }

    const BoxRegion original_box(2 * opt.image_n);
    const int32_t replicas = opt.replicas;
    report.plus_replicas.assign(size_t(replicas), Estimate{});
    report.minus_replicas.assign(size_t(replicas), Estimate{});

    const SpinConfiguration frozen_plus = preimage_freeze(
        image_side_configuration(kind, opt.image_l, opt.image_n, Level::plus, opt.image,
                                 opt.rotator_axis),
        original_box);
    const SpinConfiguration frozen_minus = preimage_freeze(
        image_side_configuration(kind, opt.image_l, opt.image_n, Level::minus, opt.image,
                                 opt.rotator_axis),
        original_box);

    parallel_jobs(2 * int64_t(replicas), opt.workers, [&](int64_t job) {
        const bool plus_side = job < replicas;
        const int64_t r = plus_side ? job : job - replicas;
        ChainSpec spec = chain;
        spec.seed = derive_seed(chain.seed, uint64_t(job));
        const Estimate e = constrained_plus_magnetization(
            plus_side ? frozen_plus : frozen_minus, original_box.half_width, model, kernel, spec);
        (plus_side ? report.plus_replicas : report.minus_replicas)[size_t(r)] = e;
    });

    report.m_plus = merge_replicas(report.plus_replicas);
    report.m_minus = merge_replicas(report.minus_replicas);
    report.gap = report.m_plus.mean - report.m_minus.mean;
    const double se = std::sqrt(report.m_plus.std_error * report.m_plus.std_error +
                                report.m_minus.std_error * report.m_minus.std_error);
    // zero combined error (fully saturated sides): report a capped value so
    // the number stays finite in CSV/JSON payloads
    if (se > 0.0) report.significance = report.gap / se;
    else report.significance = report.gap == 0.0 ? 0.0 : std::copysign(1e9, report.gap);
    return report;
}

ScanResult bad_vs_good_scan(const CouplingModel& model, const InteractionKernel& kernel,
                            const ChainSpec& chain, const ScanOptions& opt) {
    if (opt.l_list.empty()) throw std::invalid_argument("scan: L list must not be empty");
    ScanResult out;
    std::vector<double> alternating_gaps;
    for (const int32_t l : opt.l_list) {
        int64_t n = 0;
        if (opt.rule == AnnulusRule::paper_schedule) {
            if (model.long_range()) {
                const AnnulusSchedule sched =
                    annulus_size(model, kernel, 2 * l, opt.schedule_target_c);
                n = (sched.outer_n + 1) / 2;
            } else {
                n = l + 1;
            }
        } else {
            n = int64_t(std::ceil(opt.fixed_ratio * l));
        }
        n = std::max<int64_t>(n, l + 1);
        if (n > 1 << 20) throw std::runtime_error("scan: scheduled annulus too large to sample");

        ProbeOptions po;
        po.image_l = l;
        po.image_n = int32_t(n);
        po.eps = opt.eps;
        po.replicas = opt.replicas;
        po.workers = opt.workers;
        po.rotator_axis = opt.rotator_axis;
        po.schedule_target_c = opt.schedule_target_c;

        po.image = BadImage::alternating;
        out.rows.push_back(discontinuity_probe(model, kernel, chain, po));
        alternating_gaps.push_back(out.rows.back().gap);

        po.image = BadImage::all_plus;
        out.rows.push_back(discontinuity_probe(model, kernel, chain, po));
    }
    for (size_t i = 1; i < alternating_gaps.size(); ++i) {
        if (alternating_gaps[i] < 0.5 * alternating_gaps[i - 1])
            out.warnings.push_back("gap shrank by more than half between L=" +
                                   std::to_string(opt.l_list[i - 1]) + " and L=" +
                                   std::to_string(opt.l_list[i]));
    }
    return out;
}

}  // namespace decim
