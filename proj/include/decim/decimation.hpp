#pragma once

#include <string>

#include "decim/oracle.hpp"
#include "decim/sampler.hpp"

namespace decim {

/// The decimation map: output value at i is the input value at 2i, on the
/// half-size window.
SpinConfiguration decimate(const SpinConfiguration& input);

/// Freeze the pre-image of an image configuration: even sites 2i of `box`
/// (except the origin, which stays free) frozen to image value at i. The
/// non-frozen sites carry maximal placeholder values.
SpinConfiguration preimage_freeze(const SpinConfiguration& image, BoxRegion box);

/// Largest frozen-neighbor field over the decorated sites of box N: for
/// scalar models the magnitude of the frozen-site field, for planar models
/// the magnitude of its vertical component. The frozen configuration should
/// cover box N grown by the kernel radius so every neighborhood is complete.
double frozen_field_residual(const SpinConfiguration& frozen_config, int32_t N,
                             const CouplingModel& model, const InteractionKernel& kernel);

enum class BadImage { alternating, all_plus };
enum class RotatorAxis { horizontal, vertical };

struct ProbeOptions {
    int32_t image_l = 4;
    int32_t image_n = 6;
    double eps = 0.1;
    int32_t replicas = 8;
    int32_t workers = 1;
    BadImage image = BadImage::alternating;
    RotatorAxis rotator_axis = RotatorAxis::horizontal;
    double schedule_target_c = 1.0;
};

struct GapReport {
    Estimate m_plus, m_minus;
    double gap = 0.0;
    double significance = 0.0;
    int32_t image_l = 0;
    int32_t image_n = 0;
    double eps = 0.0;
    uint64_t seed_base = 0;
    std::string side_observable;
    int64_t schedule_n = 0;        // minimal original-lattice N per the energy bound
    bool schedule_warning = false; // probe annulus smaller than the schedule asks
    std::vector<Estimate> plus_replicas, minus_replicas;
};

/// The essential-discontinuity probe. Builds the two one-sided image
/// configurations around the bad (alternating) configuration — alternating
/// on the image box L, homogeneous plus/minus on the image annulus up to N —
/// freezes their pre-images on the even sublattice of the doubled original
/// box, and estimates the constrained origin observable for both sides with
/// the same maximal far field. A significant gap between the sides is the
/// finite-volume discontinuity witness.
GapReport discontinuity_probe(const CouplingModel& model, const InteractionKernel& kernel,
                              const ChainSpec& chain, const ProbeOptions& opt);

enum class AnnulusRule { paper_schedule, fixed_ratio };

struct ScanOptions {
    std::vector<int32_t> l_list;
    AnnulusRule rule = AnnulusRule::paper_schedule;
    double fixed_ratio = 1.5;
    double eps = 0.1;
    int32_t replicas = 8;
    int32_t workers = 1;
    RotatorAxis rotator_axis = RotatorAxis::horizontal;
    double schedule_target_c = 1.0;
};

struct ScanResult {
    std::vector<GapReport> rows;          // alternating rows then control rows, by L
    std::vector<std::string> warnings;    // flagged shrinking gaps
};

/// Probe each L of the list with N from the annulus rule, plus a control
/// row per L with the good (all-plus) image, which must show no gap.
ScanResult bad_vs_good_scan(const CouplingModel& model, const InteractionKernel& kernel,
                            const ChainSpec& chain, const ScanOptions& opt);

}  // namespace decim
