#pragma once

#include <nlohmann/json_fwd.hpp>

#include "decim/lattice.hpp"

namespace decim {

enum class SpinKind { scalar, planar };
enum class Level { plus, minus };

constexpr double pi = 3.141592653589793238462643383279502884;

/// Normalize an angle to (-pi, pi].
double normalize_angle(double theta);

/// Geodesic distance on the circle, in [0, pi].
double angular_distance(double a, double b);

/// Unit vector (cos, sin) of an angle. The four cardinal angles 0, ±pi/2, pi
/// map to exact unit vectors so that e.g. the vertical component of a spin
/// pointing along ±e1 is exactly zero.
void unit_vector(double theta, double& x, double& y);

/// Scalar (±1) or planar (angle in (-pi,pi]) values on a finite window,
/// with a mask of frozen sites excluded from updates.
class SpinConfiguration {
public:
    SpinConfiguration(SpinKind kind, BoxRegion window, double fill);

    SpinKind kind() const { return kind_; }
    BoxRegion window() const { return window_; }

    double value(Site s) const { return values_[size_t(window_.index(s))]; }
    void set_value(Site s, double v);

    const SiteSet& frozen() const { return frozen_; }
    bool is_frozen(Site s) const { return frozen_.contains(s); }
    void freeze(Site s) { frozen_.insert(s); }
    void unfreeze(Site s) { frozen_.erase(s); }

    const std::vector<double>& raw_values() const { return values_; }

    nlohmann::json to_json() const;
    static SpinConfiguration from_json(const nlohmann::json& j);

private:
    SpinKind kind_;
    BoxRegion window_;
    std::vector<double> values_;
    SiteSet frozen_;
};

/// Alternating scalar configuration (-1)^(i1+i2).
SpinConfiguration alternating_ising(BoxRegion box);

/// Alternating planar configuration (-1)^(i1+i2) * e1: angle 0 on even
/// parity, pi on odd parity. Every vertical component is exactly zero.
SpinConfiguration alternating_rotator(BoxRegion box);

/// Variant alternating along the vertical axis: angle (-1)^(i1+i2) * pi/2.
SpinConfiguration alternating_rotator_vertical(BoxRegion box);

/// All +1 / all -1, or all +pi/2 / all -pi/2.
SpinConfiguration homogeneous(BoxRegion box, SpinKind kind, Level level);

inline double homogeneous_value(SpinKind kind, Level level) {
    if (kind == SpinKind::scalar) return level == Level::plus ? 1.0 : -1.0;
    return level == Level::plus ? pi / 2 : -pi / 2;
}

enum class OrderRelation { less_equal, greater_equal, equal, incomparable };

/// Sitewise partial order: scalar values directly, planar by sin(theta).
OrderRelation compare_sin(const SpinConfiguration& a, const SpinConfiguration& b);

/// Membership in the one-sided sub-neighborhood of `center`: agreement with
/// `center` on the box of half-width L (exact for scalar, within angular
/// distance eps for planar) and homogeneous plus/minus values on the annulus
/// between L and N (exact for scalar, inside the open eps-band around ±pi/2
/// for planar). Sites beyond N are unconstrained.
bool in_sub_neighborhood(const SpinConfiguration& c, const SpinConfiguration& center,
                         int32_t L, int32_t N, Level side, double eps);

}  // namespace decim
