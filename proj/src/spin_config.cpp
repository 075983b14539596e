#include "decim/spin_config.hpp"

#include <nlohmann/json.hpp>

namespace decim {

double normalize_angle(double theta) {
    double t = std::fmod(theta, 2 * pi);
    if (t <= -pi) t += 2 * pi;
    if (t > pi) t -= 2 * pi;
    return t;
}

double angular_distance(double a, double b) {
    return std::fabs(normalize_angle(a - b));
}

void unit_vector(double theta, double& x, double& y) {
    if (theta == 0.0) { x = 1.0; y = 0.0; return; }
    if (theta == pi) { x = -1.0; y = 0.0; return; }
    if (theta == pi / 2) { x = 0.0; y = 1.0; return; }
    if (theta == -pi / 2) { x = 0.0; y = -1.0; return; }
    x = std::cos(theta);
    y = std::sin(theta);
}

SpinConfiguration::SpinConfiguration(SpinKind kind, BoxRegion window, double fill)
    : kind_(kind), window_(window), frozen_(window) {
    if (kind == SpinKind::scalar && fill != 1.0 && fill != -1.0)
        throw std::invalid_argument("SpinConfiguration: scalar values must be +1 or -1");
    const double v = kind == SpinKind::planar ? normalize_angle(fill) : fill;
    values_.assign(size_t(window.site_count()), v);
}

void SpinConfiguration::set_value(Site s, double v) {
    if (kind_ == SpinKind::scalar) {
        if (v != 1.0 && v != -1.0)
            throw std::invalid_argument("SpinConfiguration: scalar values must be +1 or -1");
        values_[size_t(window_.index(s))] = v;
    } else {
        values_[size_t(window_.index(s))] = normalize_angle(v);
    }
}

nlohmann::json SpinConfiguration::to_json() const {
    nlohmann::json j;
    j["kind"] = kind_ == SpinKind::scalar ? "scalar" : "planar";
    j["L"] = window_.half_width;
    j["values"] = values_;
    auto frozen = nlohmann::json::array();
    frozen_.for_each([&](Site s) { frozen.push_back({s.i1, s.i2}); });
    j["frozen"] = frozen;
    return j;
}

SpinConfiguration SpinConfiguration::from_json(const nlohmann::json& j) {
    const std::string kind_s = j.at("kind").get<std::string>();
    SpinKind kind;
    if (kind_s == "scalar") kind = SpinKind::scalar;
    else if (kind_s == "planar") kind = SpinKind::planar;
    else throw std::invalid_argument("configuration kind must be 'scalar' or 'planar'");

    BoxRegion box(j.at("L").get<int32_t>());
    const auto& vals = j.at("values");
    if (int64_t(vals.size()) != box.site_count())
        throw std::invalid_argument("configuration values length does not match (2L+1)^2");

    SpinConfiguration c(kind, box, kind == SpinKind::scalar ? 1.0 : 0.0);
    for (int64_t i = 0; i < box.site_count(); ++i)
        c.set_value(box.site_at(i), vals[size_t(i)].get<double>());
    if (j.contains("frozen"))
        for (const auto& p : j.at("frozen"))
            c.freeze(Site{p.at(0).get<int32_t>(), p.at(1).get<int32_t>()});
    return c;
}

SpinConfiguration alternating_ising(BoxRegion box) {
    SpinConfiguration c(SpinKind::scalar, box, 1.0);
    SiteSet::all_of(box).for_each([&](Site s) {
        c.set_value(s, ((s.i1 + s.i2) % 2 == 0) ? 1.0 : -1.0);
    });
    return c;
}

SpinConfiguration alternating_rotator(BoxRegion box) {
    SpinConfiguration c(SpinKind::planar, box, 0.0);
    SiteSet::all_of(box).for_each([&](Site s) {
        c.set_value(s, ((s.i1 + s.i2) % 2 == 0) ? 0.0 : pi);
    });
    return c;
}

SpinConfiguration alternating_rotator_vertical(BoxRegion box) {
    SpinConfiguration c(SpinKind::planar, box, 0.0);
    SiteSet::all_of(box).for_each([&](Site s) {
        c.set_value(s, ((s.i1 + s.i2) % 2 == 0) ? pi / 2 : -pi / 2);
    });
    return c;
}

SpinConfiguration homogeneous(BoxRegion box, SpinKind kind, Level level) {
    return SpinConfiguration(kind, box, homogeneous_value(kind, level));
}

OrderRelation compare_sin(const SpinConfiguration& a, const SpinConfiguration& b) {
    if (a.window() != b.window())
        throw std::invalid_argument("compare_sin: window mismatch");
    if (a.kind() != b.kind())
        throw std::invalid_argument("compare_sin: kind mismatch");

    bool le = true, ge = true;
    SiteSet::all_of(a.window()).for_each([&](Site s) {
        double va = a.value(s), vb = b.value(s);
        if (a.kind() == SpinKind::planar) {
            double x, ya, yb;
            unit_vector(va, x, ya);
            unit_vector(vb, x, yb);
            va = ya;
            vb = yb;
        }
        if (va > vb) le = false;
        if (va < vb) ge = false;
    });
    if (le && ge) return OrderRelation::equal;
    if (le) return OrderRelation::less_equal;
    if (ge) return OrderRelation::greater_equal;
    return OrderRelation::incomparable;
}

bool in_sub_neighborhood(const SpinConfiguration& c, const SpinConfiguration& center,
                         int32_t L, int32_t N, Level side, double eps) {
    if (N <= L) throw std::invalid_argument("in_sub_neighborhood: N must exceed L");
    if (c.kind() != center.kind())
        throw std::invalid_argument("in_sub_neighborhood: kind mismatch");
    if (c.window().half_width < N || center.window().half_width < L)
        throw std::invalid_argument("in_sub_neighborhood: window mismatch");
    const bool planar = c.kind() == SpinKind::planar;
    if (planar && (eps <= 0.0 || eps >= pi / 2))
        throw std::invalid_argument("in_sub_neighborhood: eps must lie in (0, pi/2)");

    const double band_center = homogeneous_value(c.kind(), side);
    bool ok = true;
    SiteSet::all_of(BoxRegion(N)).for_each([&](Site s) {
        if (!ok) return;
        if (sup_norm(s) <= L) {
            if (planar) ok = angular_distance(c.value(s), center.value(s)) <= eps;
            else ok = c.value(s) == center.value(s);
        } else {
            if (planar) ok = angular_distance(c.value(s), band_center) < eps;
            else ok = c.value(s) == band_center;
        }
    });
    return ok;
}

}  // namespace decim
