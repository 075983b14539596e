#include <doctest.h>

#include "decim/oracle.hpp"
#include "decim/rng.hpp"

using namespace decim;

namespace {

CouplingModel make(Family f, double J, double beta, double a1 = 0, double a2 = 0,
                   double kappa = 0) {
    CouplingModel m;
    m.family = f;
    m.strength = J;
    m.beta = beta;
    m.alpha1 = a1;
    m.alpha2 = a2;
    m.kappa = kappa;
    m.validate();
    return m;
}

// independent second route: direct summation over all configurations,
// recomputing each energy from scratch through the reference total_energy
double direct_site_mean(const SiteSet& region, const SpinConfiguration& config,
                        const BoundarySpec& bc, const CouplingModel& model,
                        const InteractionKernel& kernel, Site target) {
    std::vector<Site> free_sites;
    region.for_each([&](Site s) {
        if (!config.is_frozen(s)) free_sites.push_back(s);
    });
    const size_t n = free_sites.size();
    REQUIRE(n <= 16);
    double z = 0.0, acc = 0.0;
    for (size_t code = 0; code < (size_t(1) << n); ++code) {
        SpinConfiguration c = config;
        for (size_t a = 0; a < n; ++a)
            c.set_value(free_sites[a], (code >> a) & 1 ? 1.0 : -1.0);
        const double w = std::exp(-model.beta * total_energy(region, c, bc, model, kernel));
        z += w;
        acc += w * c.value(target);
    }
    return acc / z;
}

}  // namespace

TEST_CASE("one spin in a field reproduces tanh") {
    const auto nn = make(Family::nn_ising, 1.0, 0.35);
    const auto k = build_kernel(nn, 1);
    SiteSet region(BoxRegion(0));
    region.insert(Site{0, 0});
    const SpinConfiguration c(SpinKind::scalar, BoxRegion(0), 1.0);
    const auto r =
        enumerate_ising(region, c, BoundarySpec::homogeneous_exterior(Level::plus), nn, k);
    CHECK(r.site_mean(Site{0, 0}) == doctest::Approx(std::tanh(0.35 * 4.0)).epsilon(1e-12));
    CHECK(r.partition_value > 0.0);
}

TEST_CASE("free 2x2 block has zero magnetization by symmetry") {
    const auto nn = make(Family::nn_ising, 1.0, 0.8);
    const auto k = build_kernel(nn, 1);
    SiteSet region(BoxRegion(1));
    region.insert(Site{0, 0});
    region.insert(Site{0, 1});
    region.insert(Site{1, 0});
    region.insert(Site{1, 1});
    const SpinConfiguration c(SpinKind::scalar, BoxRegion(1), 1.0);
    const auto r = enumerate_ising(region, c, BoundarySpec::free_exterior(), nn, k);
    for (const double m : r.site_means) CHECK(m == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("enumeration agrees with an independent direct-summation route") {
    SplitMix64 rng(2);
    const auto i3 = make(Family::iso_lr_ising, 1.0, 0.6, 3.0);
    const auto k = build_kernel(i3, 3);
    const BoxRegion box(1);
    SpinConfiguration c(SpinKind::scalar, box, 1.0);
    SiteSet::all_of(box).for_each(
        [&](Site s) { c.set_value(s, rng.next_double() < 0.5 ? 1.0 : -1.0); });
    c.freeze(Site{1, 1});
    const auto region = SiteSet::all_of(box);
    const auto bc = BoundarySpec::homogeneous_exterior(Level::plus);
    const auto fast = enumerate_ising(region, c, bc, i3, k);
    for (const Site target : {Site{0, 0}, Site{-1, 1}, Site{1, 0}}) {
        const double slow = direct_site_mean(region, c, bc, i3, k, target);
        CHECK(fast.site_mean(target) == doctest::Approx(slow).epsilon(1e-10));
    }
}

TEST_CASE("golden 3x3 all-plus reference at beta 0.6") {
    const auto nn = make(Family::nn_ising, 1.0, 0.6);
    const auto k = build_kernel(nn, 1);
    const BoxRegion box(1);
    const SpinConfiguration c(SpinKind::scalar, box, 1.0);
    const auto region = SiteSet::all_of(box);
    const auto bc = BoundarySpec::homogeneous_exterior(Level::plus);
    const auto r = enumerate_ising(region, c, bc, nn, k);
    const double golden = direct_site_mean(region, c, bc, nn, k, Site{0, 0});
    CHECK(r.site_mean(Site{0, 0}) == doctest::Approx(golden).epsilon(1e-12));
    CHECK(r.site_mean(Site{0, 0}) > 0.9);  // deep in the ordered boundary regime
}

TEST_CASE("global flip negates odd observables and keeps Z") {
    SplitMix64 rng(14);
    const auto nn = make(Family::nn_ising, 1.0, 0.7);
    const auto k = build_kernel(nn, 1);
    const BoxRegion box(1);
    SpinConfiguration c(SpinKind::scalar, box, 1.0);
    SiteSet::all_of(box).for_each(
        [&](Site s) { c.set_value(s, rng.next_double() < 0.5 ? 1.0 : -1.0); });
    const auto region = SiteSet::all_of(box);
    const auto plus = enumerate_ising(region, c, BoundarySpec::homogeneous_exterior(Level::plus),
                                      nn, k);
    const auto minus = enumerate_ising(region, c, BoundarySpec::homogeneous_exterior(Level::minus),
                                       nn, k);
    CHECK(plus.log_partition == doctest::Approx(minus.log_partition).epsilon(1e-12));
    for (size_t a = 0; a < plus.site_means.size(); ++a)
        CHECK(plus.site_means[a] == doctest::Approx(-minus.site_means[a]).epsilon(1e-10));
}

TEST_CASE("enumeration caps the free spin count") {
    const auto nn = make(Family::nn_ising, 1.0, 0.5);
    const auto k = build_kernel(nn, 1);
    const BoxRegion box(2);  // 25 free spins
    const SpinConfiguration c(SpinKind::scalar, box, 1.0);
    CHECK_THROWS_AS(enumerate_ising(SiteSet::all_of(box), c, BoundarySpec::free_exterior(), nn, k),
                    std::invalid_argument);
}

TEST_CASE("clock quadrature: single site") {
    const auto v2 = make(Family::iso_lr_rotator, 1.0, 1.0, 3.0);
    const auto k = build_kernel(v2, 1);
    SiteSet region(BoxRegion(0));
    region.insert(Site{0, 0});
    const SpinConfiguration c(SpinKind::planar, BoxRegion(0), 0.0);

    // zero field: symmetric circle, zero vertical mean
    const auto free_r = clock_quadrature_rotator(region, 64, c, BoundarySpec::free_exterior(), v2, k);
    CHECK(free_r.site_mean(Site{0, 0}) == doctest::Approx(0.0).epsilon(1e-12));

    // vertical field: ratio of Bessel-like sums, q=64 vs q=128 nearly equal
    const auto plus_r = clock_quadrature_rotator(region, 64, c,
                                                 BoundarySpec::homogeneous_exterior(Level::plus),
                                                 v2, k);
    CHECK(plus_r.site_mean(Site{0, 0}) > 0.5);
    CHECK(plus_r.clock_q_alt == 128);
    CHECK(plus_r.discretization_shift < 1e-6);
}

TEST_CASE("clock quadrature: two-site anisotropic block") {
    const auto v1 = make(Family::aniso_nn_rotator, 1.0, 1.0, 0, 0, 0.5);
    const auto k = build_kernel(v1, 1);
    const BoxRegion box(1);
    SpinConfiguration c = homogeneous(box, SpinKind::planar, Level::plus);
    SiteSet::all_of(box).for_each([&](Site s) {
        if (!(s == Site{0, 0}) && !(s == Site{0, 1})) c.freeze(s);
    });
    const auto r = clock_quadrature_rotator(SiteSet::all_of(box), 64, c,
                                            BoundarySpec::homogeneous_exterior(Level::plus), v1, k);
    CHECK(r.site_mean(Site{0, 1}) > 0.0);
    CHECK(r.site_mean(Site{0, 0}) > 0.0);

    // expectations shrink monotonically as q doubles (Cauchy check)
    const auto r16 = clock_quadrature_rotator(SiteSet::all_of(box), 16, c,
                                              BoundarySpec::homogeneous_exterior(Level::plus), v1, k);
    const auto r32 = clock_quadrature_rotator(SiteSet::all_of(box), 32, c,
                                              BoundarySpec::homogeneous_exterior(Level::plus), v1, k);
    const double d16 = std::fabs(r16.site_mean(Site{0, 0}) - r32.site_mean(Site{0, 0}));
    const double d32 = std::fabs(r32.site_mean(Site{0, 0}) - r.site_mean(Site{0, 0}));
    CHECK(d32 <= d16 + 1e-15);
}

TEST_CASE("clock quadrature caps and validation") {
    const auto v2 = make(Family::iso_lr_rotator, 1.0, 1.0, 3.0);
    const auto k = build_kernel(v2, 1);
    SiteSet region(BoxRegion(0));
    region.insert(Site{0, 0});
    const SpinConfiguration c(SpinKind::planar, BoxRegion(0), 0.0);
    CHECK_THROWS_AS(clock_quadrature_rotator(region, 4, c, BoundarySpec::free_exterior(), v2, k),
                    std::invalid_argument);
    const BoxRegion big(2);
    const SpinConfiguration cb(SpinKind::planar, big, 0.0);
    CHECK_THROWS_AS(clock_quadrature_rotator(SiteSet::all_of(big), 64, cb,
                                             BoundarySpec::free_exterior(), v2, k),
                    std::invalid_argument);
}

TEST_CASE("onsager closed form") {
    CHECK(onsager_reference(100.0) == doctest::Approx(1.0));
    CHECK(onsager_reference(0.3) == 0.0);
    CHECK(onsager_reference(0.44) == 0.0);  // just below the critical coupling
    CHECK(onsager_reference(0.6) == doctest::Approx(0.97355).epsilon(1e-4));
    CHECK_THROWS_AS(onsager_reference(0.0), std::invalid_argument);
}
