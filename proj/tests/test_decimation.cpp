#include <doctest.h>

#include "decim/decimation.hpp"

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

}  // namespace

TEST_CASE("decimation map") {
    SpinConfiguration c(SpinKind::scalar, BoxRegion(4), 1.0);
    c.set_value(Site{2, 4}, -1.0);
    const auto d = decimate(c);
    CHECK(d.window().half_width == 2);
    CHECK(d.value(Site{1, 2}) == -1.0);
    CHECK(d.value(Site{0, 0}) == 1.0);

    // image of all-plus is all-plus
    const auto dp = decimate(homogeneous(BoxRegion(5), SpinKind::scalar, Level::plus));
    SiteSet::all_of(dp.window()).for_each([&](Site s) { CHECK(dp.value(s) == 1.0); });

    // the alternating image pulls back to (-1)^(i1+i2) on even sites
    const auto frozen = preimage_freeze(alternating_ising(BoxRegion(2)), BoxRegion(4));
    even_sublattice(BoxRegion(4)).for_each([&](Site s) {
        if (s == Site{0, 0}) return;
        const double expect = ((s.i1 / 2 + s.i2 / 2) % 2 == 0) ? 1.0 : -1.0;
        CHECK(frozen.value(s) == expect);
    });
    CHECK(frozen.value(Site{2, 0}) == -1.0);

    // decimation commutes with the doubled shift on the overlap window
    SpinConfiguration src(SpinKind::scalar, BoxRegion(6), 1.0);
    SplitMix64 rng(8);
    SiteSet::all_of(src.window()).for_each(
        [&](Site s) { src.set_value(s, rng.next_double() < 0.5 ? 1.0 : -1.0); });
    SpinConfiguration shifted(SpinKind::scalar, BoxRegion(4), 1.0);
    SiteSet::all_of(shifted.window()).for_each(
        [&](Site s) { shifted.set_value(s, src.value(Site{s.i1 + 2, s.i2})); });
    const auto a = decimate(shifted);                 // decimate(shift by (2,0))
    const auto b = decimate(src);                     // shift by (1,0) after decimating
    SiteSet::all_of(a.window()).for_each([&](Site s) {
        if (b.window().contains(Site{s.i1 + 1, s.i2}))
            CHECK(a.value(s) == b.value(Site{s.i1 + 1, s.i2}));
    });
}

TEST_CASE("preimage freezing leaves the origin free") {
    const auto frozen = preimage_freeze(alternating_ising(BoxRegion(3)), BoxRegion(4));
    CHECK(!frozen.is_frozen(Site{0, 0}));
    CHECK(frozen.is_frozen(Site{2, 0}));
    CHECK(frozen.is_frozen(Site{-4, 2}));
    CHECK(!frozen.is_frozen(Site{1, 0}));
    int64_t count = 0;
    even_sublattice(BoxRegion(4)).for_each([&](Site s) {
        if (frozen.is_frozen(s)) ++count;
    });
    CHECK(count == even_sublattice(BoxRegion(4)).size() - 1);

    const auto all_plus = preimage_freeze(homogeneous(BoxRegion(3), SpinKind::scalar, Level::plus),
                                          BoxRegion(4));
    even_sublattice(BoxRegion(4)).for_each([&](Site s) {
        if (!(s == Site{0, 0})) CHECK(all_plus.value(s) == 1.0);
    });

    // surjectivity: decimating any pre-image extension returns the image
    const auto image = alternating_ising(BoxRegion(2));
    const auto ext = preimage_freeze(image, BoxRegion(4));
    const auto back = decimate(ext);
    SiteSet::all_of(BoxRegion(2)).for_each([&](Site s) {
        if (!(s == Site{0, 0})) CHECK(back.value(s) == image.value(s));
    });
}

// the conditioned model freezes every even site; the probe frees the origin
// only afterwards
namespace {
SpinConfiguration freeze_preimage_with_origin(const SpinConfiguration& image, BoxRegion box) {
    SpinConfiguration out = preimage_freeze(image, box);
    out.set_value(Site{0, 0}, image.value(Site{0, 0}));
    out.freeze(Site{0, 0});
    return out;
}
}  // namespace

TEST_CASE("zero-field mechanism of the alternating constraint") {
    // n.n. Ising: the frozen-neighbor field vanishes exactly at every
    // decorated site
    const auto nn = make(Family::nn_ising, 1.0, 1.0);
    const auto k = build_kernel(nn, 1);
    const int32_t n = 6;
    const auto frozen =
        freeze_preimage_with_origin(alternating_ising(BoxRegion((n + k.radius() + 1) / 2 + 1)),
                                    BoxRegion(n + k.radius()));
    CHECK(frozen_field_residual(frozen, n, nn, k) == 0.0);

    // horizontal-axis rotator constraint: vertical field component vanishes
    // exactly, for n.n. and for long-range couplings
    const auto v1 = make(Family::aniso_nn_rotator, 1.0, 1.0, 0, 0, 0.5);
    const auto kv = build_kernel(v1, 1);
    const auto frozen_rot =
        freeze_preimage_with_origin(alternating_rotator(BoxRegion((n + kv.radius() + 1) / 2 + 1)),
                                    BoxRegion(n + kv.radius()));
    CHECK(frozen_field_residual(frozen_rot, n, v1, kv) == 0.0);

    const auto v2 = make(Family::iso_lr_rotator, 1.0, 1.0, 3.0);
    const auto kv2 = build_kernel(v2, 5);
    const auto frozen_rot2 =
        freeze_preimage_with_origin(alternating_rotator(BoxRegion((n + kv2.radius() + 1) / 2 + 1)),
                                    BoxRegion(n + kv2.radius()));
    CHECK(frozen_field_residual(frozen_rot2, n, v2, kv2) == 0.0);

    // the vertical-axis variant still cancels for n.n. couplings because the
    // two frozen neighbors of every mixed-parity site alternate
    const auto frozen_vert = freeze_preimage_with_origin(
        alternating_rotator_vertical(BoxRegion((n + kv.radius() + 1) / 2 + 1)),
        BoxRegion(n + kv.radius()));
    CHECK(frozen_field_residual(frozen_vert, n, v1, kv) == 0.0);

    // with the origin unfixed, its neighbors lose one partner and the n.n.
    // cancellation breaks there (and only there)
    const auto frozen_free_origin =
        preimage_freeze(alternating_ising(BoxRegion((n + k.radius() + 1) / 2 + 1)),
                        BoxRegion(n + k.radius()));
    CHECK(frozen_field_residual(frozen_free_origin, n, nn, k) == 1.0);
}

TEST_CASE("constrained system is spin-flip symmetric without the far shell") {
    // all even sites frozen alternating, free exterior, even N:
    // H(sigma) == H(-sigma) exactly
    const auto nn = make(Family::nn_ising, 1.0, 1.0);
    const auto k = build_kernel(nn, 1);
    const int32_t n = 4;
    const SpinConfiguration config =
        freeze_preimage_with_origin(alternating_ising(BoxRegion(n / 2)), BoxRegion(n));
    SplitMix64 rng(77);
    const auto region = invisible_sites(BoxRegion(n), false);
    for (int rep = 0; rep < 10; ++rep) {
        SpinConfiguration c = config;
        SpinConfiguration cf = config;
        region.for_each([&](Site s) {
            const double v = rng.next_double() < 0.5 ? 1.0 : -1.0;
            c.set_value(s, v);
            cf.set_value(s, -v);
        });
        const double e1 = total_energy(region, c, BoundarySpec::free_exterior(), nn, k);
        const double e2 = total_energy(region, cf, BoundarySpec::free_exterior(), nn, k);
        CHECK(e1 == e2);
    }
}

TEST_CASE("probe at beta zero sees no gap") {
    const auto nn = make(Family::nn_ising, 1.0, 0.0);
    const auto k = build_kernel(nn, 1);
    ChainSpec chain;
    chain.sweeps = 2000;
    chain.burn_in = 50;
    chain.seed = 100;
    ProbeOptions opt;
    opt.image_l = 1;
    opt.image_n = 2;
    opt.replicas = 2;
    const auto rep = discontinuity_probe(nn, k, chain, opt);
    const double se = std::sqrt(rep.m_plus.std_error * rep.m_plus.std_error +
                                rep.m_minus.std_error * rep.m_minus.std_error);
    CHECK(std::fabs(rep.gap) <= 3.0 * se + 1e-12);

    // oracle route: at beta = 0 both sides have exactly zero origin mean
    SpinConfiguration fp = preimage_freeze(
        homogeneous(BoxRegion(2), SpinKind::scalar, Level::plus), BoxRegion(2));
    SpinConfiguration cfg = homogeneous(BoxRegion(2), SpinKind::scalar, Level::plus);
    SiteSet::all_of(BoxRegion(2)).for_each([&](Site s) {
        if (is_even_site(s) && !(s == Site{0, 0})) {
            cfg.set_value(s, fp.value(s));
            cfg.freeze(s);
        }
    });
    const auto exact = enumerate_ising(invisible_sites(BoxRegion(2), true), cfg,
                                       BoundarySpec::homogeneous_exterior(Level::plus), nn, k);
    CHECK(exact.site_mean(Site{0, 0}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("probe bookkeeping and validation") {
    const auto nn = make(Family::nn_ising, 1.0, 0.5);
    const auto k = build_kernel(nn, 1);
    ChainSpec chain;
    chain.sweeps = 200;
    chain.seed = 4;
    ProbeOptions opt;
    opt.image_l = 2;
    opt.image_n = 2;
    CHECK_THROWS_AS(discontinuity_probe(nn, k, chain, opt), std::invalid_argument);
    opt.image_n = 3;
    opt.replicas = 3;
    const auto rep = discontinuity_probe(nn, k, chain, opt);
    CHECK(rep.plus_replicas.size() == 3);
    CHECK(rep.side_observable == "sigma_origin");
    CHECK(rep.significance ==
          doctest::Approx(rep.gap / std::sqrt(rep.m_plus.std_error * rep.m_plus.std_error +
                                              rep.m_minus.std_error * rep.m_minus.std_error)));

    // deterministic: same seeds reproduce the report bit for bit
    const auto rep2 = discontinuity_probe(nn, k, chain, opt);
    CHECK(rep.gap == rep2.gap);
    CHECK(rep.m_plus.mean == rep2.m_plus.mean);

    // worker count must not change the merged result
    ProbeOptions opt2 = opt;
    opt2.workers = 2;
    const auto rep3 = discontinuity_probe(nn, k, chain, opt2);
    CHECK(rep3.gap == rep.gap);
    CHECK(rep3.m_minus.mean == rep.m_minus.mean);
}

TEST_CASE("scan requires a non-empty L list and tabulates control rows") {
    const auto nn = make(Family::nn_ising, 1.0, 0.4);
    const auto k = build_kernel(nn, 1);
    ChainSpec chain;
    chain.sweeps = 300;
    chain.burn_in = 50;
    chain.seed = 12;
    ScanOptions opt;
    CHECK_THROWS_AS(bad_vs_good_scan(nn, k, chain, opt), std::invalid_argument);
    opt.l_list = {1, 2};
    opt.replicas = 2;
    const auto res = bad_vs_good_scan(nn, k, chain, opt);
    REQUIRE(res.rows.size() == 4);  // alternating + control per L
    CHECK(res.rows[0].side_observable == "sigma_origin");
    CHECK(res.rows[1].side_observable == "sigma_origin_control");
    CHECK(res.rows[0].image_n == 2);  // n.n. schedule is L+1
}
