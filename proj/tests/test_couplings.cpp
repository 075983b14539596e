#include <doctest.h>

#include "decim/couplings.hpp"
#include "decim/rng.hpp"

using namespace decim;

namespace {

CouplingModel make(Family f, double J, double a1 = 0, double a2 = 0, double kappa = 0) {
    CouplingModel m;
    m.family = f;
    m.strength = J;
    m.alpha1 = a1;
    m.alpha2 = a2;
    m.kappa = kappa;
    m.beta = 1.0;
    m.validate();
    return m;
}

}  // namespace

TEST_CASE("coupling formulas") {
    const auto i3 = make(Family::iso_lr_ising, 1.0, 3.0);
    CHECK(coupling(i3, Site{0, 0}, Site{2, 0}) == doctest::Approx(0.125));

    const auto i1 = make(Family::axial_lr, 1.0, 1.5);
    CHECK(coupling(i1, Site{0, 0}, Site{1, 1}) == 0.0);
    CHECK(coupling(i1, Site{0, 0}, Site{0, 1}) == 1.0);   // vertical n.n.
    CHECK(coupling(i1, Site{0, 0}, Site{0, 2}) == 0.0);   // vertical beyond n.n.
    CHECK(coupling(i1, Site{0, 0}, Site{1, 0}) == 1.0);
    CHECK(coupling(i1, Site{0, 0}, Site{2, 0}) == doctest::Approx(std::pow(2.0, -1.5)));

    const auto i2 = make(Family::biaxial_lr, 2.0, 1.5, 1.2);
    CHECK(coupling(i2, Site{0, 0}, Site{0, 3}) == doctest::Approx(2.0 * std::pow(3.0, -1.2)));

    const auto nn = make(Family::nn_ising, 1.5);
    CHECK(coupling(nn, Site{4, 4}, Site{4, 5}) == 1.5);
    CHECK(coupling(nn, Site{4, 4}, Site{5, 5}) == 0.0);

    CHECK_THROWS_AS(coupling(nn, Site{1, 1}, Site{1, 1}), std::invalid_argument);
}

TEST_CASE("coupling is symmetric and translation invariant") {
    SplitMix64 rng(11);
    const std::vector<CouplingModel> models = {
        make(Family::nn_ising, 1.0), make(Family::axial_lr, 0.7, 1.4),
        make(Family::biaxial_lr, 1.0, 1.8, 1.3), make(Family::iso_lr_ising, 2.0, 2.7),
        make(Family::iso_lr_rotator, 1.0, 3.0)};
    for (const auto& m : models)
        for (int rep = 0; rep < 30; ++rep) {
            const auto r = [&](int span) { return int32_t(rng.next_u64() % (2 * span + 1)) - span; };
            const Site i{r(6), r(6)}, j{r(6), r(6)};
            if (i == j) continue;
            const Site t{r(3), r(3)};
            CHECK(coupling(m, i, j) == coupling(m, j, i));
            CHECK(coupling(m, i, j) ==
                  coupling(m, Site{i.i1 + t.i1, i.i2 + t.i2}, Site{j.i1 + t.i1, j.i2 + t.i2}));
            CHECK(coupling(m, i, j) >= 0.0);
        }
}

TEST_CASE("pair energies") {
    const auto nn = make(Family::nn_ising, 1.0);
    CHECK(pair_energy(nn, 1.0, 1.0) == 1.0);
    CHECK(pair_energy(nn, 1.0, -1.0) == -1.0);
    CHECK_THROWS_AS(pair_energy(nn, 0.3, 1.0), std::invalid_argument);

    const auto v2 = make(Family::iso_lr_rotator, 1.0, 3.0);
    CHECK(pair_energy(v2, 0.7, 0.7) == doctest::Approx(1.0));
    CHECK(pair_energy(v2, 0.0, pi) == doctest::Approx(-1.0));

    const auto v1 = make(Family::aniso_nn_rotator, 1.0, 0, 0, 0.5);
    CHECK(pair_energy(v1, pi / 2, pi / 2) == 1.0);  // sin^2 + kappa cos^2 at pi/2
    CHECK(pair_energy(v1, 0.0, 0.0) == 0.5);
    CHECK(pair_energy(v1, pi / 2, -pi / 2) == -1.0);
}

TEST_CASE("kernel storage and lookup") {
    const auto nn = make(Family::nn_ising, 1.0);
    const auto knn = build_kernel(nn, 3);
    int nonzero = 0;
    for (int d1 = -3; d1 <= 3; ++d1)
        for (int d2 = -3; d2 <= 3; ++d2)
            if (knn.weight(d1, d2) != 0.0) ++nonzero;
    CHECK(nonzero == 4);

    const auto i3 = make(Family::iso_lr_ising, 1.0, 3.0);
    const auto k3 = build_kernel(i3, 2);
    CHECK(k3.weight(2, 0) == doctest::Approx(0.125));
    CHECK(k3.weight(0, 0) == 0.0);
    CHECK(k3.weight(2, 2) == 0.0);  // beyond the Euclidean radius

    const auto i1 = make(Family::axial_lr, 1.0, 2.0);
    const auto k1 = build_kernel(i1, 3);
    CHECK(k1.axial_storage());
    for (int d1 = -3; d1 <= 3; ++d1)
        for (int d2 = -3; d2 <= 3; ++d2) {
            if (d1 == 0 && d2 == 0) continue;
            const bool expect_support = (d2 == 0) || (d1 == 0 && std::abs(d2) == 1);
            CHECK((k1.weight(d1, d2) != 0.0) == expect_support);
        }

    CHECK_THROWS_AS(build_kernel(nn, 0), std::invalid_argument);
}

TEST_CASE("kernel matches coupling on every stored offset") {
    SplitMix64 rng(3);
    const std::vector<CouplingModel> models = {
        make(Family::axial_lr, 1.3, 1.7), make(Family::biaxial_lr, 0.8, 2.2, 1.1),
        make(Family::iso_lr_ising, 1.0, 2.5), make(Family::aniso_nn_rotator, 1.0, 0, 0, 0.4)};
    for (const auto& m : models) {
        const int32_t r = 4;
        const auto k = build_kernel(m, r);
        for (int32_t d1 = -r; d1 <= r; ++d1)
            for (int32_t d2 = -r; d2 <= r; ++d2) {
                if (d1 == 0 && d2 == 0) continue;
                if (double(d1) * d1 + double(d2) * d2 > double(r) * r) continue;
                CHECK(k.weight(d1, d2) == coupling(m, Site{0, 0}, Site{d1, d2}));
            }
    }
}

TEST_CASE("tail mass bounds") {
    CHECK(tail_mass(make(Family::nn_ising, 1.0), 1) == 0.0);
    CHECK(tail_mass(make(Family::aniso_nn_rotator, 1.0, 0, 0, 0.5), 4) == 0.0);

    // per axis direction the bound is below the integral bound R^(1-a)/(a-1)
    const auto ax = make(Family::axial_lr, 1.0, 2.0);
    const double per_direction = tail_mass(ax, 100) / 2.0;
    CHECK(per_direction <= 0.01);
    CHECK(per_direction >= 0.0099);  // true tail is ~0.00995

    // isotropic: brute force over 10 < |v| <= 1000 (alpha = 4 converges fast)
    const auto i3 = make(Family::iso_lr_ising, 1.0, 4.0);
    double brute = 0.0;
    for (int64_t a = -1000; a <= 1000; ++a)
        for (int64_t b = -1000; b <= 1000; ++b) {
            const double r2 = double(a) * a + double(b) * b;
            if (r2 <= 100.0) continue;
            brute += 1.0 / (r2 * r2);
        }
    const double tm = tail_mass(i3, 10);
    CHECK(tm >= brute);  // upper bound
    CHECK(tm <= brute * 1.01);

    // monotone in R and alpha
    CHECK(tail_mass(i3, 10) > tail_mass(i3, 20));
    CHECK(tail_mass(make(Family::iso_lr_ising, 1.0, 3.0), 10) > tail_mass(i3, 10));
    CHECK(tail_mass(ax, 50) > tail_mass(ax, 100));
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(make(Family::axial_lr, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make(Family::iso_lr_ising, 1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(make(Family::iso_lr_rotator, 1.0, 4.5), std::invalid_argument);
    CHECK_THROWS_AS(make(Family::aniso_nn_rotator, 1.0, 0, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make(Family::nn_ising, -1.0), std::invalid_argument);
    CHECK(make(Family::iso_lr_rotator, 1.0, 4.0).spin_kind() == SpinKind::planar);
}
