#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "decim/rng.hpp"
#include "decim/stats.hpp"

using namespace decim;

TEST_CASE("splitmix64 reference values") {
    // from the reference implementation with seed 1234567
    SplitMix64 g(1234567);
    CHECK(g.next_u64() == 6457827717110365317ULL);
    CHECK(g.next_u64() == 3203168211198807973ULL);
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform doubles are in range and roughly uniform") {
    SplitMix64 g(999);
    double mean = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = g.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        mean += u;
    }
    mean /= n;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("derived seeds differ per replica") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("estimate of iid series") {
    SplitMix64 g(5);
    std::vector<double> xs;
    for (int i = 0; i < 20000; ++i) xs.push_back(g.next_double());
    const Estimate e = estimate_from_series(xs);
    CHECK(e.mean == doctest::Approx(0.5).epsilon(0.02));
    CHECK(e.tau_int == doctest::Approx(0.5).epsilon(0.2));
    // naive iid error ~ sqrt(1/12/n)
    CHECK(e.std_error == doctest::Approx(std::sqrt(1.0 / 12.0 / 20000)).epsilon(0.25));
    CHECK(e.n_samples == 20000);
}

TEST_CASE("estimate of a correlated AR(1) series") {
    // x_{t+1} = rho x_t + noise has tau_int = (1+rho)/(2(1-rho))
    const double rho = 0.8;
    SplitMix64 g(17);
    std::vector<double> xs;
    double x = 0.0;
    for (int i = 0; i < 400000; ++i) {
        // sum of 12 uniforms: nearly gaussian, variance 1
        double z = 0.0;
        for (int k = 0; k < 12; ++k) z += g.next_double();
        z -= 6.0;
        x = rho * x + z;
        xs.push_back(x);
    }
    const double tau_expected = (1 + rho) / (2 * (1 - rho));  // 4.5
    const Estimate e = estimate_from_series(xs);
    CHECK(e.tau_int == doctest::Approx(tau_expected).epsilon(0.15));

    // batch means with batches ~ 20 tau agree with the acf route within noise
    const double bm = batch_means_error(xs, 90);
    CHECK(bm == doctest::Approx(e.std_error).epsilon(0.2));
}

TEST_CASE("constant series") {
    const std::vector<double> xs(500, 1.0);
    const Estimate e = estimate_from_series(xs);
    CHECK(e.mean == 1.0);
    CHECK(e.std_error == 0.0);
    CHECK(e.tau_int == 0.5);
}

TEST_CASE("merging replicas") {
    Estimate a{1.0, 0.1, 1.0, 100};
    Estimate b{3.0, 0.1, 1.0, 100};
    const Estimate m = merge_replicas({a, b});
    CHECK(m.mean == 2.0);
    CHECK(m.n_samples == 200);
    // the replica scatter dominates the pooled within error here
    CHECK(m.std_error == doctest::Approx(1.0));
    const Estimate same = merge_replicas({a, a});
    CHECK(same.std_error == doctest::Approx(0.1 / std::sqrt(2.0)));
    CHECK_THROWS_AS(merge_replicas({}), std::invalid_argument);
}
