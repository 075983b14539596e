#include "decim/oracle.hpp"

#include <algorithm>
#include <bit>

namespace decim {

double ExactResult::site_mean(Site s) const {
    for (size_t i = 0; i < sites.size(); ++i)
        if (sites[i] == s) return site_means[i];
    throw std::invalid_argument("ExactResult::site_mean: site is not a free site");
}

namespace {

struct FreeSpinProblem {
    std::vector<Site> sites;
    std::vector<std::vector<double>> pair;  // couplings between free sites
    std::vector<double> hx, hy;             // boundary field (scalar uses hx)
};

// couplings among free spins and frozen/boundary fields, from the
// materialized system
FreeSpinProblem extract_problem(const FiniteSystem& sys, const CouplingModel& model,
                                const InteractionKernel& kernel) {
    FreeSpinProblem p;
    std::vector<int64_t> slot(sys.value.size(), -1);
    for (int64_t idx : sys.update_order) {
        slot[size_t(idx)] = int64_t(p.sites.size());
        p.sites.push_back(sys.site_of(idx));
    }
    const size_t n = p.sites.size();
    p.pair.assign(n, std::vector<double>(n, 0.0));
    p.hx.assign(n, 0.0);
    p.hy.assign(n, 0.0);
    const int32_t r = kernel.radius();
    const bool planar = sys.kind == SpinKind::planar;
    for (size_t a = 0; a < n; ++a) {
        const Site sa = p.sites[a];
        for (int32_t d1 = -r; d1 <= r; ++d1)
            for (int32_t d2 = -r; d2 <= r; ++d2) {
                const double w = kernel.weight(d1, d2);
                if (w == 0.0) continue;
                const Site sj{sa.i1 + d1, sa.i2 + d2};
                if (!sys.window.contains(sj)) continue;
                const int64_t j = sys.index(sj);
                if (!sys.active[size_t(j)]) continue;
                if (slot[size_t(j)] >= 0) {
                    p.pair[a][size_t(slot[size_t(j)])] = w;
                } else if (planar) {
                    double x, y;
                    unit_vector(sys.value[size_t(j)], x, y);
                    p.hx[a] += w * x;
                    p.hy[a] += w * y;
                } else {
                    p.hx[a] += w * sys.value[size_t(j)];
                }
            }
    }
    (void)model;
    return p;
}

}  // namespace

ExactResult enumerate_ising(const SiteSet& region, const SpinConfiguration& config,
                            const BoundarySpec& bc, const CouplingModel& model,
                            const InteractionKernel& kernel) {
    if (model.spin_kind() != SpinKind::scalar)
        throw std::invalid_argument("enumerate_ising: scalar model required");
    const FiniteSystem sys = assemble_system(region, config, bc, kernel);
    FreeSpinProblem p = extract_problem(sys, model, kernel);
    const size_t n = p.sites.size();
    if (n == 0 || n > 22)
        throw std::invalid_argument("enumerate_ising: free spin count must lie in [1, 22]");

    // lower bound on H keeps all Boltzmann weights <= 1
    double h_ref = 0.0;
    for (size_t a = 0; a < n; ++a) {
        h_ref -= std::fabs(p.hx[a]);
        for (size_t b = a + 1; b < n; ++b) h_ref -= std::fabs(p.pair[a][b]);
    }

    const double beta = model.beta;
    std::vector<double> s(n, 1.0);
    double energy = 0.0;
    for (size_t a = 0; a < n; ++a) {
        energy -= p.hx[a];
        for (size_t b = a + 1; b < n; ++b) energy -= p.pair[a][b];
    }

    double z = 0.0, e_acc = 0.0;
    std::vector<double> m_acc(n, 0.0);
    const uint64_t total = uint64_t(1) << n;
    for (uint64_t i = 0;; ++i) {
        const double w = std::exp(-beta * (energy - h_ref));
        z += w;
        e_acc += w * energy;
        for (size_t a = 0; a < n; ++a) m_acc[a] += w * s[a];
        if (i + 1 == total) break;
        // Gray code: flip the lowest set bit position of i+1
        const size_t a = size_t(std::countr_zero(i + 1));
        double neigh = p.hx[a];
        for (size_t b = 0; b < n; ++b) neigh += p.pair[a][b] * s[b];
        energy += 2.0 * s[a] * neigh;
        s[a] = -s[a];
    }

    ExactResult out;
    out.sites = p.sites;
    out.log_partition = std::log(z) - beta * h_ref - double(n) * std::log(2.0);
    out.partition_value = std::exp(out.log_partition);
    out.energy_mean = e_acc / z;
    out.site_means.resize(n);
    for (size_t a = 0; a < n; ++a) out.site_means[a] = m_acc[a] / z;
    return out;
}

ExactResult clock_quadrature_rotator(const SiteSet& region, int64_t q,
                                     const SpinConfiguration& config, const BoundarySpec& bc,
                                     const CouplingModel& model, const InteractionKernel& kernel) {
    if (model.spin_kind() != SpinKind::planar)
        throw std::invalid_argument("clock_quadrature_rotator: planar model required");
    if (q < 8) throw std::invalid_argument("clock_quadrature_rotator: q must be >= 8");
    const FiniteSystem sys = assemble_system(region, config, bc, kernel);
    FreeSpinProblem p = extract_problem(sys, model, kernel);
    const size_t n = p.sites.size();
    if (n == 0 || n > 8)
        throw std::invalid_argument("clock_quadrature_rotator: free site count must lie in [1, 8]");
    double states = 1.0;
    for (size_t a = 0; a < n; ++a) states *= double(q);
    if (states > 2.2e7)
        throw std::invalid_argument("clock_quadrature_rotator: state space too large");

    const double kx = model.family == Family::aniso_nn_rotator ? model.kappa : 1.0;
    const double beta = model.beta;

    auto solve = [&](int64_t qq, ExactResult& out) {
        std::vector<double> cx(size_t(qq), 0.0), cy(size_t(qq), 0.0);
        for (int64_t k = 0; k < qq; ++k) {
            const double th = normalize_angle(2.0 * pi * double(k) / double(qq) - pi);
            unit_vector(th, cx[size_t(k)], cy[size_t(k)]);
        }
        double h_ref = 0.0;
        for (size_t a = 0; a < n; ++a) {
            h_ref -= std::hypot(kx * p.hx[a], p.hy[a]);
            for (size_t b = a + 1; b < n; ++b) h_ref -= std::fabs(p.pair[a][b]) * std::max(1.0, kx);
        }
        double z = 0.0, e_acc = 0.0;
        std::vector<double> sy_acc(n, 0.0), sx_acc(n, 0.0);
        std::vector<int64_t> digit(n, 0);
        std::vector<double> partial(n + 1, 0.0);  // energy of pairs/fields within prefix
        size_t depth = 0;
        while (true) {
            if (depth == n) {
                const double w = std::exp(-beta * (partial[n] - h_ref));
                z += w;
                e_acc += w * partial[n];
                for (size_t a = 0; a < n; ++a) {
                    sy_acc[a] += w * cy[size_t(digit[a])];
                    sx_acc[a] += w * cx[size_t(digit[a])];
                }
                // backtrack to the next leaf
                while (depth > 0 && digit[depth - 1] == qq - 1) --depth;
                if (depth == 0) break;
                ++digit[depth - 1];
                --depth;
            }
            // extend: energy of site `depth` against the fixed prefix
            const size_t a = depth;
            const double xa = cx[size_t(digit[a])], ya = cy[size_t(digit[a])];
            double e = -(kx * p.hx[a] * xa + p.hy[a] * ya);
            for (size_t b = 0; b < a; ++b) {
                const double w = p.pair[a][b];
                if (w == 0.0) continue;
                e -= w * (ya * cy[size_t(digit[b])] + kx * xa * cx[size_t(digit[b])]);
            }
            partial[a + 1] = partial[a] + e;
            ++depth;
            if (depth < n) digit[depth] = 0;
        }
        out.log_partition = std::log(z) - beta * h_ref - double(n) * std::log(double(qq));
        out.partition_value = std::exp(out.log_partition);
        out.energy_mean = e_acc / z;
        out.site_means.resize(n);
        out.site_means_x.resize(n);
        for (size_t a = 0; a < n; ++a) {
            out.site_means[a] = sy_acc[a] / z;
            out.site_means_x[a] = sx_acc[a] / z;
        }
    };

    ExactResult out;
    out.sites = p.sites;
    out.clock_q = q;
    solve(q, out);

    double states2 = 1.0;
    for (size_t a = 0; a < n; ++a) states2 *= 2.0 * double(q);
    out.clock_q_alt = states2 <= 2.2e7 ? 2 * q : q / 2;
    ExactResult alt;
    alt.sites = p.sites;
    solve(out.clock_q_alt, alt);
    for (size_t a = 0; a < n; ++a)
        out.discretization_shift =
            std::max(out.discretization_shift, std::fabs(out.site_means[a] - alt.site_means[a]));
    return out;
}

double onsager_reference(double beta) {
    if (beta <= 0.0) throw std::invalid_argument("onsager_reference: beta must be > 0");
    const double beta_c = std::log(1.0 + std::sqrt(2.0)) / 2.0;
    if (beta <= beta_c) return 0.0;
    const double s = std::sinh(2.0 * beta);
    return std::pow(1.0 - std::pow(s, -4.0), 0.125);
}

}  // namespace decim
