#include <doctest.h>

#include <cmath>

#include "fima/path_sim.hpp"
#include "fima/stats.hpp"

using namespace fima;

namespace {
const QuadSpec q9 = [] {
    QuadSpec q;
    q.rel_tol = 1e-9;
    q.abs_tol = 1e-13;
    return q;
}();
}

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(GridSpec(1.0, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(0.0, 1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(0.0, 1.0, 0.3), std::invalid_argument);  // does not divide
    const GridSpec g(0.0, 2.0, 0.25, 1.0);
    CHECK(g.n_cells() == 12);
    CHECK(g.cell_left(0) == doctest::Approx(-1.0));
    CHECK(g.n_times() == 9);
    CHECK(g.time(8) == doctest::Approx(2.0));
}

TEST_CASE("noise increments carry the cell scale") {
    const StableLaw law(1.5, 1.0);
    const GridSpec grid(0.0, 100.0, 0.01);
    const auto noise = simulate_noise(grid, law, RandomStream{3, 0});
    CHECK(noise.increments.size() == 10000);

    // per-cell law via the empirical CF at theta = 1: exp(-dt sigma^alpha)
    const auto cf = empirical_cf(noise.increments, 1.0);
    const double exact = std::exp(-grid.dt);
    CHECK(std::abs(cf - std::complex<double>(exact, 0.0)) <
          3.0 * std::sqrt(2.0 / static_cast<double>(noise.increments.size())));

    // determinism
    const auto again = simulate_noise(grid, law, RandomStream{3, 0});
    CHECK(noise.increments == again.increments);

    // dt = 1: cell scale is sigma itself
    const GridSpec unit_grid(0.0, 20000.0, 1.0);
    const auto unit_noise = simulate_noise(unit_grid, law, RandomStream{3, 1});
    const auto cf1 = empirical_cf(unit_noise.increments, 1.0);
    CHECK(std::abs(cf1 - std::complex<double>(std::exp(-1.0), 0.0)) <
          3.0 * std::sqrt(2.0 / 20000.0));
}

TEST_CASE("aggregation reproduces coarse cells exactly") {
    const StableLaw law(1.7, 0.8);
    const GridSpec fine(0.0, 4.0, 0.125, 2.0);
    const auto noise = simulate_noise(fine, law, RandomStream{8, 2});
    const auto coarse = aggregate_noise(noise, 4);
    CHECK(coarse.grid.dt == doctest::Approx(0.5));
    CHECK(coarse.increments.size() == noise.increments.size() / 4);
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += noise.increments[k];
    CHECK(coarse.increments[0] == doctest::Approx(s).epsilon(1e-15));
}

TEST_CASE("stable integral basics") {
    const StableLaw law(1.5, 1.0);
    const GridSpec grid(0.0, 2.0, 0.125, 1.0);
    const auto noise = simulate_noise(grid, law, RandomStream{21, 5});

    CHECK(stable_integral([](double) { return 0.0; }, noise) == 0.0);

    double total = 0.0;
    for (double v : noise.increments) total += v;
    CHECK(stable_integral([](double) { return 1.0; }, noise) == doctest::Approx(total));

    // exact linearity per realization
    const Fn f = [](double x) { return std::sin(x); };
    const Fn h = [](double x) { return x * x; };
    const Fn combo = [&](double x) { return 2.0 * f(x) - 0.5 * h(x); };
    CHECK(stable_integral(combo, noise) ==
          doctest::Approx(2.0 * stable_integral(f, noise) - 0.5 * stable_integral(h, noise))
              .epsilon(1e-12));
}

TEST_CASE("stable integral of an indicator matches the exact law") {
    const StableLaw law(1.5, 1.0);
    const GridSpec grid(0.0, 1.0, 0.125);
    const Fn f = [](double x) { return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0; };
    const std::size_t n = 20000;
    std::vector<double> draws(n);
    for (std::size_t r = 0; r < n; ++r)
        draws[r] = stable_integral(f, simulate_noise(grid, law, RandomStream{77, r}));
    // the aligned indicator sums all increments: exactly S_alpha(1)
    const auto cf = empirical_cf(draws, 1.0);
    CHECK(std::abs(cf - std::complex<double>(std::exp(-1.0), 0.0)) <
          3.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("lfsm vanishes at zero and matches aligned step integrals") {
    const StableLaw law(1.5, 1.0);
    const FracOrder d(0.2, 1.5);
    const GridSpec grid(0.0, 2.0, 0.0625, 16.0);
    const auto noise = simulate_noise(grid, law, RandomStream{4, 9});

    CHECK(lfsm_value(0.0, d, noise) == 0.0);
    const auto path = simulate_lfsm(grid, d, noise);
    CHECK(path.values[0] == 0.0);
    CHECK(path.times.size() == grid.n_times());

    // integrate 1_(0,t] with respect to the LFSM: telescopes to M(t) exactly
    for (double t : {0.5, 1.0, 2.0}) {
        const Fn ind = [t](double x) { return (x > 0.0 && x <= t) ? 1.0 : 0.0; };
        CHECK(integrate_wrt_lfsm(ind, d, noise) ==
              doctest::Approx(lfsm_value(t, d, noise)).epsilon(1e-10));
    }

    // zero integrand
    CHECK(integrate_wrt_lfsm([](double) { return 0.0; }, d, noise) == 0.0);
}

TEST_CASE("simple-function consistency against the exact fractional integral") {
    const StableLaw law(1.5, 1.0);
    const FracOrder d(0.2, 1.5);
    const StepFn phi{{0.31830988618, 0.95492965855, 1.57079632679}, {1.0, -0.6}};

    const std::size_t seeds = 24;
    std::vector<double> rel(seeds);
    for (std::size_t s = 0; s < seeds; ++s) {
        const GridSpec grid(0.0, 2.0, 0.015625, 16.0);
        const auto noise = simulate_noise(grid, law, RandomStream{500, s});
        const double lhs = integrate_wrt_lfsm([&](double x) { return phi(x); }, d, noise);
        const double rhs =
            stable_integral([&](double x) { return frac_integral_step_minus(phi, d.d, x); }, noise);
        rel[s] = std::abs(lhs - rhs) / std::max(1e-12, std::abs(rhs));
    }
    CHECK(median(rel) < 0.05);
}

TEST_CASE("truncation bound dominates the exact tail norm") {
    const StableLaw law(1.5, 1.0);
    const FracOrder d(0.2, 1.5);

    const double b1 = truncation_bound(d, law, 1000.0, 1.0);
    CHECK(b1 == doctest::Approx(0.25356394193200155).epsilon(1e-12));

    // doubling T multiplies the bound by 2^{(alpha(d-1)+1)/alpha}
    const double b2 = truncation_bound(d, law, 2000.0, 1.0);
    CHECK(b2 / b1 == doctest::Approx(std::pow(2.0, -0.2 / 1.5)).epsilon(1e-12));
    CHECK(b2 < b1);

    // exact alpha-norm of the kernel tail below -T, by quadrature
    const double alpha = law.alpha;
    const double inv_gamma = 1.0 / std::tgamma(d.d + 1.0);
    const Fn tail = [&](double x) {
        const double k = inv_gamma * (std::pow(1.0 - x, d.d) - std::pow(-x, d.d));
        return std::pow(std::abs(k), alpha);
    };
    const double exact =
        std::pow(integrate_left_power_tail(tail, -1000.0, alpha * (d.d - 1.0), q9), 1.0 / alpha);
    CHECK(exact == doctest::Approx(0.25354704374).epsilon(1e-6));
    CHECK(exact <= b1);

    CHECK_THROWS_AS(truncation_bound(d, law, 0.5, 1.0), std::invalid_argument);
}
