#include <doctest.h>

#include <cmath>
#include <string>

#include "fima/frac_calc.hpp"
#include "fima/rng.hpp"

using namespace fima;

namespace {

const QuadSpec q9 = [] {
    QuadSpec q;
    q.rel_tol = 1e-9;
    q.abs_tol = 1e-13;
    return q;
}();

Fn indicator_fn(double a, double b) {
    return [a, b](double t) { return (t > a && t <= b) ? 1.0 : 0.0; };
}

FnInfo indicator_info(double a, double b) {
    FnInfo info;
    info.support_lo = a;
    info.support_hi = b;
    info.kinks = {a, b};
    return info;
}

// Independent oracle for (I_+^d e^{-u})(x): factor the exponential and absorb
// the power singularity with the substitution w = s^d, then integrate the
// smooth remainder. A different route than the library's.
double frac_exp_oracle(double d, double x, const QuadSpec& q) {
    const Fn smooth = [d](double w) { return std::exp(std::pow(w, 1.0 / d)); };
    const double inner = adaptive_gk(smooth, 0.0, std::pow(x, d), q) / d;
    return std::exp(-x) * inner / std::tgamma(d);
}

}  // namespace

TEST_CASE("fractional order validation message") {
    CHECK_THROWS_AS(FracOrder(0.5, 1.5), std::invalid_argument);
    try {
        FracOrder(0.5, 1.5);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("(0, 0.333") != std::string::npos);
    }
    CHECK_THROWS_AS(FracOrder(-0.1, 1.5), std::invalid_argument);
    const FracOrder d(0.2, 1.5);
    CHECK(d.hurst() == doctest::Approx(0.2 + 2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("right-sided fractional integral of indicators has the closed form") {
    const FracOrder d(0.2, 1.5);

    // f = 1_(0,1], x = 0: 1/Gamma(1.2)
    const double v1 = rl_integral_minus(indicator_fn(0, 1), d, 0.0, q9, indicator_info(0, 1));
    CHECK(v1 == doctest::Approx(1.0891244210583362).epsilon(1e-9));

    // f = 1_(0,2], x = -1: (3^0.2 - 1)/Gamma(1.2)
    const double v2 = rl_integral_minus(indicator_fn(0, 2), d, -1.0, q9, indicator_info(0, 2));
    CHECK(v2 == doctest::Approx(0.2676315673448713).epsilon(1e-9));

    // zero integrand
    const double v0 = rl_integral_minus([](double) { return 0.0; }, d, 0.0, q9,
                                        indicator_info(0, 1));
    CHECK(v0 == doctest::Approx(0.0));

    // grid of (t, x, d) against the step-function closed form
    for (double dd : {0.15, 0.2, 0.3}) {
        const FracOrder ord(dd, 1.6);
        for (double t : {0.5, 1.0, 2.5}) {
            for (double x : {-3.0, -0.7, 0.0, 0.4}) {
                if (x >= t) continue;
                const StepFn step{{0.0, t}, {1.0}};
                const double quad =
                    rl_integral_minus(indicator_fn(0, t), ord, x, q9, indicator_info(0, t));
                CHECK(quad == doctest::Approx(frac_integral_step_minus(step, dd, x)).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("left-sided fractional integral of the exponential kernel") {
    const FracOrder d(0.2, 1.5);
    const Kernel g = kernels::exponential(1.0);

    CHECK(rl_integral_plus(g, d, 0.0, q9) == 0.0);
    CHECK(rl_integral_plus(g, d, -2.0, q9) == 0.0);

    // frozen oracle value (independent substitution route, agreed to 1e-9)
    const double h1 = rl_integral_plus(g, d, 1.0, q9);
    CHECK(h1 == doctest::Approx(0.4907737726228281).epsilon(1e-8));
    CHECK(h1 == doctest::Approx(frac_exp_oracle(0.2, 1.0, q9)).epsilon(1e-9));
    for (double x : {0.3, 2.0, 7.5}) {
        CHECK(rl_integral_plus(g, d, x, q9) ==
              doctest::Approx(frac_exp_oracle(0.2, x, q9)).epsilon(1e-9));
    }

    CHECK(rl_integral_plus(kernels::zero(), d, 1.0, q9) == 0.0);
}

TEST_CASE("fractional integration is linear") {
    const FracOrder d(0.25, 1.6);
    CounterRng rng(RandomStream{5, 1});
    for (int rep = 0; rep < 4; ++rep) {
        const double a = 2.0 * rng.uniform01() - 1.0;
        const double b = 2.0 * rng.uniform01() - 1.0;
        const double c1 = rng.uniform01() + 0.5;
        const double c2 = rng.uniform01() + 0.5;
        const Fn f = [c1](double t) { return std::exp(-c1 * t * t); };
        const Fn h = [c2](double t) { return std::cos(t) * std::exp(-c2 * std::abs(t)); };
        const Fn combo = [=](double t) { return a * f(t) + b * h(t); };
        FnInfo info;
        info.support_lo = -8.0;
        info.support_hi = 12.0;  // both factors are below 1e-13 outside
        const double x = -1.0 + 2.0 * rng.uniform01();
        const double lhs = rl_integral_minus(combo, d, x, q9, info);
        const double rhs = a * rl_integral_minus(f, d, x, q9, info) +
                           b * rl_integral_minus(h, d, x, q9, info);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
}

TEST_CASE("lp norms") {
    CHECK(lp_norm(indicator_fn(0, 2), 1.5, 0.0, 2.0, q9) ==
          doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-10));
    CHECK(lp_norm([](double) { return 0.0; }, 2.0, 0.0, 5.0, q9) == doctest::Approx(0.0));
    FnInfo exp_info;
    exp_info.support_lo = 0.0;
    exp_info.decay_C = 1.0;
    exp_info.decay_c = 1.0;
    CHECK(lp_norm([](double t) { return t >= 0.0 ? std::exp(-t) : 0.0; }, 1.0, 0.0,
                  std::numeric_limits<double>::infinity(), q9, exp_info) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(lp_norm([](double) { return 1.0; }, 0.5, 0.0, 1.0, q9),
                    std::invalid_argument);
}

TEST_CASE("fractional derivative inverts the fractional integral") {
    const FracOrder d(0.2, 1.5);

    // step function: the inner integral is piecewise smooth, recovery is exact
    const StepFn step{{0.0, 1.0}, {1.0}};
    const Fn phi = [&](double t) { return frac_integral_step_minus(step, d.d, t); };
    FnInfo info;
    info.support_hi = 1.0;  // phi vanishes beyond the step support
    info.kinks = {0.0, 1.0};
    const double rec = rl_derivative_minus(phi, d, 0.5, q9, info);
    CHECK(rec == doctest::Approx(1.0).epsilon(1e-6));

    // smooth bump, sup error <= 1e-3 on the validation points
    const Fn bump = [](double t) {
        const double u = t - 1.0;
        return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
    };
    FnInfo binfo;
    binfo.support_lo = 0.0;
    binfo.support_hi = 2.0;
    const Fn ibump = [&](double t) { return rl_integral_minus(bump, d, t, q9, binfo); };
    FnInfo iinfo;
    iinfo.support_hi = 2.0;
    for (double x : {0.5, 1.0, 1.5}) {
        const double got = rl_derivative_minus(ibump, d, x, q9, iinfo);
        CHECK(std::abs(got - bump(x)) < 1e-3);
    }

    // zero function
    CHECK(rl_derivative_minus([](double) { return 0.0; }, d, 0.3, q9, iinfo) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("b_alpha_p norm: values, axioms, bound") {
    const StableLaw law(1.5, 1.0);
    const auto spec = MomentSpec::for_law(law, 1.0);
    const FracOrder d(0.2, 1.5);

    CHECK(b_alpha_p_norm(kernels::zero(), law, spec, d, q9) == doctest::Approx(0.0));

    // frozen oracle: lambda(1.5,1) * ||I_-^0.2 1_(0,1]||_1.5
    const Kernel ind = kernels::indicator(0.0, 1.0);
    const double n1 = b_alpha_p_norm(ind, law, spec, d, q9);
    CHECK(n1 == doctest::Approx(2.2279795775879676).epsilon(2e-5));

    // absolute homogeneity through the function overload
    const Fn two_ind = [](double t) { return (t > 0 && t <= 1) ? 2.0 : 0.0; };
    const double n2 = b_alpha_p_norm(two_ind, indicator_info(0, 1), law, spec, d, q9);
    CHECK(n2 == doctest::Approx(2.0 * n1).epsilon(1e-7));

    // triangle inequality and nonnegativity on kernel pairs
    const Kernel e1 = kernels::exponential(1.0);
    const Kernel g2 = kernels::gamma_type(2.0, 1.0);
    const double ne = b_alpha_p_norm(e1, law, spec, d, q9);
    const double ng = b_alpha_p_norm(g2, law, spec, d, q9);
    FnInfo sum_info;
    sum_info.support_lo = 0.0;
    sum_info.decay_C = 2.0;
    sum_info.decay_c = 0.5;
    sum_info.kinks = {0.0};
    const Fn sum_fn = [&](double t) { return e1(t) + g2(t); };
    const double nsum = b_alpha_p_norm(sum_fn, sum_info, law, spec, d, q9);
    CHECK(ne > 0.0);
    CHECK(ng > 0.0);
    CHECK(nsum <= ne + ng + 1e-7);

    // bound with the explicit constants
    const auto [M, N] = norm_bound_constants(law, spec, d);
    for (const Kernel* g : {&ind, &e1, &g2}) {
        const double lhs = b_alpha_p_norm(*g, law, spec, d, q9);
        const double rhs = M * kernel_lp_norm(*g, 1.0, q9) + N * kernel_lp_norm(*g, 1.5, q9);
        CHECK(lhs <= rhs * (1.0 + 1e-9));
    }
}

TEST_CASE("bound constants arithmetic") {
    const StableLaw law(1.5, 1.0);
    const auto spec = MomentSpec::for_law(law, 1.0);
    const auto [M, N] = norm_bound_constants(law, spec, FracOrder(0.2, 1.5));
    // M/N = d / (alpha(1-d) - 1)^{1/alpha}; lambda cancels
    CHECK(M / N == doctest::Approx(0.2 / std::pow(0.2, 2.0 / 3.0)).epsilon(1e-12));

    // M blows up as d approaches 1 - 1/alpha
    const auto near = norm_bound_constants(law, spec, FracOrder(1.0 / 3.0 - 1e-9, 1.5));
    CHECK(near.M > 1e2 * M);

    // alpha = 1.8, d = 0.3 values pinned through lambda(1.8, 1)
    const StableLaw law18(1.8, 1.0);
    const auto spec18 = MomentSpec::for_law(law18, 1.0);
    const auto mn = norm_bound_constants(law18, spec18, FracOrder(0.3, 1.8));
    const double lam = 1.26871542081034;
    const double denom = std::pow(1.8 * 0.7 - 1.0, 1.0 / 1.8);
    CHECK(mn.M == doctest::Approx(lam / std::tgamma(0.3) / denom).epsilon(1e-10));
    CHECK(mn.N == doctest::Approx(lam / std::tgamma(0.3) / 0.3).epsilon(1e-10));
}

TEST_CASE("step function evaluation and closed form consistency") {
    const StepFn phi{{0.0, 0.5, 1.25}, {2.0, -1.0}};
    CHECK(phi(0.25) == 2.0);
    CHECK(phi(1.0) == -1.0);
    CHECK(phi(-0.1) == 0.0);
    CHECK(phi(2.0) == 0.0);

    const Fn f = [&](double t) { return phi(t); };
    FnInfo info;
    info.support_lo = 0.0;
    info.support_hi = 1.25;
    info.kinks = {0.0, 0.5, 1.25};
    const FracOrder d(0.2, 1.5);
    for (double x : {-2.0, -0.3, 0.2, 0.9}) {
        CHECK(rl_integral_minus(f, d, x, q9, info) ==
              doctest::Approx(frac_integral_step_minus(phi, 0.2, x)).epsilon(1e-8));
    }
}
