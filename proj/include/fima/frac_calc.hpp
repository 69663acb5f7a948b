#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "fima/kernel.hpp"
#include "fima/quadrature.hpp"
#include "fima/stable.hpp"

namespace fima {

// Fractional order d constrained against a stability index:
// 0 < d < 1 - 1/alpha, so the Hurst parameter H = d + 1/alpha lies in (1/alpha, 1).
struct FracOrder {
    double d;
    double alpha_bound;

    FracOrder(double d_, double alpha_);
    double hurst() const { return d + 1.0 / alpha_bound; }
};

// Side information about an integrand: support, kink positions, and an
// optional exponential upper-tail certificate |f(t)| <= C e^{-c t}.
struct FnInfo {
    double support_lo = -std::numeric_limits<double>::infinity();
    double support_hi = std::numeric_limits<double>::infinity();
    std::vector<double> kinks;
    double decay_C = 0.0;  // <= 0 means no certificate
    double decay_c = 0.0;

    static FnInfo of_kernel(const Kernel& g);
};

// Right-sided fractional integral (1/Gamma(d)) integral_x^inf f(t)(t-x)^{d-1} dt.
double rl_integral_minus(const Fn& f, const FracOrder& d, double x, const QuadSpec& q,
                         const FnInfo& info = {});

// Left-sided fractional integral of a short-memory kernel,
// (1/Gamma(d)) integral_0^inf g(x-s) s^{d-1} ds; zero for x <= 0 by (C1).
double rl_integral_plus(const Kernel& g, const FracOrder& d, double x, const QuadSpec& q);

// Right-sided fractional derivative, evaluated as a central difference of the
// inner integral -(1/Gamma(1-d)) d/dx integral_x^inf phi(t)(t-x)^{-d} dt.
// Validation-grade: phi should be representable as I_-^d f for smooth f.
double rl_derivative_minus(const Fn& phi, const FracOrder& d, double x, const QuadSpec& q,
                           const FnInfo& info = {});

// (integral_lo^hi |f|^p)^{1/p}. Infinite endpoints need either a support bound,
// a decay certificate, or a power-tail exponent hint in `info`
// (f(x) ~ c|x|^{tail_exponent}); otherwise the integral is treated as divergent.
double lp_norm(const Fn& f, double p, double lo, double hi, const QuadSpec& q,
               const FnInfo& info = {}, double left_tail_exponent = 0.0,
               double right_tail_exponent = 0.0);

// The norm ||g||_{alpha,p} = lambda(alpha,p)^{1/p} ||I_-^d g||_alpha.
double b_alpha_p_norm(const Kernel& g, const StableLaw& law, const MomentSpec& spec,
                      const FracOrder& d, const QuadSpec& q);
double b_alpha_p_norm(const Fn& g, const FnInfo& info, const StableLaw& law,
                      const MomentSpec& spec, const FracOrder& d, const QuadSpec& q);

// Constants of the bound ||g||_{alpha,p} <= M ||g||_1 + N ||g||_alpha.
struct BoundConstants {
    double M;
    double N;
};
BoundConstants norm_bound_constants(const StableLaw& law, const MomentSpec& spec,
                                    const FracOrder& d);

// ||g||_1 and ||g||_alpha of a kernel (used with the bound above).
double kernel_lp_norm(const Kernel& g, double p, const QuadSpec& q);

// Piecewise-constant function: values[i] on (breaks[i], breaks[i+1]].
struct StepFn {
    std::vector<double> breaks;
    std::vector<double> values;

    double operator()(double t) const;
};

// Closed form of (I_-^d phi)(x) for a step function:
// (1/Gamma(d+1)) sum_i a_i [ (t_{i+1}-x)_+^d - (t_i-x)_+^d ].
double frac_integral_step_minus(const StepFn& phi, double d, double x);

}  // namespace fima
