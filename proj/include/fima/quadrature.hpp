#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fima {

// Tolerances and budgets for one quadrature evaluation. Improper integrals
// are truncated by certificate: exponential tails at T = ln(C/abs)/c, power
// tails folded to a finite interval by x -> 1/x.
struct QuadSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-13;
    int max_subdivisions = 4000;
    double tail_abs_tol = 1e-13;
};

// Raised when the error estimate cannot be brought under the requested
// tolerance; carries the partial value so callers can report it.
struct QuadFailure : std::runtime_error {
    QuadFailure(const std::string& what, double partial_, double achieved_)
        : std::runtime_error(what), partial(partial_), achieved_tol(achieved_) {}
    double partial;
    double achieved_tol;
};

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod 7-15 on [a, b]; `splits` seeds extra initial
// break points (kinks, support edges).
double adaptive_gk(const Fn& f, double a, double b, const QuadSpec& q,
                   const std::vector<double>& splits = {});

// integral_a^{a+h} f(t) (t-a)^{gamma} dt for gamma > -1 and f smooth near a.
// The power factor is absorbed exactly through its antiderivative
// (substitution u = (t-a)^{gamma+1}), so the endpoint needs no special cells.
double power_weighted_left(const Fn& f, double a, double h, double gamma, const QuadSpec& q,
                           const std::vector<double>& t_splits = {});

// Mirror image: integral_{b-h}^{b} f(t) (b-t)^{gamma} dt.
double power_weighted_right(const Fn& f, double b, double h, double gamma, const QuadSpec& q,
                            const std::vector<double>& t_splits = {});

// integral_0^b f(v) dv where f(v) ~ c v^{gamma} near 0, gamma > -1.
double integrate_power_endpoint(const Fn& f, double b, double gamma, const QuadSpec& q);

// integral_{-inf}^{lo} F(x) dx with F(x) ~ c |x|^{decay} as x -> -inf,
// decay < -1, lo < 0. Folded by x = -1/v onto (0, -1/lo].
double integrate_left_power_tail(const Fn& F, double lo, double decay, const QuadSpec& q);

// Same on the right: integral_{hi}^{inf} F(x) dx, F(x) ~ c x^{decay}, hi > 0.
double integrate_right_power_tail(const Fn& F, double hi, double decay, const QuadSpec& q);

}  // namespace fima
