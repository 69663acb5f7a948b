#include "fima/frac_calc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fima {

FracOrder::FracOrder(double d_, double alpha_) : d(d_), alpha_bound(alpha_) {
    if (!(alpha_bound > 1.0) || !(alpha_bound <= 2.0))
        throw std::invalid_argument("FracOrder: alpha must lie in (1, 2]");
    const double lim = 1.0 - 1.0 / alpha_bound;
    if (!(d > 0.0) || !(d < lim)) {
        std::ostringstream os;
        os << "d must lie in (0, 1 - 1/alpha) = (0, " << lim << ")";
        throw std::invalid_argument(os.str());
    }
}

FnInfo FnInfo::of_kernel(const Kernel& g) {
    FnInfo info;
    info.support_lo = 0.0;
    info.support_hi = g.support_hi();
    info.kinks = g.kinks();
    info.kinks.push_back(0.0);
    if (!g.is_zero()) {
        info.decay_C = g.decay_C();
        info.decay_c = g.decay_c();
    }
    return info;
}

namespace {

double upper_cutoff(double x, const FnInfo& info, double tail_abs_tol) {
    if (std::isfinite(info.support_hi)) return info.support_hi;
    if (info.decay_C > 0.0) {
        const double T = std::log(info.decay_C / tail_abs_tol) / info.decay_c;
        return std::max(x, 0.0) + std::max(T, 1.0) + 1.0;
    }
    throw std::invalid_argument("fractional integral: unbounded integrand without decay info");
}

}  // namespace

double rl_integral_minus(const Fn& f, const FracOrder& d, double x, const QuadSpec& q,
                         const FnInfo& info) {
    const double upper = upper_cutoff(x, info, q.tail_abs_tol);
    if (!(upper > x)) return 0.0;

    std::vector<double> kinks = info.kinks;
    if (std::isfinite(info.support_lo)) kinks.push_back(info.support_lo);
    if (std::isfinite(info.support_hi)) kinks.push_back(info.support_hi);

    const double h0 = std::min(upper - x, 1.0);
    double total = power_weighted_left(f, x, h0, d.d - 1.0, q, kinks);
    if (upper > x + h0) {
        const Fn integrand = [&](double t) { return f(t) * std::pow(t - x, d.d - 1.0); };
        total += adaptive_gk(integrand, x + h0, upper, q, kinks);
    }
    return total / std::tgamma(d.d);
}

double rl_integral_plus(const Kernel& g, const FracOrder& d, double x, const QuadSpec& q) {
    if (x <= 0.0 || g.is_zero()) return 0.0;
    // (1/Gamma(d)) int_0^x g(x-s) s^{d-1} ds; integrand vanishes for s > x by (C1).
    // g is negligible once its argument exceeds the certified cutoff.
    const double cut = g.certified_cutoff(q.tail_abs_tol);
    const double lo = std::isfinite(g.support_hi())
                          ? std::max(0.0, x - g.support_hi())
                          : std::max(0.0, x - cut);

    std::vector<double> kinks{lo};
    for (double k : g.kinks()) {
        const double s = x - k;
        if (s > 0.0 && s < x) kinks.push_back(s);
    }

    const Fn fs = [&](double s) { return g(x - s); };
    const double h0 = std::min(x, 1.0);
    double total = power_weighted_left(fs, 0.0, h0, d.d - 1.0, q, kinks);
    if (x > h0) {
        const Fn integrand = [&](double s) { return g(x - s) * std::pow(s, d.d - 1.0); };
        total += adaptive_gk(integrand, h0, x, q, kinks);
    }
    return total / std::tgamma(d.d);
}

double rl_derivative_minus(const Fn& phi, const FracOrder& d, double x, const QuadSpec& q,
                           const FnInfo& info) {
    const double h = 1e-4 * std::max(1.0, std::abs(x));
    if (x + h == x) throw std::invalid_argument("rl_derivative_minus: step size underflow");

    const auto inner = [&](double y) {
        const double upper = upper_cutoff(y, info, q.tail_abs_tol);
        if (!(upper > y)) return 0.0;
        std::vector<double> kinks = info.kinks;
        const double h0 = std::min(upper - y, 1.0);
        double v = power_weighted_left(phi, y, h0, -d.d, q, kinks);
        if (upper > y + h0) {
            const Fn integrand = [&](double t) { return phi(t) * std::pow(t - y, -d.d); };
            v += adaptive_gk(integrand, y + h0, upper, q, kinks);
        }
        return v;
    };

    return -(inner(x + h) - inner(x - h)) / (2.0 * h * std::tgamma(1.0 - d.d));
}

double lp_norm(const Fn& f, double p, double lo, double hi, const QuadSpec& q, const FnInfo& info,
               double left_tail_exponent, double right_tail_exponent) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: requires p >= 1");

    const Fn absp = [&](double x) { return std::pow(std::abs(f(x)), p); };

    double a = lo, b = hi;
    double tail = 0.0;
    if (!std::isfinite(b)) {
        if (std::isfinite(info.support_hi)) {
            b = info.support_hi;
        } else if (info.decay_C > 0.0) {
            b = std::max(1.0, std::log(info.decay_C / q.tail_abs_tol) / info.decay_c) + 1.0;
        } else if (right_tail_exponent * p < -1.0) {
            b = 100.0;
            tail += integrate_right_power_tail(absp, b, right_tail_exponent * p, q);
        } else {
            throw std::invalid_argument("lp_norm: divergent or unhinted upper tail");
        }
    }
    if (!std::isfinite(a)) {
        if (std::isfinite(info.support_lo)) {
            a = info.support_lo;
        } else if (left_tail_exponent * p < -1.0) {
            a = -100.0;
            tail += integrate_left_power_tail(absp, a, left_tail_exponent * p, q);
        } else {
            throw std::invalid_argument("lp_norm: divergent or unhinted lower tail");
        }
    }
    if (!(b > a)) return std::pow(tail, 1.0 / p);

    const double body = adaptive_gk(absp, a, b, q, info.kinks);
    return std::pow(body + tail, 1.0 / p);
}

double b_alpha_p_norm(const Kernel& g, const StableLaw& law, const MomentSpec& spec,
                      const FracOrder& d, const QuadSpec& q) {
    return b_alpha_p_norm([&g](double t) { return g(t); }, FnInfo::of_kernel(g), law, spec, d, q);
}

double b_alpha_p_norm(const Fn& g, const FnInfo& info, const StableLaw& law,
                      const MomentSpec& spec, const FracOrder& d, const QuadSpec& q) {
    if (d.alpha_bound != law.alpha)
        throw std::invalid_argument("b_alpha_p_norm: FracOrder was built for a different alpha");
    const double alpha = law.alpha;

    // Require g in L^1 cap L^alpha (both finite by support/certificate).
    const double g1 = lp_norm(g, 1.0, info.support_lo, info.support_hi, q, info);
    const double ga = lp_norm(g, alpha, info.support_lo, info.support_hi, q, info);
    if (!std::isfinite(g1) || !std::isfinite(ga))
        throw std::invalid_argument("b_alpha_p_norm: g is not in L^1 cap L^alpha");

    const Fn frac = [&](double x) { return rl_integral_minus(g, d, x, q, info); };
    const double hi = upper_cutoff(0.0, info, q.tail_abs_tol);
    const double lo = -64.0;

    std::vector<double> kinks = info.kinks;
    const Fn absa = [&](double x) { return std::pow(std::abs(frac(x)), alpha); };
    double total = adaptive_gk(absa, lo, hi, q, kinks);
    // left tail: (I_-^d g)(x) ~ (integral g / Gamma(d)) |x|^{d-1} as x -> -inf
    total += integrate_left_power_tail(absa, lo, alpha * (d.d - 1.0), q);

    return std::pow(spec.lambda, 1.0 / spec.p) * std::pow(total, 1.0 / alpha);
}

BoundConstants norm_bound_constants(const StableLaw& law, const MomentSpec& spec,
                                    const FracOrder& d) {
    const double denom = law.alpha * (1.0 - d.d) - 1.0;
    if (!(denom > 0.0))
        throw std::invalid_argument(
            "norm_bound_constants: requires alpha(1-d) - 1 > 0 (i.e. d < 1 - 1/alpha)");
    const double lead = std::pow(spec.lambda, 1.0 / spec.p) / std::tgamma(d.d);
    return {lead / std::pow(denom, 1.0 / law.alpha), lead / d.d};
}

double kernel_lp_norm(const Kernel& g, double p, const QuadSpec& q) {
    if (g.is_zero()) return 0.0;
    return lp_norm([&g](double t) { return g(t); }, p, 0.0,
                   std::numeric_limits<double>::infinity(), q, FnInfo::of_kernel(g));
}

double StepFn::operator()(double t) const {
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        if (t > breaks[i] && t <= breaks[i + 1]) return values[i];
    return 0.0;
}

double frac_integral_step_minus(const StepFn& phi, double d, double x) {
    const auto plus_pow = [d](double u) { return u > 0.0 ? std::pow(u, d) : 0.0; };
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < phi.breaks.size(); ++i)
        acc += phi.values[i] * (plus_pow(phi.breaks[i + 1] - x) - plus_pow(phi.breaks[i] - x));
    return acc / std::tgamma(d + 1.0);
}

}  // namespace fima
