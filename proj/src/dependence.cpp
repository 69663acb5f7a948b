#include "fima/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fima {

void DependenceQuery::validate() const {
    if (theta1 == 0.0 && theta2 == 0.0)
        throw std::invalid_argument("DependenceQuery: (theta1, theta2) must not both vanish");
    if (lags.empty() || !std::is_sorted(lags.begin(), lags.end()) || lags.front() <= 0.0)
        throw std::invalid_argument("DependenceQuery: lags must be positive and sorted");
}

double asymptotic_L(const FimaModel& model, const QuadSpec& q) {
    if (model.kernel.is_zero()) return 0.0;
    const Fn g = [&](double u) { return model.kernel(u); };
    const double hi = model.kernel.certified_cutoff(q.tail_abs_tol);
    return adaptive_gk(g, 0.0, hi, q, model.kernel.kinks()) / std::tgamma(model.order.d);
}

namespace {

// |a+b|^alpha - |a|^alpha - |b|^alpha without cancellation when one term
// dominates: the difference of the first two terms goes through
// expm1(alpha log1p(b/a)).
double stable_bracket(double a, double b, double alpha) {
    if (a == 0.0 || b == 0.0) return 0.0;
    if (std::abs(a) < std::abs(b)) std::swap(a, b);
    const double r = b / a;  // |r| <= 1
    if (r <= -1.0) return std::pow(std::abs(a + b), alpha) - std::pow(std::abs(a), alpha) -
                          std::pow(std::abs(b), alpha);
    return std::pow(std::abs(a), alpha) * std::expm1(alpha * std::log1p(r)) -
           std::pow(std::abs(b), alpha);
}

// integral_0^inf |(I_+^d g)(y)|^alpha dy; the marginal norm behind K.
double frac_kernel_alpha_norm_pow(const FimaModel& model, const QuadSpec& q) {
    if (model.kernel.is_zero()) return 0.0;
    const double alpha = model.law.alpha;
    const Fn absa = [&](double y) {
        return std::pow(std::abs(rl_integral_plus(model.kernel, model.order, y, q)), alpha);
    };
    const double X0 = std::max(64.0, 2.0 * model.kernel.certified_cutoff(q.tail_abs_tol));
    double total = adaptive_gk(absa, 0.0, X0, q, model.kernel.kinks());
    total += integrate_right_power_tail(absa, X0, alpha * (model.order.d - 1.0), q);
    return total;
}

}  // namespace

double theoretical_K(const FimaModel& model, double theta1, double theta2, const QuadSpec& q) {
    const double alpha = model.law.alpha;
    const double w = std::pow(std::abs(theta1), alpha) + std::pow(std::abs(theta2), alpha);
    if (w == 0.0) return 1.0;
    const double norm_pow = frac_kernel_alpha_norm_pow(model, q);
    return std::exp(-w * std::pow(model.law.scale, alpha) * norm_pow);
}

double theoretical_I(const FimaModel& model, double theta1, double theta2, double lag,
                     const QuadSpec& q) {
    if (!(lag > 0.0)) throw std::invalid_argument("theoretical_I: lag must be positive");
    // the three-term integrand cancels identically in the degenerate cases
    if (model.kernel.is_zero() || theta1 == 0.0 || theta2 == 0.0) return 0.0;
    const double alpha = model.law.alpha;
    const double dd = model.order.d;
    const double tau = lag;
    const double scale_pow = std::pow(model.law.scale, alpha);
    const double taud = std::pow(tau, -dd);

    const auto phi = [&](double x) {
        return theta1 * taud * rl_integral_plus(model.kernel, model.order, tau * (x - 1.0), q);
    };
    const auto psi = [&](double x) {
        return theta2 * taud * rl_integral_plus(model.kernel, model.order, tau * x, q);
    };
    const Fn bracket = [&](double x) { return stable_bracket(phi(x), psi(x), alpha); };

    const double W = model.kernel.certified_cutoff(q.tail_abs_tol);
    const double X0 = 1.0 + std::max(64.0, 4.0 * W / tau + 4.0);
    std::vector<double> splits;
    for (double k : {1.0, 4.0, 16.0})
        if (1.0 + k * W / tau < X0) splits.push_back(1.0 + k * W / tau);

    double total = adaptive_gk(bracket, 1.0, X0, q, splits);
    total += integrate_right_power_tail(bracket, X0, alpha * (dd - 1.0), q);
    return scale_pow * std::pow(tau, alpha * dd + 1.0) * total;
}

double asymptotic_C(const FimaModel& model, double theta1, double theta2, const QuadSpec& q) {
    if (theta1 == 0.0 || theta2 == 0.0) return 0.0;
    const double alpha = model.law.alpha;
    const double dd = model.order.d;
    const double L = asymptotic_L(model, q);

    const Fn bracket = [&](double x) {
        const double a = theta1 * std::pow(x - 1.0, dd - 1.0);
        const double b = theta2 * std::pow(x, dd - 1.0);
        return stable_bracket(a, b, alpha);
    };
    // (x-1)^{(alpha-1)(d-1)} singularity at 1, power tail beyond X0
    const double gamma = (alpha - 1.0) * (dd - 1.0);
    const Fn near = [&](double v) { return bracket(1.0 + v); };
    const double X0 = 64.0;
    double cx = integrate_power_endpoint(near, 1.0, gamma, q);
    cx += adaptive_gk(bracket, 2.0, X0, q);
    cx += integrate_right_power_tail(bracket, X0, alpha * (dd - 1.0), q);
    return std::pow(std::abs(L), alpha) * cx;
}

double r_from_I(double K, double I) {
    if (!(K > 0.0)) throw std::invalid_argument("r_from_I: requires K > 0");
    return K * std::expm1(-I);
}

PhiPsi phi_psi(const FimaModel& model, double theta1, double theta2, double t, double x,
               const QuadSpec& q) {
    if (!(t < 0.0)) throw std::invalid_argument("phi_psi: requires t < 0");
    if (!(x > 1.0)) throw std::invalid_argument("phi_psi: requires x > 1");
    const double dd = model.order.d;
    const double tau = -t;
    const double inv_gamma = 1.0 / std::tgamma(dd);

    // phi = (theta1/Gamma(d)) int_1^x g(tau(u-1)) (x-u)^{d-1} du, split at the
    // u = x singularity; the kernel's boundary layer near u = 1 has width 1/tau.
    const auto one_sided = [&](double lo, double hi, double arg_shift) {
        // integral over (lo, hi) of g(tau(u - arg_shift)) (x-u)^{d-1} du
        if (!(hi > lo)) return 0.0;
        const Fn f = [&](double u) { return model.kernel(tau * (u - arg_shift)); };
        const double W = model.kernel.certified_cutoff(q.tail_abs_tol);
        std::vector<double> splits;
        for (double k : {0.25, 1.0, 4.0, 16.0}) {
            const double u = arg_shift + k * W / tau;
            if (u > lo && u < hi) splits.push_back(u);
        }
        const double h_sing = std::min(hi - lo, 1.0);
        double v = power_weighted_right(f, hi, h_sing, dd - 1.0, q, splits);
        if (hi - h_sing > lo) {
            const Fn integrand = [&](double u) { return f(u) * std::pow(x - u, dd - 1.0); };
            v += adaptive_gk(integrand, lo, hi - h_sing, q, splits);
        }
        return v;
    };

    PhiPsi out;
    out.phi = theta1 == 0.0 ? 0.0 : theta1 * inv_gamma * one_sided(1.0, x, 1.0);
    out.psi = theta2 == 0.0 ? 0.0 : theta2 * inv_gamma * one_sided(0.0, x, 0.0);
    return out;
}

std::vector<std::vector<double>> simulate_dependence_ensemble(const FimaModel& model,
                                                              std::span<const double> times,
                                                              const EnsembleOptions& opts,
                                                              std::uint64_t master_seed,
                                                              const QuadSpec& q) {
    const double alpha = model.law.alpha;
    const double t_max = *std::max_element(times.begin(), times.end());

    // near field: uniform cells on [-near_depth, t_max];
    // far field: geometrically graded cells down to -far_T
    std::vector<double> left, width;
    {
        std::vector<double> rl, rw;
        double x = t_max;
        while (x > -opts.near_depth + 1e-12) {
            const double w = std::min(opts.dt, x + opts.near_depth);
            rl.push_back(x - w);
            rw.push_back(w);
            x -= w;
        }
        while (x > -opts.far_T) {
            const double w = std::min(std::max(opts.dt, opts.grading_eps * (-x)), opts.far_T + x);
            rl.push_back(x - w);
            rw.push_back(w);
            x -= w;
        }
        left.assign(rl.rbegin(), rl.rend());
        width.assign(rw.rbegin(), rw.rend());
    }
    const std::size_t n_cells = left.size();

    // exact kernel tables, one row per query time
    std::vector<std::vector<double>> ktab(times.size(), std::vector<double>(n_cells, 0.0));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (std::ptrdiff_t ic = 0; ic < static_cast<std::ptrdiff_t>(n_cells); ++ic) {
        const std::size_t i = static_cast<std::size_t>(ic);
        for (std::size_t m = 0; m < times.size(); ++m) {
            const double u = times[m] - left[i];
            ktab[m][i] = u > 0.0 ? rl_integral_plus(model.kernel, model.order, u, q) : 0.0;
        }
    }

    std::vector<double> cell_scale(n_cells);
    for (std::size_t i = 0; i < n_cells; ++i)
        cell_scale[i] = model.law.scale * std::pow(width[i], 1.0 / alpha);

    std::vector<std::vector<double>> y(opts.replicas, std::vector<double>(times.size(), 0.0));
    const StableLaw unit(alpha, 1.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t rr = 0; rr < static_cast<std::ptrdiff_t>(opts.replicas); ++rr) {
        const std::size_t r = static_cast<std::size_t>(rr);
        CounterRng rng(RandomStream{master_seed, r});
        auto& row = y[r];
        for (std::size_t i = 0; i < n_cells; ++i) {
            const double dl = cell_scale[i] * sample_sas_one(unit, rng);
            for (std::size_t m = 0; m < times.size(); ++m) row[m] += ktab[m][i] * dl;
        }
    }
    return y;
}

namespace {

struct CfAccumulator {
    std::complex<double> joint_sum{0.0, 0.0};
    std::complex<double> m1_sum{0.0, 0.0};
    std::complex<double> m2_sum{0.0, 0.0};
};

std::complex<double> unit_phase(double x) { return {std::cos(x), std::sin(x)}; }

}  // namespace

std::vector<LagEstimate> empirical_r(const FimaModel& model, const DependenceQuery& query,
                                     const EnsembleOptions& opts, std::uint64_t master_seed,
                                     const QuadSpec& q) {
    query.validate();
    if (opts.replicas < 1000)
        throw std::invalid_argument("empirical_r: requires >= 1000 replicas");

    std::vector<double> times{0.0};
    times.insert(times.end(), query.lags.begin(), query.lags.end());
    const auto y = simulate_dependence_ensemble(model, times, opts, master_seed, q);
    const std::size_t N = opts.replicas;

    std::vector<LagEstimate> out(query.lags.size());
    for (std::size_t m = 0; m < query.lags.size(); ++m) {
        // per-replica phases; the scrambled pairing takes Y(0) from the next
        // replica, which destroys the dependence by construction
        std::vector<std::complex<double>> zj(N), z1(N), z2(N);
        for (std::size_t r = 0; r < N; ++r) {
            const double yt = y[r][m + 1];
            const double y0 = y[opts.scramble_pairing ? (r + 1) % N : r][0];
            zj[r] = unit_phase(query.theta1 * yt + query.theta2 * y0);
            z1[r] = unit_phase(query.theta1 * yt);
            z2[r] = unit_phase(query.theta2 * y0);
        }
        CfAccumulator acc;
        for (std::size_t r = 0; r < N; ++r) {
            acc.joint_sum += zj[r];
            acc.m1_sum += z1[r];
            acc.m2_sum += z2[r];
        }
        const double n = static_cast<double>(N);
        const auto joint = acc.joint_sum / n;
        const auto prod = (acc.m1_sum / n) * (acc.m2_sum / n);
        const auto r_hat = joint - prod;

        // delete-one jackknife
        const double n1 = n - 1.0;
        std::complex<double> mean_loo{0.0, 0.0};
        std::vector<std::complex<double>> loo(N);
        for (std::size_t r = 0; r < N; ++r) {
            const auto j = (acc.joint_sum - zj[r]) / n1;
            const auto p = ((acc.m1_sum - z1[r]) / n1) * ((acc.m2_sum - z2[r]) / n1);
            loo[r] = j - p;
            mean_loo += loo[r];
        }
        mean_loo /= n;
        double vre = 0.0, vim = 0.0;
        for (std::size_t r = 0; r < N; ++r) {
            const auto dlt = loo[r] - mean_loo;
            vre += dlt.real() * dlt.real();
            vim += dlt.imag() * dlt.imag();
        }
        out[m] = LagEstimate{query.lags[m], r_hat, joint, prod,
                             std::sqrt(vre * n1 / n), std::sqrt(vim * n1 / n)};
    }
    return out;
}

ExponentFit lrd_exponent_fit(std::span<const double> lags, std::span<const double> values) {
    if (lags.size() != values.size() || lags.size() < 4)
        throw std::invalid_argument("lrd_exponent_fit: needs >= 4 lags");
    const double decades = std::log10(lags.back() / lags.front());
    if (!(decades >= 1.5 - 1e-9))
        throw std::invalid_argument("lrd_exponent_fit: lags must span >= 1.5 decades");
    std::ostringstream bad;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!(values[i] > 0.0)) bad << " t=" << lags[i];
    if (!bad.str().empty())
        throw std::invalid_argument("lrd_exponent_fit: nonpositive values at lags:" + bad.str());

    const std::size_t n = lags.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = std::log(lags[i]);
        ys[i] = std::log(values[i]);
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double res = ys[i] - my - slope * (xs[i] - mx);
        rss += res * res;
    }
    const double se = std::sqrt(rss / (static_cast<double>(n) - 2.0) / sxx);

    ExponentFit fit;
    fit.theta_hat = -slope;
    fit.band = 2.0 * se;
    // LRD verdict: decay exponent in (0, 1), allowing the fitted band
    fit.lrd_verdict = (fit.theta_hat + fit.band > 0.0) && (fit.theta_hat - fit.band < 1.0);
    return fit;
}

DependenceReport build_dependence_report(const FimaModel& model, const DependenceQuery& query,
                                         const EnsembleOptions* ensemble,
                                         std::uint64_t master_seed, const QuadSpec& q) {
    query.validate();
    DependenceReport rep;
    rep.theta1 = query.theta1;
    rep.theta2 = query.theta2;
    rep.K = theoretical_K(model, query.theta1, query.theta2, q);
    rep.C = asymptotic_C(model, query.theta1, query.theta2, q);
    rep.L = asymptotic_L(model, q);
    rep.target_exponent = model.law.alpha * (model.order.d - 1.0) + 1.0;
    rep.lags = query.lags;
    for (double t : query.lags) {
        const double I = theoretical_I(model, query.theta1, query.theta2, t, q);
        rep.I_theory.push_back(I);
        rep.r_theory.push_back(r_from_I(rep.K, I));
    }
    std::vector<double> absr;
    for (double r : rep.r_theory) absr.push_back(std::abs(r));
    rep.fit_theory = lrd_exponent_fit(rep.lags, absr);

    if (ensemble != nullptr) {
        rep.empirical = empirical_r(model, query, *ensemble, master_seed, q);
        std::vector<double> abse;
        for (const auto& e : rep.empirical) abse.push_back(std::abs(e.r_hat.real()));
        rep.fit_empirical = lrd_exponent_fit(rep.lags, abse);
        rep.has_empirical = true;
    }
    return rep;
}

}  // namespace fima
