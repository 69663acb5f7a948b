#include "fima/fima_process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fima {

FimaModel::FimaModel(Kernel g, FracOrder d, StableLaw l)
    : kernel(std::move(g)), order(d), law(l) {
    if (order.alpha_bound != law.alpha)
        throw std::invalid_argument("FimaModel: FracOrder was validated against a different alpha");
}

std::vector<double> tabulate_lag_kernel(const FimaModel& model, double dt, std::size_t n,
                                        const QuadSpec& q) {
    std::vector<double> h(n, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (std::ptrdiff_t m = 1; m < static_cast<std::ptrdiff_t>(n); ++m)
        h[static_cast<std::size_t>(m)] =
            rl_integral_plus(model.kernel, model.order, static_cast<double>(m) * dt, q);
    return h;
}

namespace {

std::size_t trunc_cells(const GridSpec& grid) {
    return static_cast<std::size_t>(std::llround(grid.trunc_T / grid.dt));
}

}  // namespace

SamplePath fima_direct_tabulated(const std::vector<double>& lag_table, const GridSpec& grid,
                                 const NoisePath& noise) {
    if (noise.grid.n_cells() != grid.n_cells() || noise.grid.dt != grid.dt)
        throw std::invalid_argument("fima_direct: noise does not cover the requested grid");
    const std::size_t n_trunc = trunc_cells(grid);
    if (lag_table.size() < grid.n_times() + n_trunc)
        throw std::invalid_argument("fima_direct: lag table too short for this grid");

    SamplePath path;
    path.times.resize(grid.n_times());
    path.values.resize(grid.n_times());
    for (std::size_t k = 0; k < grid.n_times(); ++k) {
        path.times[k] = grid.time(k);
        const std::size_t idx = n_trunc + k;  // first cell at or beyond t_k
        double acc = 0.0;
        for (std::size_t i = 0; i < idx && i < grid.n_cells(); ++i)
            acc += lag_table[idx - i] * noise.increments[i];
        path.values[k] = acc;
    }
    path.meta = "fima-direct";
    return path;
}

SamplePath fima_direct(const FimaModel& model, const GridSpec& grid, const NoisePath& noise,
                       const QuadSpec& q) {
    const std::size_t n_trunc = trunc_cells(grid);
    return fima_direct_tabulated(tabulate_lag_kernel(model, grid.dt, grid.n_times() + n_trunc, q),
                                 grid, noise);
}

SamplePath fima_via_lfsm(const FimaModel& model, const GridSpec& grid, const NoisePath& noise,
                         const QuadSpec& /*q*/) {
    if (noise.grid.n_cells() != grid.n_cells() || noise.grid.dt != grid.dt)
        throw std::invalid_argument("fima_via_lfsm: noise does not cover the requested grid");

    const std::size_t n = grid.n_cells();
    std::vector<double> lfsm(n + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t j = 0; j <= static_cast<std::ptrdiff_t>(n); ++j) {
        const double b = grid.cell_left(static_cast<std::size_t>(j));
        lfsm[static_cast<std::size_t>(j)] = (b == 0.0) ? 0.0 : lfsm_value(b, model.order, noise);
    }

    const std::size_t n_trunc = trunc_cells(grid);
    SamplePath path;
    path.times.resize(grid.n_times());
    path.values.resize(grid.n_times());
    for (std::size_t k = 0; k < grid.n_times(); ++k) {
        const double t = grid.time(k);
        path.times[k] = t;
        const std::size_t idx = n_trunc + k;
        double acc = 0.0;
        // g frozen at cell right endpoints, as in integrate_wrt_lfsm
        for (std::size_t j = 0; j < idx && j < n; ++j)
            acc += model.kernel(t - grid.cell_left(j + 1)) * (lfsm[j + 1] - lfsm[j]);
        path.values[k] = acc;
    }
    path.meta = "fima-lfsm-representation";
    return path;
}

StationarityReport stationarity_evidence(const FimaModel& model, std::span<const double> shifts,
                                         std::span<const std::pair<double, double>> combos,
                                         const QuadSpec& q) {
    if (combos.empty()) throw std::invalid_argument("stationarity_evidence: empty combo");
    const double alpha = model.law.alpha;
    const double dd = model.order.d;

    double t_min = combos[0].first, t_max = combos[0].first;
    for (const auto& [t, th] : combos) {
        t_min = std::min(t_min, t);
        t_max = std::max(t_max, t);
    }

    StationarityReport report;
    report.shifts.assign(shifts.begin(), shifts.end());
    report.alpha_norms.resize(shifts.size());

    const double depth = 64.0 + (t_max - t_min);
    for (std::size_t s = 0; s < shifts.size(); ++s) {
        const double h = shifts[s];
        const Fn combo_val = [&](double x) {
            double acc = 0.0;
            for (const auto& [t, th] : combos) {
                const double u = t + h - x;
                if (th != 0.0 && u > 0.0) acc += th * rl_integral_plus(model.kernel, model.order, u, q);
            }
            return acc;
        };
        const Fn absa = [&](double x) { return std::pow(std::abs(combo_val(x)), alpha); };

        // window travels with the shifted combo: depth below its support
        const double hi = t_max + h;
        const double lo = std::min(t_min + h - depth, -1.0);
        std::vector<double> splits;
        for (const auto& [t, th] : combos) splits.push_back(t + h);
        double total = adaptive_gk(absa, lo, hi, q, splits);
        total += integrate_left_power_tail(absa, lo, alpha * (dd - 1.0), q);
        report.alpha_norms[s] = std::pow(total, 1.0 / alpha);
    }

    double ref = 0.0;
    for (double v : report.alpha_norms) ref = std::max(ref, std::abs(v));
    double dev = 0.0;
    for (double v : report.alpha_norms)
        dev = std::max(dev, std::abs(v - report.alpha_norms[0]));
    report.max_rel_deviation = ref > 0.0 ? dev / ref : 0.0;
    return report;
}

double PartialSumPlan::t_of(std::size_t j) const {
    if (rule == Times::natural) return static_cast<double>(j);
    return growth_K * std::pow(static_cast<double>(j), growth_beta);
}

namespace {

// Interpolation table for (I_+^d g)(u) with a series tail; the per-cell
// kernel sums of the LLN ensemble are too numerous for exact quadrature.
class FracKernelFast {
  public:
    FracKernelFast(const FimaModel& model, const QuadSpec& q) {
        const double dd = model.order.d;
        inv_gamma_d_ = 1.0 / std::tgamma(dd);
        d_ = dd;
        u_hi_ = std::max(60.0, 3.0 * model.kernel.certified_cutoff(1e-12) + 10.0);

        for (int k = 0; k < 4; ++k) {
            const Fn f = [&, k](double s) { return model.kernel(s) * std::pow(s, k); };
            moments_[k] = adaptive_gk(f, 0.0, model.kernel.certified_cutoff(q.tail_abs_tol), q,
                                      model.kernel.kinks());
        }

        const int n_geo = 900;
        for (int i = 0; i <= n_geo; ++i)
            us_.push_back(std::pow(10.0, -8.0 + 8.0 * i / n_geo));  // 1e-8 .. 1
        const double step = 0.01;
        for (double u = 1.0 + step; u <= u_hi_ + step; u += step) us_.push_back(u);

        vs_.resize(us_.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(us_.size()); ++i)
            vs_[static_cast<std::size_t>(i)] =
                rl_integral_plus(model.kernel, model.order, us_[static_cast<std::size_t>(i)], q);
    }

    double operator()(double u) const {
        if (u <= 0.0) return 0.0;
        if (u >= us_.back()) {
            const double p = d_ - 1.0;
            const double z = 1.0 / u;
            const double series = moments_[0] - p * moments_[1] * z +
                                  0.5 * p * (p - 1.0) * moments_[2] * z * z -
                                  p * (p - 1.0) * (p - 2.0) / 6.0 * moments_[3] * z * z * z;
            return inv_gamma_d_ * std::pow(u, p) * series;
        }
        if (u <= us_.front()) {
            // h(u) ~ g(0+) u^d / Gamma(d+1): interpolate through the origin
            return vs_.front() * std::pow(u / us_.front(), d_);
        }
        const auto it = std::upper_bound(us_.begin(), us_.end(), u);
        const std::size_t i = static_cast<std::size_t>(it - us_.begin());
        const double w = (u - us_[i - 1]) / (us_[i] - us_[i - 1]);
        return vs_[i - 1] * (1.0 - w) + vs_[i] * w;
    }

  private:
    std::vector<double> us_, vs_;
    double moments_[4] = {0, 0, 0, 0};
    double inv_gamma_d_;
    double d_;
    double u_hi_;
};

struct CellGrid {
    std::vector<double> left;
    std::vector<double> width;
};

// Cells fine behind each sampling time, geometrically graded in the gaps and
// in the far field; widths never exceed grading_eps times the distance to the
// nearest sampling time above, so frozen kernel values stay accurate.
CellGrid build_lln_cells(const std::vector<double>& times, const LlnOptions& o) {
    CellGrid g;
    const double eps = o.grading_eps;
    auto emit_segment = [&](double anchor, double hi, double lo) {
        double x = hi;
        while (x > lo + 1e-12 * std::max(1.0, std::abs(lo))) {
            double w = (anchor - x < o.near_window) ? o.dt
                                                    : std::max(o.dt, eps * (anchor - x));
            w = std::min(w, x - lo);
            g.left.push_back(x - w);
            g.width.push_back(w);
            x -= w;
        }
    };
    for (std::size_t k = times.size(); k >= 2; --k)
        emit_segment(times[k - 1], times[k - 1], times[k - 2]);
    emit_segment(times[0], times[0], -o.far_T);
    std::reverse(g.left.begin(), g.left.end());
    std::reverse(g.width.begin(), g.width.end());
    return g;
}

}  // namespace

std::vector<LlnPoint> lln_ratio(const FimaModel& model, const PartialSumPlan& plan,
                                const LlnOptions& opts, std::uint64_t master_seed,
                                const QuadSpec& q) {
    if (opts.replicas < 100) throw std::invalid_argument("lln_ratio: requires >= 100 replicas");
    if (!(plan.p >= 0.5) || !(plan.p < model.law.alpha))
        throw std::invalid_argument("lln_ratio: moment order must satisfy p < alpha");

    std::vector<double> times(plan.n_max);
    for (std::size_t j = 1; j <= plan.n_max; ++j) times[j - 1] = plan.t_of(j);
    if (!std::is_sorted(times.begin(), times.end()))
        throw std::invalid_argument("lln_ratio: sampling times must be nondecreasing");

    std::vector<std::size_t> snapshots;
    for (std::size_t n = 1; n <= plan.n_max; n *= 2) snapshots.push_back(n);
    if (snapshots.back() != plan.n_max) snapshots.push_back(plan.n_max);

    const CellGrid cells = build_lln_cells(times, opts);
    const std::size_t n_cells = cells.left.size();
    const FracKernelFast h(model, q);

    // H_n(x_i) = sum_{j<=n} h(t_j - x_i), accumulated per cell with snapshots.
    std::vector<std::vector<double>> H(snapshots.size(), std::vector<double>(n_cells, 0.0));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1024)
#endif
    for (std::ptrdiff_t ic = 0; ic < static_cast<std::ptrdiff_t>(n_cells); ++ic) {
        const std::size_t i = static_cast<std::size_t>(ic);
        const double x = cells.left[i];
        double acc = 0.0;
        std::size_t snap = 0;
        for (std::size_t j = 0; j < times.size(); ++j) {
            acc += h(times[j] - x);
            while (snap < snapshots.size() && snapshots[snap] == j + 1) {
                H[snap][i] = acc;
                ++snap;
            }
        }
        for (; snap < snapshots.size(); ++snap) H[snap][i] = acc;
    }

    // Exact discrete scale of S_n (the simulated object), for the oracle column.
    const double alpha = model.law.alpha;
    std::vector<double> exact(snapshots.size(), 0.0);
    for (std::size_t s = 0; s < snapshots.size(); ++s) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n_cells; ++i)
            acc += std::pow(std::abs(H[s][i]), alpha) * cells.width[i];
        exact[s] = model.law.scale * std::pow(acc, 1.0 / alpha);
    }

    const MomentSpec mom{plan.p, alpha, sas_abs_moment_constant(alpha, plan.p)};

    std::vector<std::vector<double>> moments(snapshots.size(),
                                             std::vector<double>(opts.replicas, 0.0));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t rr = 0; rr < static_cast<std::ptrdiff_t>(opts.replicas); ++rr) {
        const std::size_t r = static_cast<std::size_t>(rr);
        CounterRng rng(RandomStream{master_seed, r});
        std::vector<double> sums(snapshots.size(), 0.0);
        const StableLaw unit(alpha, 1.0);
        for (std::size_t i = 0; i < n_cells; ++i) {
            const double dl =
                model.law.scale * std::pow(cells.width[i], 1.0 / alpha) * sample_sas_one(unit, rng);
            for (std::size_t s = 0; s < snapshots.size(); ++s) sums[s] += H[s][i] * dl;
        }
        for (std::size_t s = 0; s < snapshots.size(); ++s)
            moments[s][r] = std::pow(std::abs(sums[s] / static_cast<double>(snapshots[s])), plan.p);
    }

    std::vector<LlnPoint> out(snapshots.size());
    for (std::size_t s = 0; s < snapshots.size(); ++s) {
        double mean = 0.0;
        for (double v : moments[s]) mean += v;
        mean /= static_cast<double>(opts.replicas);
        out[s].n = snapshots[s];
        out[s].mc_norm = std::pow(mean, 1.0 / plan.p);
        out[s].exact_norm = std::pow(mom.lambda, 1.0 / plan.p) * exact[s] /
                            static_cast<double>(snapshots[s]);
    }
    return out;
}

}  // namespace fima
