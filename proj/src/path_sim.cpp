#include "fima/path_sim.hpp"

#include <cmath>
#include <stdexcept>

namespace fima {

GridSpec::GridSpec(double t_start_, double t_end_, double dt_, double trunc_T_)
    : t_start(t_start_), t_end(t_end_), dt(dt_), trunc_T(trunc_T_) {
    if (!(t_start < t_end)) throw std::invalid_argument("GridSpec: requires t_start < t_end");
    if (!(dt > 0.0)) throw std::invalid_argument("GridSpec: requires dt > 0");
    if (!(trunc_T >= 0.0)) throw std::invalid_argument("GridSpec: requires trunc_T >= 0");

    const double span = (t_end - t_start) + trunc_T;
    const double cells = span / dt;
    n_cells_ = static_cast<std::size_t>(std::llround(cells));
    if (std::abs(cells - static_cast<double>(n_cells_)) > 1e-9 * std::max(1.0, cells) ||
        n_cells_ == 0)
        throw std::invalid_argument("GridSpec: dt must divide the window to within one step");
    n_times_ = static_cast<std::size_t>(std::llround((t_end - t_start) / dt)) + 1;
}

NoisePath simulate_noise(const GridSpec& grid, const StableLaw& law, RandomStream stream) {
    const StableLaw cell_law(law.alpha, std::pow(grid.dt, 1.0 / law.alpha) * law.scale);
    CounterRng rng(stream);
    NoisePath path{grid, law, stream, {}};
    path.increments.resize(grid.n_cells());
    for (auto& v : path.increments) v = sample_sas_one(cell_law, rng);
    return path;
}

NoisePath aggregate_noise(const NoisePath& fine, int factor) {
    if (factor < 1) throw std::invalid_argument("aggregate_noise: factor must be >= 1");
    if (fine.grid.n_cells() % static_cast<std::size_t>(factor) != 0)
        throw std::invalid_argument("aggregate_noise: cell count not divisible by factor");
    GridSpec coarse(fine.grid.t_start, fine.grid.t_end, fine.grid.dt * factor, fine.grid.trunc_T);
    NoisePath out{coarse, fine.law, fine.stream, {}};
    out.increments.resize(coarse.n_cells());
    for (std::size_t i = 0; i < out.increments.size(); ++i) {
        double s = 0.0;
        for (int k = 0; k < factor; ++k)
            s += fine.increments[i * static_cast<std::size_t>(factor) + k];
        out.increments[i] = s;
    }
    return out;
}

double stable_integral(const Fn& f, const NoisePath& noise) {
    double acc = 0.0;
    for (std::size_t i = 0; i < noise.increments.size(); ++i)
        acc += f(noise.grid.cell_left(i)) * noise.increments[i];
    return acc;
}

double lfsm_value(double t, const FracOrder& d, const NoisePath& noise) {
    const double dd = d.d;
    const double inv_gamma = 1.0 / std::tgamma(dd + 1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < noise.increments.size(); ++i) {
        const double x = noise.grid.cell_left(i);
        const double a = t - x;
        const double k = (a > 0.0 ? std::pow(a, dd) : 0.0) - (x < 0.0 ? std::pow(-x, dd) : 0.0);
        acc += k * noise.increments[i];
    }
    return inv_gamma * acc;
}

SamplePath simulate_lfsm(const GridSpec& grid, const FracOrder& d, const NoisePath& noise) {
    SamplePath path;
    path.times.resize(grid.n_times());
    path.values.resize(grid.n_times());
    for (std::size_t k = 0; k < grid.n_times(); ++k) {
        const double t = grid.time(k);
        path.times[k] = t;
        path.values[k] = (t == 0.0) ? 0.0 : lfsm_value(t, d, noise);
    }
    path.meta = "lfsm";
    return path;
}

std::vector<double> frac_filter_minus(const std::vector<double>& g_at_cells, double d, double dt) {
    const std::size_t n = g_at_cells.size();
    // w_m = (dt^d / Gamma(d+1)) [ (m+1)^d - m^d ]: the exact fractional
    // integral of the indicator of one cell, evaluated on the grid.
    std::vector<double> w(n);
    const double lead = std::pow(dt, d) / std::tgamma(d + 1.0);
    for (std::size_t m = 0; m < n; ++m)
        w[m] = lead * (std::pow(static_cast<double>(m + 1), d) - std::pow(static_cast<double>(m), d));
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t j = k; j < n; ++j) acc += w[j - k] * g_at_cells[j];
        out[k] = acc;
    }
    return out;
}

double integrate_wrt_lfsm(const Fn& g, const FracOrder& d, const NoisePath& noise) {
    const std::size_t n = noise.grid.n_cells();
    std::vector<double> gs(n);
    for (std::size_t j = 0; j < n; ++j) gs[j] = g(noise.grid.cell_left(j + 1));
    const std::vector<double> frac = frac_filter_minus(gs, d.d, noise.grid.dt);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += frac[k] * noise.increments[k];
    return acc;
}

double truncation_bound(const FracOrder& d, const StableLaw& law, double trunc_T, double horizon) {
    if (!(trunc_T > horizon) || !(horizon > 0.0))
        throw std::invalid_argument("truncation_bound: requires trunc_T > horizon > 0");
    const double a = law.alpha;
    const double dd = d.d;
    return law.scale * horizon * dd / std::tgamma(dd + 1.0) *
           std::pow(a * (1.0 - dd) - 1.0, -1.0 / a) *
           std::pow(trunc_T, (a * (dd - 1.0) + 1.0) / a);
}

}  // namespace fima
