#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fima/frac_calc.hpp"
#include "fima/grid.hpp"
#include "fima/path_sim.hpp"

namespace fima {

// Moving average of SaS noise whose kernel is the left-sided fractional
// integral of a short-memory kernel g.
struct FimaModel {
    Kernel kernel;
    FracOrder order;
    StableLaw law;

    FimaModel(Kernel g, FracOrder d, StableLaw l);
    double hurst() const { return order.hurst(); }
};

// (I_+^d g)(m dt) for m = 0..n-1; the hot-loop table of every simulation.
std::vector<double> tabulate_lag_kernel(const FimaModel& model, double dt, std::size_t n,
                                        const QuadSpec& q);

// Direct construction: Y(t_k) = sum_{x_i < t_k} (I_+^d g)(t_k - x_i) dL_i.
SamplePath fima_direct(const FimaModel& model, const GridSpec& grid, const NoisePath& noise,
                       const QuadSpec& q);

// Same, with a caller-cached lag table (shared across ensemble replicas).
SamplePath fima_direct_tabulated(const std::vector<double>& lag_table, const GridSpec& grid,
                                 const NoisePath& noise);

// LFSM-representation construction: the Riemann-Stieltjes sum of g against
// the simulated LFSM built from the same noise,
//   Y(t_k) = sum_j g(t_k - x_j) [ M_d(x_{j+1}) - M_d(x_j) ].
// Pathwise-consistent with fima_direct up to discretization error.
SamplePath fima_via_lfsm(const FimaModel& model, const GridSpec& grid, const NoisePath& noise,
                         const QuadSpec& q);

// Quadrature alpha-norms of shifted linear combinations
// sum_i theta_i (I_+^d g)(t_i + h - x) 1_{x <= t_i + h}; stationarity predicts
// the norm is the same for every shift h. Each shift is evaluated by an
// independent quadrature run.
struct StationarityReport {
    std::vector<double> shifts;
    std::vector<double> alpha_norms;
    double max_rel_deviation;
};
StationarityReport stationarity_evidence(const FimaModel& model, std::span<const double> shifts,
                                         std::span<const std::pair<double, double>> combos,
                                         const QuadSpec& q);

// Sampling times for the partial sums S_n = sum_{j<=n} Y(t_j).
struct PartialSumPlan {
    enum class Times { natural, power };
    Times rule = Times::natural;
    double growth_K = 1.0;   // t_j = K j^beta for the power rule
    double growth_beta = 1.0;
    std::size_t n_max = 4096;
    double p = 0.7;          // moment order of the reported norm

    double t_of(std::size_t j) const;
};

struct LlnOptions {
    std::size_t replicas = 1000;
    double dt = 0.5;           // cell width near each sampling time
    double near_window = 25.0; // fine-grid depth behind each time
    double grading_eps = 0.02; // relative growth of graded cell widths
    double far_T = 1e9;        // leftmost extent of the noise window
};

struct LlnPoint {
    std::size_t n;
    double mc_norm;     // Monte Carlo estimate of ||S_n / n||_p
    double exact_norm;  // lambda^{1/p} * discrete scale of S_n / n (oracle)
};

// Monte Carlo estimates of ||S_n/n||_p at dyadic n up to plan.n_max; one noise
// window per replica spans all sampling times, so the dependence among the
// Y(t_j) is preserved.
std::vector<LlnPoint> lln_ratio(const FimaModel& model, const PartialSumPlan& plan,
                                const LlnOptions& opts, std::uint64_t master_seed,
                                const QuadSpec& q);

}  // namespace fima
