#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fima/fima_process.hpp"

namespace fima {

// Test frequencies and positive lags for the dependence measure
// r(theta1, theta2; t). Negative lags are served through the stationarity
// symmetry r(theta1, theta2; -t) = r(theta2, theta1; t).
struct DependenceQuery {
    double theta1 = 1.0;
    double theta2 = 1.0;
    std::vector<double> lags;  // positive, sorted ascending

    void validate() const;
};

// L = (1/Gamma(d)) integral_0^inf g(u) du.
double asymptotic_L(const FimaModel& model, const QuadSpec& q);

// K = exp( -(|theta1|^alpha + |theta2|^alpha) sigma^alpha ||I_+^d g||_alpha^alpha ),
// the product of the two marginal characteristic functions.
double theoretical_K(const FimaModel& model, double theta1, double theta2, const QuadSpec& q);

// The exact exponent surrogate I(theta1, theta2; -t) for a positive lag t,
// evaluated in the scaled form with fixed integration domain:
//   I = t^{alpha d + 1} integral_1^inf (|phi+psi|^alpha - |phi|^alpha - |psi|^alpha) dx,
// phi = theta1 t^{-d} h(t(x-1)), psi = theta2 t^{-d} h(t x), h = I_+^d g.
double theoretical_I(const FimaModel& model, double theta1, double theta2, double lag,
                     const QuadSpec& q);

// C = L^alpha integral_1^inf (|th1 (x-1)^{d-1} + th2 x^{d-1}|^alpha - ...) dx,
// the constant of the asymptote |r(t)| ~ K C t^{alpha(d-1)+1}.
double asymptotic_C(const FimaModel& model, double theta1, double theta2, const QuadSpec& q);

// r = K (e^{-I} - 1), computed as K expm1(-I).
double r_from_I(double K, double I);

struct PhiPsi {
    double phi;
    double psi;
};

// Direct quadrature of the defining integrals of phi(t, x), psi(t, x) for
// t < 0, x > 1 (independent of the scaled route used by theoretical_I).
PhiPsi phi_psi(const FimaModel& model, double theta1, double theta2, double t, double x,
               const QuadSpec& q);

// Monte Carlo ensemble for the empirical dependence measure.
struct EnsembleOptions {
    std::size_t replicas = 100000;
    double dt = 0.25;          // uniform spacing of the near window
    double near_depth = 16.0;  // uniform window reaches this far left of lag 0
    double far_T = 1e8;        // graded cells reach -far_T
    double grading_eps = 0.02; // relative width of graded cells
    bool scramble_pairing = false;  // pair Y(t) with an independent Y(0) (null check)
};

struct LagEstimate {
    double lag;
    std::complex<double> r_hat;
    std::complex<double> joint_cf;
    std::complex<double> marginal_product;
    double se_re;  // jackknife standard errors of Re / Im r_hat
    double se_im;
};

// Simulated values of Y at the query times (rows: replicas) on a shared
// per-replica window; building block of empirical_r.
std::vector<std::vector<double>> simulate_dependence_ensemble(const FimaModel& model,
                                                              std::span<const double> times,
                                                              const EnsembleOptions& opts,
                                                              std::uint64_t master_seed,
                                                              const QuadSpec& q);

std::vector<LagEstimate> empirical_r(const FimaModel& model, const DependenceQuery& query,
                                     const EnsembleOptions& opts, std::uint64_t master_seed,
                                     const QuadSpec& q);

// Least-squares decay exponent of log|value| against log t.
struct ExponentFit {
    double theta_hat;  // estimates -(alpha(d-1)+1)
    double band;       // 2 standard errors of the slope
    bool lrd_verdict;  // theta_hat in (0,1) within the band
};
ExponentFit lrd_exponent_fit(std::span<const double> lags, std::span<const double> values);

// One row per lag plus the constants and fits, ready for CSV/JSON export.
struct DependenceReport {
    double theta1, theta2;
    double K, C, L;
    double target_exponent;  // alpha(d-1)+1
    std::vector<double> lags;
    std::vector<double> I_theory;
    std::vector<double> r_theory;
    std::vector<LagEstimate> empirical;  // empty when the ensemble was skipped
    ExponentFit fit_theory;
    ExponentFit fit_empirical;  // valid iff `empirical` nonempty
    bool has_empirical = false;
};

DependenceReport build_dependence_report(const FimaModel& model, const DependenceQuery& query,
                                         const EnsembleOptions* ensemble,
                                         std::uint64_t master_seed, const QuadSpec& q);

}  // namespace fima
