#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace fima {

// Short-memory kernel g with its decay certificate:
//   (C1) g(t) = 0 for t < 0,
//   (C2) |g(t)| <= decay_C * exp(-decay_c * t) for t >= 0.
// (C2) is spot-verified on a dense grid at construction.
class Kernel {
  public:
    Kernel() = default;
    Kernel(std::function<double(double)> eval, double decay_C, double decay_c,
           std::string description, double support_hi = std::numeric_limits<double>::infinity(),
           std::vector<double> kinks = {});

    double operator()(double t) const { return t < 0.0 ? 0.0 : eval_(t); }

    double decay_C() const { return decay_C_; }
    double decay_c() const { return decay_c_; }
    const std::string& description() const { return description_; }

    // Upper end of the support when finite (indicator, truncated kernels).
    double support_hi() const { return support_hi_; }
    const std::vector<double>& kinks() const { return kinks_; }

    // Truncation point T with |g| <= abs_tol beyond T, from the certificate.
    double certified_cutoff(double abs_tol) const;

    bool is_zero() const { return zero_; }

  private:
    std::function<double(double)> eval_ = [](double) { return 0.0; };
    double decay_C_ = 1.0;
    double decay_c_ = 1.0;
    std::string description_ = "zero";
    double support_hi_ = 0.0;
    std::vector<double> kinks_;
    bool zero_ = true;
};

namespace kernels {

// g(u) = exp(-c u) on u >= 0; certificate C = 1, c = c.
Kernel exponential(double c);

// g(u) = u^{k-1} exp(-c u), k >= 1; certificate with rate c/2.
Kernel gamma_type(double k, double c);

// g(u) = exp(-c u) 1_{u <= cutoff}.
Kernel truncated_exponential(double c, double cutoff);

// g(u) = 1_{(a, b]}(u), 0 <= a < b; satisfies (C2) with C = e^b, c = 1.
Kernel indicator(double a, double b);

Kernel zero();

}  // namespace kernels

}  // namespace fima
