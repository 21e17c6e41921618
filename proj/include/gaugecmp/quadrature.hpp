#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaugecmp {

struct QuadratureRequest {
  std::function<double(double)> integrand;
  double a = 0.0;
  double b = 1.0;  // may be +inf when tail is supplied
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  // panel length for pre-partition; boundaries at period_origin + j * period
  std::optional<double> oscillation_period;
  double period_origin = 0.0;
  int max_subdivisions = 4000;
  // for b = +inf: truncation point and a bound on the discarded mass beyond it
  double truncate_at = 0.0;
  std::function<double(double)> tail;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  int subdivisions = 0;
  bool converged = true;
};

struct ComplexQuadratureResult {
  std::complex<double> value{};
  double error = 0.0;
  long evaluations = 0;
  int subdivisions = 0;
  bool converged = true;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best, double error)
      : std::runtime_error(what), best_estimate(best), error_estimate(error) {}
  double best_estimate;
  double error_estimate;
};

QuadratureResult integrate(const QuadratureRequest& req);

ComplexQuadratureResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                          double a, double b, double abs_tol, double rel_tol,
                                          int max_subdivisions = 4000);

// Throws QuadratureError carrying the best estimate when not converged.
const QuadratureResult& require_converged(const QuadratureResult& r, const std::string& what);
const ComplexQuadratureResult& require_converged(const ComplexQuadratureResult& r,
                                                 const std::string& what);

// int_0^upper g(u) sin^2((u+Omega)T/2) / ((u+Omega)/2)^2 du for a density g that is
// analytic in the upper half plane near the real axis beyond the resonance.
struct SincSquaredIntegral {
  std::function<std::complex<double>(std::complex<double>)> density;
  double Omega = 0.0;
  double T = 0.0;
  double upper = 200.0;
  double abs_tol = 1e-16;
  double rel_tol = 1e-11;
  int max_direct_periods = 4000;
  int max_subdivisions = 200000;
};

QuadratureResult integrate_sinc_squared(const SincSquaredIntegral& spec);

// Bound on int_{omega_max}^inf u^3 (1 + c u^2)^{-m} sin^2((u+Omega)T/2)/((u+Omega)/2)^2 du.
double tail_bound(int m, double Omega, double T, double omega_max, double envelope = 4.0 / 9.0);
// Same with the sin^2 factor replaced by 1/2.
double dephased_tail_bound(int m, double Omega, double omega_max, double envelope = 4.0 / 9.0);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre on [-1, 1].
const GaussRule& gauss_legendre(int n);

// Chebyshev interpolant of f on [a, b]; evaluates at complex arguments by Clenshaw.
class ChebyshevSeries {
 public:
  ChebyshevSeries() = default;
  ChebyshevSeries(const std::function<double(double)>& f, double a, double b, int order);
  static std::vector<double> nodes(double a, double b, int order);
  static ChebyshevSeries from_values(const std::vector<double>& values, double a, double b);

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> x) const;
  double a() const { return a_; }
  double b() const { return b_; }
  // magnitude of the trailing coefficients relative to the largest
  double tail_ratio() const;

 private:
  std::vector<double> c_;
  double a_ = -1.0;
  double b_ = 1.0;
};

// Neumaier-compensated sum in the given order.
double compensated_sum(const std::vector<double>& xs);

}  // namespace gaugecmp
