#pragma once

// Reference values built without the library: closed-form hydrogen functions,
// explicit low-order harmonics, and angular-momentum coupling by ladder operators.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// R_nl(r) for Z/a0 = s, n <= 3
inline double radial(int n, int l, double s, double r) {
  const double x = s * r;
  const double s32 = std::pow(s, 1.5);
  if (n == 1 && l == 0) return 2.0 * s32 * std::exp(-x);
  if (n == 2 && l == 0) return s32 / std::sqrt(2.0) * (1.0 - x / 2.0) * std::exp(-x / 2.0);
  if (n == 2 && l == 1) return s32 / std::sqrt(24.0) * x * std::exp(-x / 2.0);
  if (n == 3 && l == 0) return 2.0 * s32 / std::sqrt(27.0) * (1.0 - 2.0 * x / 3.0 + 2.0 * x * x / 27.0) * std::exp(-x / 3.0);
  if (n == 3 && l == 1) return 8.0 * s32 / (27.0 * std::sqrt(6.0)) * x * (1.0 - x / 6.0) * std::exp(-x / 3.0);
  if (n == 3 && l == 2) return 4.0 * s32 / (81.0 * std::sqrt(30.0)) * x * x * std::exp(-x / 3.0);
  throw std::invalid_argument("oracle radial: n <= 3 only");
}

// Y_lm with the Condon-Shortley phase, l <= 2
inline std::complex<double> ylm(int l, int m, double theta, double phi) {
  const double c = std::cos(theta), s = std::sin(theta);
  const std::complex<double> e = std::polar(1.0, m * phi);
  if (l == 0) return 0.5 / std::sqrt(pi);
  if (l == 1) {
    if (m == 0) return std::sqrt(3.0 / (4.0 * pi)) * c;
    if (m == 1) return -std::sqrt(3.0 / (8.0 * pi)) * s * e;
    if (m == -1) return std::sqrt(3.0 / (8.0 * pi)) * s * e;
  }
  if (l == 2) {
    if (m == 0) return std::sqrt(5.0 / (16.0 * pi)) * (3.0 * c * c - 1.0);
    if (m == 1) return -std::sqrt(15.0 / (8.0 * pi)) * s * c * e;
    if (m == -1) return std::sqrt(15.0 / (8.0 * pi)) * s * c * e;
    if (m == 2) return std::sqrt(15.0 / (32.0 * pi)) * s * s * e;
    if (m == -2) return std::sqrt(15.0 / (32.0 * pi)) * s * s * e;
  }
  throw std::invalid_argument("oracle ylm: l <= 2 only");
}

inline std::complex<double> wavefunction(int n, int l, int m, double s, double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  const double theta = r > 0.0 ? std::acos(z / r) : 0.0;
  return radial(n, l, s, r) * ylm(l, m, theta, std::atan2(y, x));
}

// Clebsch-Gordan table for integer j1, j2 built from |J=J_max, M=J_max> by J_- and
// Gram-Schmidt against higher J, with <j1 j1; j2 J-j1 | J J> > 0.
class LadderCG {
 public:
  LadderCG(int j1, int j2) : j1_(j1), j2_(j2) {
    for (int J = j1 + j2; J >= std::abs(j1 - j2); --J) build(J);
  }
  double operator()(int m1, int m2, int J, int M) const {
    if (m1 + m2 != M) return 0.0;
    const auto it = table_.find({J, M});
    if (it == table_.end()) return 0.0;
    const auto jt = it->second.find(m1);
    return jt == it->second.end() ? 0.0 : jt->second;
  }

 private:
  using State = std::map<int, double>;  // m1 -> coefficient, m2 = M - m1
  static double lower_coeff(int j, int m) { return std::sqrt(double(j + m) * (j - m + 1)); }

  State lower(const State& s, int M) const {
    State out;
    for (const auto& [m1, c] : s) {
      const int m2 = M - m1;
      if (m1 - 1 >= -j1_) out[m1 - 1] += c * lower_coeff(j1_, m1);
      if (m2 - 1 >= -j2_) out[m1] += c * lower_coeff(j2_, m2);
    }
    const double norm = std::sqrt(dot(out, out));
    for (auto& kv : out) kv.second /= norm;
    return out;
  }
  static double dot(const State& a, const State& b) {
    double d = 0.0;
    for (const auto& [m, c] : a) {
      const auto it = b.find(m);
      if (it != b.end()) d += c * it->second;
    }
    return d;
  }
  void build(int J) {
    // seed |m1 = j1>, never inside the span of higher J at M = J
    State top;
    for (int m1 = -j1_; m1 <= j1_; ++m1)
      if (std::abs(J - m1) <= j2_) top[m1] = m1 == j1_ ? 1.0 : 0.0;
    for (int pass = 0; pass < 2; ++pass)
      for (int Jh = j1_ + j2_; Jh > J; --Jh) {
        const State& h = table_.at({Jh, J});
        const double d = dot(top, h);
        for (auto& [m, c] : top) c -= d * (h.count(m) ? h.at(m) : 0.0);
      }
    double norm = std::sqrt(dot(top, top));
    for (auto& kv : top) kv.second /= norm;
    if (top.count(j1_) && top.at(j1_) < 0.0)
      for (auto& kv : top) kv.second = -kv.second;
    table_[{J, J}] = top;
    State cur = top;
    for (int M = J; M > -J; --M) {
      cur = lower(cur, M);
      table_[{J, M - 1}] = cur;
    }
  }

  int j1_, j2_;
  std::map<std::pair<int, int>, State> table_;
};

// high-precision values of the 1s -> 2p0 long-wavelength elements, in units of a0/Z and Z/a0
inline constexpr double dipole_length_1s2p = 0.74493553902780315;   // <2p0| z |1s> Z/a0
inline constexpr double gradient_1s2p = -0.27935082713542618;       // <2p0| d/dz |1s> a0/Z

}  // namespace oracle
