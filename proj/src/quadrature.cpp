#include "gaugecmp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <queue>

#include "gaugecmp/constants.hpp"

namespace gaugecmp {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <class T>
struct Segment {
  double a;
  double b;
  T value;
  double error;
};

template <class T, class F>
Segment<T> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T resg = fc * kWg[3];
  T resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<T, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    f1[j] = f(c - dx);
    f2[j] = f(c + dx);
    const T s = f1[j] + f2[j];
    resk += kWgk[j] * s;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  const T reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
  const T value = resk * h;
  resabs *= std::abs(h);
  resasc *= std::abs(h);
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {a, b, value, err};
}

template <class T>
T sum_values(std::vector<Segment<T>>& segs) {
  std::sort(segs.begin(), segs.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  if constexpr (std::is_same_v<T, double>) {
    std::vector<double> v;
    v.reserve(segs.size());
    for (const auto& s : segs) v.push_back(s.value);
    return compensated_sum(v);
  } else {
    std::vector<double> re, im;
    re.reserve(segs.size());
    im.reserve(segs.size());
    for (const auto& s : segs) {
      re.push_back(s.value.real());
      im.push_back(s.value.imag());
    }
    return T(compensated_sum(re), compensated_sum(im));
  }
}

template <class T>
struct AdaptResult {
  T value{};
  double error = 0.0;
  long evaluations = 0;
  int subdivisions = 0;
  bool converged = true;
};

template <class T, class F>
AdaptResult<T> adapt(const F& f, const std::vector<double>& breaks, double abs_tol, double rel_tol,
                     int max_subdivisions) {
  std::vector<Segment<T>> segs;
  segs.reserve(breaks.size() + 2 * static_cast<size_t>(std::max(max_subdivisions, 0)));
  AdaptResult<T> out;
  T total{};
  double total_err = 0.0;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    segs.push_back(gk15<T>(f, breaks[i], breaks[i + 1]));
    total += segs.back().value;
    total_err += segs.back().error;
  }
  out.evaluations = 15 * static_cast<long>(segs.size());

  auto cmp = [&segs](size_t x, size_t y) { return segs[x].error < segs[y].error; };
  std::priority_queue<size_t, std::vector<size_t>, decltype(cmp)> heap(cmp);
  for (size_t i = 0; i < segs.size(); ++i) heap.push(i);

  auto tolerance = [&](const T& v) { return std::max(abs_tol, rel_tol * std::abs(v)); };
  T best_value = total;
  double best_err = total_err;

  while (total_err > tolerance(total) && out.subdivisions < max_subdivisions && !heap.empty()) {
    const size_t i = heap.top();
    heap.pop();
    const Segment<T> s = segs[i];
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b) || (s.b - s.a) < 1e3 * kEps * std::max(std::abs(s.a), std::abs(s.b))) {
      continue;  // cannot refine further; its error stays in the total
    }
    Segment<T> left = gk15<T>(f, s.a, mid);
    Segment<T> right = gk15<T>(f, mid, s.b);
    out.evaluations += 30;
    ++out.subdivisions;
    total += left.value + right.value - s.value;
    total_err += left.error + right.error - s.error;
    segs[i] = left;
    segs.push_back(right);
    heap.push(i);
    heap.push(segs.size() - 1);
    if (total_err < best_err) {
      best_err = total_err;
      best_value = total;
    }
  }

  out.value = total_err <= best_err ? sum_values(segs) : best_value;
  out.error = best_err;
  out.converged = out.error <= tolerance(out.value);
  return out;
}

std::vector<double> partition(double a, double b, const std::optional<double>& period, double origin) {
  std::vector<double> br{a};
  if (period && *period > 0.0 && std::isfinite(*period)) {
    const double p = *period;
    const double first = std::floor((a - origin) / p) + 1.0;
    const double last = std::ceil((b - origin) / p) - 1.0;
    if (last - first > 5e6) throw std::invalid_argument("oscillation period too short for domain");
    for (double j = first; j <= last; j += 1.0) {
      const double x = origin + j * p;
      if (x > br.back() + 1e-14 * std::abs(x) && x < b - 1e-14 * std::abs(b)) br.push_back(x);
    }
  }
  br.push_back(b);
  return br;
}

}  // namespace

double compensated_sum(const std::vector<double>& xs) {
  double sum = 0.0;
  double c = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

QuadratureResult integrate(const QuadratureRequest& req) {
  if (!req.integrand) throw std::invalid_argument("missing integrand");
  if (!(req.abs_tol > 0.0) || !(req.rel_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  double b = req.b;
  double tail = 0.0;
  if (std::isinf(b)) {
    if (!req.tail || !(req.truncate_at > req.a))
      throw std::invalid_argument("semi-infinite domain needs truncate_at and a tail bound");
    b = req.truncate_at;
    tail = req.tail(b);
  }
  if (!(req.a < b)) throw std::invalid_argument("domain requires a < b");
  const auto br = partition(req.a, b, req.oscillation_period, req.period_origin);
  const auto r = adapt<double>(req.integrand, br, req.abs_tol, req.rel_tol, req.max_subdivisions);
  QuadratureResult out;
  out.value = r.value;
  out.error = r.error + tail;
  out.evaluations = r.evaluations;
  out.subdivisions = r.subdivisions;
  out.converged = out.error <= std::max(req.abs_tol, req.rel_tol * std::abs(out.value)) * (1.0 + 1e-12) ||
                  (r.converged && tail <= std::max(req.abs_tol, req.rel_tol * std::abs(out.value)));
  return out;
}

ComplexQuadratureResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                          double a, double b, double abs_tol, double rel_tol,
                                          int max_subdivisions) {
  if (!(a < b)) throw std::invalid_argument("domain requires a < b");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  const auto r = adapt<std::complex<double>>(f, {a, b}, abs_tol, rel_tol, max_subdivisions);
  return {r.value, r.error, r.evaluations, r.subdivisions, r.converged};
}

const QuadratureResult& require_converged(const QuadratureResult& r, const std::string& what) {
  if (!r.converged)
    throw QuadratureError(what + ": quadrature did not converge (error estimate " + std::to_string(r.error) + ")",
                          r.value, r.error);
  return r;
}

const ComplexQuadratureResult& require_converged(const ComplexQuadratureResult& r, const std::string& what) {
  if (!r.converged)
    throw QuadratureError(what + ": quadrature did not converge (error estimate " + std::to_string(r.error) + ")",
                          std::abs(r.value), r.error);
  return r;
}

QuadratureResult integrate_sinc_squared(const SincSquaredIntegral& spec) {
  if (!spec.density) throw std::invalid_argument("missing spectral density");
  if (spec.T < 0.0) throw std::invalid_argument("duration must be nonnegative");
  if (!(spec.upper > 0.0)) throw std::invalid_argument("upper limit must be positive");
  QuadratureResult out;
  if (spec.T == 0.0) return out;

  const double T = spec.T;
  const double W = spec.Omega;
  const double U = spec.upper;
  const double period = 2.0 * kPi / T;
  const auto& g = spec.density;

  double us = U;
  if ((U + W) / period > spec.max_direct_periods) {
    double j = spec.max_direct_periods;
    if (W < 0.0) j = std::max(j, std::ceil(-W / period) + 1.0);
    us = std::min(U, j * period - W);
  }

  QuadratureRequest direct;
  direct.integrand = [&](double u) {
    const double x = 0.5 * (u + W) * T;
    const double s = x == 0.0 ? 1.0 : std::sin(x) / x;
    return g(u).real() * T * T * s * s;
  };
  direct.a = 0.0;
  direct.b = us;
  direct.abs_tol = spec.abs_tol / 3.0;
  direct.rel_tol = spec.rel_tol;
  direct.oscillation_period = period;
  direct.period_origin = -W;
  direct.max_subdivisions = spec.max_subdivisions;
  const auto d = integrate(direct);
  out.value = d.value;
  out.error = d.error;
  out.evaluations = d.evaluations;
  out.subdivisions = d.subdivisions;
  out.converged = d.converged;
  if (us >= U) return out;

  // far region: int f (1 - cos(eta T)), f = 2 g / eta^2, oscillatory part by rotating into Im u > 0
  auto f = [&](std::complex<double> z) {
    const std::complex<double> eta = z + W;
    return 2.0 * g(z) / (eta * eta);
  };
  QuadratureRequest smooth;
  smooth.integrand = [&](double u) { return f(u).real(); };
  smooth.a = us;
  smooth.b = U;
  smooth.abs_tol = spec.abs_tol / 3.0;
  smooth.rel_tol = spec.rel_tol;
  smooth.max_subdivisions = spec.max_subdivisions;
  const auto s = integrate(smooth);

  const double s_max = 45.0 / T;
  auto leg = [&](double x0) {
    return integrate_complex(
        [&, x0](double t) { return f(std::complex<double>(x0, t)) * std::exp(-T * t); }, 0.0, s_max,
        spec.abs_tol / 6.0, spec.rel_tol, spec.max_subdivisions);
  };
  const auto c1 = leg(us);
  const auto c2 = leg(U);
  const std::complex<double> i(0.0, 1.0);
  const double ph1 = std::fmod(T * (us + W), 2.0 * kPi);
  const double ph2 = std::fmod(T * (U + W), 2.0 * kPi);
  const std::complex<double> osc = i * std::polar(1.0, ph1) * c1.value - i * std::polar(1.0, ph2) * c2.value;

  out.value = d.value + s.value - osc.real();
  out.error = d.error + s.error + c1.error + c2.error + std::exp(-45.0) * (std::abs(c1.value) + std::abs(c2.value));
  out.evaluations += s.evaluations + c1.evaluations + c2.evaluations;
  out.subdivisions += s.subdivisions + c1.subdivisions + c2.subdivisions;
  out.converged = out.error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value)) * 1.5 ||
                  (d.converged && s.converged && c1.converged && c2.converged);
  return out;
}

double tail_bound(int m, double Omega, double T, double omega_max, double envelope) {
  if (m < 4) throw std::invalid_argument("tail bound needs envelope exponent m >= 4");
  if (!(omega_max > std::abs(Omega))) throw std::invalid_argument("tail bound needs omega_max > |Omega|");
  if (!(envelope > 0.0)) throw std::invalid_argument("envelope coefficient must be positive");
  const double U = omega_max;
  const double rho = Omega >= 0.0 ? 1.0 : 1.0 - std::abs(Omega) / U;
  const double cm = std::pow(envelope, -m);
  const double far = 4.0 / (rho * rho) * cm * std::pow(U, 2 - 2 * m) / (2.0 * m - 2.0);
  const double near = T * T * cm * std::pow(U, 4 - 2 * m) / (2.0 * m - 4.0);
  return std::min(far, near);
}

double dephased_tail_bound(int m, double Omega, double omega_max, double envelope) {
  if (m < 2) throw std::invalid_argument("tail bound needs envelope exponent m >= 2");
  if (!(omega_max > std::abs(Omega))) throw std::invalid_argument("tail bound needs omega_max > |Omega|");
  const double U = omega_max;
  const double rho = Omega >= 0.0 ? 1.0 : 1.0 - std::abs(Omega) / U;
  return 2.0 / (rho * rho) * std::pow(envelope, -m) * std::pow(U, 2 - 2 * m) / (2.0 * m - 2.0);
}

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[n];
  if (slot) return *slot;
  auto rule = std::make_unique<GaussRule>();
  rule->nodes.resize(n);
  rule->weights.resize(n);
  if (n == 1) {
    rule->nodes[0] = 0.0;
    rule->weights[0] = 2.0;
    slot = std::move(rule);
    return *slot;
  }
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule->nodes[i] = -x;
    rule->nodes[n - 1 - i] = x;
    rule->weights[i] = w;
    rule->weights[n - 1 - i] = w;
  }
  slot = std::move(rule);
  return *slot;
}

std::vector<double> ChebyshevSeries::nodes(double a, double b, int order) {
  std::vector<double> x(order);
  for (int j = 0; j < order; ++j)
    x[j] = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(kPi * (j + 0.5) / order);
  return x;
}

ChebyshevSeries ChebyshevSeries::from_values(const std::vector<double>& values, double a, double b) {
  const int n = static_cast<int>(values.size());
  if (n < 2) throw std::invalid_argument("Chebyshev interpolant needs at least two nodes");
  ChebyshevSeries s;
  s.a_ = a;
  s.b_ = b;
  s.c_.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += values[j] * std::cos(kPi * k * (j + 0.5) / n);
    s.c_[k] = 2.0 * acc / n;
  }
  s.c_[0] *= 0.5;
  return s;
}

ChebyshevSeries::ChebyshevSeries(const std::function<double(double)>& f, double a, double b, int order) {
  const auto x = nodes(a, b, order);
  std::vector<double> v(order);
  for (int j = 0; j < order; ++j) v[j] = f(x[j]);
  *this = from_values(v, a, b);
}

namespace {
template <class S>
S clenshaw(const std::vector<double>& c, S t) {
  S b1{}, b2{};
  for (size_t k = c.size(); k-- > 1;) {
    const S tmp = 2.0 * t * b1 - b2 + c[k];
    b2 = b1;
    b1 = tmp;
  }
  return t * b1 - b2 + c[0];
}
}  // namespace

double ChebyshevSeries::operator()(double x) const {
  return clenshaw(c_, (2.0 * x - a_ - b_) / (b_ - a_));
}

std::complex<double> ChebyshevSeries::operator()(std::complex<double> x) const {
  return clenshaw(c_, (2.0 * x - a_ - b_) / (b_ - a_));
}

double ChebyshevSeries::tail_ratio() const {
  double mx = 0.0;
  for (double v : c_) mx = std::max(mx, std::abs(v));
  if (mx == 0.0) return 0.0;
  const size_t n = c_.size();
  double tail = 0.0;
  for (size_t k = n - std::min<size_t>(3, n); k < n; ++k) tail = std::max(tail, std::abs(c_[k]));
  return tail / mx;
}

}  // namespace gaugecmp
