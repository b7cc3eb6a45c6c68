#include "netcomp/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace netcomp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double binary_divergence(double p, double q) {
  if (p < 0.0 || p > 1.0 || q < 0.0 || q > 1.0)
    throw std::invalid_argument("binary_divergence: arguments outside [0,1]");
  if (q == 0.0) return p == 0.0 ? 0.0 : kInf;
  if (q == 1.0) return p == 1.0 ? 0.0 : kInf;
  double out = 0.0;
  if (p > 0.0) out += p * std::log2(p / q);
  if (p < 1.0) out += (1.0 - p) * std::log2((1.0 - p) / (1.0 - q));
  return out;
}

double log_choose(int64_t m, int64_t k) {
  if (k < 0 || k > m) return -kInf;
  if (k == 0 || k == m) return 0.0;
  return std::lgamma(double(m) + 1.0) - std::lgamma(double(k) + 1.0) -
         std::lgamma(double(m - k) + 1.0);
}

double binomial_pmf(int64_t m, int64_t k, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binomial_pmf: p outside [0,1]");
  if (k < 0 || k > m) return 0.0;
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == m ? 1.0 : 0.0;
  double lg = log_choose(m, k) + double(k) * std::log(p) + double(m - k) * std::log1p(-p);
  return std::exp(lg);
}

double binomial_tail_geq(int64_t n, int64_t k, double p) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  double tot = 0.0;
  for (int64_t j = k; j <= n; ++j) tot += binomial_pmf(n, j, p);
  return tot < 1.0 ? tot : 1.0;
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kFpMin = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete_beta: x outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  double lbeta = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                 a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(lbeta);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double clopper_pearson_upper(int64_t k, int64_t n, double confidence) {
  if (n <= 0) throw std::invalid_argument("clopper_pearson_upper: n must be positive");
  if (k < 0 || k > n) throw std::invalid_argument("clopper_pearson_upper: k outside [0,n]");
  if (k == n) return 1.0;
  double alpha = 1.0 - confidence;
  // Solve P[Bin(n,p) <= k] = alpha, i.e. I_{1-p}(n-k, k+1) = alpha.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double cdf = incomplete_beta(double(n - k), double(k) + 1.0, 1.0 - mid);
    if (cdf > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> clopper_pearson_interval(int64_t k, int64_t n, double confidence) {
  double alpha = 1.0 - confidence;
  double upper = (k == n) ? 1.0 : clopper_pearson_upper(k, n, 1.0 - alpha / 2.0);
  double lower = 0.0;
  if (k > 0) {
    // Lower limit is the mirror image of the upper limit.
    lower = 1.0 - clopper_pearson_upper(n - k, n, 1.0 - alpha / 2.0);
  }
  return {lower, upper};
}

double gaussian_ball_probability(double sigma2, double eps) {
  if (sigma2 <= 0.0) throw std::invalid_argument("gaussian_ball_probability: variance must be positive");
  if (eps < 0.0) return 0.0;
  return std::erf(eps / std::sqrt(2.0 * sigma2));
}

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

namespace {

uint64_t key_hash(uint64_t a, uint64_t b, uint64_t c, uint64_t d, uint64_t e) {
  uint64_t h = mix64(a);
  h = mix64(h ^ (b + 0x9e3779b97f4a7c15ull));
  h = mix64(h ^ (c + 0xc2b2ae3d27d4eb4full));
  h = mix64(h ^ (d + 0x165667b19e3779f9ull));
  h = mix64(h ^ (e + 0x27d4eb2f165667c5ull));
  return h;
}

double to_unit(uint64_t h) {
  // Top 53 bits into [0,1).
  return double(h >> 11) * 0x1.0p-53;
}

}  // namespace

double CounterRng::u01(uint64_t c0, uint64_t c1, uint64_t c2) const {
  return to_unit(key_hash(seed_, stream_, c0, c1, c2));
}

double CounterRng::normal(uint64_t c0, uint64_t c1, uint64_t c2) const {
  double u1 = to_unit(key_hash(seed_, stream_, c0, c1, 2 * c2));
  double u2 = to_unit(key_hash(seed_, stream_, c0, c1, 2 * c2 + 1));
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace netcomp
