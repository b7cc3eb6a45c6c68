#pragma once

#include <cstdint>
#include <utility>

// Shared numeric helpers. All entropies and divergences are in bits
// (binary logarithms throughout the library).

namespace netcomp {

// h2(p) = -p log2 p - (1-p) log2 (1-p), with the 0 log 0 = 0 convention.
double binary_entropy(double p);

// d2(p||q) = p log2(p/q) + (1-p) log2((1-p)/(1-q)).
// q in {0,1} with mismatched p yields +infinity.
double binary_divergence(double p, double q);

// log of the binomial coefficient C(m, k), natural base.
double log_choose(int64_t m, int64_t k);

// B(m, k, p) = C(m,k) p^k (1-p)^(m-k), evaluated in log space so that
// m up to 1e6 does not overflow.
double binomial_pmf(int64_t m, int64_t k, double p);

// P[Bin(n,p) >= k], direct summation (n expected to be moderate).
double binomial_tail_geq(int64_t n, int64_t k, double p);

// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

// One-sided Clopper-Pearson upper confidence limit for a binomial
// proportion: smallest p with P[Bin(n,p) <= k] <= 1 - confidence.
double clopper_pearson_upper(int64_t k, int64_t n, double confidence);

// Two-sided Clopper-Pearson interval at the given confidence level.
std::pair<double, double> clopper_pearson_interval(int64_t k, int64_t n, double confidence);

// P[|N(0, sigma2)| <= eps].
double gaussian_ball_probability(double sigma2, double eps);

// SplitMix64 finalizer.
uint64_t mix64(uint64_t x);

// Counter-based RNG: every draw is a pure function of (seed, stream,
// counter), so results do not depend on evaluation order or thread
// scheduling.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

  // Uniform on [0,1), keyed by an arbitrary counter tuple.
  double u01(uint64_t c0, uint64_t c1 = 0, uint64_t c2 = 0) const;

  // Standard normal via Box-Muller on two sub-draws of the counter.
  double normal(uint64_t c0, uint64_t c1 = 0, uint64_t c2 = 0) const;

 private:
  uint64_t seed_;
  uint64_t stream_;
};

}  // namespace netcomp
