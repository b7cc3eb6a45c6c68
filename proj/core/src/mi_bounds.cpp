#include "netcomp/mi_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "netcomp/stats.hpp"

namespace netcomp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPiE = 17.079468445347132;  // 2 pi e
}  // namespace

MiLower mi_lower_smallball(double expected_l, double delta) {
  if (expected_l < 0.0 || expected_l > 1.0)
    throw std::invalid_argument("mi_lower_smallball: E[L] outside [0,1]");
  if (delta < 0.0 || delta >= 1.0)
    throw std::invalid_argument("mi_lower_smallball: delta outside [0,1)");
  MiLower out;
  if (expected_l == 0.0) {
    out.value = kInf;
    out.infinite = true;
    return out;
  }
  out.value = (1.0 - delta) * std::log2(1.0 / expected_l) - binary_entropy(delta);
  out.valid = expected_l <= 1.0 - delta;
  return out;
}

double mi_lower_rd(double rz_eps, double i_z_ws) { return rz_eps - i_z_ws; }

double mi_lower_gaussian_quadratic(double h_cond_bits, double eps) {
  if (eps <= 0.0) throw std::invalid_argument("mi_lower_gaussian_quadratic: eps must be positive");
  return h_cond_bits + 0.5 * std::log2(1.0 / (kTwoPiE * eps));
}

namespace {

struct RdPoint {
  double rate = 0.0;        // bits
  double distortion = 0.0;
};

// Blahut-Arimoto inner loop at a fixed Lagrange multiplier beta (natural
// base). Rows of exp(-beta d) are shifted by the row minimum, which leaves
// the implied conditional unchanged and avoids underflow.
RdPoint rd_at_beta(const std::vector<double>& pmf,
                   const std::vector<std::vector<double>>& dist, double beta) {
  const size_t n = pmf.size();
  std::vector<double> a(n * n);
  for (size_t z = 0; z < n; ++z) {
    double dmin = *std::min_element(dist[z].begin(), dist[z].end());
    for (size_t y = 0; y < n; ++y) a[z * n + y] = std::exp(-beta * (dist[z][y] - dmin));
  }
  std::vector<double> q(n, 1.0 / double(n)), qn(n), c(n);
  for (int it = 0; it < 5000; ++it) {
    for (size_t z = 0; z < n; ++z) {
      double s = 0.0;
      for (size_t y = 0; y < n; ++y) s += q[y] * a[z * n + y];
      c[z] = s;
    }
    std::fill(qn.begin(), qn.end(), 0.0);
    for (size_t z = 0; z < n; ++z) {
      if (pmf[z] == 0.0) continue;
      for (size_t y = 0; y < n; ++y) qn[y] += pmf[z] * q[y] * a[z * n + y] / c[z];
    }
    double delta = 0.0;
    for (size_t y = 0; y < n; ++y) delta = std::max(delta, std::fabs(qn[y] - q[y]));
    q = qn;
    if (delta < 1e-13) break;
  }
  for (size_t z = 0; z < n; ++z) {
    double s = 0.0;
    for (size_t y = 0; y < n; ++y) s += q[y] * a[z * n + y];
    c[z] = s;
  }
  std::vector<double> marginal(n, 0.0);
  for (size_t z = 0; z < n; ++z) {
    if (pmf[z] == 0.0) continue;
    for (size_t y = 0; y < n; ++y) marginal[y] += pmf[z] * q[y] * a[z * n + y] / c[z];
  }
  RdPoint pt;
  for (size_t z = 0; z < n; ++z) {
    if (pmf[z] == 0.0) continue;
    for (size_t y = 0; y < n; ++y) {
      double cond = q[y] * a[z * n + y] / c[z];
      if (cond <= 0.0 || marginal[y] <= 0.0) continue;
      pt.rate += pmf[z] * cond * std::log2(cond / marginal[y]);
      pt.distortion += pmf[z] * cond * dist[z][y];
    }
  }
  pt.rate = std::max(0.0, pt.rate);
  return pt;
}

}  // namespace

double rd_function_discrete(const std::vector<double>& pmf,
                            const std::vector<std::vector<double>>& dist, double eps) {
  const size_t n = pmf.size();
  if (n == 0 || dist.size() != n)
    throw std::invalid_argument("rd_function_discrete: pmf/distortion shape mismatch");
  for (const auto& row : dist)
    if (row.size() != n) throw std::invalid_argument("rd_function_discrete: ragged distortion");
  if (eps < 0.0) throw std::invalid_argument("rd_function_discrete: eps must be nonnegative");

  double entropy = 0.0;
  for (double p : pmf)
    if (p > 0.0) entropy -= p * std::log2(p);

  // Distortion floor (best per-letter reproduction) and the distortion of
  // the best constant reproduction (rate zero).
  double floor = 0.0;
  for (size_t z = 0; z < n; ++z)
    floor += pmf[z] * *std::min_element(dist[z].begin(), dist[z].end());
  double dmax = kInf;
  for (size_t y = 0; y < n; ++y) {
    double s = 0.0;
    for (size_t z = 0; z < n; ++z) s += pmf[z] * dist[z][y];
    dmax = std::min(dmax, s);
  }
  if (eps >= dmax) return 0.0;
  if (eps <= floor + 1e-14) return entropy;

  // D(beta) is nonincreasing; bisect keeping lo on the D >= eps side so
  // the returned rate never exceeds R(eps).
  double lo = 0.0, hi = 1.0;
  while (rd_at_beta(pmf, dist, hi).distortion > eps && hi < 1e9) hi *= 2.0;
  RdPoint result = rd_at_beta(pmf, dist, lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    RdPoint pt = rd_at_beta(pmf, dist, mid);
    if (pt.distortion >= eps) {
      lo = mid;
      result = pt;
    } else {
      hi = mid;
    }
    if (mid * std::fabs(pt.distortion - eps) < 1e-9 && it > 30) break;
  }
  return result.rate;
}

double mi_upper_cutset(double cutset_cap, double t) {
  if (t < 0.0) throw std::invalid_argument("mi_upper_cutset: T must be nonnegative");
  if (cutset_cap < 0.0) throw std::invalid_argument("mi_upper_cutset: capacity must be nonnegative");
  return t * cutset_cap;
}

double mi_upper_sdpi(double h_cond, double eta_v, double t) {
  if (!std::isfinite(h_cond)) throw std::invalid_argument("mi_upper_sdpi: H must be finite");
  if (eta_v < 0.0 || eta_v > 1.0) throw std::invalid_argument("mi_upper_sdpi: eta outside [0,1]");
  if (t < 0.0) throw std::invalid_argument("mi_upper_sdpi: T must be nonnegative");
  return (1.0 - std::pow(1.0 - eta_v, t)) * h_cond;
}

double mi_upper_sdpi_weak(double h_cond, double eta_star, int in_degree, double t) {
  return mi_upper_sdpi(h_cond, eta_star, double(in_degree) * t);
}

namespace {

void check_chain_args(int n, int64_t t, const std::optional<double>& h,
                      const std::optional<double>& c) {
  if (n < 2) throw std::invalid_argument("chain bounds: n must be >= 2");
  if (t < 0) throw std::invalid_argument("chain bounds: T must be nonnegative");
  if (!h && !c) throw std::invalid_argument("chain bounds: need H or C");
  if (h && (!std::isfinite(*h) || *h < 0.0))
    throw std::invalid_argument("chain bounds: H must be finite and nonnegative");
  if (c && (!std::isfinite(*c) || *c < 0.0))
    throw std::invalid_argument("chain bounds: C must be finite and nonnegative");
}

void check_eta(double eta) {
  if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("chain bounds: eta outside [0,1]");
}

// sum_{m=k}^{M} B(m, k, p) via the recurrence
// B(m+1,k,p) = B(m,k,p) (1-p) (m+1)/(m+1-k); also accumulates
// sum B(m,k,p) m for the capacity form.
void binomial_run_sums(int64_t k, int64_t m_max, double p, double& s0, double& s1) {
  s0 = 0.0;
  s1 = 0.0;
  if (m_max < k) return;
  double term;
  double lp = double(k) * std::log(p);
  if (lp < -700.0) {
    term = 0.0;  // p^k underflows; every term is numerically zero
  } else {
    term = std::exp(lp);
  }
  for (int64_t m = k; m <= m_max; ++m) {
    s0 += term;
    s1 += term * double(m);
    term *= (1.0 - p) * double(m + 1) / double(m + 1 - k);
  }
}

}  // namespace

double chain_mi_recursion_dp(int n, int64_t t, const std::vector<double>& eta,
                             std::optional<double> h_cond, std::optional<double> capacity) {
  check_chain_args(n, t, h_cond, capacity);
  if (int(eta.size()) != n - 1)
    throw std::invalid_argument("chain_mi_recursion_dp: need one eta per node 2..n");
  for (double e : eta) check_eta(e);
  if (t == 0) return 0.0;

  // Row for node 2, then fold nodes 3..n. Missing H or C enter as +inf.
  const double h = h_cond ? *h_cond : kInf;
  const double c = capacity ? *capacity : kInf;
  std::vector<double> row(size_t(t) + 1, 0.0);
  for (int64_t s = 1; s <= t; ++s) {
    double via_h = std::isfinite(h) ? (1.0 - eta[0]) * row[size_t(s - 1)] + eta[0] * h : kInf;
    double via_c = std::isfinite(c) ? c * double(s) : kInf;
    row[size_t(s)] = std::min(via_h, via_c);
  }
  for (int i = 3; i <= n; ++i) {
    const double ei = eta[size_t(i - 2)];
    std::vector<double> next(size_t(t) + 1, 0.0);
    for (int64_t s = 1; s <= t; ++s)
      next[size_t(s)] = (1.0 - ei) * next[size_t(s - 1)] + ei * row[size_t(s - 1)];
    row.swap(next);
  }
  return row[size_t(t)];
}

ChainBound chain_mi_closed(int n, int64_t t, double eta, std::optional<double> h_cond,
                           std::optional<double> capacity) {
  check_chain_args(n, t, h_cond, capacity);
  check_eta(eta);
  ChainBound out;
  out.h_form = kInf;
  out.c_form = kInf;
  if (t <= n - 2) {
    out.binding = "zero";
    out.h_form = h_cond ? 0.0 : kInf;
    out.c_form = capacity ? 0.0 : kInf;
    return out;
  }
  double s0 = 0.0, s1 = 0.0;
  if (h_cond) {
    // sum_{i=1}^{T-n+2} B(T-i, n-2, eta) = sum_{m=n-2}^{T-1} B(m, n-2, eta)
    binomial_run_sums(n - 2, t - 1, eta, s0, s1);
    out.h_form = *h_cond * eta * s0;
  }
  if (capacity && n >= 3) {
    // sum_{i=1}^{T-n+2} B(T-i-1, n-3, eta) i = sum_{m=n-3}^{T-2} B(m,n-3,eta) (T-1-m)
    binomial_run_sums(n - 3, t - 2, eta, s0, s1);
    out.c_form = *capacity * eta * (double(t - 1) * s0 - s1);
  } else if (capacity && n == 2) {
    // Two blocks have no interior nodes; the direct capacity bound C T is
    // the exact envelope on that side.
    out.c_form = *capacity * double(t);
  }
  out.value = std::min(out.h_form, out.c_form);
  out.binding = out.h_form <= out.c_form ? "h-form" : "c-form";
  return out;
}

ChainBound chain_mi_weakened(int n, int64_t t, double eta, std::optional<double> h_cond,
                             std::optional<double> capacity) {
  check_chain_args(n, t, h_cond, capacity);
  check_eta(eta);
  ChainBound out;
  out.h_form = kInf;
  out.c_form = kInf;
  if (t <= n - 2) {
    out.binding = "zero";
    out.h_form = h_cond ? 0.0 : kInf;
    out.c_form = capacity ? 0.0 : kInf;
    return out;
  }
  double base = 1.0 - std::pow(1.0 - eta, double(t - n + 2));
  if (h_cond) out.h_form = *h_cond * std::pow(base, double(n - 1));
  if (capacity) out.c_form = *capacity * double(t - n + 2) * std::pow(base, double(n - 2));
  out.value = std::min(out.h_form, out.c_form);
  out.binding = out.h_form <= out.c_form ? "h-form" : "c-form";
  return out;
}

ChainBound chain_mi_weakened_per_d(int n, int64_t t, double eta_edge, const std::vector<int>& d,
                                   std::optional<double> h_cond, std::optional<double> capacity) {
  check_chain_args(n, t, h_cond, capacity);
  check_eta(eta_edge);
  if (int(d.size()) != n - 1)
    throw std::invalid_argument("chain_mi_weakened_per_d: need d_2..d_n");
  ChainBound out;
  out.h_form = kInf;
  out.c_form = kInf;
  if (t <= n - 2) {
    out.binding = "zero";
    out.h_form = h_cond ? 0.0 : kInf;
    out.c_form = capacity ? 0.0 : kInf;
    return out;
  }
  double prod_all = 1.0, prod_tail = 1.0;
  for (int i = 2; i <= n; ++i) {
    double factor = 1.0 - std::pow(1.0 - eta_edge, double(d[size_t(i - 2)]) * double(t - n + 2));
    prod_all *= factor;
    if (i >= 3) prod_tail *= factor;
  }
  if (h_cond) out.h_form = *h_cond * prod_all;
  if (capacity) out.c_form = *capacity * double(t - n + 2) * prod_tail;
  out.value = std::min(out.h_form, out.c_form);
  out.binding = out.h_form <= out.c_form ? "h-form" : "c-form";
  return out;
}

ChernoffBound chain_mi_chernoff(int n, int64_t t, double eta, double gamma, double capacity) {
  check_eta(eta);
  if (gamma <= 0.0 || gamma >= 1.0)
    throw std::invalid_argument("chain_mi_chernoff: gamma outside (0,1)");
  ChernoffBound out;
  if (n < 4) {
    out.reason = "requires n >= 4";
    return out;
  }
  if (eta > 0.0 && double(t) > 2.0 + double(n - 3) * gamma / eta) {
    out.reason = "requires T <= 2 + (n-3) gamma / eta";
    return out;
  }
  if (eta == 0.0) {
    out.applicable = true;
    out.value = 0.0;
    return out;
  }
  double m = double(n - 3);
  out.applicable = true;
  out.value = capacity * (m * m * gamma * gamma / eta) *
              std::exp(-2.0 * (eta / gamma - eta) * (eta / gamma - eta) * m);
  return out;
}

std::optional<int64_t> invert_chain_closed(int n, double eta, std::optional<double> h_cond,
                                           std::optional<double> capacity, double target,
                                           int64_t t_max) {
  if (target <= 0.0) return 0;
  auto value_at = [&](int64_t t) { return chain_mi_closed(n, t, eta, h_cond, capacity).value; };
  int64_t lo = n - 2;  // value 0 here
  int64_t hi = n - 1;
  while (hi <= t_max && value_at(hi) < target) {
    lo = hi;
    hi = std::min(t_max + 1, hi * 2 + 1);
  }
  if (hi > t_max) return std::nullopt;
  while (hi - lo > 1) {
    int64_t mid = lo + (hi - lo) / 2;
    if (value_at(mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double fano_continuum_lower(double h_cond_bits, double e_z2, double eps, double delta) {
  if (eps <= 0.0) throw std::invalid_argument("fano_continuum_lower: eps must be positive");
  if (e_z2 <= 0.0 || !std::isfinite(e_z2))
    throw std::invalid_argument("fano_continuum_lower: E[Z^2] must be finite and positive");
  if (delta < 0.0 || delta > 1.0)
    throw std::invalid_argument("fano_continuum_lower: delta outside [0,1]");
  return (1.0 - delta) * std::log2(1.0 / eps) + h_cond_bits -
         0.5 * std::log2(8.0 * kTwoPiE * e_z2);
}

}  // namespace netcomp
