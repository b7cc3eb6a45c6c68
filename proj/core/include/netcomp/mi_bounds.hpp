#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace netcomp {

// Lower and upper bounds on the conditional mutual information between the
// target Z and a node estimate, given the observations in a node set.
// Everything is in bits.

struct MiLower {
  double value = 0.0;
  bool valid = true;      // small-ball condition E[L] <= 1-delta
  bool infinite = false;  // E[L] == 0
};

// (1-delta) log2(1/E[L]) - h2(delta). Negative values mean the bound is
// vacuous; consumers clamp at zero. valid=false when E[L] > 1-delta.
MiLower mi_lower_smallball(double expected_l, double delta);

// R_Z(eps) - I(Z; W_S).
double mi_lower_rd(double rz_eps, double i_z_ws);

// h(Z|W_S) + (1/2) log2(1/(2 pi e eps)) for quadratic distortion on a
// continuous target.
double mi_lower_gaussian_quadratic(double h_cond_bits, double eps);

// Rate-distortion function of a finite source, Blahut-Arimoto with a
// Lagrangian sweep, accurate to about 1e-6 in rate. eps below the
// distortion floor returns H(Z); eps at or above the best constant
// reproduction returns 0.
double rd_function_discrete(const std::vector<double>& pmf,
                            const std::vector<std::vector<double>>& distortion, double eps);

// T * C_S.
double mi_upper_cutset(double cutset_cap, double t);

// (1-(1-eta_v)^T) H(W_{S^c}|W_S); never exceeds the conditional entropy.
double mi_upper_sdpi(double h_cond, double eta_v, double t);

// Weakened form (1-(1-eta*_v)^{|E_v| T}) H(W_{S^c}|W_S).
double mi_upper_sdpi_weak(double h_cond, double eta_star, int in_degree, double t);

// ---- Bidirected-chain machinery -----------------------------------------
//
// Chains have nodes 1..n; information starts at node 1 and is estimated at
// node n conditioned on W_{2:n}. eta[i] below is the constant of chain
// node i+2 (so eta.size() == n-1). All bounds are zero for T <= n-2.

// Tightest envelope consistent with the recursive inequality system
//   I_{i,t} <= (1-eta_i) I_{i,t-1} + eta_i I_{i-1,t-1}
// with I_{2,t} <= min((1-eta_2) I_{2,t-1} + eta_2 H, C t); solved at
// equality by dynamic programming. Either H or C may be absent.
double chain_mi_recursion_dp(int n, int64_t t, const std::vector<double>& eta,
                             std::optional<double> h_cond, std::optional<double> capacity);

struct ChainBound {
  double value = 0.0;
  std::string binding;      // "h-form" | "c-form" | "zero"
  double h_form = 0.0;      // +inf when inapplicable
  double c_form = 0.0;
};

// Exact uniform-eta forms:
//   H eta sum_{i=1..T-n+2} B(T-i, n-2, eta)          (n >= 2)
//   C eta sum_{i=1..T-n+2} B(T-i-1, n-3, eta) i      (n >= 3)
// with B(m,k,p) the binomial pmf; returns the minimum of the applicable
// forms. Sums are evaluated with stable recurrences so T up to 1e6 is fine.
ChainBound chain_mi_closed(int n, int64_t t, double eta, std::optional<double> h_cond,
                           std::optional<double> capacity);

// Weakened uniform forms:
//   H (1-(1-eta)^{T-n+2})^{n-1}
//   C (T-n+2) (1-(1-eta)^{T-n+2})^{n-2}
ChainBound chain_mi_weakened(int n, int64_t t, double eta, std::optional<double> h_cond,
                             std::optional<double> capacity);

// Per-block variant with per-edge constant eta and block degrees d_2..d_n:
//   H prod_{i=2..n} (1-(1-eta)^{d_i (T-n+2)})
//   C (T-n+2) prod_{i=3..n} (1-(1-eta)^{d_i (T-n+2)})
ChainBound chain_mi_weakened_per_d(int n, int64_t t, double eta_edge, const std::vector<int>& d,
                                   std::optional<double> h_cond, std::optional<double> capacity);

struct ChernoffBound {
  bool applicable = false;
  double value = 0.0;
  std::string reason;  // why inapplicable
};

// C (n-3)^2 gamma^2 / eta * exp(-2 (eta/gamma - eta)^2 (n-3)), valid for
// n >= 4 and T <= 2 + (n-3) gamma / eta, gamma in (0,1). The exponential
// factor is natural-base as printed; the value is in bits through C.
ChernoffBound chain_mi_chernoff(int n, int64_t t, double eta, double gamma, double capacity);

// Smallest integer T with chain_mi_closed(...) >= target; nullopt if no
// T <= t_max works. target <= 0 yields 0.
std::optional<int64_t> invert_chain_closed(int n, double eta, std::optional<double> h_cond,
                                           std::optional<double> capacity, double target,
                                           int64_t t_max = 1000000);

// Continuum-Fano baseline: (1-delta) log2(1/eps) + h(Z|W_S)
// - (1/2) log2(16 pi e E[Z^2]).
double fano_continuum_lower(double h_cond_bits, double e_z2, double eps, double delta);

}  // namespace netcomp
