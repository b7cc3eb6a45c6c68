#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "netcomp/observation.hpp"
#include "netcomp/stats.hpp"

namespace netcomp {

using NodeSet = std::set<int>;

namespace detail {

struct Atom {
  double value = 0.0;
  double prob = 0.0;
};

// Sorted, merged atom list of a discrete real-valued distribution.
using DiscreteDist = std::vector<Atom>;

DiscreteDist atoms_of(const ObservationModel& m, double scale);
DiscreteDist convolve(const DiscreteDist& x, const DiscreteDist& y, size_t atom_cap);
// Levy concentration of the atom list: sup_z P[|X - z| <= eps] with a
// closed window (two-pointer sweep over atoms).
double levy_window(const DiscreteDist& d, double eps);
double entropy_bits(const DiscreteDist& d);

}  // namespace detail

struct CsbpEstimate {
  double value = 1.0;
  std::string method;  // closed_form | enumeration | monte_carlo | monte_carlo_lower
  std::optional<std::pair<double, double>> ci;  // two-sided 99%, Monte Carlo only
  uint64_t samples = 0;
  uint64_t seed = 0;
  std::string note;
};

struct CsbpOptions {
  uint64_t seed = 12345;
  uint64_t samples = 1000000;
  int enumeration_cap = 24;       // max |S^c| for exact discrete enumeration
  size_t atom_cap = size_t(1) << 24;
};

// E[L(W_S, eps)] for the conditional small-ball probability
// L(w_S, eps) = sup_z P[d(Z, z) <= eps | W_S = w_S].
//
// For independent observations with a linear target and absolute error the
// CSBP is constant in w_S and equals the Levy concentration of the sum
// over S^c; dispatch: Gaussian closed form, exact enumeration for finite
// supports, Monte Carlo otherwise. Parity and identity targets with
// hamming distortion have closed forms. Quadratic distortion reduces to
// absolute at sqrt(eps).
CsbpEstimate expected_csbp(const std::vector<ObservationModel>& models, const FunctionSpec& f,
                           const Distortion& dist, const NodeSet& s, double eps,
                           const CsbpOptions& opts = {});

struct GaussianLevy {
  double exact = 0.0;  // P[|N(0,sigma2)| <= eps]
  double bound = 0.0;  // sqrt(2/pi) eps / sigma, only small-eps tight
};
GaussianLevy levy_gaussian(double sigma2, double eps);

struct LevyInterval {
  double lower = 0.0;
  double upper = 0.0;
};
// Bobkov-Chistyakov estimate for sums of independent log-concave
// variables: L is between rho/sqrt(3(Var+rho^2/3)) and
// 2 rho/sqrt(Var+rho^2/3), clamped to [0,1].
LevyInterval levy_logconcave_bound(double variance, double rho);

// Littlewood-Offord/Erdos bound 2^-k C(k, floor(k/2)) on the unit-window
// concentration of a +-1 sum with coefficients of magnitude >= 1.
double levy_erdos_LO(int k);

// Third-moment bound M(eps)/sqrt(setsize) with
// M(eps) = c (eps/K1 + B (K2/K1)^3), clamped to [0,1].
double levy_third_moment(double eps, double k1, double k2, double b, double c, int setsize);

struct VectorLevyBound {
  double bound = 1.0;
  int stable_rank = 1;
  double hs_norm_sq = 0.0;
  double spectral_norm_sq = 0.0;
};
// (c p)^{0.9 r(A)} with stable rank r(A) = floor(|A|_HS^2 / |A|^2);
// spectral norm via power iteration to 1e-10. The per-coordinate
// concentration p and the absolute constant c are caller-supplied.
VectorLevyBound levy_vector_rv(const std::vector<std::vector<double>>& a_sub, double per_coord_p,
                               double c, double eps);

// Entropy quantities of the target under independent observations.
// Conditional quantities do not depend on the conditioning value.
std::optional<double> cond_entropy_obs_bits(const std::vector<ObservationModel>& models,
                                            const NodeSet& s);  // H(W_{S^c}|W_S)
std::optional<double> entropy_z_bits(const std::vector<ObservationModel>& models,
                                     const FunctionSpec& f);  // H(Z), discrete targets
std::optional<double> cond_entropy_z_bits(const std::vector<ObservationModel>& models,
                                          const FunctionSpec& f, const NodeSet& s);  // H(Z|W_S)
std::optional<double> mutual_information_z_ws_bits(const std::vector<ObservationModel>& models,
                                                   const FunctionSpec& f, const NodeSet& s);

// Distribution of Z for fully discrete models (scalar targets only).
detail::DiscreteDist z_distribution(const std::vector<ObservationModel>& models,
                                    const FunctionSpec& f, size_t atom_cap = size_t(1) << 24);

}  // namespace netcomp
