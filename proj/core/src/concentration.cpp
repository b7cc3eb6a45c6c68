#include "netcomp/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace netcomp {

namespace detail {

namespace {

bool close_values(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * (1.0 + std::max(std::fabs(a), std::fabs(b)));
}

DiscreteDist merged(DiscreteDist d) {
  std::sort(d.begin(), d.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
  DiscreteDist out;
  for (const Atom& a : d) {
    if (!out.empty() && close_values(out.back().value, a.value))
      out.back().prob += a.prob;
    else
      out.push_back(a);
  }
  return out;
}

}  // namespace

DiscreteDist atoms_of(const ObservationModel& m, double scale) {
  DiscreteDist d;
  switch (m.kind) {
    case ObservationModel::Kind::Rademacher:
      d = {{-scale, 0.5}, {scale, 0.5}};
      break;
    case ObservationModel::Kind::Bernoulli:
      d = {{0.0, 1.0 - m.p}, {scale, m.p}};
      break;
    case ObservationModel::Kind::Finite:
      for (size_t i = 0; i < m.support.size(); ++i) d.push_back({scale * m.support[i], m.pmf[i]});
      break;
    default:
      throw std::invalid_argument("atoms_of: model is continuous");
  }
  if (scale == 0.0) return {{0.0, 1.0}};
  return merged(std::move(d));
}

DiscreteDist convolve(const DiscreteDist& x, const DiscreteDist& y, size_t atom_cap) {
  if (x.size() * y.size() > atom_cap)
    throw std::length_error("convolve: atom count above cap");
  DiscreteDist out;
  out.reserve(x.size() * y.size());
  for (const Atom& a : x)
    for (const Atom& b : y) out.push_back({a.value + b.value, a.prob * b.prob});
  return merged(std::move(out));
}

double levy_window(const DiscreteDist& d, double eps) {
  if (d.empty()) return 0.0;
  double best = 0.0;
  size_t j = 0;
  double run = 0.0;
  // Window [v_i, v_i + 2 eps]; the optimum left edge sits on an atom.
  for (size_t i = 0; i < d.size(); ++i) {
    while (j < d.size() && d[j].value <= d[i].value + 2.0 * eps + 1e-15 * (1.0 + std::fabs(d[i].value))) {
      run += d[j].prob;
      ++j;
    }
    best = std::max(best, run);
    run -= d[i].prob;
  }
  return std::min(best, 1.0);
}

double entropy_bits(const DiscreteDist& d) {
  double h = 0.0;
  for (const Atom& a : d)
    if (a.prob > 0.0) h -= a.prob * std::log2(a.prob);
  return h;
}

}  // namespace detail

namespace {

constexpr double kTwoOverPiSqrt = 0.79788456080286535588;  // sqrt(2/pi)

NodeSet complement_of(const NodeSet& s, size_t n) {
  NodeSet out;
  for (int v = 0; v < int(n); ++v)
    if (!s.count(v)) out.insert(v);
  return out;
}

double draw_value(const ObservationModel& m, const CounterRng& rng, uint64_t sample, uint64_t node) {
  switch (m.kind) {
    case ObservationModel::Kind::Rademacher:
      return rng.u01(sample, node) < 0.5 ? -1.0 : 1.0;
    case ObservationModel::Kind::Bernoulli:
      return rng.u01(sample, node) < m.p ? 1.0 : 0.0;
    case ObservationModel::Kind::Gaussian:
      return m.mean + std::sqrt(m.variance) * rng.normal(sample, node);
    case ObservationModel::Kind::Uniform:
      return m.lo + (m.hi - m.lo) * rng.u01(sample, node);
    case ObservationModel::Kind::Finite: {
      double u = rng.u01(sample, node);
      double acc = 0.0;
      for (size_t i = 0; i < m.pmf.size(); ++i) {
        acc += m.pmf[i];
        if (u < acc) return m.support[i];
      }
      return m.support.back();
    }
  }
  throw std::logic_error("draw_value: unknown observation kind");
}

uint64_t subset_stream(const NodeSet& sc) {
  uint64_t h = 0x6a09e667f3bcc909ull;
  for (int v : sc) h = mix64(h ^ uint64_t(v));
  return h;
}

// Monte Carlo Levy concentration of a scalar sum over S^c: sliding a
// 2 eps window over sorted samples is exact for the empirical measure.
CsbpEstimate monte_carlo_scalar(const std::vector<ObservationModel>& models,
                                const std::vector<double>& coeff, const NodeSet& sc, double eps,
                                const CsbpOptions& opts) {
  CounterRng rng(opts.seed, subset_stream(sc));
  std::vector<double> sums(opts.samples, 0.0);
  for (uint64_t i = 0; i < opts.samples; ++i) {
    double acc = 0.0;
    for (int v : sc) acc += coeff[size_t(v)] * draw_value(models[size_t(v)], rng, i, uint64_t(v));
    sums[i] = acc;
  }
  std::sort(sums.begin(), sums.end());
  size_t best = 0, j = 0;
  for (size_t i = 0; i < sums.size(); ++i) {
    while (j < sums.size() && sums[j] <= sums[i] + 2.0 * eps) ++j;
    best = std::max(best, j - i);
  }
  CsbpEstimate est;
  est.value = double(best) / double(opts.samples);
  est.method = "monte_carlo";
  est.samples = opts.samples;
  est.seed = opts.seed;
  est.ci = clopper_pearson_interval(int64_t(best), int64_t(opts.samples), 0.99);
  return est;
}

// Fixed-depth kd-tree over sample points; used to maximize the ball count
// over sample centers for vector-valued targets.
struct KdTree {
  struct Node {
    int lo = 0, hi = 0;  // range in points
    int axis = -1;
    double split = 0.0;
    int left = -1, right = -1;
    std::vector<double> bb_min, bb_max;
  };
  int dim = 0;
  std::vector<std::vector<double>> pts;
  std::vector<Node> nodes;

  int build(int lo, int hi) {
    Node nd;
    nd.lo = lo;
    nd.hi = hi;
    nd.bb_min.assign(size_t(dim), 1e300);
    nd.bb_max.assign(size_t(dim), -1e300);
    for (int i = lo; i < hi; ++i)
      for (int a = 0; a < dim; ++a) {
        nd.bb_min[size_t(a)] = std::min(nd.bb_min[size_t(a)], pts[size_t(i)][size_t(a)]);
        nd.bb_max[size_t(a)] = std::max(nd.bb_max[size_t(a)], pts[size_t(i)][size_t(a)]);
      }
    int id = int(nodes.size());
    nodes.push_back(nd);
    if (hi - lo > 32) {
      int axis = 0;
      double spread = -1.0;
      for (int a = 0; a < dim; ++a) {
        double s = nd.bb_max[size_t(a)] - nd.bb_min[size_t(a)];
        if (s > spread) {
          spread = s;
          axis = a;
        }
      }
      int mid = (lo + hi) / 2;
      std::nth_element(pts.begin() + lo, pts.begin() + mid, pts.begin() + hi,
                       [axis](const auto& x, const auto& y) { return x[size_t(axis)] < y[size_t(axis)]; });
      int l = build(lo, mid);
      int r = build(mid, hi);
      nodes[size_t(id)].axis = axis;
      nodes[size_t(id)].split = pts[size_t(mid)][size_t(axis)];
      nodes[size_t(id)].left = l;
      nodes[size_t(id)].right = r;
    }
    return id;
  }

  size_t ball_count(int id, const std::vector<double>& c, double r2) const {
    const Node& nd = nodes[size_t(id)];
    double d2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      double v = c[size_t(a)];
      if (v < nd.bb_min[size_t(a)]) d2 += (nd.bb_min[size_t(a)] - v) * (nd.bb_min[size_t(a)] - v);
      if (v > nd.bb_max[size_t(a)]) d2 += (v - nd.bb_max[size_t(a)]) * (v - nd.bb_max[size_t(a)]);
    }
    if (d2 > r2) return 0;
    if (nd.left < 0) {
      size_t cnt = 0;
      for (int i = nd.lo; i < nd.hi; ++i) {
        double s = 0.0;
        for (int a = 0; a < dim; ++a) {
          double diff = pts[size_t(i)][size_t(a)] - c[size_t(a)];
          s += diff * diff;
        }
        if (s <= r2) ++cnt;
      }
      return cnt;
    }
    return ball_count(nd.left, c, r2) + ball_count(nd.right, c, r2);
  }
};

CsbpEstimate monte_carlo_vector(const std::vector<ObservationModel>& models,
                                const std::vector<std::vector<double>>& matrix, const NodeSet& sc,
                                double eps, const CsbpOptions& opts) {
  const int dim = int(matrix.size());
  uint64_t samples = std::min<uint64_t>(opts.samples, 100000);
  CounterRng rng(opts.seed, subset_stream(sc));
  KdTree tree;
  tree.dim = dim;
  tree.pts.assign(samples, std::vector<double>(size_t(dim), 0.0));
  for (uint64_t i = 0; i < samples; ++i) {
    for (int v : sc) {
      double w = draw_value(models[size_t(v)], rng, i, uint64_t(v));
      for (int r = 0; r < dim; ++r) tree.pts[i][size_t(r)] += matrix[size_t(r)][size_t(v)] * w;
    }
  }
  auto centers = tree.pts;  // build() permutes the points
  int root = tree.build(0, int(samples));
  size_t best = 0;
  for (const auto& c : centers) best = std::max(best, tree.ball_count(root, c, eps * eps));
  CsbpEstimate est;
  est.value = double(best) / double(samples);
  est.method = "monte_carlo_lower";
  est.samples = samples;
  est.seed = opts.seed;
  est.ci = clopper_pearson_interval(int64_t(best), int64_t(samples), 0.99);
  est.note = "ball-count maximized over sample centers; lower estimate of L";
  return est;
}

double parity_bit_one_prob(const std::vector<ObservationModel>& models, const NodeSet& sc) {
  double prod = 1.0;
  for (int v : sc) prod *= 1.0 - 2.0 * models[size_t(v)].prob_bit_one();
  return 0.5 * (1.0 - prod);
}

}  // namespace

CsbpEstimate expected_csbp(const std::vector<ObservationModel>& models, const FunctionSpec& f,
                           const Distortion& dist, const NodeSet& s, double eps,
                           const CsbpOptions& opts) {
  if (eps < 0.0) throw std::invalid_argument("expected_csbp: eps must be nonnegative");
  check_problem_shape(models, f, dist);
  for (int v : s)
    if (v < 0 || v >= int(models.size()))
      throw std::invalid_argument("expected_csbp: node index outside the model");
  NodeSet sc = complement_of(s, models.size());

  CsbpEstimate est;
  est.seed = opts.seed;

  switch (f.kind) {
    case FunctionSpec::Kind::Parity: {
      // Conditioning fixes the parity of S; the residual is the parity of
      // the bits in S^c, so L = max(q, 1-q) independently of w_S.
      est.method = "closed_form";
      if (eps >= 1.0 || sc.empty()) {
        est.value = 1.0;
        return est;
      }
      double q = parity_bit_one_prob(models, sc);
      est.value = std::max(q, 1.0 - q);
      return est;
    }
    case FunctionSpec::Kind::Identity: {
      est.method = "closed_form";
      if (eps >= 1.0) {
        est.value = 1.0;
        return est;
      }
      double prod = 1.0;
      for (int v : sc) prod *= models[size_t(v)].max_pmf();
      est.value = prod;
      return est;
    }
    case FunctionSpec::Kind::Linear: {
      double radius = dist.kind == Distortion::Kind::Quadratic ? std::sqrt(eps) : eps;
      double norm = 0.0;
      for (int v : sc) norm += std::fabs(f.coefficients[size_t(v)]);
      if (sc.empty() || norm == 0.0) {
        est.method = "closed_form";
        est.value = 1.0;
        return est;
      }
      bool all_gauss = true, all_finite = true;
      for (int v : sc) {
        if (f.coefficients[size_t(v)] == 0.0) continue;
        if (models[size_t(v)].kind != ObservationModel::Kind::Gaussian) all_gauss = false;
        if (!models[size_t(v)].discrete()) all_finite = false;
      }
      if (all_gauss) {
        double var = 0.0;
        for (int v : sc)
          var += f.coefficients[size_t(v)] * f.coefficients[size_t(v)] * models[size_t(v)].var();
        est.method = "closed_form";
        est.value = gaussian_ball_probability(var, radius);
        return est;
      }
      if (all_finite && int(sc.size()) <= opts.enumeration_cap) {
        try {
          detail::DiscreteDist sum{{0.0, 1.0}};
          for (int v : sc)
            sum = detail::convolve(sum, detail::atoms_of(models[size_t(v)], f.coefficients[size_t(v)]),
                                   opts.atom_cap);
          est.method = "enumeration";
          est.value = detail::levy_window(sum, radius);
          return est;
        } catch (const std::length_error&) {
          // fall through to Monte Carlo
        }
      }
      return monte_carlo_scalar(models, f.coefficients, sc, radius, opts);
    }
    case FunctionSpec::Kind::LinearVector:
      if (sc.empty()) {
        est.method = "closed_form";
        est.value = 1.0;
        return est;
      }
      return monte_carlo_vector(models, f.matrix, sc, eps, opts);
  }
  throw std::logic_error("expected_csbp: unknown function kind");
}

GaussianLevy levy_gaussian(double sigma2, double eps) {
  if (sigma2 <= 0.0) throw std::invalid_argument("levy_gaussian: variance must be positive");
  if (eps < 0.0) throw std::invalid_argument("levy_gaussian: eps must be nonnegative");
  GaussianLevy out;
  out.exact = gaussian_ball_probability(sigma2, eps);
  out.bound = kTwoOverPiSqrt * eps / std::sqrt(sigma2);
  return out;
}

LevyInterval levy_logconcave_bound(double variance, double rho) {
  if (variance <= 0.0) throw std::invalid_argument("levy_logconcave_bound: variance must be positive");
  if (rho < 0.0) throw std::invalid_argument("levy_logconcave_bound: rho must be nonnegative");
  double denom = std::sqrt(variance + rho * rho / 3.0);
  LevyInterval out;
  out.lower = std::clamp(rho / (std::sqrt(3.0) * denom), 0.0, 1.0);
  out.upper = std::clamp(2.0 * rho / denom, 0.0, 1.0);
  return out;
}

double levy_erdos_LO(int k) {
  if (k < 1) throw std::invalid_argument("levy_erdos_LO: k must be >= 1");
  // 2^-k C(k, floor(k/2)) in log space.
  double lg = log_choose(k, k / 2) - double(k) * std::log(2.0);
  return std::exp(lg);
}

double levy_third_moment(double eps, double k1, double k2, double b, double c, int setsize) {
  if (k1 <= 0.0 || k2 <= 0.0 || b <= 0.0 || c <= 0.0)
    throw std::invalid_argument("levy_third_moment: constants must be positive");
  if (setsize < 1) throw std::invalid_argument("levy_third_moment: setsize must be >= 1");
  if (eps < 0.0) throw std::invalid_argument("levy_third_moment: eps must be nonnegative");
  double m = c * (eps / k1 + b * std::pow(k2 / k1, 3.0));
  return std::clamp(m / std::sqrt(double(setsize)), 0.0, 1.0);
}

VectorLevyBound levy_vector_rv(const std::vector<std::vector<double>>& a_sub, double per_coord_p,
                               double c, double eps) {
  (void)eps;  // echoed by callers; the bound uses the supplied per-coordinate level
  if (a_sub.empty() || a_sub.front().empty())
    throw std::invalid_argument("levy_vector_rv: empty matrix");
  if (per_coord_p <= 0.0 || per_coord_p >= 1.0)
    throw std::invalid_argument("levy_vector_rv: per-coordinate level outside (0,1)");
  if (c <= 0.0) throw std::invalid_argument("levy_vector_rv: c must be positive");
  const size_t rows = a_sub.size(), cols = a_sub.front().size();
  double hs = 0.0;
  for (const auto& row : a_sub) {
    if (row.size() != cols) throw std::invalid_argument("levy_vector_rv: ragged matrix");
    for (double v : row) hs += v * v;
  }
  if (hs == 0.0) throw std::invalid_argument("levy_vector_rv: zero matrix");

  // Power iteration on the Gram matrix of the smaller dimension.
  const bool use_cols = cols <= rows;
  const size_t dim = use_cols ? cols : rows;
  std::vector<double> gram(dim * dim, 0.0);
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) {
      double s = 0.0;
      if (use_cols)
        for (size_t r = 0; r < rows; ++r) s += a_sub[r][i] * a_sub[r][j];
      else
        for (size_t k = 0; k < cols; ++k) s += a_sub[i][k] * a_sub[j][k];
      gram[i * dim + j] = s;
    }
  std::vector<double> v(dim), w(dim);
  for (size_t i = 0; i < dim; ++i) v[i] = 1.0 + 1e-3 * double(i + 1);
  double lambda = 0.0;
  for (int it = 0; it < 100000; ++it) {
    double norm = 0.0;
    for (size_t i = 0; i < dim; ++i) {
      double s = 0.0;
      for (size_t j = 0; j < dim; ++j) s += gram[i * dim + j] * v[j];
      w[i] = s;
      norm += s * s;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    double next = 0.0;
    for (size_t i = 0; i < dim; ++i) {
      v[i] = w[i] / norm;
      next += v[i] * w[i];
    }
    if (std::fabs(next - lambda) <= 1e-10 * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }

  VectorLevyBound out;
  out.hs_norm_sq = hs;
  out.spectral_norm_sq = lambda;
  out.stable_rank = std::max(1, int(std::floor(hs / lambda)));
  out.bound = std::clamp(std::pow(c * per_coord_p, 0.9 * double(out.stable_rank)), 0.0, 1.0);
  return out;
}

std::optional<double> cond_entropy_obs_bits(const std::vector<ObservationModel>& models,
                                            const NodeSet& s) {
  double total = 0.0;
  for (int v = 0; v < int(models.size()); ++v) {
    if (s.count(v)) continue;
    auto h = models[size_t(v)].entropy_bits();
    if (!h) return std::nullopt;
    total += *h;
  }
  return total;
}

std::optional<double> cond_entropy_z_bits(const std::vector<ObservationModel>& models,
                                          const FunctionSpec& f, const NodeSet& s) {
  NodeSet sc = complement_of(s, models.size());
  switch (f.kind) {
    case FunctionSpec::Kind::Parity: {
      if (sc.empty()) return 0.0;
      return binary_entropy(parity_bit_one_prob(models, sc));
    }
    case FunctionSpec::Kind::Identity:
      return cond_entropy_obs_bits(models, s);
    case FunctionSpec::Kind::Linear: {
      // Discrete only: H(Z|W_S) equals the entropy of the S^c partial sum.
      detail::DiscreteDist sum{{0.0, 1.0}};
      for (int v : sc) {
        if (!models[size_t(v)].discrete()) return std::nullopt;
        sum = detail::convolve(sum, detail::atoms_of(models[size_t(v)], f.coefficients[size_t(v)]),
                               size_t(1) << 24);
      }
      return detail::entropy_bits(sum);
    }
    default:
      return std::nullopt;
  }
}

std::optional<double> entropy_z_bits(const std::vector<ObservationModel>& models,
                                     const FunctionSpec& f) {
  return cond_entropy_z_bits(models, f, {});
}

std::optional<double> mutual_information_z_ws_bits(const std::vector<ObservationModel>& models,
                                                   const FunctionSpec& f, const NodeSet& s) {
  auto hz = entropy_z_bits(models, f);
  auto hzs = cond_entropy_z_bits(models, f, s);
  if (!hz || !hzs) return std::nullopt;
  return *hz - *hzs;
}

detail::DiscreteDist z_distribution(const std::vector<ObservationModel>& models,
                                    const FunctionSpec& f, size_t atom_cap) {
  switch (f.kind) {
    case FunctionSpec::Kind::Parity: {
      NodeSet all;
      for (int v = 0; v < int(models.size()); ++v) all.insert(v);
      double q = parity_bit_one_prob(models, all);
      return {{0.0, 1.0 - q}, {1.0, q}};
    }
    case FunctionSpec::Kind::Linear: {
      detail::DiscreteDist sum{{0.0, 1.0}};
      for (int v = 0; v < int(models.size()); ++v) {
        if (!models[size_t(v)].discrete())
          throw std::invalid_argument("z_distribution: continuous observation");
        sum = detail::convolve(sum, detail::atoms_of(models[size_t(v)], f.coefficients[size_t(v)]),
                               atom_cap);
      }
      return sum;
    }
    default:
      throw std::invalid_argument("z_distribution: only scalar discrete targets supported");
  }
}

}  // namespace netcomp
