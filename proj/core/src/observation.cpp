#include "netcomp/observation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "netcomp/stats.hpp"

namespace netcomp {

namespace {
constexpr double kPmfSumTol = 1e-12;
}

bool ObservationModel::two_point() const {
  switch (kind) {
    case Kind::Rademacher:
    case Kind::Bernoulli:
      return true;
    case Kind::Finite:
      return support.size() == 2;
    default:
      return false;
  }
}

double ObservationModel::prob_bit_one() const {
  switch (kind) {
    case Kind::Rademacher:
      return 0.5;  // +1 is the larger value
    case Kind::Bernoulli:
      return p;
    case Kind::Finite: {
      if (support.size() != 2) break;
      return support[0] < support[1] ? pmf[1] : pmf[0];
    }
    default:
      break;
  }
  throw std::logic_error("prob_bit_one: model has no two-point bit view");
}

double ObservationModel::var() const {
  switch (kind) {
    case Kind::Rademacher:
      return 1.0;
    case Kind::Bernoulli:
      return p * (1.0 - p);
    case Kind::Gaussian:
      return variance;
    case Kind::Uniform:
      return (hi - lo) * (hi - lo) / 12.0;
    case Kind::Finite: {
      double m = 0.0, m2 = 0.0;
      for (size_t i = 0; i < support.size(); ++i) {
        m += pmf[i] * support[i];
        m2 += pmf[i] * support[i] * support[i];
      }
      return m2 - m * m;
    }
  }
  throw std::logic_error("var: unknown observation kind");
}

std::optional<double> ObservationModel::entropy_bits() const {
  switch (kind) {
    case Kind::Rademacher:
      return 1.0;
    case Kind::Bernoulli:
      return binary_entropy(p);
    case Kind::Finite: {
      double h = 0.0;
      for (double q : pmf)
        if (q > 0.0) h -= q * std::log2(q);
      return h;
    }
    default:
      return std::nullopt;
  }
}

double ObservationModel::max_pmf() const {
  switch (kind) {
    case Kind::Rademacher:
      return 0.5;
    case Kind::Bernoulli:
      return std::max(p, 1.0 - p);
    case Kind::Finite:
      return *std::max_element(pmf.begin(), pmf.end());
    default:
      throw std::logic_error("max_pmf: model is continuous");
  }
}

ObservationModel rademacher() {
  ObservationModel m;
  m.kind = ObservationModel::Kind::Rademacher;
  return m;
}

ObservationModel bernoulli(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("bernoulli: p outside [0,1]");
  ObservationModel m;
  m.kind = ObservationModel::Kind::Bernoulli;
  m.p = p;
  return m;
}

ObservationModel gaussian(double mean, double variance) {
  if (variance <= 0.0) throw std::invalid_argument("gaussian: variance must be positive");
  ObservationModel m;
  m.kind = ObservationModel::Kind::Gaussian;
  m.mean = mean;
  m.variance = variance;
  return m;
}

ObservationModel uniform_interval(double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("uniform: need hi > lo");
  ObservationModel m;
  m.kind = ObservationModel::Kind::Uniform;
  m.lo = lo;
  m.hi = hi;
  return m;
}

ObservationModel finite_dist(std::vector<double> support, std::vector<double> pmf) {
  if (support.empty() || support.size() != pmf.size())
    throw std::invalid_argument("finite_dist: support/pmf size mismatch");
  double s = 0.0;
  for (double q : pmf) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("finite_dist: pmf entry outside [0,1]");
    s += q;
  }
  if (std::fabs(s - 1.0) > kPmfSumTol)
    throw std::invalid_argument("finite_dist: pmf sums to " + std::to_string(s));
  ObservationModel m;
  m.kind = ObservationModel::Kind::Finite;
  m.support = std::move(support);
  m.pmf = std::move(pmf);
  return m;
}

FunctionSpec linear_function(std::vector<double> coefficients) {
  FunctionSpec f;
  f.kind = FunctionSpec::Kind::Linear;
  f.coefficients = std::move(coefficients);
  return f;
}

FunctionSpec linear_vector_function(std::vector<std::vector<double>> matrix) {
  if (matrix.empty() || matrix.front().empty())
    throw std::invalid_argument("linear_vector_function: empty matrix");
  for (const auto& row : matrix)
    if (row.size() != matrix.front().size())
      throw std::invalid_argument("linear_vector_function: ragged matrix");
  FunctionSpec f;
  f.kind = FunctionSpec::Kind::LinearVector;
  f.matrix = std::move(matrix);
  return f;
}

FunctionSpec parity_function() {
  FunctionSpec f;
  f.kind = FunctionSpec::Kind::Parity;
  return f;
}

FunctionSpec identity_function() {
  FunctionSpec f;
  f.kind = FunctionSpec::Kind::Identity;
  return f;
}

void check_problem_shape(const std::vector<ObservationModel>& models, const FunctionSpec& f,
                         const Distortion& dist) {
  const size_t n = models.size();
  if (n == 0) throw std::invalid_argument("problem has no observation models");
  switch (f.kind) {
    case FunctionSpec::Kind::Linear:
      if (f.coefficients.size() != n)
        throw std::invalid_argument("linear function needs one coefficient per node");
      if (dist.kind != Distortion::Kind::Absolute && dist.kind != Distortion::Kind::Quadratic)
        throw std::invalid_argument("linear function needs absolute or quadratic distortion");
      break;
    case FunctionSpec::Kind::LinearVector:
      if (f.matrix.front().size() != n)
        throw std::invalid_argument("linear_vector matrix needs one column per node");
      if (dist.kind != Distortion::Kind::Euclidean)
        throw std::invalid_argument("linear_vector function needs euclidean distortion");
      break;
    case FunctionSpec::Kind::Parity:
      for (const auto& m : models)
        if (!m.two_point())
          throw std::invalid_argument("parity needs two-point observations at every node");
      if (dist.kind != Distortion::Kind::Hamming)
        throw std::invalid_argument("parity needs hamming distortion");
      break;
    case FunctionSpec::Kind::Identity:
      for (const auto& m : models)
        if (!m.discrete())
          throw std::invalid_argument("identity target needs discrete observations");
      if (dist.kind != Distortion::Kind::Hamming)
        throw std::invalid_argument("identity target needs hamming distortion");
      break;
  }
}

}  // namespace netcomp
