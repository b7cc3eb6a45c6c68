#pragma once

#include <optional>
#include <string>
#include <vector>

namespace netcomp {

// Per-node observation distribution. All joint models in this library are
// products of these marginals (independent observations).
struct ObservationModel {
  enum class Kind { Rademacher, Bernoulli, Gaussian, Uniform, Finite };

  Kind kind = Kind::Rademacher;
  double p = 0.5;         // bernoulli
  double mean = 0.0;      // gaussian
  double variance = 1.0;  // gaussian
  double lo = 0.0;        // uniform
  double hi = 1.0;        // uniform
  std::vector<double> support;  // finite
  std::vector<double> pmf;      // finite

  bool discrete() const { return kind != Kind::Gaussian && kind != Kind::Uniform; }
  // Two-point discrete distributions admit a bit view (smaller value -> 0).
  bool two_point() const;
  double prob_bit_one() const;  // P[bit = 1] for two-point models

  double var() const;
  std::optional<double> entropy_bits() const;  // nullopt for continuous
  double max_pmf() const;                      // largest atom (discrete only)
};

ObservationModel rademacher();
ObservationModel bernoulli(double p);
ObservationModel gaussian(double mean, double variance);
ObservationModel uniform_interval(double lo, double hi);
ObservationModel finite_dist(std::vector<double> support, std::vector<double> pmf);

// Target function Z = f(W).
struct FunctionSpec {
  enum class Kind { Linear, LinearVector, Parity, Identity };

  Kind kind = Kind::Parity;
  std::vector<double> coefficients;     // linear
  std::vector<std::vector<double>> matrix;  // linear_vector, rows x |V|
};

FunctionSpec linear_function(std::vector<double> coefficients);
FunctionSpec linear_vector_function(std::vector<std::vector<double>> matrix);
FunctionSpec parity_function();
FunctionSpec identity_function();

struct Distortion {
  enum class Kind { Hamming, Absolute, Quadratic, Euclidean };
  Kind kind = Kind::Hamming;
  std::optional<double> d_max;
};

// Throws unless the function codomain and distortion kind fit together
// (parity/identity -> hamming, linear -> absolute/quadratic,
// linear_vector -> euclidean) and dimensions match the node count.
void check_problem_shape(const std::vector<ObservationModel>& models, const FunctionSpec& f,
                         const Distortion& dist);

}  // namespace netcomp
