#pragma once

#include <string>
#include <vector>

namespace netcomp {

enum class ChannelKind { Bsc, Bec, Matrix };

// Finite discrete memoryless channel: a row-stochastic transition matrix
// K(y|x). BSC/BEC carry their parameter so capacity and the SDPI constant
// can dispatch to closed forms.
struct Channel {
  ChannelKind kind = ChannelKind::Matrix;
  double param = 0.0;  // crossover / erasure probability for bsc / bec
  int input_size = 0;
  int output_size = 0;
  std::vector<double> transition;  // row-major, input_size x output_size

  double k(int x, int y) const { return transition[size_t(x) * output_size + y]; }
};

// Canonical 2x2 BSC(p); requires p in [0, 1/2].
Channel bsc(double p);

// Canonical 2x3 BEC(p) with output alphabet {0, erasure, 1}; p in [0,1].
Channel bec(double p);

// Explicit transition matrix. Rows must sum to 1 within 1e-12 and all
// entries must lie in [0,1].
Channel channel_from_matrix(const std::vector<std::vector<double>>& rows);

// Shannon capacity in bits per channel use. Closed forms 1-h2(p) for BSC
// and 1-p for BEC; Blahut-Arimoto otherwise, run until the capacity gap
// bound drops below 1e-9 (or 10000 iterations), uniform input start.
double capacity(const Channel& ch);

struct SdpiConstant {
  double value = 1.0;
  bool exact = false;  // false: conservative upper bound (always 1 here)
};

// SDPI constant eta(K): (1-2p)^2 for BSC(p), 1-p for BEC(p). General
// matrices get the conservative value 1; eta enters upper bounds on
// mutual information, so only certified-from-above values are usable.
SdpiConstant sdpi_constant(const Channel& ch);

// Diagnostic lower estimate of eta(K): maximizes D(Q_Y||P_Y)/D(Q_X||P_X)
// over input-distribution pairs restricted to common two-point supports,
// grid search at the given resolution plus local refinement. The result
// never exceeds the true constant. Input alphabet limited to 8.
double sdpi_lower_estimate(const Channel& ch, double resolution = 1e-3);

// Tensor product of channels; entries multiply coordinatewise. Throws if
// either product alphabet exceeds alphabet_cap (callers should fall back
// to sdpi_product_upper instead of materializing huge products).
Channel tensor_product(const std::vector<Channel>& parts, int alphabet_cap = 4096);

// Upper bound 1-(1-eta)^m on the SDPI constant of a product of m channels
// whose constants are all at most eta.
double sdpi_product_upper(double eta, int m);

}  // namespace netcomp
