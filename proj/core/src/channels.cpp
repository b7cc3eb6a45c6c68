#include "netcomp/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "netcomp/stats.hpp"

namespace netcomp {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_stochastic(const std::vector<double>& m, int rows, int cols) {
  for (int x = 0; x < rows; ++x) {
    double s = 0.0;
    for (int y = 0; y < cols; ++y) {
      double v = m[size_t(x) * cols + y];
      if (v < 0.0 || v > 1.0)
        throw std::invalid_argument("channel matrix entry outside [0,1]");
      s += v;
    }
    if (std::fabs(s - 1.0) > kRowSumTol)
      throw std::invalid_argument("channel matrix row " + std::to_string(x) +
                                  " sums to " + std::to_string(s) + ", expected 1");
  }
}

}  // namespace

Channel bsc(double p) {
  if (p < 0.0 || p > 0.5) throw std::invalid_argument("bsc: p must lie in [0, 1/2]");
  Channel ch;
  ch.kind = ChannelKind::Bsc;
  ch.param = p;
  ch.input_size = 2;
  ch.output_size = 2;
  ch.transition = {1.0 - p, p, p, 1.0 - p};
  return ch;
}

Channel bec(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("bec: p must lie in [0, 1]");
  Channel ch;
  ch.kind = ChannelKind::Bec;
  ch.param = p;
  ch.input_size = 2;
  ch.output_size = 3;  // outputs 0, erasure, 1
  ch.transition = {1.0 - p, p, 0.0, 0.0, p, 1.0 - p};
  return ch;
}

Channel channel_from_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw std::invalid_argument("channel matrix must be nonempty");
  int nin = int(rows.size());
  int nout = int(rows.front().size());
  Channel ch;
  ch.kind = ChannelKind::Matrix;
  ch.input_size = nin;
  ch.output_size = nout;
  ch.transition.reserve(size_t(nin) * nout);
  for (const auto& r : rows) {
    if (int(r.size()) != nout)
      throw std::invalid_argument("channel matrix rows have inconsistent lengths");
    ch.transition.insert(ch.transition.end(), r.begin(), r.end());
  }
  check_stochastic(ch.transition, nin, nout);
  return ch;
}

namespace {

// Blahut-Arimoto. Sandwich: I(r) <= C <= max_x D(K(.|x) || q_r) for the
// output distribution q_r induced by the current input distribution r.
double blahut_arimoto_capacity(const Channel& ch) {
  const int nin = ch.input_size, nout = ch.output_size;
  std::vector<double> r(nin, 1.0 / nin);
  std::vector<double> q(nout, 0.0), dx(nin, 0.0);
  constexpr double kTolBits = 1e-9;
  constexpr int kMaxIter = 10000;
  double lower = 0.0;
  for (int it = 0; it < kMaxIter; ++it) {
    std::fill(q.begin(), q.end(), 0.0);
    for (int x = 0; x < nin; ++x)
      for (int y = 0; y < nout; ++y) q[y] += r[x] * ch.k(x, y);
    double upper = -kInf;
    lower = 0.0;
    for (int x = 0; x < nin; ++x) {
      double d = 0.0;  // D(K(.|x) || q) in nats
      for (int y = 0; y < nout; ++y) {
        double kxy = ch.k(x, y);
        if (kxy > 0.0) d += kxy * std::log(kxy / q[y]);
      }
      dx[x] = d;
      lower += r[x] * d;
      upper = std::max(upper, d);
    }
    if ((upper - lower) / std::log(2.0) <= kTolBits) break;
    double norm = 0.0;
    for (int x = 0; x < nin; ++x) {
      r[x] *= std::exp(dx[x] - lower);  // shift by the mean for stability
      norm += r[x];
    }
    for (int x = 0; x < nin; ++x) r[x] /= norm;
  }
  return std::max(0.0, lower / std::log(2.0));
}

}  // namespace

double capacity(const Channel& ch) {
  switch (ch.kind) {
    case ChannelKind::Bsc:
      return 1.0 - binary_entropy(ch.param);
    case ChannelKind::Bec:
      return 1.0 - ch.param;
    case ChannelKind::Matrix:
      return blahut_arimoto_capacity(ch);
  }
  throw std::logic_error("capacity: unknown channel kind");
}

SdpiConstant sdpi_constant(const Channel& ch) {
  switch (ch.kind) {
    case ChannelKind::Bsc: {
      double q = 1.0 - 2.0 * ch.param;
      return {q * q, true};
    }
    case ChannelKind::Bec:
      return {1.0 - ch.param, true};
    case ChannelKind::Matrix:
      return {1.0, false};
  }
  throw std::logic_error("sdpi_constant: unknown channel kind");
}

namespace {

// D(Q_Y || P_Y) / D(Q_X || P_X) for two-point input distributions
// (q, 1-q) and (s, 1-s) on inputs (x0, x1). Both divergences are
// evaluated through log1p of the exact perturbation h = q - s, which
// stays accurate when the two distributions are close (the ratio then
// approaches the chi-square contraction), in nats; the base cancels.
// Pairs with an infinite output divergence are skipped (returns -1).
double divergence_ratio(const Channel& ch, int x0, int x1, double q, double s) {
  double h = q - s;
  if (std::fabs(h) < 1e-6) return -1.0;
  if (q <= 0.0 || q >= 1.0 || s <= 0.0 || s >= 1.0) return -1.0;
  double din = q * std::log1p(h / s) + (1.0 - q) * std::log1p(-h / (1.0 - s));
  if (!(din > 0.0)) return -1.0;
  double dout = 0.0;
  for (int y = 0; y < ch.output_size; ++y) {
    double k0 = ch.k(x0, y), k1 = ch.k(x1, y);
    double py = s * k0 + (1.0 - s) * k1;
    double qy = q * k0 + (1.0 - q) * k1;
    double hy = h * (k0 - k1);
    if (qy <= 0.0) continue;  // 0 log 0 = 0
    if (py <= 0.0) return -1.0;
    dout += qy * std::log1p(hy / py);
  }
  return dout / din;
}

}  // namespace

double sdpi_lower_estimate(const Channel& ch, double resolution) {
  if (ch.input_size > 8)
    throw std::invalid_argument("sdpi_lower_estimate: input alphabet larger than 8");
  if (resolution <= 0.0 || resolution >= 0.5)
    throw std::invalid_argument("sdpi_lower_estimate: resolution must lie in (0, 0.5)");

  double best = 0.0;
  for (int x0 = 0; x0 < ch.input_size; ++x0) {
    for (int x1 = x0 + 1; x1 < ch.input_size; ++x1) {
      // Coarse grid over (s, q).
      double bq = -1.0, bs = -1.0;
      for (double s = resolution; s < 1.0; s += resolution) {
        for (double q = resolution; q < 1.0; q += resolution) {
          double ratio = divergence_ratio(ch, x0, x1, q, s);
          if (ratio > best) {
            best = ratio;
            bq = q;
            bs = s;
          }
        }
      }
      if (bq < 0.0) continue;
      // Local refinement: shrink a window around the best pair. Every
      // evaluated pair is feasible, so the estimate stays a lower bound.
      double w = resolution;
      for (int round = 0; round < 10; ++round) {
        const int steps = 8;
        double step = std::max(w / steps, 1e-6);
        double lq = bq, ls = bs;
        for (double s = ls - w; s <= ls + w; s += step) {
          if (s <= 0.0 || s >= 1.0) continue;
          for (double q = lq - w; q <= lq + w; q += step) {
            if (q <= 0.0 || q >= 1.0) continue;
            double ratio = divergence_ratio(ch, x0, x1, q, s);
            if (ratio > best) {
              best = ratio;
              bq = q;
              bs = s;
            }
          }
        }
        w /= steps / 2;
        if (w < 1e-6) break;
      }
    }
  }
  return std::min(best, 1.0);
}

Channel tensor_product(const std::vector<Channel>& parts, int alphabet_cap) {
  if (parts.empty()) throw std::invalid_argument("tensor_product: empty channel list");
  int64_t nin = 1, nout = 1;
  for (const auto& p : parts) {
    nin *= p.input_size;
    nout *= p.output_size;
    if (nin > alphabet_cap || nout > alphabet_cap)
      throw std::invalid_argument(
          "tensor_product: product alphabet exceeds cap (" + std::to_string(alphabet_cap) +
          "); use sdpi_product_upper instead");
  }
  Channel ch;
  ch.kind = (parts.size() == 1) ? parts.front().kind : ChannelKind::Matrix;
  ch.param = (parts.size() == 1) ? parts.front().param : 0.0;
  ch.input_size = int(nin);
  ch.output_size = int(nout);
  ch.transition.assign(size_t(nin) * nout, 0.0);
  for (int64_t x = 0; x < nin; ++x) {
    for (int64_t y = 0; y < nout; ++y) {
      double v = 1.0;
      int64_t xr = x, yr = y;
      // Mixed-radix decomposition, last channel in the list varies fastest.
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        int xi = int(xr % it->input_size);
        int yi = int(yr % it->output_size);
        xr /= it->input_size;
        yr /= it->output_size;
        v *= it->k(xi, yi);
      }
      ch.transition[size_t(x) * nout + y] = v;
    }
  }
  return ch;
}

double sdpi_product_upper(double eta, int m) {
  if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("sdpi_product_upper: eta outside [0,1]");
  if (m < 1) throw std::invalid_argument("sdpi_product_upper: m must be >= 1");
  return 1.0 - std::pow(1.0 - eta, double(m));
}

}  // namespace netcomp
