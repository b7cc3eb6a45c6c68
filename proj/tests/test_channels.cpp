#include <doctest.h>

#include <cmath>
#include <vector>

#include "netcomp/channels.hpp"
#include "netcomp/stats.hpp"

using namespace netcomp;

TEST_CASE("make_channel canonical forms") {
  auto id = bsc(0.0);
  CHECK(id.transition == std::vector<double>{1, 0, 0, 1});

  auto ch = bsc(0.3);
  CHECK(ch.k(0, 0) == doctest::Approx(0.7));
  CHECK(ch.k(0, 1) == doctest::Approx(0.3));
  CHECK(ch.k(1, 0) == doctest::Approx(0.3));
  CHECK(ch.k(1, 1) == doctest::Approx(0.7));

  auto e = bec(0.25);
  CHECK(e.input_size == 2);
  CHECK(e.output_size == 3);
  CHECK(e.k(0, 0) == doctest::Approx(0.75));
  CHECK(e.k(0, 1) == doctest::Approx(0.25));
  CHECK(e.k(1, 2) == doctest::Approx(0.75));

  CHECK_THROWS(bsc(0.6));
  CHECK_THROWS(bsc(-0.1));
  CHECK_THROWS(bec(1.5));
  CHECK_THROWS(channel_from_matrix({{0.5, 0.5}, {0.4, 0.7}}));  // row sums to 1.1
  CHECK_THROWS(channel_from_matrix({{1.2, -0.2}, {0.5, 0.5}}));
}

TEST_CASE("capacity closed forms and Blahut-Arimoto") {
  CHECK(capacity(bsc(0.5)) == doctest::Approx(0.0).epsilon(1e-12));
  // 1 - h2(0.3) = 0.118709100769307: direct evaluation of the closed form.
  CHECK(capacity(bsc(0.3)) == doctest::Approx(0.11870910076930738).epsilon(1e-9));
  CHECK(capacity(bec(0.25)) == doctest::Approx(0.75));

  // The same channels fed in as raw matrices exercise the iterative path.
  auto bsc_matrix = channel_from_matrix({{0.7, 0.3}, {0.3, 0.7}});
  CHECK(capacity(bsc_matrix) == doctest::Approx(0.11870910076930738).epsilon(1e-7));
  auto bec_matrix = channel_from_matrix({{0.75, 0.25, 0.0}, {0.0, 0.25, 0.75}});
  CHECK(capacity(bec_matrix) == doctest::Approx(0.75).epsilon(1e-7));

  // Asymmetric channel: capacity positive and below 1.
  auto z = channel_from_matrix({{1.0, 0.0}, {0.5, 0.5}});
  double cz = capacity(z);
  CHECK(cz > 0.3);
  CHECK(cz < 1.0);
}

TEST_CASE("sdpi closed forms and the conservative fallback") {
  auto b3 = sdpi_constant(bsc(0.3));
  CHECK(b3.value == doctest::Approx(0.16).epsilon(1e-12));
  CHECK(b3.exact);
  auto e25 = sdpi_constant(bec(0.25));
  CHECK(e25.value == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(e25.exact);
  auto generic = sdpi_constant(channel_from_matrix(
      {{0.5, 0.3, 0.2}, {0.2, 0.5, 0.3}, {0.3, 0.2, 0.5}}));
  CHECK(generic.value == 1.0);
  CHECK_FALSE(generic.exact);

  for (double p = 0.0; p <= 0.5 + 1e-9; p += 0.05) {
    CHECK(sdpi_constant(bsc(p)).value ==
          doctest::Approx((1 - 2 * p) * (1 - 2 * p)).epsilon(1e-12));
    CHECK(capacity(bsc(p)) == doctest::Approx(1.0 - binary_entropy(p)).epsilon(1e-9));
  }
}

TEST_CASE("sdpi_lower_estimate stays below the closed form and converges") {
  // From-below up to floating-point error in the ratio evaluation.
  double est = sdpi_lower_estimate(bsc(0.3), 1e-3);
  CHECK(est <= 0.16 + 1e-9);
  CHECK(est >= 0.159);

  CHECK(sdpi_lower_estimate(bsc(0.5), 1e-2) == doctest::Approx(0.0).epsilon(1e-12));

  double bec_est = sdpi_lower_estimate(bec(0.5), 1e-3);
  CHECK(bec_est <= 0.5 + 1e-9);
  CHECK(bec_est >= 0.499);

  // Diagnostic-from-below contract over a parameter grid.
  for (double p : {0.05, 0.15, 0.25, 0.35, 0.45}) {
    CHECK(sdpi_lower_estimate(bsc(p), 2e-3) <= sdpi_constant(bsc(p)).value + 1e-9);
    CHECK(sdpi_lower_estimate(bec(p), 2e-3) <= sdpi_constant(bec(p)).value + 1e-9);
  }

  auto big = channel_from_matrix(std::vector<std::vector<double>>(9, std::vector<double>(9, 1.0 / 9)));
  CHECK_THROWS(sdpi_lower_estimate(big, 1e-2));  // alphabet too large
}

TEST_CASE("tensor products") {
  auto single = tensor_product({bsc(0.0)});
  CHECK(single.transition == std::vector<double>{1, 0, 0, 1});

  auto pair = tensor_product({bsc(0.3), bsc(0.3)});
  CHECK(pair.input_size == 4);
  CHECK(pair.output_size == 4);
  CHECK(pair.k(0, 0) == doctest::Approx(0.49));   // both clean
  CHECK(pair.k(0, 3) == doctest::Approx(0.09));   // both flipped
  for (int x = 0; x < 4; ++x) {
    double row = 0;
    for (int y = 0; y < 4; ++y) row += pair.k(x, y);
    CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
  }

  std::vector<Channel> thirteen(13, bsc(0.1));
  CHECK_THROWS(tensor_product(thirteen));  // 8192 > 4096

  // Lemma-2 consistency: the two-point lower estimate of a product never
  // exceeds 1-(1-eta)^2.
  for (double p : {0.1, 0.3}) {
    auto prod = tensor_product({bsc(p), bsc(p)});
    double upper = sdpi_product_upper(sdpi_constant(bsc(p)).value, 2);
    // The 4-ary product exceeds the 8-input cap for the estimator? No: 4 <= 8.
    CHECK(sdpi_lower_estimate(prod, 5e-3) <= upper + 1e-9);
  }
  {
    auto prod = tensor_product({bec(0.4), bec(0.4)});
    double upper = sdpi_product_upper(0.6, 2);
    CHECK(sdpi_lower_estimate(prod, 5e-3) <= upper + 1e-9);
  }
}

TEST_CASE("sdpi_product_upper") {
  CHECK(sdpi_product_upper(0.0, 5) == 0.0);
  CHECK(sdpi_product_upper(1.0, 3) == 1.0);
  CHECK(sdpi_product_upper(0.16, 2) == doctest::Approx(0.2944).epsilon(1e-12));
  // Monotone in both arguments.
  double prev = 0.0;
  for (int m = 1; m <= 6; ++m) {
    double v = sdpi_product_upper(0.3, m);
    CHECK(v >= prev);
    prev = v;
  }
  prev = 0.0;
  for (double eta = 0.0; eta <= 1.0; eta += 0.1) {
    double v = sdpi_product_upper(eta, 3);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
  CHECK_THROWS(sdpi_product_upper(1.2, 2));
  CHECK_THROWS(sdpi_product_upper(0.5, 0));
}

TEST_CASE("capacity subadditivity under tensoring") {
  auto a = bsc(0.3);
  auto b = bec(0.25);
  auto ab = tensor_product({a, b});
  CHECK(capacity(ab) <= capacity(a) + capacity(b) + 1e-6);
  auto aa = tensor_product({a, a});
  CHECK(capacity(aa) <= 2 * capacity(a) + 1e-6);
}

namespace {

// Brute-force I(U;Y|V) for binary U,V,X and Y = X through `ch`, all in
// bits. The joint on (u,v,x) is given as 8 nonnegative weights.
double cond_mi_through(const Channel& ch, const std::vector<double>& joint, bool through) {
  // p(u,v,x,y) = p(u,v,x) K(y|x); through=false keeps Y = X.
  const int ny = through ? ch.output_size : 2;
  auto idx = [](int u, int v, int x) { return ((u * 2) + v) * 2 + x; };
  double total = 0;
  for (double w : joint) total += w;
  double mi = 0.0;
  for (int v = 0; v < 2; ++v) {
    double pv = 0;
    for (int u = 0; u < 2; ++u)
      for (int x = 0; x < 2; ++x) pv += joint[idx(u, v, x)] / total;
    if (pv == 0) continue;
    // I(U;Y|V=v)
    for (int u = 0; u < 2; ++u) {
      for (int y = 0; y < ny; ++y) {
        double puy = 0, pu = 0, py = 0;
        for (int uu = 0; uu < 2; ++uu)
          for (int x = 0; x < 2; ++x) {
            double w = joint[idx(uu, v, x)] / total / pv;
            double ky = through ? ch.k(x, y) : (x == y ? 1.0 : 0.0);
            py += w * ky;
            if (uu == u) {
              pu += w;
              puy += w * ky;
            }
          }
        if (puy > 0) mi += pv * puy * std::log2(puy / (pu * py));
      }
    }
  }
  return mi;
}

}  // namespace

TEST_CASE("conditional SDPI holds on enumerated joints (brute force)") {
  // Deterministic family of joint pmfs over binary (U,V,X).
  std::vector<std::vector<double>> joints;
  const double levels[] = {0.05, 0.3, 1.0, 2.3};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        std::vector<double> j(8);
        for (int i = 0; i < 8; ++i)
          j[size_t(i)] = levels[(i * 7 + a) % 4] * levels[(i * 3 + b) % 4] + 0.01 * double(c);
        joints.push_back(j);
      }
  for (double p : {0.1, 0.3}) {
    auto ch = bsc(p);
    double eta = sdpi_constant(ch).value;
    for (const auto& j : joints) {
      double lhs = cond_mi_through(ch, j, true);    // I(U;Y|V)
      double rhs = cond_mi_through(ch, j, false);   // I(U;X|V)
      CHECK(lhs <= eta * rhs + 1e-9);
    }
  }
}
