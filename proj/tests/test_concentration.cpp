#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "netcomp/concentration.hpp"

using namespace netcomp;

namespace {

NodeSet all_but(int n, std::initializer_list<int> keep_out) {
  NodeSet s;
  for (int v = 0; v < n; ++v) s.insert(v);
  for (int v : keep_out) s.erase(v);
  return s;
}

}  // namespace

TEST_CASE("binary entropy and divergence") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.3) == doctest::Approx(0.8812908992306927).epsilon(1e-12));
  CHECK(binary_divergence(0.3, 0.3) == doctest::Approx(0.0));
  CHECK(binary_divergence(0.5, 0.25) > 0.0);
  CHECK(std::isinf(binary_divergence(0.5, 0.0)));
  CHECK(std::isinf(binary_divergence(0.5, 1.0)));
  CHECK(binary_divergence(0.0, 0.0) == 0.0);
  CHECK(binary_divergence(1.0, 1.0) == 0.0);
}

TEST_CASE("levy_gaussian: exact erf value vs the linear bound") {
  auto g = levy_gaussian(2.0, 0.1);
  CHECK(g.exact == doctest::Approx(0.05637197779701662).epsilon(1e-9));
  CHECK(g.bound == doctest::Approx(0.05641895835477563).epsilon(1e-12));
  CHECK(g.exact <= g.bound);

  auto zero = levy_gaussian(1.0, 0.0);
  CHECK(zero.exact == 0.0);
  CHECK(zero.bound == 0.0);

  auto big = levy_gaussian(1.0, 1e6);
  CHECK(big.exact == doctest::Approx(1.0));
  CHECK(big.bound > 1.0);  // only small-eps tight

  // exact <= bound across a grid.
  for (double s2 : {0.25, 1.0, 4.0})
    for (double eps = 0.0; eps <= 2.0; eps += 0.125)
      CHECK(levy_gaussian(s2, eps).exact <= levy_gaussian(s2, eps).bound + 1e-15);
}

TEST_CASE("Bobkov-Chistyakov interval") {
  auto z = levy_logconcave_bound(1.0, 0.0);
  CHECK(z.lower == 0.0);
  CHECK(z.upper == 0.0);

  // Sum of two Uniform[0,1]: Var = 1/6; direct evaluation of the interval.
  auto tri = levy_logconcave_bound(1.0 / 6.0, 0.1);
  CHECK(tri.lower == doctest::Approx(0.14002800840280098).epsilon(1e-12));
  CHECK(tri.upper == doctest::Approx(0.48507125007266595).epsilon(1e-12));
  // True concentration of the triangular sum at the mode: 1-(1-eps)^2.
  double truth = 1.0 - 0.9 * 0.9;
  CHECK(truth == doctest::Approx(0.19));
  CHECK(tri.lower <= truth);
  CHECK(truth <= tri.upper);

  auto v = levy_logconcave_bound(1.0, 0.5);
  CHECK(v.lower == doctest::Approx(0.2773500981126146).epsilon(1e-12));
  CHECK(v.upper == doctest::Approx(0.9607689228305228).epsilon(1e-12));
  CHECK(v.lower <= v.upper);
}

TEST_CASE("Erdos Littlewood-Offord bound") {
  CHECK(levy_erdos_LO(4) == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(levy_erdos_LO(1) == doctest::Approx(0.5).epsilon(1e-12));
  double k100 = levy_erdos_LO(100);
  double stirling = std::sqrt(2.0 / (100.0 * M_PI));
  CHECK(std::fabs(k100 - stirling) / stirling < 0.01);
  CHECK_THROWS(levy_erdos_LO(0));
}

TEST_CASE("third-moment bound") {
  CHECK(levy_third_moment(0.0, 1.0, 1.0, 1e-12, 1.0, 4) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(levy_third_moment(0.1, 1.0, 1.0, 0.1, 1.0, 100) == doctest::Approx(0.02).epsilon(1e-12));
  // 1/sqrt(setsize) scaling.
  double one = levy_third_moment(0.1, 1.0, 1.0, 0.1, 1.0, 1);
  double four = levy_third_moment(0.1, 1.0, 1.0, 0.1, 1.0, 4);
  CHECK(four == doctest::Approx(one / 2.0));
}

TEST_CASE("vector Levy bound via stable rank") {
  std::vector<std::vector<double>> eye4(4, std::vector<double>(4, 0.0));
  for (int i = 0; i < 4; ++i) eye4[size_t(i)][size_t(i)] = 1.0;
  auto r = levy_vector_rv(eye4, 0.5, 1.0, 0.1);
  CHECK(r.stable_rank == 4);

  std::vector<std::vector<double>> rank1{{1, 2, 3}, {2, 4, 6}};
  auto r1 = levy_vector_rv(rank1, 0.3, 1.0, 0.1);
  CHECK(r1.stable_rank == 1);
  CHECK(r1.bound == doctest::Approx(std::pow(0.3, 0.9)));

  std::vector<std::vector<double>> diag{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto rd = levy_vector_rv(diag, 0.1, 1.0, 0.1);
  CHECK(rd.hs_norm_sq == doctest::Approx(6.0));
  CHECK(rd.spectral_norm_sq == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(rd.stable_rank == 1);  // floor(6/4)
  CHECK(rd.bound == doctest::Approx(std::pow(0.1, 0.9)).epsilon(1e-9));

  std::vector<std::vector<double>> zero{{0, 0}, {0, 0}};
  CHECK_THROWS(levy_vector_rv(zero, 0.1, 1.0, 0.1));
}

TEST_CASE("expected_csbp closed forms") {
  Distortion hamming{Distortion::Kind::Hamming, 1.0};

  // Two-node parity: L = 1/2 whatever the conditioning value.
  std::vector<ObservationModel> two(2, bernoulli(0.5));
  auto p2 = expected_csbp(two, parity_function(), hamming, {1}, 0.0);
  CHECK(p2.value == doctest::Approx(0.5));
  CHECK(p2.method == "closed_form");

  // i.i.d. uniform over {1..M}, identity target: (1/M)^{|S^c|}.
  const int m_size = 5;
  std::vector<double> support, pmf;
  for (int i = 1; i <= m_size; ++i) {
    support.push_back(double(i));
    pmf.push_back(1.0 / m_size);
  }
  std::vector<ObservationModel> unif(4, finite_dist(support, pmf));
  auto idl = expected_csbp(unif, identity_function(), hamming, {0}, 0.0);
  CHECK(idl.value == doctest::Approx(std::pow(1.0 / m_size, 3)).epsilon(1e-12));

  // Rademacher sum with unit coefficients, all four nodes unconditioned.
  std::vector<ObservationModel> rad(4, rademacher());
  Distortion abs{Distortion::Kind::Absolute, std::nullopt};
  auto rl = expected_csbp(rad, linear_function({1, 1, 1, 1}), abs, {}, 0.0);
  CHECK(rl.value == doctest::Approx(0.375).epsilon(1e-12));  // 6/16 enumerated
  CHECK(rl.method == "enumeration");

  // Gaussian sum: closed form through the error function.
  std::vector<ObservationModel> gauss(3, gaussian(0.0, 1.0));
  auto gl = expected_csbp(gauss, linear_function({1, 1, 1}), abs, {2}, 0.1);
  CHECK(gl.method == "closed_form");
  CHECK(gl.value == doctest::Approx(levy_gaussian(2.0, 0.1).exact));

  // Quadratic distortion reduces to absolute at sqrt(eps).
  Distortion quad{Distortion::Kind::Quadratic, std::nullopt};
  auto gq = expected_csbp(gauss, linear_function({1, 1, 1}), quad, {2}, 0.01);
  CHECK(gq.value == doctest::Approx(levy_gaussian(2.0, 0.1).exact));

  // eps >= 1 saturates hamming targets.
  CHECK(expected_csbp(two, parity_function(), hamming, {1}, 1.0).value == 1.0);
  CHECK_THROWS(expected_csbp(two, parity_function(), hamming, {1}, -1.0));
}

TEST_CASE("expected_csbp Monte Carlo agrees with enumeration") {
  // Same discrete sum evaluated exactly and by forcing the MC fallback
  // with a tiny enumeration cap.
  std::vector<ObservationModel> rad(6, rademacher());
  Distortion abs{Distortion::Kind::Absolute, std::nullopt};
  auto f = linear_function({1, 1, 1, 1, 1, 1});
  auto exact = expected_csbp(rad, f, abs, {0}, 1.0);
  CsbpOptions opts;
  opts.enumeration_cap = 2;
  opts.samples = 200000;
  auto mc = expected_csbp(rad, f, abs, {0}, 1.0, opts);
  CHECK(mc.method == "monte_carlo");
  REQUIRE(mc.ci.has_value());
  // The MC window maximization is upward-biased by at most the empirical
  // fluctuation; a generous CI-based band covers it.
  CHECK(mc.value >= exact.value - 0.01);
  CHECK(mc.value <= exact.value + 0.01);

  // Determinism of the seeded stream.
  auto mc2 = expected_csbp(rad, f, abs, {0}, 1.0, opts);
  CHECK(mc.value == mc2.value);
}

TEST_CASE("CSBP monotonicity in the conditioning set and in eps") {
  Distortion abs{Distortion::Kind::Absolute, std::nullopt};
  Distortion hamming{Distortion::Kind::Hamming, 1.0};
  std::vector<ObservationModel> models{rademacher(), bernoulli(0.3), rademacher(),
                                       finite_dist({0, 1, 3}, {0.2, 0.5, 0.3})};
  auto f = linear_function({1.0, -2.0, 0.5, 1.5});
  const int n = int(models.size());

  // All pairs S subset of S'.
  for (int mask = 0; mask < (1 << n); ++mask) {
    NodeSet s;
    for (int v = 0; v < n; ++v)
      if (mask & (1 << v)) s.insert(v);
    for (int sup = mask;; sup = (sup + 1) | mask) {
      if (sup >= (1 << n)) break;
      NodeSet sp;
      for (int v = 0; v < n; ++v)
        if (sup & (1 << v)) sp.insert(v);
      double l1 = expected_csbp(models, f, abs, s, 0.25).value;
      double l2 = expected_csbp(models, f, abs, sp, 0.25).value;
      CHECK(l1 <= l2 + 1e-12);
      if (sup == (1 << n) - 1) break;
    }
  }

  // Nondecreasing in eps.
  double prev = -1.0;
  for (double eps = 0.0; eps <= 4.0; eps += 0.25) {
    double l = expected_csbp(models, f, abs, {1}, eps).value;
    CHECK(l >= prev - 1e-15);
    prev = l;
  }

  // Same law for the parity closed form.
  std::vector<ObservationModel> bits(5, bernoulli(0.4));
  double lfull = expected_csbp(bits, parity_function(), hamming, all_but(5, {0}), 0.0).value;
  double lsmall = expected_csbp(bits, parity_function(), hamming, {1}, 0.0).value;
  CHECK(lsmall <= lfull + 1e-12);
}

TEST_CASE("Erdos dominance over random unit-magnitude coefficients") {
  std::mt19937_64 gen(20240901);
  std::uniform_real_distribution<double> mag(0.0, 2.0);
  Distortion abs{Distortion::Kind::Absolute, std::nullopt};
  for (int trial = 0; trial < 1000; ++trial) {
    int k = 1 + int(gen() % 16);
    std::vector<double> a(static_cast<size_t>(k));
    for (auto& c : a) c = (gen() & 1 ? 1.0 : -1.0) * (1.0 + mag(gen));
    std::vector<ObservationModel> models(static_cast<size_t>(k), rademacher());
    double exact = expected_csbp(models, linear_function(a), abs, {}, 1.0).value;
    CHECK(exact <= levy_erdos_LO(k) + 1e-12);
  }
}

TEST_CASE("Bobkov-Chistyakov sandwich on Monte Carlo uniform sums") {
  Distortion abs{Distortion::Kind::Absolute, std::nullopt};
  for (int k : {2, 3, 4}) {
    std::vector<ObservationModel> models(static_cast<size_t>(k), uniform_interval(0.0, 1.0));
    std::vector<double> ones(static_cast<size_t>(k), 1.0);
    CsbpOptions opts;
    opts.samples = 1000000;
    double rho = 0.1;
    auto est = expected_csbp(models, linear_function(ones), abs, {}, rho, opts);
    REQUIRE(est.method == "monte_carlo");
    auto iv = levy_logconcave_bound(double(k) / 12.0, rho);
    double sigma_hat = std::sqrt(est.value * (1.0 - est.value) / double(opts.samples));
    CHECK(est.value >= iv.lower - 3.0 * sigma_hat);
    CHECK(est.value <= iv.upper + 3.0 * sigma_hat);
  }
}

TEST_CASE("log-concave consequence: log 1/E[L] >= log 1/(2 e eps) + h(Z|W_S)") {
  // Sum of two Uniform[0,1] conditioned away: triangular density with
  // differential entropy 1/2 nats.
  const double h_bits = 0.5 / std::log(2.0);
  for (double eps : {0.02, 0.05, 0.1, 0.2}) {
    double exact_l = 1.0 - (1.0 - eps) * (1.0 - eps);
    CHECK(std::log2(1.0 / exact_l) >=
          std::log2(1.0 / (2.0 * std::exp(1.0) * eps)) + h_bits - 1e-12);
  }
}

TEST_CASE("entropy quantities for discrete targets") {
  std::vector<ObservationModel> bits{bernoulli(0.5), bernoulli(0.5), bernoulli(0.25)};
  auto hz = entropy_z_bits(bits, parity_function());
  REQUIRE(hz.has_value());
  CHECK(*hz == doctest::Approx(1.0));  // one fair bit in the parity

  auto hcond = cond_entropy_z_bits(bits, parity_function(), {0, 1});
  REQUIRE(hcond.has_value());
  CHECK(*hcond == doctest::Approx(binary_entropy(0.25)));

  auto mi = mutual_information_z_ws_bits(bits, parity_function(), {0, 1});
  REQUIRE(mi.has_value());
  CHECK(*mi == doctest::Approx(1.0 - binary_entropy(0.25)));

  auto hobs = cond_entropy_obs_bits(bits, {0});
  REQUIRE(hobs.has_value());
  CHECK(*hobs == doctest::Approx(1.0 + binary_entropy(0.25)));

  std::vector<ObservationModel> mixed{bernoulli(0.5), gaussian(0, 1)};
  CHECK_FALSE(cond_entropy_obs_bits(mixed, {}).has_value());

  // Linear of two Rademacher: atoms -2,0,2 with probs 1/4,1/2,1/4.
  std::vector<ObservationModel> rr(2, rademacher());
  auto z = z_distribution(rr, linear_function({1, 1}));
  REQUIRE(z.size() == 3);
  CHECK(z[1].prob == doctest::Approx(0.5));
  auto hl = entropy_z_bits(rr, linear_function({1, 1}));
  CHECK(*hl == doctest::Approx(1.5));
}
