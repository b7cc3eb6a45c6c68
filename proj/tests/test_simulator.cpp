#include <doctest.h>

#include <cmath>

#include "netcomp/simulator.hpp"
#include "netcomp/stats.hpp"

using namespace netcomp;

namespace {

struct TwoNode {
  Network net;
  std::vector<ObservationModel> models;
  FunctionSpec f;
  Distortion dist;
  TwoNode(double p)
      : net(two_node_net(bsc(p))),
        models(2, bernoulli(0.5)),
        f(parity_function()),
        dist{Distortion::Kind::Hamming, 1.0} {}
};

}  // namespace

TEST_CASE("analytic repetition failure probabilities") {
  CHECK(analytic_repetition_parity(0.3, 5) == doctest::Approx(0.16308).epsilon(1e-12));
  CHECK(analytic_repetition_parity(0.3, 9) == doctest::Approx(0.09880866).epsilon(1e-9));
  CHECK(analytic_repetition_parity(0.0, 7) == 0.0);
  CHECK(analytic_repetition_parity(0.3, 0) == doctest::Approx(0.5));
  // Even T with ties toward 0 matches the preceding odd T.
  CHECK(analytic_repetition_parity(0.3, 8) == doctest::Approx(analytic_repetition_parity(0.3, 7)));
  CHECK_THROWS(analytic_repetition_parity(0.7, 3));
}

TEST_CASE("empirical computation time by analytic certification") {
  TwoNode prob(0.3);
  SimOptions opts;
  auto t9 = empirical_computation_time(prob.net, prob.models, prob.f, prob.dist,
                                       parity_repetition(), 0.0, 0.1, 100, opts);
  REQUIRE(t9.rounds.has_value());
  CHECK(*t9.rounds == 9);
  CHECK(t9.analytic);

  auto t5 = empirical_computation_time(prob.net, prob.models, prob.f, prob.dist,
                                       parity_repetition(), 0.0, 0.2, 100, opts);
  CHECK(*t5.rounds == 5);  // T=3,4 give 0.216 > 0.2

  auto t0 = empirical_computation_time(prob.net, prob.models, prob.f, prob.dist,
                                       parity_repetition(), 0.0, 0.6, 100, opts);
  CHECK(*t0.rounds == 0);  // guessing already meets delta >= 1/2

  auto none = empirical_computation_time(prob.net, prob.models, prob.f, prob.dist,
                                         parity_repetition(), 0.0, 1e-9, 10, opts);
  CHECK_FALSE(none.rounds.has_value());
}

TEST_CASE("T=0 run: estimates come from the raw observations") {
  TwoNode prob(0.3);
  SimOptions opts;
  opts.samples = 20000;
  auto trial = run_algorithm(prob.net, prob.models, prob.f, prob.dist, parity_repetition(), 0,
                             0.0, opts);
  for (int v = 0; v < 2; ++v) {
    CHECK(trial.p_hat[size_t(v)] == doctest::Approx(0.5).epsilon(0.05));
    CHECK(trial.ci99[size_t(v)].first <= 0.5);
    CHECK(trial.ci99[size_t(v)].second >= 0.5);
  }
}

TEST_CASE("noiseless chain relay succeeds in exactly n-1 rounds") {
  for (int n : {3, 5}) {
    auto net = chain_net(n, bsc(0.0));
    std::vector<ObservationModel> models(size_t(n), bernoulli(0.5));
    Distortion d{Distortion::Kind::Hamming, 1.0};
    SimOptions opts;
    opts.samples = 500;
    auto ok = run_algorithm(net, models, identity_function(), d, chain_relay(), n - 1, 0.0, opts);
    for (int v = 0; v < n; ++v) CHECK(ok.failures[size_t(v)] == 0);
    // One round less: the far end cannot know everything.
    auto bad = run_algorithm(net, models, identity_function(), d, chain_relay(), n - 2, 0.0, opts);
    CHECK(bad.failures[0] > 0);
  }
}

TEST_CASE("noisy repetition matches the binomial oracle") {
  TwoNode prob(0.3);
  SimOptions opts;
  opts.samples = 100000;
  for (int t : {3, 5, 9}) {
    auto trial =
        run_algorithm(prob.net, prob.models, prob.f, prob.dist, parity_repetition(), t, 0.0, opts);
    double expect = analytic_repetition_parity(0.3, t);
    double band = 4.0 * std::sqrt(expect * (1.0 - expect) / double(opts.samples));
    for (int v = 0; v < 2; ++v)
      CHECK(std::fabs(trial.p_hat[size_t(v)] - expect) <= band);
  }
}

TEST_CASE("channel marginals track the crossover probability") {
  TwoNode prob(0.3);
  SimOptions opts;
  opts.samples = 50000;
  auto trial =
      run_algorithm(prob.net, prob.models, prob.f, prob.dist, parity_repetition(), 4, 0.0, opts);
  for (size_t e = 0; e < trial.edge_uses.size(); ++e) {
    REQUIRE(trial.edge_uses[e] > 0);
    double rate = double(trial.edge_flips[e]) / double(trial.edge_uses[e]);
    double sigma = std::sqrt(0.3 * 0.7 / double(trial.edge_uses[e]));
    CHECK(std::fabs(rate - 0.3) <= 4.0 * sigma);
  }
}

TEST_CASE("determinism: identical seeds and any worker count") {
  TwoNode prob(0.2);
  SimOptions one;
  one.samples = 20000;
  one.seed = 777;
  one.workers = 1;
  SimOptions four = one;
  four.workers = 4;
  auto a = run_algorithm(prob.net, prob.models, prob.f, prob.dist, parity_repetition(), 5, 0.0, one);
  auto b = run_algorithm(prob.net, prob.models, prob.f, prob.dist, parity_repetition(), 5, 0.0, four);
  CHECK(a.failures == b.failures);
  CHECK(a.edge_flips == b.edge_flips);

  SimOptions other = one;
  other.seed = 778;
  auto c =
      run_algorithm(prob.net, prob.models, prob.f, prob.dist, parity_repetition(), 5, 0.0, other);
  CHECK(a.failures != c.failures);
}

TEST_CASE("custom algorithm hooks") {
  // Send the own bit once; the estimator echoes the received bit XOR own.
  TwoNode prob(0.0);
  auto alg = custom_algorithm(
      [](int, int, double w, const ReceivedHistory&) {
        return std::vector<int>{w > 0.5 ? 1 : 0};
      },
      [](int, double w, const ReceivedHistory& hist) {
        int own = w > 0.5 ? 1 : 0;
        int other = hist.empty() || hist[0].empty() ? 0 : hist[0][0];
        return std::vector<double>{double(own ^ other)};
      });
  SimOptions opts;
  opts.samples = 2000;
  auto trial = run_algorithm(prob.net, prob.models, prob.f, prob.dist, alg, 1, 0.0, opts);
  CHECK(trial.failures[0] == 0);
  CHECK(trial.failures[1] == 0);
}

TEST_CASE("precondition failures") {
  TwoNode prob(0.2);
  SimOptions opts;
  CHECK_THROWS(run_algorithm(prob.net, prob.models, prob.f, prob.dist, parity_repetition(), -1,
                             0.0, opts));
  // Chain relay on a non-chain topology.
  auto ring = ring_net(4, bsc(0.1));
  std::vector<ObservationModel> models(4, bernoulli(0.5));
  Distortion d{Distortion::Kind::Hamming, 1.0};
  CHECK_THROWS(run_algorithm(ring, models, identity_function(), d, chain_relay(), 3, 0.0, opts));
  // Parity repetition needs BSC edges.
  auto becnet = two_node_net(bec(0.2));
  std::vector<ObservationModel> two(2, bernoulli(0.5));
  CHECK_THROWS(run_algorithm(becnet, two, parity_function(), d, parity_repetition(), 2, 0.0, opts));
}

TEST_CASE("repetition times over the certification grid") {
  // Smallest certified T from the binomial oracle at two grid corners.
  CHECK(*empirical_computation_time(two_node_net(bsc(0.1)), {bernoulli(0.5), bernoulli(0.5)},
                                    parity_function(), {Distortion::Kind::Hamming, 1.0},
                                    parity_repetition(), 0.0, 0.05, 100, {})
             .rounds == 3);
  CHECK(*empirical_computation_time(two_node_net(bsc(0.4)), {bernoulli(0.5), bernoulli(0.5)},
                                    parity_function(), {Distortion::Kind::Hamming, 1.0},
                                    parity_repetition(), 0.0, 0.2, 400, {})
             .rounds == 17);
}
