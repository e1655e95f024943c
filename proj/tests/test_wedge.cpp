#include <doctest.h>

#include "diamond/synthetic.hpp"
#include "diamond/wedge.hpp"
#include "support/oracles.hpp"

using namespace diamond;

namespace {

SamplingPlan plan_for(std::uint64_t s, std::uint64_t seed) {
  SamplingPlan p;
  p.s = s;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("wedge weights of the small pair") {
  const auto pair = oracle::small_pair();
  const auto w = build_wedge_weights(pair);
  CHECK(w.weights == std::vector<double>{2, 4});
  CHECK(w.total == 6);
  double sum_c = 0;
  for (const auto& row : oracle::product(pair))
    for (double c : row) sum_c += c;
  CHECK(w.total == sum_c);
}

TEST_CASE("wedge mass identity on nonnegative inputs") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto pair = oracle::make_pair(oracle::integer_sparse(9, 7, 0.5, 4, true, seed),
                                        oracle::integer_sparse(9, 8, 0.5, 4, true, seed + 30));
    double sum_c = 0;
    for (const auto& row : oracle::product(pair))
      for (double c : row) sum_c += c;
    if (sum_c == 0) continue;
    CHECK(build_wedge_weights(pair).total == doctest::Approx(sum_c));
  }
}

TEST_CASE("zero matrix has no wedges") {
  const auto zero = oracle::make_pair(SparseMatrix::from_triplets(3, 2, {}),
                                      SparseMatrix::from_triplets(3, 2, {}));
  CHECK_THROWS_AS(build_wedge_weights(zero), InfeasibleSampling);
  CHECK_THROWS_AS(WedgeSampler{zero}, InfeasibleSampling);
}

TEST_CASE("singleton wedges") {
  const auto acc = sample_wedges(oracle::singleton_pair(), plan_for(77, 1));
  CHECK(acc.at(0, 0) == 77);
  CHECK(closure_rate(acc) == 1.0);
}

TEST_CASE("small pair wedge estimate at s = 1e6") {
  const auto acc = sample_wedges(oracle::small_pair(), plan_for(1000000, 3));
  // Binary: x_01 counts wedges on (0,1), probability c / ‖w‖₁ = 2/6.
  CHECK(oracle::within_binomial(acc.at(0, 1), 1e6, 2.0 / 6));
  CHECK(acc.at(0, 1) * 6 / 1e6 == doctest::Approx(2).epsilon(0.01));
  CHECK(acc.sum() == 1e6);
}

TEST_CASE("nonnegative wedges increment by one") {
  const auto pair = oracle::make_pair(synthetic::random_dense(5, 4, 0.5, 3, 1),
                                      synthetic::random_dense(5, 3, 0.5, 3, 2));
  const auto acc = sample_wedges(pair, plan_for(12345, 5));
  CHECK(acc.sum() == 12345);
  for (const auto& c : acc.cells()) CHECK(c.x > 0);
}

TEST_CASE("signed wedge estimates are unbiased") {
  const auto pair = oracle::make_pair(oracle::signed_dense(4, 3, 3), oracle::signed_dense(4, 3, 4));
  const WedgeSampler sampler(pair);
  const double w = sampler.weights().total;
  const auto c = oracle::product(pair);
  const int runs = 60;
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) {
      double sum = 0, sq = 0;
      for (int r = 0; r < runs; ++r) {
        const double y = sampler.sample(plan_for(20000, 500 + r)).at(i, j) * w / 20000;
        sum += y;
        sq += y * y;
      }
      const double mean = sum / runs;
      const double se = std::sqrt(std::max(0.0, sq / runs - mean * mean) / (runs - 1));
      CHECK(std::fabs(mean - c[i][j]) <= 4 * se + 1e-12);
    }
}

TEST_CASE("planted pair hit ratio is c / ‖w‖₁") {
  const auto p = synthetic::planted_pair(20, 20, 1, 10);
  const auto pair = validate_pair(p.a, p.b);
  const WedgeSampler sampler(pair);
  const double w = sampler.weights().total;
  const double s = 200000;
  const auto acc = sampler.sample(plan_for(200000, 9));
  CHECK(oracle::within_binomial(acc.at(0, 0), s, p.planted_c / w));
  CHECK(oracle::within_binomial(acc.at(3, 4), s, p.background_c / w));
}

TEST_CASE("gram wedges are symmetrized") {
  const auto pair = oracle::make_gram(oracle::integer_sparse(8, 6, 0.5, 3, false, 2));
  const auto acc = sample_wedges(pair, plan_for(4000, 1));
  for (const auto& c : acc.cells()) CHECK(acc.at(c.j, c.i) == c.x);
}
