#include "diamond/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace diamond {

ResultSet postprocess(const SampleAccumulator& acc, const MatrixPair& pair,
                      const SamplingPlan& plan) {
  plan.validate();
  ResultSet out;
  out.requested_t = plan.t;
  out.s = plan.s;
  out.t_prime = plan.t_prime;
  out.seed = plan.seed;
  out.variant = std::string(to_string(plan.variant));

  auto cells = acc.cells();
  if (plan.exclude_diagonal && pair.is_gram())
    std::erase_if(cells, [](const Cell& c) { return c.i >= c.j; });
  if (cells.empty()) {
    out.empty_input = true;
    out.fewer_than_requested = true;
    out.fewer_nonzero = true;
    return out;
  }

  const auto by_x = [](const Cell& a, const Cell& b) { return ranks_before(a.x, a.i, a.j, b.x, b.i, b.j); };
  const std::size_t budget = std::min(plan.t_prime, cells.size());
  if (budget < cells.size()) {
    std::nth_element(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(budget),
                     cells.end(), by_x);
    cells.resize(budget);
  }
  std::sort(cells.begin(), cells.end(), by_x);

  std::vector<RankedPair> rescored;
  rescored.reserve(cells.size());
  for (const auto& c : cells)
    rescored.push_back({c.i, c.j, column_dot(pair.a(), pair.b(), c.i, c.j), c.x});
  std::sort(rescored.begin(), rescored.end(), [](const RankedPair& a, const RankedPair& b) {
    return ranks_before(a.exact, a.i, a.j, b.exact, b.i, b.j);
  });
  if (rescored.size() > plan.t) rescored.resize(plan.t);

  out.fewer_than_requested = rescored.size() < plan.t;
  out.fewer_nonzero = static_cast<std::size_t>(std::count_if(
                          rescored.begin(), rescored.end(),
                          [](const RankedPair& r) { return r.exact != 0.0; })) < plan.t;
  out.entries = std::move(rescored);
  return out;
}

void ConcentrationQuery::validate() const {
  if (!(K > 0.0) || !(epsilon > 0.0) || !(delta > 0.0) || !(tau > 0.0) || !(c > 0.0))
    throw InputError("concentration parameters must be positive");
  if (epsilon > 1.0) throw InputError("epsilon must be at most 1");
  if (delta >= 1.0) throw InputError("delta must be below 1");
}

namespace {

std::uint64_t ceil_count(double v) {
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(v)));
}

}  // namespace

std::uint64_t samples_for_entry(const ConcentrationQuery& q, double w_total) {
  q.validate();
  if (!(w_total > 0.0)) throw InputError("‖W‖₁ must be positive");
  return ceil_count(3.0 * q.K * w_total * std::log(2.0 / q.delta) /
                    (q.epsilon * q.epsilon * q.c * q.c));
}

std::uint64_t samples_for_separation(const ConcentrationQuery& q, double w_total,
                                     std::uint64_t m, std::uint64_t n) {
  q.validate();
  if (!(w_total > 0.0)) throw InputError("‖W‖₁ must be positive");
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  return ceil_count(12.0 * q.K * w_total * std::log(2.0 * mn / q.delta) / (q.tau * q.tau));
}

double estimated_samples(double w_total, double max_abs_c) {
  return w_total / (max_abs_c * max_abs_c);
}

DatasetDiagnostics dataset_diagnostics([[maybe_unused]] const MatrixPair& pair,
                                       const WeightTable& weights, const ResultSet& exact_top,
                                       std::optional<double> closure) {
  if (exact_top.entries.empty()) throw InputError("diagnostics need at least one exact entry");
  DatasetDiagnostics d;
  d.max_abs_c = std::fabs(exact_top.entries.front().exact);
  d.w_total = weights.total;
  d.est_samples = estimated_samples(d.w_total, d.max_abs_c);
  d.closure_rate = closure;
  return d;
}

}  // namespace diamond
