#include "diamond/diamond.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diamond/detail/paths.hpp"
#include "diamond/discrete.hpp"
#include "diamond/rng.hpp"

namespace diamond {

WeightTable build_weights(const MatrixPair& pair) {
  const auto& a = pair.a();
  const auto a_col_norms = a.col_norms();
  const auto b_row_norms = pair.b().row_norms();
  WeightTable w;
  w.entries.resize(a.nnz());
  long double total = 0.0L;
  for (Index k = 0; k < a.rows(); ++k) {
    for (std::size_t p = a.row_ptr()[k]; p < a.row_ptr()[k + 1]; ++p) {
      const double v = std::fabs(a.row_vals()[p]) * a_col_norms[a.row_cols()[p]] * b_row_norms[k];
      w.entries[p] = v;
      total += v;
    }
  }
  w.total = static_cast<double>(total);
  if (!(w.total > 0.0)) throw InfeasibleSampling("no three-paths: ‖W‖₁ = 0");
  return w;
}

LineCumulative::LineCumulative(std::span<const std::size_t> ptr, std::span<const double> vals)
    : ptr_(ptr), cum_(vals.size()) {
  for (std::size_t line = 0; line + 1 < ptr.size(); ++line) {
    const std::size_t lo = ptr[line], hi = ptr[line + 1];
    if (lo == hi) continue;
    long double norm = 0.0L;
    for (std::size_t p = lo; p < hi; ++p) norm += std::fabs(vals[p]);
    long double run = 0.0L;
    for (std::size_t p = lo; p < hi; ++p) {
      run += std::fabs(vals[p]);
      cum_[p] = std::min(1.0, static_cast<double>(run / norm));
    }
    cum_[hi - 1] = 1.0;
  }
}

std::size_t LineCumulative::draw(Index line, double u) const {
  const std::size_t lo = ptr_[line], hi = ptr_[line + 1];
  return lo + locate(std::span<const double>(cum_.data() + lo, hi - lo), u);
}

DiamondSampler::DiamondSampler(const MatrixPair& pair, Variant variant)
    : DiamondSampler(pair, build_weights(pair), variant) {}

DiamondSampler::DiamondSampler(const MatrixPair& pair, WeightTable weights, Variant variant)
    : pair_(pair), weights_(std::move(weights)), resolved_(resolve_variant(variant, pair)) {
  if (weights_.entries.size() != pair_.a().nnz())
    throw InputError("weight table does not match the pattern of A");
  if (!(weights_.total > 0.0)) throw InfeasibleSampling("no three-paths: ‖W‖₁ = 0");
  prepare();
}

void DiamondSampler::prepare() {
  if (resolved_.values == ValueKind::Binary) return;
  a_cols_ = LineCumulative(pair_.a().col_ptr(), pair_.a().col_vals());
  b_rows_ = LineCumulative(pair_.b().row_ptr(), pair_.b().row_vals());
}

namespace {

using detail::ThreePath;
using detail::sign_of;

std::size_t expected_cells(const MatrixPair& pair, const SamplingPlan& plan, Shape shape) {
  const std::uint64_t mn = std::uint64_t{pair.m()} * pair.n();
  const std::uint64_t s = shape == Shape::SymmetricSquare ? 2 * plan.s : plan.s;
  return static_cast<std::size_t>(std::min<std::uint64_t>(s, mn));
}

// Closure lookup and accumulation for one three-path.
inline void close_path(const ThreePath& path, const SparseMatrix& b, ResolvedVariant rv,
                       SampleAccumulator& acc) {
  const double bkj = b.value_at(path.kp, path.j);
  if (bkj == 0.0) return;
  ++acc.diamonds_closed;
  const double v = rv.values == ValueKind::Signed ? path.sign * bkj : bkj;
  if (rv.shape == Shape::SymmetricSquare) {
    acc.add(path.i, path.j, v / 2);
    acc.add(path.k, path.kp, v / 2);
  } else {
    acc.add(path.i, path.j, v);
  }
}

}  // namespace

SampleAccumulator DiamondSampler::sample(const SamplingPlan& plan) const {
  plan.validate();
  const auto& a = pair_.a();
  const auto& b = pair_.b();
  const bool binary = resolved_.values == ValueKind::Binary;
  const bool signed_values = resolved_.values == ValueKind::Signed;
  const std::size_t s = plan.s;

  RngStream center(plan.seed, StreamId::Center, plan.run);
  RngStream right(plan.seed, StreamId::Right, plan.run);
  RngStream left(plan.seed, StreamId::Left, plan.run);

  // Phase 1: center edges (k, i), sorted by storage position and hence by k.
  const auto positions = sample_sorted_indices(weights_.entries, weights_.total, s, center);
  std::vector<ThreePath> paths(s);
  {
    Index k = 0;
    const auto row_ptr = a.row_ptr();
    for (std::size_t l = 0; l < s; ++l) {
      const std::size_t p = positions[l];
      while (row_ptr[k + 1] <= p) ++k;
      paths[l].k = k;
      paths[l].i = a.row_cols()[p];
      paths[l].sign = signed_values ? sign_of(a.row_vals()[p]) : 1.0;
    }
  }

  // Phase 2: right endpoint j from row k of B; rows are visited in order.
  for (auto& path : paths) {
    const std::size_t q = binary ? draw_uniform(b.row_ptr(), path.k, right.uniform())
                                 : b_rows_.draw(path.k, right.uniform());
    path.j = b.row_cols()[q];
    if (signed_values) path.sign *= sign_of(b.row_vals()[q]);
  }

  // Phase 3: regroup by i, then left endpoint k' from column i of A.
  std::vector<ThreePath> scratch(s);
  detail::counting_sort(paths, scratch, a.cols(), [](const ThreePath& p) { return p.i; });
  for (auto& path : paths) {
    const std::size_t q = binary ? draw_uniform(a.col_ptr(), path.i, left.uniform())
                                 : a_cols_.draw(path.i, left.uniform());
    path.kp = a.col_rows()[q];
    if (signed_values) path.sign *= sign_of(a.col_vals()[q]);
  }

  // Phase 4: regroup by k' so closure lookups walk rows of B in order.
  detail::counting_sort(paths, scratch, a.rows(), [](const ThreePath& p) { return p.kp; });
  SampleAccumulator acc(pair_.m(), pair_.n(), expected_cells(pair_, plan, resolved_.shape));
  acc.paths_drawn = s;
  for (const auto& path : paths) close_path(path, b, resolved_, acc);

  if (resolved_.shape != Shape::Plain) acc.symmetrize();
  return acc;
}

SampleAccumulator DiamondSampler::sample_direct(const SamplingPlan& plan) const {
  plan.validate();
  const auto& a = pair_.a();
  const auto& b = pair_.b();
  const bool binary = resolved_.values == ValueKind::Binary;
  const bool signed_values = resolved_.values == ValueKind::Signed;

  RngStream center(plan.seed, StreamId::Center, plan.run);
  RngStream right(plan.seed, StreamId::Right, plan.run);
  RngStream left(plan.seed, StreamId::Left, plan.run);

  const auto cum = clamped_prefix_sums(weights_.entries, weights_.total);
  const auto row_ptr = a.row_ptr();
  SampleAccumulator acc(pair_.m(), pair_.n(), expected_cells(pair_, plan, resolved_.shape));
  acc.paths_drawn = plan.s;
  for (std::uint64_t l = 0; l < plan.s; ++l) {
    ThreePath path;
    const std::size_t p = locate(cum, std::max(center.uniform() * weights_.total,
                                               std::numeric_limits<double>::min()));
    path.k = static_cast<Index>(std::upper_bound(row_ptr.begin(), row_ptr.end(), p) -
                                row_ptr.begin() - 1);
    path.i = a.row_cols()[p];
    path.sign = signed_values ? sign_of(a.row_vals()[p]) : 1.0;

    const std::size_t q = binary ? draw_uniform(b.row_ptr(), path.k, right.uniform())
                                 : b_rows_.draw(path.k, right.uniform());
    path.j = b.row_cols()[q];
    if (signed_values) path.sign *= sign_of(b.row_vals()[q]);

    const std::size_t r = binary ? draw_uniform(a.col_ptr(), path.i, left.uniform())
                                 : a_cols_.draw(path.i, left.uniform());
    path.kp = a.col_rows()[r];
    if (signed_values) path.sign *= sign_of(a.col_vals()[r]);

    close_path(path, b, resolved_, acc);
  }
  if (resolved_.shape != Shape::Plain) acc.symmetrize();
  return acc;
}

SampleAccumulator sample_diamonds(const MatrixPair& pair, const WeightTable& weights,
                                  const SamplingPlan& plan) {
  return DiamondSampler(pair, weights, plan.variant).sample(plan);
}

double expected_estimate(const MatrixPair& pair, const WeightTable& weights, Index i, Index j) {
  const double c = column_dot(pair.a(), pair.b(), i, j);
  return c * c / weights.total;
}

}  // namespace diamond
