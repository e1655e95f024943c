#include "diamond/wedge.hpp"

#include <algorithm>

#include "diamond/detail/paths.hpp"
#include "diamond/discrete.hpp"
#include "diamond/rng.hpp"

namespace diamond {

WedgeWeightVector build_wedge_weights(const MatrixPair& pair) {
  const auto an = pair.a().row_norms();
  const auto bn = pair.b().row_norms();
  WedgeWeightVector w;
  w.weights.resize(pair.shared_dim());
  long double total = 0.0L;
  for (Index k = 0; k < pair.shared_dim(); ++k) {
    w.weights[k] = an[k] * bn[k];
    total += w.weights[k];
  }
  w.total = static_cast<double>(total);
  if (!(w.total > 0.0)) throw InfeasibleSampling("no wedges: ‖w‖₁ = 0");
  return w;
}

WedgeSampler::WedgeSampler(const MatrixPair& pair, Variant variant)
    : pair_(pair), weights_(build_wedge_weights(pair)), resolved_(resolve_variant(variant, pair)) {
  // There is no closing edge to split, so the symmetric-square shape reduces
  // to plain symmetrization.
  if (resolved_.shape == Shape::SymmetricSquare) resolved_.shape = Shape::Gram;
  if (resolved_.values != ValueKind::Binary) {
    a_rows_ = LineCumulative(pair_.a().row_ptr(), pair_.a().row_vals());
    b_rows_ = LineCumulative(pair_.b().row_ptr(), pair_.b().row_vals());
  }
}

SampleAccumulator WedgeSampler::sample(const SamplingPlan& plan) const {
  plan.validate();
  const auto& a = pair_.a();
  const auto& b = pair_.b();
  const bool binary = resolved_.values == ValueKind::Binary;
  const bool signed_values = resolved_.values == ValueKind::Signed;

  RngStream center(plan.seed, StreamId::Center, plan.run);
  RngStream left(plan.seed, StreamId::Left, plan.run);
  RngStream right(plan.seed, StreamId::Right, plan.run);

  const auto centers = sample_sorted_indices(weights_.weights, weights_.total, plan.s, center);
  const std::uint64_t mn = std::uint64_t{pair_.m()} * pair_.n();
  SampleAccumulator acc(pair_.m(), pair_.n(),
                        static_cast<std::size_t>(std::min<std::uint64_t>(plan.s, mn)));
  acc.paths_drawn = plan.s;
  acc.diamonds_closed = plan.s;
  for (const std::size_t kk : centers) {
    const auto k = static_cast<Index>(kk);
    const std::size_t p = binary ? draw_uniform(a.row_ptr(), k, left.uniform())
                                 : a_rows_.draw(k, left.uniform());
    const std::size_t q = binary ? draw_uniform(b.row_ptr(), k, right.uniform())
                                 : b_rows_.draw(k, right.uniform());
    const double v = signed_values
                         ? detail::sign_of(a.row_vals()[p]) * detail::sign_of(b.row_vals()[q])
                         : 1.0;
    acc.add(a.row_cols()[p], b.row_cols()[q], v);
  }
  if (resolved_.shape != Shape::Plain) acc.symmetrize();
  return acc;
}

SampleAccumulator sample_wedges(const MatrixPair& pair, const SamplingPlan& plan) {
  return WedgeSampler(pair, plan.variant).sample(plan);
}

}  // namespace diamond
