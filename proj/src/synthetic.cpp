#include "diamond/synthetic.hpp"

#include <algorithm>
#include <vector>

#include "diamond/rng.hpp"

namespace diamond::synthetic {

namespace {

Index below(RngStream& rng, Index bound) {
  auto v = static_cast<Index>(rng.uniform() * bound);
  return v >= bound ? bound - 1 : v;
}

// per_col distinct rows from [0, rows), by partial Fisher-Yates on a scratch
// permutation.
void distinct_rows(RngStream& rng, Index rows, Index per_col, std::vector<Index>& perm,
                   std::vector<Index>& out) {
  out.clear();
  for (Index r = 0; r < per_col && r < rows; ++r) {
    const Index pick = r + below(rng, rows - r);
    std::swap(perm[r], perm[pick]);
    out.push_back(perm[r]);
  }
}

}  // namespace

SparseMatrix random_dense(Index rows, Index cols, double lo, double hi, std::uint64_t seed) {
  RngStream rng(seed, StreamId::Aux);
  std::vector<double> data(std::size_t{rows} * cols);
  for (auto& v : data) {
    do {
      v = lo + (hi - lo) * (rng.uniform() - 0x1.0p-53);
    } while (v == 0.0);
  }
  return SparseMatrix::from_dense(rows, cols, data);
}

SparseMatrix random_sparse(Index rows, Index cols, Index per_col, bool binary,
                           std::uint64_t seed) {
  RngStream rng(seed, StreamId::Aux);
  std::vector<Index> perm(rows);
  for (Index r = 0; r < rows; ++r) perm[r] = r;
  std::vector<Index> picked;
  std::vector<Triplet> entries;
  entries.reserve(std::size_t{cols} * per_col);
  for (Index c = 0; c < cols; ++c) {
    distinct_rows(rng, rows, per_col, perm, picked);
    for (Index r : picked) entries.push_back({r, c, binary ? 1.0 : 1.0 + 4.0 * (rng.uniform() - 0x1.0p-53)});
  }
  return SparseMatrix::from_triplets(rows, cols, std::move(entries));
}

PlantedPair planted_pair(Index m, Index n, Index background, Index factor, Index planted_i,
                         Index planted_j) {
  const Index extra = (factor - 1) * background;
  const Index d = background + extra;
  std::vector<Triplet> ea, eb;
  for (Index k = 0; k < background; ++k) {
    for (Index i = 0; i < m; ++i) ea.push_back({k, i, 1.0});
    for (Index j = 0; j < n; ++j) eb.push_back({k, j, 1.0});
  }
  for (Index k = background; k < d; ++k) {
    ea.push_back({k, planted_i, 1.0});
    eb.push_back({k, planted_j, 1.0});
  }
  PlantedPair p;
  p.a = std::make_shared<const SparseMatrix>(SparseMatrix::from_triplets(d, m, std::move(ea)));
  p.b = std::make_shared<const SparseMatrix>(SparseMatrix::from_triplets(d, n, std::move(eb)));
  p.planted_i = planted_i;
  p.planted_j = planted_j;
  p.planted_c = static_cast<double>(background) * factor;
  p.background_c = background;
  return p;
}

SparseMatrix planted_gram(Index d, Index m, Index per_col, Index block_cols, Index block_rows,
                          std::uint64_t seed) {
  RngStream rng(seed, StreamId::Aux);
  std::vector<Index> perm(d);
  for (Index r = 0; r < d; ++r) perm[r] = r;
  std::vector<Index> shared;
  distinct_rows(rng, d, block_rows, perm, shared);
  std::sort(shared.begin(), shared.end());

  std::vector<Index> picked;
  std::vector<Triplet> entries;
  for (Index c = 0; c < m; ++c) {
    distinct_rows(rng, d, per_col, perm, picked);
    if (c < block_cols) {
      picked.insert(picked.end(), shared.begin(), shared.end());
      std::sort(picked.begin(), picked.end());
      picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
    }
    for (Index r : picked) entries.push_back({r, c, 1.0});
  }
  return SparseMatrix::from_triplets(d, m, std::move(entries));
}

}  // namespace diamond::synthetic
