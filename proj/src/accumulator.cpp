#include "diamond/accumulator.hpp"

#include <algorithm>
#include <cmath>

namespace diamond {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Auto: return "auto";
    case Variant::General: return "general";
    case Variant::Binary: return "binary";
    case Variant::Nonnegative: return "nonnegative";
    case Variant::Gram: return "gram";
    case Variant::SymmetricSquare: return "symmetric-square";
  }
  return "auto";
}

Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::Auto, Variant::General, Variant::Binary, Variant::Nonnegative,
                    Variant::Gram, Variant::SymmetricSquare}) {
    if (to_string(v) == name) return v;
  }
  throw InputError("unknown variant: " + std::string(name));
}

namespace {

ValueKind detect_values(const MatrixPair& pair) {
  if (pair.a().is_binary() && pair.b().is_binary()) return ValueKind::Binary;
  if (pair.a().is_nonnegative() && pair.b().is_nonnegative()) return ValueKind::Nonnegative;
  return ValueKind::Signed;
}

}  // namespace

ResolvedVariant resolve_variant(Variant v, const MatrixPair& pair) {
  ResolvedVariant r;
  r.shape = pair.is_gram() ? Shape::Gram : Shape::Plain;
  r.values = detect_values(pair);
  switch (v) {
    case Variant::Auto:
      if (pair.is_symmetric_square()) r.shape = Shape::SymmetricSquare;
      break;
    case Variant::General:
      r.values = ValueKind::Signed;
      break;
    case Variant::Binary:
      if (r.values != ValueKind::Binary) throw InputError("binary variant needs 0/1 inputs");
      break;
    case Variant::Nonnegative:
      if (r.values == ValueKind::Signed)
        throw InputError("nonnegative variant needs nonnegative inputs");
      r.values = ValueKind::Nonnegative;
      break;
    case Variant::Gram:
      if (!pair.is_gram()) throw InputError("gram variant needs B to be A");
      break;
    case Variant::SymmetricSquare:
      if (!pair.is_symmetric_square())
        throw InputError("symmetric-square variant needs B to be A with A symmetric");
      r.shape = Shape::SymmetricSquare;
      break;
  }
  return r;
}

void SamplingPlan::validate() const {
  if (s < 1) throw InputError("sample count must be positive");
  if (t < 1) throw InputError("top count must be positive");
  if (t_prime < t) throw InputError("budget t' must be at least t");
}

SampleAccumulator::SampleAccumulator(Index m, Index n, std::size_t expected_cells)
    : m_(m), n_(n) {
  cells_.reserve(expected_cells);
}

double SampleAccumulator::at(Index i, Index j) const {
  const auto it = cells_.find(key(i, j));
  return it == cells_.end() ? 0.0 : it->second;
}

std::vector<Cell> SampleAccumulator::cells() const {
  std::vector<Cell> out;
  out.reserve(cells_.size());
  for (const auto& [k, x] : cells_) {
    if (x == 0.0) continue;
    out.push_back({static_cast<Index>(k / n_), static_cast<Index>(k % n_), x});
  }
  std::sort(out.begin(), out.end(), [](const Cell& a, const Cell& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  return out;
}

std::size_t SampleAccumulator::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](const auto& kv) { return kv.second != 0.0; }));
}

double SampleAccumulator::sum() const {
  long double total = 0.0L;
  for (const auto& c : cells()) total += c.x;
  return static_cast<double>(total);
}

double SampleAccumulator::abs_sum() const {
  long double total = 0.0L;
  for (const auto& c : cells()) total += std::fabs(c.x);
  return static_cast<double>(total);
}

void SampleAccumulator::symmetrize() {
  if (m_ != n_) throw InputError("symmetrize needs a square accumulator");
  std::unordered_map<std::uint64_t, double> sym;
  sym.reserve(cells_.size() * 2);
  for (const auto& [k, x] : cells_) {
    const auto i = static_cast<Index>(k / n_);
    const auto j = static_cast<Index>(k % n_);
    // Both cells get the same expression, so the result is exactly symmetric.
    const double v = (x + at(j, i)) / 2;
    sym[key(i, j)] = v;
    sym[key(j, i)] = v;
  }
  cells_ = std::move(sym);
}

double closure_rate(const SampleAccumulator& acc) {
  if (acc.paths_drawn == 0) return 0.0;
  return static_cast<double>(acc.diamonds_closed) / static_cast<double>(acc.paths_drawn);
}

}  // namespace diamond
