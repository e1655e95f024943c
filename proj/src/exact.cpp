#include "diamond/exact.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>
#include <utility>

namespace diamond {

namespace {

// Heap comparator: "a is better than b" puts the worst entry at the root.
bool better(const TopKHeap::Entry& a, const TopKHeap::Entry& b) {
  return ranks_before(a.score, a.i, a.j, b.score, b.i, b.j);
}

}  // namespace

bool TopKHeap::push(double score, Index i, Index j) {
  if (capacity_ == 0) return false;
  const Entry e{score, i, j};
  if (!full()) {
    heap_.push_back(e);
    std::push_heap(heap_.begin(), heap_.end(), better);
    return true;
  }
  if (!better(e, heap_.front())) return false;
  std::pop_heap(heap_.begin(), heap_.end(), better);
  heap_.back() = e;
  std::push_heap(heap_.begin(), heap_.end(), better);
  return true;
}

void TopKHeap::merge(const TopKHeap& other) {
  for (const auto& e : other.heap_) push(e.score, e.i, e.j);
}

std::vector<TopKHeap::Entry> TopKHeap::sorted() const {
  auto out = heap_;
  std::sort(out.begin(), out.end(), better);
  return out;
}

namespace {

// Streams columns [j_begin, j_end) of C into heap.
void scan_columns(const MatrixPair& pair, Index j_begin, Index j_end, bool upper_only,
                  TopKHeap& heap) {
  const auto& a = pair.a();
  const auto& b = pair.b();
  const Index m = pair.m();
  std::vector<double> acc(m, 0.0);
  std::vector<char> touched(m, 0);
  std::vector<Index> touched_list;
  touched_list.reserve(m);

  for (Index j = j_begin; j < j_end; ++j) {
    const auto brows = b.col_indices(j);
    const auto bvals = b.col_values(j);
    for (std::size_t q = 0; q < brows.size(); ++q) {
      const Index k = brows[q];
      const double bkj = bvals[q];
      const auto acols = a.row_indices(k);
      const auto avals = a.row_values(k);
      for (std::size_t p = 0; p < acols.size(); ++p) {
        const Index i = acols[p];
        if (!touched[i]) {
          touched[i] = 1;
          touched_list.push_back(i);
        }
        acc[i] += avals[p] * bkj;
      }
    }
    // Admissible rows are i < j for upper-only scans.
    const Index i_end = upper_only ? std::min(j, m) : m;
    for (const Index i : touched_list) {
      if (i < i_end) heap.push(acc[i], i, j);
    }
    // Untouched entries are exact zeros; they only matter while the heap has
    // room or its worst kept value is itself zero.
    if (!heap.full() || heap.worst().score == 0.0) {
      for (Index i = 0; i < i_end; ++i) {
        if (touched[i]) continue;
        if (heap.full() && (heap.worst().score != 0.0 || i > heap.worst().i)) break;
        heap.push(0.0, i, j);
      }
    }
    for (const Index i : touched_list) {
      acc[i] = 0.0;
      touched[i] = 0;
    }
    touched_list.clear();
  }
}

}  // namespace

ResultSet exact_topt(const MatrixPair& pair, std::size_t t, bool exclude_diagonal,
                     unsigned threads) {
  if (t < 1) throw InputError("top count must be positive");
  const bool upper_only = exclude_diagonal && pair.is_gram();
  const std::uint64_t m = pair.m(), n = pair.n();
  const std::uint64_t admissible = upper_only ? m * (m - (m > 0 ? 1 : 0)) / 2 : m * n;

  TopKHeap heap(t);
  threads = std::max(1u, std::min<unsigned>(threads, std::max<Index>(pair.n(), 1)));
  if (threads == 1) {
    scan_columns(pair, 0, pair.n(), upper_only, heap);
  } else {
    std::vector<TopKHeap> partial(threads, TopKHeap(t));
    std::vector<std::thread> workers;
    const Index block = (pair.n() + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const Index lo = std::min<Index>(pair.n(), w * block);
      const Index hi = std::min<Index>(pair.n(), lo + block);
      workers.emplace_back([&, w, lo, hi] { scan_columns(pair, lo, hi, upper_only, partial[w]); });
    }
    for (auto& th : workers) th.join();
    for (const auto& p : partial) heap.merge(p);
  }

  ResultSet out;
  out.requested_t = t;
  out.variant = "exact";
  for (const auto& e : heap.sorted()) out.entries.push_back({e.i, e.j, e.score, 0.0});
  out.fewer_than_requested = admissible < t;
  const auto nonzero = std::count_if(out.entries.begin(), out.entries.end(),
                                     [](const RankedPair& r) { return r.exact != 0.0; });
  out.fewer_nonzero = static_cast<std::size_t>(nonzero) < t;
  return out;
}

double recall_against_exact(const ResultSet& approx, const ResultSet& exact, std::size_t t) {
  if (t == 0) return 1.0;
  if (exact.size() < t) throw InputError("ground truth has fewer than t entries");
  std::set<std::pair<Index, Index>> truth;
  for (std::size_t r = 0; r < t; ++r) truth.emplace(exact.entries[r].i, exact.entries[r].j);
  const double cutoff = std::fabs(exact.entries[t - 1].exact);
  const double tol = 1e-12 * std::max(1.0, cutoff);

  std::size_t hits = 0;
  std::set<std::pair<Index, Index>> seen;
  for (const auto& e : approx.entries) {
    if (!seen.emplace(e.i, e.j).second) continue;
    if (truth.count({e.i, e.j}) || std::fabs(std::fabs(e.exact) - cutoff) <= tol) ++hits;
  }
  return static_cast<double>(std::min(hits, t)) / static_cast<double>(t);
}

}  // namespace diamond
