#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diamond/accumulator.hpp"
#include "diamond/matrix_market.hpp"
#include "diamond/result.hpp"
#include "diamond/sparse_matrix.hpp"

namespace diamond {

enum class Mode { Topt, RecallCurve, Mips, Diagnostics, CompareWedge };
enum class Engine { Diamond, Wedge, Exact };

std::string_view to_string(Mode m);
std::string_view to_string(Engine e);
Engine parse_engine(std::string_view name);

/// Bumped whenever the run-record columns change.
inline constexpr int kRunSchemaVersion = 1;
/// Depth of the exact answer each MIPS query is scored against.
inline constexpr std::size_t kMipsTruthSize = 10;

struct ExperimentConfig {
  Mode mode = Mode::Topt;
  std::string matrix_a;
  std::string matrix_b;  ///< empty: B is A (Gram)
  Orientation orientation = Orientation::RowMajor;
  std::vector<std::uint64_t> samples{1000};
  std::vector<std::size_t> tops{10};
  std::optional<std::size_t> budget;  ///< empty: t' = s
  std::uint64_t seed = 1;
  Variant variant = Variant::Auto;
  Engine engine = Engine::Diamond;
  bool exclude_diagonal = false;
  std::vector<Index> queries;
  unsigned reps = 1;
  std::string out;           ///< run-record CSV; empty writes to the output stream
  std::string ground_truth;  ///< cached exact answer, keyed by matrix hash
  unsigned threads = 1;

  /// Throws InputError for an empty or nonpositive samples/tops list or zero reps.
  void validate() const;
  /// t' for a run with s samples and top count t: max(t, budget or s).
  std::size_t budget_for(std::uint64_t s, std::size_t t) const;
};

/// One CSV row. Optional fields print as "na".
struct RunRecord {
  std::string mode;
  std::string engine;
  std::string variant;
  std::uint64_t s = 0;
  std::size_t t = 0;
  std::size_t t_prime = 0;
  std::uint64_t seed = 0;
  unsigned rep = 0;
  std::optional<Index> query;
  std::optional<double> recall;
  std::optional<double> precision;
  std::optional<double> closure_rate;
  std::uint64_t diamonds_closed = 0;
  std::size_t support_size = 0;
  PhaseTimes times;
  double total_seconds = 0.0;
};

void write_run_header(std::ostream& out);
void write_run_record(std::ostream& out, const RunRecord& r);
/// rank,i,j,c,x with 1-based rank and 0-based indices.
void write_ranked_csv(std::ostream& out, const ResultSet& result);

/// Resolved variant as printed in run records, e.g. "binary+gram".
std::string describe_variant(Variant v, const MatrixPair& pair, Engine engine);

/// One sampling run (preprocess, sample, postprocess) with phase timings.
struct SamplerRun {
  ResultSet ranked;
  RunRecord record;
};
SamplerRun run_sampler(const MatrixPair& pair, Engine engine, const SamplingPlan& plan);

/// Exact top-t, loaded from `cache` when it matches the pair, t and diagonal
/// setting, otherwise computed (and written when cache is nonempty).
ResultSet ground_truth(const MatrixPair& pair, std::size_t t, bool exclude_diagonal,
                       const std::filesystem::path& cache, unsigned threads = 1);
std::uint64_t pair_key(const MatrixPair& pair);

struct PrecisionRecall {
  std::size_t hits = 0;
  double precision = 0.0;
  double recall = 0.0;
};
/// Scores a returned list against the first truth_size exact entries (value
/// ties at the cutoff count as hits). Precision of an empty list is 0.
PrecisionRecall precision_recall(std::span<const RankedPair> returned, const ResultSet& truth,
                                 std::size_t truth_size);

/// Single end-to-end run with config.samples[0] and config.tops[0]. Recall is
/// filled when truth is given.
SamplerRun run_topt(const MatrixPair& pair, const ExperimentConfig& config,
                    const ResultSet* truth = nullptr);

/// For every s and repetition: one run with t' from the config and t = max
/// tops, then one record per t. The exact baseline leads with its wall time.
std::vector<RunRecord> run_recall_curve(const MatrixPair& pair, const ExperimentConfig& config,
                                        const ResultSet& truth, double truth_seconds);

/// Per-query k-MIPS: each query column of B is searched on its own and scored
/// against its exact top-10. Records hold precision/recall at each depth in
/// tops, averaged over queries.
std::vector<RunRecord> run_mips(std::shared_ptr<const SparseMatrix> a, const SparseMatrix& b,
                                const ExperimentConfig& config);

/// Diamond and wedge runs with the same seeds, one record each per s and rep.
struct CompareOutcome {
  std::vector<RunRecord> records;
  ResultSet diamond_ranked;  ///< from the first s and rep
  ResultSet wedge_ranked;
};
CompareOutcome run_compare_wedge(const MatrixPair& pair, const ExperimentConfig& config,
                                 const ResultSet* truth);

/// Loads inputs, dispatches on mode and writes outputs. Returns the process
/// exit code: 0 success, 2 input error, 3 infeasible sampling.
int run_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Reads A (and B unless Gram) as configured.
MatrixPair load_pair(const ExperimentConfig& config);

}  // namespace diamond
