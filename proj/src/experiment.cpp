#include "diamond/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "diamond/detail/format.hpp"
#include "diamond/diamond.hpp"
#include "diamond/exact.hpp"
#include "diamond/ranking.hpp"
#include "diamond/wedge.hpp"

namespace diamond {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t max_top(const ExperimentConfig& c) {
  return *std::max_element(c.tops.begin(), c.tops.end());
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Topt: return "topt";
    case Mode::RecallCurve: return "recall-curve";
    case Mode::Mips: return "mips";
    case Mode::Diagnostics: return "diagnostics";
    case Mode::CompareWedge: return "compare-wedge";
  }
  return "topt";
}

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::Diamond: return "diamond";
    case Engine::Wedge: return "wedge";
    case Engine::Exact: return "exact";
  }
  return "diamond";
}

Engine parse_engine(std::string_view name) {
  for (Engine e : {Engine::Diamond, Engine::Wedge, Engine::Exact})
    if (to_string(e) == name) return e;
  throw InputError("unknown engine: " + std::string(name));
}

void ExperimentConfig::validate() const {
  if (samples.empty()) throw InputError("samples list is empty");
  if (tops.empty()) throw InputError("top list is empty");
  for (auto s : samples)
    if (s == 0) throw InputError("sample counts must be positive");
  for (auto t : tops)
    if (t == 0) throw InputError("top counts must be positive");
  if (reps == 0) throw InputError("reps must be positive");
  if (budget && *budget == 0) throw InputError("budget must be positive");
  if (mode == Mode::Mips && queries.empty()) throw InputError("mips mode needs --queries");
}

std::size_t ExperimentConfig::budget_for(std::uint64_t s, std::size_t t) const {
  return std::max<std::size_t>(t, budget.value_or(static_cast<std::size_t>(s)));
}

namespace {

void put_optional(std::ostream& out, const std::optional<double>& v) {
  if (v) {
    out << detail::format_double(*v);
  } else {
    out << "na";
  }
}

}  // namespace

void write_run_header(std::ostream& out) {
  out << "schema_version,mode,engine,variant,s,t,t_prime,seed,rep,query,recall,precision,"
         "closure_rate,diamonds_closed,support_size,preprocess_sec,sample_sec,"
         "postprocess_sec,total_sec\n";
}

void write_run_record(std::ostream& out, const RunRecord& r) {
  out << kRunSchemaVersion << ',' << r.mode << ',' << r.engine << ',' << r.variant << ','
      << r.s << ',' << r.t << ',' << r.t_prime << ',' << r.seed << ',' << r.rep << ',';
  if (r.query) {
    out << *r.query;
  } else {
    out << "all";
  }
  out << ',';
  put_optional(out, r.recall);
  out << ',';
  put_optional(out, r.precision);
  out << ',';
  put_optional(out, r.closure_rate);
  out << ',' << r.diamonds_closed << ',' << r.support_size << ',' << std::fixed
      << std::setprecision(6) << r.times.preprocess << ',' << r.times.sample << ','
      << r.times.postprocess << ',' << r.total_seconds << '\n';
  out.unsetf(std::ios::floatfield);
}

void write_ranked_csv(std::ostream& out, const ResultSet& result) {
  out << "rank,i,j,c,x\n";
  std::size_t rank = 1;
  for (const auto& e : result.entries) {
    out << rank++ << ',' << e.i << ',' << e.j << ',' << detail::format_double(e.exact) << ','
        << detail::format_double(e.sampler) << '\n';
  }
}

std::string describe_variant(Variant v, const MatrixPair& pair, Engine engine) {
  if (engine == Engine::Exact) return "exact";
  const ResolvedVariant r = resolve_variant(v, pair);
  std::string name = r.values == ValueKind::Binary        ? "binary"
                     : r.values == ValueKind::Nonnegative ? "nonnegative"
                                                          : "general";
  Shape shape = r.shape;
  if (engine == Engine::Wedge && shape == Shape::SymmetricSquare) shape = Shape::Gram;
  if (shape == Shape::Gram) name += "+gram";
  if (shape == Shape::SymmetricSquare) name += "+symmetric-square";
  return name;
}

SamplerRun run_sampler(const MatrixPair& pair, Engine engine, const SamplingPlan& plan) {
  plan.validate();
  SamplerRun run;
  auto& rec = run.record;
  rec.engine = std::string(to_string(engine));
  rec.variant = describe_variant(plan.variant, pair, engine);
  rec.s = plan.s;
  rec.t = plan.t;
  rec.t_prime = plan.t_prime;
  rec.seed = plan.seed;

  const auto start = Clock::now();
  SampleAccumulator acc;
  if (engine == Engine::Diamond) {
    auto t0 = Clock::now();
    const DiamondSampler sampler(pair, plan.variant);
    rec.times.preprocess = seconds_since(t0);
    t0 = Clock::now();
    acc = sampler.sample(plan);
    rec.times.sample = seconds_since(t0);
  } else if (engine == Engine::Wedge) {
    auto t0 = Clock::now();
    const WedgeSampler sampler(pair, plan.variant);
    rec.times.preprocess = seconds_since(t0);
    t0 = Clock::now();
    acc = sampler.sample(plan);
    rec.times.sample = seconds_since(t0);
  } else {
    throw InputError("run_sampler needs a sampling engine");
  }
  const auto t0 = Clock::now();
  run.ranked = postprocess(acc, pair, plan);
  rec.times.postprocess = seconds_since(t0);
  rec.total_seconds = seconds_since(start);

  run.ranked.times = rec.times;
  run.ranked.variant = rec.variant;
  rec.closure_rate = closure_rate(acc);
  rec.diamonds_closed = acc.diamonds_closed;
  rec.support_size = acc.support_size();
  return run;
}

std::uint64_t pair_key(const MatrixPair& pair) {
  std::uint64_t h = pair.a().content_hash();
  h ^= pair.b().content_hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= pair.is_gram() ? 0x5bd1e995ULL : 0;
  return h;
}

namespace {

std::string hex(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << v;
  return ss.str();
}

std::optional<ResultSet> read_ground_truth(const std::filesystem::path& path, std::uint64_t key,
                                           std::size_t t, bool exclude_diagonal) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != "# diamond ground truth v1") return std::nullopt;
  if (!std::getline(in, line)) return std::nullopt;
  std::string stored_key;
  std::size_t stored_t = 0;
  int stored_excl = -1;
  {
    std::istringstream ss(line);
    std::string hash_tok, key_tok, t_tok, excl_tok;
    ss >> hash_tok >> key_tok >> t_tok >> excl_tok;
    if (key_tok.rfind("key=", 0) != 0 || t_tok.rfind("t=", 0) != 0 ||
        excl_tok.rfind("exclude_diagonal=", 0) != 0)
      return std::nullopt;
    stored_key = key_tok.substr(4);
    stored_t = std::stoull(t_tok.substr(2));
    stored_excl = std::stoi(excl_tok.substr(17));
  }
  if (stored_key != hex(key) || stored_t < t || stored_excl != (exclude_diagonal ? 1 : 0))
    return std::nullopt;
  if (!std::getline(in, line) || line != "rank,i,j,c") return std::nullopt;

  ResultSet rs;
  rs.requested_t = stored_t;
  rs.variant = "exact";
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> f;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 4) throw InputError(path.string() + ": malformed ground-truth row");
    rs.entries.push_back({static_cast<Index>(std::stoul(f[1])),
                          static_cast<Index>(std::stoul(f[2])), std::stod(f[3]), 0.0});
  }
  return rs;
}

void write_ground_truth(const std::filesystem::path& path, std::uint64_t key, std::size_t t,
                        bool exclude_diagonal, const ResultSet& rs) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "# diamond ground truth v1\n";
  out << "# key=" << hex(key) << " t=" << t << " exclude_diagonal=" << (exclude_diagonal ? 1 : 0)
      << '\n';
  out << "rank,i,j,c\n";
  std::size_t rank = 1;
  for (const auto& e : rs.entries)
    out << rank++ << ',' << e.i << ',' << e.j << ',' << detail::format_double(e.exact) << '\n';
}

}  // namespace

ResultSet ground_truth(const MatrixPair& pair, std::size_t t, bool exclude_diagonal,
                       const std::filesystem::path& cache, unsigned threads) {
  const std::uint64_t key = pair_key(pair);
  if (!cache.empty()) {
    if (auto cached = read_ground_truth(cache, key, t, exclude_diagonal)) return *cached;
  }
  ResultSet rs = exact_topt(pair, t, exclude_diagonal, threads);
  if (!cache.empty()) write_ground_truth(cache, key, t, exclude_diagonal, rs);
  return rs;
}

PrecisionRecall precision_recall(std::span<const RankedPair> returned, const ResultSet& truth,
                                 std::size_t truth_size) {
  PrecisionRecall pr;
  truth_size = std::min(truth_size, truth.size());
  if (truth_size == 0) return pr;
  std::set<std::pair<Index, Index>> top;
  for (std::size_t r = 0; r < truth_size; ++r) top.emplace(truth.entries[r].i, truth.entries[r].j);
  const double cutoff = std::fabs(truth.entries[truth_size - 1].exact);
  const double tol = 1e-12 * std::max(1.0, cutoff);
  for (const auto& e : returned) {
    if (top.count({e.i, e.j}) || std::fabs(std::fabs(e.exact) - cutoff) <= tol) ++pr.hits;
  }
  pr.precision = returned.empty() ? 0.0
                                  : static_cast<double>(pr.hits) / static_cast<double>(returned.size());
  pr.recall = static_cast<double>(std::min(pr.hits, truth_size)) / static_cast<double>(truth_size);
  return pr;
}

SamplerRun run_topt(const MatrixPair& pair, const ExperimentConfig& config,
                    const ResultSet* truth) {
  config.validate();
  SamplingPlan plan;
  plan.s = config.samples.front();
  plan.t = config.tops.front();
  plan.t_prime = config.budget_for(plan.s, plan.t);
  plan.seed = config.seed;
  plan.variant = config.variant;
  plan.exclude_diagonal = config.exclude_diagonal;
  SamplerRun run = run_sampler(pair, config.engine, plan);
  run.record.mode = std::string(to_string(Mode::Topt));
  if (truth && truth->size() >= plan.t)
    run.record.recall = recall_against_exact(run.ranked, *truth, plan.t);
  return run;
}

std::vector<RunRecord> run_recall_curve(const MatrixPair& pair, const ExperimentConfig& config,
                                        const ResultSet& truth, double truth_seconds) {
  config.validate();
  const std::size_t t_max = max_top(config);
  if (truth.size() < t_max) throw InputError("ground truth shallower than the largest t");

  std::vector<RunRecord> records;
  RunRecord exact_rec;
  exact_rec.mode = std::string(to_string(Mode::RecallCurve));
  exact_rec.engine = "exact";
  exact_rec.variant = "exact";
  exact_rec.t = t_max;
  exact_rec.t_prime = t_max;
  exact_rec.seed = config.seed;
  exact_rec.recall = 1.0;
  exact_rec.times.sample = truth_seconds;
  exact_rec.total_seconds = truth_seconds;
  records.push_back(exact_rec);

  for (const auto s : config.samples) {
    for (unsigned rep = 0; rep < config.reps; ++rep) {
      SamplingPlan plan;
      plan.s = s;
      plan.t = t_max;
      plan.t_prime = config.budget_for(s, t_max);
      plan.seed = config.seed + rep;
      plan.variant = config.variant;
      plan.exclude_diagonal = config.exclude_diagonal;
      const SamplerRun run = run_sampler(pair, config.engine, plan);
      for (const auto t : config.tops) {
        RunRecord rec = run.record;
        rec.mode = std::string(to_string(Mode::RecallCurve));
        rec.t = t;
        rec.rep = rep;
        ResultSet prefix = run.ranked;
        if (prefix.entries.size() > t) prefix.entries.resize(t);
        rec.recall = recall_against_exact(prefix, truth, t);
        records.push_back(rec);
      }
    }
  }
  return records;
}

std::vector<RunRecord> run_mips(std::shared_ptr<const SparseMatrix> a, const SparseMatrix& b,
                                const ExperimentConfig& config) {
  config.validate();
  for (const Index q : config.queries)
    if (q >= b.cols()) throw InputError("query column out of range");
  if (a->rows() != b.rows()) throw DimensionMismatch("A and B row counts differ");

  const std::size_t depth = max_top(config);
  const std::size_t nq = config.queries.size();
  const std::size_t ns = config.samples.size();
  const std::size_t nt = config.tops.size();
  std::vector<PrecisionRecall> scores(nq * ns * config.reps * nt);
  std::vector<RunRecord> runs(nq * ns * config.reps);

  const auto work = [&](std::size_t qi) {
    const Index q = config.queries[qi];
    const MatrixPair pair =
        validate_pair(a, std::make_shared<const SparseMatrix>(b.column(q)));
    const ResultSet truth = exact_topt(pair, kMipsTruthSize, false);
    for (std::size_t si = 0; si < ns; ++si) {
      for (unsigned rep = 0; rep < config.reps; ++rep) {
        SamplingPlan plan;
        plan.s = config.samples[si];
        plan.t = depth;
        plan.t_prime = config.budget_for(plan.s, depth);
        plan.seed = config.seed + rep;
        plan.run = q;
        plan.variant = config.variant;
        const SamplerRun run = run_sampler(pair, config.engine, plan);
        const std::size_t base = (qi * ns + si) * config.reps + rep;
        runs[base] = run.record;
        for (std::size_t ti = 0; ti < nt; ++ti) {
          const std::size_t k = std::min(config.tops[ti], run.ranked.entries.size());
          scores[base * nt + ti] = precision_recall(
              std::span<const RankedPair>(run.ranked.entries.data(), k), truth, kMipsTruthSize);
        }
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, nq));
  if (threads == 1) {
    for (std::size_t qi = 0; qi < nq; ++qi) work(qi);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t qi = w; qi < nq; qi += threads) work(qi);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<RunRecord> records;
  for (std::size_t si = 0; si < ns; ++si) {
    for (unsigned rep = 0; rep < config.reps; ++rep) {
      PhaseTimes times;
      double total = 0.0;
      long double closure = 0.0L;
      std::uint64_t closed = 0;
      std::size_t support = 0;
      for (std::size_t qi = 0; qi < nq; ++qi) {
        const auto& r = runs[(qi * ns + si) * config.reps + rep];
        times.preprocess += r.times.preprocess;
        times.sample += r.times.sample;
        times.postprocess += r.times.postprocess;
        total += r.total_seconds;
        closure += r.closure_rate.value_or(0.0);
        closed += r.diamonds_closed;
        support += r.support_size;
      }
      for (std::size_t ti = 0; ti < nt; ++ti) {
        long double p = 0.0L, rc = 0.0L;
        for (std::size_t qi = 0; qi < nq; ++qi) {
          const auto& pr = scores[((qi * ns + si) * config.reps + rep) * nt + ti];
          p += pr.precision;
          rc += pr.recall;
        }
        RunRecord rec = runs[si * config.reps + rep];
        rec.mode = std::string(to_string(Mode::Mips));
        rec.t = config.tops[ti];
        rec.rep = rep;
        rec.query.reset();
        rec.precision = static_cast<double>(p / nq);
        rec.recall = static_cast<double>(rc / nq);
        rec.closure_rate = static_cast<double>(closure / nq);
        rec.diamonds_closed = closed;
        rec.support_size = support;
        rec.times = times;
        rec.total_seconds = total;
        records.push_back(rec);
      }
    }
  }
  return records;
}

CompareOutcome run_compare_wedge(const MatrixPair& pair, const ExperimentConfig& config,
                                 const ResultSet* truth) {
  config.validate();
  CompareOutcome out;
  const std::size_t t = config.tops.front();
  bool first = true;
  for (const auto s : config.samples) {
    for (unsigned rep = 0; rep < config.reps; ++rep) {
      SamplingPlan plan;
      plan.s = s;
      plan.t = t;
      plan.t_prime = config.budget_for(s, t);
      plan.seed = config.seed + rep;
      plan.variant = config.variant;
      plan.exclude_diagonal = config.exclude_diagonal;
      for (const Engine engine : {Engine::Diamond, Engine::Wedge}) {
        SamplerRun run = run_sampler(pair, engine, plan);
        run.record.mode = std::string(to_string(Mode::CompareWedge));
        run.record.rep = rep;
        if (truth && truth->size() >= t) run.record.recall = recall_against_exact(run.ranked, *truth, t);
        out.records.push_back(run.record);
        if (first) (engine == Engine::Diamond ? out.diamond_ranked : out.wedge_ranked) = run.ranked;
      }
      first = false;
    }
  }
  return out;
}

MatrixPair load_pair(const ExperimentConfig& config) {
  if (config.matrix_a.empty()) throw InputError("--matrix-a is required");
  auto a = std::make_shared<const SparseMatrix>(
      load_matrix_market(config.matrix_a, config.orientation));
  if (config.matrix_b.empty()) return validate_pair(a, a);
  auto b = std::make_shared<const SparseMatrix>(
      load_matrix_market(config.matrix_b, config.orientation));
  return validate_pair(a, b);
}

namespace {

// Run records go to config.out when set, otherwise to `out`.
void emit_records(const ExperimentConfig& config, std::ostream& out,
                  const std::vector<RunRecord>& records) {
  std::ofstream file;
  std::ostream* dst = &out;
  if (!config.out.empty()) {
    file.open(config.out);
    if (!file) throw InputError("cannot write " + config.out);
    dst = &file;
  }
  write_run_header(*dst);
  for (const auto& r : records) write_run_record(*dst, r);
}

void emit_ranked(const ExperimentConfig& config, std::ostream& out, const std::string& suffix,
                 const ResultSet& ranked) {
  if (config.out.empty()) {
    write_ranked_csv(out, ranked);
    out << '\n';
    return;
  }
  const std::string path = config.out + suffix;
  std::ofstream file(path);
  if (!file) throw InputError("cannot write " + path);
  write_ranked_csv(file, ranked);
}

int dispatch(const ExperimentConfig& config, std::ostream& out) {
  config.validate();
  if (config.mode == Mode::Mips) {
    if (config.matrix_a.empty() || config.matrix_b.empty())
      throw InputError("mips mode needs --matrix-a and --matrix-b");
    auto a = std::make_shared<const SparseMatrix>(
        load_matrix_market(config.matrix_a, config.orientation));
    const SparseMatrix b = load_matrix_market(config.matrix_b, config.orientation);
    emit_records(config, out, run_mips(a, b, config));
    return 0;
  }

  const MatrixPair pair = load_pair(config);
  const std::size_t t_max = max_top(config);
  switch (config.mode) {
    case Mode::Topt: {
      std::optional<ResultSet> truth;
      if (!config.ground_truth.empty())
        truth = ground_truth(pair, t_max, config.exclude_diagonal, config.ground_truth,
                             config.threads);
      if (config.engine == Engine::Exact) {
        const auto start = Clock::now();
        ResultSet rs = exact_topt(pair, config.tops.front(), config.exclude_diagonal,
                                  config.threads);
        RunRecord rec;
        rec.mode = "topt";
        rec.engine = rec.variant = "exact";
        rec.t = rec.t_prime = config.tops.front();
        rec.seed = config.seed;
        rec.times.sample = rec.total_seconds = seconds_since(start);
        if (truth) rec.recall = recall_against_exact(rs, *truth, config.tops.front());
        emit_ranked(config, out, ".ranked.csv", rs);
        emit_records(config, out, {rec});
        return 0;
      }
      const SamplerRun run = run_topt(pair, config, truth ? &*truth : nullptr);
      emit_ranked(config, out, ".ranked.csv", run.ranked);
      emit_records(config, out, {run.record});
      return 0;
    }
    case Mode::RecallCurve: {
      const auto start = Clock::now();
      const ResultSet truth = ground_truth(pair, t_max, config.exclude_diagonal,
                                           config.ground_truth, config.threads);
      const double truth_seconds = seconds_since(start);
      emit_records(config, out, run_recall_curve(pair, config, truth, truth_seconds));
      return 0;
    }
    case Mode::CompareWedge: {
      std::optional<ResultSet> truth;
      if (!config.ground_truth.empty())
        truth = ground_truth(pair, t_max, config.exclude_diagonal, config.ground_truth,
                             config.threads);
      const CompareOutcome cmp = run_compare_wedge(pair, config, truth ? &*truth : nullptr);
      emit_ranked(config, out, ".diamond.ranked.csv", cmp.diamond_ranked);
      emit_ranked(config, out, ".wedge.ranked.csv", cmp.wedge_ranked);
      emit_records(config, out, cmp.records);
      return 0;
    }
    case Mode::Diagnostics: {
      const ResultSet truth = ground_truth(pair, std::max<std::size_t>(t_max, 1),
                                           config.exclude_diagonal, config.ground_truth,
                                           config.threads);
      const DiamondSampler sampler(pair, config.variant);
      SamplingPlan plan;
      plan.s = config.samples.front();
      plan.seed = config.seed;
      plan.variant = config.variant;
      const SampleAccumulator acc = sampler.sample(plan);
      const DatasetDiagnostics d =
          dataset_diagnostics(pair, sampler.weights(), truth, closure_rate(acc));
      std::ofstream file;
      std::ostream* dst = &out;
      if (!config.out.empty()) {
        file.open(config.out);
        if (!file) throw InputError("cannot write " + config.out);
        dst = &file;
      }
      *dst << "schema_version,m,n,d,nnz_a,nnz_b,max_abs_c,w_norm1,est_samples,closure_rate,"
              "closure_s\n";
      *dst << kRunSchemaVersion << ',' << pair.m() << ',' << pair.n() << ','
           << pair.shared_dim() << ',' << pair.a().nnz() << ',' << pair.b().nnz() << ','
           << detail::format_double(d.max_abs_c) << ',' << detail::format_double(d.w_total)
           << ',' << detail::format_double(d.est_samples) << ','
           << detail::format_double(*d.closure_rate) << ',' << plan.s << '\n';
      return 0;
    }
    case Mode::Mips:
      break;
  }
  return 0;
}

}  // namespace

int run_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(config, out);
  } catch (const InfeasibleSampling& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace diamond
