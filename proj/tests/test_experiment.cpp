#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "diamond/exact.hpp"
#include "diamond/experiment.hpp"
#include "diamond/ranking.hpp"
#include "diamond/synthetic.hpp"
#include "support/oracles.hpp"

using namespace diamond;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "diamond_experiment_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("config validation and budget") {
  ExperimentConfig c;
  CHECK_NOTHROW(c.validate());
  c.samples = {};
  CHECK_THROWS_AS(c.validate(), InputError);
  c.samples = {10, 0};
  CHECK_THROWS_AS(c.validate(), InputError);
  c.samples = {10};
  c.tops = {};
  CHECK_THROWS_AS(c.validate(), InputError);
  c.tops = {5};
  c.reps = 0;
  CHECK_THROWS_AS(c.validate(), InputError);
  c.reps = 1;
  c.mode = Mode::Mips;
  CHECK_THROWS_AS(c.validate(), InputError);

  ExperimentConfig b;
  CHECK(b.budget_for(100, 10) == 100);
  CHECK(b.budget_for(5, 10) == 10);
  b.budget = 30;
  CHECK(b.budget_for(100, 10) == 30);
  CHECK(b.budget_for(100, 50) == 50);
}

TEST_CASE("run record formatting") {
  std::ostringstream out;
  write_run_header(out);
  RunRecord r;
  r.mode = "topt";
  r.engine = "diamond";
  r.variant = "binary";
  r.s = 10;
  r.t = 1;
  r.t_prime = 10;
  r.seed = 3;
  r.recall = 1.0;
  write_run_record(out, r);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 2);
  const auto header = split(lines[0]);
  const auto row = split(lines[1]);
  CHECK(header.front() == "schema_version");
  CHECK(header.size() == row.size());
  CHECK(row[0] == std::to_string(kRunSchemaVersion));
  CHECK(row[9] == "all");
  CHECK(row[10] == "1");
  CHECK(row[11] == "na");
}

TEST_CASE("topt on the singleton pair") {
  ExperimentConfig c;
  c.samples = {10};
  c.tops = {1};
  const auto run = run_topt(oracle::singleton_pair(), c);
  REQUIRE(run.ranked.size() == 1);
  CHECK(run.ranked.entries[0].i == 0);
  CHECK(run.ranked.entries[0].j == 0);
  CHECK(run.ranked.entries[0].exact == 1);
  CHECK(run.record.s == 10);
  CHECK(*run.record.closure_rate == 1.0);

  std::ostringstream out;
  write_ranked_csv(out, run.ranked);
  CHECK(out.str() == "rank,i,j,c,x\n1,0,0,1,10\n");
}

TEST_CASE("planner-sized topt matches exact top-1 on random instances") {
  const auto pair = oracle::make_pair(synthetic::random_dense(50, 40, 0.0, 1.0, 1),
                                      synthetic::random_dense(50, 60, 0.0, 1.0, 2));
  const auto truth = exact_topt(pair, 1, false);
  ConcentrationQuery q;
  q.K = std::max(pair.a().max_abs(), pair.b().max_abs());
  q.epsilon = 0.5;
  q.delta = 0.01;
  q.c = std::fabs(truth.entries[0].exact);
  ExperimentConfig c;
  c.samples = {samples_for_entry(q, build_weights(pair).total)};
  c.tops = {1};
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    c.seed = seed;
    const auto run = run_topt(pair, c, &truth);
    hits += *run.record.recall == 1.0;
  }
  CHECK(hits >= 19);
}

TEST_CASE("phase times account for the total") {
  const auto pair = oracle::make_gram(synthetic::planted_gram(4000, 4000, 20, 5, 200, 1));
  ExperimentConfig c;
  c.samples = {200000};
  c.tops = {10};
  c.exclude_diagonal = true;
  const auto run = run_topt(pair, c);
  const auto& t = run.record.times;
  const double sum = t.preprocess + t.sample + t.postprocess;
  CHECK(sum <= run.record.total_seconds * 1.0000001);
  CHECK(sum >= 0.95 * run.record.total_seconds);
}

TEST_CASE("compare-wedge emits paired records sharing seeds") {
  const auto p = synthetic::planted_pair(20, 20, 1, 10);
  const auto pair = validate_pair(p.a, p.b);
  ExperimentConfig c;
  c.samples = {500, 1000};
  c.tops = {1};
  c.seed = 42;
  const auto out = run_compare_wedge(pair, c, nullptr);
  REQUIRE(out.records.size() == 4);
  CHECK(out.records[0].engine == "diamond");
  CHECK(out.records[1].engine == "wedge");
  CHECK(out.records[0].seed == out.records[1].seed);
  CHECK(out.records[0].s == 500);
  CHECK(out.records[2].s == 1000);
  CHECK(out.diamond_ranked.entries[0].i == p.planted_i);
}

TEST_CASE("recall curve leads with one exact row") {
  const auto p = synthetic::planted_pair(20, 20, 1, 10);
  const auto pair = validate_pair(p.a, p.b);
  ExperimentConfig c;
  c.mode = Mode::RecallCurve;
  c.samples = {100, 1000};
  c.tops = {1, 5};
  c.reps = 2;
  const auto truth = exact_topt(pair, 5, false);
  const auto records = run_recall_curve(pair, c, truth, 0.25);
  REQUIRE(records.size() == 1 + 2 * 2 * 2);
  CHECK(records[0].engine == "exact");
  CHECK(records[0].total_seconds == 0.25);
  for (std::size_t k = 1; k < records.size(); ++k) {
    CHECK(records[k].engine == "diamond");
    CHECK(*records[k].recall >= 0.0);
    CHECK(*records[k].recall <= 1.0);
  }
}

TEST_CASE("recall is nondecreasing in s on average") {
  const auto p = synthetic::planted_pair(30, 30, 1, 10);
  const auto pair = validate_pair(p.a, p.b);
  ExperimentConfig c;
  c.samples = {10, 100, 1000};
  c.tops = {1};
  c.reps = 10;
  const auto truth = exact_topt(pair, 1, false);
  const auto records = run_recall_curve(pair, c, truth, 0);
  std::map<std::uint64_t, double> mean;
  for (std::size_t k = 1; k < records.size(); ++k) mean[records[k].s] += *records[k].recall / 10;
  CHECK(mean[10] <= mean[100]);
  CHECK(mean[100] <= mean[1000]);
  // Ten times the predicted sample count reaches full recall at t = 1.
  const double est = estimated_samples(build_weights(pair).total, p.planted_c);
  c.samples = {static_cast<std::uint64_t>(std::ceil(10 * est))};
  for (const auto& r : run_recall_curve(pair, c, truth, 0)) CHECK(*r.recall == 1.0);
}

TEST_CASE("precision and recall for mips") {
  ResultSet truth;
  for (Index k = 0; k < 10; ++k) truth.entries.push_back({k, 0, 20.0 - k, 0});
  const auto full = precision_recall(truth.entries, truth, 10);
  CHECK(full.precision == 1.0);
  CHECK(full.recall == 1.0);

  std::vector<RankedPair> more = truth.entries;
  double prev = 1.0;
  for (Index k = 0; k < 5; ++k) {
    more.push_back({100 + k, 0, 1, 0});
    const auto pr = precision_recall(more, truth, 10);
    CHECK(pr.hits == 10);
    CHECK(pr.precision <= prev);
    prev = pr.precision;
  }
  CHECK(precision_recall({}, truth, 10).precision == 0.0);
}

TEST_CASE("mips with a single candidate") {
  auto a = std::make_shared<const SparseMatrix>(oracle::dense(3, 1, {1, 2, 3}));
  const auto b = oracle::dense(3, 2, {1, 0, 1, 1, 0, 1});
  ExperimentConfig c;
  c.mode = Mode::Mips;
  c.samples = {50};
  c.tops = {1};
  c.queries = {0, 1};
  const auto records = run_mips(a, b, c);
  REQUIRE(records.size() == 1);
  CHECK(*records[0].recall == 1.0);
  CHECK(*records[0].precision == 1.0);

  c.queries = {2};
  CHECK_THROWS_AS(run_mips(a, b, c), InputError);
}

TEST_CASE("mips results do not depend on thread count") {
  auto a = std::make_shared<const SparseMatrix>(synthetic::random_sparse(40, 60, 6, false, 1));
  const auto b = synthetic::random_sparse(40, 20, 6, false, 2);
  ExperimentConfig c;
  c.mode = Mode::Mips;
  c.samples = {100, 1000};
  c.tops = {5, 10};
  c.queries = {0, 3, 5, 7, 11};
  const auto one = run_mips(a, b, c);
  c.threads = 3;
  const auto three = run_mips(a, b, c);
  REQUIRE(one.size() == three.size());
  for (std::size_t k = 0; k < one.size(); ++k) {
    CHECK(*one[k].recall == *three[k].recall);
    CHECK(*one[k].precision == *three[k].precision);
    CHECK(one[k].diamonds_closed == three[k].diamonds_closed);
  }
}

TEST_CASE("ground truth sidecar is reused only for the same inputs") {
  const auto dir = scratch_dir();
  const auto path = dir / "truth.csv";
  std::filesystem::remove(path);
  const auto pair = oracle::small_pair();
  const auto first = ground_truth(pair, 3, false, path);
  REQUIRE(std::filesystem::exists(path));
  CHECK(slurp(path).rfind("# diamond ground truth v1\n", 0) == 0);
  const auto again = ground_truth(pair, 2, false, path);
  REQUIRE(again.size() == 3);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(again.entries[r].i == first.entries[r].i);
    CHECK(again.entries[r].exact == first.entries[r].exact);
  }
  // A different matrix invalidates the cache.
  const auto other = oracle::make_pair(oracle::dense(2, 2, {1, 0, 1, 1}),
                                       oracle::dense(2, 3, {3, 1, 0, 0, 1, 1}));
  const auto fresh = ground_truth(other, 1, false, path);
  CHECK(fresh.entries[0].exact == 3);
  std::filesystem::remove(path);
}

TEST_CASE("run_experiment maps errors to exit codes") {
  const auto dir = scratch_dir();
  std::ostringstream out, err;
  ExperimentConfig c;
  c.matrix_a = (dir / "missing.mtx").string();
  CHECK(run_experiment(c, out, err) == 2);

  const auto zero = dir / "zero.mtx";
  save_matrix_market(zero, SparseMatrix::from_triplets(3, 3, {}));
  c.matrix_a = zero.string();
  CHECK(run_experiment(c, out, err) == 3);

  const auto a = dir / "a.mtx";
  const auto b = dir / "b.mtx";
  save_matrix_market(a, SparseMatrix::from_triplets(2, 2, {{0, 0, 1}}));
  save_matrix_market(b, SparseMatrix::from_triplets(3, 2, {{0, 0, 1}}));
  c.matrix_a = a.string();
  c.matrix_b = b.string();
  CHECK(run_experiment(c, out, err) == 2);
  CHECK(err.str().find("error:") != std::string::npos);
}

TEST_CASE("topt output files are byte-identical across runs") {
  const auto dir = scratch_dir();
  const auto p = synthetic::planted_pair(30, 30, 1, 10);
  save_matrix_market(dir / "pa.mtx", *p.a);
  save_matrix_market(dir / "pb.mtx", *p.b);
  ExperimentConfig c;
  c.matrix_a = (dir / "pa.mtx").string();
  c.matrix_b = (dir / "pb.mtx").string();
  c.samples = {3000};
  c.tops = {5};
  c.seed = 9;
  std::ostringstream out, err;
  c.out = (dir / "run1.csv").string();
  REQUIRE(run_experiment(c, out, err) == 0);
  c.out = (dir / "run2.csv").string();
  REQUIRE(run_experiment(c, out, err) == 0);
  const auto r1 = slurp(dir / "run1.csv.ranked.csv");
  const auto r2 = slurp(dir / "run2.csv.ranked.csv");
  CHECK(!r1.empty());
  CHECK(r1 == r2);
  CHECK(lines_of(r1)[1].rfind("1,0,0,10,", 0) == 0);
}

TEST_CASE("diagnostics mode reports the table statistics") {
  const auto dir = scratch_dir();
  save_matrix_market(dir / "sa.mtx", oracle::dense(2, 2, {1, 0, 1, 1}));
  save_matrix_market(dir / "sb.mtx", oracle::dense(2, 3, {1, 1, 0, 0, 1, 1}));
  ExperimentConfig c;
  c.mode = Mode::Diagnostics;
  c.matrix_a = (dir / "sa.mtx").string();
  c.matrix_b = (dir / "sb.mtx").string();
  c.samples = {100000};
  std::ostringstream out, err;
  REQUIRE(run_experiment(c, out, err) == 0);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 2);
  const auto header = split(lines[0]);
  const auto row = split(lines[1]);
  std::map<std::string, std::string> kv;
  for (std::size_t k = 0; k < header.size(); ++k) kv[header[k]] = row[k];
  CHECK(kv["max_abs_c"] == "2");
  CHECK(kv["w_norm1"] == "10");
  CHECK(kv["est_samples"] == "2.5");
  CHECK(std::stod(kv["closure_rate"]) == doctest::Approx(0.8).epsilon(0.02));
}
