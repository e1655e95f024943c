// Command-line front end for the diamond sampling library.
//
//   diamond_cli topt --matrix-a A.mtx --matrix-b B.mtx --samples 10000 --top 10
//   diamond_cli recall-curve --matrix-a A.mtx --samples 100,1000,10000 --top 1,10,100
//   diamond_cli generate --kind planted --rows 40 --cols 40 --out-a a.mtx --out-b b.mtx
//
// Options are shared by every subcommand and may also come from a key=value
// file given with --config; command-line flags win over the file.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "diamond/experiment.hpp"
#include "diamond/matrix_market.hpp"
#include "diamond/synthetic.hpp"

namespace {

using namespace diamond;

struct GenerateOptions {
  std::string kind = "planted";
  Index rows = 40;
  Index cols = 40;
  Index cols_b = 0;  // 0: same as cols
  Index per_col = 10;
  Index background = 1;
  Index factor = 10;
  Index block_cols = 10;
  Index block_rows = 100;
  double lo = -1.0;
  double hi = 1.0;
  std::string out_a;
  std::string out_b;
};

int generate(const GenerateOptions& g, std::uint64_t seed) {
  if (g.out_a.empty()) throw InputError("generate needs --out-a");
  const Index cols_b = g.cols_b ? g.cols_b : g.cols;
  if (g.kind == "planted") {
    if (g.out_b.empty()) throw InputError("planted instances need --out-b");
    const auto p = synthetic::planted_pair(g.cols, cols_b, g.background, g.factor);
    save_matrix_market(g.out_a, *p.a);
    save_matrix_market(g.out_b, *p.b);
    std::cout << "planted pair (" << p.planted_i << ',' << p.planted_j << ") c=" << p.planted_c
              << " background c=" << p.background_c << '\n';
  } else if (g.kind == "gram") {
    save_matrix_market(g.out_a, synthetic::planted_gram(g.rows, g.cols, g.per_col, g.block_cols,
                                                        g.block_rows, seed));
  } else if (g.kind == "dense" || g.kind == "sparse") {
    const bool dense = g.kind == "dense";
    const auto make = [&](Index cols, std::uint64_t s) {
      return dense ? synthetic::random_dense(g.rows, cols, g.lo, g.hi, s)
                   : synthetic::random_sparse(g.rows, cols, g.per_col, false, s);
    };
    save_matrix_market(g.out_a, make(g.cols, seed));
    if (!g.out_b.empty()) save_matrix_market(g.out_b, make(cols_b, seed + 1));
  } else {
    throw InputError("unknown --kind: " + g.kind);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate top-t entries of AᵀB by diamond sampling"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file with default option values");

  ExperimentConfig cfg;
  std::string budget = "auto";
  std::string variant = "auto";
  std::string engine = "diamond";
  std::string orientation = "row";

  app.add_option("--matrix-a", cfg.matrix_a, "MatrixMarket file for A (rows = shared dimension)");
  app.add_option("--matrix-b", cfg.matrix_b, "MatrixMarket file for B; absent means B = A");
  app.add_option("--orientation", orientation, "row: file rows are shared; col: transpose")
      ->check(CLI::IsMember({"row", "col"}));
  app.add_option("--samples", cfg.samples, "sample counts s")->delimiter(',');
  app.add_option("--top", cfg.tops, "top counts t")->delimiter(',');
  app.add_option("--budget", budget, "dot-product budget t' (auto means t' = s)");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--variant", variant, "auto|general|binary|nonnegative|gram|symmetric-square");
  app.add_option("--engine", engine, "diamond|wedge|exact");
  app.add_flag("--exclude-diagonal", cfg.exclude_diagonal, "Gram: skip pairs with i >= j");
  app.add_option("--queries", cfg.queries, "query columns of B for mips")->delimiter(',');
  app.add_option("--reps", cfg.reps, "repetitions per sample count");
  app.add_option("--out", cfg.out, "run-record CSV path (ranked files use it as a prefix)");
  app.add_option("--ground-truth", cfg.ground_truth, "exact top-t cache file");
  app.add_option("--threads", cfg.threads, "worker threads for exact scans and mips queries");

  const std::map<std::string, Mode> modes{{"topt", Mode::Topt},
                                          {"recall-curve", Mode::RecallCurve},
                                          {"mips", Mode::Mips},
                                          {"diagnostics", Mode::Diagnostics},
                                          {"compare-wedge", Mode::CompareWedge}};
  std::map<std::string, CLI::App*> subs;
  subs["topt"] = app.add_subcommand("topt", "approximate top-t with one engine");
  subs["recall-curve"] = app.add_subcommand("recall-curve", "recall against exact over s and t");
  subs["mips"] = app.add_subcommand("mips", "per-query precision and recall against exact top-10");
  subs["diagnostics"] = app.add_subcommand("diagnostics", "max |c|, ‖W‖₁, est. samples, closure");
  subs["compare-wedge"] = app.add_subcommand("compare-wedge", "diamond and wedge on the same seeds");
  for (auto& [name, sub] : subs) sub->fallthrough();

  GenerateOptions gen;
  auto* gen_cmd = app.add_subcommand("generate", "write a synthetic instance in MatrixMarket form");
  gen_cmd->fallthrough();
  gen_cmd->add_option("--kind", gen.kind, "planted|gram|dense|sparse")
      ->check(CLI::IsMember({"planted", "gram", "dense", "sparse"}));
  gen_cmd->add_option("--rows", gen.rows, "shared dimension d (gram, dense, sparse)");
  gen_cmd->add_option("--cols", gen.cols, "columns of A (m)");
  gen_cmd->add_option("--cols-b", gen.cols_b, "columns of B (n); defaults to --cols");
  gen_cmd->add_option("--per-col", gen.per_col, "nonzeros per column (gram, sparse)");
  gen_cmd->add_option("--background", gen.background, "background dot product (planted)");
  gen_cmd->add_option("--factor", gen.factor, "planted / background ratio (planted)");
  gen_cmd->add_option("--block-cols", gen.block_cols, "columns in the planted block (gram)");
  gen_cmd->add_option("--block-rows", gen.block_rows, "rows shared by the block (gram)");
  gen_cmd->add_option("--lo", gen.lo, "lower value bound (dense)");
  gen_cmd->add_option("--hi", gen.hi, "upper value bound (dense)");
  gen_cmd->add_option("--out-a", gen.out_a, "output path for A");
  gen_cmd->add_option("--out-b", gen.out_b, "output path for B");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen_cmd->parsed()) return generate(gen, cfg.seed);

    for (const auto& [name, sub] : subs)
      if (sub->parsed()) cfg.mode = modes.at(name);
    cfg.variant = parse_variant(variant);
    cfg.engine = parse_engine(engine);
    cfg.orientation = orientation == "col" ? Orientation::ColMajor : Orientation::RowMajor;
    if (budget != "auto") {
      std::size_t pos = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(budget, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != budget.size() || budget.empty()) throw InputError("--budget must be N or auto");
      cfg.budget = static_cast<std::size_t>(v);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InfeasibleSampling& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return run_experiment(cfg, std::cout, std::cerr);
}
