// Command-line front end over the C interface.

#include <cstdio>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "dpr1/dpr1.h"

namespace {

int fail(dpr1_status s) {
  std::fprintf(stderr, "dpr1: %s\n", dpr1_last_error());
  return static_cast<int>(s);
}

int emit(char* text, const std::string& path) {
  int rc = 0;
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
  } else if (FILE* f = std::fopen(path.c_str(), "wb")) {
    std::fputs(text, f);
    if (std::fclose(f) != 0) rc = -1;
  } else {
    rc = -1;
  }
  dpr1_string_free(text);
  if (rc != 0) {
    std::fprintf(stderr, "dpr1: cannot write '%s'\n", path.c_str());
    return DPR1_ERR_IO;
  }
  return 0;
}

struct MatrixHandle {
  dpr1_matrix* m = nullptr;
  ~MatrixHandle() { dpr1_matrix_free(m); }
};

struct ResultHandle {
  dpr1_result* r = nullptr;
  ~ResultHandle() { dpr1_result_free(r); }
};

const std::map<std::string, dpr1_example> kExamples = {
    {"ex1", DPR1_EXAMPLE_1}, {"ex2", DPR1_EXAMPLE_2},       {"ex3", DPR1_EXAMPLE_3},
    {"ex4", DPR1_EXAMPLE_4}, {"random", DPR1_EXAMPLE_RANDOM}};

struct GenerateOpts {
  std::string example;
  dpr1_generate_params p{};
};

void add_generator_options(CLI::App* cmd, GenerateOpts& g) {
  cmd->add_option("--beta", g.p.beta, "ex4: pole spacing beta")->check(CLI::PositiveNumber);
  cmd->add_option("--n", g.p.n, "ex4/random: matrix order");
  cmd->add_option("--seed", g.p.seed, "random: generator seed");
  cmd->add_option("--spread", g.p.spread, "random: decades spanned by the poles")
      ->check(CLI::PositiveNumber);
}

void add_solver_options(CLI::App* cmd, dpr1_config& cfg, bool& no_dd) {
  cmd->add_flag("--no-dd", no_dd, "never use double-double arithmetic");
  cmd->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--kappa-factor", cfg.kappa_threshold_factor,
                  "recompute b when kappa_nu > factor * n");
  cmd->add_option("--knu-threshold", cfg.K_nu_threshold, "engage remedies when K_nu exceeds this");
  cmd->add_option("--zero-proximity", cfg.zero_proximity_factor,
                  "near-zero rescue factor");
  cmd->add_option("--max-iters", cfg.max_bisect_iters, "bisection iteration cap");
  cmd->add_option("--deflation-tol", cfg.deflation_tol, "relative |zeta| deflation tolerance");
  cmd->add_option("--tie-tol", cfg.tie_tol, "relative tolerance for repeated poles");
}

dpr1_status load_input(const std::string& input, const GenerateOpts& g, MatrixHandle& h) {
  if (!g.example.empty()) {
    dpr1_generate_params p = g.p;
    p.example = kExamples.at(g.example);
    return dpr1_matrix_generate(&p, &h.m);
  }
  return dpr1_matrix_read(input.c_str(), &h.m);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalues and eigenvectors of diagonal-plus-rank-one matrices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dpr1_version()));

  std::string input, result_path, output;
  dpr1_config cfg;
  dpr1_config_default(&cfg);
  bool no_dd = false, measures = false;
  std::size_t k = 0, repeat = 5;
  int digits = 34;
  GenerateOpts gen;
  dpr1_generate_params_default(&gen.p);

  auto* solve = app.add_subcommand("solve", "solve a matrix file and print the result JSON");
  solve->add_option("matrix", input, "matrix file")->required();
  solve->add_option("-o,--output", output, "result file (default stdout)");
  solve->add_option("--k", k, "solve only eigenpair k (one-based)")->check(CLI::PositiveNumber);
  solve->add_flag("--measures", measures, "add orthogonality and residual measures O, R");
  add_solver_options(solve, cfg, no_dd);

  auto* generate = app.add_subcommand("generate", "write a test matrix");
  generate->add_option("example", gen.example, "ex1, ex2, ex3, ex4 or random")
      ->required()
      ->check(CLI::IsMember({"ex1", "ex2", "ex3", "ex4", "random"}));
  generate->add_option("-o,--output", output, "matrix file (default stdout)");
  add_generator_options(generate, gen);

  auto* measure = app.add_subcommand("measures", "O and R of a result against its matrix");
  measure->add_option("matrix", input, "matrix file")->required();
  measure->add_option("result", result_path, "result file")->required();

  auto* bench = app.add_subcommand("bench", "time the solve with and without double-double");
  bench->add_option("matrix", input, "matrix file");
  bench->add_option("--example", gen.example, "generate the input instead of reading it")
      ->check(CLI::IsMember({"ex1", "ex2", "ex3", "ex4", "random"}));
  bench->add_option("--repeat", repeat, "timed runs per variant")->check(CLI::PositiveNumber);
  add_generator_options(bench, gen);
  add_solver_options(bench, cfg, no_dd);

  auto* oracle = app.add_subcommand("oracle", "high-precision reference eigenpairs");
  oracle->add_option("matrix", input, "matrix file")->required();
  oracle->add_option("--digits", digits, "significant decimal digits")->check(CLI::Range(16, 1000));
  oracle->add_option("-o,--output", output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : DPR1_ERR_INVALID_ARGUMENT;
  }
  if (no_dd) cfg.use_double = 0;

  if (*generate) {
    MatrixHandle h;
    if (dpr1_status s = load_input("", gen, h)) return fail(s);
    char* text = nullptr;
    if (dpr1_status s = dpr1_matrix_format(h.m, &text)) return fail(s);
    return emit(text, output);
  }

  if (*solve) {
    MatrixHandle h;
    if (dpr1_status s = dpr1_matrix_read(input.c_str(), &h.m)) return fail(s);
    ResultHandle r;
    const dpr1_status s = k == 0 ? dpr1_solve(h.m, &cfg, &r.r) : dpr1_solve_one(h.m, k, &cfg, &r.r);
    if (s != DPR1_OK) return fail(s);
    if (measures) {
      if (dpr1_status ms = dpr1_result_measure(r.r, h.m, nullptr, nullptr)) return fail(ms);
    }
    char* text = nullptr;
    if (dpr1_status fs = dpr1_result_format(r.r, &text)) return fail(fs);
    return emit(text, output);
  }

  if (*measure) {
    MatrixHandle h;
    if (dpr1_status s = dpr1_matrix_read(input.c_str(), &h.m)) return fail(s);
    ResultHandle r;
    if (dpr1_status s = dpr1_result_read(result_path.c_str(), &r.r)) return fail(s);
    double O = 0.0, R = 0.0;
    if (dpr1_status s = dpr1_result_measure(r.r, h.m, &O, &R)) return fail(s);
    std::printf("{\"O\": %.17g, \"R\": %.17g}\n", O, R);
    return 0;
  }

  if (*bench) {
    if (input.empty() == gen.example.empty()) {
      std::fprintf(stderr, "dpr1: bench needs exactly one of a matrix file or --example\n");
      return DPR1_ERR_INVALID_ARGUMENT;
    }
    MatrixHandle h;
    if (dpr1_status s = load_input(input, gen, h)) return fail(s);
    dpr1_bench_report rep;
    if (dpr1_status s = dpr1_bench(h.m, &cfg, repeat, &rep)) return fail(s);
    std::printf("n %zu\nrepeat %zu\nmedian_dd_seconds %.6g\nmedian_plain_seconds %.6g\n"
                "overhead_ratio %.4f\ndd_count %zu\n",
                rep.n, rep.repeat, rep.median_dd_seconds, rep.median_plain_seconds, rep.ratio,
                rep.dd_count);
    return 0;
  }

  if (*oracle) {
    MatrixHandle h;
    if (dpr1_status s = dpr1_matrix_read(input.c_str(), &h.m)) return fail(s);
    char* text = nullptr;
    if (dpr1_status s = dpr1_oracle(h.m, digits, &text)) return fail(s);
    return emit(text, output);
  }
  return 0;
}
