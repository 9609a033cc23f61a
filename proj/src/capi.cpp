#include "dpr1/dpr1.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "dpr1/bench.hpp"
#include "dpr1/generators.hpp"
#include "dpr1/io.hpp"
#include "dpr1/oracle.hpp"
#include "dpr1/problem.hpp"
#include "json.hpp"

struct dpr1_matrix {
  dpr1::RawInput raw;
};

struct dpr1_result {
  dpr1::Solution sol;
};

namespace {

thread_local std::string last_error;

dpr1_status to_status(dpr1::ErrorCode c) {
  switch (c) {
    case dpr1::ErrorCode::invalid_argument: return DPR1_ERR_INVALID_ARGUMENT;
    case dpr1::ErrorCode::parse: return DPR1_ERR_PARSE;
    case dpr1::ErrorCode::solver: return DPR1_ERR_SOLVER;
    case dpr1::ErrorCode::extended_precision: return DPR1_ERR_EXTENDED_PRECISION;
    case dpr1::ErrorCode::io: return DPR1_ERR_IO;
    case dpr1::ErrorCode::internal: return DPR1_ERR_INTERNAL;
  }
  return DPR1_ERR_INTERNAL;
}

template <typename F>
dpr1_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return DPR1_OK;
  } catch (const dpr1::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DPR1_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DPR1_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return DPR1_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw dpr1::Error(dpr1::ErrorCode::invalid_argument, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

dpr1::SolveOptions options_from(const dpr1_config* cfg) {
  dpr1_config c;
  if (cfg) {
    c = *cfg;
  } else {
    dpr1_config_default(&c);
  }
  dpr1::SolveOptions o;
  o.solver.use_double = c.use_double != 0;
  o.solver.kappa_threshold_factor = c.kappa_threshold_factor;
  o.solver.K_nu_threshold = c.K_nu_threshold;
  o.solver.zero_proximity_factor = c.zero_proximity_factor;
  o.solver.max_bisect_iters = c.max_bisect_iters;
  o.solver.check();
  o.threads = c.threads == 0 ? 1 : c.threads;
  require(c.deflation_tol >= 0.0 && c.tie_tol >= 0.0, "tolerances must be nonnegative");
  o.reduce.deflation_tol = c.deflation_tol;
  o.reduce.tie_tol = c.tie_tol;
  return o;
}

std::string oracle_json(const dpr1::RawInput& raw, int digits) {
  const dpr1::ReductionResult red = dpr1::reduce(raw);
  if (!red.rotations.empty()) {
    throw dpr1::Error(dpr1::ErrorCode::invalid_argument, "oracle: repeated poles are not supported");
  }
  const std::size_t n = raw.size();
  std::vector<std::string> lambda;
  std::vector<std::vector<std::string>> vectors;
  if (red.core) {
    const auto values = dpr1::oracle_eigvals(*red.core, digits);
    for (const auto& l : values) {
      lambda.push_back((red.negated ? -l : l).to_string(digits));
      const auto v = dpr1::oracle_eigvec(*red.core, l);
      std::vector<std::string> col(n, "0");
      for (std::size_t c = 0; c < v.size(); ++c) col[red.permutation[c]] = v[c].to_string(digits);
      vectors.push_back(std::move(col));
    }
  }
  for (const auto& p : red.deflated) {
    lambda.push_back(dpr1::format_double(p.lambda));
    std::vector<std::string> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = dpr1::format_double(p.v[i]);
    vectors.push_back(std::move(col));
  }
  nlohmann::ordered_json doc;
  doc["n"] = n;
  doc["digits"] = digits;
  doc["lambda"] = lambda;
  nlohmann::ordered_json v = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < n; ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (const auto& col : vectors) row.push_back(col[i]);
    v.push_back(std::move(row));
  }
  doc["V"] = std::move(v);
  return doc.dump(1) + "\n";
}

}  // namespace

extern "C" {

const char* dpr1_version(void) { return "1.0.0"; }

const char* dpr1_last_error(void) { return last_error.c_str(); }

void dpr1_string_free(char* s) { std::free(s); }

void dpr1_config_default(dpr1_config* cfg) {
  if (!cfg) return;
  const dpr1::SolverConfig s;
  const dpr1::ReduceOptions r;
  cfg->use_double = s.use_double ? 1 : 0;
  cfg->kappa_threshold_factor = s.kappa_threshold_factor;
  cfg->K_nu_threshold = s.K_nu_threshold;
  cfg->zero_proximity_factor = s.zero_proximity_factor;
  cfg->max_bisect_iters = s.max_bisect_iters;
  cfg->threads = 1;
  cfg->deflation_tol = r.deflation_tol;
  cfg->tie_tol = r.tie_tol;
}

void dpr1_generate_params_default(dpr1_generate_params* p) {
  if (!p) return;
  const dpr1::RandomParams r;
  p->example = DPR1_EXAMPLE_1;
  p->beta = 1e-3;
  p->n = 0;
  p->seed = r.seed;
  p->spread = r.spread;
}

dpr1_status dpr1_matrix_create(const double* d, const double* z, size_t n, double rho,
                               dpr1_matrix** out) {
  return guarded([&] {
    require(out && (n == 0 || (d && z)), "dpr1_matrix_create: null argument");
    auto m = std::make_unique<dpr1_matrix>();
    m->raw = dpr1::validate(std::vector<double>(d, d + n), std::vector<double>(z, z + n), rho);
    *out = m.release();
  });
}

dpr1_status dpr1_matrix_parse(const char* text, dpr1_matrix** out) {
  return guarded([&] {
    require(text && out, "dpr1_matrix_parse: null argument");
    *out = new dpr1_matrix{dpr1::parse_matrix(text)};
  });
}

dpr1_status dpr1_matrix_read(const char* path, dpr1_matrix** out) {
  return guarded([&] {
    require(path && out, "dpr1_matrix_read: null argument");
    *out = new dpr1_matrix{dpr1::read_matrix(path)};
  });
}

dpr1_status dpr1_matrix_generate(const dpr1_generate_params* p, dpr1_matrix** out) {
  return guarded([&] {
    require(p && out, "dpr1_matrix_generate: null argument");
    dpr1::RawInput raw;
    switch (p->example) {
      case DPR1_EXAMPLE_1: raw = dpr1::example1(); break;
      case DPR1_EXAMPLE_2: raw = dpr1::example2(); break;
      case DPR1_EXAMPLE_3: raw = dpr1::example3(); break;
      case DPR1_EXAMPLE_4:
        raw = dpr1::example4(p->beta, p->n == 0 ? dpr1::kExample4DefaultSize : p->n);
        break;
      case DPR1_EXAMPLE_RANDOM: {
        dpr1::RandomParams r;
        if (p->n != 0) r.n = p->n;
        r.seed = p->seed;
        r.spread = p->spread;
        raw = dpr1::random_matrix(r);
        break;
      }
      default: require(false, "dpr1_matrix_generate: unknown example");
    }
    *out = new dpr1_matrix{std::move(raw)};
  });
}

dpr1_status dpr1_matrix_format(const dpr1_matrix* m, char** text) {
  return guarded([&] {
    require(m && text, "dpr1_matrix_format: null argument");
    *text = copy_string(dpr1::format_matrix(m->raw));
  });
}

dpr1_status dpr1_matrix_write(const dpr1_matrix* m, const char* path) {
  return guarded([&] {
    require(m && path, "dpr1_matrix_write: null argument");
    dpr1::write_matrix(m->raw, path);
  });
}

size_t dpr1_matrix_size(const dpr1_matrix* m) { return m ? m->raw.size() : 0; }

dpr1_status dpr1_matrix_data(const dpr1_matrix* m, const double** d, const double** z,
                             double* rho) {
  return guarded([&] {
    require(m, "dpr1_matrix_data: null matrix");
    if (d) *d = m->raw.d.data();
    if (z) *z = m->raw.z.data();
    if (rho) *rho = m->raw.rho;
  });
}

void dpr1_matrix_free(dpr1_matrix* m) { delete m; }

dpr1_status dpr1_solve(const dpr1_matrix* m, const dpr1_config* cfg, dpr1_result** out) {
  return guarded([&] {
    require(m && out, "dpr1_solve: null argument");
    *out = new dpr1_result{dpr1::solve(m->raw, options_from(cfg))};
  });
}

dpr1_status dpr1_solve_one(const dpr1_matrix* m, size_t k, const dpr1_config* cfg,
                           dpr1_result** out) {
  return guarded([&] {
    require(m && out, "dpr1_solve_one: null argument");
    *out = new dpr1_result{dpr1::solve_one(m->raw, k, options_from(cfg))};
  });
}

dpr1_status dpr1_result_parse(const char* text, dpr1_result** out) {
  return guarded([&] {
    require(text && out, "dpr1_result_parse: null argument");
    *out = new dpr1_result{dpr1::parse_result(text)};
  });
}

dpr1_status dpr1_result_read(const char* path, dpr1_result** out) {
  return guarded([&] {
    require(path && out, "dpr1_result_read: null argument");
    *out = new dpr1_result{dpr1::read_result(path)};
  });
}

size_t dpr1_result_count(const dpr1_result* r) { return r ? r->sol.count() : 0; }

size_t dpr1_result_dim(const dpr1_result* r) { return r ? r->sol.n : 0; }

const double* dpr1_result_lambda(const dpr1_result* r) { return r ? r->sol.lambda.data() : nullptr; }

const double* dpr1_result_sigma(const dpr1_result* r) { return r ? r->sol.sigma.data() : nullptr; }

const double* dpr1_result_mu(const dpr1_result* r) { return r ? r->sol.mu.data() : nullptr; }

const double* dpr1_result_vector(const dpr1_result* r, size_t j) {
  if (!r || j >= r->sol.vectors.size()) return nullptr;
  return r->sol.vectors[j].data();
}

dpr1_status dpr1_result_diagnostics(const dpr1_result* r, size_t j, dpr1_diagnostics* out) {
  return guarded([&] {
    require(r && out, "dpr1_result_diagnostics: null argument");
    require(j < r->sol.diags.size(), "dpr1_result_diagnostics: index out of range");
    const auto& d = r->sol.diags[j];
    out->kappa_nu = d.kappa_nu;
    out->K_b = d.K_b;
    out->K_z = d.K_z;
    out->K_nu = d.K_nu;
    out->nu = d.nu;
    out->used_double_b = d.used_double_b ? 1 : 0;
    out->used_remedy = static_cast<dpr1_remedy>(d.used_remedy);
    out->bisection_iters = d.bisection_iters;
    out->deflated = d.deflated ? 1 : 0;
  });
}

dpr1_status dpr1_result_measure(dpr1_result* r, const dpr1_matrix* m, double* O, double* R) {
  return guarded([&] {
    require(r && m, "dpr1_result_measure: null argument");
    require(r->sol.n == m->raw.size(), "dpr1_result_measure: result and matrix sizes differ");
    const dpr1::Measures ms = dpr1::compute_measures(m->raw, r->sol.lambda, r->sol.vectors);
    r->sol.measures = ms;
    if (O) *O = ms.O;
    if (R) *R = ms.R;
  });
}

dpr1_status dpr1_result_format(const dpr1_result* r, char** json) {
  return guarded([&] {
    require(r && json, "dpr1_result_format: null argument");
    *json = copy_string(dpr1::format_result(r->sol));
  });
}

void dpr1_result_free(dpr1_result* r) { delete r; }

dpr1_status dpr1_oracle(const dpr1_matrix* m, int digits, char** json) {
  return guarded([&] {
    require(m && json, "dpr1_oracle: null argument");
    *json = copy_string(oracle_json(m->raw, digits));
  });
}

dpr1_status dpr1_bench(const dpr1_matrix* m, const dpr1_config* cfg, size_t repeat,
                       dpr1_bench_report* out) {
  return guarded([&] {
    require(m && out, "dpr1_bench: null argument");
    const dpr1::BenchReport b = dpr1::bench(m->raw, options_from(cfg), repeat);
    out->n = b.n;
    out->repeat = b.repeat;
    out->median_dd_seconds = b.median_dd_seconds;
    out->median_plain_seconds = b.median_plain_seconds;
    out->ratio = b.ratio;
    out->dd_count = b.dd_count;
  });
}

}  // extern "C"
