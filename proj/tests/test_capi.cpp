#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "dpr1/dpr1.h"

namespace {

struct Matrix {
  dpr1_matrix* m = nullptr;
  ~Matrix() { dpr1_matrix_free(m); }
};

struct Result {
  dpr1_result* r = nullptr;
  ~Result() { dpr1_result_free(r); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  dpr1_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, CreateSolveAndInspect) {
  const double d[] = {2, 1};
  const double z[] = {1, 1};
  Matrix m;
  ASSERT_EQ(dpr1_matrix_create(d, z, 2, 1.0, &m.m), DPR1_OK);
  EXPECT_EQ(dpr1_matrix_size(m.m), 2u);
  Result r;
  ASSERT_EQ(dpr1_solve(m.m, nullptr, &r.r), DPR1_OK);
  ASSERT_EQ(dpr1_result_count(r.r), 2u);
  EXPECT_EQ(dpr1_result_dim(r.r), 2u);
  EXPECT_NEAR(dpr1_result_lambda(r.r)[0], (5 + std::sqrt(5.0)) / 2, 1e-15);
  EXPECT_NEAR(dpr1_result_lambda(r.r)[1], (5 - std::sqrt(5.0)) / 2, 1e-15);
  const double* v = dpr1_result_vector(r.r, 0);
  ASSERT_NE(v, nullptr);
  EXPECT_NEAR(v[0] * v[0] + v[1] * v[1], 1.0, 1e-15);
  EXPECT_EQ(dpr1_result_vector(r.r, 2), nullptr);

  dpr1_diagnostics diag;
  ASSERT_EQ(dpr1_result_diagnostics(r.r, 1, &diag), DPR1_OK);
  EXPECT_EQ(diag.used_remedy, DPR1_REMEDY_NONE);
  EXPECT_EQ(diag.deflated, 0);

  double O = -1, R = -1;
  ASSERT_EQ(dpr1_result_measure(r.r, m.m, &O, &R), DPR1_OK);
  EXPECT_LE(O, 1.0);
  EXPECT_LE(R, 1.0);
  const std::string json = take([&] {
    char* s = nullptr;
    EXPECT_EQ(dpr1_result_format(r.r, &s), DPR1_OK);
    return s;
  }());
  EXPECT_NE(json.find("\"measures\""), std::string::npos);

  Result back;
  ASSERT_EQ(dpr1_result_parse(json.c_str(), &back.r), DPR1_OK);
  EXPECT_EQ(dpr1_result_lambda(back.r)[1], dpr1_result_lambda(r.r)[1]);
}

TEST(CApi, SolveOne) {
  dpr1_generate_params p;
  dpr1_generate_params_default(&p);
  p.example = DPR1_EXAMPLE_1;
  Matrix m;
  ASSERT_EQ(dpr1_matrix_generate(&p, &m.m), DPR1_OK);
  Result r;
  ASSERT_EQ(dpr1_solve_one(m.m, 4, nullptr, &r.r), DPR1_OK);
  ASSERT_EQ(dpr1_result_count(r.r), 1u);
  EXPECT_EQ(dpr1_result_lambda(r.r)[0], 9.999999998999997e-25);
  Result bad;
  EXPECT_EQ(dpr1_solve_one(m.m, 7, nullptr, &bad.r), DPR1_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(bad.r, nullptr);
}

TEST(CApi, Errors) {
  const double d[] = {1, 2};
  const double z[] = {1, 1};
  Matrix m;
  EXPECT_EQ(dpr1_matrix_create(d, z, 2, 0.0, &m.m), DPR1_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(dpr1_last_error()), "");
  EXPECT_EQ(dpr1_matrix_create(nullptr, z, 2, 1.0, &m.m), DPR1_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dpr1_matrix_parse("dpr1 v1 n=1\nrho 1\nx 1\n", &m.m), DPR1_ERR_PARSE);
  EXPECT_NE(std::string(dpr1_last_error()).find("line 3"), std::string::npos);
  EXPECT_EQ(dpr1_matrix_read("/nonexistent/file", &m.m), DPR1_ERR_IO);
  EXPECT_EQ(dpr1_result_parse("[", nullptr), DPR1_ERR_INVALID_ARGUMENT);

  ASSERT_EQ(dpr1_matrix_create(d, z, 2, 1.0, &m.m), DPR1_OK);
  dpr1_config cfg;
  dpr1_config_default(&cfg);
  cfg.K_nu_threshold = -1;
  Result r;
  EXPECT_EQ(dpr1_solve(m.m, &cfg, &r.r), DPR1_ERR_INVALID_ARGUMENT);
}

TEST(CApi, FormatParseRoundTrip) {
  dpr1_generate_params p;
  dpr1_generate_params_default(&p);
  p.example = DPR1_EXAMPLE_4;
  p.beta = 1e-3;
  Matrix m;
  ASSERT_EQ(dpr1_matrix_generate(&p, &m.m), DPR1_OK);
  EXPECT_EQ(dpr1_matrix_size(m.m), 202u);
  char* text = nullptr;
  ASSERT_EQ(dpr1_matrix_format(m.m, &text), DPR1_OK);
  const std::string first = take(text);
  Matrix again;
  ASSERT_EQ(dpr1_matrix_parse(first.c_str(), &again.m), DPR1_OK);
  ASSERT_EQ(dpr1_matrix_format(again.m, &text), DPR1_OK);
  EXPECT_EQ(take(text), first);
}

TEST(CApi, ThreadCountDoesNotChangeTheResult) {
  dpr1_generate_params p;
  dpr1_generate_params_default(&p);
  p.example = DPR1_EXAMPLE_RANDOM;
  p.n = 25;
  p.seed = 3;
  Matrix m;
  ASSERT_EQ(dpr1_matrix_generate(&p, &m.m), DPR1_OK);
  dpr1_config cfg;
  dpr1_config_default(&cfg);
  std::string out[2];
  for (unsigned t : {1u, 8u}) {
    cfg.threads = t;
    Result r;
    ASSERT_EQ(dpr1_solve(m.m, &cfg, &r.r), DPR1_OK);
    char* s = nullptr;
    ASSERT_EQ(dpr1_result_format(r.r, &s), DPR1_OK);
    out[t == 8] = take(s);
  }
  EXPECT_EQ(out[0], out[1]);
}

TEST(CApi, Oracle) {
  const double d[] = {5};
  const double z[] = {2};
  Matrix m;
  ASSERT_EQ(dpr1_matrix_create(d, z, 1, 1.0, &m.m), DPR1_OK);
  char* s = nullptr;
  ASSERT_EQ(dpr1_oracle(m.m, 20, &s), DPR1_OK);
  EXPECT_NE(take(s).find("9.0000000000000000000e+00"), std::string::npos);
  EXPECT_EQ(dpr1_oracle(m.m, 3, &s), DPR1_ERR_INVALID_ARGUMENT);
}
