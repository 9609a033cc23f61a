#pragma once

// Text formats.
//
// Matrix file:
//   dpr1 v1 n=<n>
//   rho <value>
//   <d_1> <zeta_1>
//   ...
// Values are printed as the shortest decimal that reads back to the same
// binary64. Blank lines and lines starting with '#' are ignored on input.
//
// Result file: one JSON document with lambda, sigma, mu, V (row-major,
// V[i][j] is component i of eigenvector j), diagnostics and, when computed,
// measures {O, R}.

#include <filesystem>
#include <string>
#include <string_view>

#include "dpr1/core.hpp"
#include "dpr1/problem.hpp"

namespace dpr1 {

// Shortest round-trip decimal of x. Throws for non-finite x.
std::string format_double(double x);

// Whole-token decimal parse; throws Error(parse) on junk or overflow.
double parse_double(std::string_view token);

std::string format_matrix(const RawInput& a);
RawInput parse_matrix(std::string_view text);
RawInput read_matrix(const std::filesystem::path& path);
void write_matrix(const RawInput& a, const std::filesystem::path& path);

std::string format_result(const Solution& s);
Solution parse_result(std::string_view text);
Solution read_result(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace dpr1
