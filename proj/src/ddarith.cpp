#include "dpr1/ddarith.hpp"

#include <string>

#include "dpr1/error.hpp"

namespace dpr1::dd {

DoubleDouble div(const DoubleDouble& x, const DoubleDouble& y) {
  if (y.hi == 0.0) {
    throw Error(ErrorCode::solver, "double-double division by zero");
  }
  return div_unchecked(x, y);
}

namespace {

template <typename T>
DoubleDouble accumulate(std::span<const T> num, std::span<const T> den) {
  if (num.size() != den.size()) {
    throw Error(ErrorCode::invalid_argument,
                "sum_of_quotients: numerator and denominator lengths differ");
  }
  DoubleDouble acc;
  for (std::size_t k = 0; k < num.size(); ++k) {
    const DoubleDouble q = DoubleDouble(den[k]);
    if (q.hi == 0.0) {
      throw Error(ErrorCode::solver,
                  "sum_of_quotients: zero denominator at term " + std::to_string(k));
    }
    acc = add(acc, div_unchecked(DoubleDouble(num[k]), q));
  }
  return acc;
}

}  // namespace

DoubleDouble sum_of_quotients(std::span<const double> num,
                              std::span<const double> den) {
  return accumulate(num, den);
}

DoubleDouble sum_of_quotients(std::span<const DoubleDouble> num,
                              std::span<const DoubleDouble> den) {
  return accumulate(num, den);
}

}  // namespace dpr1::dd
