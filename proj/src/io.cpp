#include "dpr1/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace dpr1 {

using json = nlohmann::ordered_json;

std::string format_double(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::invalid_argument, "format_double: non-finite value");
  }
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

double parse_double(std::string_view token) {
  double x = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  const auto r = std::from_chars(first, last, x);
  if (r.ec == std::errc::result_out_of_range) {
    throw Error(ErrorCode::parse, "number out of range: '" + std::string(token) + "'");
  }
  if (r.ec != std::errc() || r.ptr != last) {
    throw Error(ErrorCode::parse, "not a number: '" + std::string(token) + "'");
  }
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::parse, "non-finite value: '" + std::string(token) + "'");
  }
  return x;
}

std::string format_matrix(const RawInput& a) {
  std::string out = "dpr1 v1 n=" + std::to_string(a.size()) + "\n";
  out += "rho " + format_double(a.rho) + "\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    out += format_double(a.d[i]) + " " + format_double(a.z[i]) + "\n";
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::parse, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_at(std::size_t line, const std::string& tok) {
  try {
    return parse_double(tok);
  } catch (const Error& e) {
    parse_fail(line, e.what());
  }
}

}  // namespace

RawInput parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  enum { header, rho, rows } state = header;
  std::size_t n = 0;
  RawInput a;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tok = split_ws(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    switch (state) {
      case header: {
        if (tok.size() != 3 || tok[0] != "dpr1" || tok[1] != "v1" || tok[2].rfind("n=", 0) != 0) {
          parse_fail(lineno, "expected header 'dpr1 v1 n=<n>'");
        }
        const std::string count = tok[2].substr(2);
        const auto r = std::from_chars(count.data(), count.data() + count.size(), n);
        if (r.ec != std::errc() || r.ptr != count.data() + count.size() || n == 0) {
          parse_fail(lineno, "invalid matrix size '" + count + "'");
        }
        state = rho;
        break;
      }
      case rho:
        if (tok.size() != 2 || tok[0] != "rho") parse_fail(lineno, "expected 'rho <value>'");
        a.rho = parse_at(lineno, tok[1]);
        state = rows;
        break;
      case rows:
        if (a.d.size() == n) parse_fail(lineno, "more than n=" + std::to_string(n) + " rows");
        if (tok.size() != 2) parse_fail(lineno, "expected '<d> <zeta>'");
        a.d.push_back(parse_at(lineno, tok[0]));
        a.z.push_back(parse_at(lineno, tok[1]));
        break;
    }
  }
  if (state == header) parse_fail(lineno, "missing header");
  if (state == rho) parse_fail(lineno, "missing rho line");
  if (a.d.size() != n) {
    parse_fail(lineno, "expected " + std::to_string(n) + " rows, found " +
                           std::to_string(a.d.size()));
  }
  try {
    return validate(std::move(a.d), std::move(a.z), a.rho);
  } catch (const Error& e) {
    throw Error(ErrorCode::parse, e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::io, "cannot write '" + path.string() + "'");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw Error(ErrorCode::io, "write failed for '" + path.string() + "'");
}

RawInput read_matrix(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return parse_matrix(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_matrix(const RawInput& a, const std::filesystem::path& path) {
  write_text(path, format_matrix(a));
}

std::string format_result(const Solution& s) {
  json doc;
  doc["n"] = s.n;
  doc["index"] = s.index;
  doc["lambda"] = s.lambda;
  doc["sigma"] = s.sigma;
  doc["mu"] = s.mu;
  json v = json::array();
  for (std::size_t i = 0; i < s.n; ++i) {
    json row = json::array();
    for (const auto& col : s.vectors) row.push_back(col[i]);
    v.push_back(std::move(row));
  }
  doc["V"] = std::move(v);
  json diags = json::array();
  for (const auto& d : s.diags) {
    json e;
    e["kappa_nu"] = d.kappa_nu;
    e["K_b"] = d.K_b;
    e["K_z"] = d.K_z;
    e["K_nu"] = d.K_nu;
    e["nu"] = d.nu;
    e["used_double_b"] = d.used_double_b;
    e["used_remedy"] = std::string(to_string(d.used_remedy));
    e["bisection_iters"] = d.bisection_iters;
    if (d.shift_index == kNoPole) {
      e["shift_index"] = nullptr;
    } else {
      e["shift_index"] = d.shift_index + 1;
    }
    e["deflated"] = d.deflated;
    diags.push_back(std::move(e));
  }
  doc["diagnostics"] = std::move(diags);
  if (s.measures) doc["measures"] = {{"O", s.measures->O}, {"R", s.measures->R}};
  return doc.dump(1) + "\n";
}

namespace {

double number_or_nan(const json& j) {
  return j.is_number() ? j.get<double>() : std::numeric_limits<double>::quiet_NaN();
}

Remedy remedy_from(const std::string& s) {
  for (Remedy r : {Remedy::none, Remedy::r1, Remedy::r2, Remedy::recompute_via_inverse}) {
    if (to_string(r) == s) return r;
  }
  throw Error(ErrorCode::parse, "unknown remedy '" + s + "'");
}

}  // namespace

Solution parse_result(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("result file: ") + e.what());
  }
  try {
    Solution s;
    s.lambda = doc.at("lambda").get<std::vector<double>>();
    const auto& v = doc.at("V");
    s.n = doc.contains("n") ? doc["n"].get<std::size_t>() : v.size();
    if (v.size() != s.n) throw Error(ErrorCode::parse, "result file: V has wrong row count");
    s.vectors.assign(s.lambda.size(), std::vector<double>(s.n));
    for (std::size_t i = 0; i < s.n; ++i) {
      if (v[i].size() != s.lambda.size()) {
        throw Error(ErrorCode::parse, "result file: V row " + std::to_string(i) +
                                          " has wrong length");
      }
      for (std::size_t j = 0; j < s.lambda.size(); ++j) s.vectors[j][i] = v[i][j].get<double>();
    }
    const std::size_t m = s.lambda.size();
    if (doc.contains("index")) {
      s.index = doc["index"].get<std::vector<std::size_t>>();
    } else {
      for (std::size_t j = 1; j <= m; ++j) s.index.push_back(j);
    }
    s.sigma = doc.contains("sigma") ? doc["sigma"].get<std::vector<double>>() : s.lambda;
    s.mu = doc.contains("mu") ? doc["mu"].get<std::vector<double>>() : std::vector<double>(m);
    if (s.index.size() != m || s.sigma.size() != m || s.mu.size() != m) {
      throw Error(ErrorCode::parse, "result file: array lengths disagree");
    }
    s.diags.resize(m);
    if (doc.contains("diagnostics")) {
      const auto& dj = doc["diagnostics"];
      if (dj.size() != m) throw Error(ErrorCode::parse, "result file: diagnostics length");
      for (std::size_t j = 0; j < m; ++j) {
        auto& d = s.diags[j];
        const auto& e = dj[j];
        d.kappa_nu = number_or_nan(e.value("kappa_nu", json()));
        d.K_b = number_or_nan(e.value("K_b", json()));
        d.K_z = number_or_nan(e.value("K_z", json()));
        d.K_nu = number_or_nan(e.value("K_nu", json()));
        d.nu = number_or_nan(e.value("nu", json()));
        d.used_double_b = e.value("used_double_b", false);
        d.used_remedy = remedy_from(e.value("used_remedy", std::string("none")));
        d.bisection_iters = e.value("bisection_iters", std::size_t{0});
        const json si = e.value("shift_index", json());
        d.shift_index = si.is_number() ? si.get<std::size_t>() - 1 : kNoPole;
        d.deflated = e.value("deflated", false);
      }
    }
    if (doc.contains("measures")) {
      s.measures = Measures{number_or_nan(doc["measures"].value("O", json())),
                            number_or_nan(doc["measures"].value("R", json()))};
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("result file: ") + e.what());
  }
}

Solution read_result(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return parse_result(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace dpr1
