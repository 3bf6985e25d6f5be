#include "d2dcache/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <type_traits>

#include "d2dcache/errors.hpp"

namespace d2dcache {

std::string format_decimal(double value) {
  if (!std::isfinite(value)) throw NumericalError("cannot serialize a non-finite value");
  if (value == 0.0) return "0";
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(value))));
  const int decimals = std::max(0, 8 - exponent);
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

namespace {

template <class T>
void put(std::ostream& out, const std::optional<T>& v) {
  out << ',';
  if (!v) return;
  if constexpr (std::is_floating_point_v<T>) out << format_decimal(*v);
  else out << *v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

template <class T>
T parse_number(const std::string& field, const char* column) {
  T value{};
  const char* first = field.data();
  const char* last = first + field.size();
  const auto res = std::from_chars(first, last, value);
  if (field.empty() || res.ec != std::errc{} || res.ptr != last) {
    throw ConfigError(std::string(column) + ": malformed value '" + field + "'");
  }
  return value;
}

template <class T>
std::optional<T> parse_optional(const std::string& field, const char* column) {
  if (field.empty()) return std::nullopt;
  return parse_number<T>(field, column);
}

}  // namespace

void write_csv(std::span<const CsvRow> rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const CsvRow& r : rows) {
    out << format_decimal(r.gamma) << ',' << r.m << ',' << r.n << ',' << r.M << ','
        << format_decimal(r.delta) << ',' << r.K;
    put(out, r.g_c);
    put(out, r.p_out_sim);
    put(out, r.t_min_norm);
    put(out, r.t_mean_norm);
    put(out, r.std_err_p);
    put(out, r.std_err_t);
    put(out, r.p_out_theory);
    put(out, r.t_theory_norm);
    put(out, r.realizations);
    put(out, r.seed);
    out << '\n';
  }
}

void write_csv(std::span<const CsvRow> rows, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("output: cannot open " + path);
  write_csv(rows, file);
  file.flush();
  if (!file) throw ConfigError("output: write failed for " + path);
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ConfigError("csv: unexpected header");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = split_fields(line);
    if (f.size() != 16) throw ConfigError("csv: expected 16 fields, got " + std::to_string(f.size()));
    CsvRow r;
    r.gamma = parse_number<double>(f[0], "gamma");
    r.m = parse_number<int>(f[1], "m");
    r.n = parse_number<int>(f[2], "n");
    r.M = parse_number<int>(f[3], "M");
    r.delta = parse_number<double>(f[4], "delta");
    r.K = parse_number<int>(f[5], "K");
    r.g_c = parse_optional<int>(f[6], "g_c");
    r.p_out_sim = parse_optional<double>(f[7], "p_out_sim");
    r.t_min_norm = parse_optional<double>(f[8], "t_min_norm");
    r.t_mean_norm = parse_optional<double>(f[9], "t_mean_norm");
    r.std_err_p = parse_optional<double>(f[10], "std_err_p");
    r.std_err_t = parse_optional<double>(f[11], "std_err_t");
    r.p_out_theory = parse_optional<double>(f[12], "p_out_theory");
    r.t_theory_norm = parse_optional<double>(f[13], "t_theory_norm");
    r.realizations = parse_optional<long long>(f[14], "realizations");
    r.seed = parse_optional<std::uint64_t>(f[15], "seed");
    rows.push_back(r);
  }
  return rows;
}

}  // namespace d2dcache
