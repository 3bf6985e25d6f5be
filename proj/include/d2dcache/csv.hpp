#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace d2dcache {

inline constexpr std::string_view kCsvHeader =
    "gamma,m,n,M,delta,K,g_c,p_out_sim,t_min_norm,t_mean_norm,std_err_p,std_err_t,"
    "p_out_theory,t_theory_norm,realizations,seed";

// One row of the sweep/theory CSV. Unset optionals serialize as empty fields.
struct CsvRow {
  double gamma = 0.0;
  int m = 0;
  int n = 0;
  int M = 0;
  double delta = 0.0;
  int K = 0;
  std::optional<int> g_c;
  std::optional<double> p_out_sim;
  std::optional<double> t_min_norm;
  std::optional<double> t_mean_norm;
  std::optional<double> std_err_p;
  std::optional<double> std_err_t;
  std::optional<double> p_out_theory;
  std::optional<double> t_theory_norm;
  std::optional<long long> realizations;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

// Fixed-point decimal with 9 significant digits, trailing zeros removed.
// Throws NumericalError for non-finite input.
std::string format_decimal(double value);

void write_csv(std::span<const CsvRow> rows, std::ostream& out);
// Throws ConfigError when the file cannot be written.
void write_csv(std::span<const CsvRow> rows, const std::string& path);

// Throws ConfigError on a header mismatch or a malformed field.
std::vector<CsvRow> read_csv(std::istream& in);

}  // namespace d2dcache
