// cli.hpp: command-line front end. run_cli is the whole program minus
// process plumbing, so tests can drive it with in-memory streams.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sdsteer::cli {

/// args excludes the program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "x" or "start:end:step", both ends inclusive within 1e-12; every value in
/// [0, 1]. Throws std::invalid_argument on malformed input.
std::vector<double> parse_eta_grid(std::string_view text);

/// A supported setting count or "all". Throws std::invalid_argument.
std::vector<int> parse_settings(std::string_view text);

enum class Format { kCsv, kJson };

using Cell = std::variant<double, std::int64_t, std::uint64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// CSV with a header row, or a JSON array of flat objects with the same keys.
/// Reals carry 9 significant digits in both.
void write_table(std::ostream& os, const Table& table, Format format);

struct VerifyRow {
  std::string group;
  int n = 0;  // 0 for the Bell-diagonal family
  std::string item;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Channel validity, factorization, bound, strategy-table rows and Werner
/// linearity for one setting count.
std::vector<VerifyRow> verify_setting(int n);
std::vector<VerifyRow> verify_bell_diagonal();
/// Recipe distances, checked against the labelled gates.
std::vector<VerifyRow> verify_waveplates(int n);

}  // namespace sdsteer::cli
