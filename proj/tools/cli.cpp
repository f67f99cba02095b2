#include "cli.hpp"

#include "sdsteer/channel_factory.hpp"
#include "sdsteer/experiment_sim.hpp"
#include "sdsteer/format.hpp"
#include "sdsteer/sd_protocols.hpp"
#include "sdsteer/steering_analysis.hpp"
#include "sdsteer/strategy_tables.hpp"
#include "sdsteer/waveplate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <numbers>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace sdsteer::cli {

namespace {

double parse_real(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<double> parse_eta_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  std::vector<double> grid;
  if (parts.size() == 1) {
    grid.push_back(parse_real(parts[0]));
  } else if (parts.size() == 3) {
    const double lo = parse_real(parts[0]);
    const double hi = parse_real(parts[1]);
    const double step = parse_real(parts[2]);
    if (!(step > 0.0)) throw std::invalid_argument("eta grid step must be positive");
    if (hi < lo) throw std::invalid_argument("eta grid end precedes start");
    constexpr double kSlack = 1e-12;
    for (std::size_t k = 0;; ++k) {
      double v = lo + static_cast<double>(k) * step;
      if (v > hi + kSlack) break;
      if (std::abs(v - hi) <= kSlack) v = hi;
      grid.push_back(v);
    }
  } else {
    throw std::invalid_argument("eta grid must be 'x' or 'start:end:step'");
  }
  for (double v : grid) {
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("eta values must lie in [0, 1]");
  }
  return grid;
}

std::vector<int> parse_settings(std::string_view text) {
  if (text == "all") return {kSupportedSettings.begin(), kSupportedSettings.end()};
  const double v = parse_real(text);
  const int n = static_cast<int>(v);
  if (static_cast<double>(n) != v || !is_supported_setting_count(n)) {
    throw std::invalid_argument("unsupported setting count '" + std::string(text) +
                                "' (expected 2, 3, 4, 6, 10 or all)");
  }
  return {n};
}

// ------------------------------- tables ------------------------------------

namespace {

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(double x) const { return fmt_real(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(std::uint64_t x) const { return std::to_string(x); }
    std::string operator()(bool x) const { return fmt_bool(x); }
    std::string operator()(const std::string& x) const { return x; }
  };
  return std::visit(Visitor{}, c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

nlohmann::ordered_json cell_json(const Cell& c) {
  struct Visitor {
    // Round-trip through the 9-digit text so JSON and CSV carry the same value.
    nlohmann::ordered_json operator()(double x) const { return std::stod(fmt_real(x)); }
    nlohmann::ordered_json operator()(std::int64_t x) const { return x; }
    nlohmann::ordered_json operator()(std::uint64_t x) const { return x; }
    nlohmann::ordered_json operator()(bool x) const { return x; }
    nlohmann::ordered_json operator()(const std::string& x) const { return x; }
  };
  return std::visit(Visitor{}, c);
}

}  // namespace

void write_table(std::ostream& os, const Table& table, Format format) {
  if (format == Format::kCsv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      os << (i ? "," : "") << csv_field(table.columns[i]);
    }
    os << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "") << csv_field(cell_text(row[i]));
      }
      os << '\n';
    }
    return;
  }
  // Keys keep column order.
  nlohmann::ordered_json ordered = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      obj[table.columns[i]] = cell_json(row[i]);
    }
    ordered.push_back(std::move(obj));
  }
  os << ordered.dump(2) << '\n';
}

// ------------------------------- verify ------------------------------------

namespace {

VerifyRow at_most(std::string group, int n, std::string item, double measured, double tol) {
  return {std::move(group), n, std::move(item), measured, tol, measured < tol};
}

VerifyRow at_least(std::string group, int n, std::string item, double measured, double tol) {
  return {std::move(group), n, std::move(item), measured, tol, measured >= tol};
}

double unitarity_defect(const ComplexMatrix& m) {
  return max_abs_diff(m.adjoint() * m, identity(static_cast<std::size_t>(m.rows())));
}

void append_channel_rows(std::vector<VerifyRow>& rows, int n,
                         const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& dilation,
                         const ComplexMatrix& a0, const ComplexMatrix& a1) {
  const auto report = validate_channel(kraus);
  double choi_min = report.channel_choi_min_eigenvalue;
  for (double v : report.choi_min_eigenvalues) choi_min = std::min(choi_min, v);
  rows.push_back(at_most("channel", n, "completeness", report.completeness_defect, 1e-12));
  rows.push_back(at_least("channel", n, "choi-min-eigenvalue", choi_min, -1e-10));
  rows.push_back(at_most("channel", n, "dilation-unitarity", unitarity_defect(dilation), 1e-12));
  rows.push_back(
      at_most("channel", n, "block-form", max_abs_diff(dilation, block_dilation(a0, a1)), 1e-12));
}

}  // namespace

std::vector<VerifyRow> verify_setting(int n) {
  require_supported_setting_count(n);
  std::vector<VerifyRow> rows;
  const SubchannelFamily family = build_family(n);
  append_channel_rows(rows, n, family.kraus_list(), family.dilation, family.a0, family.a1);

  double gate_defect = 0.0;
  for (const auto& g : family.gates) gate_defect = std::max(gate_defect, unitarity_defect(g));
  rows.push_back(at_most("channel", n, "gate-unitarity", gate_defect, 1e-12));
  rows.push_back(at_most("channel", n, "g1-identity", max_abs_diff(family.gates.front(), identity(2)),
                         kStructuralTol));

  if (n == 2) {
    const double sp = std::sin(std::numbers::pi / 8);
    const double r2 = std::sqrt(2.0);
    ComplexMatrix a0(2, 2);
    ComplexMatrix a1(2, 2);
    a0 << 1 / (4 * sp), sp / r2,
          1 / (4 * sp), -sp / r2;
    a1 << sp / r2, -1 / (4 * sp),
          sp / r2, 1 / (4 * sp);
    const double defect = std::max(max_abs_diff(family.a0, a0), max_abs_diff(family.a1, a1));
    rows.push_back(at_most("factorization", n, "closed-form-blocks", defect, 1e-12));
    const double s = 1 / r2;
    const bool ok = design_conditions_check(family, {s, 0, s}, {-s, 0, s});
    rows.push_back({"factorization", n, "design-conditions", ok ? 1.0 : 0.0, 1.0, ok});
  }

  const ProtocolResult bound = single_qubit_bound(family);
  const double expected = (1.0 + lhs_bound(n)) / 2.0;
  rows.push_back(at_most("bound", n, "single-qubit-bound",
                         std::abs(bound.success_probability - expected), 1e-9));

  const auto setup = family.setup();
  const auto table = strategy_table(n);
  for (std::size_t r = 0; r < table.size(); ++r) {
    const auto& row = table[r];
    const auto per_gate =
        single_qubit_success_per_gate(setup, row.strategy, DensityMatrix::from_bloch(row.probe));
    double defect = 0.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < per_gate.size(); ++k) {
      defect = std::max(defect, std::abs(per_gate[k] - row.per_gate[k]));
      sum += per_gate[k];
    }
    defect = std::max(defect, std::abs(sum / static_cast<double>(per_gate.size()) - row.average()));
    rows.push_back(at_most("strategy-table", n,
                           "row " + std::to_string(r + 1) + " " + row.strategy.to_string(), defect,
                           1e-9));
  }

  const auto alice = alice_directions(n);
  double linearity = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double eta = k / 10.0;
    const double p = two_qubit_success(werner_state(eta), family, alice).success_probability;
    linearity = std::max(linearity, std::abs(p - (0.5 + eta / 2)));
  }
  rows.push_back(at_most("werner", n, "linearity", linearity, 1e-9));
  return rows;
}

std::vector<VerifyRow> verify_bell_diagonal() {
  std::vector<VerifyRow> rows;
  const BellDiagonalFamily family = build_bell_diagonal_family();
  append_channel_rows(rows, 0, family.kraus_list(), family.setup().dilation, family.a0, family.a1);
  const bool ok = design_conditions_check(family.a0, family.a1, {0, 0, 1}, {1, 0, 0});
  rows.push_back({"factorization", 0, "design-conditions", ok ? 1.0 : 0.0, 1.0, ok});
  const double expected = (1.0 + 1.0 / std::sqrt(2.0)) / 2.0;
  rows.push_back(at_most("bound", 0, "single-qubit-bound",
                         std::abs(bell_diagonal_bound().success_probability - expected), 1e-9));
  double defect = 0.0;
  for (const auto& [tx, tz] : std::vector<std::pair<double, double>>{
           {1, -1}, {0, 0}, {0.9, -0.9}, {0.2, 0.3}, {-0.4, -0.5}, {0.5, -0.9}}) {
    defect = std::max(defect,
                      std::abs(bell_diagonal_success(tx, tz).success_probability - (2 + tx - tz) / 4));
  }
  rows.push_back(at_most("bell-diagonal", 0, "closed-form", defect, 1e-10));
  return rows;
}

std::vector<VerifyRow> verify_waveplates(int n) {
  std::vector<VerifyRow> rows;
  for (const auto& c : verify_recipes(n)) {
    std::string item = "g" + std::to_string(c.gate) + " closest g" + std::to_string(c.closest_gate) +
                       " at " + fmt_real(c.closest_distance);
    if (c.distance.incomparable) item += " incomparable";
    rows.push_back({"waveplate", n, std::move(item), c.distance.value, c.tolerance, c.pass});
  }
  return rows;
}

// ------------------------------- commands ----------------------------------

namespace {

Table verify_table(const std::vector<VerifyRow>& rows) {
  Table t{{"group", "n", "item", "measured", "tolerance", "status"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.group, std::int64_t{r.n}, r.item, r.measured, r.tolerance,
                      std::string(r.pass ? "pass" : "FAIL")});
  }
  return t;
}

Table bounds_table(const std::vector<int>& settings, std::size_t grid) {
  Table t{{"n", "bound", "grid_oracle", "lhs_bound", "strategy", "probe_x", "probe_y", "probe_z"},
          {}};
  for (int n : settings) {
    const SubchannelFamily family = build_family(n);
    const ProtocolResult r = single_qubit_bound(family);
    const BlochVector probe = r.probe.value_or(BlochVector{});
    t.rows.push_back({std::int64_t{n}, r.success_probability,
                      single_qubit_bound_grid_oracle(family, grid), lhs_bound(n),
                      r.strategy ? r.strategy->to_string() : std::string(), probe.x, probe.y,
                      probe.z});
  }
  return t;
}

Table sweep_table(const std::vector<int>& settings, const std::vector<double>& grid,
                  std::optional<std::uint64_t> pairs, std::uint64_t seed) {
  Table t{{"eta", "n", "p_two_qubit", "p_single_bound", "entangled", "steerable", "chsh_violating",
           "bell_local"},
          {}};
  if (pairs) {
    t.columns.push_back("p_hat");
    t.columns.push_back("std_error");
  }
  std::uint64_t run = 0;
  for (int n : settings) {
    const auto records = sweep_werner(grid, n);
    const SubchannelFamily family = pairs ? build_family(n) : SubchannelFamily{};
    const auto alice = alice_directions(n);
    for (const auto& r : records) {
      std::vector<Cell> row{r.eta, std::int64_t{r.n}, r.p_two_qubit, r.p_single_bound,
                            r.cls.entangled, r.cls.steerable, r.cls.chsh_violating,
                            r.cls.bell_local};
      if (pairs) {
        const auto est = simulate_run(werner_state(r.eta), family, alice, *pairs, seed + run);
        row.emplace_back(est.p_hat);
        row.emplace_back(est.std_error);
      }
      ++run;
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table bell_diagonal_table(double tx, double tz) {
  const ProtocolResult r = bell_diagonal_success(tx, tz);
  return {{"tx", "tz", "p_success", "p_single_bound", "steerable"},
          {{tx, tz, r.success_probability, bell_diagonal_bound().success_probability,
            bell_diagonal_steerable(tx, tz)}}};
}

Table chsh_table(const std::vector<int>& settings, const std::vector<double>& grid) {
  Table t{{"eta", "n", "p_two_qubit", "S"}, {}};
  const ChshSettings chsh = werner_optimal_chsh_settings();
  for (int n : settings) {
    const SubchannelFamily family = build_family(n);
    const auto alice = alice_directions(n);
    for (double eta : grid) {
      const DensityMatrix rho = werner_state(eta);
      t.rows.push_back({eta, std::int64_t{n},
                        two_qubit_success(rho, family, alice).success_probability,
                        chsh_parameter(rho, chsh)});
    }
  }
  return t;
}

Table montecarlo_table(const std::vector<int>& settings, const std::vector<double>& grid,
                       std::uint64_t pairs, std::uint64_t seed, std::uint64_t runs) {
  Table t{{"eta", "n", "total_pairs", "seed", "p_hat", "std_error"}, {}};
  for (int n : settings) {
    const SubchannelFamily family = build_family(n);
    const auto alice = alice_directions(n);
    for (double eta : grid) {
      const DensityMatrix rho = werner_state(eta);
      for (std::uint64_t k = 0; k < runs; ++k) {
        const auto est = simulate_run(rho, family, alice, pairs, seed + k);
        t.rows.push_back({eta, std::int64_t{n}, pairs, seed + k, est.p_hat, est.std_error});
      }
    }
  }
  return t;
}

Table fit_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
  const nlohmann::json& m = doc.is_object() ? doc.at("rho") : doc;
  const DensityMatrix rho(matrix_from_json(m));
  const EtaFit fit = estimate_eta_by_fidelity(rho);
  return {{"eta", "fidelity"}, {{fit.eta, fit.fidelity}}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subchannel discrimination and steering toolkit", "sdsteer"};
  app.require_subcommand(1);

  std::string format_text = "csv";
  std::string out_path;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path, "Write output to PATH instead of stdout");
  };

  std::string settings_text = "all";
  std::string eta_text;
  std::size_t grid = 10000;
  double tx = 0.0;
  double tz = 0.0;
  std::uint64_t pairs = 0;
  std::uint64_t seed = 1;
  std::uint64_t runs = 1;
  std::string input_path;
  bool verify_all = false;
  std::string waveplates_text;

  auto* bounds = app.add_subcommand("bounds", "Exact single-qubit bounds per setting count");
  bounds->add_option("--settings", settings_text, "Setting count or 'all'");
  bounds->add_option("--grid", grid, "Points in the Bloch-grid oracle")
      ->check(CLI::Range(std::size_t{1000}, std::size_t{10000000}));
  add_common(bounds);

  auto* sweep = app.add_subcommand("werner-sweep", "Success probabilities over a Werner eta grid");
  sweep->add_option("--settings", settings_text, "Setting count or 'all'")->required();
  sweep->add_option("--eta", eta_text, "eta or start:end:step")->required();
  auto* sweep_pairs = sweep->add_option("--pairs", pairs, "Add Monte Carlo columns with N pairs");
  sweep->add_option("--seed", seed, "Seed of the first row; row k uses seed + k");
  add_common(sweep);

  auto* bell = app.add_subcommand("bell-diagonal", "Bell-diagonal protocol with ty = tx");
  bell->add_option("--tx", tx, "Correlation tx")->required();
  bell->add_option("--tz", tz, "Correlation tz")->required();
  add_common(bell);

  auto* chsh = app.add_subcommand("chsh", "CHSH parameter against the success probability");
  chsh->add_option("--eta", eta_text, "eta or start:end:step")->required();
  std::string chsh_settings = "2";
  chsh->add_option("--settings", chsh_settings, "Setting count or 'all'");
  add_common(chsh);

  auto* verify = app.add_subcommand("verify", "Run the invariant checks");
  auto* verify_settings = verify->add_option("--settings", settings_text, "Setting count or 'all'");
  verify->add_flag("--all", verify_all, "Every family and every wave-plate recipe");
  auto* verify_wp = verify->add_option("--waveplates", waveplates_text,
                                       "Only the wave-plate recipes for a setting count or 'all'");
  add_common(verify);

  auto* mc = app.add_subcommand("montecarlo", "Finite-count runs of the two-qubit protocol");
  mc->add_option("--settings", settings_text, "Setting count or 'all'")->required();
  mc->add_option("--eta", eta_text, "eta or start:end:step")->required();
  mc->add_option("--pairs", pairs, "Mean number of pairs per run")->required();
  mc->add_option("--seed", seed, "Seed of the first run; run k uses seed + k");
  mc->add_option("--runs", runs, "Runs per eta")->check(CLI::PositiveNumber);
  add_common(mc);

  auto* fit = app.add_subcommand("fit-eta", "Fit a Werner visibility to a JSON density matrix");
  fit->add_option("--input", input_path, "JSON file: a 4x4 matrix or {\"rho\": matrix}")
      ->required();
  add_common(fit);

  std::vector<std::string> argv_storage{"sdsteer"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    Table table;
    bool ok = true;
    if (bounds->parsed()) {
      table = bounds_table(parse_settings(settings_text), grid);
    } else if (sweep->parsed()) {
      std::optional<std::uint64_t> mc_pairs;
      if (sweep_pairs->count() > 0) {
        if (pairs < 1) throw std::invalid_argument("--pairs must be at least 1");
        mc_pairs = pairs;
      }
      table = sweep_table(parse_settings(settings_text), parse_eta_grid(eta_text), mc_pairs, seed);
    } else if (bell->parsed()) {
      table = bell_diagonal_table(tx, tz);
    } else if (chsh->parsed()) {
      table = chsh_table(parse_settings(chsh_settings), parse_eta_grid(eta_text));
    } else if (verify->parsed()) {
      std::vector<VerifyRow> rows;
      if (!verify_all && verify_settings->count() == 0 && verify_wp->count() == 0) {
        throw std::invalid_argument("verify needs --all, --settings or --waveplates");
      }
      if (verify_all || verify_settings->count() > 0) {
        for (int n : parse_settings(verify_all ? "all" : settings_text)) {
          const auto part = verify_setting(n);
          rows.insert(rows.end(), part.begin(), part.end());
        }
      }
      if (verify_all) {
        const auto part = verify_bell_diagonal();
        rows.insert(rows.end(), part.begin(), part.end());
      }
      if (verify_all || verify_wp->count() > 0) {
        for (int n : parse_settings(verify_all ? "all" : waveplates_text)) {
          const auto part = verify_waveplates(n);
          rows.insert(rows.end(), part.begin(), part.end());
        }
      }
      for (const auto& r : rows) ok = ok && r.pass;
      table = verify_table(rows);
    } else if (mc->parsed()) {
      if (pairs < 1) throw std::invalid_argument("--pairs must be at least 1");
      table = montecarlo_table(parse_settings(settings_text), parse_eta_grid(eta_text), pairs, seed,
                               runs);
    } else if (fit->parsed()) {
      table = fit_table(input_path);
    }

    const Format format = format_text == "json" ? Format::kJson : Format::kCsv;
    if (out_path.empty()) {
      write_table(out, table, format);
    } else {
      std::ofstream file(out_path);
      if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
      write_table(file, table, format);
    }
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace sdsteer::cli
