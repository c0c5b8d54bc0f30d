// Copyright 2026 The catsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Every subcommand emits a header row plus one
// record per sweep point, as CSV or JSON.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "catsim/backaction.hpp"
#include "catsim/channels.hpp"
#include "catsim/css.hpp"
#include "catsim/errors.hpp"
#include "catsim/fock.hpp"
#include "catsim/growth.hpp"
#include "catsim/kerr.hpp"
#include "catsim/subtraction.hpp"
#include "catsim/tables.hpp"

#ifndef CATSIM_VERSION
#define CATSIM_VERSION "0.0.0"
#endif

namespace {

using namespace catsim;

constexpr double kPi = std::numbers::pi;
const std::string kVersion = std::string("catsim ") + CATSIM_VERSION;

// Argument problems that are not library errors; mapped to exit code 2.
struct ArgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Value = std::variant<double, std::string>;
using Cell = std::variant<double, long long, std::string>;
using Row = std::vector<std::pair<std::string, Cell>>;

struct ParamDef {
  std::string name;
  Value def;
  std::string help;
};

struct Params {
  std::vector<std::pair<std::string, Value>> values;
  int dim = 0;

  const Value& get(const std::string& name) const {
    for (const auto& [k, v] : values) {
      if (k == name) return v;
    }
    throw ArgError("missing parameter " + name);
  }
  double num(const std::string& name) const { return std::get<double>(get(name)); }
  const std::string& str(const std::string& name) const { return std::get<std::string>(get(name)); }
  int integer(const std::string& name) const {
    const double v = num(name);
    if (!(std::abs(v) < 1e9) || v != std::floor(v)) throw ArgError(name + " must be an integer");
    return static_cast<int>(v);
  }
};

void add_probability(Row& row, const std::string& name, double p) {
  row.emplace_back(name, p);
  row.emplace_back("log10_" + name, p > 0.0 ? std::log10(p) : -std::numeric_limits<double>::infinity());
}

void add_report_params(Row& row, const SchemeReport& rep) {
  for (const auto& [k, v] : rep.params) row.emplace_back(k, v);
}

int parity_of(int m) { return m % 2 == 0 ? 1 : -1; }

// Cat target padded to the state's dimension, or the state padded to the
// cat's when the cat needs more room.
double cat_fidelity(double alpha, int parity, FockDensity rho) {
  const int d = std::max(rho.dims[0], default_dim(alpha));
  if (d > rho.dims[0]) {
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(d, d);
    big.topLeftCorner(rho.dims[0], rho.dims[0]) = rho.mat;
    rho = FockDensity{{d}, big};
  }
  return fidelity(cat_state(alpha, parity >= 0 ? 0.0 : kPi, d), rho);
}

// ---- subcommands ----

std::vector<Row> run_decoherence(const Params& p) {
  Row row;
  row.emplace_back("F", cat_loss_fidelity(p.num("alpha"), p.num("eta"), p.integer("parity")));
  return {row};
}

std::vector<Row> run_kerr_direct(const Params& p) {
  const std::string& m = p.str("method");
  KerrMethod method;
  if (m == "integrator") {
    method = KerrMethod::integrator;
  } else if (m == "exact") {
    method = KerrMethod::exact;
  } else if (m == "series-corrected") {
    method = KerrMethod::series_corrected;
  } else if (m == "series-printed") {
    method = KerrMethod::series_printed;
  } else {
    throw ArgError("method must be integrator, exact, series-corrected or series-printed");
  }
  const SchemeReport rep = kerr_loss_fidelity(p.num("beta"), p.num("gamma_over_chi"), p.integer("optimize_input") != 0, method);
  Row row;
  row.emplace_back("F", rep.fidelity);
  add_report_params(row, rep);
  return {row};
}

std::vector<Row> run_kerr_material(const Params& p) {
  const std::string& name = p.str("material");
  KerrMaterial mat;
  if (name == "silica") {
    mat = fused_silica();
  } else if (name == "chalcogenide") {
    mat = chalcogenide();
  } else {
    throw ArgError("material must be silica or chalcogenide");
  }
  Row row;
  row.emplace_back("chi", kerr_chi(mat));
  row.emplace_back("gamma", kerr_gamma(mat));
  row.emplace_back("ratio", material_ratio(mat));
  return {row};
}

std::function<std::vector<Row>(const Params&)> table_runner(int id) {
  return [id](const Params& p) {
    std::vector<Row> rows;
    const Variant v = table_variant(id);
    for (int m : {2, 4, 6, 8}) {
      const SchemeReport rep = optimize_backaction(v, m, p.num("alpha"));
      Row row;
      row.emplace_back("variant", std::string(variant_name(v)));
      row.emplace_back("m", static_cast<long long>(m));
      row.emplace_back("r", rep.param("r"));
      row.emplace_back("s", rep.param("s"));
      row.emplace_back("T", rep.param("T"));
      row.emplace_back("F", rep.fidelity);
      add_probability(row, "P", rep.probability);
      rows.push_back(row);
    }
    return rows;
  };
}

std::vector<Row> run_subtract_ideal(const Params& p) {
  const double lt = p.num("lamT");
  const double T = p.num("T");
  const int m = p.integer("m");
  if (!(T > 0.0)) throw ArgError("T must be positive");
  const double lam = lt / T;
  const FockVector v = subtracted_state(lt, m, p.dim);
  Row row;
  row.emplace_back("lam", lam);
  row.emplace_back("F", cat_fidelity(p.num("alpha"), parity_of(m), to_density(v)));
  add_probability(row, "P", subtraction_probability(lam, T, m));
  return {row};
}

std::vector<Row> run_subtract_imperfect(const Params& p) {
  SubtractionConfig cfg;
  cfg.lam = lam_from_r(p.num("r"));
  cfg.T = p.num("T");
  cfg.m = p.integer("m");
  cfg.nu = p.num("nu");
  cfg.det = {p.num("eta"), p.num("d")};
  cfg.dim = p.dim;
  const auto [rho, prob] = subtraction_full_model(cfg);
  const VarianceDb vdb = subtraction_variances_db(p.num("r"), cfg.nu);
  Row row;
  row.emplace_back("lam", cfg.lam);
  row.emplace_back("F", cat_fidelity(p.num("alpha"), parity_of(cfg.m), rho));
  add_probability(row, "P", prob);
  row.emplace_back("x_db", vdb.x_db);
  row.emplace_back("p_db", vdb.p_db);
  return {row};
}

std::vector<Row> run_kitten(const Params& p) {
  const double alpha = p.num("alpha");
  const double r = p.integer("optimize_r") != 0 ? kitten_optimal_r(alpha) : p.num("r");
  const double vac = p.num("p");
  if (!(vac >= 0.0 && vac <= 1.0)) throw ArgError("p must lie in [0,1]");
  Row row;
  row.emplace_back("r_used", r);
  row.emplace_back("F", (1.0 - vac) * kitten_fidelity(r, alpha));
  return {row};
}

std::vector<Row> run_grow(const Params& p) {
  GrowthConfig cfg;
  cfg.alpha = p.num("alpha");
  cfg.beta = p.num("beta");
  cfg.phi = p.num("phi");
  cfg.varphi = p.num("varphi");
  cfg.det = {p.num("eta"), p.num("d")};
  cfg.fock_cutoff = p.integer("fock_cutoff");
  const double a = std::sqrt(cfg.alpha * cfg.alpha + cfg.beta * cfg.beta);
  const int parity = std::cos(cfg.phi + cfg.varphi) >= 0.0 ? 1 : -1;
  const SchemeReport rep = grow_with_detectors(cfg, a, parity);
  Row row;
  row.emplace_back("A", a);
  row.emplace_back("target_parity", static_cast<long long>(parity));
  row.emplace_back("F", rep.fidelity);
  add_probability(row, "P", rep.probability);
  add_probability(row, "P_ideal", grow_probability_formula(cfg.alpha, cfg.beta, cfg.phi, cfg.varphi));
  return {row};
}

std::vector<Row> run_grow_iterate(const Params& p) {
  const auto stages = grow_iterate({p.num("p"), p.num("alpha0")}, p.integer("iterations"), {p.num("eta"), p.num("d")});
  std::vector<Row> rows;
  for (const SchemeReport& rep : stages) {
    Row row;
    row.emplace_back("iteration", static_cast<long long>(std::lround(rep.param("iteration"))));
    row.emplace_back("target_alpha", rep.target_alpha);
    row.emplace_back("F", rep.fidelity);
    add_probability(row, "P", rep.probability);
    add_probability(row, "cumulative", rep.param("cumulative"));
    row.emplace_back("r", rep.param("r"));
    row.emplace_back("fock_dim", static_cast<long long>(std::lround(rep.param("dim"))));
    rows.push_back(row);
  }
  return rows;
}

std::vector<Row> run_small_kerr(const Params& p) {
  const double ai = p.num("target") * std::sqrt(2.0);
  const int n = p.integer("N");
  const SmallKerrResult res = small_kerr_condition(ai, n, p.num("x"));
  Row row;
  row.emplace_back("alpha_i", ai);
  row.emplace_back("F", res.fidelity);
  row.emplace_back("phi_star", res.phi_star);
  add_probability(row, "P_window", small_kerr_probability(ai, n, p.num("delta")));
  row.emplace_back("F_before_split", small_kerr_output_fidelity(ai, n));
  return {row};
}

std::vector<Row> run_gerry(const Params& p) {
  const std::string& o = p.str("outcome");
  if (o != "a" && o != "b") throw ArgError("outcome must be a or b");
  Row row;
  add_probability(row, "P", gerry_probability(p.num("alpha"), p.num("phi"), o == "a" ? GerryOutcome::a : GerryOutcome::b));
  return {row};
}

std::vector<Row> run_tomo_cost(const Params& p) {
  const TomographyCost c = tomography_cost(p.integer("max_photon"), p.num("p"));
  Row row;
  row.emplace_back("phases", static_cast<long long>(c.phases));
  row.emplace_back("bin_width_bound", c.bin_width_bound);
  row.emplace_back("counts_per_histogram", c.counts_per_histogram);
  row.emplace_back("total", c.total);
  return {row};
}

struct Command {
  std::string name;
  std::string help;
  std::vector<ParamDef> params;
  std::function<std::vector<Row>(const Params&)> run;
};

std::vector<Command> commands() {
  const double root2 = std::sqrt(2.0);
  std::vector<Command> c;
  c.push_back({"decoherence", "cat fidelity after photon loss",
               {{"alpha", 2.0, "cat amplitude"}, {"eta", 0.9, "transmissivity"}, {"parity", 1.0, "+1 even, -1 odd"}},
               run_decoherence});
  c.push_back({"kerr-direct", "Kerr cat under loss at chi t = pi/2",
               {{"beta", 1.0, "target amplitude"},
                {"gamma_over_chi", 0.5, "loss rate over chi"},
                {"optimize_input", 0.0, "1 searches the input amplitude"},
                {"method", std::string("integrator"), "integrator|exact|series-corrected|series-printed"}},
               run_kerr_direct});
  c.push_back({"kerr-material", "loss-to-nonlinearity ratio of a fibre",
               {{"material", std::string("silica"), "silica|chalcogenide"}}, run_kerr_material});
  c.push_back({"table1", "back-action optimum, two-mode squeezer then final squeeze",
               {{"alpha", 2.0, "target even cat amplitude"}}, table_runner(1)});
  c.push_back({"table2", "back-action optimum, squeeze then two-mode squeezer",
               {{"alpha", 2.0, "target even cat amplitude"}}, table_runner(2)});
  c.push_back({"table3", "back-action optimum, two single-mode squeezers",
               {{"alpha", 2.0, "target even cat amplitude"}}, table_runner(3)});
  c.push_back({"subtract-ideal", "ideal photon subtraction",
               {{"lamT", 0.613, "lambda times T"},
                {"T", 0.9, "transmissivity"},
                {"m", 2.0, "registered count"},
                {"alpha", 2.0, "target cat amplitude"}},
               run_subtract_ideal});
  c.push_back({"subtract-imperfect", "photon subtraction with impurity, loss and dark counts",
               {{"r", -0.514, "squeezing"},
                {"T", 0.922, "transmissivity"},
                {"m", 1.0, "registered count"},
                {"nu", 0.85, "input purity transmissivity"},
                {"eta", 0.8, "detector efficiency"},
                {"d", 5e-4, "mean dark count"},
                {"alpha", 1.25, "target cat amplitude"}},
               run_subtract_imperfect});
  c.push_back({"kitten", "squeezed single photon against an odd cat",
               {{"r", 0.31, "squeezing"},
                {"alpha", 1.0, "target odd cat amplitude"},
                {"p", 0.0, "vacuum fraction"},
                {"optimize_r", 0.0, "1 picks the best r"}},
               run_kitten});
  c.push_back({"grow", "one amplification round on two cats",
               {{"alpha", root2, "first cat amplitude"},
                {"beta", root2, "second cat amplitude"},
                {"phi", kPi, "first cat phase"},
                {"varphi", kPi, "second cat phase"},
                {"eta", 1.0, "detector efficiency"},
                {"d", 0.0, "mean dark count"},
                {"fock_cutoff", 40.0, "photon cutoff per counted mode"}},
               run_grow});
  c.push_back({"grow-iterate", "repeated amplification of mixed kittens",
               {{"p", 0.4, "vacuum fraction"},
                {"alpha0", 0.5, "initial odd cat amplitude"},
                {"iterations", 1.0, "rounds"},
                {"eta", 1.0, "detector efficiency"},
                {"d", 0.0, "mean dark count"}},
               run_grow_iterate});
  c.push_back({"small-kerr", "weak Kerr, splitter and homodyne conditioning",
               {{"target", 20.0, "target amplitude |alpha_i|/sqrt 2"},
                {"N", 20.0, "chi t = pi/N"},
                {"x", 0.0, "measured quadrature"},
                {"delta", 3.75, "acceptance half-width"}},
               run_small_kerr});
  c.push_back({"gerry", "Kerr interferometer cat preparation",
               {{"alpha", 2.0, "amplitude"}, {"phi", kPi, "Kerr phase"}, {"outcome", std::string("b"), "a|b"}},
               run_gerry});
  c.push_back({"tomo-cost", "homodyne tomography counting estimate",
               {{"max_photon", 10.0, "largest photon number"}, {"p", 0.01, "probability at that number"}},
               run_tomo_cost});
  return c;
}

// ---- output ----

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  if (std::abs(v) < 1e-4) {
    std::snprintf(buf, sizeof buf, "%.9e", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.10g", v);
  }
  return buf;
}

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void write_csv(std::ostream& os, const std::vector<Row>& rows) {
  for (std::size_t i = 0; i < rows.front().size(); ++i) os << (i ? "," : "") << rows.front()[i].first;
  os << "\n";
  for (const Row& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i].second);
    os << "\n";
  }
}

void write_json(std::ostream& os, const std::vector<Row>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Row& row : rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const auto& [k, c] : row) {
      std::visit([&](const auto& v) { obj[k] = v; }, c);
    }
    arr.push_back(obj);
  }
  os << arr.dump(2) << "\n";
}

std::string flag_name(const std::string& key) {
  std::string f = key;
  for (char& ch : f) ch = ch == '_' ? '-' : ch;
  return f;
}

std::string key_name(const std::string& flag) {
  std::string k = flag;
  for (char& ch : k) ch = ch == '-' ? '_' : ch;
  return k;
}

Value parse_value(const ParamDef& def, const std::string& text) {
  if (std::holds_alternative<std::string>(def.def)) return text;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ArgError("--" + flag_name(def.name) + ": not a number: " + text);
  }
  if (used != text.size()) throw ArgError("--" + flag_name(def.name) + ": not a number: " + text);
  return v;
}

Value json_value(const ParamDef& def, const nlohmann::json& j) {
  if (std::holds_alternative<std::string>(def.def)) {
    if (!j.is_string()) throw ArgError(def.name + " expects a string");
    return j.get<std::string>();
  }
  if (!j.is_number()) throw ArgError(def.name + " expects a number");
  return j.get<double>();
}

// Resolved parameter sets in sweep order: defaults, then --params-json
// (arrays sweep), then explicit flags.
std::vector<Params> resolve(const Command& cmd, const std::map<std::string, std::string>& flags,
                            const std::string& params_json, int dim) {
  std::vector<std::vector<Value>> choices;
  for (const ParamDef& def : cmd.params) choices.push_back({def.def});
  if (!params_json.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(params_json);
    } catch (const nlohmann::json::exception& e) {
      throw ArgError(std::string("--params-json: ") + e.what());
    }
    if (!j.is_object()) throw ArgError("--params-json must be a JSON object");
    for (const auto& [key, val] : j.items()) {
      const std::string k = key_name(key);
      std::size_t idx = cmd.params.size();
      for (std::size_t i = 0; i < cmd.params.size(); ++i) {
        if (cmd.params[i].name == k) idx = i;
      }
      if (idx == cmd.params.size()) throw ArgError("unknown parameter in --params-json: " + key);
      std::vector<Value> vs;
      if (val.is_array()) {
        if (val.empty()) throw ArgError("empty sweep for " + key);
        for (const auto& item : val) vs.push_back(json_value(cmd.params[idx], item));
      } else {
        vs.push_back(json_value(cmd.params[idx], val));
      }
      choices[idx] = vs;
    }
  }
  for (std::size_t i = 0; i < cmd.params.size(); ++i) {
    const auto it = flags.find(cmd.params[i].name);
    if (it != flags.end()) choices[i] = {parse_value(cmd.params[i], it->second)};
  }
  std::vector<Params> out;
  std::vector<std::size_t> idx(choices.size(), 0);
  while (true) {
    Params p;
    p.dim = dim;
    for (std::size_t i = 0; i < choices.size(); ++i) p.values.emplace_back(cmd.params[i].name, choices[i][idx[i]]);
    out.push_back(p);
    // Odometer over the sweep choices, last parameter fastest.
    std::size_t k = choices.size();
    while (k > 0 && ++idx[k - 1] == choices[k - 1].size()) {
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) return out;
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Command> cmds = commands();
  CLI::App app{"catsim: cat-state preparation calculators"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string format = "csv";
  std::string output;
  std::string params_json;
  int dim = 0;
  std::vector<std::map<std::string, std::string>> flag_values(cmds.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    CLI::App* sub = app.add_subcommand(cmds[i].name, cmds[i].help);
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output, "output file (default stdout)");
    sub->add_option("--params-json", params_json, "JSON object of parameters; arrays sweep");
    sub->add_option("--dim", dim, "Fock truncation override (0 picks automatically)")->check(CLI::NonNegativeNumber);
    for (const ParamDef& def : cmds[i].params) {
      std::string dflt = std::holds_alternative<double>(def.def) ? format_double(std::get<double>(def.def))
                                                                 : std::get<std::string>(def.def);
      sub->add_option_function<std::string>(
          "--" + flag_name(def.name), [&flag_values, i, name = def.name](const std::string& v) { flag_values[i][name] = v; },
          def.help + " (default " + dflt + ")");
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::size_t which = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) which = i;
  }
  const Command& cmd = cmds[which];

  std::vector<Row> rows;
  try {
    for (const Params& p : resolve(cmd, flag_values[which], params_json, dim)) {
      for (Row& r : cmd.run(p)) {
        Row full;
        full.emplace_back("version", kVersion);
        full.emplace_back("command", cmd.name);
        for (const auto& [k, v] : p.values) {
          if (const auto* d = std::get_if<double>(&v)) {
            full.emplace_back(k, *d);
          } else {
            full.emplace_back(k, std::get<std::string>(v));
          }
        }
        full.emplace_back("dim", static_cast<long long>(p.dim));
        // Result fields never shadow an input column.
        for (auto& [k, c] : r) {
          bool taken = false;
          for (const auto& cell : full) taken = taken || cell.first == k;
          full.emplace_back(taken ? "out_" + k : k, c);
        }
        rows.push_back(std::move(full));
      }
    }
  } catch (const ArgError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical-failure: " << e.what() << "\n";
    return 3;
  }

  std::ostringstream buf;
  if (format == "json") {
    write_json(buf, rows);
  } else {
    write_csv(buf, rows);
  }
  if (output.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      std::cerr << "argument error: cannot open " << output << "\n";
      return 2;
    }
    f << buf.str();
  }
  return 0;
}
