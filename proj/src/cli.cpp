#include "cohstate/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "cohstate/coherent.hpp"
#include "cohstate/fock.hpp"
#include "cohstate/json_io.hpp"
#include "cohstate/sampling.hpp"
#include "cohstate/table.hpp"
#include "cohstate/vibron.hpp"

namespace cohstate::cli {

namespace fs = std::filesystem;

namespace {

/// Raised when a self-check fails; maps to exit code 2.
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // me eval
  std::string frame_path;
  std::string op_path;
  std::string bra;
  std::string ket;
  std::string mode = "auto";
  // me count
  int species = 0;
  int body = 0;
  // oracle check
  std::uint64_t seed = 0;
  int cases = 100;
  double tol = 1e-10;
  // vibron
  int N = 0;
  int Nx = 0;
  int delta = 0;
  double r = 1.0;
  std::string multipole;
  std::string op;
  int v_i = 0, l_i = 0, v_f = 0, l_f = 0;
  bool levels = false;
  std::string out;
  std::string dump_matrix;
};

nlohmann::json read_json(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw FormatError(field + ": cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(field + ": malformed JSON in " + path + " (" + e.what() + ")");
  }
}

EvalMode parse_mode(const std::string& s) {
  if (s == "auto") return EvalMode::Auto;
  if (s == "direct") return EvalMode::Direct;
  if (s == "grouped") return EvalMode::Grouped;
  throw FormatError("--mode: expected auto, direct or grouped");
}

vibron::TransitionOperator parse_transition(const std::string& s) {
  static const std::map<std::string, vibron::TransitionOperator> names{
      {"D+", vibron::TransitionOperator::DPlus},  {"D-", vibron::TransitionOperator::DMinus},
      {"Q+", vibron::TransitionOperator::QPlus},  {"Q-", vibron::TransitionOperator::QMinus},
      {"dplus", vibron::TransitionOperator::DPlus}, {"dminus", vibron::TransitionOperator::DMinus},
      {"qplus", vibron::TransitionOperator::QPlus}, {"qminus", vibron::TransitionOperator::QMinus}};
  const auto it = names.find(s);
  if (it == names.end()) throw FormatError("--op: expected one of D+, D-, Q+, Q-");
  return it->second;
}

vibron::Multipole parse_multipole(const std::string& s) {
  if (s == "dipole") return vibron::Multipole::Dipole;
  if (s == "quadrupole") return vibron::Multipole::Quadrupole;
  throw FormatError("--multipole: expected dipole or quadrupole");
}

void check_vibron_n(int N) {
  if (N < 0 || N > vibron::kMaxBosons) {
    throw FormatError("--N: must lie in [0, " + std::to_string(vibron::kMaxBosons) + "]");
  }
}

fs::path prepare_out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (!fs::is_directory(p)) throw FormatError("--out: cannot create directory " + dir);
  return p;
}

void self_check_spectrum(const vibron::Spectrum& spectrum) {
  const double dev = spectrum.max_relative_deviation();
  if (!(dev <= 1e-8)) {
    throw CheckFailure(fmt::format("spectrum deviates from the analytic energies (max rel {:.3g})",
                                   dev));
  }
}

int cmd_me_eval(const RunConfig& cfg, std::ostream& out) {
  const CoherentFrame frame = frame_from_json(read_json(cfg.frame_path, "--frame"));
  const OperatorPoly op = operator_from_json(read_json(cfg.op_path, "--op"));
  const Occupancy bra = occupancy_from_string(cfg.bra, "--bra");
  const Occupancy ket = occupancy_from_string(cfg.ket, "--ket");
  if (static_cast<int>(bra.size()) != frame.species()) {
    throw FormatError("--bra: needs " + std::to_string(frame.species()) + " entries");
  }
  if (static_cast<int>(ket.size()) != frame.species()) {
    throw FormatError("--ket: needs " + std::to_string(frame.species()) + " entries");
  }
  if (op.modes() != frame.modes()) {
    throw FormatError("--op: operator has n = " + std::to_string(op.modes()) +
                      " but the frame has n = " + std::to_string(frame.modes()));
  }
  const Complex value = matrix_element_poly(frame, bra, ket, op, parse_mode(cfg.mode));
  fmt::print(out, "{:.15g} {:.15g}\n", value.real(), value.imag());
  return kOk;
}

int cmd_me_count(const RunConfig& cfg, std::ostream& out) {
  if (cfg.species < 1) throw FormatError("--species: must be >= 1");
  if (cfg.body < 1) throw FormatError("--body: must be >= 1");
  fmt::print(out, "{}\n", count_contributing(cfg.species, cfg.body));
  return kOk;
}

int cmd_oracle_check(const RunConfig& cfg, std::ostream& out) {
  if (cfg.cases < 1) throw FormatError("--cases: must be >= 1");
  Rng rng(cfg.seed);
  int agree = 0;
  double max_dev = 0.0;
  for (int k = 0; k < cfg.cases; ++k) {
    const OracleCase c = random_oracle_case(rng);
    const Complex engine = matrix_element(c.frame, c.bra, c.ket, c.term);
    const Complex oracle =
        me_oracle(c.frame, c.bra, c.ket, OperatorPoly::from_normal(c.frame.modes(), c.term));
    const double dev = std::abs(engine - oracle);
    max_dev = std::max(max_dev, dev);
    if (dev < cfg.tol) ++agree;
  }
  if (agree == cfg.cases) {
    fmt::print(out, "{}/{} agree (max dev < {:g})\n", agree, cfg.cases, cfg.tol);
    return kOk;
  }
  fmt::print(out, "{}/{} agree (max dev = {:.3g})\n", agree, cfg.cases, max_dev);
  return kCheckFailure;
}

int cmd_vibron_energies(const RunConfig& cfg, std::ostream& out) {
  check_vibron_n(cfg.N);
  const vibron::Spectrum spectrum(cfg.N);
  self_check_spectrum(spectrum);
  if (!cfg.dump_matrix.empty()) {
    std::ofstream dump(cfg.dump_matrix, std::ios::binary | std::ios::trunc);
    if (!dump) throw FormatError("--dump-matrix: cannot open " + cfg.dump_matrix);
    matrix_of(vibron::operators().hamiltonian, spectrum.full_basis()).write_coordinate(dump);
  }
  Table table;
  if (cfg.levels) {
    table.header = {"v", "l", "exact", "formula"};
    for (const auto& lv : spectrum.levels()) {
      table.rows.push_back({std::int64_t{lv.v}, std::int64_t{lv.l}, lv.energy,
                            vibron::exact_energy(lv.N, lv.v, lv.l)});
    }
  } else {
    table = vibron::compare_report(spectrum).energies;
  }
  if (cfg.out.empty()) {
    write_csv(table, out);
  } else {
    emit_csv(table, cfg.out);
  }
  return kOk;
}

int cmd_vibron_transitions(const RunConfig& cfg, std::ostream& out) {
  check_vibron_n(cfg.N);
  if (!cfg.op.empty()) {
    const double intensity = vibron::exact_transition(cfg.N, cfg.v_i, cfg.l_i, cfg.v_f, cfg.l_f,
                                                      parse_transition(cfg.op));
    fmt::print(out, "{:.12g}\n", intensity);
    return kOk;
  }
  if (!cfg.multipole.empty()) {
    const double value =
        vibron::cs_transition(cfg.N, cfg.Nx, cfg.delta, parse_multipole(cfg.multipole), cfg.r);
    fmt::print(out, "{:.12g} {:.12g}\n", value, value * value);
    return kOk;
  }
  const vibron::Spectrum spectrum(cfg.N);
  const auto report = vibron::compare_report(spectrum);
  if (cfg.out.empty()) {
    write_csv(report.dipole, out);
    out << '\n';
    write_csv(report.quadrupole, out);
  } else {
    const fs::path dir = prepare_out_dir(cfg.out);
    emit_csv(report.dipole, dir / "dipole.csv");
    emit_csv(report.quadrupole, dir / "quadrupole.csv");
  }
  return kOk;
}

int cmd_vibron_minimize(const RunConfig& cfg, std::ostream& out) {
  if (cfg.N < 2) throw FormatError("--N: minimize-r needs N >= 2");
  fmt::print(out, "{:.6f}\n", vibron::minimize_r(cfg.N));
  return kOk;
}

int cmd_vibron_compare(const RunConfig& cfg, std::ostream& out) {
  check_vibron_n(cfg.N);
  const fs::path dir = prepare_out_dir(cfg.out);
  const vibron::Spectrum spectrum(cfg.N);
  self_check_spectrum(spectrum);
  const auto report = vibron::compare_report(spectrum);
  emit_csv(report.energies, dir / "energies.csv");
  emit_csv(report.dipole, dir / "dipole.csv");
  emit_csv(report.quadrupole, dir / "quadrupole.csv");
  fmt::print(out, "wrote energies.csv, dipole.csv, quadrupole.csv to {}\n", dir.string());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Coherent-state matrix elements and vibron-model comparisons", "cohstate"};
  app.require_subcommand(1);

  auto* me = app.add_subcommand("me", "Coherent-state matrix elements");
  me->require_subcommand(1);
  auto* me_eval = me->add_subcommand("eval", "Evaluate <bra| op |ket> between coherent states");
  me_eval->add_option("--frame", cfg.frame_path, "Frame JSON file")->required()
      ->check(CLI::ExistingFile);
  me_eval->add_option("--op", cfg.op_path, "Operator JSON file")->required()
      ->check(CLI::ExistingFile);
  me_eval->add_option("--bra", cfg.bra, "Bra occupancy, e.g. \"[1,2]\"")->required();
  me_eval->add_option("--ket", cfg.ket, "Ket occupancy, e.g. \"[2,1]\"")->required();
  me_eval->add_option("--mode", cfg.mode, "Summation strategy: auto, direct or grouped")
      ->capture_default_str();
  auto* me_count = me->add_subcommand("count", "Number of contributing (t', t) index pairs");
  me_count->add_option("--species", cfg.species, "Number of coherent species S")->required();
  me_count->add_option("--body", cfg.body, "Body count m")->required();

  auto* oracle = app.add_subcommand("oracle", "Cross-checks against the Fock-space oracle");
  oracle->require_subcommand(1);
  auto* oracle_check = oracle->add_subcommand("check", "Random coherent-vs-Fock comparisons");
  oracle_check->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  oracle_check->add_option("--cases", cfg.cases, "Number of random instances")
      ->capture_default_str();
  oracle_check->add_option("--tol", cfg.tol, "Absolute agreement tolerance")
      ->capture_default_str();

  auto* vib = app.add_subcommand("vibron", "Two-dimensional vibron model, SO(3) limit");
  vib->require_subcommand(1);
  auto* energies = vib->add_subcommand("energies", "Exact vs coherent-state energies per v");
  energies->add_option("--N", cfg.N, "Boson number")->required();
  energies->add_flag("--levels", cfg.levels, "List every (v, l) level instead");
  energies->add_option("--out", cfg.out, "Write CSV to this file instead of stdout");
  energies->add_option("--dump-matrix", cfg.dump_matrix,
                       "Write H in the full N-boson basis as 'row col re im' lines");

  auto* transitions = vib->add_subcommand("transitions", "Transition intensities");
  transitions->add_option("--N", cfg.N, "Boson number")->required();
  transitions->add_option("--out", cfg.out, "Directory for dipole.csv and quadrupole.csv");
  auto* op_opt = transitions->add_option("--op", cfg.op, "Exact mode: operator D+, D-, Q+ or Q-");
  transitions->add_option("--vi", cfg.v_i, "Exact mode: initial v")->needs(op_opt);
  transitions->add_option("--li", cfg.l_i, "Exact mode: initial l")->needs(op_opt);
  transitions->add_option("--vf", cfg.v_f, "Exact mode: final v")->needs(op_opt);
  transitions->add_option("--lf", cfg.l_f, "Exact mode: final l")->needs(op_opt);
  auto* mp_opt = transitions->add_option("--multipole", cfg.multipole,
                                         "Coherent mode: dipole or quadrupole");
  transitions->add_option("--Nx", cfg.Nx, "Coherent mode: excitation quanta")->needs(mp_opt);
  transitions->add_option("--delta", cfg.delta, "Coherent mode: 0 or -1")->needs(mp_opt);
  transitions->add_option("--r", cfg.r, "Coherent mode: variational parameter")
      ->needs(mp_opt)
      ->capture_default_str();
  op_opt->excludes(mp_opt);

  auto* minimize = vib->add_subcommand("minimize-r", "Variational r of the condensate");
  minimize->add_option("--N", cfg.N, "Boson number")->required();

  auto* compare = vib->add_subcommand("compare", "Write energies/dipole/quadrupole CSV files");
  compare->add_option("--N", cfg.N, "Boson number")->required();
  compare->add_option("--out", cfg.out, "Output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    if (me_eval->parsed()) return cmd_me_eval(cfg, out);
    if (me_count->parsed()) return cmd_me_count(cfg, out);
    if (oracle_check->parsed()) return cmd_oracle_check(cfg, out);
    if (energies->parsed()) return cmd_vibron_energies(cfg, out);
    if (transitions->parsed()) return cmd_vibron_transitions(cfg, out);
    if (minimize->parsed()) return cmd_vibron_minimize(cfg, out);
    if (compare->parsed()) return cmd_vibron_compare(cfg, out);
  } catch (const CheckFailure& e) {
    fmt::print(err, "check failed: {}\n", e.what());
    return kCheckFailure;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kValidationError;
  }
  return kValidationError;
}

}  // namespace cohstate::cli
