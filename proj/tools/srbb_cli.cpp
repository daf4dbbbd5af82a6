// Command-line front end: compile, counts, verify, synthesize, targets.
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "srbb/algebra.hpp"
#include "srbb/circuit.hpp"
#include "srbb/json_io.hpp"
#include "srbb/synth.hpp"
#include "srbb/targets.hpp"
#include "srbb/varopt.hpp"
#include "srbb/verify.hpp"

namespace {

using json = nlohmann::ordered_json;

// Usage or domain problem: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_n(int n) {
  if (n < 2) throw UsageError("n must be ≥ 2");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

json counts_json(const srbb::GateCounts& c) {
  return {{"n_cnot", c.n_cnot}, {"n_rot", c.n_rot}, {"cnot_reduction", c.cnot_reduction}};
}

void print_counts(const srbb::GateCounts& c) {
  std::cout << counts_json(c).dump() << "\n"
            << "n_cnot=" << c.n_cnot << " n_rot=" << c.n_rot << " cnot_reduction=" << c.cnot_reduction << "\n";
}

struct CompileOpts {
  int n = 0, layers = 1;
  bool naive = false;
  std::string qasm, json_out, params;
};

int cmd_compile(const CompileOpts& o) {
  require_n(o.n);
  srbb::Circuit c = o.naive ? srbb::naive_circuit(o.n) : srbb::synthesize_circuit(o.n, o.layers);
  srbb::ParamTable values = c.params;
  if (!o.params.empty()) {
    const auto j = json::parse(read_file(o.params));
    const auto names = j.at("param_names").get<std::vector<std::string>>();
    const auto vals = j.at("params").get<std::vector<double>>();
    if (names.size() != vals.size()) throw UsageError("parameter file has mismatched names and values");
    for (size_t i = 0; i < names.size(); ++i) values.set(names[i], vals[i]);
  }
  if (!o.qasm.empty()) write_file(o.qasm, srbb::to_qasm(c, values));
  if (!o.json_out.empty()) write_file(o.json_out, srbb::circuit_to_json(c, values));
  srbb::GateCounts counts = srbb::count_from_circuit(c);
  if (!o.naive) counts.cnot_reduction = static_cast<long long>(o.layers) * srbb::gate_counts(o.n).cnot_reduction;
  print_counts(counts);
  return 0;
}

int cmd_counts(int n) {
  require_n(n);
  const auto formula = srbb::gate_counts(n);
  const auto tally = srbb::count_from_circuit(srbb::synthesize_circuit(n));
  json j{{"n", n}, {"formula", counts_json(formula)}, {"circuit", {{"n_cnot", tally.n_cnot}, {"n_rot", tally.n_rot}}}};
  std::cout << j.dump(2) << "\n";
  return (tally.n_cnot == formula.n_cnot && tally.n_rot == formula.n_rot) ? 0 : 1;
}

int cmd_verify(int n, const std::string& suite) {
  require_n(n);
  if (n > 6) throw UsageError("verify supports n in 2..6");
  std::vector<srbb::CheckResult> all;
  auto add = [&](std::vector<srbb::CheckResult> v) { all.insert(all.end(), v.begin(), v.end()); };
  if (suite == "basis" || suite == "all") add(srbb::verify_basis(n));
  if (suite == "counts" || suite == "all") add(srbb::verify_counts(n));
  if (suite == "equivalence" || suite == "all") {
    if (n > 5) throw UsageError("equivalence suite supports n in 2..5");
    add(srbb::verify_equivalence(n));
  }
  bool ok = true;
  json checks = json::array();
  for (const auto& c : all) {
    ok = ok && c.passed;
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"max_deviation", c.max_deviation}, {"detail", c.detail}});
  }
  std::cout << json{{"n", n}, {"suite", suite}, {"passed", ok}, {"checks", checks}}.dump(2) << "\n";
  return ok ? 0 : 1;
}

struct SynthOpts {
  std::string target, loss = "frobenius", optimizer = "nm", out;
  int n = 0, layers = 1, epochs = 20, batch = 64, dataset = 1000, restarts = 50;
  std::uint64_t seed = 0;
  double lr = 0.01, budget = 0.0;
  long max_evals = 2000000;
};

srbb::Matrix load_target(const SynthOpts& o) {
  if (o.target.rfind("file:", 0) == 0) {
    srbb::Matrix m;
    try {
      m = srbb::matrix_from_json(json::parse(read_file(o.target.substr(5))));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("bad matrix file: ") + e.what());
    }
    if (m.rows() != srbb::pow2(o.n)) throw UsageError("matrix dimension does not match n");
    if ((m.adjoint() * m - srbb::identity(m.rows())).norm() > 1e-8) throw UsageError("matrix is not unitary");
    return m;
  }
  if (o.target == "random") return srbb::random_su(o.n, srbb::derive_seed(o.seed, 0)).unitary;
  return srbb::named_target(o.target, o.n).unitary;
}

int cmd_synthesize(const SynthOpts& o) {
  require_n(o.n);
  srbb::TrainConfig cfg;
  cfg.loss = srbb::loss_from_name(o.loss);
  if (o.optimizer == "nm")
    cfg.optimizer = srbb::OptimizerKind::NelderMead;
  else if (o.optimizer == "adam")
    cfg.optimizer = srbb::OptimizerKind::Adam;
  else
    throw UsageError("optimizer must be nm or adam");
  cfg.seed = o.seed;
  cfg.layers = o.layers;
  cfg.epochs = o.epochs;
  cfg.batch = o.batch;
  cfg.dataset_size = o.dataset;
  cfg.lr = o.lr;
  cfg.nm_max_evals = o.max_evals;
  cfg.nm_restarts = o.restarts;
  cfg.time_budget_s = o.budget;

  const srbb::Matrix target = load_target(o);
  const auto rep = srbb::train(o.n, target, cfg);
  std::cout << "frobenius=" << rep.final_loss.at("frobenius") << " trace=" << rep.final_loss.at("trace")
            << " fidelity=" << rep.final_loss.at("fidelity") << " evolution_max_trace=" << rep.evolution_max_trace
            << " wall_ms=" << rep.wall_ms << "\n";
  if (!o.out.empty()) {
    json j = json::parse(srbb::report_to_json(rep));
    j["manifest"] = {{"command", "synthesize"}, {"n", o.n},           {"target", o.target},
                     {"loss", o.loss},          {"optimizer", o.optimizer}, {"seed", o.seed},
                     {"layers", o.layers},      {"epochs", o.epochs},  {"batch", o.batch},
                     {"dataset_size", o.dataset}, {"lr", o.lr},        {"max_evals", o.max_evals},
                     {"restarts", o.restarts},  {"out", o.out}};
    write_file(o.out, j.dump(2));
  }
  return 0;
}

int cmd_targets_list() {
  for (const auto& e : srbb::target_registry()) std::cout << e.n << "\t" << e.name << "\n";
  return 0;
}

int cmd_targets_emit(const std::string& name, int n, const std::string& out) {
  require_n(n);
  const auto t = srbb::named_target(name, n);
  const std::string text = json{{"name", t.name}, {"n", t.n}, {"matrix", srbb::matrix_to_json(t.unitary)}}.dump(2);
  if (out.empty())
    std::cout << text << "\n";
  else
    write_file(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SRBB circuit compiler and trainer"};
  app.require_subcommand(1);
  int rc = 0;

  CompileOpts co;
  auto* compile = app.add_subcommand("compile", "Build the reduced (or naive) circuit and print gate counts");
  compile->add_option("-n", co.n, "Qubit count")->required();
  compile->add_option("--layers", co.layers, "Number of layers");
  compile->add_flag("--naive", co.naive, "Emit the unreduced circuit");
  compile->add_option("--qasm", co.qasm, "OpenQASM 2.0 output path");
  compile->add_option("--json", co.json_out, "Circuit JSON output path");
  compile->add_option("--params", co.params, "Training report whose parameters are substituted");
  compile->callback([&] { rc = cmd_compile(co); });

  int count_n = 0;
  auto* counts = app.add_subcommand("counts", "Closed-form and tallied gate counts");
  counts->add_option("-n", count_n, "Qubit count")->required();
  counts->callback([&] { rc = cmd_counts(count_n); });

  int verify_n = 0;
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  verify->add_option("-n", verify_n, "Qubit count")->required();
  verify->add_option("--suite", suite, "basis|equivalence|counts|all")
      ->check(CLI::IsMember({"basis", "equivalence", "counts", "all"}));
  verify->callback([&] { rc = cmd_verify(verify_n, suite); });

  SynthOpts so;
  auto* synth = app.add_subcommand("synthesize", "Train the circuit towards a target unitary");
  synth->add_option("target", so.target, "Registry name, 'random', or file:PATH")->required();
  synth->add_option("-n", so.n, "Qubit count")->required();
  synth->add_option("--loss", so.loss, "frobenius|trace|fidelity")->check(CLI::IsMember({"frobenius", "trace", "fidelity"}));
  synth->add_option("--optimizer", so.optimizer, "nm|adam")->check(CLI::IsMember({"nm", "adam"}));
  synth->add_option("--seed", so.seed, "Random seed");
  synth->add_option("--out", so.out, "Report JSON path");
  synth->add_option("--layers", so.layers, "Number of layers");
  synth->add_option("--epochs", so.epochs, "Adam epochs");
  synth->add_option("--batch", so.batch, "Batch size");
  synth->add_option("--dataset", so.dataset, "Random-state dataset size");
  synth->add_option("--lr", so.lr, "Adam learning rate");
  synth->add_option("--max-evals", so.max_evals, "Nelder-Mead evaluation cap");
  synth->add_option("--restarts", so.restarts, "Nelder-Mead restarts");
  synth->add_option("--time-budget", so.budget, "Wall-clock cap in seconds (0 = none)");
  synth->callback([&] { rc = cmd_synthesize(so); });

  auto* targets = app.add_subcommand("targets", "Target registry");
  targets->require_subcommand(1);
  targets->add_subcommand("list", "List registered targets")->callback([&] { rc = cmd_targets_list(); });
  std::string emit_name, emit_out;
  int emit_n = 0;
  auto* emit = targets->add_subcommand("emit", "Write a target matrix as JSON");
  emit->add_option("name", emit_name, "Target name")->required();
  emit->add_option("n", emit_n, "Qubit count")->required();
  emit->add_option("--out", emit_out, "Output path");
  emit->callback([&] { rc = cmd_targets_emit(emit_name, emit_n, emit_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
