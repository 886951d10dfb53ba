#include "transnn/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "digest.hpp"
#include "json.hpp"
#include "tables.hpp"
#include "transnn/binary_dynamics.hpp"
#include "transnn/boolean_compiler.hpp"
#include "transnn/certificates.hpp"
#include "transnn/error.hpp"
#include "transnn/limit_model.hpp"
#include "transnn/markov_oracle.hpp"
#include "transnn/mean_field.hpp"
#include "transnn/spec_io.hpp"

namespace transnn::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kOutEnv = "TRANSNN_OUT";
constexpr const char* kDefaultOut = "transnn-out";

struct Options {
  std::string spec_path;
  std::string out_dir;
  std::string format = "csv";
  std::optional<std::size_t> horizon;
  std::uint64_t seed = 0;
  std::uint32_t trials = 1000;
  bool population = false;
  std::string mode = "prob";
  std::string norm = "inf";
  std::optional<double> tol;
  std::string table;
};

/// Accumulates what a command produced and writes the manifest.
class RunResult {
 public:
  RunResult(std::string command, fs::path dir, Format format)
      : command_(std::move(command)), dir_(std::move(dir)), format_(format) {
    fs::create_directories(dir_);
  }

  void set_digest(std::string digest) { manifest_["spec_digest"] = std::move(digest); }
  void set_seed(std::uint64_t seed) { manifest_["seed"] = seed; }
  void set_parameter(const std::string& key, json value) { manifest_["parameters"][key] = std::move(value); }

  void add(const Table& table) {
    write_table(table, dir_, format_);
    manifest_["tables"].push_back(table.name);
  }

  void finish() {
    manifest_["command"] = command_;
    if (!manifest_.contains("tables")) manifest_["tables"] = json::array();
    write_json(dir_ / "run.json", manifest_);
  }

  const fs::path& dir() const { return dir_; }

  static void write_json(const fs::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
  }

 private:
  std::string command_;
  fs::path dir_;
  Format format_;
  json manifest_ = json::object();
};

fs::path output_dir(const Options& opt) {
  if (!opt.out_dir.empty()) return opt.out_dir;
  if (const char* env = std::getenv(kOutEnv); env != nullptr && *env != '\0') return env;
  return kDefaultOut;
}

Format parse_format(const std::string& f) { return f == "json" ? Format::json : Format::csv; }

Transmission transmission(const Options& opt) {
  return opt.population ? Transmission::population : Transmission::single;
}

struct Loaded {
  Network net;
  std::string digest;
  std::size_t horizon;
};

Loaded load(const Options& opt) {
  NetworkSpec spec = load_spec_file(opt.spec_path);
  std::string digest = spec_digest(spec);
  Network net(std::move(spec));
  const std::size_t horizon = opt.horizon.value_or(net.horizon());
  return {std::move(net), std::move(digest), horizon};
}

json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

json report_json(const CertificateReport& r) {
  json j{{"kind", to_string(r.kind)}, {"holds", r.holds}, {"witness", json_number(r.witness)}};
  if (r.per_step) {
    json steps = json::array();
    for (double v : *r.per_step) steps.push_back(json_number(v));
    j["per_step"] = std::move(steps);
  }
  if (r.companion_witness) j["companion_witness"] = json_number(*r.companion_witness);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Matrix absolute_gap(const Matrix& a, const Matrix& b) {
  Matrix g(a.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t r = 0; r < a.rows(); ++r) g(r, c) = std::fabs(a(r, c) - b(r, c));
  return g;
}

double row_max(const Matrix& m, std::size_t r) {
  double worst = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) worst = std::max(worst, m(r, c));
  return worst;
}

// ---------------------------------------------------------------------------

int cmd_simulate(const Options& opt, std::ostream& out) {
  const Loaded in = load(opt);
  RunResult result("simulate", output_dir(opt), parse_format(opt.format));
  result.set_digest(in.digest);
  result.set_seed(opt.seed);
  result.set_parameter("trials", opt.trials);
  result.set_parameter("horizon", in.horizon);
  result.set_parameter("population", opt.population);

  const MarginalEstimate est =
      monte_carlo_marginals(in.net, in.horizon, {opt.seed, opt.trials, transmission(opt), 0});
  result.add(Table::per_node("marginals", est.p_hat));
  result.add(Table::per_node("stderr", est.std_error));

  const TrialStream first(opt.seed, 0);
  const auto path = simulate_trajectory(in.net, in.horizon, sample_initial_state(in.net, first), first,
                                        transmission(opt));
  Matrix traj(path.size(), in.net.n());
  for (std::size_t k = 0; k < path.size(); ++k)
    for (std::size_t i = 0; i < in.net.n(); ++i) traj(k, i) = path[k][i] ? 1.0 : 0.0;
  result.add(Table::per_node("trajectory", std::move(traj)));
  result.finish();
  out << "simulate: " << opt.trials << " trials written to " << result.dir().string() << '\n';
  return kSuccess;
}

int cmd_oracle(const Options& opt, std::ostream& out) {
  const Loaded in = load(opt);
  RunResult result("oracle", output_dir(opt), parse_format(opt.format));
  result.set_digest(in.digest);
  result.set_parameter("horizon", in.horizon);
  result.set_parameter("population", opt.population);
  result.add(Table::per_node("exact_marginals", exact_marginals(in.net, in.horizon, transmission(opt))));
  result.finish();
  out << "oracle: exact marginals written to " << result.dir().string() << '\n';
  return kSuccess;
}

int cmd_meanfield(const Options& opt, std::ostream& out) {
  const Loaded in = load(opt);
  RunResult result("meanfield", output_dir(opt), parse_format(opt.format));
  result.set_digest(in.digest);
  result.set_parameter("horizon", in.horizon);
  result.set_parameter("population", opt.population);
  result.set_parameter("mode", opt.mode);
  if (opt.mode == "info") {
    const InfoTrajectory traj = info_trajectory(in.net, in.horizon, transmission(opt));
    result.add(Table::per_node("s", traj.s));
    result.add(Table::per_node("o", traj.o));
    result.add(Table::per_node("marginals", traj.p));
  } else {
    result.add(Table::per_node("marginals", prob_trajectory(in.net, in.horizon, transmission(opt))));
  }
  result.finish();
  out << "meanfield: trajectory written to " << result.dir().string() << '\n';
  return kSuccess;
}

int cmd_limit(const Options& opt, std::ostream& out) {
  const Loaded in = load(opt);
  RunResult result("limit", output_dir(opt), parse_format(opt.format));
  result.set_digest(in.digest);
  result.set_parameter("horizon", in.horizon);
  result.set_parameter("mode", opt.mode);
  if (opt.mode == "info") {
    const LimitTrajectory traj = limit_info_trajectory(in.net, in.horizon);
    result.add(Table::per_node("s_bar", traj.s_bar));
    result.add(Table::per_node("o_bar", traj.o_bar));
    result.add(Table::per_node("marginals", traj.p));
  } else {
    result.add(Table::per_node("marginals", limit_prob_trajectory(in.net, in.horizon)));
  }
  result.finish();
  out << "limit: trajectory written to " << result.dir().string() << '\n';
  return kSuccess;
}

int cmd_certify(const Options& opt, std::ostream& out) {
  const Loaded in = load(opt);
  RunResult result("certify", output_dir(opt), parse_format(opt.format));
  result.set_digest(in.digest);
  result.set_parameter("horizon", in.horizon);
  result.set_parameter("norm", opt.norm);
  const double tol = opt.tol.value_or(1e-12);
  result.set_parameter("tol", tol);

  std::vector<CertificateReport> reports;
  reports.push_back(contraction_certificate(in.net, opt.norm == "1" ? Norm::one : Norm::inf));

  CertificateReport stability;
  stability.kind = CertificateKind::stability;
  try {
    StabilityOptions sopt;
    if (opt.tol) sopt.tolerance = *opt.tol;
    stability = stability_certificate(in.net, sopt);
  } catch (const Error& e) {
    stability.witness = std::nan("");
    stability.note = e.what();
  }
  reports.push_back(stability);

  for (BoundModel model : {BoundModel::population, BoundModel::limit}) {
    try {
      reports.push_back(upper_bound_certificate(in.net, in.horizon, model, tol));
    } catch (const DomainError& e) {
      CertificateReport r;
      r.kind = model == BoundModel::limit ? CertificateKind::upper_bound_limit
                                          : CertificateKind::upper_bound_info;
      r.witness = std::nan("");
      r.note = e.what();
      reports.push_back(r);
    }
  }

  // Bound trajectories are only defined for finite initial information.
  const LimitState init = initial_limit_state(in.net.spec().initial_p);
  if (std::all_of(init.s_bar.begin(), init.s_bar.end(), [](double v) { return std::isfinite(v); })) {
    const BoundTrajectory limit_bound = upper_bound_trajectory(in.net, init.s_bar, in.horizon, BoundModel::limit);
    result.add(Table::per_node("bound_s_limit", limit_bound.s));
    result.add(Table::per_node("bound_o_limit", limit_bound.o));
    const BoundTrajectory info_bound =
        upper_bound_trajectory(in.net, init.s_bar, in.horizon, BoundModel::population);
    result.add(Table::per_node("bound_s_info", info_bound.s));
    result.add(Table::per_node("bound_o_info", info_bound.o));
  }

  json doc{{"spec_digest", in.digest}, {"reports", json::array()}};
  for (const auto& r : reports) doc["reports"].push_back(report_json(r));
  RunResult::write_json(result.dir() / "report.json", doc);
  result.finish();

  for (const auto& r : reports) {
    out << "kind=" << to_string(r.kind) << " holds=" << (r.holds ? "true" : "false")
        << " witness=" << format_number(r.witness);
    if (r.companion_witness) out << " companion_witness=" << format_number(*r.companion_witness);
    if (!r.note.empty()) out << " note=\"" << r.note << '"';
    out << '\n';
  }
  return kSuccess;
}

int cmd_compile(const Options& opt, std::ostream& out) {
  const TruthTable table = TruthTable::parse(opt.table);
  const LogicNetwork logic = compile(table);
  const fs::path dir = output_dir(opt);
  fs::create_directories(dir);
  save_spec_file(logic.spec, dir / "network.json");

  json inputs = json::array();
  for (std::size_t node : logic.input_nodes) inputs.push_back(node + 1);
  const TruthTable realized = evaluate_all(logic);
  json meta{{"inputs", inputs},
            {"output", logic.output_node + 1},
            {"constant", logic.constant_node + 1},
            {"latency", logic.latency},
            {"truth_table", table.to_string()},
            {"realized_truth_table", realized.to_string()},
            {"spec_digest", spec_digest(logic.spec)}};
  RunResult::write_json(dir / "logic.json", meta);
  out << "compile: " << logic.spec.n << " nodes, latency " << logic.latency << ", written to "
      << dir.string() << '\n';
  return realized.to_string() == table.to_string() ? kSuccess : kValidationFailure;
}

int cmd_compare(const Options& opt, std::ostream& out) {
  const Loaded in = load(opt);
  if (in.net.n() > kOracleMaxNodes)
    throw CapacityError("oracle size cap exceeded: " + std::to_string(in.net.n()) + " nodes");
  RunResult result("compare", output_dir(opt), parse_format(opt.format));
  result.set_digest(in.digest);
  result.set_seed(opt.seed);
  result.set_parameter("trials", opt.trials);
  result.set_parameter("horizon", in.horizon);
  result.set_parameter("population", opt.population);

  const Transmission mode = transmission(opt);
  const Matrix mc =
      monte_carlo_marginals(in.net, in.horizon, {opt.seed, opt.trials, mode, 0}).p_hat;
  const Matrix exact = exact_marginals(in.net, in.horizon, mode);
  const Matrix mean = prob_trajectory(in.net, in.horizon, mode);
  const Matrix limit = limit_prob_trajectory(in.net, in.horizon);

  result.add(Table::per_node("monte_carlo", mc));
  result.add(Table::per_node("oracle", exact));
  result.add(Table::per_node("meanfield", mean));
  result.add(Table::per_node("limit", limit));

  const Matrix g_mc = absolute_gap(mc, exact);
  const Matrix g_mf = absolute_gap(exact, mean);
  const Matrix g_lim = absolute_gap(mean, limit);
  result.add(Table::per_node("gap_mc_oracle", g_mc));
  result.add(Table::per_node("gap_oracle_meanfield", g_mf));
  result.add(Table::per_node("gap_meanfield_limit", g_lim));

  Table summary{"max_gap", {"mc_vs_oracle", "oracle_vs_meanfield", "meanfield_vs_limit"},
                Matrix(in.horizon + 1, 3)};
  for (std::size_t k = 0; k <= in.horizon; ++k) {
    summary.values(k, 0) = row_max(g_mc, k);
    summary.values(k, 1) = row_max(g_mf, k);
    summary.values(k, 2) = row_max(g_lim, k);
  }
  result.add(summary);
  result.finish();
  out << "compare: tables written to " << result.dir().string() << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transmission neural network simulation and analysis toolkit", "transnn"};
  app.require_subcommand(1);
  Options opt;

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", opt.spec_path, "Network specification document")->required();
    sub->add_option("--horizon", opt.horizon, "Override the spec horizon");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out_dir, std::string("Output directory (default $") + kOutEnv + " or " +
                                              kDefaultOut + ")");
    sub->add_option("--format", opt.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_stochastic = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "Master seed");
    sub->add_option("--trials", opt.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  };

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo simulation of the binary dynamics");
  add_spec(simulate);
  add_output(simulate);
  add_stochastic(simulate);
  simulate->add_flag("--population", opt.population, "Use neurotransmitter populations");

  auto* oracle = app.add_subcommand("oracle", "Exact marginals from the full Markov chain");
  add_spec(oracle);
  add_output(oracle);
  oracle->add_flag("--population", opt.population, "Use neurotransmitter populations");

  auto* meanfield = app.add_subcommand("meanfield", "Mean-field probability or information trajectory");
  add_spec(meanfield);
  add_output(meanfield);
  meanfield->add_flag("--population", opt.population, "Use neurotransmitter populations");
  meanfield->add_option("--mode", opt.mode, "prob or info")->check(CLI::IsMember({"prob", "info"}));

  auto* limit = app.add_subcommand("limit", "Infinite-neurotransmitter limit trajectory");
  add_spec(limit);
  add_output(limit);
  limit->add_option("--mode", opt.mode, "prob or info")->check(CLI::IsMember({"prob", "info"}));

  auto* certify = app.add_subcommand("certify", "Contraction, stability and upper-bound certificates");
  add_spec(certify);
  add_output(certify);
  certify->add_option("--norm", opt.norm, "Induced norm")->check(CLI::IsMember({"1", "inf"}));
  certify->add_option("--tol", opt.tol, "Bound violation and power iteration tolerance")
      ->check(CLI::PositiveNumber);

  auto* compile_cmd = app.add_subcommand("compile", "Synthesize a Boolean function from NOR motifs");
  compile_cmd->add_option("--table", opt.table, "Output column as a bit string, e.g. 0111")->required();
  compile_cmd->add_option("--out", opt.out_dir, "Output directory");

  auto* compare = app.add_subcommand("compare", "Monte Carlo vs oracle vs mean-field vs limit");
  add_spec(compare);
  add_output(compare);
  add_stochastic(compare);
  compare->add_flag("--population", opt.population, "Use neurotransmitter populations");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(opt, out);
    if (oracle->parsed()) return cmd_oracle(opt, out);
    if (meanfield->parsed()) return cmd_meanfield(opt, out);
    if (limit->parsed()) return cmd_limit(opt, out);
    if (certify->parsed()) return cmd_certify(opt, out);
    if (compile_cmd->parsed()) return cmd_compile(opt, out);
    if (compare->parsed()) return cmd_compare(opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return kUsageError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace transnn::cli
