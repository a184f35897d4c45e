// Command-line front end: run circuit files, drive the named protocol
// experiments, and render saved reports as SVG charts.
//
// Exit codes: 0 success, 2 user/input error, 3 I/O error.

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qteleport/qteleport.hpp"

namespace {

using qteleport::report::json;

constexpr int kExitOk = 0;
constexpr int kExitUser = 2;
constexpr int kExitIo = 3;

int fail_user(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUser;
}

int fail_io(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitIo;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buf.str();
}

/// Writes to `out_path`, or stdout when the path is empty.
int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) return fail_io("cannot open '" + out_path + "' for writing");
  out << text;
  out.flush();
  if (!out) return fail_io("failed while writing '" + out_path + "'");
  return kExitOk;
}

/// Shared sampling flags. The seed falls back to QTELEPORT_SEED, then 0;
/// the worker count is deliberately not echoed into reports.
struct CommonOptions {
  std::uint64_t shots = 8192;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool analytic = false;
  double noise_depol = 0.0;
  double noise_readout = 0.0;
  int threads = 1;
  std::string out_path;
};

void add_common_flags(CLI::App& cmd, CommonOptions& opt) {
  cmd.add_option("--shots", opt.shots, "number of sampled shots")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100'000'000}));
  cmd.add_option("--seed", opt.seed, "base seed for the counter-based generator");
  cmd.add_flag("--analytic", opt.analytic, "exact probabilities instead of sampling");
  cmd.add_option("--noise-depol", opt.noise_depol,
                 "depolarizing probability per gate application")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--noise-readout", opt.noise_readout,
                 "classical flip probability per recorded bit")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--threads", opt.threads, "worker threads for sampling")
      ->check(CLI::Range(1, 256));
  cmd.add_option("--out", opt.out_path, "write output to this file instead of stdout");
}

/// Returns false only when QTELEPORT_SEED is set but unparseable.
bool resolve_seed(CommonOptions& opt) {
  if (opt.seed_given) return true;
  const char* env = std::getenv("QTELEPORT_SEED");
  if (env == nullptr) return true;
  const std::string text(env);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return false;
  opt.seed = value;
  return true;
}

qteleport::RunConfig run_config(const CommonOptions& opt) {
  qteleport::RunConfig cfg;
  cfg.shots = opt.shots;
  cfg.seed = opt.seed;
  if (opt.noise_depol > 0.0 || opt.noise_readout > 0.0)
    cfg.noise = qteleport::NoiseModel{opt.noise_depol, opt.noise_readout};
  return cfg;
}

json noise_json(const CommonOptions& opt) {
  if (opt.noise_depol <= 0.0 && opt.noise_readout <= 0.0) return nullptr;
  json n;
  n["depolarizing_p"] = opt.noise_depol;
  n["readout_flip_q"] = opt.noise_readout;
  return n;
}

json config_json(const CommonOptions& opt) {
  json cfg;
  cfg["analytic"] = opt.analytic;
  cfg["shots"] = opt.shots;
  cfg["seed"] = opt.seed;
  cfg["noise"] = noise_json(opt);
  return cfg;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  const auto now = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(now - start).count();
}

int emit_report(std::string_view command, json config, json results,
                std::chrono::steady_clock::time_point start, const std::string& out_path) {
  const json rep = qteleport::report::make_report(command, std::move(config),
                                                  std::move(results), elapsed_ms(start));
  return emit(qteleport::report::to_json_text(rep), out_path);
}

int cmd_run(const std::string& path, const CommonOptions& opt, const std::string& format) {
  const auto start = std::chrono::steady_clock::now();
  const std::optional<std::string> source = read_file(path);
  if (!source) return fail_io("cannot read circuit file '" + path + "'");
  const qteleport::ParseResult parsed = qteleport::parse(*source);
  if (!parsed.circuit) return fail_user(path + ": " + parsed.error->to_string());
  const qteleport::Circuit& circuit = *parsed.circuit;

  json config = config_json(opt);
  config["circuit"] = path;

  if (opt.analytic) {
    const qteleport::AnalyticResult result = qteleport::run_analytic(circuit);
    if (format == "csv")
      return emit(qteleport::report::analytic_csv(result, circuit.n_classical_bits),
                  opt.out_path);
    return emit_report("run", std::move(config),
                       qteleport::report::analytic_json(result, circuit.n_classical_bits),
                       start, opt.out_path);
  }

  const qteleport::Histogram h = qteleport::run_shots(circuit, run_config(opt), opt.threads);
  if (format == "csv") return emit(qteleport::report::histogram_csv(h), opt.out_path);
  return emit_report("run", std::move(config), qteleport::report::histogram_json(h), start,
                     opt.out_path);
}

int cmd_teleport(const std::string& mode_name, const CommonOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const qteleport::TeleportMode mode = mode_name == "feedforward"
                                           ? qteleport::TeleportMode::Feedforward
                                           : qteleport::TeleportMode::Postselect;
  json config = config_json(opt);
  config["mode"] = mode_name;

  const qteleport::TeleportReport report =
      opt.analytic ? qteleport::run_teleport_experiment_analytic(mode)
                   : qteleport::run_teleport_experiment(mode, run_config(opt), opt.threads);
  return emit_report("teleport", std::move(config),
                     qteleport::report::teleport_json(report), start, opt.out_path);
}

std::optional<qteleport::Circuit> protocol_circuit(const std::string& name) {
  if (name == "prep") return qteleport::prep_circuit();
  if (name == "bell") return qteleport::bell_circuit();
  if (name == "ghz3") return qteleport::ghz_circuit(3);
  if (name == "ghz4") return qteleport::ghz_circuit(4);
  if (name == "ghz5") return qteleport::ghz_circuit(5);
  return std::nullopt;
}

int cmd_protocol(const std::string& name, const CommonOptions& opt, bool emit_circuit) {
  const auto start = std::chrono::steady_clock::now();
  const std::optional<qteleport::Circuit> circuit = protocol_circuit(name);
  if (!circuit) return fail_user("unknown protocol '" + name +
                                 "' (expected prep, bell, ghz3, ghz4 or ghz5)");
  const qteleport::Circuit measured = qteleport::with_measure_all(*circuit);

  if (emit_circuit) return emit(qteleport::serialize(measured), opt.out_path);

  json config = config_json(opt);
  config["name"] = name;

  if (opt.analytic)
    return emit_report(
        "protocol", std::move(config),
        qteleport::report::analytic_json(qteleport::run_analytic(measured),
                                         measured.n_classical_bits),
        start, opt.out_path);

  if (name == "prep") {
    const qteleport::PrepReport report =
        qteleport::run_prep_experiment(run_config(opt), opt.threads);
    return emit_report("protocol", std::move(config), qteleport::report::prep_json(report),
                       start, opt.out_path);
  }

  const qteleport::Histogram h = qteleport::run_shots(measured, run_config(opt), opt.threads);
  return emit_report("protocol", std::move(config), qteleport::report::histogram_json(h),
                     start, opt.out_path);
}

int cmd_plot(const std::string& report_path, const std::string& out_path) {
  const std::optional<std::string> text = read_file(report_path);
  if (!text) return fail_io("cannot read report file '" + report_path + "'");
  json rep = json::parse(*text, nullptr, false);
  if (rep.is_discarded()) return fail_user(report_path + ": not valid JSON");
  std::string svg;
  try {
    svg = qteleport::plot::render_report_svg(rep);
  } catch (const std::invalid_argument& e) {
    return fail_user(report_path + ": " + e.what());
  }
  return emit(svg, out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statevector simulator for quantum teleportation experiments"};
  app.require_subcommand(1);

  std::string run_path;
  std::string run_format = "json";
  CommonOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "execute a circuit file");
  run->add_option("file", run_path, "circuit file (.qc)")->required();
  run->add_option("--format", run_format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  add_common_flags(*run, run_opt);

  std::string teleport_mode = "postselect";
  CommonOptions teleport_opt;
  CLI::App* teleport = app.add_subcommand("teleport", "run the teleportation experiment");
  teleport->add_option("--mode", teleport_mode, "correction strategy")
      ->check(CLI::IsMember({"postselect", "feedforward"}));
  add_common_flags(*teleport, teleport_opt);

  std::string protocol_name;
  bool protocol_emit = false;
  CommonOptions protocol_opt;
  CLI::App* protocol = app.add_subcommand("protocol", "run a named protocol experiment");
  protocol->add_option("name", protocol_name, "prep, bell, ghz3, ghz4 or ghz5")->required();
  protocol->add_flag("--emit-circuit", protocol_emit,
                     "print the circuit's DSL text instead of running it");
  add_common_flags(*protocol, protocol_opt);

  std::string plot_report_path;
  std::string plot_out_path;
  CLI::App* plot = app.add_subcommand("plot", "render a saved report as an SVG bar chart");
  plot->add_option("report", plot_report_path, "OutputReport JSON file")->required();
  plot->add_option("out", plot_out_path, "SVG file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUser;
  }

  for (CommonOptions* opt : {&run_opt, &teleport_opt, &protocol_opt}) {
    CLI::App* cmd = opt == &run_opt ? run : (opt == &teleport_opt ? teleport : protocol);
    opt->seed_given = cmd->count("--seed") > 0;
    if (!resolve_seed(*opt))
      return fail_user("QTELEPORT_SEED must be a non-negative integer");
  }

  try {
    if (run->parsed()) return cmd_run(run_path, run_opt, run_format);
    if (teleport->parsed()) return cmd_teleport(teleport_mode, teleport_opt);
    if (protocol->parsed()) return cmd_protocol(protocol_name, protocol_opt, protocol_emit);
    if (plot->parsed()) return cmd_plot(plot_report_path, plot_out_path);
  } catch (const std::invalid_argument& e) {
    return fail_user(e.what());
  } catch (const std::out_of_range& e) {
    return fail_user(e.what());
  } catch (const std::exception& e) {
    return fail_io(e.what());
  }
  return kExitOk;
}
