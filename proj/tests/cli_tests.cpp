// End-to-end tests that drive the installed binary through a shell, the
// way a user would. The binary path and the sample-circuit directory are
// injected by the build.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "qteleport/dsl.hpp"

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd = env_prefix + "\"" + QTELEPORT_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t nread = 0;
  while ((nread = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, nread);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string circuit_path(const std::string& name) {
  return std::string(QTELEPORT_CIRCUITS_DIR) + "/" + name;
}

std::string strip_timing(const std::string& text) {
  std::string out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    if (line.find("timing_ms") == std::string::npos) {
      out += line;
      out += '\n';
    }
    pos = end + 1;
  }
  return out;
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / name; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("run --analytic reports the exact populations") {
  const CliResult r = run_cli("run \"" + circuit_path("prep.qc") + "\" --analytic");
  REQUIRE(r.exit_code == 0);
  const ordered_json rep = ordered_json::parse(r.output);
  REQUIRE(rep["schema_version"] == "1.0");
  REQUIRE(rep["command"] == "run");
  REQUIRE(rep["config"]["analytic"] == true);
  REQUIRE(std::abs(rep["results"]["probabilities"][0].get<double>() - 0.8535533905932737) <=
          1e-12);
  REQUIRE(std::abs(rep["results"]["probabilities"][1].get<double>() - 0.14644660940672624) <=
          1e-12);
}

TEST_CASE("run samples a seeded histogram") {
  const CliResult r = run_cli("run \"" + circuit_path("prep.qc") + "\" --shots 512 --seed 7");
  REQUIRE(r.exit_code == 0);
  const ordered_json rep = ordered_json::parse(r.output);
  REQUIRE(rep["results"]["shots"] == 512);
  std::uint64_t total = 0;
  for (const auto& [key, count] : rep["results"]["histogram"].items()) {
    REQUIRE((key == "0" || key == "1"));
    total += count.get<std::uint64_t>();
  }
  REQUIRE(total == 512);
}

TEST_CASE("run --format csv emits the flat table") {
  const CliResult r =
      run_cli("run \"" + circuit_path("bell.qc") + "\" --shots 64 --seed 1 --format csv");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.rfind("bitstring,count,frequency\n", 0) == 0);
}

TEST_CASE("missing circuit files are I/O errors") {
  const CliResult r = run_cli("run /nonexistent/missing.qc");
  REQUIRE(r.exit_code == 3);
}

TEST_CASE("parse failures carry the position and exit 2") {
  const fs::path bad = temp_file("qteleport_cli_bad.qc");
  write_text(bad, "qubits 2\nh 5\n");
  const CliResult r = run_cli("run \"" + bad.string() + "\"");
  REQUIRE(r.exit_code == 2);
  REQUIRE(r.output.find("line 2") != std::string::npos);
  REQUIRE(r.output.find("column 3") != std::string::npos);
  fs::remove(bad);
}

TEST_CASE("teleport emits four outcome groups that absorb all shots") {
  const CliResult r = run_cli("teleport --shots 256 --seed 1");
  REQUIRE(r.exit_code == 0);
  const ordered_json rep = ordered_json::parse(r.output);
  REQUIRE(rep["command"] == "teleport");
  REQUIRE(rep["config"]["mode"] == "postselect");
  REQUIRE(rep["results"]["per_outcome"].size() == 4);
  std::uint64_t total = 0;
  for (const auto& [key, stats] : rep["results"]["per_outcome"].items())
    total += stats["count"].get<std::uint64_t>();
  REQUIRE(total == 256);
}

TEST_CASE("analytic feedforward teleport reports unit fidelity") {
  const CliResult r = run_cli("teleport --mode feedforward --analytic");
  REQUIRE(r.exit_code == 0);
  const ordered_json rep = ordered_json::parse(r.output);
  REQUIRE(rep["results"]["shots"] == 0);
  REQUIRE(std::abs(rep["results"]["fidelity_analytic"].get<double>() - 1.0) <= 1e-10);
  for (const auto& [key, stats] : rep["results"]["per_outcome"].items())
    REQUIRE(std::abs(stats["p_alpha"].get<double>() - 0.8535533905932737) <= 1e-12);
}

TEST_CASE("out-of-range flags exit 2") {
  REQUIRE(run_cli("teleport --noise-depol 1.5").exit_code == 2);
  REQUIRE(run_cli("teleport --shots 0").exit_code == 2);
  REQUIRE(run_cli("teleport --threads 0").exit_code == 2);
  REQUIRE(run_cli("teleport --mode sideways").exit_code == 2);
  REQUIRE(run_cli("teleport --bogus-flag 1").exit_code == 2);
  REQUIRE(run_cli("").exit_code == 2);
}

TEST_CASE("protocol names resolve and unknown ones exit 2") {
  const CliResult bell = run_cli("protocol bell --analytic");
  REQUIRE(bell.exit_code == 0);
  const ordered_json rep = ordered_json::parse(bell.output);
  const auto& probs = rep["results"]["probabilities"];
  REQUIRE(probs.size() == 4);
  REQUIRE(std::abs(probs[0].get<double>() - 0.5) <= 1e-12);
  REQUIRE(std::abs(probs[1].get<double>()) <= 1e-12);
  REQUIRE(std::abs(probs[2].get<double>()) <= 1e-12);
  REQUIRE(std::abs(probs[3].get<double>() - 0.5) <= 1e-12);

  REQUIRE(run_cli("protocol nope").exit_code == 2);
}

TEST_CASE("protocol ghz3 sampling stays on the diagonal") {
  const CliResult r = run_cli("protocol ghz3 --shots 512 --seed 3");
  REQUIRE(r.exit_code == 0);
  const ordered_json rep = ordered_json::parse(r.output);
  for (const auto& [key, count] : rep["results"]["histogram"].items())
    REQUIRE((key == "000" || key == "111"));
}

TEST_CASE("protocol prep reports populations with theory overlays") {
  const CliResult r = run_cli("protocol prep --shots 512 --seed 5");
  REQUIRE(r.exit_code == 0);
  const ordered_json rep = ordered_json::parse(r.output);
  REQUIRE(std::abs(rep["results"]["theory_p0"].get<double>() - 0.8535533905932737) <= 1e-12);
  REQUIRE(rep["results"].contains("bloch"));
}

TEST_CASE("emit-circuit prints parseable canonical text") {
  const CliResult r = run_cli("protocol prep --emit-circuit");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.rfind("qubits 1\n", 0) == 0);
  REQUIRE(r.output.find("measure 0 -> 0") != std::string::npos);
  const qteleport::ParseResult parsed = qteleport::parse(r.output);
  REQUIRE(parsed.circuit.has_value());
}

TEST_CASE("reports are byte-identical across reruns and worker counts") {
  const std::string base = "teleport --shots 512 --seed 42";
  const CliResult a = run_cli(base + " --threads 1");
  const CliResult b = run_cli(base + " --threads 1");
  const CliResult c = run_cli(base + " --threads 4");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  REQUIRE(c.exit_code == 0);
  REQUIRE(strip_timing(a.output) == strip_timing(b.output));
  REQUIRE(strip_timing(a.output) == strip_timing(c.output));
  REQUIRE(a.output.find("threads") == std::string::npos);
}

TEST_CASE("the seed falls back to QTELEPORT_SEED and flags override it") {
  const CliResult env = run_cli("run \"" + circuit_path("prep.qc") + "\" --shots 16",
                                "QTELEPORT_SEED=9 ");
  REQUIRE(env.exit_code == 0);
  REQUIRE(ordered_json::parse(env.output)["config"]["seed"] == 9);

  const CliResult flag = run_cli("run \"" + circuit_path("prep.qc") + "\" --shots 16 --seed 3",
                                 "QTELEPORT_SEED=9 ");
  REQUIRE(flag.exit_code == 0);
  REQUIRE(ordered_json::parse(flag.output)["config"]["seed"] == 3);

  REQUIRE(run_cli("run \"" + circuit_path("prep.qc") + "\"", "QTELEPORT_SEED=abc ").exit_code ==
          2);
}

TEST_CASE("plot renders saved reports and rejects bad input") {
  const fs::path rep_path = temp_file("qteleport_cli_report.json");
  const fs::path svg_path = temp_file("qteleport_cli_chart.svg");
  const CliResult save =
      run_cli("teleport --shots 128 --seed 2 --out \"" + rep_path.string() + "\"");
  REQUIRE(save.exit_code == 0);

  const CliResult drawn = run_cli("plot \"" + rep_path.string() + "\" \"" + svg_path.string() + "\"");
  REQUIRE(drawn.exit_code == 0);
  std::ifstream in(svg_path);
  std::string first_line;
  std::getline(in, first_line);
  REQUIRE(first_line.rfind("<svg", 0) == 0);

  const fs::path garbage = temp_file("qteleport_cli_garbage.json");
  write_text(garbage, "not json at all");
  REQUIRE(run_cli("plot \"" + garbage.string() + "\" \"" + svg_path.string() + "\"").exit_code ==
          2);
  REQUIRE(run_cli("plot /nonexistent/rep.json \"" + svg_path.string() + "\"").exit_code == 3);

  fs::remove(rep_path);
  fs::remove(svg_path);
  fs::remove(garbage);
}

TEST_CASE("--help succeeds") {
  REQUIRE(run_cli("--help").exit_code == 0);
  REQUIRE(run_cli("teleport --help").exit_code == 0);
}

TEST_CASE("--out failures are I/O errors") {
  REQUIRE(run_cli("teleport --shots 16 --seed 1 --out /nonexistent/dir/report.json").exit_code ==
          3);
}
