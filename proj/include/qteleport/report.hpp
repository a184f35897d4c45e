#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qteleport/protocols.hpp"
#include "qteleport/simulator.hpp"

namespace qteleport::report {

// Keys are emitted in insertion order so identical inputs serialize to
// identical bytes; see docs/report_schema.md for the published layout.
using json = nlohmann::ordered_json;

inline constexpr std::string_view schema_version = "1.0";

inline std::string classical_key(std::uint64_t index, int n_bits) {
  std::string key(static_cast<std::size_t>(n_bits), '0');
  for (int b = 0; b < n_bits; ++b)
    key[static_cast<std::size_t>(b)] = (index >> (n_bits - 1 - b)) & 1u ? '1' : '0';
  return key;
}

inline json histogram_json(const Histogram& h) {
  json counts = json::object();
  for (const auto& [key, count] : h.counts) counts[key] = count;
  json out;
  out["shots"] = h.shots;
  out["n_bits"] = h.n_bits;
  out["histogram"] = std::move(counts);
  return out;
}

inline json analytic_json(const AnalyticResult& result, int n_classical_bits) {
  json out;
  if (n_classical_bits > 0) {
    json keys = json::array();
    json probs = json::array();
    for (std::uint64_t i = 0; i < result.classical_probabilities.size(); ++i) {
      keys.push_back(classical_key(i, n_classical_bits));
      probs.push_back(result.classical_probabilities[i]);
    }
    out["n_bits"] = n_classical_bits;
    out["bitstrings"] = std::move(keys);
    out["probabilities"] = std::move(probs);
  }
  if (result.final_state) {
    json amps = json::array();
    for (const cplx& a : result.final_state->amplitudes())
      amps.push_back(json::array({a.real(), a.imag()}));
    out["final_state"] = {{"n_qubits", result.final_state->n_qubits()},
                          {"amplitudes", std::move(amps)}};
  }
  return out;
}

inline json prep_json(const PrepReport& r) {
  json out;
  out["shots"] = r.shots;
  out["p0"] = r.p0;
  out["p1"] = r.p1;
  out["theory_p0"] = r.theory_p0;
  out["theory_p1"] = r.theory_p1;
  out["bloch"] = {{"x", r.bloch.x}, {"y", r.bloch.y}, {"z", r.bloch.z}};
  return out;
}

inline json teleport_json(const TeleportReport& r) {
  json outcomes = json::object();
  for (const auto& [outcome, stats] : r.per_outcome) {
    json entry;
    entry["count"] = stats.count;
    entry["p_alpha"] = stats.p_alpha;
    entry["p_beta"] = stats.p_beta;
    entry["correction"] = std::string(mnemonic(stats.correction));
    outcomes[outcome_key(outcome)] = std::move(entry);
  }
  json out;
  out["mode"] = std::string(to_string(r.mode));
  out["shots"] = r.shots;
  out["per_outcome"] = std::move(outcomes);
  out["fidelity_analytic"] = r.fidelity_analytic;
  out["theory_p_alpha"] = r.theory_p_alpha;
  out["theory_p_beta"] = r.theory_p_beta;
  return out;
}

/// Envelope shared by every command. `timing_ms` is always the final key
/// so reports compare equal once that line is dropped.
inline json make_report(std::string_view command, json config, json results, double timing_ms) {
  json out;
  out["schema_version"] = std::string(schema_version);
  out["command"] = std::string(command);
  out["config"] = std::move(config);
  out["results"] = std::move(results);
  out["timing_ms"] = timing_ms;
  return out;
}

inline std::string to_json_text(const json& report) { return report.dump(2) + "\n"; }

inline std::string histogram_csv(const Histogram& h) {
  std::string out = "bitstring,count,frequency\n";
  for (const auto& [key, count] : h.counts) {
    out += key;
    out += ',';
    out += std::to_string(count);
    out += ',';
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10f", h.frequency(key));
    out += buf;
    out += '\n';
  }
  return out;
}

inline std::string analytic_csv(const AnalyticResult& result, int n_classical_bits) {
  std::string out = "bitstring,probability\n";
  for (std::uint64_t i = 0; i < result.classical_probabilities.size(); ++i) {
    out += classical_key(i, n_classical_bits);
    out += ',';
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12f", result.classical_probabilities[i]);
    out += buf;
    out += '\n';
  }
  return out;
}

}  // namespace qteleport::report
