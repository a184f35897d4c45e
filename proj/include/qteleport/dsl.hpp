#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qteleport/circuit.hpp"

namespace qteleport {

// Circuit text format (".qc" files, UTF-8, LF or CRLF):
//
//   qubits N              header, required first
//   i|x|y|z|h|s|t Q       one-qubit gate
//   cx QC QT              controlled-NOT
//   measure Q -> C        measure qubit Q into classical bit C
//   if C == V then G Q    apply one-qubit gate G to Q iff bit C reads V
//   # comment             runs to end of line; blank lines are ignored
//
// Mnemonics and keywords are matched case-insensitively; the serializer
// emits lowercase, single spaces and LF. The classical register size is
// the highest bit written by a measure, plus one.

enum class ErrorKind {
  Syntax,
  UnknownGate,
  IndexOutOfRange,
  ClassicalBitUndefined,
  QubitAfterMeasure,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::UnknownGate: return "unknown-gate";
    case ErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ErrorKind::ClassicalBitUndefined: return "classical-bit-undefined";
    case ErrorKind::QubitAfterMeasure: return "qubit-after-measure";
  }
  return "?";
}

/// First problem found in a program, with a 1-based source position.
struct ParseError {
  int line = 1;
  int column = 1;
  ErrorKind kind = ErrorKind::Syntax;
  std::string message;

  std::string to_string() const {
    std::ostringstream out;
    out << "line " << line << ", column " << column << ": " << qteleport::to_string(kind)
        << ": " << message;
    return out.str();
  }
};

struct ParseResult {
  std::optional<Circuit> circuit;
  std::optional<ParseError> error;

  explicit operator bool() const { return circuit.has_value(); }
};

namespace detail {

struct Token {
  std::string text;
  int column = 1;  // 1-based
};

inline std::string lowercase(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    tokens.push_back(Token{std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return tokens;
}

inline std::optional<long long> parse_int(const std::string& text) {
  long long value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ParseResult run() {
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= src_.size()) {
      std::size_t end = src_.find('\n', pos);
      if (end == std::string_view::npos) end = src_.size();
      std::string_view line = src_.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      if (auto err = handle_line(line, line_no)) return {std::nullopt, err};
      if (end == src_.size()) break;
      pos = end + 1;
    }
    if (!saw_header_)
      return {std::nullopt, ParseError{1, 1, ErrorKind::Syntax, "missing 'qubits N' header"}};
    return {std::move(circuit_), std::nullopt};
  }

 private:
  std::optional<ParseError> handle_line(std::string_view raw, int line_no) {
    std::string_view line = raw.substr(0, std::min(raw.size(), raw.find('#')));
    const auto tokens = tokenize(line);
    if (tokens.empty()) return std::nullopt;
    line_ = line_no;
    end_column_ = static_cast<int>(line.size()) + 1;

    const std::string head = lowercase(tokens[0].text);
    if (head == "qubits") return handle_header(tokens);
    if (!saw_header_)
      return error(ErrorKind::Syntax, tokens[0].column, "expected 'qubits N' header before instructions");
    if (head == "measure") return handle_measure(tokens);
    if (head == "if") return handle_conditional(tokens);
    return handle_gate(tokens);
  }

  std::optional<ParseError> handle_header(const std::vector<Token>& tokens) {
    if (saw_header_) return error(ErrorKind::Syntax, tokens[0].column, "duplicate 'qubits' header");
    if (tokens.size() < 2) return error(ErrorKind::Syntax, end_column_, "expected qubit count");
    if (tokens.size() > 2)
      return error(ErrorKind::Syntax, tokens[2].column, "unexpected token after qubit count");
    const auto n = parse_int(tokens[1].text);
    if (!n) return error(ErrorKind::Syntax, tokens[1].column, "expected integer qubit count");
    if (*n < 1 || *n > 24)
      return error(ErrorKind::IndexOutOfRange, tokens[1].column,
                   "qubit count must be between 1 and 24");
    circuit_.n_qubits = static_cast<int>(*n);
    measured_.assign(static_cast<std::size_t>(*n), false);
    saw_header_ = true;
    return std::nullopt;
  }

  std::optional<ParseError> handle_gate(const std::vector<Token>& tokens) {
    const auto gate = gate_from_mnemonic(tokens[0].text);
    if (!gate)
      return error(ErrorKind::UnknownGate, tokens[0].column,
                   "unknown gate '" + tokens[0].text + "'");
    const int arity = gate_arity(*gate);
    if (static_cast<int>(tokens.size()) < 1 + arity)
      return error(ErrorKind::Syntax, end_column_, "missing qubit operand");
    if (static_cast<int>(tokens.size()) > 1 + arity)
      return error(ErrorKind::Syntax, tokens[static_cast<std::size_t>(1 + arity)].column,
                   "unexpected token after instruction");
    if (*gate == GateName::CNOT) {
      int control = 0, target = 0;
      if (auto err = qubit_operand(tokens[1], control)) return err;
      if (auto err = qubit_operand(tokens[2], target)) return err;
      if (control == target)
        return error(ErrorKind::IndexOutOfRange, tokens[2].column, "control equals target");
      if (auto err = require_unmeasured(control, tokens[1].column)) return err;
      if (auto err = require_unmeasured(target, tokens[2].column)) return err;
      circuit_.cnot(control, target);
      return std::nullopt;
    }
    int target = 0;
    if (auto err = qubit_operand(tokens[1], target)) return err;
    if (auto err = require_unmeasured(target, tokens[1].column)) return err;
    circuit_.gate1(*gate, target);
    return std::nullopt;
  }

  std::optional<ParseError> handle_measure(const std::vector<Token>& tokens) {
    if (tokens.size() < 4) return error(ErrorKind::Syntax, end_column_, "expected 'measure Q -> C'");
    if (tokens.size() > 4)
      return error(ErrorKind::Syntax, tokens[4].column, "unexpected token after instruction");
    if (tokens[2].text != "->")
      return error(ErrorKind::Syntax, tokens[2].column, "expected '->'");
    int qubit = 0;
    if (auto err = qubit_operand(tokens[1], qubit)) return err;
    int bit = 0;
    if (auto err = classical_operand(tokens[3], bit)) return err;
    circuit_.measure(qubit, bit);
    measured_[static_cast<std::size_t>(qubit)] = true;
    written_bits_.resize(std::max(written_bits_.size(), static_cast<std::size_t>(bit) + 1), false);
    written_bits_[static_cast<std::size_t>(bit)] = true;
    return std::nullopt;
  }

  std::optional<ParseError> handle_conditional(const std::vector<Token>& tokens) {
    if (tokens.size() < 7)
      return error(ErrorKind::Syntax, end_column_, "expected 'if C == V then G Q'");
    if (tokens.size() > 7)
      return error(ErrorKind::Syntax, tokens[7].column, "unexpected token after instruction");
    if (tokens[2].text != "==") return error(ErrorKind::Syntax, tokens[2].column, "expected '=='");
    if (lowercase(tokens[4].text) != "then")
      return error(ErrorKind::Syntax, tokens[4].column, "expected 'then'");
    int bit = 0;
    if (auto err = classical_operand(tokens[1], bit)) return err;
    if (bit >= static_cast<int>(written_bits_.size()) || !written_bits_[static_cast<std::size_t>(bit)])
      return error(ErrorKind::ClassicalBitUndefined, tokens[1].column,
                   "classical bit " + tokens[1].text + " is never written by a measure");
    const auto value = parse_int(tokens[3].text);
    if (!value || (*value != 0 && *value != 1))
      return error(ErrorKind::Syntax, tokens[3].column, "required value must be 0 or 1");
    const auto gate = gate_from_mnemonic(tokens[5].text);
    if (!gate)
      return error(ErrorKind::UnknownGate, tokens[5].column,
                   "unknown gate '" + tokens[5].text + "'");
    if (gate_arity(*gate) != 1)
      return error(ErrorKind::Syntax, tokens[5].column, "conditional gate must be a one-qubit gate");
    int target = 0;
    if (auto err = qubit_operand(tokens[6], target)) return err;
    if (auto err = require_unmeasured(target, tokens[6].column)) return err;
    circuit_.conditional(*gate, target, bit, static_cast<int>(*value));
    return std::nullopt;
  }

  std::optional<ParseError> qubit_operand(const Token& token, int& out) {
    const auto value = parse_int(token.text);
    if (!value) return error(ErrorKind::Syntax, token.column, "expected qubit index");
    if (*value < 0 || *value >= circuit_.n_qubits)
      return error(ErrorKind::IndexOutOfRange, token.column,
                   "qubit index " + token.text + " out of range for " +
                       std::to_string(circuit_.n_qubits) + " qubits");
    out = static_cast<int>(*value);
    return std::nullopt;
  }

  std::optional<ParseError> classical_operand(const Token& token, int& out) {
    const auto value = parse_int(token.text);
    if (!value) return error(ErrorKind::Syntax, token.column, "expected classical bit index");
    if (*value < 0 || *value > 63)
      return error(ErrorKind::IndexOutOfRange, token.column,
                   "classical bit index must be between 0 and 63");
    out = static_cast<int>(*value);
    return std::nullopt;
  }

  std::optional<ParseError> require_unmeasured(int qubit, int column) {
    if (measured_[static_cast<std::size_t>(qubit)])
      return error(ErrorKind::QubitAfterMeasure, column,
                   "qubit " + std::to_string(qubit) + " was already measured");
    return std::nullopt;
  }

  std::optional<ParseError> error(ErrorKind kind, int column, std::string message) {
    return ParseError{line_, column, kind, std::move(message)};
  }

  std::string_view src_;
  Circuit circuit_;
  std::vector<bool> measured_;
  std::vector<bool> written_bits_;
  bool saw_header_ = false;
  int line_ = 1;
  int end_column_ = 1;
};

}  // namespace detail

/// Parses a program; returns either a validated circuit or the first
/// error, positioned at the offending token.
inline ParseResult parse(std::string_view src) { return detail::Parser(src).run(); }

/// Canonical text: lowercase mnemonics, single spaces, one instruction
/// per line, LF line endings. parse(serialize(c)) reproduces c.
inline std::string serialize(const Circuit& circuit) {
  std::ostringstream out;
  out << "qubits " << circuit.n_qubits << "\n";
  for (const Instruction& ins : circuit.instructions) {
    switch (ins.kind) {
      case Instruction::Kind::Gate1:
        out << mnemonic(ins.gate) << " " << ins.target << "\n";
        break;
      case Instruction::Kind::Cnot:
        out << "cx " << ins.control << " " << ins.target << "\n";
        break;
      case Instruction::Kind::Measure:
        out << "measure " << ins.target << " -> " << ins.classical_bit << "\n";
        break;
      case Instruction::Kind::ConditionalGate1:
        out << "if " << ins.classical_bit << " == " << ins.required_value << " then "
            << mnemonic(ins.gate) << " " << ins.target << "\n";
        break;
    }
  }
  return out.str();
}

struct ValidationReport {
  std::optional<ParseError> error;  // positions refer to serialize(circuit)
  std::vector<std::string> warnings;

  bool ok() const { return !error.has_value(); }
};

/// Structural validation of a circuit built in code. Runs the same
/// checks as the parser against the circuit's canonical serialization,
/// so reported positions point into serialize(circuit). Circuits wider
/// than 5 qubits get an advisory warning, not an error.
inline ValidationReport validate(const Circuit& circuit) {
  ValidationReport report;
  ParseResult round_trip = parse(serialize(circuit));
  report.error = round_trip.error;
  if (circuit.n_qubits > 5)
    report.warnings.push_back("circuit uses " + std::to_string(circuit.n_qubits) +
                              " qubits; the reference 5-qubit device profile is exceeded");
  return report;
}

}  // namespace qteleport
