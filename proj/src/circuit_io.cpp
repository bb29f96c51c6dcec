// Copyright 2026 The ionmap Authors
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

#include "ionmap/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace ionmap {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  return out;
}

bool is_ident_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
}

/// Minimal cursor over one statement; every failure reports `line`.
class Cursor {
public:
  Cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  bool peek(char ch) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == ch;
  }
  void expect(char ch) {
    if (!peek(ch)) {
      fail(std::string("expected '") + ch + "'");
    }
    ++pos_;
  }
  std::string_view identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
      ++pos_;
    }
    if (start == pos_) {
      fail("expected identifier");
    }
    return text_.substr(start, pos_ - start);
  }
  std::uint64_t integer() {
    skip_ws();
    std::uint64_t value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (pos_ < text_.size() && text_[pos_] == '-') {
      fail("negative qubit index");
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc()) {
      fail("expected non-negative integer");
    }
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }
  /// Skips a balanced parenthesised parameter list, if present.
  void skip_params() {
    if (!peek('(')) {
      return;
    }
    int depth = 0;
    for (; pos_ < text_.size(); ++pos_) {
      if (text_[pos_] == '(') {
        ++depth;
      } else if (text_[pos_] == ')' && --depth == 0) {
        ++pos_;
        return;
      }
    }
    fail("unbalanced parentheses");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_, what);
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

struct Operand {
  std::string reg;
  std::uint64_t index;
};

std::vector<Operand> parse_operands(Cursor& cur) {
  std::vector<Operand> ops;
  do {
    if (!ops.empty()) {
      cur.expect(',');
    }
    Operand op;
    op.reg = std::string(cur.identifier());
    if (!cur.peek('[')) {
      cur.fail("register broadcast on '" + op.reg + "' is not supported");
    }
    cur.expect('[');
    op.index = cur.integer();
    cur.expect(']');
    ops.push_back(std::move(op));
  } while (cur.peek(','));
  if (!cur.done()) {
    cur.fail("unexpected trailing text");
  }
  return ops;
}

Gate make_gate(Cursor& cur, std::string kind, const std::vector<Qubit>& ops,
               std::size_t seq, std::size_t num_qubits) {
  for (const Qubit q : ops) {
    if (q >= num_qubits) {
      cur.fail("qubit index " + std::to_string(q) +
               " exceeds declared register size " + std::to_string(num_qubits));
    }
  }
  if (ops.size() == 2 && ops[0] == ops[1]) {
    cur.fail("duplicate operand q[" + std::to_string(ops[0]) + "]");
  }
  if (ops.empty() || ops.size() > 2) {
    cur.fail("gates take one or two operands");
  }
  return Gate{std::move(kind), ops, seq};
}

Circuit parse_ms_text(std::string_view text, std::string name) {
  std::optional<std::size_t> num_qubits;
  std::vector<Gate> gates;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    Cursor cur(line, line_no);
    const std::string_view head = cur.identifier();
    if (!num_qubits) {
      if (head != "qubits") {
        cur.fail("expected header 'qubits <Q>'");
      }
      num_qubits = cur.integer();
      if (!cur.done()) {
        cur.fail("unexpected trailing text after qubit count");
      }
      continue;
    }
    std::vector<Qubit> qubits;
    for (const Operand& op : parse_operands(cur)) {
      if (op.reg != "q") {
        cur.fail("unknown register '" + op.reg + "'");
      }
      qubits.push_back(static_cast<Qubit>(op.index));
    }
    if (qubits.size() == 2 && head != "MS") {
      cur.fail("two-qubit gate must be MS, got '" + std::string(head) + "'");
    }
    gates.push_back(
        make_gate(cur, std::string(head), qubits, gates.size(), *num_qubits));
  }
  if (!num_qubits) {
    throw ParseError(line_no, "missing 'qubits <Q>' header");
  }
  return {std::move(name), *num_qubits, std::move(gates)};
}

Circuit parse_qasm2(std::string_view text, std::string name) {
  // Strip // comments first, keeping newlines so line numbers survive.
  std::string clean;
  clean.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') {
        ++i;
      }
      if (i < text.size()) {
        clean.push_back('\n');
      }
      continue;
    }
    clean.push_back(text[i]);
  }

  std::map<std::string, std::pair<std::size_t, std::size_t>> qregs;
  std::size_t num_qubits = 0;
  std::vector<Gate> gates;
  std::size_t line_no = 1;
  std::size_t start = 0;
  while (start < clean.size()) {
    std::size_t end = clean.find(';', start);
    const bool terminated = end != std::string::npos;
    if (!terminated) {
      end = clean.size();
    }
    std::string_view raw(clean.data() + start, end - start);
    // statement line = line of its first non-space character
    std::size_t lead = 0;
    while (lead < raw.size() &&
           std::isspace(static_cast<unsigned char>(raw[lead]))) {
      if (raw[lead] == '\n') {
        ++line_no;
      }
      ++lead;
    }
    const std::size_t stmt_line = line_no;
    line_no += static_cast<std::size_t>(
        std::count(raw.begin() + static_cast<std::ptrdiff_t>(lead), raw.end(),
                   '\n'));
    start = end + 1;
    const std::string_view stmt = trim(raw);
    if (stmt.empty()) {
      continue;
    }
    Cursor cur(stmt, stmt_line);
    if (!terminated) {
      cur.fail("missing ';'");
    }
    const std::string head = lower(cur.identifier());
    if (head == "openqasm" || head == "include" || head == "creg" ||
        head == "barrier" || head == "measure") {
      continue;
    }
    if (head == "qreg") {
      const std::string reg(cur.identifier());
      cur.expect('[');
      const std::size_t size = cur.integer();
      cur.expect(']');
      if (!cur.done()) {
        cur.fail("unexpected trailing text");
      }
      if (qregs.contains(reg)) {
        cur.fail("register '" + reg + "' declared twice");
      }
      qregs[reg] = {num_qubits, size};
      num_qubits += size;
      continue;
    }
    if (head == "gate" || head == "opaque" || head == "if") {
      cur.fail("'" + head + "' is outside the supported qasm subset");
    }
    cur.skip_params();
    std::vector<Qubit> qubits;
    for (const Operand& op : parse_operands(cur)) {
      const auto it = qregs.find(op.reg);
      if (it == qregs.end()) {
        cur.fail("unknown register '" + op.reg + "'");
      }
      if (op.index >= it->second.second) {
        cur.fail("qubit index " + std::to_string(op.index) +
                 " exceeds declared register size " +
                 std::to_string(it->second.second));
      }
      qubits.push_back(static_cast<Qubit>(it->second.first + op.index));
    }
    std::string kind = head;
    if (qubits.size() == 2) {
      if (head != "ms" && head != "cx" && head != "cz") {
        cur.fail("unsupported two-qubit gate '" + head + "'");
      }
      kind = "MS";
    }
    gates.push_back(
        make_gate(cur, std::move(kind), qubits, gates.size(), num_qubits));
  }
  return {std::move(name), num_qubits, std::move(gates)};
}

} // namespace

Circuit parse_circuit(std::string_view text, SourceFormat format,
                      std::string name) {
  switch (format) {
  case SourceFormat::MsText:
    return parse_ms_text(text, std::move(name));
  case SourceFormat::Qasm2Subset:
    return parse_qasm2(text, std::move(name));
  }
  throw std::invalid_argument("unknown source format");
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open circuit file " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::filesystem::path p(path);
  const SourceFormat format = p.extension() == ".qasm"
                                  ? SourceFormat::Qasm2Subset
                                  : SourceFormat::MsText;
  return parse_circuit(buf.str(), format, p.stem().string());
}

std::string serialize_ms_text(const Circuit& c) {
  std::string out = "qubits " + std::to_string(c.num_qubits()) + "\n";
  for (const Gate& g : c.gates()) {
    if (g.is_two_qubit()) {
      out += "MS q[" + std::to_string(g.operands[0]) + "], q[" +
             std::to_string(g.operands[1]) + "]\n";
    } else {
      out += g.kind + " q[" + std::to_string(g.operands[0]) + "]\n";
    }
  }
  return out;
}

} // namespace ionmap
