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

#include "ionmap/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ionmap {

ReportFormat parse_report_format(const std::string& name) {
  if (name == "table" || name == "table-text" || name == "text") {
    return ReportFormat::Table;
  }
  if (name == "csv") {
    return ReportFormat::Csv;
  }
  if (name == "json") {
    return ReportFormat::Json;
  }
  throw std::invalid_argument("unknown report format '" + name + "'");
}

namespace {

const char* const kCsvHeader =
    "name,qubits,gates,depth,symmetry,policy,baseline,shuttles,moves,"
    "program_fidelity,log_fidelity,compile_time,error";

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') {
      out += '"';
    }
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  return fields;
}

nlohmann::ordered_json log_to_json(double v) {
  if (std::isinf(v)) {
    return nullptr; // fidelity underflowed to exactly zero
  }
  return v;
}

double log_from_json(const nlohmann::ordered_json& v) {
  if (v.is_null()) {
    return -std::numeric_limits<double>::infinity();
  }
  return v.get<double>();
}

std::string render_json(const BenchReport& r) {
  nlohmann::ordered_json j;
  j["config"] = r.config;
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& rec : r.records) {
    nlohmann::ordered_json o;
    o["name"] = rec.name;
    o["qubits"] = rec.qubits;
    o["gates"] = rec.gates;
    o["depth"] = rec.depth;
    o["symmetry"] = rec.symmetry;
    o["policy"] = rec.policy;
    o["shuttles"] = rec.shuttles;
    o["moves"] = rec.moves;
    o["program_fidelity"] = rec.program_fidelity;
    o["log_fidelity"] = log_to_json(rec.log_fidelity);
    if (rec.compile_time) {
      o["compile_time"] = *rec.compile_time;
    }
    if (!rec.error.empty()) {
      o["error"] = rec.error;
    }
    j["records"].push_back(std::move(o));
  }
  j["comparisons"] = nlohmann::ordered_json::array();
  for (const auto& c : r.comparisons) {
    j["comparisons"].push_back({{"candidate", c.candidate},
                                {"baseline", c.baseline},
                                {"circuits", c.circuits},
                                {"circuits_with_fewer_shuttles", c.fewer},
                                {"circuits_with_more_shuttles", c.more},
                                {"ties", c.ties},
                                {"avg_reduction", c.avg_reduction},
                                {"avg_increase", c.avg_increase},
                                {"mean_delta", c.mean_delta},
                                {"net_reduction", c.net_reduction},
                                {"net_pct_reduction", c.net_pct_reduction},
                                {"mean_pct_reduction", c.mean_pct_reduction},
                                {"avg_fidelity_ratio", c.avg_fidelity_ratio},
                                {"max_fidelity_ratio", c.max_fidelity_ratio},
                                {"undefined_ratios", c.undefined_ratios}});
  }
  return j.dump(2) + "\n";
}

std::string render_csv(const BenchReport& r) {
  const std::string baseline =
      r.config.contains("baseline") ? r.config["baseline"].get<std::string>()
                                    : "";
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& rec : r.records) {
    out += csv_field(rec.name) + "," + std::to_string(rec.qubits) + "," +
           std::to_string(rec.gates) + "," + std::to_string(rec.depth) + "," +
           std::to_string(rec.symmetry) + "," + csv_field(rec.policy) + "," +
           csv_field(baseline) + "," + std::to_string(rec.shuttles) + "," +
           std::to_string(rec.moves) + "," + exact(rec.program_fidelity) +
           "," + exact(rec.log_fidelity) + "," +
           (rec.compile_time ? exact(*rec.compile_time) : "") + "," +
           csv_field(rec.error) + "\n";
  }
  return out;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string render_table(const BenchReport& r) {
  const bool timing =
      std::any_of(r.records.begin(), r.records.end(),
                  [](const CircuitRecord& c) { return c.compile_time; });
  std::ostringstream out;
  out << pad("circuit", 20) << pad("Q", 5) << pad("G", 6) << pad("D", 6)
      << pad("S", 3) << pad("policy", 16) << pad("shuttles", 10)
      << pad("fidelity", 14) << (timing ? "compile_s" : "") << "\n";
  for (const auto& rec : r.records) {
    out << pad(rec.name, 20) << pad(std::to_string(rec.qubits), 5)
        << pad(std::to_string(rec.gates), 6)
        << pad(std::to_string(rec.depth), 6)
        << pad(std::to_string(rec.symmetry), 3) << pad(rec.policy, 16);
    if (!rec.error.empty()) {
      out << "FAILED: " << rec.error << "\n";
      continue;
    }
    std::ostringstream fid;
    fid << std::setprecision(6) << rec.program_fidelity;
    out << pad(std::to_string(rec.shuttles), 10) << pad(fid.str(), 14);
    if (rec.compile_time) {
      out << fixed(*rec.compile_time, 6);
    }
    out << "\n";
  }
  if (r.comparisons.empty()) {
    return out.str();
  }
  out << "\nbaseline: " << r.comparisons.front().baseline << "\n";
  out << pad("parameter", 34);
  for (const auto& c : r.comparisons) {
    out << pad(c.candidate, 16);
  }
  out << "\n";
  auto row = [&](const std::string& label, auto get) {
    out << pad(label, 34);
    for (const auto& c : r.comparisons) {
      out << pad(get(c), 16);
    }
    out << "\n";
  };
  row("# of ckts w/ fewer shuttles",
      [](const Comparison& c) { return std::to_string(c.fewer); });
  row("avg reduction (improved ckts)",
      [](const Comparison& c) { return fixed(c.avg_reduction, 2); });
  row("# of ckts w/ more shuttles",
      [](const Comparison& c) { return std::to_string(c.more); });
  row("avg increase (worsened ckts)",
      [](const Comparison& c) { return fixed(c.avg_increase, 2); });
  row("# of ties", [](const Comparison& c) { return std::to_string(c.ties); });
  row("net reduction (sum)",
      [](const Comparison& c) { return fixed(c.net_reduction, 0); });
  row("net reduction per circuit",
      [](const Comparison& c) { return fixed(c.mean_delta, 2); });
  row("net % reduction",
      [](const Comparison& c) { return fixed(c.net_pct_reduction, 2) + "%"; });
  row("mean % reduction per circuit",
      [](const Comparison& c) { return fixed(c.mean_pct_reduction, 2) + "%"; });
  row("avg fidelity ratio",
      [](const Comparison& c) { return fixed(c.avg_fidelity_ratio, 3) + "X"; });
  row("max fidelity ratio",
      [](const Comparison& c) { return fixed(c.max_fidelity_ratio, 3) + "X"; });
  return out.str();
}

} // namespace

std::string emit_report(const BenchReport& r, ReportFormat format) {
  switch (format) {
  case ReportFormat::Table:
    return render_table(r);
  case ReportFormat::Csv:
    return render_csv(r);
  case ReportFormat::Json:
    return render_json(r);
  }
  throw std::invalid_argument("unknown report format");
}

BenchReport report_from_json(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  BenchReport r;
  r.config = j.at("config");
  for (const auto& o : j.at("records")) {
    CircuitRecord rec;
    rec.name = o.at("name").get<std::string>();
    rec.qubits = o.at("qubits").get<std::size_t>();
    rec.gates = o.at("gates").get<std::size_t>();
    rec.depth = o.at("depth").get<std::size_t>();
    rec.symmetry = o.at("symmetry").get<int>();
    rec.policy = o.at("policy").get<std::string>();
    rec.shuttles = o.at("shuttles").get<std::size_t>();
    rec.moves = o.at("moves").get<std::size_t>();
    rec.program_fidelity = o.at("program_fidelity").get<double>();
    rec.log_fidelity = log_from_json(o.at("log_fidelity"));
    if (o.contains("compile_time")) {
      rec.compile_time = o["compile_time"].get<double>();
    }
    rec.error = o.value("error", std::string());
    r.records.push_back(std::move(rec));
  }
  for (const auto& o : j.at("comparisons")) {
    Comparison c;
    c.candidate = o.at("candidate").get<std::string>();
    c.baseline = o.at("baseline").get<std::string>();
    c.circuits = o.at("circuits").get<std::size_t>();
    c.fewer = o.at("circuits_with_fewer_shuttles").get<std::size_t>();
    c.more = o.at("circuits_with_more_shuttles").get<std::size_t>();
    c.ties = o.at("ties").get<std::size_t>();
    c.avg_reduction = o.at("avg_reduction").get<double>();
    c.avg_increase = o.at("avg_increase").get<double>();
    c.mean_delta = o.at("mean_delta").get<double>();
    c.net_reduction = o.at("net_reduction").get<double>();
    c.net_pct_reduction = o.at("net_pct_reduction").get<double>();
    c.mean_pct_reduction = o.at("mean_pct_reduction").get<double>();
    c.avg_fidelity_ratio = o.at("avg_fidelity_ratio").get<double>();
    c.max_fidelity_ratio = o.at("max_fidelity_ratio").get<double>();
    c.undefined_ratios = o.at("undefined_ratios").get<std::size_t>();
    r.comparisons.push_back(c);
  }
  return r;
}

BenchReport report_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("csv report: unexpected header");
  }
  BenchReport r;
  std::string baseline;
  std::vector<std::string> candidates;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 13) {
      throw std::invalid_argument("csv report: line " +
                                  std::to_string(line_no) +
                                  " has wrong field count");
    }
    CircuitRecord rec;
    rec.name = f[0];
    rec.qubits = std::stoul(f[1]);
    rec.gates = std::stoul(f[2]);
    rec.depth = std::stoul(f[3]);
    rec.symmetry = std::stoi(f[4]);
    rec.policy = f[5];
    baseline = f[6];
    rec.shuttles = std::stoul(f[7]);
    rec.moves = std::stoul(f[8]);
    rec.program_fidelity = std::strtod(f[9].c_str(), nullptr);
    rec.log_fidelity = std::strtod(f[10].c_str(), nullptr);
    if (!f[11].empty()) {
      rec.compile_time = std::strtod(f[11].c_str(), nullptr);
    }
    rec.error = f[12];
    if (rec.policy != baseline &&
        std::find(candidates.begin(), candidates.end(), rec.policy) ==
            candidates.end()) {
      candidates.push_back(rec.policy);
    }
    r.records.push_back(std::move(rec));
  }
  r.config["baseline"] = baseline;
  r.comparisons = compute_comparisons(r.records, baseline, candidates);
  return r;
}

} // namespace ionmap
