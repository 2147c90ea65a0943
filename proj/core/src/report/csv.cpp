#include "gmrf/report/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "gmrf/error.hpp"
#include "gmrf/report/config.hpp"

namespace gmrf::report {

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw Error("cannot format number");
  return {buf, ptr};
}

std::string to_csv(const std::vector<CycleRecord>& records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const CycleRecord& r : records) {
    const FormComponents& f = r.forms;
    out += std::to_string(r.iteration);
    for (double v : {r.beta, r.entropy, f.A, f.E, f.F, f.I, f.L, f.P, f.Q, f.T,
                     r.gaussian_k, r.mean_h, r.principal[0], r.principal[1],
                     r.principal[2]}) {
      out += ',';
      out += format_real(v);
    }
    out += ',';
    out += to_string(r.phase);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<CycleRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << to_csv(records);
  if (!out.flush()) throw Error("write failed for '" + path + "'");
}

std::vector<CycleRecord> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error("'" + path + "' does not start with the expected CSV header");
  }
  std::vector<CycleRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> fields;
    std::istringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 17) {
      throw Error("'" + path + "' line " + std::to_string(line_no) +
                  ": expected 17 fields");
    }
    auto number = [&](std::size_t k) {
      double v = 0.0;
      const auto& s = fields[k];
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error("'" + path + "' line " + std::to_string(line_no) +
                    ": bad number '" + s + "'");
      }
      return v;
    };
    CycleRecord r;
    r.iteration = std::stoi(fields[0]);
    r.beta = number(1);
    r.entropy = number(2);
    r.forms = {number(3), number(4), number(5),  number(6),
               number(7), number(8), number(9), number(10)};
    r.gaussian_k = number(11);
    r.mean_h = number(12);
    r.principal = {number(13), number(14), number(15)};
    if (fields[16] == "heating") {
      r.phase = Phase::heating;
    } else if (fields[16] == "cooling") {
      r.phase = Phase::cooling;
    } else {
      throw Error("'" + path + "' line " + std::to_string(line_no) +
                  ": bad phase '" + fields[16] + "'");
    }
    r.estimate.beta = r.beta;
    records.push_back(r);
  }
  return records;
}

}  // namespace gmrf::report
