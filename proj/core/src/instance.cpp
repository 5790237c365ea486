#include "ovcp/instance.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ovcp/errors.hpp"
#include "ovcp/rng.hpp"

namespace ovcp {

namespace {

std::string format_p(double p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", p);
  return buf;
}

[[noreturn]] void format_fail(std::size_t line, const std::string& what) {
  throw FormatError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string_view to_string(ProblemKind kind) {
  return kind == ProblemKind::kOrthogonalVectors ? "ov" : "cp";
}

ProblemKind kind_from_string(std::string_view text) {
  if (text == "ov") return ProblemKind::kOrthogonalVectors;
  if (text == "cp") return ProblemKind::kClosestPair;
  throw ParameterError("unknown problem kind '" + std::string(text) +
                       "' (expected ov or cp)");
}

void InstanceParams::validate() const {
  if (n == 0) throw ParameterError("n must be positive");
  if (d == 0) throw ParameterError("d must be positive");
  if (!(p > 0.0) || !(p < 1.0)) {
    throw ParameterError("p must lie strictly inside (0,1), got " + format_p(p));
  }
  if (kind == ProblemKind::kClosestPair && p != 0.5) {
    throw ParameterError("closest pair instances fix p = 1/2, got " +
                         format_p(p));
  }
}

double InstanceParams::dimension_ratio() const {
  if (n < 2) throw ParameterError("dimension ratio needs n >= 2");
  return static_cast<double>(d) / std::log2(static_cast<double>(n));
}

Instance generate_instance(const InstanceParams& params) {
  params.validate();
  const std::uint64_t threshold = rng::bernoulli_threshold(params.p);

  Instance inst;
  inst.params = params;
  inst.x.reserve(params.n);
  inst.y.reserve(params.n);
  for (unsigned side = 0; side < 2; ++side) {
    const std::uint64_t stream = side == 0 ? rng::kSideX : rng::kSideY;
    auto& vectors = side == 0 ? inst.x : inst.y;
    for (std::size_t index = 0; index < params.n; ++index) {
      BitVector v(params.d);
      for (std::size_t coord = 0; coord < params.d; ++coord) {
        if (rng::draw(params.seed, stream, index, coord) < threshold) {
          v.set_bit(coord, true);
        }
      }
      vectors.push_back(std::move(v));
    }
  }
  return inst;
}

Instance plant_pair(const Instance& inst, std::size_t target, std::size_t i,
                    std::size_t j) {
  const std::size_t d = inst.params.d;
  if (target > d) {
    throw ParameterError("planted inner product " + std::to_string(target) +
                         " exceeds dimension " + std::to_string(d));
  }
  if (i >= inst.params.n || j >= inst.params.n) {
    throw ParameterError("plant position out of range");
  }

  // x carries ones on [0, target + a), y on [0, target) and [target + a, d),
  // with a = floor((d - target) / 2); the overlap is exactly [0, target).
  const std::size_t a = (d - target) / 2;
  BitVector px(d);
  BitVector py(d);
  for (std::size_t k = 0; k < target + a; ++k) px.set_bit(k, true);
  for (std::size_t k = 0; k < target; ++k) py.set_bit(k, true);
  for (std::size_t k = target + a; k < d; ++k) py.set_bit(k, true);

  Instance out = inst;
  out.x[i] = std::move(px);
  out.y[j] = std::move(py);
  return out;
}

void write_instance(const Instance& inst, std::ostream& out) {
  out << "OVCP 1\n";
  out << "kind=" << to_string(inst.params.kind) << " n=" << inst.params.n
      << " d=" << inst.params.d << " p=" << format_p(inst.params.p)
      << " seed=" << inst.params.seed << "\n";
  for (const auto& v : inst.x) out << v.to_string() << "\n";
  for (const auto& v : inst.y) out << v.to_string() << "\n";
}

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw FormatError("cannot open '" + path.string() + "' for writing");
  }
  write_instance(inst, out);
  out.flush();
  if (!out) throw FormatError("failed writing '" + path.string() + "'");
}

namespace {

InstanceParams parse_header(const std::string& line, std::size_t line_no) {
  InstanceParams params;
  bool got_kind = false, got_n = false, got_d = false, got_p = false,
       got_seed = false;
  std::istringstream fields(line);
  std::string field;
  while (fields >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) {
      format_fail(line_no, "expected key=value, got '" + field + "'");
    }
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    try {
      if (key == "kind") {
        params.kind = kind_from_string(value);
        got_kind = true;
      } else if (key == "n") {
        params.n = std::stoull(value);
        got_n = true;
      } else if (key == "d") {
        params.d = std::stoull(value);
        got_d = true;
      } else if (key == "p") {
        char* end = nullptr;
        params.p = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0') {
          format_fail(line_no, "bad decimal for p: '" + value + "'");
        }
        got_p = true;
      } else if (key == "seed") {
        params.seed = std::stoull(value);
        got_seed = true;
      } else {
        format_fail(line_no, "unknown header key '" + key + "'");
      }
    } catch (const FormatError&) {
      throw;
    } catch (const std::exception& e) {
      format_fail(line_no, "bad value for " + key + ": " + e.what());
    }
  }
  if (!(got_kind && got_n && got_d && got_p && got_seed)) {
    format_fail(line_no, "header must set kind, n, d, p and seed");
  }
  return params;
}

}  // namespace

Instance read_instance(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) {
      format_fail(line_no + 1, std::string("unexpected end of file, expected ") +
                                   what);
    }
    ++line_no;
  };

  next_line("magic header 'OVCP 1'");
  if (line != "OVCP 1") {
    format_fail(line_no, "bad magic, expected 'OVCP 1'");
  }
  next_line("parameter header");
  InstanceParams params = parse_header(line, line_no);
  try {
    params.validate();
  } catch (const ParameterError& e) {
    format_fail(line_no, e.what());
  }

  Instance inst;
  inst.params = params;
  inst.x.reserve(params.n);
  inst.y.reserve(params.n);
  for (unsigned side = 0; side < 2; ++side) {
    auto& vectors = side == 0 ? inst.x : inst.y;
    for (std::size_t r = 0; r < params.n; ++r) {
      next_line(side == 0 ? "an X row" : "a Y row");
      if (line.size() != params.d) {
        format_fail(line_no, "row has " + std::to_string(line.size()) +
                                 " characters, expected d=" +
                                 std::to_string(params.d));
      }
      try {
        vectors.push_back(BitVector::from_string(line));
      } catch (const FormatError& e) {
        format_fail(line_no, e.what());
      }
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty()) {
      format_fail(line_no, "trailing content after " + std::to_string(2 * params.n) +
                               " declared rows (vector count mismatch)");
    }
  }
  return inst;
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  return read_instance(in);
}

}  // namespace ovcp
