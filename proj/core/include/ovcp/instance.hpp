#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "ovcp/bitvector.hpp"

namespace ovcp {

enum class ProblemKind { kOrthogonalVectors, kClosestPair };

std::string_view to_string(ProblemKind kind);          // "ov" / "cp"
ProblemKind kind_from_string(std::string_view text);   // throws ParameterError

struct InstanceParams {
  ProblemKind kind = ProblemKind::kOrthogonalVectors;
  std::size_t n = 0;
  std::size_t d = 0;
  double p = 0.5;  // coordinate density; closest pair fixes p = 1/2
  std::uint64_t seed = 0;

  /// Throws ParameterError on n = 0, d = 0, p outside (0,1), or a closest
  /// pair kind with p != 1/2.
  void validate() const;

  /// c = d / log2(n); requires n >= 2.
  double dimension_ratio() const;

  bool operator==(const InstanceParams&) const = default;
};

struct Instance {
  InstanceParams params;
  std::vector<BitVector> x;
  std::vector<BitVector> y;

  bool operator==(const Instance&) const = default;
};

/// Draws each coordinate as an independent Bernoulli(p) bit. The draw for
/// (side, vector index, coordinate) depends only on (seed, side, index,
/// coordinate), so generation order never changes the output.
Instance generate_instance(const InstanceParams& params);

/// Copy of inst with X[i] and Y[j] overwritten by deterministic vectors whose
/// inner product is exactly `target`. target = 0 plants an orthogonal pair.
Instance plant_pair(const Instance& inst, std::size_t target, std::size_t i,
                    std::size_t j);

void write_instance(const Instance& inst, std::ostream& out);
void write_instance(const Instance& inst, const std::filesystem::path& path);
Instance read_instance(std::istream& in);
Instance read_instance(const std::filesystem::path& path);

}  // namespace ovcp
