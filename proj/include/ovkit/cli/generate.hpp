#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ovkit/core/vector_family.hpp"

namespace ovkit::cli {

struct GenerateConfig {
  /// uniform | planted-orthogonal | planted-ip | sparse
  std::string model = "uniform";
  std::size_t n = 64;
  /// Dimension; for the sparse model the per-vector weight bound.
  std::size_t d = 10;
  /// Bit density for the dense models, as "p/q" or a decimal.
  std::string p = "1/2";
  /// Planted inner product for planted-ip.
  std::size_t w = 0;
  /// Universe size for the sparse model.
  std::size_t m = 0;
  std::size_t families = 2;
  std::uint64_t seed = 1;
};

struct GeneratedInstance {
  std::vector<VectorFamily> families;
  /// Planted indices and the certified property; null for unplanted models.
  nlohmann::json witness;
};

/// Reproducible instance for the model; throws InvalidArgument on bad parameters.
GeneratedInstance generate_instance(const GenerateConfig& config);

/// <prefix>.<i>.txt per family plus the <prefix>.json sidecar; returns the paths written.
std::vector<std::filesystem::path> write_instance(const std::filesystem::path& prefix, const GenerateConfig& config,
                                                  const GeneratedInstance& instance);

}  // namespace ovkit::cli
