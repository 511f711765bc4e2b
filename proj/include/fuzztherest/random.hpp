#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace fuzztherest {

using Rng = std::mt19937_64;

/// Derives an independent stream seed from a base seed and a set of stream
/// coordinates (scenario index, step index, ...).
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coords) {
  std::vector<std::uint32_t> material{static_cast<std::uint32_t>(base),
                                      static_cast<std::uint32_t>(base >> 32)};
  for (auto c : coords) {
    material.push_back(static_cast<std::uint32_t>(c));
    material.push_back(static_cast<std::uint32_t>(c >> 32));
  }
  std::seed_seq mixed(material.begin(), material.end());
  std::uint32_t out[2];
  mixed.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

}  // namespace fuzztherest
