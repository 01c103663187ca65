#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gauges {

struct PropertyResult {
  std::string name;
  int samples = 0;
  bool pass = false;
  std::string detail;
};

/// Deterministic property suites, one per module group. Each result records
/// the sample count actually exercised.
std::vector<PropertyResult> suite_ordered(std::uint64_t seed);
std::vector<PropertyResult> suite_series(std::uint64_t seed);
std::vector<PropertyResult> suite_gauges(std::uint64_t seed);
std::vector<PropertyResult> suite_rings(std::uint64_t seed);

std::vector<PropertyResult> run_suite(const std::string& name, std::uint64_t seed);

}  // namespace gauges
