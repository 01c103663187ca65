#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gauges/rings.hpp"

namespace gauges {

struct PrecisionPolicy {
  Value initial;
  int max_refinements = 4;
};

/// A loaded scenario: field model, extensions, algebras, gauge expression
/// tree by named references, declared constants, precision policy and seed.
struct Scenario {
  FieldPtr base;
  PrecisionPolicy precision;
  std::uint64_t seed = 1;
  std::vector<std::pair<std::string, FieldPtr>> extensions;
  std::vector<std::pair<std::string, AlgebraPtr>> algebras;
  std::vector<std::pair<std::string, GaugePtr>> gauges;
  std::map<std::string, std::optional<long>> gauge_xi;
  ScenarioConstants constants;

  FieldPtr find_extension(const std::string& name) const;
  AlgebraPtr find_algebra(const std::string& name) const;
  GaugePtr find_gauge(const std::string& name) const;
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& json_text);

/// Scalar literal parser over a scenario field; extension elements may use
/// the generator symbol "t" linearly.
Scalar parse_scalar(const std::string& text, const FieldPtr& field);

struct CheckRecord {
  std::string name;
  enum class Status { Pass, Fail, Unverified, Error } status = Status::Error;
  std::string details;
  double seconds = 0;
};

struct Report {
  std::vector<CheckRecord> records;
  bool precision_exhausted = false;

  bool pass() const;
  /// 0 pass, 1 check failure, 3 precision exhaustion.
  int exit_code() const;
  /// Aligned human table (includes timing).
  std::string human() const;
  /// Machine-readable form: stable key order, no timing, byte-identical for
  /// equal seeds and inputs.
  std::string machine_json() const;
};

Report run_check(const Scenario& s);
Report run_gr(const Scenario& s);
Report run_extensions(const Scenario& s);
Report run_report(const Scenario& s);

/// The bundled rank-2 instance battery: value table, coset structure, omega
/// and minimality, the gauge-ring description, gamma-independence, the
/// Graeter identity, total rings, defect ledgers, extension counts, the
/// Prop-4.7 lift, and composition round trips.
Report run_example51(const Rat& gamma, int samples, std::uint64_t seed);

Report run_props(const std::string& suite, std::uint64_t seed);

/// Graded presentation serialization used by the `gr` command.
std::string gr_presentation_json(const std::string& name, const GaugePtr& g);

}  // namespace gauges
