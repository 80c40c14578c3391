#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vex/prefs/levelset.hpp"
#include "vex/stationarity/check.hpp"

namespace vex {

/// Holds: decided exactly. HoldsOnGrid: no counterexample on the sample grid.
enum class OVerdict { Holds, HoldsOnGrid, Fails, Inconclusive };

std::string o_verdict_str(OVerdict v);

struct OResult {
  OVerdict verdict = OVerdict::Inconclusive;
  /// For Fails: the point y and, where the property names one, the point v.
  std::optional<Vec> y, v;
  /// For failures found at a radius: that radius.
  std::optional<Rational> radius;
  std::string note;

  bool holds() const { return verdict == OVerdict::Holds || verdict == OVerdict::HoldsOnGrid; }
  bool fails() const { return verdict == OVerdict::Fails; }
};

struct OGrid {
  /// Radii 2^-1 .. 2^-depth.
  int depth = 8;
  /// Global properties (O5, O6) also sample at radii up to 2^spread.
  int spread = 2;
};

struct OPropertyReport {
  std::array<OResult, 6> props;  // O1 .. O6
  OGrid grid;

  const OResult& o(int i) const { return props.at(static_cast<std::size_t>(i - 1)); }
};

OPropertyReport check_o_properties(const LevelSetMapping& l, const Vec& y_bar, const OGrid& grid = {});

/// Re-checks a Fails entry from its witness points.
bool verify_o_failure(const LevelSetMapping& l, const Vec& y_bar, int property, const OResult& r);

struct HarnessInstance {
  LevelSetMapping l;
  Vec y_bar;
  std::string label;
};

struct HarnessReport {
  std::size_t instances = 0;
  /// Implication checks actually performed (both sides definite).
  std::size_t checks = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// The implications between the properties on every instance:
/// O1 ⇒ O2, O3 ⇔ [L(ȳ) = L°(ȳ)], O2 ∧ O4 ⇒ O1, O3 ∧ O4 ⇒ O2,
/// O3 ⇒ (O5 ⇔ O6).
HarnessReport implication_harness(const std::vector<HarnessInstance>& instances, const OGrid& grid = {});

/// The singleton map and strict Pareto with a kill point at the origin,
/// then `generated` seeded instances cycling through 1-D ConeTranslation,
/// 2-D ConeTranslation and TableOnGrid.
std::vector<HarnessInstance> harness_corpus(std::size_t generated, std::uint32_t seed);

struct BridgeReport {
  enum class Status {
    Confirmed,        // both extremal
    Vacuous,          // the point is not extremal on the grid
    HypothesisUnmet,  // O1 or O5 not established
    Unconfirmed,      // point extremal, triple undecided
    Violation         // point extremal, triple refuted
  };
  Status status = Status::HypothesisUnmet;
  OPropertyReport props;
  std::optional<CheckVerdict> point;
  std::optional<CheckVerdict> triple;
  std::string reason;
};

std::string bridge_status_str(BridgeReport::Status s);

/// Extremality of (x̄, ȳ) against extremality of {F, Ω, Ξ^δ}.
BridgeReport bridge_extremal_point(const MappingExpr& F, const SetExpr& omega, const LevelSetMapping& l,
                                   const Vec& x_bar, const Vec& y_bar, const Rational& delta,
                                   const EpsSchedule& schedule, const OGrid& grid = {});

/// {x ∈ Ω : F_i(x) ∩ K_i ≠ ∅ for every i}. Exact for 1-D epigraphical F_i
/// and for polyhedral graphs with polyhedral K_i. Throws NonRationalValue
/// when a boundary point is irrational and UnsupportedClass otherwise.
SetExpr admissible_set(const std::vector<MappingExpr>& mappings, const std::vector<SetExpr>& constraints,
                       const SetExpr& omega);

}  // namespace vex
