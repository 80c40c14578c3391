#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vex/cones/normal.hpp"
#include "vex/stationarity/check.hpp"

namespace vex {

/// One (set, point, covector) entry. `role` is "family" for a collection
/// member (with `index` the family position), or "graph", "omega", "member"
/// for mapping problems, where `index` is the mapping position. An empty
/// covector in a multiplier-rule tuple means "decide existence by LP".
struct CertTuple {
  std::string role;
  std::size_t index = 0;
  std::optional<MemberParam> param;
  Vec point;
  Vec covector;
};

struct DualCertificate {
  enum class Kind { FuzzySeparation, MultiplierRule, Singular };

  Kind kind = Kind::FuzzySeparation;
  Rational eps;
  ConeFlavor flavor = ConeFlavor::Frechet;
  std::vector<CertTuple> tuples;
  /// MultiplierRule only.
  Rational M;
  std::vector<Vec> y_stars;
};

std::string cert_kind_str(DualCertificate::Kind k);
DualCertificate::Kind parse_cert_kind(const std::string& s);

struct CertReport {
  enum class Status { Accepted, Rejected, Inconclusive };
  Status status = Status::Rejected;
  /// Names of the failing clauses, in checking order.
  std::vector<std::string> failures;

  bool accepted() const { return status == Status::Accepted; }
  std::string first_failure() const { return failures.empty() ? "" : failures.front(); }
};

/// Fuzzy separation for a collection: x_i ∈ A_i ∩ B_ε(x̄), x_i* normal to A_i
/// at x_i, ‖Σ x_i*‖ < ε and Σ ‖x_i*‖ = 1 (dual ℓ1 norms).
CertReport verify_fuzzy_separation(const DualCertificate& cert, const std::vector<SetFamily>& families,
                                   const Vec& x_bar);

/// Multiplier rule for one or several mappings; a triple is the case n = 1.
CertReport verify_multiplier_rule(const DualCertificate& cert, const MultiProblem& p);

/// Singular alternative: horizontal graph normals almost cancelling a normal
/// to Ω, with Σ ‖x_i*‖ = 1.
CertReport verify_singular(const DualCertificate& cert, const MultiProblem& p);

MultiProblem as_multi(const TripleProblem& p);

struct CertSearchConfig {
  std::size_t base_points = 12;
  std::size_t members = 6;
  int m_max_exp = 10;
  int grid_depth = 12;
};

/// First verified certificate in deterministic order (base points by
/// distance to the reference point, then lexicographic).
std::optional<DualCertificate> search_certificates(const TripleProblem& p, const Rational& eps,
                                                   DualCertificate::Kind kind, ConeFlavor flavor,
                                                   const CertSearchConfig& cfg = {});

/// Singular certificates for several mappings.
std::optional<DualCertificate> search_singular(const MultiProblem& p, const Rational& eps, ConeFlavor flavor,
                                               const CertSearchConfig& cfg = {});

struct AdversarialResult {
  std::size_t tuples_tried = 0;
  std::optional<DualCertificate> found;
};

/// Tries up to `budget` base-point tuples over the given levels, looking for
/// any verifying singular certificate.
AdversarialResult adversarial_singular_search(const MultiProblem& p, const std::vector<Rational>& levels,
                                              ConeFlavor flavor, std::size_t budget);

struct AubinAudit {
  Vec point;
  ConeFlavor flavor = ConeFlavor::Frechet;
  Vec normal;
  Rational lhs, rhs;  // ‖x*‖₁ and τ‖y*‖₁
  bool ok = false;
};

struct AubinReport {
  std::optional<Rational> tau_upper;
  Rational tau_lower;
  Rational delta;
  std::vector<AubinAudit> audit;
  std::string note;

  bool audit_ok() const;
};

/// Modulus bounds on [x̄ - δ, x̄ + δ] and the normal-bound audit at 50 grid
/// points x̄ + δ·j/26, j = -24..25.
AubinReport aubin_estimate(const MappingExpr& F, const Vec& x_bar, const Vec& y_bar, const Rational& delta);

struct QCReport {
  enum class Status { HoldsWithEps, ViolatedBy, Inconclusive };
  enum class Sufficient { None, InteriorPoint, AubinProperty };

  ConeFlavor flavor = ConeFlavor::Frechet;
  Status status = Status::Inconclusive;
  Rational eps;
  Sufficient sufficient = Sufficient::None;
  std::optional<DualCertificate> violation;
  std::string reason;
};

std::string qc_status_str(QCReport::Status s);
std::string qc_sufficient_str(QCReport::Sufficient s);

/// Sufficient conditions first; otherwise a violating singular tuple at
/// every grid level gives ViolatedBy.
QCReport check_qc(const MultiProblem& p, ConeFlavor flavor, const std::vector<Rational>& eps_grid,
                  const Rational& aubin_delta = Rational(1, 2));

}  // namespace vex
