#pragma once

#include <string>
#include <vector>

#include <json.hpp>
#include "vex/certificates/certificate.hpp"
#include "vex/cones/normal.hpp"
#include "vex/prefs/properties.hpp"
#include "vex/stationarity/check.hpp"

namespace vex::io {

/// Field order is insertion order, so output is byte-stable.
using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Json to_json(const ExtRational& r);
Json to_json(const Vec& v);
Json to_json(const Interval1D& i);
Json to_json(const HPolyhedron& p);
Json to_json(const PQFunction& f);
Json to_json(const SetExpr& s);
Json to_json(const MappingExpr& m);
Json to_json(const LevelSetMapping& l);
Json to_json(const MemberParam& p);
Json to_json(const SetFamily& f);
Json to_json(const RefutationTemplate& t);
Json to_json(const FGCone& c);
Json to_json(const NormalCone& c);
Json to_json(const CoderivativeResult& c);
Json to_json(const CheckVerdict& v);
Json to_json(const MultiVerdict& v);
Json to_json(const DualCertificate& c);
Json to_json(const CertReport& r);
Json to_json(const QCReport& r);
Json to_json(const AubinReport& r);
Json to_json(const OPropertyReport& r);

/// Readers throw MalformedInput naming the offending field.
Rational rational_from(const Json& j);
ExtRational ext_from(const Json& j);
Vec vec_from(const Json& j);
Interval1D interval_from(const Json& j);
HPolyhedron poly_from(const Json& j);
PQFunction pq_from(const Json& j);
SetExpr set_from(const Json& j);
MappingExpr mapping_from(const Json& j);
LevelSetMapping levelset_from(const Json& j);
MemberParam param_from(const Json& j);
SetFamily family_from(const Json& j);
RefutationTemplate template_from(const Json& j);
DualCertificate cert_from(const Json& j);

/// "1/2,-3" as a vector.
Vec parse_vec_list(const std::string& text);

struct ProblemFile {
  enum class Kind { Triple, Collection, Multi };

  std::string version = "1";
  Kind kind = Kind::Triple;
  std::vector<std::size_t> space;
  std::optional<SetExpr> omega;
  std::vector<MappingExpr> mappings;
  std::vector<SetFamily> families;
  std::optional<LevelSetMapping> levelset;
  Vec x_bar;
  std::vector<Vec> y_bars;
  std::vector<RefutationTemplate> templates;

  TripleProblem triple() const;
  MultiProblem multi() const;
};

std::string problem_kind_str(ProblemFile::Kind k);

/// Validates cross references and the reference point (x̄ ∈ Ω, ȳ ∈ F(x̄)).
ProblemFile problem_from(const Json& j);
Json to_json(const ProblemFile& p);

/// Throws MalformedInput("malformed JSON: ...").
Json parse_text(const std::string& text);
/// Throws MalformedInput("cannot read ...") for missing files.
Json read_file(const std::string& path);
/// Two-space indent and a trailing newline.
std::string dump(const Json& j);

}  // namespace vex::io
