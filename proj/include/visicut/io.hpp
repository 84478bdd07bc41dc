#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "visicut/certify.hpp"
#include "visicut/cuts.hpp"
#include "visicut/polarlab.hpp"
#include "visicut/tighten.hpp"
#include "visicut/visibility.hpp"

namespace visicut::io {

using Json = nlohmann::ordered_json;

/// Serializes with every real written to 17 significant digits.
std::string dump(const Json& j, int indent = 2);

/// Flattens a JSON document into "path,value" lines (arrays indexed by position).
std::string to_csv(const Json& j);

/// Parses text, turning syntax errors into InputError("line L, column C: ...").
Json parse(std::string_view text);

/// [{"c": coefficient, "e": [exponents]}]
Json to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Json& j, std::size_t n);

Json to_json(const UniPoly& p);
UniPoly unipoly_from_json(const Json& j);

/// {"lo": [...], "hi": [...]}
Json to_json(const IntervalVector& box);
IntervalVector box_from_json(const Json& j);

Json to_json(const ConvexDomain& domain);

/// Instance file: {n, xlp, box: {lo, hi}, linear: [{a, sense, rhs}], g: {monomials}}.
/// Errors name the line of the offending key.
ProblemInstance parse_instance(std::string_view text);
Json to_json(const ProblemInstance& inst);

/// Point-set file: {xlp, points, subset?}; the optional subset is a
/// hand-supplied candidate generator.
struct PointSetFile {
  FinitePointSet set;
  std::optional<FinitePointSet> subset;
};
PointSetFile parse_point_set(std::string_view text);
Json to_json(const FinitePointSet& ps);

/// {"alpha": [...], "rhs": r, "frame": "xbar-centered", "xbar": [...]}
Json to_json(const Cut& cut);
Cut cut_from_json(const Json& j);

/// {"parity": "even"|"odd", "d": d, "s1": [...], "s2": [...]}
Json to_json(const SosCertificate& cert);
SosCertificate certificate_from_json(const Json& j);

Json to_json(const RegionDescription& region);
Json to_json(const Enclosure& enc);

}  // namespace visicut::io
