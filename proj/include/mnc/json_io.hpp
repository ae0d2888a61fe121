#pragma once

#include "mnc/cone.hpp"
#include "mnc/deformation.hpp"
#include "mnc/index_family.hpp"
#include "mnc/local_cohomology.hpp"
#include "mnc/microsupport.hpp"
#include "mnc/multinormal.hpp"
#include "mnc/stalk_geometry.hpp"
#include "mnc/vanishing_degrees.hpp"

#include <json.hpp>

namespace mnc {

using Json = nlohmann::json;

// Rationals travel as "p/q" strings (plain integers accepted on input).
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);
Json vec_to_json(const QVec& v);
QVec vec_from_json(const Json& j);

Json family_to_json(const IndexFamily& f);
IndexFamily family_from_json(const Json& j);

Json derived_to_json(const DerivedIndices& d);

Json cone_to_json(const Cone& c);
Cone cone_from_json(const Json& j);

Json poly_to_json(const Polyhedron& p);
Polyhedron poly_from_json(const Json& j);

Json polyset_to_json(const PolySet& s);
PolySet polyset_from_json(const Json& j);

Json scheme_to_json(const MonomialScheme& s);
MonomialScheme scheme_from_json(const Json& j);

Json covector_to_json(const CovectorPoint& p);
CovectorPoint covector_from_json(const Json& j, const StalkContext& cx);

Json split_to_json(const RealComplexSplit& s);
RealComplexSplit split_from_json(const Json& j);

Json conic_to_json(const ConicInput& c);
ConicInput conic_from_json(const Json& j);

Json membership_cert_to_json(const MembershipCertificate& c);
MembershipCertificate membership_cert_from_json(const Json& j);

Json separation_cert_to_json(const SeparationCertificate& c);
SeparationCertificate separation_cert_from_json(const Json& j);

Json table_to_json(const CohomologyTable& t);

Json degree_report_to_json(const DegreeReport& r);

Json validation_to_json(const ValidationReport& r);

}  // namespace mnc
