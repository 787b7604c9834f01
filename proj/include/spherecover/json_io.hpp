#pragma once

#include "spherecover/caps.hpp"
#include "spherecover/certify.hpp"
#include "spherecover/oracle.hpp"
#include "spherecover/solver.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace spherecover {

using nlohmann::json;

// Canonical serialization: object keys sorted (nlohmann's default ordering),
// floats printed with 17 significant digits (round-trip exact), no locale
// dependence.  Reports built from identical inputs serialize to identical
// bytes.
std::string canonical_dump(const json& j);

// FNV-1a 64 over the canonical dump, as fixed-width hex.
std::string digest(const json& j);

json to_json(const SpherePoint& p);
json to_json(const Cap& c);
json to_json(const ShortSet& s);
json to_json(const ArcSet& a);
json to_json(const SimplexConditions& c);
json to_json(const CoverCertificate& c);
json to_json(const ShortSetFamilyReport& r);
json to_json(const SimplexChart& chart);
json to_json(const Lemma1Instance& inst);
json to_json(const CommonPointResult& r);

SpherePoint sphere_point_from_json(const json& j);
Cap cap_from_json(const json& j);
ShortSet shortset_from_json(const json& j);
ArcSet arcset_from_json(const json& j);
SimplexChart chart_from_json(const json& j);
Lemma1Instance lemma1_instance_from_json(const json& j, int face_probes = 50,
                                         std::uint64_t probe_seed = 0);

// Family files: {"kind": "caps"|"shortsets"|"arcsets", ...payload...}.
struct Family {
  enum class Kind { kCaps, kShortSets, kArcSets } kind = Kind::kCaps;
  std::vector<Cap> caps;
  std::vector<ShortSet> shortsets;
  std::vector<ArcSet> arcsets;
};

json to_json(const Family& f);
Family family_from_json(const json& j);

}  // namespace spherecover
