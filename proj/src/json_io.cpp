#include "spherecover/json_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <stdexcept>

namespace spherecover {

namespace {

void dump_rec(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_rec(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        dump_rec(v, out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
      out += buf;
      break;
    }
    default:
      // Integers, booleans, strings, null: nlohmann's own formatting is
      // already canonical.
      out += j.dump();
      break;
  }
}

json coords_json(const Vector& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

const json& expect_key(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string(what) + ": missing key '" + key + "'");
  }
  return j.at(key);
}

Vector vector_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument(std::string(what) + ": expected a coordinate array");
  }
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw std::invalid_argument(std::string(what) + ": coordinate is not a number");
    }
    v(static_cast<int>(i)) = j[i].get<double>();
  }
  return v;
}

}  // namespace

std::string canonical_dump(const json& j) {
  std::string out;
  dump_rec(j, out);
  return out;
}

std::string digest(const json& j) {
  const std::string bytes = canonical_dump(j);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return std::string(buf);
}

json to_json(const SpherePoint& p) { return coords_json(p.coords()); }

json to_json(const Cap& c) {
  json gens = json::array();
  for (const auto& g : c.generators()) gens.push_back(to_json(g));
  return json{{"generators", std::move(gens)}};
}

json to_json(const ShortSet& s) {
  json parts = json::array();
  for (const auto& p : s.parts()) parts.push_back(to_json(p));
  return json{{"parts", std::move(parts)}};
}

json to_json(const ArcSet& a) {
  json arcs = json::array();
  for (const auto& arc : a.arcs) {
    const std::int64_t end = (arc.start_nano + arc.length_nano) % kNanodegFull;
    arcs.push_back(json::array(
        {degrees_from_nanodeg(arc.start_nano), degrees_from_nanodeg(end)}));
  }
  return json{{"arcs", std::move(arcs)}};
}

json to_json(const SimplexConditions& c) {
  return json{{"nondegenerate", c.nondegenerate},
              {"origin_barycentric", c.origin_barycentric},
              {"origin_interior", c.origin_interior}};
}

namespace {

json conditions_json(const FamilyConditions& c) {
  json witnesses = json::array();
  for (const auto& w : c.witnesses) {
    if (w) {
      witnesses.push_back(to_json(*w));
    } else {
      witnesses.push_back(nullptr);
    }
  }
  return json{{"condition_i", c.condition_i},
              {"condition_ii", c.condition_ii},
              {"condition_iii", to_json(c.condition_iii)},
              {"witnesses", std::move(witnesses)},
              {"margins", c.margins},
              {"fragile", c.fragile}};
}

}  // namespace

json to_json(const CoverCertificate& c) {
  json j = conditions_json(c);
  j["certified"] = c.certified;
  return j;
}

json to_json(const ShortSetFamilyReport& r) {
  json j = conditions_json(r);
  j["conditions_hold"] = r.conditions_hold;
  return j;
}

json to_json(const SimplexChart& chart) {
  json vertices = json::array();
  for (const auto& v : chart.vertices()) vertices.push_back(to_json(v));
  json j{{"kind", chart.kind() == ChartKind::kShort ? "short" : "hemisphere"},
         {"vertices", std::move(vertices)}};
  if (chart.kind() == ChartKind::kHemisphere) {
    j["pole"] = to_json(chart.pole());
  } else {
    j["pole"] = nullptr;
  }
  return j;
}

json to_json(const Lemma1Instance& inst) {
  json sets = json::array();
  for (const auto& s : inst.sets()) sets.push_back(to_json(s));
  return json{{"chart", to_json(inst.chart())}, {"sets", std::move(sets)}};
}

json to_json(const CommonPointResult& r) {
  const char* status = "limit";
  if (r.status == SolveStatus::kOk) status = "ok";
  if (r.status == SolveStatus::kNotACover) status = "not_a_cover";
  return json{{"point", to_json(r.point)},
              {"max_dist", r.max_dist},
              {"depth", r.depth},
              {"status", status}};
}

SpherePoint sphere_point_from_json(const json& j) {
  return SpherePoint(vector_from_json(j, "sphere point"));
}

Cap cap_from_json(const json& j) {
  const json& gens = expect_key(j, "generators", "cap");
  if (!gens.is_array() || gens.empty()) {
    throw std::invalid_argument("cap: 'generators' must be a nonempty array");
  }
  std::vector<SpherePoint> points;
  points.reserve(gens.size());
  for (const auto& g : gens) points.push_back(sphere_point_from_json(g));
  return Cap::make(std::move(points));
}

ShortSet shortset_from_json(const json& j) {
  const json& parts = expect_key(j, "parts", "short set");
  if (!parts.is_array() || parts.empty()) {
    throw std::invalid_argument("short set: 'parts' must be a nonempty array");
  }
  std::vector<Cap> caps;
  caps.reserve(parts.size());
  for (const auto& p : parts) caps.push_back(cap_from_json(p));
  return ShortSet::make(std::move(caps));
}

ArcSet arcset_from_json(const json& j) {
  const json& arcs = expect_key(j, "arcs", "arc set");
  if (!arcs.is_array() || arcs.empty()) {
    throw std::invalid_argument("arc set: 'arcs' must be a nonempty array");
  }
  ArcSet out;
  out.arcs.reserve(arcs.size());
  for (const auto& a : arcs) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw std::invalid_argument("arc set: each arc must be [start_deg, end_deg]");
    }
    out.arcs.push_back(make_arc_degrees(a[0].get<double>(), a[1].get<double>()));
  }
  return out;
}

SimplexChart chart_from_json(const json& j) {
  const std::string kind = expect_key(j, "kind", "chart").get<std::string>();
  const json& vertices = expect_key(j, "vertices", "chart");
  if (!vertices.is_array() || vertices.empty()) {
    throw std::invalid_argument("chart: 'vertices' must be a nonempty array");
  }
  std::vector<SpherePoint> points;
  points.reserve(vertices.size());
  for (const auto& v : vertices) points.push_back(sphere_point_from_json(v));
  if (kind == "short") {
    return SimplexChart::make_short(std::move(points));
  }
  if (kind == "hemisphere") {
    const json& pole = expect_key(j, "pole", "chart");
    if (pole.is_null()) {
      throw std::invalid_argument("chart: hemisphere charts need a pole");
    }
    return SimplexChart::make_hemisphere(std::move(points),
                                         sphere_point_from_json(pole));
  }
  throw std::invalid_argument("chart: unknown kind '" + kind + "'");
}

Lemma1Instance lemma1_instance_from_json(const json& j, int face_probes,
                                         std::uint64_t probe_seed) {
  SimplexChart chart = chart_from_json(expect_key(j, "chart", "instance"));
  const json& sets = expect_key(j, "sets", "instance");
  if (!sets.is_array() || sets.empty()) {
    throw std::invalid_argument("instance: 'sets' must be a nonempty array");
  }
  std::vector<ShortSet> shortsets;
  shortsets.reserve(sets.size());
  for (const auto& s : sets) shortsets.push_back(shortset_from_json(s));
  return Lemma1Instance::make(std::move(chart), std::move(shortsets), face_probes,
                              probe_seed);
}

json to_json(const Family& f) {
  json members = json::array();
  const char* kind = "caps";
  switch (f.kind) {
    case Family::Kind::kCaps:
      for (const auto& c : f.caps) members.push_back(to_json(c));
      break;
    case Family::Kind::kShortSets:
      kind = "shortsets";
      for (const auto& s : f.shortsets) members.push_back(to_json(s));
      break;
    case Family::Kind::kArcSets:
      kind = "arcsets";
      for (const auto& a : f.arcsets) members.push_back(to_json(a));
      break;
  }
  return json{{"kind", kind}, {"members", std::move(members)}};
}

Family family_from_json(const json& j) {
  const std::string kind = expect_key(j, "kind", "family").get<std::string>();
  const json& members = expect_key(j, "members", "family");
  if (!members.is_array() || members.empty()) {
    throw std::invalid_argument("family: 'members' must be a nonempty array");
  }
  Family f;
  if (kind == "caps") {
    f.kind = Family::Kind::kCaps;
    for (const auto& m : members) f.caps.push_back(cap_from_json(m));
  } else if (kind == "shortsets") {
    f.kind = Family::Kind::kShortSets;
    for (const auto& m : members) f.shortsets.push_back(shortset_from_json(m));
  } else if (kind == "arcsets") {
    f.kind = Family::Kind::kArcSets;
    for (const auto& m : members) f.arcsets.push_back(arcset_from_json(m));
  } else {
    throw std::invalid_argument("family: unknown kind '" + kind + "'");
  }
  return f;
}

}  // namespace spherecover
