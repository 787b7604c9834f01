#include "spherecover/certify.hpp"

#include "spherecover/hull.hpp"
#include "spherecover/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <numeric>

namespace spherecover {

namespace {

constexpr double kFragileFactor = 10.0;
constexpr std::uint64_t kSelectionGuard = 1000000;
constexpr int kPerturbRetries = 16;

std::vector<Vector> witness_coords(const std::vector<std::optional<SpherePoint>>& ws) {
  std::vector<Vector> vs;
  vs.reserve(ws.size());
  for (const auto& w : ws) vs.push_back(w->coords());
  return vs;
}

SimplexConditions simplex_conditions(
    const std::vector<std::optional<SpherePoint>>& witnesses) {
  SimplexConditions cond;
  if (!std::all_of(witnesses.begin(), witnesses.end(),
                   [](const auto& w) { return w.has_value(); })) {
    return cond;
  }
  const auto vs = witness_coords(witnesses);
  cond.nondegenerate = std::abs(normalized_simplex_det(vs)) > tol::kDegeneracy;
  if (auto lambda = try_origin_barycentric(vs)) {
    cond.origin_barycentric = *lambda;
    cond.origin_interior = origin_interior(*lambda);
  }
  return cond;
}

void fill_margins_and_fragile(
    FamilyConditions& out,
    const std::function<double(int cap_index, const SpherePoint&)>& margin_of) {
  const int k = static_cast<int>(out.witnesses.size());
  out.margins.assign(k, 0.0);
  double min_margin = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int j = 0; j < k; ++j) {
    if (!out.witnesses[j]) continue;
    double mj = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      if (i == j) continue;
      mj = std::min(mj, margin_of(i, *out.witnesses[j]));
    }
    out.margins[j] = mj;
    min_margin = std::min(min_margin, mj);
    any = true;
  }
  out.fragile = any && min_margin < kFragileFactor * tol::kFeas;
}

// FNV-1a over the coordinate bytes; seeds the perturbation stream so retries
// are reproducible per instance.
std::uint64_t hash_coords(const std::vector<Vector>& vs) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& v : vs) {
    for (int i = 0; i < v.size(); ++i) {
      double x = v(i);
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &x, sizeof(double));
      for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
      }
    }
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::vector<Cap> facet_caps(const std::vector<SpherePoint>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("facet_caps: empty vertex list");
  const int d = vertices.front().ambient_dim();
  if (static_cast<int>(vertices.size()) != d + 1) {
    throw std::invalid_argument("facet_caps: need n+2 vertices on the n-sphere");
  }
  std::vector<Vector> vs;
  vs.reserve(vertices.size());
  for (const auto& v : vertices) vs.push_back(v.coords());
  auto lambda = try_origin_barycentric(vs);
  if (!lambda) {
    throw std::invalid_argument("facet_caps: vertices are affinely dependent");
  }
  if (!origin_interior(*lambda)) {
    throw std::invalid_argument("facet_caps: origin is not interior to the simplex");
  }
  std::vector<Cap> caps;
  caps.reserve(vertices.size());
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    std::vector<SpherePoint> gens;
    gens.reserve(vertices.size() - 1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (i != j) gens.push_back(vertices[i]);
    }
    // Interior origin keeps each facet hyperplane away from 0, so the facet
    // vertices share an open hemisphere and the cap constructor succeeds.
    caps.push_back(Cap::make(std::move(gens)));
  }
  return caps;
}

CoverCertificate cover_certificate(const std::vector<Cap>& caps) {
  if (caps.empty()) throw std::invalid_argument("cover_certificate: empty family");
  const int d = caps.front().ambient_dim();
  for (const auto& c : caps) {
    if (c.ambient_dim() != d) {
      throw std::invalid_argument("cover_certificate: mixed dimensions");
    }
  }
  const int k = static_cast<int>(caps.size());
  if (k != d + 1) {
    throw std::invalid_argument("cover_certificate: need exactly n+2 caps on the n-sphere");
  }

  CoverCertificate cert;
  cert.common_point = intersection_witness(caps);
  cert.condition_i = !cert.common_point.has_value();

  cert.witnesses.assign(k, std::nullopt);
  parallel_for(static_cast<std::size_t>(k), [&](std::size_t j) {
    std::vector<Cap> sub;
    sub.reserve(k - 1);
    for (int i = 0; i < k; ++i) {
      if (i != static_cast<int>(j)) sub.push_back(caps[i]);
    }
    cert.witnesses[j] = intersection_witness(sub);
  });
  cert.condition_ii = std::all_of(cert.witnesses.begin(), cert.witnesses.end(),
                                  [](const auto& w) { return w.has_value(); });

  cert.condition_iii = simplex_conditions(cert.witnesses);
  fill_margins_and_fragile(cert, [&](int i, const SpherePoint& w) {
    return cap_interior_margin(caps[i], w);
  });

  cert.certified = cert.condition_i && cert.condition_ii;
  if (cert.certified &&
      !(cert.condition_iii.nondegenerate && cert.condition_iii.origin_interior)) {
    // Certified families always span a nondegenerate simplex around the
    // origin; reaching this line means an engine defect, not a bad input.
    throw std::logic_error("cover_certificate: certified family with degenerate witnesses");
  }
  return cert;
}

SpherePoint uncovered_witness(const std::vector<Cap>& caps) {
  if (caps.empty()) throw std::invalid_argument("uncovered_witness: empty family");
  const int d = caps.front().ambient_dim();
  const int k = static_cast<int>(caps.size());
  for (const auto& c : caps) {
    if (c.ambient_dim() != d) {
      throw std::invalid_argument("uncovered_witness: mixed dimensions");
    }
  }
  if (k > d) {
    throw std::invalid_argument(
        "uncovered_witness: family size admits a cover; at most n+1 caps supported");
  }

  std::vector<Vector> us;
  us.reserve(k);
  for (const auto& c : caps) us.push_back(c.witness().coords());

  auto verify = [&](const Vector& x) -> std::optional<SpherePoint> {
    SpherePoint p = SpherePoint::normalized(x);
    for (int i = 0; i < k; ++i) {
      if (us[i].dot(p.coords()) > tol::kPerturb) return std::nullopt;
      if (cap_membership(caps[i], p)) return std::nullopt;
    }
    return p;
  };

  if (k <= d - 1) {
    // Strictly fewer witnesses than dimensions: any unit vector orthogonal
    // to all of them is outside every cap (a cap point never has
    // nonpositive product with its witness).
    Matrix U(d, k);
    for (int j = 0; j < k; ++j) U.col(j) = us[j];
    Eigen::ColPivHouseholderQR<Matrix> qr(U);
    qr.setThreshold(1e-12);
    Matrix Q = qr.householderQ();
    for (int c = d - 1; c >= 0; --c) {
      Vector cand = Q.col(c);
      bool orthogonal = true;
      for (const auto& u : us) {
        if (std::abs(u.dot(cand)) > 1e-9) {
          orthogonal = false;
          break;
        }
      }
      if (!orthogonal) continue;
      if (auto p = verify(cand)) return *p;
    }
    throw std::runtime_error("uncovered_witness: failed to verify an orthogonal direction");
  }

  // k == n+1: aim for the point with <u_i, x> = -1 for every witness;
  // perturb (seeded, bounded retries) when the witness matrix is singular or
  // verification fails.
  std::uint64_t stream = hash_coords(us);
  for (int attempt = 0; attempt <= kPerturbRetries; ++attempt) {
    Matrix M(k, d);
    for (int i = 0; i < k; ++i) M.row(i) = us[i].transpose();
    if (attempt > 0) {
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < d; ++j) {
          const std::uint64_t r = splitmix64(stream++);
          const double unit = (static_cast<double>(r >> 11)) * 0x1.0p-53;
          M(i, j) += (2.0 * unit - 1.0) * tol::kPerturb;
        }
      }
    }
    Eigen::FullPivLU<Matrix> lu(M);
    lu.setThreshold(1e-12);
    if (lu.rank() < k) continue;
    Vector x = lu.solve(Vector::Constant(k, -1.0));
    if (x.norm() <= 1e-12) continue;
    if (auto p = verify(x)) return *p;
  }
  throw std::runtime_error("uncovered_witness: retry limit exceeded");
}

ShortSetFamilyReport shortset_family_check(const std::vector<ShortSet>& sets) {
  if (sets.empty()) throw std::invalid_argument("shortset_family_check: empty family");
  const int d = sets.front().ambient_dim();
  for (const auto& s : sets) {
    if (s.ambient_dim() != d) {
      throw std::invalid_argument("shortset_family_check: mixed dimensions");
    }
  }
  const int k = static_cast<int>(sets.size());
  if (k != d + 1) {
    throw std::invalid_argument("shortset_family_check: need exactly n+2 sets");
  }

  std::uint64_t selections = 1;
  for (const auto& s : sets) {
    selections *= s.parts().size();
    if (selections > kSelectionGuard) {
      throw std::invalid_argument("shortset_family_check: part selection count exceeds guard");
    }
  }

  // Intersections of unions expand into one cap selection per set.  A joint
  // LP runs only on selections whose caps pairwise intersect (a cheap exact
  // prefilter that prunes almost everything on shattered families).
  std::vector<std::vector<std::vector<std::vector<bool>>>> compat(
      k, std::vector<std::vector<std::vector<bool>>>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const auto& pi = sets[i].parts();
      const auto& pj = sets[j].parts();
      compat[i][j].assign(pi.size(), std::vector<bool>(pj.size(), false));
      for (std::size_t a = 0; a < pi.size(); ++a) {
        for (std::size_t b = 0; b < pj.size(); ++b) {
          compat[i][j][a][b] =
              intersection_witness({pi[a], pj[b]}).has_value();
        }
      }
    }
  }
  auto pair_ok = [&](int i, std::size_t a, int j, std::size_t b) {
    if (i < j) return static_cast<bool>(compat[i][j][a][b]);
    return static_cast<bool>(compat[j][i][b][a]);
  };

  // Iterates selections of one part per set in `members`; returns the first
  // joint witness, or nullopt.
  auto first_witness = [&](const std::vector<int>& members)
      -> std::optional<SpherePoint> {
    std::vector<std::size_t> pick(members.size(), 0);
    while (true) {
      bool compatible = true;
      for (std::size_t a = 0; compatible && a + 1 < members.size(); ++a) {
        for (std::size_t b = a + 1; compatible && b < members.size(); ++b) {
          compatible = pair_ok(members[a], pick[a], members[b], pick[b]);
        }
      }
      if (compatible) {
        std::vector<Cap> caps;
        caps.reserve(members.size());
        for (std::size_t a = 0; a < members.size(); ++a) {
          caps.push_back(sets[members[a]].parts()[pick[a]]);
        }
        if (auto w = intersection_witness(caps)) return w;
      }
      // Odometer step.
      int pos = static_cast<int>(pick.size()) - 1;
      while (pos >= 0) {
        if (++pick[pos] < sets[members[pos]].parts().size()) break;
        pick[pos] = 0;
        --pos;
      }
      if (pos < 0) return std::nullopt;
    }
  };

  ShortSetFamilyReport report;
  std::vector<int> all(k);
  std::iota(all.begin(), all.end(), 0);
  report.common_point = first_witness(all);
  report.condition_i = !report.common_point.has_value();

  report.witnesses.assign(k, std::nullopt);
  parallel_for(static_cast<std::size_t>(k), [&](std::size_t j) {
    std::vector<int> members;
    members.reserve(k - 1);
    for (int i = 0; i < k; ++i) {
      if (i != static_cast<int>(j)) members.push_back(i);
    }
    report.witnesses[j] = first_witness(members);
  });
  report.condition_ii = std::all_of(report.witnesses.begin(), report.witnesses.end(),
                                    [](const auto& w) { return w.has_value(); });

  report.condition_iii = simplex_conditions(report.witnesses);
  fill_margins_and_fragile(report, [&](int i, const SpherePoint& w) {
    // Grade against the best part of set i that actually holds the witness.
    double best = 0.0;
    bool held = false;
    for (const auto& part : sets[i].parts()) {
      if (cap_membership(part, w)) {
        held = true;
        best = std::max(best, cap_interior_margin(part, w));
      }
    }
    return held ? best : 0.0;
  });

  // All three conditions are necessary for a cover by short sets (unlike
  // caps, they are not jointly sufficient).
  report.conditions_hold = report.condition_i && report.condition_ii &&
                           report.condition_iii.nondegenerate &&
                           report.condition_iii.origin_interior;
  return report;
}

}  // namespace spherecover
