#include "spherecover/json_io.hpp"
#include "spherecover/parallel.hpp"
#include "spherecover/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using spherecover::json;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << bytes;
}

json run_report(const std::string& command, const std::string& instance_digest,
                const std::string& mode, json result, json timings,
                std::uint64_t seed) {
  return json{{"command", command},
              {"instance_digest", instance_digest},
              {"mode", mode},
              {"result", std::move(result)},
              {"timings_ms", std::move(timings)},
              {"seed", seed},
              {"version", spherecover::kVersion}};
}

// -----------------------------------------------------------------------------

struct GenerateArgs {
  int dim = 1;
  std::string kind = "simplex-cover";
  int depth = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int run_generate(const GenerateArgs& args) {
  using namespace spherecover;
  Family family;
  if (args.kind == "arcs") {
    if (args.dim != 1) {
      throw std::invalid_argument("arc families exist only on the circle (--dim 1)");
    }
    family.kind = Family::Kind::kArcSets;
    family.arcsets = random_arc_family(args.seed);
  } else if (args.kind == "simplex-cover" || args.kind == "shattered-cover") {
    const auto points = random_simplex_with_origin(args.dim, args.seed);
    auto caps = facet_caps(points);
    if (args.kind == "simplex-cover") {
      family.kind = Family::Kind::kCaps;
      family.caps = std::move(caps);
    } else {
      family.kind = Family::Kind::kShortSets;
      for (const auto& c : caps) {
        family.shortsets.push_back(shatter_cap(c, args.depth, args.seed));
      }
    }
  } else {
    throw std::invalid_argument("unknown kind: " + args.kind);
  }
  write_output(args.out, canonical_dump(to_json(family)) + "\n");
  return 0;
}

// -----------------------------------------------------------------------------

struct CheckArgs {
  std::vector<std::string> files;
  std::string mode = "both";
  int mesh_depth = 4;
  bool exact = false;
  std::uint64_t seed = 0;
};

struct CheckOutcome {
  json report;
  bool positive = false;
  std::optional<std::string> error;
  int error_code = 0;
};

json gaps_json(const std::vector<spherecover::Arc>& gaps) {
  return spherecover::to_json(spherecover::ArcSet{gaps})["arcs"];
}

json sampling_json(const spherecover::SamplingCoverReport& rep) {
  json uncovered = json::array();
  const std::size_t limit = 16;
  for (std::size_t i = 0; i < rep.uncovered.size() && i < limit; ++i) {
    uncovered.push_back(spherecover::to_json(rep.uncovered[i]));
  }
  return json{{"all_covered", rep.all_covered},
              {"uncovered_count", rep.uncovered.size()},
              {"uncovered", std::move(uncovered)}};
}

CheckOutcome check_one_family(const json& input, const CheckArgs& args) {
  using namespace spherecover;
  CheckOutcome out;
  const Family family = family_from_json(input);

  // Arc unions get promoted so the certificate machinery applies: single-arc
  // sets become caps, multi-arc sets become short sets.
  const bool arcs_input = family.kind == Family::Kind::kArcSets;
  std::vector<Cap> caps = family.caps;
  std::vector<ShortSet> shortsets = family.shortsets;
  bool as_caps = family.kind == Family::Kind::kCaps;
  if (arcs_input) {
    as_caps = true;
    for (const auto& s : family.arcsets) {
      if (s.arcs.size() != 1) {
        as_caps = false;
        break;
      }
    }
    for (const auto& s : family.arcsets) {
      std::vector<Cap> parts;
      for (const auto& a : s.arcs) parts.push_back(cap_from_arc(a));
      if (as_caps) {
        caps.push_back(parts.front());
      } else {
        shortsets.push_back(ShortSet::make(std::move(parts)));
      }
    }
  }
  const int ambient = as_caps ? (caps.empty() ? 0 : caps.front().ambient_dim())
                              : (shortsets.empty() ? 0 : shortsets.front().ambient_dim());
  if (ambient < 2) throw std::invalid_argument("family is empty");
  if (args.exact && ambient != 2) {
    throw std::invalid_argument("--exact applies to circle families only");
  }

  const bool want_cert = args.mode == "certificate" || args.mode == "both";
  const bool want_oracle = args.mode == "oracle" || args.mode == "both";

  json result;
  std::optional<bool> cert_positive;
  std::optional<bool> oracle_positive;
  json timings;

  if (want_cert) {
    Timer t;
    if (as_caps) {
      const CoverCertificate cert = cover_certificate(caps);
      result["certificate"] = to_json(cert);
      cert_positive = cert.certified;
    } else {
      const ShortSetFamilyReport rep = shortset_family_check(shortsets);
      result["certificate"] = to_json(rep);
      cert_positive = rep.conditions_hold;
    }
    timings["certificate"] = t.ms();
  }
  if (want_oracle) {
    Timer t;
    const bool exact = arcs_input || (args.exact && ambient == 2);
    if (exact) {
      std::vector<ArcSet> arcsets = family.arcsets;
      if (!arcs_input) {
        if (as_caps) {
          for (const auto& c : caps) arcsets.push_back(ArcSet{{arc_from_cap(c)}});
        } else {
          for (const auto& s : shortsets) arcsets.push_back(arcset_from_shortset(s));
        }
      }
      const CircleCoverReport rep = circle_cover_check(arcsets);
      result["oracle"] = json{{"covered", rep.covered}, {"gaps", gaps_json(rep.gaps)}};
      oracle_positive = rep.covered;
    } else {
      const SampleSet samples =
          sample_sphere(ambient - 1, args.mesh_depth, args.seed);
      const SamplingCoverReport rep = as_caps
                                          ? sampling_cover_check(caps, samples)
                                          : sampling_cover_check(shortsets, samples);
      result["oracle"] = sampling_json(rep);
      oracle_positive = rep.all_covered;
    }
    timings["oracle"] = t.ms();
  }
  if (want_cert && want_oracle) {
    // Caps admit a full biconditional; for general short sets the certificate
    // conditions are necessary only, so agreement means the oracle never
    // contradicts them.
    result["agreement"] = as_caps ? (*cert_positive == *oracle_positive)
                                  : (!*oracle_positive || *cert_positive);
  }

  out.positive = want_cert ? *cert_positive : *oracle_positive;
  out.report = run_report("check", digest(input), args.mode, std::move(result),
                          std::move(timings), args.seed);
  return out;
}

int run_check(const CheckArgs& args) {
  using namespace spherecover;
  if (args.mode != "certificate" && args.mode != "oracle" && args.mode != "both") {
    throw std::invalid_argument("unknown mode: " + args.mode);
  }
  std::vector<json> inputs;
  inputs.reserve(args.files.size());
  for (const auto& f : args.files) inputs.push_back(read_json_file(f));

  std::vector<CheckOutcome> outcomes(inputs.size());
  parallel_for(inputs.size(), [&](std::size_t i) {
    Timer total;
    try {
      outcomes[i] = check_one_family(inputs[i], args);
      outcomes[i].report["timings_ms"]["total"] = total.ms();
    } catch (const std::invalid_argument& e) {
      outcomes[i].error = e.what();
      outcomes[i].error_code = 2;
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
      outcomes[i].error_code = 3;
    }
  });

  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].error) {
      std::cerr << "error: " << args.files[i] << ": " << *outcomes[i].error << "\n";
      return outcomes[i].error_code;
    }
  }
  bool all_positive = true;
  for (const auto& o : outcomes) {
    std::cout << canonical_dump(o.report) << "\n";
    all_positive = all_positive && o.positive;
  }
  return all_positive ? 0 : 1;
}

// -----------------------------------------------------------------------------

int run_witness(const std::string& file, std::uint64_t seed) {
  using namespace spherecover;
  const json input = read_json_file(file);
  const Family family = family_from_json(input);
  if (family.kind != Family::Kind::kCaps) {
    throw std::invalid_argument("witness expects a caps family");
  }
  const int d = family.caps.front().ambient_dim();
  if (static_cast<int>(family.caps.size()) > d) {
    throw std::invalid_argument("family size admits a cover; use check");
  }
  Timer total;
  const SpherePoint point = uncovered_witness(family.caps);
  for (const auto& c : family.caps) {
    if (cap_membership(c, point)) {
      throw std::logic_error("witness verification failed");
    }
  }
  json result{{"point", to_json(point)}};
  json report = run_report("witness", digest(input), "witness", std::move(result),
                           json{{"total", total.ms()}}, seed);
  std::cout << canonical_dump(report) << "\n";
  return 0;
}

// -----------------------------------------------------------------------------

int run_solve(const std::string& file, double eps, std::uint64_t seed) {
  using namespace spherecover;
  const json input = read_json_file(file);
  Timer total;
  const Lemma1Instance instance = lemma1_instance_from_json(input, 50, seed);
  CommonPointOptions options;
  options.eps = eps;
  const CommonPointResult result = common_point(instance, options);
  json payload = to_json(result);
  payload["face_condition_checked"] = instance.face_condition_checked();
  json report = run_report("solve-lemma1", digest(input), "solve",
                           std::move(payload), json{{"total", total.ms()}}, seed);
  std::cout << canonical_dump(report) << "\n";
  switch (result.status) {
    case SolveStatus::kOk:
      return 0;
    case SolveStatus::kNotACover:
      return 1;
    case SolveStatus::kLimit:
      return 3;
  }
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cover certificates, oracles and common-point search on spheres"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "write a seeded family file");
  gen->add_option("--dim", gen_args.dim, "sphere dimension n")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--kind", gen_args.kind, "simplex-cover|shattered-cover|arcs");
  gen->add_option("--depth", gen_args.depth, "shatter depth")
      ->check(CLI::Range(0, 6));
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("-o,--out", gen_args.out, "output file (stdout when absent)");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "certify / cross-check a family file");
  check->add_option("files", check_args.files, "family files")
      ->required()
      ->expected(-1);
  check->add_option("--mode", check_args.mode, "certificate|oracle|both");
  check->add_option("--mesh-depth", check_args.mesh_depth, "sampling mesh depth")
      ->check(CLI::Range(0, 8));
  check->add_flag("--exact", check_args.exact, "exact circle arithmetic (n=1)");
  check->add_option("--seed", check_args.seed, "report seed");

  std::string witness_file;
  std::uint64_t witness_seed = 0;
  auto* witness = app.add_subcommand("witness", "print an uncovered point");
  witness->add_option("file", witness_file, "caps family file")->required();
  witness->add_option("--seed", witness_seed, "report seed");

  std::string solve_file;
  double solve_eps = 1e-6;
  std::uint64_t solve_seed = 0;
  auto* solve = app.add_subcommand("solve-lemma1", "search for a common point");
  solve->add_option("file", solve_file, "instance file")->required();
  solve->add_option("--eps", solve_eps, "target potential");
  solve->add_option("--seed", solve_seed, "probe seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) return run_generate(gen_args);
    if (check->parsed()) return run_check(check_args);
    if (witness->parsed()) return run_witness(witness_file, witness_seed);
    if (solve->parsed()) return run_solve(solve_file, solve_eps, solve_seed);
  } catch (const spherecover::NotShortError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
