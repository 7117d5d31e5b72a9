// kronstab: command-line front end.
//
// Exit codes: 0 stable (or success), 10 strictly semistable, 11 unstable,
// 1 census invariant violations, 2 input error, 3 internal error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kronstab/census.hpp"
#include "kronstab/error.hpp"
#include "kronstab/io.hpp"
#include "reports.hpp"

using namespace kronstab;
using kronstab::cli::Json;

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

class InputError : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::string input;
  std::string fixture_id;
  std::optional<std::uint32_t> prime;
  std::uint64_t seed = 1;
  std::optional<int> trials;
  bool json = false;
  bool probabilistic = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--input", c.input, "map JSON file, '-' for stdin");
  sub->add_option("--fixture", c.fixture_id, "fixture id (see 'fixture --list')");
  sub->add_option("--prime", c.prime, "prime for probabilistic and point-count methods");
  sub->add_option("--seed", c.seed, "seed for every random choice");
  sub->add_option("--trials", c.trials, "random trials");
  sub->add_flag("--json", c.json, "machine-readable output");
}

KroneckerMap load(const Common& c) {
  if (c.input.empty() == c.fixture_id.empty()) throw InputError("give exactly one of --input and --fixture");
  if (!c.fixture_id.empty()) return fixture(c.fixture_id);
  std::string text;
  if (c.input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(c.input);
    if (!in) throw InputError("cannot read '" + c.input + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return from_json(text);
}

DegeneracyOptions degeneracy_options(const Common& c) {
  DegeneracyOptions o;
  o.prime = c.prime.value_or(kDegeneracyPrime);
  o.seed = c.seed;
  if (c.trials) o.trials = *c.trials;
  return o;
}

StabilityVerdict verdict_for(const KroneckerMap& a, const Common& c) {
  if (c.probabilistic || a.dims().k != 2)
    return git_verdict_probabilistic(a, c.prime.value_or(101), c.trials.value_or(3), c.seed);
  return git_verdict(a);
}

int status_exit(Status s) {
  switch (s) {
    case Status::stable:
      return 0;
    case Status::strictly_semistable:
      return 10;
    case Status::unstable:
      return 11;
  }
  return kExitInternal;
}

void emit(const Json& j, const Common& c) {
  if (c.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << cli::render_text(j);
}

Json map_header(const KroneckerMap& a) {
  const auto& d = a.dims();
  return {{"n", d.n}, {"m", d.m}, {"k", d.k}, {"field", field_to_json(a.field())}};
}

Json check(const std::string& name, std::optional<bool> holds, const std::string& detail = "") {
  Json j;
  j["check"] = name;
  j["outcome"] = !holds ? "not applicable" : (*holds ? "holds" : "fails");
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

int cmd_classify(const Common& c) {
  const KroneckerMap a = load(c);
  const Dimensions& d = a.dims();
  const auto dopt = degeneracy_options(c);
  Json out;
  out["map"] = map_header(a);

  const StabilityVerdict v = verdict_for(a, c);
  out["git"] = cli::verdict_json(v);
  const bool stable = v.status == Status::stable;
  const bool semistable = v.status != Status::unstable;

  auto section = [&](const std::string& key, auto&& fn) {
    try {
      out[key] = fn();
      return true;
    } catch (const std::exception& e) {
      out[key] = {{"error", e.what()}};
      return false;
    }
  };

  std::optional<FiltrationReport> filt;
  section("filtration", [&] {
    filt = filtration_indices(a, dopt);
    return cli::filtration_json(*filt);
  });
  std::optional<int> exact_dim;
  section("degeneracy", [&] {
    Json j = cli::degeneracy_json(degeneracy_dimension(a, dopt));
    if (d.k == 2) {
      exact_dim = exact_degeneracy_dimension(a).dim;
      j["exact_dim"] = *exact_dim;
      j["codim"] = d.n - *exact_dim;
    }
    return j;
  });
  std::optional<MuStabilityReport> mu;
  section("mu", [&] {
    mu = mu_stability_verdict(a, dopt);
    return cli::mu_json(*mu);
  });
  std::optional<ExtDimensions> ext;
  section("ext", [&] {
    ext = ext_dimensions(a);
    return cli::ext_json(*ext, d);
  });
  std::optional<int> stab;
  section("stabilizer", [&] {
    stab = stabilizer_dimension(a);
    return Json{{"dim", *stab}};
  });

  Json checks = Json::array();
  auto when = [](bool applicable, bool value) { return applicable ? std::optional<bool>(value) : std::nullopt; };
  checks.push_back(check("sigma <= tau <= sigma+1", filt && semistable ? std::optional<bool>(filt->chain_holds) : std::nullopt));
  checks.push_back(check("sigma >= 2 iff tau >= 2", filt && semistable ? std::optional<bool>(filt->threshold_holds) : std::nullopt));
  checks.push_back(check("n - dim D >= (m+1)/2",
                         when(exact_dim.has_value() && d.m % 2 == 1 && stable, exact_dim && 2 * (d.n - *exact_dim) >= d.m + 1)));
  checks.push_back(check("GIT stable iff mu-stable",
                         when(mu.has_value() && d.k == 2 && d.m % 2 == 1, mu && stable == (mu->verdict == MuVerdict::mu_stable))));
  const bool simple = ext && ext->hom == 1;
  checks.push_back(check("dim Ext^1 = (m+2)(2n-m) - 3",
                         when(ext.has_value() && stable && simple, ext && ext->ext1 == (d.m + 2) * (2 * d.n - d.m) - 3)));
  checks.push_back(check("Ext^2 = 0", when(ext.has_value(), ext && ext->ext2 == 0)));
  checks.push_back(check("stabilizer dimension 0", when(stab.has_value() && stable, stab && *stab == 0)));
  out["consistency"] = checks;

  std::string summary = std::string(stable ? "stable" : (semistable ? "strictly semistable" : "unstable")) + " map";
  if (v.probabilistic) summary += " (probabilistic at p = " + std::to_string(v.prime) + ")";
  if (mu) {
    summary += mu->verdict == MuVerdict::mu_stable ? ", mu-stable sheaf" : ", non-mu-stable sheaf";
    if (mu->verdict == MuVerdict::torsion) summary += " (torsion)";
  }
  if (d.k == 3 && stable && mu && mu->verdict != MuVerdict::mu_stable)
    summary = "stable map, non-μ-stable sheaf: the equivalence fails for k=3";
  out["summary"] = summary;
  emit(out, c);
  return status_exit(v.status);
}

int cmd_census(const CensusOptions& o, const std::string& path, bool json) {
  std::ofstream file;
  if (!path.empty()) {
    file.open(path, std::ios::app);
    if (!file) throw InputError("cannot write '" + path + "'");
  }
  const auto summary = run_census(o, [&](const CensusRecord& r) {
    if (file.is_open()) file << r.to_json().dump() << "\n" << std::flush;
  });
  if (file.is_open() && !file) throw InputError("write to '" + path + "' failed");
  const Json j = cli::census_summary_json(summary);
  if (json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << cli::render_text(j);
  return summary.violations > 0 ? kExitViolations : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GIT and slope stability of Kronecker maps"};
  app.require_subcommand(1);
  Common c;

  auto* stability = app.add_subcommand("stability", "GIT verdict with witness");
  add_common(stability, c);
  stability->add_flag("--probabilistic", c.probabilistic, "slope check over F_p (any k)");
  auto* degeneracy = app.add_subcommand("degeneracy", "dimension of the degeneracy locus");
  add_common(degeneracy, c);
  auto* filtration = app.add_subcommand("filtration", "filtration indices sigma and tau");
  add_common(filtration, c);
  auto* hoppe = app.add_subcommand("hoppe", "Hoppe cohomology profile");
  add_common(hoppe, c);
  auto* mustab = app.add_subcommand("mustab", "slope stability of the cokernel sheaf");
  add_common(mustab, c);
  auto* ext = app.add_subcommand("ext", "Hom, Ext^1, Ext^2 and the stabilizer");
  add_common(ext, c);
  auto* classify = app.add_subcommand("classify", "every report plus consistency checks");
  add_common(classify, c);
  classify->add_flag("--probabilistic", c.probabilistic, "probabilistic GIT verdict");

  CensusOptions census_opt;
  std::string census_out;
  bool census_pure = false;
  bool census_no_mu = false;
  auto* census = app.add_subcommand("census", "seeded sample census with JSONL records");
  census->add_option("--n", census_opt.n, "projective dimension");
  census->add_option("--m", census_opt.m, "rank");
  census->add_option("--count", census_opt.count, "number of samples");
  census->add_option("--seed", census_opt.seed, "base seed; sample i uses seed + i");
  census->add_option("--prime", census_opt.prime, "prime for degeneracy estimates");
  census->add_option("--bound", census_opt.bound, "coefficient bound");
  census->add_option("--out", census_out, "JSONL file to append to");
  census->add_option("--threads", census_opt.threads, "worker threads (KRONSTAB_THREADS caps this)");
  census->add_flag("--random-only", census_pure, "draw every sample from random_map");
  census->add_flag("--no-mu", census_no_mu, "skip the mu-stability verdict");
  census->add_flag("--json", c.json, "machine-readable summary");

  bool list = false;
  std::string emit_id;
  auto* fixture_cmd = app.add_subcommand("fixture", "fixture registry");
  fixture_cmd->add_flag("--list", list, "list fixture families");
  fixture_cmd->add_option("--emit", emit_id, "print the map JSON of a fixture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (stability->parsed()) {
      const auto a = load(c);
      const auto v = verdict_for(a, c);
      Json j = cli::verdict_json(v);
      j["map"] = map_header(a);
      emit(j, c);
      return status_exit(v.status);
    }
    if (degeneracy->parsed()) {
      const auto a = load(c);
      Json j = cli::degeneracy_json(degeneracy_dimension(a, degeneracy_options(c)));
      if (a.dims().k == 2) j["exact_dim"] = exact_degeneracy_dimension(a).dim;
      emit(j, c);
      return 0;
    }
    if (filtration->parsed()) {
      emit(cli::filtration_json(filtration_indices(load(c), degeneracy_options(c))), c);
      return 0;
    }
    if (hoppe->parsed()) {
      emit(cli::hoppe_json(hoppe_criterion(load(c))), c);
      return 0;
    }
    if (mustab->parsed()) {
      emit(cli::mu_json(mu_stability_verdict(load(c), degeneracy_options(c))), c);
      return 0;
    }
    if (ext->parsed()) {
      const auto a = load(c);
      Json j = cli::ext_json(ext_dimensions(a), a.dims());
      j["stabilizer_dim"] = stabilizer_dimension(a);
      emit(j, c);
      return 0;
    }
    if (classify->parsed()) return cmd_classify(c);
    if (census->parsed()) {
      census_opt.mixed = !census_pure;
      census_opt.mu = !census_no_mu;
      return cmd_census(census_opt, census_out, c.json);
    }
    if (fixture_cmd->parsed()) {
      if (list) {
        for (const auto& f : fixture_families()) std::cout << f << "\n";
        return 0;
      }
      if (emit_id.empty()) throw InputError("give --list or --emit ID");
      std::cout << to_json(fixture(emit_id)) << "\n";
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BadReduction& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
