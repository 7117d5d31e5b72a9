#include "kronstab/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "kronstab/degeneracy.hpp"
#include "kronstab/error.hpp"
#include "kronstab/homology.hpp"
#include "kronstab/io.hpp"
#include "kronstab/random.hpp"

namespace kronstab {

std::string to_string(SampleFamily f) {
  switch (f) {
    case SampleFamily::random:
      return "random";
    case SampleFamily::boundary_orbit:
      return "boundary-orbit";
    case SampleFamily::destabilized:
      return "destabilized";
  }
  return "random";
}

SampleFamily sample_family_from_string(const std::string& s) {
  if (s == "random") return SampleFamily::random;
  if (s == "boundary-orbit") return SampleFamily::boundary_orbit;
  if (s == "destabilized") return SampleFamily::destabilized;
  throw PreconditionError("unknown sample family '" + s + "'");
}

KroneckerMap census_sample(const Dimensions& dims, SampleFamily family, std::uint64_t seed, long bound) {
  switch (family) {
    case SampleFamily::random:
      return random_map(dims, seed, bound);
    case SampleFamily::boundary_orbit: {
      Rng rng(splitmix64(seed));
      return act(random_group_element(rng, dims, bound, true), boundary_normal_form(dims.n, dims.m));
    }
    case SampleFamily::destabilized:
      return destabilized_block(dims, 1 + static_cast<int>(splitmix64(seed) % static_cast<std::uint64_t>((dims.m + 1) / 2)), seed, bound);
  }
  throw Error("internal: unknown sample family");
}

nlohmann::ordered_json CensusRecord::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = kCensusSchema;
  j["index"] = index;
  j["seed"] = seed;
  j["family"] = to_string(family);
  j["dims"] = {{"n", dims.n}, {"m", dims.m}, {"k", dims.k}};
  j["field"] = field_to_json(FieldSpec::rationals());
  j["prime"] = prime;
  j["injective"] = injective;
  j["git"] = git;
  j["max_nullity"] = max_nullity;
  j["sigma"] = sigma;
  j["tau"] = tau;
  j["dim_D"] = dim_D;
  j["dim_D_exact"] = dim_D_exact;
  j["tau_primes"] = tau_primes;
  j["mu"] = mu ? nlohmann::ordered_json(*mu) : nlohmann::ordered_json(nullptr);
  j["hoppe_all_zero"] = hoppe_all_zero ? nlohmann::ordered_json(*hoppe_all_zero) : nlohmann::ordered_json(nullptr);
  j["cross_checks"] = cross_checks;
  j["cross_checks_agree"] = cross_checks_agree;
  j["violations"] = violations;
  if (!error.empty()) j["error"] = error;
  j["timings_ms"] = timings_ms;
  return j;
}

namespace {

SampleFamily family_of(const CensusOptions& o, int index) {
  if (!o.mixed) return SampleFamily::random;
  const bool odd_with_room = o.m % 2 == 1 && o.n >= (o.m + 1) / 2 + 1;
  if (index % 5 == 0 && odd_with_room) return SampleFamily::boundary_orbit;
  if (index % 5 == 1) return SampleFamily::destabilized;
  return SampleFamily::random;
}

template <class Fn>
auto timed(std::map<std::string, double>& timings, const std::string& key, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  auto out = fn();
  timings[key] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

CensusRecord census_record(const CensusOptions& o, int index) {
  CensusRecord r;
  r.index = index;
  r.seed = o.seed + static_cast<std::uint64_t>(index);
  r.family = family_of(o, index);
  r.dims = Dimensions{o.n, o.m, 2};
  r.prime = o.prime;
  try {
    r.dims.validate();
    const KroneckerMap a = census_sample(r.dims, r.family, r.seed, o.bound);
    r.injective = a.is_injective();
    const auto verdict = timed(r.timings_ms, "git", [&] { return git_verdict(a); });
    r.git = to_string(verdict.status);
    r.max_nullity = verdict.max_nullity;

    DegeneracyOptions dopt;
    dopt.prime = o.prime;
    dopt.seed = r.seed;
    const auto filt = timed(r.timings_ms, "filtration", [&] { return filtration_indices(a, dopt); });
    r.sigma = filt.sigma;
    r.tau = filt.tau;
    r.dim_D = filt.dim_estimate;
    r.tau_primes = filt.primes;
    r.dim_D_exact = exact_degeneracy_dimension(a).dim;

    const bool semistable = verdict.status != Status::unstable;
    const bool stable = verdict.status == Status::stable;
    if (semistable && !filt.chain_holds) r.violations.push_back("chain");
    if (semistable && !filt.threshold_holds) r.violations.push_back("threshold");
    if (o.m % 2 == 1 && stable && 2 * (o.n - r.dim_D_exact) < o.m + 1) r.violations.push_back("codim");

    if (o.mu && o.m % 2 == 1) {
      const auto mu = timed(r.timings_ms, "mu", [&] { return mu_stability_verdict(a, dopt); });
      r.mu = to_string(mu.verdict);
      if (mu.hoppe) {
        r.hoppe_all_zero = mu.hoppe->all_zero;
        r.cross_checks = static_cast<int>(mu.hoppe->cross_checks.size());
        r.cross_checks_agree = mu.hoppe->cross_checks_agree;
        if (!r.cross_checks_agree) r.violations.push_back("duality");
      }
      if (stable != (mu.verdict == MuVerdict::mu_stable)) r.violations.push_back("equivalence");
    }
  } catch (const std::exception& e) {
    r.error = e.what();
    r.violations.push_back("error");
  }
  return r;
}

int census_threads(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(1, n);
  if (const char* cap = std::getenv("KRONSTAB_THREADS")) {
    const int c = std::atoi(cap);
    if (c > 0) n = std::min(n, c);
  }
  return n;
}

CensusSummary run_census(const CensusOptions& o, const std::function<void(const CensusRecord&)>& sink) {
  CensusSummary out;
  if (o.count <= 0) return out;
  out.records.resize(static_cast<std::size_t>(o.count));
  std::vector<char> done(static_cast<std::size_t>(o.count), 0);
  std::atomic<int> next{0};
  std::mutex mu;
  int written = 0;

  auto worker = [&] {
    for (int i = next++; i < o.count; i = next++) {
      CensusRecord rec = census_record(o, i);
      std::lock_guard<std::mutex> lock(mu);
      out.records[static_cast<std::size_t>(i)] = std::move(rec);
      done[static_cast<std::size_t>(i)] = 1;
      while (written < o.count && done[static_cast<std::size_t>(written)]) {
        if (sink) sink(out.records[static_cast<std::size_t>(written)]);
        ++written;
      }
    }
  };
  const int threads = std::min(census_threads(o.threads), o.count);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& r : out.records) {
    ++out.status_counts[r.error.empty() ? r.git : "error"];
    ++out.sigma_tau_counts[std::to_string(r.sigma) + "," + std::to_string(r.tau)];
    ++out.family_counts[to_string(r.family)];
    if (!r.violations.empty()) ++out.violations;
  }
  return out;
}

}  // namespace kronstab
