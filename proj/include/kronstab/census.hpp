#pragma once

// Census runs: many seeded samples of one shape, each classified by the GIT
// verdict, the filtration indices, the degeneracy dimension and (for odd m)
// the mu-stability verdict, with the invariants between them checked per
// sample. Records go out as JSON lines, one per sample, in index order.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kronstab/model.hpp"

namespace kronstab {

inline constexpr int kCensusSchema = 1;

/// How a sample is drawn from its seed.
enum class SampleFamily {
  random,          // random_map with coefficients in [-bound, bound]
  boundary_orbit,  // act(g, boundary_normal_form(n, m)) for a random g
  destabilized,    // destabilized_block with 1 <= s <= (m+1)/2, so 2s < m+2
};
std::string to_string(SampleFamily f);
SampleFamily sample_family_from_string(const std::string& s);

KroneckerMap census_sample(const Dimensions& dims, SampleFamily family, std::uint64_t seed, long bound);

struct CensusOptions {
  int n = 3;
  int m = 3;
  int count = 200;
  std::uint64_t seed = 1;
  std::uint32_t prime = 31;
  long bound = 2;
  /// Every fifth sample is a boundary orbit and every fifth plus one is a
  /// destabilized block; the rest are random. Off: all random.
  bool mixed = true;
  /// Compute the mu-stability verdict (odd m only).
  bool mu = true;
  /// 0 means std::thread::hardware_concurrency, further capped by KRONSTAB_THREADS.
  int threads = 0;
};

struct CensusRecord {
  int index = 0;
  std::uint64_t seed = 0;
  SampleFamily family = SampleFamily::random;
  Dimensions dims;
  std::uint32_t prime = 0;
  bool injective = true;
  std::string git;
  int max_nullity = 0;
  int sigma = 1;
  int tau = 1;
  int dim_D = -1;
  int dim_D_exact = -1;
  std::vector<std::uint32_t> tau_primes;
  std::optional<std::string> mu;
  std::optional<bool> hoppe_all_zero;
  int cross_checks = 0;
  bool cross_checks_agree = true;
  std::vector<std::string> violations;
  std::string error;
  std::map<std::string, double> timings_ms;

  nlohmann::ordered_json to_json() const;
};

/// Classifies one sample and lists the invariants it breaks:
///   "chain"       semistable and not sigma <= tau <= sigma+1
///   "threshold"   semistable and (sigma >= 2) != (tau >= 2)
///   "codim"       m odd, stable and n - dim D < (m+1)/2
///   "equivalence" m odd and (GIT stable) != (mu-stable)
///   "duality"     a reflexive Hoppe entry disagrees between the two sides
///   "error"       the classification threw
CensusRecord census_record(const CensusOptions& options, int index);

struct CensusSummary {
  std::vector<CensusRecord> records;
  std::map<std::string, int> status_counts;
  std::map<std::string, int> sigma_tau_counts;  // "sigma,tau"
  std::map<std::string, int> family_counts;
  int violations = 0;
};

/// Runs the census in parallel and hands each record to `sink` in index order
/// from a single thread at a time.
CensusSummary run_census(const CensusOptions& options, const std::function<void(const CensusRecord&)>& sink = {});

/// Worker count: requested (or hardware) threads capped by KRONSTAB_THREADS.
int census_threads(int requested);

}  // namespace kronstab
