#include "reports.hpp"

#include <sstream>

#include "kronstab/io.hpp"

namespace kronstab::cli {

namespace {

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_to_json(q));
  return out;
}

std::string kind_name(Witness::Kind k) {
  switch (k) {
    case Witness::Kind::none:
      return "none";
    case Witness::Kind::generic:
      return "generic";
    case Witness::Kind::point:
      return "point";
    case Witness::Kind::factor:
      return "factor";
    case Witness::Kind::kernel:
      return "kernel";
    case Witness::Kind::subspace:
      return "subspace";
  }
  return "none";
}

}  // namespace

Json witness_json(const Witness& w) {
  Json j;
  j["kind"] = kind_name(w.kind);
  if (!w.point.empty()) j["point"] = rationals(w.point);
  if (!w.factor.empty()) {
    j["factor"] = rationals(w.factor);
    j["irreducible"] = w.irreducible;
  }
  if (w.kind == Witness::Kind::subspace) j["subspace_dim"] = w.subspace_dim;
  j["description"] = w.describe();
  return j;
}

Json verdict_json(const StabilityVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["probabilistic"] = v.probabilistic;
  if (v.probabilistic) {
    j["prime"] = v.prime;
    j["worst_ratio"] = rational_to_json(v.worst_ratio);
  } else {
    j["max_nullity"] = v.max_nullity;
    j["sigma"] = v.sigma;
  }
  j["injective"] = v.injective;
  j["witness"] = witness_json(v.witness);
  if (v.pencil) {
    j["pencil"] = {{"normal_rank", v.pencil->normal_rank},
                   {"min_rank", v.pencil->min_rank},
                   {"determinantal_divisor_degrees", v.pencil->dd_degrees}};
  }
  if (!v.caveat.empty()) j["caveat"] = v.caveat;
  return j;
}

Json degeneracy_json(const DegeneracyReport& r) {
  Json j;
  j["dim_estimate"] = r.dim_estimate;
  j["tau"] = r.tau;
  j["dim_D0"] = r.dim_D0;
  j["method"] = r.method;
  j["prime"] = r.prime;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["trial_estimates"] = r.trial_estimates;
  if (r.point_count) j["point_count"] = *r.point_count;
  Json slices = Json::array();
  for (const auto& s : r.transcript) slices.push_back({{"trial", s.trial}, {"codim", s.codim}, {"points", s.points}});
  j["transcript"] = slices;
  j["warnings"] = r.warnings;
  return j;
}

Json filtration_json(const FiltrationReport& r) {
  Json j;
  j["status"] = to_string(r.status);
  j["sigma"] = r.sigma;
  j["tau"] = r.tau;
  j["dim_estimate"] = r.dim_estimate;
  if (r.exact_tau) j["exact_tau"] = *r.exact_tau;
  j["chain_holds"] = r.chain_holds;
  j["threshold_holds"] = r.threshold_holds;
  j["outside_semistable"] = r.outside_semistable;
  j["primes"] = r.primes;
  return j;
}

Json hoppe_json(const HoppeProfile& h) {
  Json j;
  Json entries = Json::array();
  for (const auto& e : h.entries) entries.push_back({{"r", e.r}, {"twist", e.twist}, {"h0", e.h0}});
  j["entries"] = entries;
  j["all_zero"] = h.all_zero;
  j["dim_D"] = h.dim_D;
  Json checks = Json::array();
  for (const auto& c : h.cross_checks) checks.push_back({{"r", c.r}, {"t", c.t}, {"dual", c.dual}, {"direct", c.direct}});
  j["cross_checks"] = checks;
  j["cross_checks_agree"] = h.cross_checks_agree;
  return j;
}

Json mu_json(const MuStabilityReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["torsion"] = {{"torsion", r.torsion.torsion}, {"dim_D", r.torsion.dim_D}, {"exact", r.torsion.exact}};
  if (r.hoppe) j["hoppe"] = hoppe_json(*r.hoppe);
  j["evidence"] = r.evidence;
  return j;
}

Json ext_json(const ExtDimensions& e, const Dimensions& d) {
  Json j;
  j["hom"] = e.hom;
  j["ext1"] = e.ext1;
  j["ext2"] = e.ext2;
  j["h0_minus1"] = e.h0_minus1;
  j["h0_zero"] = e.h0_zero;
  j["expected_ext1"] = (d.m + 2) * (2 * d.n - d.m) - 3;
  return j;
}

Json census_summary_json(const CensusSummary& s) {
  Json j;
  j["samples"] = s.records.size();
  j["status"] = s.status_counts;
  j["sigma_tau"] = s.sigma_tau_counts;
  j["families"] = s.family_counts;
  Json bad = Json::array();
  for (const auto& r : s.records)
    if (!r.violations.empty()) bad.push_back({{"index", r.index}, {"seed", r.seed}, {"violations", r.violations}});
  j["violations"] = bad;
  return j;
}

std::string render_text(const Json& j, int indent) {
  std::ostringstream out;
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [](const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& x : v)
      if (x.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_structured() && !flat(value) && !value.empty()) {
        out << pad << key << ":\n" << render_text(value, indent + 2);
      } else {
        out << pad << key << ": " << scalar(value) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      bool shallow = value.is_object();
      for (const auto& x : value) shallow = shallow && !x.is_structured();
      if (shallow) {
        out << pad << "- " << value.dump() << "\n";
      } else if (value.is_object()) {
        std::string inner = render_text(value, indent + 2);
        inner.replace(static_cast<std::size_t>(indent), 2, "- ");
        out << inner;
      } else {
        out << pad << "- " << scalar(value) << "\n";
      }
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
  return out.str();
}

}  // namespace kronstab::cli
