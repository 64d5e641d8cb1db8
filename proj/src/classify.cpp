#include "ttlab/classify.hpp"

#include <algorithm>
#include <sstream>

#include "ttlab/cover.hpp"
#include "ttlab/errors.hpp"
#include "ttlab/families.hpp"

namespace ttlab {

int StratumLabel::odd_count() const {
  return static_cast<int>(std::count_if(kappa.begin(), kappa.end(), [](int k) { return k % 2 != 0; }));
}

int StratumLabel::dimension() const { return 2 * genus - 2 + static_cast<int>(kappa.size()) + (epsilon == 1 ? 1 : 0); }

bool StratumLabel::principal() const {
  return epsilon == -1 && std::all_of(kappa.begin(), kappa.end(), [](int k) { return k == 1; });
}

std::string StratumLabel::to_string() const {
  std::ostringstream out;
  out << "Q(";
  for (size_t i = 0; i < kappa.size();) {
    size_t j = i;
    while (j < kappa.size() && kappa[j] == kappa[i]) ++j;
    if (i > 0) out << ",";
    out << kappa[i];
    if (j - i > 1) out << "^" << (j - i);
    i = j;
  }
  out << ";" << (epsilon == 1 ? "+1" : "-1") << ")";
  return out.str();
}

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::FullStratumComponent: return "FullStratumComponent";
    case VerdictKind::HyperellipticCandidate: return "HyperellipticCandidate";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(SpinParity parity) { return parity == SpinParity::Even ? "even" : "odd"; }

StratumLabel identify_stratum(const MulticurveConfig& cfg, const SpineAssignment& sa) {
  require_valid(cfg, sa);
  StratumLabel label;
  label.genus = cfg.genus;
  for (const auto& g : sa.spines) {
    auto k = cone_orders(g);
    label.kappa.insert(label.kappa.end(), k.begin(), k.end());
  }
  std::sort(label.kappa.begin(), label.kappa.end());
  label.epsilon = jointly_orientable(sa, cfg).epsilon;
  long sum = 0;
  for (int k : label.kappa) sum += k;
  if (sum != 4L * cfg.genus - 4) throw Error(ErrorCode::InvalidSurface, "zero orders do not sum to 4g-4");
  return label;
}

Rational high_rank_threshold(int genus, int odd) { return Rational(genus) + ratio(odd, 4) + ratio(1, 2); }

namespace {

std::string limit_label(const OrbitClosureVerdict& v) {
  switch (v.kind) {
    case VerdictKind::FullStratumComponent:
      return v.stratum.principal() ? "μ_Mirz/b_g" : "MSV, singular to μ_Mirz";
    case VerdictKind::HyperellipticCandidate: return "MSV on hyperelliptic locus";
    case VerdictKind::Inconclusive: return "undetermined";
  }
  return "undetermined";
}

}  // namespace

OrbitClosureVerdict classify_orbit_closure(const MulticurveConfig& cfg, const SpineAssignment& sa,
                                           const std::vector<Rational>& heights) {
  require_valid(cfg, sa);
  if (static_cast<int>(heights.size()) != cfg.num_curves())
    throw Error(ErrorCode::NonPositiveHeight, "one height per curve required");
  for (const auto& h : heights)
    if (h <= 0) throw Error(ErrorCode::NonPositiveHeight, "cylinder heights must be positive");

  OrbitClosureVerdict v;
  v.stratum = identify_stratum(cfg, sa);
  auto& c = v.certificate;
  c.n_co = count_co_orientable(sa);
  c.delta_jo = v.stratum.epsilon == 1 ? 1 : 0;
  c.rank_lb = cfg.num_curves() - c.n_co + c.delta_jo;
  c.rank_matrix = rank_lower_bound(holonomy_double_cover(cfg, sa));
  if (c.rank_lb != c.rank_matrix)
    throw Error(ErrorCode::InvalidSurface, "relations count and lifted-class rank disagree");

  const int g = cfg.genus;
  if (v.stratum.epsilon == -1) {
    c.threshold = high_rank_threshold(g, v.stratum.odd_count());
    if (v.stratum.odd_count() < 6) {
      v.reasons.push_back("fewer than 6 odd-order zeros");
    } else if (c.rank_lb >= c.threshold) {
      v.kind = VerdictKind::FullStratumComponent;
    } else {
      v.reasons.push_back("rank bound below high-rank threshold");
    }
  } else {
    c.threshold = Rational(g);
    if (spin_defined(cfg, sa)) v.spin = spin_parity(cfg, sa);
    if (c.rank_lb < g) {
      v.reasons.push_back("rank bound below genus");
    } else {
      try {
        auto inv = hyperelliptic_involution_search(cfg, sa);
        v.hyperelliptic = inv.has_value();
        if (!inv) {
          v.kind = VerdictKind::FullStratumComponent;
        } else if (g == 2) {
          v.kind = VerdictKind::FullStratumComponent;
          v.reasons.push_back("genus 2: every surface in the component is hyperelliptic");
        } else {
          v.kind = VerdictKind::HyperellipticCandidate;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SearchBudgetExceeded) throw;
        v.reasons.push_back("involution search budget exhausted");
      }
    }
  }
  v.limit_label = limit_label(v);
  return v;
}

OrbitClosureVerdict classify_pants_torus(const MulticurveConfig& cfg, const std::vector<Rational>& lengths,
                                         const std::vector<Rational>& heights) {
  SpineAssignment sa = pants_assignment(cfg, lengths);
  OrbitClosureVerdict v = classify_orbit_closure(cfg, sa, heights);
  v.certificate.nabla = nabla_count(cfg, lengths);
  return v;
}

}  // namespace ttlab
