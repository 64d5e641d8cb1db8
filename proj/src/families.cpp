#include "ttlab/families.hpp"

#include "ttlab/errors.hpp"

namespace ttlab {

namespace {

void require_pants(const MulticurveConfig& cfg, const std::vector<Rational>& lengths) {
  if (!is_pants_decomposition(cfg)) throw Error(ErrorCode::NotPants, "not a pants decomposition");
  if (static_cast<int>(lengths.size()) != cfg.num_curves())
    throw Error(ErrorCode::NonPositiveLength, "one length per curve required");
  for (const auto& l : lengths)
    if (l <= 0) throw Error(ErrorCode::NonPositiveLength, "curve lengths must be positive");
}

}  // namespace

std::vector<std::array<Rational, 3>> pants_triples(const MulticurveConfig& cfg, const std::vector<Rational>& lengths) {
  require_pants(cfg, lengths);
  auto table = slot_table(cfg);
  std::vector<std::array<Rational, 3>> out(cfg.num_pieces());
  for (int j = 0; j < cfg.num_pieces(); ++j)
    for (int k = 0; k < 3; ++k) out[j][k] = lengths[table[j][k].curve];
  return out;
}

SpineAssignment pants_assignment(const MulticurveConfig& cfg, const std::vector<Rational>& lengths) {
  SpineAssignment sa;
  for (const auto& t : pants_triples(cfg, lengths)) {
    PantsSpine ps = pants_spine(t[0], t[1], t[2]);
    std::vector<int> face_to_slot(3);
    for (int k = 0; k < 3; ++k) face_to_slot[ps.face_of_boundary[k]] = k;
    sa.spines.push_back(std::move(ps.graph));
    sa.face_to_slot.push_back(std::move(face_to_slot));
  }
  return sa;
}

int nabla_count(const MulticurveConfig& cfg, const std::vector<Rational>& lengths) {
  int count = 0;
  for (const auto& t : pants_triples(cfg, lengths))
    count += t[0] == t[1] + t[2] || t[1] == t[0] + t[2] || t[2] == t[0] + t[1];
  return count;
}

PlumbingData plumbing_surface(const std::vector<int>& valences, const std::vector<CurveGluing>& gluing,
                              const Rational& boundary_length) {
  PlumbingData out;
  int chi = 0;
  for (int p : valences) {
    out.config.pieces.push_back({0, p});
    chi += 2 - p;
    out.spines.spines.push_back(plumbing_fixture(p, boundary_length));
    std::vector<int> slots(p);
    for (int s = 0; s < p; ++s) slots[out.spines.spines.back().face_of(s)] = s;
    out.spines.face_to_slot.push_back(std::move(slots));
  }
  out.config.gluing = gluing;
  out.config.genus = (2 - chi) / 2;
  require_valid(out.config, out.spines);
  return out;
}

}  // namespace ttlab
