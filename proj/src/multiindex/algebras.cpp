#include "mirp/multiindex/algebras.hpp"

#include <stdexcept>

namespace mirp::mi {

std::string to_string(const RSymbol& r) {
  return "{\"gamma\":" + to_string(r.gamma) + ",\"label\":" + std::to_string(r.label) + "}";
}

LinComb<RSymbol> r_prelie(const RSymbol& a, const RSymbol& b) {
  LinComb<RSymbol> out;
  for (const auto& [beta, c] : insert_prelie(a.label, a.gamma, b.gamma)) out.add(RSymbol{beta, b.label}, c);
  return out;
}

std::string flavor_name(Flavor f) {
  switch (f) {
    case Flavor::R2: return "R2";
    case Flavor::RL: return "RL";
    case Flavor::RhatL: return "RhatL";
  }
  return "?";
}

Flavor parse_flavor(const std::string& s) {
  if (s == "R2") return Flavor::R2;
  if (s == "RL") return Flavor::RL;
  if (s == "RhatL") return Flavor::RhatL;
  throw std::invalid_argument("unknown flavor '" + s + "' (expected R2, RL or RhatL)");
}

bool FlavorSpec::contains(const RSymbol& r) const {
  if (!is_populated(r.gamma)) return false;
  if (r.label < 0 || r.label >= static_cast<int>(hat.member.size())) return false;
  if (max_label(r.gamma) >= static_cast<int>(hat.member.size())) return false;
  switch (flavor) {
    case Flavor::R2: return length(r.gamma) >= 2;
    case Flavor::RL: return hat.contains(r.label) && length_outside(r.gamma, hat) > 0;
    case Flavor::RhatL:
      return hat.contains(r.label) && length(r.gamma) == length_outside(r.gamma, hat);
  }
  return false;
}

int FlavorSpec::grade(const RSymbol& r) const {
  if (flavor == Flavor::R2) return length(r.gamma) - 1;
  return length_outside(r.gamma, hat);
}

int FlavorSpec::module_grade(const MultiIndex& b) const {
  if (flavor == Flavor::R2) return length(b) - weight(b);
  return length_outside(b, hat);
}

LinComb<RSymbol> RAlgebra::product(const RSymbol& a, const RSymbol& b) const {
  if (!flavor.contains(a) || !flavor.contains(b))
    throw std::invalid_argument("symbol outside the " + flavor_name(flavor.flavor) + " flavor");
  return r_prelie(a, b);
}

std::vector<RSymbol> RAlgebra::basis_of_grade(int g) const {
  std::vector<RSymbol> out;
  if (g < 1) return out;
  auto push = [&](const MultiIndex& gamma) {
    for (int l = 0; l < labels; ++l) {
      RSymbol r{gamma, l};
      if (flavor.contains(r) && grade(r) == g) out.push_back(r);
    }
  };
  if (flavor.flavor == Flavor::R2) {
    for (const auto& gamma : populated_of_length(labels, g + 1)) push(gamma);
  } else if (flavor.flavor == Flavor::RhatL) {
    for (const auto& gamma : populated_of_length(labels, g)) push(gamma);
  } else {
    for (int n = g; n <= max_length; ++n)
      for (const auto& gamma : populated_of_length(labels, n)) push(gamma);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mirp::mi
