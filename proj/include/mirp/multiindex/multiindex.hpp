#pragma once

#include <compare>
#include <string>
#include <vector>

#include "mirp/lincomb.hpp"
#include "mirp/multiset.hpp"

namespace mirp::mi {

// A node type (ℓ,k): label ℓ, fertility k. Ordered by label, then k.
struct Node {
  int label = 0;
  int k = 0;
  auto operator<=>(const Node&) const = default;
};

using MultiIndex = Multiset<Node>;
using Poly = LinComb<MultiIndex>;

inline MultiIndex node(int label, int k, int mult = 1) { return MultiIndex::single(Node{label, k}, mult); }
inline MultiIndex leaf(int label) { return node(label, 0); }

int length(const MultiIndex& b);
int weight(const MultiIndex& b);  // Σ (1−k) β(ℓ,k)
inline bool is_populated(const MultiIndex& b) { return weight(b) == 1; }
Rational sigma(const MultiIndex& b);  // Π (k!)^{β(ℓ,k)}
int label_count(const MultiIndex& b, int label);
int max_label(const MultiIndex& b);  // -1 for the empty multi-index

// Label subset L̂ ⊆ 𝔏 as a membership mask.
struct LabelSet {
  std::vector<bool> member;
  static LabelSet of(int labels, const std::vector<int>& hat);
  bool contains(int label) const { return label >= 0 && label < static_cast<int>(member.size()) && member[label]; }
  std::vector<int> elements() const;
  bool operator==(const LabelSet&) const = default;
};

// ⟨β⟩_L̂: number of nodes whose label lies outside L̂.
int length_outside(const MultiIndex& b, const LabelSet& hat);

// Compact canonical text form "[[l,k,m],...]".
std::string to_string(const MultiIndex& b);
MultiIndex parse_multiindex(const std::string& s);

std::vector<MultiIndex> populated_of_length(int labels, int n);
std::vector<MultiIndex> enumerate_populated(int labels, int max_length);

}  // namespace mirp::mi
