#include "mirp/multiindex/multiindex.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace mirp::mi {

int length(const MultiIndex& b) { return b.length(); }

int weight(const MultiIndex& b) {
  int w = 0;
  for (const auto& [n, m] : b) w += (1 - n.k) * m;
  return w;
}

Rational sigma(const MultiIndex& b) {
  Rational s = 1;
  for (const auto& [n, m] : b) {
    Rational f = factorial(n.k);
    for (int i = 0; i < m; ++i) s *= f;
  }
  return s;
}

int label_count(const MultiIndex& b, int label) {
  int c = 0;
  for (const auto& [n, m] : b)
    if (n.label == label) c += m;
  return c;
}

int max_label(const MultiIndex& b) {
  int l = -1;
  for (const auto& [n, m] : b) l = std::max(l, n.label);
  return l;
}

LabelSet LabelSet::of(int labels, const std::vector<int>& hat) {
  LabelSet s;
  s.member.assign(labels, false);
  for (int l : hat) {
    if (l < 0 || l >= labels) throw std::invalid_argument("label outside the alphabet: " + std::to_string(l));
    s.member[l] = true;
  }
  return s;
}

std::vector<int> LabelSet::elements() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(member.size()); ++i)
    if (member[i]) out.push_back(i);
  return out;
}

int length_outside(const MultiIndex& b, const LabelSet& hat) {
  int c = 0;
  for (const auto& [n, m] : b)
    if (!hat.contains(n.label)) c += m;
  return c;
}

std::string to_string(const MultiIndex& b) {
  std::string s = "[";
  bool first = true;
  for (const auto& [n, m] : b) {
    if (!first) s += ",";
    first = false;
    s += "[" + std::to_string(n.label) + "," + std::to_string(n.k) + "," + std::to_string(m) + "]";
  }
  return s + "]";
}

MultiIndex parse_multiindex(const std::string& s) {
  std::vector<int> nums;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '-') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      nums.push_back(std::stoi(s.substr(i, j - i)));
      i = j;
    } else if (s[i] == '[' || s[i] == ']' || s[i] == ',' || std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
    } else {
      throw std::invalid_argument("bad multi-index: " + s);
    }
  }
  if (nums.size() % 3) throw std::invalid_argument("bad multi-index: " + s);
  MultiIndex b;
  for (std::size_t j = 0; j < nums.size(); j += 3) {
    if (nums[j] < 0 || nums[j + 1] < 0 || nums[j + 2] < 1) throw std::invalid_argument("bad multi-index: " + s);
    b.add(Node{nums[j], nums[j + 1]}, nums[j + 2]);
  }
  return b;
}

std::vector<MultiIndex> populated_of_length(int labels, int n) {
  std::vector<MultiIndex> out;
  if (n < 1 || labels < 1) return out;
  // Fertility is at most n−1 since Σ k β(ℓ,k) = n − 1.
  std::vector<Node> nodes;
  for (int l = 0; l < labels; ++l)
    for (int k = 0; k <= n - 1; ++k) nodes.push_back({l, k});
  MultiIndex cur;
  auto rec = [&](auto&& self, std::size_t i, int count, int ksum) -> void {
    if (count == n) {
      if (ksum == n - 1) out.push_back(cur);
      return;
    }
    if (i == nodes.size()) return;
    self(self, i + 1, count, ksum);
    const int k = nodes[i].k;
    int m = 0;
    while (count + m + 1 <= n && ksum + (m + 1) * k <= n - 1) {
      ++m;
      cur.add(nodes[i]);
      self(self, i + 1, count + m, ksum + m * k);
    }
    if (m) cur.add(nodes[i], -m);
  };
  rec(rec, 0, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MultiIndex> enumerate_populated(int labels, int max_length) {
  if (max_length < 1) throw std::invalid_argument("max length must be at least 1");
  std::vector<MultiIndex> out;
  for (int n = 1; n <= max_length; ++n) {
    auto v = populated_of_length(labels, n);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace mirp::mi
