#include "mirp/trees/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <stdexcept>

namespace mirp::trees {

Tree::Tree(int label, std::vector<Tree> children) : label_(label), children_(std::move(children)), nodes_(1) {
  if (label < 0) throw std::invalid_argument("tree labels must be non-negative");
  std::sort(children_.begin(), children_.end());
  key_ = std::to_string(label_);
  if (!children_.empty()) {
    key_ += '[';
    for (std::size_t i = 0; i < children_.size(); ++i) {
      if (i) key_ += ',';
      key_ += children_[i].key_;
      nodes_ += children_[i].nodes_;
    }
    key_ += ']';
  }
}

int Tree::max_label() const {
  int m = label_;
  for (const auto& c : children_) m = std::max(m, c.max_label());
  return m;
}

std::string to_string(const Tree& t) { return t.key(); }

namespace {

struct Parser {
  const std::string& s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("bad tree '" + s + "' at offset " + std::to_string(i) + ": " + what);
  }
  Tree tree() {
    skip();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) fail("expected a label");
    if (i - start > 6) fail("label too large");
    const int label = std::stoi(s.substr(start, i - start));
    skip();
    std::vector<Tree> children;
    if (i < s.size() && s[i] == '[') {
      ++i;
      children.push_back(tree());
      skip();
      while (i < s.size() && s[i] == ',') {
        ++i;
        children.push_back(tree());
        skip();
      }
      if (i >= s.size() || s[i] != ']') fail("expected ']'");
      ++i;
    }
    return Tree(label, std::move(children));
  }
};

}  // namespace

Tree parse_tree(const std::string& s) {
  Parser p{s};
  Tree t = p.tree();
  p.skip();
  if (p.i != s.size()) p.fail("trailing characters");
  return t;
}

Rational symmetry_factor(const Tree& t) {
  Multiset<Tree> kids;
  Rational r = 1;
  for (const auto& c : t.children()) {
    kids.add(c);
    r *= symmetry_factor(c);
  }
  return r * kids.factorial();
}

MultiIndex fertility(const Tree& t) {
  MultiIndex b = mi::node(t.label(), static_cast<int>(t.children().size()));
  for (const auto& c : t.children()) b = b + fertility(c);
  return b;
}

std::vector<Tree> enumerate_trees(int labels, int max_nodes) {
  if (labels < 1) throw std::invalid_argument("need at least one label");
  std::vector<Tree> all;
  std::vector<std::size_t> size_end{0};  // all[size_end[n-1], size_end[n]) have n nodes
  for (int n = 1; n <= max_nodes; ++n) {
    std::vector<Tree> level;
    std::vector<Tree> kids;
    // Children as a non-decreasing index sequence into the smaller trees.
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
      if (left == 0) {
        for (int l = 0; l < labels; ++l) level.emplace_back(l, kids);
        return;
      }
      for (std::size_t j = from; j < size_end.back() && all[j].nodes() <= left; ++j) {
        kids.push_back(all[j]);
        rec(j, left - all[j].nodes());
        kids.pop_back();
      }
    };
    rec(0, n - 1);
    std::sort(level.begin(), level.end());
    all.insert(all.end(), level.begin(), level.end());
    size_end.push_back(all.size());
  }
  return all;
}

std::vector<Tree> trees_with_nodes(int labels, int n) {
  auto all = enumerate_trees(labels, n);
  all.erase(std::remove_if(all.begin(), all.end(), [n](const Tree& t) { return t.nodes() != n; }), all.end());
  return all;
}

TreeSeries graft(const Tree& tp, const Tree& t) { return simultaneous_graft({tp}, t); }

TreeSeries graft(const TreeSeries& a, const TreeSeries& b) {
  return bilinear(a, b, [](const Tree& x, const Tree& y) { return graft(x, y); });
}

namespace {

// Replace children[j] by each term of options[j] in turn, multilinearly.
TreeSeries rebuild(int label, const std::vector<Tree>& fixed, const std::vector<TreeSeries>& options) {
  TreeSeries out;
  std::vector<Tree> kids = fixed;
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t j, const Rational& c) {
    if (j == options.size()) {
      out.add(Tree(label, kids), c);
      return;
    }
    for (const auto& [t, ct] : options[j]) {
      kids.push_back(t);
      rec(j + 1, c * ct);
      kids.pop_back();
    }
  };
  rec(0, Rational(1));
  return out;
}

}  // namespace

TreeSeries simultaneous_graft(const std::vector<Tree>& grafted, const Tree& t) {
  if (grafted.empty()) return TreeSeries(t);
  const auto& ch = t.children();
  const std::size_t bins = ch.size() + 1;
  std::vector<std::size_t> bin(grafted.size(), 0);
  TreeSeries out;
  for (;;) {
    std::vector<Tree> at_root;
    std::vector<std::vector<Tree>> below(ch.size());
    for (std::size_t i = 0; i < grafted.size(); ++i) {
      if (bin[i] == 0)
        at_root.push_back(grafted[i]);
      else
        below[bin[i] - 1].push_back(grafted[i]);
    }
    std::vector<TreeSeries> options;
    for (std::size_t j = 0; j < ch.size(); ++j) options.push_back(simultaneous_graft(below[j], ch[j]));
    out += rebuild(t.label(), at_root, options);
    std::size_t i = 0;
    while (i < bin.size() && ++bin[i] == bins) bin[i++] = 0;
    if (i == bin.size()) break;
  }
  return out;
}

TreeSeries insertion(int label, const Tree& tp, const Tree& t) {
  TreeSeries out;
  const auto& ch = t.children();
  if (t.label() == label) out += simultaneous_graft(ch, tp);
  for (std::size_t j = 0; j < ch.size(); ++j) {
    TreeSeries inner = insertion(label, tp, ch[j]);
    if (inner.empty()) continue;
    std::vector<Tree> rest;
    for (std::size_t i = 0; i < ch.size(); ++i)
      if (i != j) rest.push_back(ch[i]);
    out += rebuild(t.label(), rest, {inner});
  }
  return out;
}

TreeSeries insertion(int label, const TreeSeries& a, const TreeSeries& b) {
  return bilinear(a, b, [label](const Tree& x, const Tree& y) { return insertion(label, x, y); });
}

std::pair<Rational, MultiIndex> psi(const Tree& t) {
  MultiIndex b = fertility(t);
  return {mi::sigma(b), b};
}

mi::Poly psi(const TreeSeries& s) {
  mi::Poly out;
  for (const auto& [t, c] : s) {
    auto [sg, b] = psi(t);
    out.add(b, c * sg);
  }
  return out;
}

// Memoized; not safe to call from several threads at once.
std::vector<Tree> fertility_class(const MultiIndex& beta) {
  static std::map<MultiIndex, std::vector<Tree>> memo;
  if (auto it = memo.find(beta); it != memo.end()) return it->second;
  std::vector<Tree> out;
  if (mi::is_populated(beta)) {
    for (const auto& [root, m] : beta) {
      (void)m;
      const MultiIndex rest = *beta.minus(MultiIndex::single(root));
      // k children, each from a populated part of rest, in non-decreasing tree order.
      std::vector<Tree> kids;
      std::function<void(const MultiIndex&, int, const Tree*)> rec = [&](const MultiIndex& left, int k,
                                                                        const Tree* lo) {
        if (k == 0) {
          if (left.empty()) out.emplace_back(root.label, kids);
          return;
        }
        for (const auto& part : sub_multisets(left)) {
          if (part.empty() || !mi::is_populated(part)) continue;
          const MultiIndex after = *left.minus(part);
          for (const auto& c : fertility_class(part)) {
            if (lo && c < *lo) continue;
            kids.push_back(c);
            rec(after, k - 1, &kids.back());
            kids.pop_back();
          }
        }
      };
      kids.reserve(root.k);
      rec(rest, root.k, nullptr);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  memo.emplace(beta, out);
  return out;
}

}  // namespace mirp::trees
