#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirp/algebra/guin_oudom.hpp"
#include "mirp/io/json.hpp"
#include "mirp/multiindex/algebras.hpp"
#include "mirp/multiindex/nonlinearity.hpp"
#include "mirp/multiindex/translation.hpp"
#include "mirp/roughpath/chen.hpp"
#include "mirp/roughpath/holder.hpp"
#include "mirp/roughpath/sewing.hpp"
#include "mirp/roughpath/translate.hpp"
#include "mirp/trees/branched.hpp"
#include "mirp/trees/expansion.hpp"
#include "mirp/trees/tree.hpp"

using namespace mirp;
using io::json;

namespace {

enum Exit { ok = 0, tolerance = 1, usage = 2, io_error = 3, schema = 4, precondition = 5, numerical = 6 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string out;
  std::uint64_t seed = 0;
  double tol = -1;  // < 0: per-command default
  int labels = 1;
  int levels = 2;
  int nodes = 0;
  int M = 1024;
  int threads = 1;
  int bases = 8;
  std::string quadrature = "trapezoid";
  std::string pairs = "dyadic";
  std::vector<std::string> driver{"linear"};
  std::string csv;
  std::string spec_path;
  std::string algebra = "td";
  std::vector<int> hat;
  int degree = 3;
  double alpha = 1;
  std::vector<std::string> fields{"poly:0:1"};
  double y0 = 1;
  double h0 = 0;
  int halvings = 5;
  int local_M = 0;
  std::string betas;  // ';'-separated
  int depth = 12;
};

double tol_or(const Config& c, double fallback) { return c.tol >= 0 ? c.tol : fallback; }

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<double> colon_numbers(const std::string& s, std::size_t from, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(s.substr(from));
  std::string part;
  while (std::getline(ss, part, ':')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || part.empty()) throw std::invalid_argument("bad number '" + part + "' in " + what + " '" + s + "'");
    v.push_back(x);
  }
  return v;
}

// linear[:slope[:offset]] | sin|cos[:amp[:freq[:phase]]] | poly:c0:c1:...
rp::ClosedForm parse_form(const std::string& s) {
  const auto colon = s.find(':');
  const auto kind = rp::parse_kind(s.substr(0, colon));
  const auto v = colon == std::string::npos ? std::vector<double>{} : colon_numbers(s, colon + 1, "driver");
  auto arg = [&](std::size_t i, double d) { return i < v.size() ? v[i] : d; };
  switch (kind) {
    case rp::ClosedForm::Kind::linear:
      if (v.size() > 2) break;
      return rp::ClosedForm::linear(arg(0, 1), arg(1, 0));
    case rp::ClosedForm::Kind::sin:
      if (v.size() > 3) break;
      return rp::ClosedForm::sine(arg(0, 1), arg(1, 1), arg(2, 0));
    case rp::ClosedForm::Kind::cos:
      if (v.size() > 3) break;
      return rp::ClosedForm::cosine(arg(0, 1), arg(1, 1), arg(2, 0));
    case rp::ClosedForm::Kind::poly:
      if (v.empty()) break;
      return rp::ClosedForm::poly(v);
  }
  throw std::invalid_argument("wrong number of parameters in driver '" + s + "'");
}

// poly:c0:c1:... | sin:amp:freq:phase | exp:amp:rate
mi::ScalarFunction parse_field(const std::string& s) {
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  const auto v = colon == std::string::npos ? std::vector<double>{} : colon_numbers(s, colon + 1, "field");
  auto arg = [&](std::size_t i, double d) { return i < v.size() ? v[i] : d; };
  if (kind == "poly" && !v.empty()) return mi::ScalarFunction(mi::PolynomialFn{v});
  if (kind == "sin" && v.size() <= 3) return mi::ScalarFunction(mi::SineFn{arg(0, 1), arg(1, 1), arg(2, 0)});
  if (kind == "exp" && v.size() <= 2) return mi::ScalarFunction(mi::ExpFn{arg(0, 1), arg(1, 1)});
  throw std::invalid_argument("bad field '" + s + "' (expected poly:c0:c1:..., sin:amp:freq:phase or exp:amp:rate)");
}

rp::Driver load_driver(const Config& c) {
  if (!c.csv.empty()) {
    rp::Driver d = rp::Driver::from_csv_text(read_file(c.csv));
    d.validate();
    return d;
  }
  std::vector<rp::ClosedForm> forms;
  for (const auto& s : c.driver) forms.push_back(parse_form(s));
  return rp::Driver::sample(forms, c.M);
}

json driver_json(const rp::Driver& d) {
  json j;
  j["labels"] = d.names;
  j["M"] = d.M;
  j["t0"] = d.t0;
  j["t1"] = d.t1;
  if (d.forms) {
    json f = json::array();
    for (const auto& x : *d.forms) f.push_back(x.describe());
    j["forms"] = f;
  } else {
    j["forms"] = nullptr;
  }
  return j;
}

rp::SignatureOptions signature_options(const Config& c, const rp::Driver& d) {
  rp::SignatureOptions o;
  o.N = c.levels;
  o.quad = rp::parse_quadrature(c.quadrature);
  if (c.bases < 1) throw std::invalid_argument("--bases must be at least 1");
  o.bases = rp::strided_bases(d.M, c.bases);
  if (c.threads < 1) throw std::invalid_argument("--threads must be at least 1");
  o.threads = c.threads;
  return o;
}

mi::TranslationSpec load_spec(const Config& c, int labels) {
  mi::TranslationSpec spec;
  spec.labels = labels;
  if (c.spec_path.empty()) throw std::invalid_argument("translate needs --spec");
  json j;
  try {
    j = json::parse(read_file(c.spec_path));
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("translation spec is not JSON: ") + e.what());
  }
  try {
    const auto hat = j.value("hat", std::vector<int>{});
    const mi::Flavor f = mi::parse_flavor(j.at("flavor").get<std::string>());
    spec.flavor = f == mi::Flavor::R2   ? mi::FlavorSpec::r2(labels)
                  : f == mi::Flavor::RL ? mi::FlavorSpec::rl(labels, hat)
                                        : mi::FlavorSpec::rhat(labels, hat);
    spec.bound = j.at("bound").get<int>();
    for (const auto& t : j.at("terms")) {
      mi::RSymbol r{mi::parse_multiindex(t.at("gamma").get<std::string>()), t.at("label").get<int>()};
      spec.c.add(r, io::rational_from_json(t.at("coef")));
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("translation spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

json values_at_pairs(const rp::SignatureGrid& sig, const std::vector<std::pair<int, int>>& pairs) {
  json arr = json::array();
  for (const auto& [s, t] : pairs) {
    json row;
    row["s"] = s;
    row["t"] = t;
    json x = json::object();
    for (std::size_t i = 0; i < sig.betas.size(); ++i) x[mi::to_string(sig.betas[i])] = sig.value(s, t, static_cast<int>(i));
    row["X"] = x;
    arr.push_back(row);
  }
  return arr;
}

json holder_json(const rp::SignatureGrid& sig, const Config& c, const std::vector<std::pair<int, int>>& pairs) {
  rp::HolderExponent e;
  e.alpha = c.alpha;
  json arr = json::array();
  for (const auto& r : rp::holder_report(sig, e, pairs))
    arr.push_back({{"beta", mi::to_string(r.beta)}, {"exponent", r.exponent}, {"sup", r.sup}, {"s", r.s}, {"t", r.t}});
  return arr;
}

json check_json(double value, double tol) {
  return {{"value", value}, {"tol", tol}, {"pass", std::isfinite(value) && value <= tol}};
}

// ---- commands ----

int cmd_enumerate(const Config& c, json& out) {
  if (c.labels < 1) throw std::invalid_argument("--labels must be at least 1");
  if (c.levels < 1) throw std::invalid_argument("--levels must be at least 1");
  json mis = json::object();
  json counts = json::array();
  for (int n = 1; n <= c.levels; ++n) {
    json items = json::array();
    for (const auto& b : mi::populated_of_length(c.labels, n)) items.push_back(mi::to_string(b));
    counts.push_back(items.size());
    mis[std::to_string(n)] = items;
  }
  out["multiindices"] = {{"counts", counts}, {"by_length", mis}};
  if (c.nodes > 0) {
    json trees = json::object();
    json tc = json::array();
    for (int n = 1; n <= c.nodes; ++n) {
      json items = json::array();
      for (const auto& t : trees::trees_with_nodes(c.labels, n)) items.push_back(trees::to_string(t));
      tc.push_back(items.size());
      trees[std::to_string(n)] = items;
    }
    out["trees"] = {{"counts", tc}, {"by_nodes", trees}};
  }
  out["labels"] = c.labels;
  return ok;
}

template <class GO>
json index_json(GO& go, const typename GO::Index& I) {
  json arr = json::array();
  for (const auto& [k, m] : I) arr.push_back({go.algebra().serialize(k), m});
  return arr;
}

template <class A>
int tables_for(A alg, const Config& c, json& out) {
  algebra::GuinOudom<A> go(std::move(alg));
  using Index = typename algebra::GuinOudom<A>::Index;
  json rows = json::array();
  bool coassoc = true, counit = true, matches = true;
  for (int d = 0; d <= c.degree; ++d)
    for (const Index& I : go.indices_of_degree(d)) {
      const auto cop = go.coproduct(I);
      json terms = json::array();
      for (const auto& [p, coef] : cop) terms.push_back({index_json(go, p.first), index_json(go, p.second), io::to_json(coef)});
      rows.push_back({{"index", index_json(go, I)}, {"degree", d}, {"coproduct", terms}});
      matches = matches && cop == go.coproduct_direct(I);
      // (Δ ⊗ id)Δ = (id ⊗ Δ)Δ and (ε ⊗ id)Δ = id = (id ⊗ ε)Δ
      LinComb<std::tuple<Index, Index, Index>> left, right;
      LinComb<Index> eps_l, eps_r;
      for (const auto& [p, coef] : cop) {
        for (const auto& [q, c2] : go.coproduct(p.first)) left.add({q.first, q.second, p.second}, coef * c2);
        for (const auto& [q, c2] : go.coproduct(p.second)) right.add({p.first, q.first, q.second}, coef * c2);
        if (p.first.empty()) eps_l.add(p.second, coef);
        if (p.second.empty()) eps_r.add(p.first, coef);
      }
      coassoc = coassoc && left == right;
      counit = counit && eps_l == LinComb<Index>(I) && eps_r == LinComb<Index>(I);
    }
  json products = json::array();
  for (const auto& a : go.basis_up_to(c.degree))
    for (const auto& b : go.basis_up_to(c.degree)) {
      if (go.algebra().grade(a) + go.algebra().grade(b) > c.degree) continue;
      json terms = json::array();
      for (const auto& [k, coef] : go.algebra().product(a, b)) terms.push_back({go.algebra().serialize(k), io::to_json(coef)});
      products.push_back({{"left", go.algebra().serialize(a)}, {"right", go.algebra().serialize(b)}, {"product", terms}});
    }
  out["coproduct"] = rows;
  out["product"] = products;
  out["audit"] = {{"coassociative", coassoc}, {"counit", counit}, {"matches_definition", matches}};
  return coassoc && counit && matches ? ok : tolerance;
}

int cmd_tables(const Config& c, json& out) {
  if (c.labels < 1) throw std::invalid_argument("--labels must be at least 1");
  if (c.degree < 0 || c.degree > 6) throw std::invalid_argument("--degree must be in [0, 6]");
  out["algebra"] = c.algebra;
  out["labels"] = c.labels;
  out["degree"] = c.degree;
  if (c.algebra == "td") return tables_for(mi::TDAlgebra{c.labels}, c, out);
  const int cap = c.degree + 2;
  if (c.algebra == "r2") return tables_for(mi::RAlgebra{c.labels, mi::FlavorSpec::r2(c.labels), cap}, c, out);
  if (c.algebra == "rl") return tables_for(mi::RAlgebra{c.labels, mi::FlavorSpec::rl(c.labels, c.hat), cap}, c, out);
  if (c.algebra == "rhat") return tables_for(mi::RAlgebra{c.labels, mi::FlavorSpec::rhat(c.labels, c.hat), cap}, c, out);
  throw std::invalid_argument("unknown --algebra '" + c.algebra + "' (expected td, r2, rl or rhat)");
}

int cmd_signature(const Config& c, json& out) {
  const auto d = load_driver(c);
  const auto sig = rp::build_signature(d, signature_options(c, d));
  const auto pairs = rp::sample_pairs(sig, rp::PairPolicy::parse(c.pairs, c.seed));
  out["driver"] = driver_json(d);
  out["levels"] = sig.N;
  out["quadrature"] = rp::quadrature_name(sig.quad);
  out["pairs"] = c.pairs;
  out["values"] = values_at_pairs(sig, pairs);
  out["holder"] = {{"alpha", c.alpha}, {"rows", holder_json(sig, c, pairs)}};
  return ok;
}

int cmd_chen(const Config& c, json& out) {
  const auto d = load_driver(c);
  const auto sig = rp::build_signature(d, signature_options(c, d));
  const rp::ChenTable table(sig.labels, sig.N);
  const auto r = rp::chen_report(sig, table);
  const double tol = tol_or(c, 1e-6);
  out["driver"] = driver_json(d);
  out["levels"] = sig.N;
  out["quadrature"] = rp::quadrature_name(sig.quad);
  out["triples"] = r.triples;
  out["max_by_level"] = r.max_by_level;
  out["argmax"] = {{"s", r.s}, {"u", r.u}, {"t", r.t}, {"beta", mi::to_string(r.beta)}};
  out["max_defect"] = check_json(r.max_defect, tol);
  return r.max_defect <= tol ? ok : tolerance;
}

int cmd_translate(const Config& c, json& out) {
  const auto d = load_driver(c);
  const auto opt = signature_options(c, d);
  const auto spec = load_spec(c, d.labels());
  const auto sig = rp::build_signature(d, opt);
  const auto tsig = rp::translate(sig, spec);
  const auto check = rp::translated_hierarchy_check(d, spec, opt);
  const auto pairs = rp::sample_pairs(sig, rp::PairPolicy::parse(c.pairs, c.seed));
  const double tol = tol_or(c, 1e-6);
  out["driver"] = driver_json(d);
  out["levels"] = sig.N;
  out["flavor"] = mi::flavor_name(spec.flavor.flavor);
  out["input"] = values_at_pairs(sig, pairs);
  out["translated"] = values_at_pairs(tsig, pairs);
  out["holder_translated"] = {{"alpha", c.alpha}, {"rows", holder_json(tsig, c, pairs)}};
  out["hierarchy_check"] = check_json(check.max_discrepancy, tol);
  out["hierarchy_check"]["argmax"] = {{"s", check.s}, {"t", check.t}, {"beta", mi::to_string(check.beta)}};
  return check.max_discrepancy <= tol ? ok : tolerance;
}

int cmd_dict(const Config& c, json& out) {
  const auto d = load_driver(c);
  const auto opt = signature_options(c, d);
  const auto sig = rp::build_signature(d, opt);
  trees::BranchedOptions bo;
  bo.n = c.levels;
  bo.quad = opt.quad;
  bo.bases = opt.bases;
  const auto br = trees::branched_signature(d, bo);
  const auto r = trees::dictionary_check(sig, br);
  const double tol = tol_or(c, 1e-8);
  out["driver"] = driver_json(d);
  out["levels"] = sig.N;
  out["quadrature"] = rp::quadrature_name(sig.quad);
  out["entries"] = r.entries;
  out["max_abs"] = r.max_abs;
  out["argmax"] = {{"s", r.s}, {"t", r.t}, {"beta", mi::to_string(r.beta)}};
  out["max_rel"] = check_json(r.max_rel, tol);
  return r.max_rel <= tol ? ok : tolerance;
}

int cmd_expansion(const Config& c, json& out) {
  const auto d = load_driver(c);
  mi::Nonlinearity a;
  for (const auto& f : c.fields) a.fields.push_back(parse_field(f));
  if (static_cast<int>(a.fields.size()) != d.labels())
    throw std::invalid_argument("need one --field per driver label (" + std::to_string(d.labels()) + ")");
  trees::ExpansionOptions opt;
  opt.N = c.levels;
  opt.H0 = c.h0;
  opt.halvings = c.halvings;
  opt.M = c.local_M;
  opt.quad = rp::parse_quadrature(c.quadrature);
  const auto r = trees::expansion_check(d, a, c.y0, opt);
  const double tol = tol_or(c, 1e-10);
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"H", row.H},
                    {"increment", row.increment},
                    {"mi_sum", row.mi_sum},
                    {"tree_sum", row.tree_sum},
                    {"mi_remainder", row.mi_remainder},
                    {"tree_remainder", row.tree_remainder}});
  const bool order_ok = r.mi_order >= opt.N + 0.5 && r.tree_order >= opt.N + 0.5;
  out["driver"] = driver_json(d);
  out["levels"] = r.N;
  out["y0"] = r.y_s;
  out["quadrature"] = rp::quadrature_name(opt.quad);
  out["rows"] = rows;
  out["pairwise_orders"] = r.pairwise_orders;
  out["order"] = {{"mi", r.mi_order}, {"tree", r.tree_order}, {"required", opt.N + 0.5}, {"pass", order_ok}};
  out["sum_gap"] = check_json(r.max_sum_gap, tol);
  return order_ok && r.max_sum_gap <= tol ? ok : tolerance;
}

int cmd_extend(const Config& c, json& out) {
  const auto d = load_driver(c);
  // Levels ≤ N + 1 are computed so the direct values are available for comparison.
  Config cc = c;
  cc.levels = c.levels + 1;
  const auto sig = rp::build_signature(d, signature_options(cc, d));
  std::vector<mi::MultiIndex> targets;
  std::stringstream ss(c.betas);
  for (std::string part; std::getline(ss, part, ';');)
    if (!part.empty()) targets.push_back(mi::parse_multiindex(part));
  if (targets.empty()) targets = mi::populated_of_length(d.labels(), c.levels + 1);
  const auto pairs = rp::sample_pairs(sig, rp::PairPolicy::parse(c.pairs, c.seed));
  const double tol = tol_or(c, 1e-6);
  json rows = json::array();
  double worst = 0;
  for (const auto& beta : targets) {
    if (mi::length(beta) != c.levels + 1)
      throw std::invalid_argument("target " + mi::to_string(beta) + " must have length levels + 1 = " + std::to_string(c.levels + 1));
    for (const auto& [s, t] : pairs) {
      const auto r = rp::extend_level(sig, beta, s, t, c.depth, tol);
      const double direct = sig.value(s, t, beta);
      const double gap = std::abs(r.value - direct);
      worst = std::max(worst, gap);
      rows.push_back({{"beta", mi::to_string(beta)},
                      {"s", s},
                      {"t", t},
                      {"value", r.value},
                      {"extrapolated", r.extrapolated},
                      {"direct", direct},
                      {"gap", gap},
                      {"extrapolated_gap", std::abs(r.extrapolated - direct)},
                      {"required_depth", r.required_depth},
                      {"increments", r.increments}});
    }
  }
  out["driver"] = driver_json(d);
  out["from_levels"] = c.levels;
  out["depth"] = c.depth;
  out["rows"] = rows;
  out["max_gap"] = check_json(worst, tol);
  return worst <= tol ? ok : tolerance;
}

void emit(const Config& c, const json& j) {
  const std::string text = io::dump(j) + "\n";
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f || !(f << text)) throw IoError("cannot write " + c.out);
}

int fail(const std::string& category, const std::string& message, int code) {
  std::cerr << io::dump({{"error", {{"category", category}, {"message", message}}}}) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-index and tree algebra, signatures, translations and expansions"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--out", c.out, "Write the JSON report here instead of stdout");
  app.add_option("--seed", c.seed, "Seed for random pair sampling");
  app.add_option("--tol", c.tol, "Override the command's tolerance");

  auto driver_opts = [&](CLI::App* s) {
    s->add_option("--driver", c.driver, "Closed-form drivers, one per label: linear[:slope[:offset]], sin|cos[:amp[:freq[:phase]]], poly:c0:c1:...")
        ->delimiter(',');
    s->add_option("--csv", c.csv, "Driver samples as CSV with header t,X_a,X_b,...");
    s->add_option("--grid,-M", c.M, "Grid size for closed-form drivers");
    s->add_option("--levels,-N", c.levels, "Truncation level");
    s->add_option("--quadrature", c.quadrature, "trapezoid or simpson");
    s->add_option("--bases", c.bases, "Number of base-point strides");
    s->add_option("--threads", c.threads, "Worker threads");
    s->add_option("--pairs", c.pairs, "dyadic, all or random:<k>");
    s->add_option("--alpha", c.alpha, "Hölder exponent per node");
  };

  std::vector<std::pair<CLI::App*, int (*)(const Config&, json&)>> cmds;
  auto* en = app.add_subcommand("enumerate", "Populated multi-indices and trees with counts");
  en->add_option("--labels", c.labels);
  en->add_option("--levels,-N", c.levels);
  en->add_option("--nodes", c.nodes, "Also list trees up to this many nodes");
  cmds.emplace_back(en, cmd_enumerate);

  auto* tb = app.add_subcommand("tables", "Coproduct and product tables with a Hopf audit");
  tb->add_option("--algebra", c.algebra, "td, r2, rl or rhat");
  tb->add_option("--labels", c.labels);
  tb->add_option("--degree", c.degree);
  tb->add_option("--hat", c.hat, "Labels in the hat set")->delimiter(',');
  cmds.emplace_back(tb, cmd_tables);

  auto* sg = app.add_subcommand("signature", "Multi-index signature values and Hölder table");
  driver_opts(sg);
  cmds.emplace_back(sg, cmd_signature);

  auto* ch = app.add_subcommand("chen", "Chen defect over base-point triples");
  driver_opts(ch);
  cmds.emplace_back(ch, cmd_chen);

  auto* tr = app.add_subcommand("translate", "Translated signature and counterterm hierarchy check");
  driver_opts(tr);
  tr->add_option("--spec", c.spec_path, "Translation spec JSON: flavor, hat, bound, terms[{gamma,label,coef}]");
  cmds.emplace_back(tr, cmd_translate);

  auto* dc = app.add_subcommand("dict", "Multi-index against branched signature");
  driver_opts(dc);
  cmds.emplace_back(dc, cmd_dict);

  auto* ex = app.add_subcommand("expansion", "Truncated expansions against an ODE solve");
  driver_opts(ex);
  ex->add_option("--field", c.fields, "One per label: poly:c0:c1:..., sin:amp:freq:phase, exp:amp:rate")->delimiter(',');
  ex->add_option("--y0", c.y0);
  ex->add_option("--h0", c.h0, "First interval length (default t1 - t0)");
  ex->add_option("--halvings", c.halvings);
  ex->add_option("--local-grid", c.local_M, "Grid size per interval (default --grid)");
  cmds.emplace_back(ex, cmd_expansion);

  auto* xt = app.add_subcommand("extend", "Rebuild level N+1 from levels <= N by sewing");
  driver_opts(xt);
  xt->add_option("--beta", c.betas, "Targets of length N+1, separated by ';' (default: all)");
  xt->add_option("--depth", c.depth, "Dyadic depth");
  cmds.emplace_back(xt, cmd_extend);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  // The expansion compares against a 1e-12 ODE solve, so it defaults to Simpson.
  if (ex->parsed() && ex->count("--quadrature") == 0) c.quadrature = "simpson";

  try {
    for (const auto& [sub, fn] : cmds) {
      if (!sub->parsed()) continue;
      json report;
      report["command"] = sub->get_name();
      const int code = fn(c, report);
      report["status"] = code == ok ? "pass" : "fail";
      emit(c, report);
      return code;
    }
  } catch (const IoError& e) {
    return fail("io", e.what(), io_error);
  } catch (const SchemaError& e) {
    return fail("schema", e.what(), schema);
  } catch (const std::invalid_argument& e) {
    return fail("precondition", e.what(), precondition);
  } catch (const std::out_of_range& e) {
    return fail("precondition", e.what(), precondition);
  } catch (const std::exception& e) {
    return fail("numerical", e.what(), numerical);
  }
  return usage;
}
