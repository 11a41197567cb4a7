#include "mirp/roughpath/driver.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mirp::rp {

ClosedForm ClosedForm::linear(double slope, double offset) {
  ClosedForm f;
  f.kind = Kind::linear;
  f.slope = slope;
  f.offset = offset;
  return f;
}

ClosedForm ClosedForm::sine(double amp, double freq, double phase) {
  ClosedForm f;
  f.kind = Kind::sin;
  f.amp = amp;
  f.freq = freq;
  f.phase = phase;
  return f;
}

ClosedForm ClosedForm::cosine(double amp, double freq, double phase) {
  ClosedForm f = sine(amp, freq, phase);
  f.kind = Kind::cos;
  return f;
}

ClosedForm ClosedForm::poly(std::vector<double> coeffs) {
  ClosedForm f;
  f.kind = Kind::poly;
  f.coeffs = std::move(coeffs);
  return f;
}

double ClosedForm::value(double t) const {
  const double w = 2 * std::numbers::pi * freq;
  switch (kind) {
    case Kind::linear:
      return offset + slope * t;
    case Kind::sin:
      return amp * std::sin(w * t + phase);
    case Kind::cos:
      return amp * std::cos(w * t + phase);
    case Kind::poly: {
      double r = 0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * t + *it;
      return r;
    }
  }
  return 0;
}

double ClosedForm::derivative(double t) const {
  const double w = 2 * std::numbers::pi * freq;
  switch (kind) {
    case Kind::linear:
      return slope;
    case Kind::sin:
      return amp * w * std::cos(w * t + phase);
    case Kind::cos:
      return -amp * w * std::sin(w * t + phase);
    case Kind::poly: {
      double r = 0;
      for (std::size_t i = coeffs.size(); i-- > 1;) r = r * t + static_cast<double>(i) * coeffs[i];
      return r;
    }
  }
  return 0;
}

std::string kind_name(ClosedForm::Kind k) {
  switch (k) {
    case ClosedForm::Kind::linear:
      return "linear";
    case ClosedForm::Kind::sin:
      return "sin";
    case ClosedForm::Kind::cos:
      return "cos";
    case ClosedForm::Kind::poly:
      return "poly";
  }
  return "?";
}

ClosedForm::Kind parse_kind(const std::string& s) {
  if (s == "linear") return ClosedForm::Kind::linear;
  if (s == "sin") return ClosedForm::Kind::sin;
  if (s == "cos") return ClosedForm::Kind::cos;
  if (s == "poly") return ClosedForm::Kind::poly;
  throw std::invalid_argument("unknown driver type '" + s + "' (expected linear, sin, cos or poly)");
}

std::string ClosedForm::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::linear:
      os << offset << " + " << slope << "*t";
      break;
    case Kind::sin:
    case Kind::cos:
      os << amp << "*" << kind_name(kind) << "(2*pi*" << freq << "*t + " << phase << ")";
      break;
    case Kind::poly:
      for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? " + " : "") << coeffs[i] << "*t^" << i;
      break;
  }
  return os.str();
}

double Driver::time(int m) const {
  if (m == M) return t1;
  return t0 + (t1 - t0) * static_cast<double>(m) / M;
}

Driver Driver::sample(const std::vector<ClosedForm>& forms, int M, double t0, double t1) {
  if (M < 1) throw std::invalid_argument("grid size M must be at least 1");
  if (forms.empty()) throw std::invalid_argument("driver needs at least one label");
  Driver d;
  d.t0 = t0;
  d.t1 = t1;
  d.M = M;
  d.forms = forms;
  for (std::size_t l = 0; l < forms.size(); ++l) {
    d.names.push_back("X_" + std::to_string(l));
    std::vector<double> xs(M + 1);
    for (int m = 0; m <= M; ++m) xs[m] = forms[l].value(d.time(m));
    d.x.push_back(std::move(xs));
  }
  return d;
}

void Driver::validate() const {
  if (M < 1) throw std::invalid_argument("driver grid is empty");
  if (x.empty()) throw std::invalid_argument("driver has no labels");
  if (names.size() != x.size()) throw std::invalid_argument("driver label names do not match the sample columns");
  for (const auto& col : x)
    if (static_cast<int>(col.size()) != M + 1) throw std::invalid_argument("driver samples are ragged");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

double parse_double(const std::string& s, int line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty())
    throw std::invalid_argument("driver CSV line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

}  // namespace

Driver Driver::from_csv_text(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("driver CSV is empty");
  auto header = split(line);
  if (header.size() < 2 || header[0] != "t")
    throw std::invalid_argument("driver CSV header must be t,X_<label>,...");
  Driver d;
  d.names.assign(header.begin() + 1, header.end());
  d.x.assign(d.names.size(), {});
  std::vector<double> ts;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \r\t") == std::string::npos) continue;
    auto cells = split(line);
    if (cells.size() != header.size())
      throw std::invalid_argument("driver CSV line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(header.size()) + " columns");
    ts.push_back(parse_double(cells[0], lineno));
    for (std::size_t l = 1; l < cells.size(); ++l) d.x[l - 1].push_back(parse_double(cells[l], lineno));
  }
  if (ts.size() < 2) throw std::invalid_argument("driver CSV needs at least two samples");
  d.M = static_cast<int>(ts.size()) - 1;
  const double h = 1.0 / d.M;
  for (int m = 0; m <= d.M; ++m)
    if (std::abs(ts[m] - m * h) > 1e-9)
      throw std::invalid_argument("driver CSV times must be uniform on [0,1]; row " + std::to_string(m + 2) +
                                  " has t=" + std::to_string(ts[m]));
  d.validate();
  return d;
}

Driver Driver::from_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open driver file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return from_csv_text(ss.str());
}

std::string Driver::to_csv() const {
  std::ostringstream os;
  os << "t";
  for (const auto& n : names) os << "," << n;
  os << "\n";
  char buf[64];
  for (int m = 0; m <= M; ++m) {
    std::snprintf(buf, sizeof buf, "%.17g", time(m));
    os << buf;
    for (const auto& col : x) {
      std::snprintf(buf, sizeof buf, "%.17g", col[m]);
      os << "," << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace mirp::rp
