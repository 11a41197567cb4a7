#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mirp::rp {

// Closed-form scalar path t ↦ X(t).
struct ClosedForm {
  enum class Kind { linear, sin, cos, poly };
  Kind kind = Kind::linear;
  double slope = 1, offset = 0;          // linear: offset + slope·t
  double amp = 1, freq = 1, phase = 0;   // sin/cos: amp·sin(2π·freq·t + phase)
  std::vector<double> coeffs;            // poly: Σ c_i t^i

  static ClosedForm linear(double slope = 1, double offset = 0);
  static ClosedForm sine(double amp = 1, double freq = 1, double phase = 0);
  static ClosedForm cosine(double amp = 1, double freq = 1, double phase = 0);
  static ClosedForm poly(std::vector<double> coeffs);

  double value(double t) const;
  double derivative(double t) const;
  std::string describe() const;
};

std::string kind_name(ClosedForm::Kind k);
ClosedForm::Kind parse_kind(const std::string& s);

// Samples X^ℓ(t_m), t_m = t0 + m(t1 − t0)/M, for every label.
struct Driver {
  std::vector<std::string> names;
  double t0 = 0, t1 = 1;
  int M = 0;
  std::vector<std::vector<double>> x;             // x[ℓ][m]
  std::optional<std::vector<ClosedForm>> forms;   // present for closed-form drivers

  int labels() const { return static_cast<int>(x.size()); }
  double h() const { return (t1 - t0) / M; }
  double time(int m) const;

  static Driver sample(const std::vector<ClosedForm>& forms, int M, double t0 = 0, double t1 = 1);
  // Header "t,X_a,X_b,…"; t must be uniform from 0 to 1.
  static Driver from_csv(const std::string& path);
  static Driver from_csv_text(const std::string& text);
  std::string to_csv() const;

  // Throws std::invalid_argument on an empty grid or ragged samples.
  void validate() const;
};

}  // namespace mirp::rp
