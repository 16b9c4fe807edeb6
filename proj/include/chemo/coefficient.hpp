#pragma once

#include <array>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "chemo/expression.hpp"
#include "chemo/grid.hpp"

namespace chemo {

enum class CoefficientLabel { a0, a1, a2 };

const char* to_string(CoefficientLabel label);

// Samples of a coefficient on its own lattice: uniform time levels on
// [t0,t1] and uniform spatial nodes spanning [0,L] per axis (node-centered,
// so the lattice covers the whole domain). Evaluation interpolates linearly
// in t and multilinearly in x; queries outside the lattice throw.
struct TabulatedData {
  int dimension = 1;
  double t0 = 0.0, t1 = 0.0;
  int nt = 1;
  std::array<double, 2> xmax{1.0, 0.0};  // nodes span [0, xmax] per axis
  std::array<int, 2> nx{2, 1};
  std::vector<double> values;  // [it][ix2][ix1], x1 fastest

  double eval(double t, double x1, double x2) const;
  void validate() const;
};

// A coefficient a_i(t,x): a constant, an analytic expression in (t,x), or
// a tabulated grid. Expressions subsume both separable f(t)*g(x) products
// and trigonometric sums.
class CoefficientField {
 public:
  CoefficientField() : payload_(0.0) {}

  static CoefficientField constant(double value,
                                   CoefficientLabel label = CoefficientLabel::a0);
  static CoefficientField analytic(const std::string& expr_source,
                                   CoefficientLabel label = CoefficientLabel::a0);
  static CoefficientField tabulated(TabulatedData data,
                                    CoefficientLabel label = CoefficientLabel::a0);

  double evaluate(double t, double x1, double x2 = 0.0) const;
  void evaluate_on_grid(double t, const GridDomain& domain,
                        std::span<double> out) const;

  // True when the value cannot depend on (t,x).
  bool is_constant() const;
  double constant_value() const;  // throws NotConstantCoefficients
  bool time_dependent() const;

  CoefficientLabel label() const { return label_; }
  void set_label(CoefficientLabel label) { label_ = label; }

  // Stable one-line description used for config hashing and reports.
  std::string describe() const;

 private:
  std::variant<double, ExprProgram, TabulatedData> payload_;
  CoefficientLabel label_ = CoefficientLabel::a0;
};

using CoefficientSet = std::array<CoefficientField, 3>;

}  // namespace chemo
