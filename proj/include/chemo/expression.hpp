#pragma once

#include <string>
#include <vector>

namespace chemo {

// A small arithmetic expression over (t, x1, x2): numbers, pi, the
// variables t / x1 (alias x) / x2 (alias y), + - * /, unary minus,
// sin(...) and cos(...). Parsed once into a flat program; evaluation is a
// single linear pass, so it is cheap enough for per-cell per-step use.
class ExprProgram {
 public:
  enum class Op {
    kConst,
    kVarT,
    kVarX1,
    kVarX2,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kNeg,
    kSin,
    kCos,
  };

  struct Node {
    Op op;
    double constant = 0.0;
    int lhs = -1;
    int rhs = -1;
  };

  double eval(double t, double x1, double x2,
              std::vector<double>& scratch) const;
  double eval(double t, double x1, double x2 = 0.0) const;

  bool uses_t() const { return uses_t_; }
  bool uses_space() const { return uses_x1_ || uses_x2_; }
  bool uses_x2() const { return uses_x2_; }
  const std::string& source() const { return source_; }
  bool empty() const { return nodes_.empty(); }

  // Throws ConfigError with a position diagnostic on malformed input.
  static ExprProgram parse(const std::string& text);

 private:
  std::vector<Node> nodes_;  // operands always precede their consumers
  bool uses_t_ = false;
  bool uses_x1_ = false;
  bool uses_x2_ = false;
  std::string source_;

  friend class ExprParser;
};

}  // namespace chemo
