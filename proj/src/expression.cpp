#include "chemo/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "chemo/errors.hpp"

namespace chemo {

double ExprProgram::eval(double t, double x1, double x2,
                         std::vector<double>& scratch) const {
  scratch.resize(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    switch (n.op) {
      case Op::kConst: scratch[i] = n.constant; break;
      case Op::kVarT: scratch[i] = t; break;
      case Op::kVarX1: scratch[i] = x1; break;
      case Op::kVarX2: scratch[i] = x2; break;
      case Op::kAdd: scratch[i] = scratch[n.lhs] + scratch[n.rhs]; break;
      case Op::kSub: scratch[i] = scratch[n.lhs] - scratch[n.rhs]; break;
      case Op::kMul: scratch[i] = scratch[n.lhs] * scratch[n.rhs]; break;
      case Op::kDiv: scratch[i] = scratch[n.lhs] / scratch[n.rhs]; break;
      case Op::kNeg: scratch[i] = -scratch[n.lhs]; break;
      case Op::kSin: scratch[i] = std::sin(scratch[n.lhs]); break;
      case Op::kCos: scratch[i] = std::cos(scratch[n.lhs]); break;
    }
  }
  return scratch.back();
}

double ExprProgram::eval(double t, double x1, double x2) const {
  std::vector<double> scratch;
  return eval(t, x1, x2, scratch);
}

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  ExprProgram run() {
    ExprProgram prog;
    prog.source_ = text_;
    prog_ = &prog;
    int root = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    if (root < 0) fail("empty expression");
    return prog;
  }

 private:
  using Op = ExprProgram::Op;

  const std::string& text_;
  size_t pos_ = 0;
  ExprProgram* prog_ = nullptr;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression \"" + text_ + "\": " + what + " at offset " +
                      std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  int emit(Op op, double c = 0.0, int lhs = -1, int rhs = -1) {
    prog_->nodes_.push_back({op, c, lhs, rhs});
    return static_cast<int>(prog_->nodes_.size()) - 1;
  }

  int parse_expr() {
    int lhs;
    if (consume('-')) {
      lhs = emit(Op::kNeg, 0.0, parse_term());
    } else {
      consume('+');
      lhs = parse_term();
    }
    for (;;) {
      if (consume('+')) {
        lhs = emit(Op::kAdd, 0.0, lhs, parse_term());
      } else if (consume('-')) {
        lhs = emit(Op::kSub, 0.0, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  int parse_term() {
    int lhs = parse_factor();
    for (;;) {
      if (consume('*')) {
        lhs = emit(Op::kMul, 0.0, lhs, parse_factor());
      } else if (consume('/')) {
        lhs = emit(Op::kDiv, 0.0, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  int parse_factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a factor");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      int inner = parse_expr();
      if (!consume(')')) fail("missing ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return emit(Op::kNeg, 0.0, parse_factor());
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    fail("unexpected character");
  }

  int parse_number() {
    const char* start = text_.c_str() + pos_;
    char* end = nullptr;
    double value = std::strtod(start, &end);
    if (end == start) fail("malformed number");
    pos_ += static_cast<size_t>(end - start);
    return emit(Op::kConst, value);
  }

  int parse_ident() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (name == "t") {
      prog_->uses_t_ = true;
      return emit(Op::kVarT);
    }
    if (name == "x" || name == "x1") {
      prog_->uses_x1_ = true;
      return emit(Op::kVarX1);
    }
    if (name == "y" || name == "x2") {
      prog_->uses_x2_ = true;
      return emit(Op::kVarX2);
    }
    if (name == "pi") return emit(Op::kConst, M_PI);
    if (name == "sin" || name == "cos") {
      if (!consume('(')) fail("expected '(' after " + name);
      int arg = parse_expr();
      if (!consume(')')) fail("missing ')'");
      return emit(name == "sin" ? Op::kSin : Op::kCos, 0.0, arg);
    }
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }
};

ExprProgram ExprProgram::parse(const std::string& text) {
  return ExprParser(text).run();
}

}  // namespace chemo
