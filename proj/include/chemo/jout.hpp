#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace chemo {

// Minimal JSON document builder. All floating-point numbers are emitted
// with 17 significant digits so artifacts round-trip bit-exactly and stay
// byte-stable across runs.
class JValue {
 public:
  JValue() : kind_(Kind::kNull) {}
  JValue(bool b) : kind_(Kind::kBool), bool_(b) {}
  JValue(double d) : kind_(Kind::kNumber), num_(d) {}
  JValue(int i) : kind_(Kind::kInt), int_(i) {}
  JValue(long long i) : kind_(Kind::kInt), int_(i) {}
  JValue(size_t i) : kind_(Kind::kInt), int_(static_cast<long long>(i)) {}
  JValue(const char* s) : kind_(Kind::kString), str_(s) {}
  JValue(std::string s) : kind_(Kind::kString), str_(std::move(s)) {}

  static JValue array();
  static JValue object();
  static JValue array_of(const std::vector<double>& values);

  JValue& push(JValue v);                          // arrays
  JValue& set(const std::string& key, JValue v);   // objects

  std::string dump(int indent = 0) const;

 private:
  enum class Kind { kNull, kBool, kNumber, kInt, kString, kArray, kObject };
  Kind kind_;
  bool bool_ = false;
  double num_ = 0.0;
  long long int_ = 0;
  std::string str_;
  std::vector<JValue> items_;
  std::vector<std::pair<std::string, JValue>> fields_;

  void write(std::string& out, int indent, int depth) const;
};

std::string format_g17(double v);

}  // namespace chemo
