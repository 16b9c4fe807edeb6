#include "chemo/jout.hpp"

#include <cmath>
#include <cstdio>

namespace chemo {

std::string format_g17(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JValue JValue::array() {
  JValue v;
  v.kind_ = Kind::kArray;
  return v;
}

JValue JValue::object() {
  JValue v;
  v.kind_ = Kind::kObject;
  return v;
}

JValue JValue::array_of(const std::vector<double>& values) {
  JValue v = array();
  v.items_.reserve(values.size());
  for (double d : values) v.items_.emplace_back(d);
  return v;
}

JValue& JValue::push(JValue v) {
  items_.push_back(std::move(v));
  return *this;
}

JValue& JValue::set(const std::string& key, JValue v) {
  fields_.emplace_back(key, std::move(v));
  return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void newline_indent(std::string& out, int indent, int depth) {
  if (indent <= 0) return;
  out += '\n';
  out.append(static_cast<size_t>(indent) * depth, ' ');
}

}  // namespace

void JValue::write(std::string& out, int indent, int depth) const {
  switch (kind_) {
    case Kind::kNull: out += "null"; break;
    case Kind::kBool: out += bool_ ? "true" : "false"; break;
    case Kind::kNumber: out += format_g17(num_); break;
    case Kind::kInt: {
      char buf[24];
      std::snprintf(buf, sizeof(buf), "%lld", int_);
      out += buf;
      break;
    }
    case Kind::kString: write_escaped(out, str_); break;
    case Kind::kArray: {
      out += '[';
      for (size_t i = 0; i < items_.size(); ++i) {
        if (i) out += indent > 0 ? ", " : ",";
        items_[i].write(out, 0, depth + 1);  // arrays stay on one line
      }
      out += ']';
      break;
    }
    case Kind::kObject: {
      out += '{';
      for (size_t i = 0; i < fields_.size(); ++i) {
        if (i) out += ',';
        newline_indent(out, indent, depth + 1);
        write_escaped(out, fields_[i].first);
        out += indent > 0 ? ": " : ":";
        fields_[i].second.write(out, indent, depth + 1);
      }
      if (!fields_.empty()) newline_indent(out, indent, depth);
      out += '}';
      break;
    }
  }
}

std::string JValue::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  return out;
}

}  // namespace chemo
