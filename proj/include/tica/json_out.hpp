#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace tica {

// Floats in reports carry 12 significant digits so that identical runs
// serialize byte-identically regardless of the default ostream precision.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e309" : "-1e309";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Minimal ordered JSON emitter: keys appear exactly in insertion order.
class JsonWriter {
 public:
  std::string str() const { return out_; }

  JsonWriter& begin_object() {
    pre_value();
    out_ += '{';
    fresh_ = true;
    return *this;
  }
  JsonWriter& end_object() {
    out_ += '}';
    fresh_ = false;
    return *this;
  }
  JsonWriter& begin_array() {
    pre_value();
    out_ += '[';
    fresh_ = true;
    return *this;
  }
  JsonWriter& end_array() {
    out_ += ']';
    fresh_ = false;
    return *this;
  }

  JsonWriter& key(const std::string& k) {
    pre_value();
    append_string(k);
    out_ += ':';
    pending_value_ = true;
    return *this;
  }

  JsonWriter& value(const std::string& v) {
    pre_value();
    append_string(v);
    return *this;
  }
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& value(double v) {
    pre_value();
    out_ += format_double(v);
    return *this;
  }
  JsonWriter& value(std::uint64_t v) {
    pre_value();
    out_ += std::to_string(v);
    return *this;
  }
  JsonWriter& value(std::int64_t v) {
    pre_value();
    out_ += std::to_string(v);
    return *this;
  }
  JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter& value(bool v) {
    pre_value();
    out_ += v ? "true" : "false";
    return *this;
  }
  JsonWriter& null() {
    pre_value();
    out_ += "null";
    return *this;
  }

  template <typename T>
  JsonWriter& kv(const std::string& k, const T& v) {
    return key(k).value(v);
  }
  JsonWriter& kv_null(const std::string& k) { return key(k).null(); }

 private:
  void pre_value() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!fresh_ && !out_.empty() && out_.back() != '{' && out_.back() != '[')
      out_ += ',';
    fresh_ = false;
  }

  void append_string(const std::string& s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  bool fresh_ = true;
  bool pending_value_ = false;
};

}  // namespace tica
