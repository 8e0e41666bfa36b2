#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace blip::cli {

/// 17 significant digits; a non-finite value is a hard failure.
std::string format_real(double v);

/// Minimal pretty-printing JSON emitter that keeps key order and writes every
/// real with format_real.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& os) : os_(os) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::size_t v);
  /// Emits an already formatted number or literal.
  JsonWriter& raw(std::string_view token);

  template <class T>
  JsonWriter& field(std::string_view k, const T& v) {
    key(k);
    return value(v);
  }

  /// Terminates the document with a newline.
  void finish();

 private:
  struct Frame {
    bool object = false;
    std::size_t count = 0;
  };

  void before_value();
  void indent();

  std::ostream& os_;
  std::vector<Frame> stack_;
  bool after_key_ = false;
};

/// Table with named columns, rendered as CSV or as a JSON array of objects.
/// Cells are pre-formatted strings; `quoted` marks text columns for JSON.
class Table {
 public:
  Table(std::vector<std::string> columns, std::vector<bool> quoted);

  void add_row(std::vector<std::string> cells);
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  void write_csv(std::ostream& os) const;
  void write_json(JsonWriter& w) const;

 private:
  std::vector<std::string> columns_;
  std::vector<bool> quoted_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace blip::cli
