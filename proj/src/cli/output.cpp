#include "blip/cli/output.hpp"

#include <cmath>

#include <fmt/format.h>

#include "blip/error.hpp"

namespace blip::cli {
namespace {

void write_string(std::ostream& os, std::string_view s) {
  os << '"';
  for (char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      case '\r': os << "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          os << fmt::format("\\u{:04x}", static_cast<unsigned>(c));
        } else {
          os << c;
        }
    }
  }
  os << '"';
}

}  // namespace

std::string format_real(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::consistency, "non-finite value in output");
  return fmt::format("{:.17g}", v + 0.0);  // folds -0 into 0
}

void JsonWriter::indent() {
  os_ << '\n';
  for (std::size_t i = 0; i < stack_.size(); ++i) os_ << "  ";
}

void JsonWriter::before_value() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (stack_.empty()) return;
  if (stack_.back().count++ > 0) os_ << ',';
  indent();
}

JsonWriter& JsonWriter::begin_object() {
  before_value();
  os_ << '{';
  stack_.push_back({true, 0});
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  const Frame f = stack_.back();
  stack_.pop_back();
  if (f.count > 0) indent();
  os_ << '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  before_value();
  os_ << '[';
  stack_.push_back({false, 0});
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  const Frame f = stack_.back();
  stack_.pop_back();
  if (f.count > 0) indent();
  os_ << ']';
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  before_value();
  write_string(os_, k);
  os_ << ": ";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  const std::string s = format_real(v);
  before_value();
  os_ << s;
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  before_value();
  write_string(os_, v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  before_value();
  os_ << (v ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
  before_value();
  os_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(std::size_t v) {
  before_value();
  os_ << v;
  return *this;
}

JsonWriter& JsonWriter::raw(std::string_view token) {
  before_value();
  os_ << token;
  return *this;
}

void JsonWriter::finish() { os_ << '\n'; }

Table::Table(std::vector<std::string> columns, std::vector<bool> quoted)
    : columns_(std::move(columns)), quoted_(std::move(quoted)) {
  if (quoted_.size() != columns_.size()) throw Error(ErrorKind::consistency, "table column flags mismatch");
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) throw Error(ErrorKind::consistency, "table row has the wrong width");
  rows_.push_back(std::move(cells));
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) os << (c ? "," : "") << columns_[c];
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
    os << '\n';
  }
}

void Table::write_json(JsonWriter& w) const {
  w.begin_array();
  for (const auto& row : rows_) {
    w.begin_object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      w.key(columns_[c]);
      if (quoted_[c]) {
        w.value(std::string_view(row[c]));
      } else {
        w.raw(row[c]);
      }
    }
    w.end_object();
  }
  w.end_array();
}

}  // namespace blip::cli
