#pragma once

// Flat key-value records and numeric tables, written as JSON or CSV with a
// schema sidecar that annotates every field with its unit.

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "gwdecoh/quantity.hpp"

namespace gwdecoh {

enum class Format { Json, Csv };

Format format_from_string(const std::string& name);
std::string extension(Format f);

struct Field {
  std::string key;
  /// Non-finite numbers are written as null (JSON) or inf/nan (CSV).
  std::variant<double, std::string> value;
  /// Unit annotation; "1" for dimensionless numbers, "text" for strings.
  std::string unit;
  std::string description;
};

class Record {
 public:
  void add(std::string key, double value, std::string unit, std::string description);
  void add(std::string key, const Quantity& value, std::string description);
  void add_text(std::string key, std::string value, std::string description);
  /// Appends `other` with every key prefixed by `prefix` + ".".
  void merge(const std::string& prefix, const Record& other);

  const std::vector<Field>& fields() const { return fields_; }
  const Field& at(const std::string& key) const;
  double number(const std::string& key) const;

  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
  nlohmann::ordered_json schema() const;

 private:
  std::vector<Field> fields_;
};

struct Column {
  std::string name;
  std::string unit;
  std::string description;
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const;
  nlohmann::ordered_json schema() const;
};

/// Shortest round-trip decimal form.
std::string format_number(double v);

}  // namespace gwdecoh
