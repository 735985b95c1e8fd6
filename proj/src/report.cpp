#include "gwdecoh/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "gwdecoh/error.hpp"

namespace gwdecoh {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

Format format_from_string(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw ConfigError("--format: expected json or csv, got '" + name + "'");
}

std::string extension(Format f) { return f == Format::Json ? "json" : "csv"; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

void Record::add(std::string key, double value, std::string unit, std::string description) {
  fields_.push_back({std::move(key), value, std::move(unit), std::move(description)});
}

void Record::add(std::string key, const Quantity& value, std::string description) {
  fields_.push_back({std::move(key), value.value(), value.dim().to_string(), std::move(description)});
}

void Record::add_text(std::string key, std::string value, std::string description) {
  fields_.push_back({std::move(key), std::move(value), "text", std::move(description)});
}

void Record::merge(const std::string& prefix, const Record& other) {
  for (const auto& f : other.fields_) {
    Field copy = f;
    copy.key = prefix + "." + f.key;
    fields_.push_back(std::move(copy));
  }
}

const Field& Record::at(const std::string& key) const {
  for (const auto& f : fields_) {
    if (f.key == key) return f;
  }
  throw Error("record has no field '" + key + "'");
}

double Record::number(const std::string& key) const { return std::get<double>(at(key).value); }

nlohmann::ordered_json Record::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& f : fields_) {
    if (const auto* d = std::get_if<double>(&f.value)) {
      j[f.key] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
    } else {
      j[f.key] = std::get<std::string>(f.value);
    }
  }
  return j;
}

std::string Record::to_csv() const {
  std::ostringstream header;
  std::ostringstream row;
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    const auto& f = fields_[i];
    if (i > 0) {
      header << ',';
      row << ',';
    }
    header << csv_escape(f.key);
    if (const auto* d = std::get_if<double>(&f.value)) {
      row << format_number(*d);
    } else {
      row << csv_escape(std::get<std::string>(f.value));
    }
  }
  return header.str() + "\n" + row.str() + "\n";
}

nlohmann::ordered_json Record::schema() const {
  nlohmann::ordered_json fields = nlohmann::ordered_json::object();
  for (const auto& f : fields_) {
    fields[f.key] = {{"unit", f.unit},
                     {"type", std::holds_alternative<double>(f.value) ? "number" : "string"},
                     {"description", f.description}};
  }
  return {{"fields", fields}};
}

std::string Table::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_escape(columns[i].name);
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_number(r[i]);
    os << '\n';
  }
  return os.str();
}

nlohmann::ordered_json Table::schema() const {
  nlohmann::ordered_json cols = nlohmann::ordered_json::object();
  for (const auto& c : columns) cols[c.name] = {{"unit", c.unit}, {"type", "number"}, {"description", c.description}};
  return {{"columns", cols}};
}

}  // namespace gwdecoh
