#include <cmath>
#include <cstdio>
#include <ostream>

#include "paraprod/cli.hpp"

namespace paraprod::cli {

namespace {

std::string csv_cell(const nlohmann::json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "nan";
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Check make_check(std::string name, std::string param, double value, std::string relation,
                 double threshold) {
  bool pass = false;
  if (relation == "<") pass = value < threshold;
  else if (relation == "<=") pass = value <= threshold;
  else if (relation == ">") pass = value > threshold;
  else if (relation == ">=") pass = value >= threshold;
  else if (relation == "==") pass = value == threshold;
  else throw std::invalid_argument("unknown relation " + relation);
  return {std::move(name), std::move(param), value, threshold, std::move(relation), pass};
}

Report::Report(std::string command, nlohmann::json config)
    : command_(std::move(command)), config_(std::move(config)) {}

void Report::add_check(Check c) { checks_.push_back(std::move(c)); }

void Report::add_table(Table t) { tables_.push_back(std::move(t)); }

bool Report::passed() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

const Table* Report::table(const std::string& name) const {
  for (const auto& t : tables_)
    if (t.name == name) return &t;
  return nullptr;
}

nlohmann::json Report::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_)
    checks.push_back({{"name", c.name},
                      {"param", c.param},
                      {"value", number(c.value)},
                      {"relation", c.relation},
                      {"threshold", number(c.threshold)},
                      {"pass", c.pass}});
  nlohmann::json tables = nlohmann::json::object();
  for (const auto& t : tables_) tables[t.name] = {{"columns", t.columns}, {"rows", t.rows}};
  return {{"command", command_},
          {"status", passed() ? "pass" : "fail"},
          {"config", config_},
          {"summary", summary_},
          {"checks", checks},
          {"tables", tables}};
}

void Report::write_csv(std::ostream& os) const {
  const Table* t = primary_.empty() ? nullptr : table(primary_);
  if (t == nullptr) {
    os << "check,param,value,relation,threshold,pass\n";
    for (const auto& c : checks_)
      os << csv_cell(c.name) << ',' << csv_cell(c.param) << ',' << format_double(c.value) << ','
         << c.relation << ',' << format_double(c.threshold) << ',' << (c.pass ? "true" : "false") << '\n';
    return;
  }
  for (std::size_t i = 0; i < t->columns.size(); ++i) os << (i ? "," : "") << t->columns[i];
  os << '\n';
  for (const auto& row : t->rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

void Report::write(std::ostream& os, Format format) const {
  if (format == Format::csv)
    write_csv(os);
  else
    os << to_json().dump(2) << '\n';
}

}  // namespace paraprod::cli
