/**
 * @file cli.hpp
 * @brief Experiment configuration, symbol parsing, report emission and the
 *        subcommands behind the `paraprod` executable.
 *
 * Exit codes: 0 all checks pass, 1 a numerical check failed (the report is
 * still written), 2 configuration error.
 */

#ifndef PARAPROD_CLI_HPP_INCLUDED_
#define PARAPROD_CLI_HPP_INCLUDED_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "paraprod/fourier_core.hpp"
#include "paraprod/littlewood_paley.hpp"

namespace paraprod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct RunConfig {
  std::size_t grid_size = 512;
  int j_min = 1;
  int j_max = 6;
  std::string symbol = "cos:1";
  std::vector<std::pair<double, double>> exponents = {{4.0, 4.0}, {3.0, 6.0}, {6.0, 3.0}};
  std::uint64_t seed = 42;
  std::string output_path;  ///< empty: standard output
  Format format = Format::json;

  int trials = 100;       ///< random trials per randomized check
  long n_max = 0;         ///< weak-null table length; 0 picks the largest unaliased value
  int max_level = -1;     ///< Carleson levels; -1 picks min(7, deepest resolvable)
  double s = 1.0;         ///< Bessel / Sobolev order
  std::vector<long> k_list;  ///< Rellich cut-offs
  long tensor_size = 64;  ///< gallery window parameter M
  int restarts = 16;      ///< bilinear norm restarts
};

/// Checks the invariants shared by all subcommands; throws ConfigError.
void validate(const RunConfig& cfg);

/// Overrides fields of cfg with the keys present in a JSON object.
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);

/// "p:q,p:q" -> pairs.
std::vector<std::pair<double, double>> parse_exponents(const std::string& text);

/// Symbol mini-language:
///   zero | cos:k | bump:center:width | lacunary:J:seed | file:path
/// bump is the smooth indicator chi(2|x - center|/width) (1 on the middle
/// half-width, 0 beyond the width); lacunary is sum_{j=1}^J eps_j (e_{2^j} + e_{-2^j})
/// with random signs eps_j drawn from seed; file holds N real samples.
TorusField make_symbol(const std::string& spec, const TorusGrid& grid);

/// One line of a report's check list.
struct Check {
  std::string name;
  std::string param;
  double value;
  double threshold;
  std::string relation;  ///< "<", "<=", ">", ">=", "=="
  bool pass;
};

Check make_check(std::string name, std::string param, double value, std::string relation,
                 double threshold);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<nlohmann::json> rows;  ///< each row a JSON array aligned with columns
};

/// Report assembled by a subcommand. CSV output is the primary table;
/// JSON output carries the configuration, every check and every table.
class Report {
 public:
  Report(std::string command, nlohmann::json config);

  void add_check(Check c);
  void add_table(Table t);
  /// Selects the table written in CSV format; the check list when unset.
  void set_primary(std::string table_name) { primary_ = std::move(table_name); }
  void set_summary(const std::string& key, nlohmann::json value) { summary_[key] = std::move(value); }

  bool passed() const;
  const std::vector<Check>& checks() const noexcept { return checks_; }
  const Table* table(const std::string& name) const;

  nlohmann::json to_json() const;
  void write_csv(std::ostream& os) const;
  void write(std::ostream& os, Format format) const;

 private:
  std::string command_;
  nlohmann::json config_;
  nlohmann::json summary_ = nlohmann::json::object();
  std::vector<Check> checks_;
  std::vector<Table> tables_;
  std::string primary_;
};

/// Fixed 17-significant-digit decimal.
std::string format_double(double v);

Report cmd_lpcheck(const RunConfig& cfg);
Report cmd_paraproduct(const RunConfig& cfg);
Report cmd_carleson(const RunConfig& cfg);
Report cmd_examples(const std::string& name, const RunConfig& cfg);
Report cmd_rellich(const RunConfig& cfg);

/// Full command-line entry point.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace paraprod::cli

#endif  // PARAPROD_CLI_HPP_INCLUDED_
