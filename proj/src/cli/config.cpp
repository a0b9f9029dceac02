#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "paraprod/cli.hpp"
#include "paraprod/random.hpp"

namespace paraprod::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number '" + s + "' in " + what);
  }
}

long to_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer '" + s + "' in " + what);
  }
}

double periodic_distance(double x, double c) {
  double d = std::fmod(std::abs(x - c), 1.0);
  return std::min(d, 1.0 - d);
}

}  // namespace

std::vector<std::pair<double, double>> parse_exponents(const std::string& text) {
  std::vector<std::pair<double, double>> out;
  for (const std::string& item : split(text, ',')) {
    const auto pq = split(item, ':');
    if (pq.size() != 2) throw ConfigError("exponent pair '" + item + "' is not of the form p:q");
    out.emplace_back(to_double(pq[0], "--exponents"), to_double(pq[1], "--exponents"));
  }
  if (out.empty()) throw ConfigError("--exponents needs at least one p:q pair");
  return out;
}

void validate(const RunConfig& cfg) {
  try {
    const TorusGrid grid(cfg.grid_size);
    const LPFamily fam(grid, cfg.j_min, cfg.j_max);
    (void)fam;
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  for (const auto& [p, q] : cfg.exponents) {
    if (!(p > 1.0 && q > 1.0) || std::isinf(p) || std::isinf(q))
      throw ConfigError("exponents must satisfy 1 < p, q < inf");
    if (std::abs(1.0 / p + 1.0 / q - 0.5) > 1e-12)
      throw ConfigError("exponent pair " + format_double(p) + ":" + format_double(q) +
                        " violates 1/p + 1/q = 1/2");
  }
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.restarts < 1) throw ConfigError("restarts must be >= 1");
  if (!(cfg.s > 0.0)) throw ConfigError("s must be > 0");
  if (cfg.tensor_size < 2) throw ConfigError("M must be >= 2");
  if (cfg.n_max < 0) throw ConfigError("n_max must be >= 0");
  if (cfg.max_level < -1) throw ConfigError("max_level must be >= 0 (or -1 for automatic)");
}

void apply_config_json(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  try {
    if (j.contains("grid_size")) cfg.grid_size = j.at("grid_size").get<std::size_t>();
    if (j.contains("jmin")) cfg.j_min = j.at("jmin").get<int>();
    if (j.contains("jmax")) cfg.j_max = j.at("jmax").get<int>();
    if (j.contains("symbol")) cfg.symbol = j.at("symbol").get<std::string>();
    if (j.contains("exponents")) {
      const auto& e = j.at("exponents");
      if (e.is_string()) {
        cfg.exponents = parse_exponents(e.get<std::string>());
      } else {
        cfg.exponents.clear();
        for (const auto& pair : e) cfg.exponents.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
      }
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) cfg.output_path = j.at("out").get<std::string>();
    if (j.contains("format")) {
      const auto f = j.at("format").get<std::string>();
      if (f == "csv") cfg.format = Format::csv;
      else if (f == "json") cfg.format = Format::json;
      else throw ConfigError("format must be csv or json");
    }
    if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
    if (j.contains("n_max")) cfg.n_max = j.at("n_max").get<long>();
    if (j.contains("max_level")) cfg.max_level = j.at("max_level").get<int>();
    if (j.contains("s")) cfg.s = j.at("s").get<double>();
    if (j.contains("K")) cfg.k_list = j.at("K").get<std::vector<long>>();
    if (j.contains("M")) cfg.tensor_size = j.at("M").get<long>();
    if (j.contains("restarts")) cfg.restarts = j.at("restarts").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config file: ") + e.what());
  }
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json exps = nlohmann::json::array();
  for (const auto& [p, q] : cfg.exponents) exps.push_back({p, q});
  return {{"grid_size", cfg.grid_size},
          {"jmin", cfg.j_min},
          {"jmax", cfg.j_max},
          {"symbol", cfg.symbol},
          {"exponents", exps},
          {"seed", cfg.seed},
          {"format", cfg.format == Format::csv ? "csv" : "json"},
          {"trials", cfg.trials},
          {"n_max", cfg.n_max},
          {"max_level", cfg.max_level},
          {"s", cfg.s},
          {"K", cfg.k_list},
          {"M", cfg.tensor_size},
          {"restarts", cfg.restarts}};
}

TorusField make_symbol(const std::string& spec, const TorusGrid& grid) {
  const auto parts = split(spec, ':');
  const std::string& kind = parts.empty() ? spec : parts[0];
  auto arity = [&](std::size_t n) {
    if (parts.size() != n) throw ConfigError("symbol '" + spec + "' has the wrong number of fields");
  };

  if (kind == "zero") {
    arity(1);
    return TorusField(grid);
  }
  if (kind == "cos") {
    arity(2);
    const long k = to_long(parts[1], "symbol");
    if (std::abs(k) >= grid.nyquist()) throw ConfigError("cos frequency aliases on this grid");
    const double kk = static_cast<double>(k);
    return TorusField::sample(grid, [kk](double x) { return std::cos(2.0 * std::numbers::pi * kk * x); });
  }
  if (kind == "bump") {
    arity(3);
    const double center = to_double(parts[1], "symbol");
    const double width = to_double(parts[2], "symbol");
    if (!(width > 0.0 && width <= 0.5)) throw ConfigError("bump width must lie in (0, 0.5]");
    const Cutoff chi = Cutoff::standard();
    return TorusField::sample(grid, [&](double x) { return chi(2.0 * periodic_distance(x, center) / width); });
  }
  if (kind == "lacunary") {
    arity(3);
    const long levels = to_long(parts[1], "symbol");
    const long seed = to_long(parts[2], "symbol");
    if (levels < 1 || levels > 40 || (1L << levels) > grid.nyquist())
      throw ConfigError("lacunary frequencies 2^1..2^J must not exceed N/2");
    Rng rng(static_cast<std::uint64_t>(seed));
    Spectrum s(grid);
    for (long j = 1; j <= levels; ++j) {
      const double eps = rng.sign();
      // at k = N/2 both terms land in the same slot: 2 eps (-1)^i
      s.at(1L << j) += eps;
      s.at(-(1L << j)) += eps;
    }
    return inverse_dft(s);
  }
  if (kind == "file") {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open symbol file '" + path + "'");
    std::vector<cplx> values;
    double v = 0.0;
    while (in >> v) values.emplace_back(v);
    if (!in.eof()) throw ConfigError("symbol file '" + path + "' holds a non-numeric token");
    if (values.size() != grid.size())
      throw ConfigError("symbol file has " + std::to_string(values.size()) + " samples, grid needs " +
                        std::to_string(grid.size()));
    return TorusField(grid, std::move(values));
  }
  throw ConfigError("unknown symbol '" + spec + "' (zero | cos:k | bump:c:w | lacunary:J:seed | file:path)");
}

}  // namespace paraprod::cli
