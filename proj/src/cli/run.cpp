#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "paraprod/cli.hpp"

namespace paraprod::cli {

namespace {

std::vector<long> parse_k_list(const std::string& text) {
  std::vector<long> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("invalid cut-off '" + item + "' in --K");
    }
  }
  return out;
}

void emit_config_error(std::ostream& err, const std::string& message) {
  err << nlohmann::json{{"status", "config_error"}, {"exit_code", kExitConfig}, {"message", message}}.dump()
      << '\n';
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Paraproducts, Carleson measures and compact bilinear operators on the torus", "paraprod"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string exponents;
  std::string format = "json";
  std::string config_path;
  std::string k_text;
  std::string example_name;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--grid-size", cfg.grid_size, "number of grid points (power of two >= 16)");
    sub->add_option("--jmin", cfg.j_min, "coarsest scale index");
    sub->add_option("--jmax", cfg.j_max, "finest scale index (2^jmax <= N/4)");
    sub->add_option("--symbol", cfg.symbol, "zero | cos:k | bump:c:w | lacunary:J:seed | file:path");
    sub->add_option("--exponents", exponents, "exponent pairs \"p:q,p:q\" with 1/p + 1/q = 1/2");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    sub->add_option("--out", cfg.output_path, "report path (default: standard output)");
    sub->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--config", config_path, "JSON file mirroring the run configuration; overrides flags");
    sub->add_option("--trials", cfg.trials, "random trials per randomized check");
    sub->add_option("--restarts", cfg.restarts, "restarts of the bilinear norm estimator");
  };

  CLI::App* lpcheck = app.add_subcommand("lpcheck", "partition, Calderon reconstruction and square function checks");
  CLI::App* para = app.add_subcommand("paraproduct", "T(1) identities, duality, Holder chain and weak-null decay");
  CLI::App* carleson = app.add_subcommand("carleson", "Carleson constant and vanishing profile of the symbol");
  CLI::App* examples = app.add_subcommand("examples", "gallery of bilinear operators: pairing, bessel, diagonal");
  CLI::App* rellich = app.add_subcommand("rellich", "tail of the Sobolev embedding H^s -> L^2");
  for (CLI::App* sub : {lpcheck, para, carleson, examples, rellich}) add_common(sub);
  para->add_option("--n-max", cfg.n_max, "length of the weak-null decay table");
  carleson->add_option("--max-level", cfg.max_level, "deepest dyadic level of the profile");
  examples->add_option("name", example_name, "pairing | bessel | diagonal")->required();
  examples->add_option("--M", cfg.tensor_size, "frequency window parameter");
  examples->add_option("--s", cfg.s, "Bessel order");
  rellich->add_option("--s", cfg.s, "Sobolev order");
  rellich->add_option("--K", k_text, "comma-separated cut-offs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  Report report("", nullptr);
  try {
    if (!exponents.empty()) cfg.exponents = parse_exponents(exponents);
    cfg.format = format == "csv" ? Format::csv : Format::json;
    if (!k_text.empty()) cfg.k_list = parse_k_list(k_text);
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
      }
      apply_config_json(cfg, j);
    }

    if (lpcheck->parsed()) report = cmd_lpcheck(cfg);
    else if (para->parsed()) report = cmd_paraproduct(cfg);
    else if (carleson->parsed()) report = cmd_carleson(cfg);
    else if (examples->parsed()) report = cmd_examples(example_name, cfg);
    else report = cmd_rellich(cfg);
  } catch (const ConfigError& e) {
    emit_config_error(err, e.what());
    return kExitConfig;
  } catch (const DomainError& e) {
    emit_config_error(err, e.what());
    return kExitConfig;
  }

  if (cfg.output_path.empty()) {
    report.write(out, cfg.format);
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
      emit_config_error(err, "cannot write report to '" + cfg.output_path + "'");
      return kExitConfig;
    }
    report.write(file, cfg.format);
  }
  if (!report.passed()) {
    err << nlohmann::json{{"status", "check_failed"}, {"exit_code", kExitCheckFailed}}.dump() << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace paraprod::cli
