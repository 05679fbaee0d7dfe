#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csv/batch.hpp"
#include "csv/errors.hpp"
#include "csv/image_io.hpp"
#include "csv/manifest.hpp"
#include "csv/pipeline.hpp"
#include "csv/report.hpp"
#include "csv/store.hpp"
#include "csv/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitIoError = 2;
constexpr int kExitConfigError = 3;

struct ConfigCli {
  std::string config_file;
  std::string variant;
  std::string table;
  std::string ground_distance;
  std::vector<std::string> overrides;  // key=value pairs
};

void add_config_options(CLI::App* cmd, ConfigCli* cli) {
  cmd->add_option("--config", cli->config_file, "Key-value config file");
  cmd->add_option("--variant", cli->variant,
                  "Metric variant: b (bilinear), n (nearest), e (Euclidean color)")
      ->check(CLI::IsMember({"b", "n", "e"}));
  cmd->add_option("--table", cli->table, "Color-name lookup table file");
  cmd->add_option("--ground-distance", cli->ground_distance,
                  "Ground-distance matrix file");
  cmd->add_option("--set", cli->overrides,
                  "Override a config key, e.g. --set window=20")
      ->expected(-1);
}

csv::CsvConfig resolve_config(const ConfigCli& cli) {
  csv::CsvConfig cfg;
  if (!cli.config_file.empty()) cfg = csv::load_config(cli.config_file);
  if (!cli.table.empty()) cfg.table_path = cli.table;
  if (!cli.ground_distance.empty()) cfg.ground_distance_path = cli.ground_distance;
  for (const auto& kv : cli.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw csv::ConfigError("--set expects key=value, got '" + kv + "'");
    }
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    try {
      if (key == "window") cfg.window = std::stoi(value);
      else if (key == "kl") cfg.k_l = std::stod(value);
      else if (key == "kc") cfg.k_c = std::stod(value);
      else if (key == "kh") cfg.k_h = std::stod(value);
      else if (key == "t") cfg.ciede_cap = std::stod(value);
      else if (key == "sigma") cfg.sigma = std::stod(value);
      else if (key == "a") cfg.cnd_weight = std::stod(value);
      else if (key == "p") cfg.pooling_root = std::stoi(value);
      else if (key == "interp") cfg.interp = csv::interp_from_string(value);
      else if (key == "color_mode") cfg.color_mode = csv::color_mode_from_string(value);
      else if (key == "table") cfg.table_path = value;
      else if (key == "ground_distance") cfg.ground_distance_path = value;
      else if (key == "epsilon") cfg.epsilon = std::stod(value);
      else throw csv::ConfigError("unknown config key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw csv::ConfigError("bad value for config key '" + key + "'");
    }
  }
  if (!cli.variant.empty()) csv::apply_variant(cfg, cli.variant);
  cfg.validate();
  return cfg;
}

int run_score(const std::string& ref_path, const std::string& dist_path,
              const ConfigCli& cli, const std::string& maps_out) {
  const csv::CsvConfig cfg = resolve_config(cli);
  const csv::CsvResources res = csv::load_resources(cfg);
  const csv::RgbImage ref = csv::load_image(ref_path);
  const csv::RgbImage dist = csv::load_image(dist_path);
  const bool keep_maps = !maps_out.empty();
  const csv::CsvScore score = csv::compute_csv(ref, dist, cfg, res, keep_maps);
  if (keep_maps) {
    const std::filesystem::path dir(maps_out);
    std::filesystem::create_directories(dir);
    csv::save_map_png(score.maps->ciede, dir / "ciede.png");
    csv::save_map_png(score.maps->cnd, dir / "cnd.png");
    csv::save_map_png(score.maps->sd, dir / "sd.png");
    csv::save_map_png(score.maps->rgcd, dir / "rgcd.png");
  }
  std::printf("%.6f\n", score.value);
  return kExitOk;
}

int run_batch_cmd(const std::string& manifest_path, const std::string& out_path,
                  const std::string& store_dir, int jobs, const ConfigCli& cli) {
  const csv::CsvConfig cfg = resolve_config(cli);
  const csv::CsvResources res = csv::load_resources(cfg);
  const csv::Manifest manifest = csv::parse_manifest(manifest_path);
  for (const auto& warning : manifest.missing_file_warnings) {
    std::cerr << "warning: " << warning << '\n';
  }
  std::optional<csv::ResultStore> store;
  if (!store_dir.empty()) store.emplace(store_dir);
  const auto results = csv::run_batch(manifest, cfg, res,
                                      store ? &*store : nullptr, jobs);
  csv::write_results(results, out_path);

  std::size_t ok = 0, cached = 0, failed = 0;
  for (const auto& r : results) {
    if (!r.score) ++failed;
    else if (r.cached) ++cached;
    else ++ok;
  }
  std::cerr << "scored " << ok << ", cached " << cached << ", failed " << failed
            << " of " << results.size() << " entries\n";
  return failed == results.size() && !results.empty() ? kExitIoError : kExitOk;
}

int run_evaluate(const std::string& results_path, const std::string& manifest_path,
                 const std::vector<std::string>& external_specs,
                 const std::string& report_dir, bool global_fit,
                 const std::string& logistic_form) {
  const csv::Manifest manifest = csv::parse_manifest(manifest_path);
  const auto scores = csv::read_score_file(results_path);

  std::map<std::string, std::vector<std::pair<std::string, double>>> external;
  for (const auto& spec : external_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      throw csv::ConfigError("--external expects NAME=scores.tsv, got '" + spec + "'");
    }
    external[spec.substr(0, eq)] = csv::read_score_file(spec.substr(eq + 1));
  }

  csv::ReportOptions options;
  options.global_fit = global_fit;
  options.form = logistic_form == "as_printed" ? csv::LogisticForm::AsPrinted
                                               : csv::LogisticForm::Standard;
  const auto report = csv::build_report(scores, manifest, external, options);

  const std::filesystem::path dir(report_dir);
  std::filesystem::create_directories(dir);
  csv::write_report_json(report, dir / "report.json");
  csv::write_report_tsv(report, dir / "summary.tsv");

  for (const auto& note : report.skipped_categories) {
    std::cerr << "notice: skipped " << note << '\n';
  }
  if (!report.unmatched_ids.empty()) {
    std::cerr << "notice: " << report.unmatched_ids.size()
              << " unmatched ids excluded\n";
  }
  std::cout << "report written to " << (dir / "report.json").string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CSV full-reference image quality estimator"};
  app.set_version_flag("--version",
                       std::string("csviqa ") + csv::kVersion +
                           " (config hash schema v" +
                           std::to_string(csv::kConfigSchemaVersion) + ")");
  app.require_subcommand(1);

  // score
  auto* score_cmd = app.add_subcommand("score", "Score one image pair");
  std::string ref_path, dist_path, maps_out;
  ConfigCli score_cli;
  score_cmd->add_option("ref", ref_path, "Reference image")->required();
  score_cmd->add_option("dist", dist_path, "Distorted image")->required();
  score_cmd->add_option("--maps-out", maps_out,
                        "Directory for normalized feature-map dumps");
  add_config_options(score_cmd, &score_cli);

  // batch
  auto* batch_cmd = app.add_subcommand("batch", "Score a manifest of pairs");
  std::string manifest_path, out_path, store_dir;
  int jobs = 0;
  ConfigCli batch_cli;
  batch_cmd->add_option("manifest", manifest_path, "Manifest TSV")->required();
  batch_cmd->add_option("--out", out_path, "Results TSV")->required();
  batch_cmd->add_option("--store", store_dir, "Result store directory");
  batch_cmd->add_option("--jobs", jobs, "Worker count (default: logical CPUs)");
  add_config_options(batch_cmd, &batch_cli);

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Correlate scores with subjective data");
  std::string results_path, eval_manifest, report_dir, logistic_form = "standard";
  std::vector<std::string> external_specs;
  bool global_fit = false;
  eval_cmd->add_option("results", results_path, "Results TSV from batch")->required();
  eval_cmd->add_option("--manifest", eval_manifest, "Manifest TSV")->required();
  eval_cmd->add_option("--external", external_specs,
                       "External metric scores as NAME=scores.tsv");
  eval_cmd->add_option("--report", report_dir, "Report output directory")->required();
  eval_cmd->add_flag("--global-fit", global_fit,
                     "Fit the regression once instead of per category");
  eval_cmd->add_option("--logistic-form", logistic_form,
                       "Regression family: standard or as_printed")
      ->check(CLI::IsMember({"standard", "as_printed"}));

  // synth-table
  auto* synth_cmd = app.add_subcommand(
      "synth-table", "Write the deterministic stand-in color-name table");
  std::string synth_out;
  synth_cmd->add_option("--out", synth_out, "Output table path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (score_cmd->parsed()) {
      return run_score(ref_path, dist_path, score_cli, maps_out);
    }
    if (batch_cmd->parsed()) {
      return run_batch_cmd(manifest_path, out_path, store_dir, jobs, batch_cli);
    }
    if (eval_cmd->parsed()) {
      return run_evaluate(results_path, eval_manifest, external_specs,
                          report_dir, global_fit, logistic_form);
    }
    if (synth_cmd->parsed()) {
      csv::save_color_name_table(csv::make_synthetic_table(), synth_out);
      std::cout << "wrote " << synth_out << '\n';
      return kExitOk;
    }
  } catch (const csv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const csv::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
