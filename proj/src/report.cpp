#include "csv/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "csv/errors.hpp"

namespace csv {

namespace {

struct JoinedRow {
  std::string id;
  double objective;
  double subjective;
  std::string category;
};

MetricEval evaluate_subset(const std::vector<double>& objective,
                           const std::vector<double>& subjective,
                           const ReportOptions& options,
                           const RegressionParams* fixed_fit) {
  MetricEval eval;
  eval.n = static_cast<int>(objective.size());
  eval.regression = fixed_fit ? *fixed_fit
                              : fit_logistic(objective, subjective, options.form);
  const auto mapped = logistic_map(eval.regression, objective);
  eval.plcc = pearson(mapped, subjective);
  eval.scc = spearman(objective, subjective);
  eval.kcc = kendall(objective, subjective);
  eval.hist = hist_distances(mapped, subjective, options.hist_bins);
  return eval;
}

}  // namespace

EvaluationReport build_report(
    const std::vector<std::pair<std::string, double>>& scores,
    const Manifest& manifest,
    const std::map<std::string, std::vector<std::pair<std::string, double>>>&
        external,
    const ReportOptions& options) {
  EvaluationReport report;

  std::unordered_map<std::string, const ManifestEntry*> by_id;
  for (const auto& e : manifest.entries) by_id.emplace(e.id, &e);

  std::vector<JoinedRow> rows;
  std::set<std::string> matched;
  for (const auto& [id, score] : scores) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      report.unmatched_ids.push_back(id + " (not in manifest)");
      continue;
    }
    rows.push_back({id, score, it->second->subjective, it->second->category});
    matched.insert(id);
  }
  for (const auto& e : manifest.entries) {
    if (!matched.contains(e.id)) {
      report.unmatched_ids.push_back(e.id + " (no score)");
    }
  }
  if (rows.size() < 8) {
    throw ConfigError("evaluation needs at least 8 joined pairs, got " +
                      std::to_string(rows.size()));
  }

  std::map<std::string, std::unordered_map<std::string, double>> external_by_id;
  for (const auto& [name, list] : external) {
    auto& m = external_by_id[name];
    for (const auto& [id, score] : list) m.emplace(id, score);
  }

  std::vector<std::string> category_names{"overall"};
  {
    std::set<std::string> tags;
    for (const auto& row : rows) tags.insert(row.category);
    category_names.insert(category_names.end(), tags.begin(), tags.end());
  }

  // Optional single global regression, reused across categories.
  RegressionParams global_fit;
  if (options.global_fit) {
    std::vector<double> obj, subj;
    for (const auto& row : rows) {
      obj.push_back(row.objective);
      subj.push_back(row.subjective);
    }
    global_fit = fit_logistic(obj, subj, options.form);
  }

  for (const auto& name : category_names) {
    std::vector<const JoinedRow*> subset;
    for (const auto& row : rows) {
      if (name == "overall" || row.category == name) subset.push_back(&row);
    }
    if (subset.size() < 8) {
      report.skipped_categories.push_back(
          name + ": only " + std::to_string(subset.size()) + " pairs (need 8)");
      continue;
    }

    CategoryReport cat;
    cat.name = name;
    std::vector<double> obj, subj;
    for (const auto* row : subset) {
      obj.push_back(row->objective);
      subj.push_back(row->subjective);
    }
    cat.csv = evaluate_subset(obj, subj, options,
                              options.global_fit ? &global_fit : nullptr);

    for (const auto& [metric, id_scores] : external_by_id) {
      std::vector<double> ext_obj, ext_subj;
      for (const auto* row : subset) {
        const auto it = id_scores.find(row->id);
        if (it == id_scores.end()) continue;
        ext_obj.push_back(it->second);
        ext_subj.push_back(row->subjective);
      }
      if (ext_obj.size() < 8) {
        report.skipped_categories.push_back(name + "/" + metric + ": only " +
                                            std::to_string(ext_obj.size()) +
                                            " pairs (need 8)");
        continue;
      }
      MetricEval eval;
      try {
        eval = evaluate_subset(ext_obj, ext_subj, options, nullptr);
      } catch (const std::invalid_argument& e) {
        report.skipped_categories.push_back(name + "/" + metric + ": " + e.what());
        continue;
      }

      const int n_csv = cat.csv.n;
      const int n_ext = eval.n;
      const auto guard = [](double r) {
        return std::min(std::fabs(r), 1.0 - 1e-12);
      };
      cat.significance[metric] = {
          significance(guard(cat.csv.plcc), n_csv, guard(eval.plcc), n_ext,
                       options.alpha),
          significance(guard(cat.csv.scc), n_csv, guard(eval.scc), n_ext,
                       options.alpha),
          significance(guard(cat.csv.kcc), n_csv, guard(eval.kcc), n_ext,
                       options.alpha)};
      cat.external.emplace(metric, std::move(eval));
    }
    report.categories.push_back(std::move(cat));
  }
  return report;
}

namespace {

nlohmann::json eval_to_json(const MetricEval& eval) {
  return {
      {"n", eval.n},
      {"regression",
       {{"beta", eval.regression.beta},
        {"form", eval.regression.form == LogisticForm::Standard ? "standard"
                                                                : "as_printed"},
        {"sse", eval.regression.sse}}},
      {"plcc", eval.plcc},
      {"scc", eval.scc},
      {"kcc", eval.kcc},
      {"hist",
       {{"emd", eval.hist.emd},
        {"kl", eval.hist.kl},
        {"js", eval.hist.js},
        {"hi", eval.hist.hi},
        {"l2", eval.hist.l2}}},
  };
}

}  // namespace

void write_report_json(const EvaluationReport& report,
                       const std::filesystem::path& path) {
  nlohmann::json j;
  for (const auto& cat : report.categories) {
    nlohmann::json jc;
    jc["csv"] = eval_to_json(cat.csv);
    for (const auto& [metric, eval] : cat.external) {
      jc["external"][metric] = eval_to_json(eval);
    }
    for (const auto& [metric, bits] : cat.significance) {
      jc["significance"][metric] =
          std::to_string(bits[0]) + std::to_string(bits[1]) + std::to_string(bits[2]);
    }
    j["categories"][cat.name] = std::move(jc);
  }
  j["skipped_categories"] = report.skipped_categories;
  j["unmatched_ids"] = report.unmatched_ids;

  std::ofstream out(path);
  if (!out) throw IoError("cannot write report: " + path.string());
  out << j.dump(2) << '\n';
}

void write_report_tsv(const EvaluationReport& report,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report: " + path.string());
  out << "category\tmetric\tn\tplcc\tscc\tkcc\themd\thkl\thjs\thhi\thl2\tsignificance\n";
  const auto row = [&](const std::string& cat, const std::string& metric,
                       const MetricEval& eval, const std::string& sig) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f", eval.plcc,
                  eval.scc, eval.kcc, eval.hist.emd, eval.hist.kl, eval.hist.js,
                  eval.hist.hi, eval.hist.l2);
    out << cat << '\t' << metric << '\t' << eval.n << '\t' << buf << '\t'
        << (sig.empty() ? "-" : sig) << '\n';
  };
  for (const auto& cat : report.categories) {
    row(cat.name, "CSV", cat.csv, "");
    for (const auto& [metric, eval] : cat.external) {
      const auto& bits = cat.significance.at(metric);
      row(cat.name, metric, eval,
          std::to_string(bits[0]) + std::to_string(bits[1]) +
              std::to_string(bits[2]));
    }
  }
  out.flush();
}

}  // namespace csv
