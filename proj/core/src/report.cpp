#include "zsac/report.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <map>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>

#include "text.hpp"
#include "zsac/error.hpp"

namespace zsac {
namespace {

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

void push_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

std::string confusion_file_name(const RunResult& run) {
  return fmt::format("confusion_{}.csv", text::file_safe(run.label));
}

std::string setting2_table(const AccuracyReport& report) {
  std::vector<std::string> train_cats;
  std::vector<std::string> eval_cats;
  std::map<std::pair<std::string, std::string>, double> cell;
  for (const auto& r : report.runs) {
    const std::string train = join(r.training_categories, ";");
    push_unique(train_cats, train);
    cell[{train, r.evaluation_category}] = r.accuracy;
  }
  // Columns follow the training order so the matrix reads symmetrically.
  for (const auto& c : train_cats) push_unique(eval_cats, c);
  for (const auto& r : report.runs) push_unique(eval_cats, r.evaluation_category);

  std::string out = "Training Category";
  for (const auto& c : eval_cats) out += "," + c;
  out += '\n';
  for (const auto& t : train_cats) {
    out += t;
    for (const auto& e : eval_cats) {
      out += ',';
      if (t == e) {
        out += '-';
      } else if (const auto it = cell.find({t, e}); it != cell.end()) {
        out += format_percent(it->second);
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string format_percent(double accuracy) { return fmt::format("{:.1f}", accuracy); }

std::string format_run_csv(const AccuracyReport& report) {
  std::string out =
      "run,evaluation_category,training_categories,fold,train_size,test_size,top1_accuracy\n";
  for (const auto& r : report.runs) {
    out += fmt::format("{},{},{},{},{},{},{}\n", r.label, r.evaluation_category,
                       join(r.training_categories, ";"), r.fold, r.train_size, r.test_size,
                       format_percent(r.accuracy));
  }
  return out;
}

std::string format_setting_table(const AccuracyReport& report) {
  if (report.setting == Setting::kS2) return setting2_table(report);
  std::string out = report.setting == Setting::kS1 ? "Category,Top-1 Accuracy (%)\n"
                                                    : "Evaluation Category,Top-1 Accuracy (%)\n";
  for (const auto& [category, accuracy] : report.by_evaluation_category()) {
    out += fmt::format("{},{}\n", category, format_percent(accuracy));
  }
  return out;
}

std::string format_settings_comparison(std::span<const AccuracyReport> reports) {
  struct Column {
    std::string title;
    std::map<std::string, double> values;
  };
  std::vector<Column> columns;
  std::vector<std::string> categories;
  for (const Setting s : {Setting::kS2, Setting::kS3, Setting::kS4}) {
    const auto it = std::find_if(reports.begin(), reports.end(),
                                 [&](const AccuracyReport& r) { return r.setting == s; });
    if (it == reports.end()) continue;
    Column col{s == Setting::kS2 ? "Setting 2 (averaged)"
                                 : fmt::format("Setting {}", static_cast<int>(s)),
               {}};
    for (const auto& [category, accuracy] : it->by_evaluation_category()) {
      push_unique(categories, category);
      col.values[category] = accuracy;
    }
    columns.push_back(std::move(col));
  }
  std::string out = "Evaluation Category";
  for (const auto& c : columns) out += "," + c.title;
  out += '\n';
  for (const auto& category : categories) {
    out += category;
    for (const auto& c : columns) {
      out += ',';
      if (const auto it = c.values.find(category); it != c.values.end()) {
        out += format_percent(it->second);
      }
    }
    out += '\n';
  }
  return out;
}

std::string format_confusion_csv(const ConfusionMatrix& confusion) {
  std::string out = "true/predicted";
  for (const auto& label : confusion.labels()) out += "," + label;
  out += '\n';
  for (std::size_t t = 0; t < confusion.size(); ++t) {
    out += confusion.labels()[t];
    for (std::size_t p = 0; p < confusion.size(); ++p) out += fmt::format(",{}", confusion.at(t, p));
    out += '\n';
  }
  return out;
}

std::string format_summary_json(std::span<const AccuracyReport> reports, bool with_timestamp) {
  nlohmann::ordered_json root;
  if (with_timestamp) {
    root["generated_at"] =
        fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(
                                                 std::chrono::system_clock::now())));
  }
  auto settings = nlohmann::ordered_json::array();
  for (const auto& report : reports) {
    nlohmann::ordered_json s;
    s["setting"] = std::string(to_string(report.setting));
    s["description"] = report.description;
    s["seed"] = report.seed;
    s["config"] = {{"eta", report.config.eta},
                   {"epochs", report.config.epochs},
                   {"seed", report.config.seed},
                   {"sort_order", std::string(to_string(report.config.sort_order))},
                   {"shuffle_samples", report.config.shuffle_samples},
                   {"normalize", report.normalize}};
    s["aggregate_accuracy"] = report.aggregate();
    auto by_cat = nlohmann::ordered_json::object();
    for (const auto& [category, accuracy] : report.by_evaluation_category()) {
      by_cat[category] = accuracy;
    }
    s["by_evaluation_category"] = std::move(by_cat);
    auto runs = nlohmann::ordered_json::array();
    for (const auto& r : report.runs) {
      runs.push_back({{"label", r.label},
                      {"evaluation_category", r.evaluation_category},
                      {"training_categories", r.training_categories},
                      {"fold", r.fold},
                      {"train_size", r.train_size},
                      {"test_size", r.test_size},
                      {"final_risk", r.final_risk},
                      {"accuracy", r.accuracy},
                      {"confusion_file", confusion_file_name(r)}});
    }
    s["runs"] = std::move(runs);
    settings.push_back(std::move(s));
  }
  root["settings"] = std::move(settings);
  return root.dump(2) + "\n";
}

std::vector<std::string> write_report(std::span<const AccuracyReport> reports,
                                      const std::string& out_dir, ReportOptions options) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", out_dir, ec.message()));
  const fs::path dir(out_dir);
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    const auto path = (dir / name).string();
    text::write_file(path, content);
    written.push_back(path);
  };

  emit("summary.json", format_summary_json(reports, options.timestamp));
  bool comparable = false;
  for (const auto& report : reports) {
    const auto name = to_string(report.setting);
    emit(fmt::format("accuracy_{}.csv", name), format_run_csv(report));
    emit(fmt::format("table_{}.csv", name), format_setting_table(report));
    for (const auto& run : report.runs) emit(confusion_file_name(run), format_confusion_csv(run.confusion));
    comparable = comparable || report.setting != Setting::kS1;
  }
  if (comparable) emit("accuracy_by_setting.csv", format_settings_comparison(reports));
  return written;
}

}  // namespace zsac
