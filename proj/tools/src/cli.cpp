#include "cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "zsac/dataset.hpp"
#include "zsac/error.hpp"
#include "zsac/evaluate.hpp"
#include "zsac/labels.hpp"
#include "zsac/model.hpp"
#include "zsac/plan.hpp"
#include "zsac/report.hpp"
#include "zsac/serialization.hpp"
#include "zsac/synth.hpp"
#include "zsac/word_vectors.hpp"

namespace zsac::cli {
namespace {

namespace fs = std::filesystem;

// Bad invocation detected after parsing: missing inputs, conflicting flags.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads a flat JSON object whose keys are long flag names without dashes.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json root;
    try {
      input >> root;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
    }
    if (!root.is_object()) throw CLI::ConfigError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : root.items()) {
      CLI::ConfigItem item;
      item.name = key;
      if (value.is_string()) {
        item.inputs.push_back(value.get<std::string>());
      } else if (value.is_boolean() || value.is_number()) {
        item.inputs.push_back(value.dump());
      } else {
        throw CLI::ConfigError(fmt::format("config field '{}' must be a string, number or boolean", key));
      }
      items.push_back(std::move(item));
    }
    return items;
  }
};

struct Options {
  // Inputs.
  std::string vectors;
  std::string labels;
  std::string manifest;
  std::string embeddings;
  std::string class_embeddings;
  std::string model;
  std::string ids;
  std::string out = ".";

  // Training.
  std::uint64_t seed = 0;
  double eta = TrainingConfig{}.eta;
  std::size_t epochs = TrainingConfig{}.epochs;
  std::string sort_order = std::string(to_string(SortOrder::kDescending));
  bool shuffle = false;
  bool normalize = false;

  // Evaluation.
  int setting = 0;
  std::string category;
  bool relaxed = false;
  std::size_t jobs = 1;

  // Composition.
  std::string oov = std::string(to_string(OovPolicy::kError));

  // Synthetic corpus.
  SynthParams synth;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto logger = std::make_shared<spdlog::logger>(
      "zsac-cli", std::make_shared<spdlog::sinks::ostream_sink_mt>(err));
  logger->set_pattern("[%l] %v");
  const char* level = std::getenv("ZSAC_LOG");
  logger->set_level(level ? spdlog::level::from_str(level) : spdlog::level::info);
  return logger;
}

void require_file(const std::string& path, const std::string& flag) {
  if (path.empty()) throw UsageError(fmt::format("{} is required", flag));
  if (!fs::is_regular_file(path)) throw UsageError(fmt::format("{}: no such file '{}'", flag, path));
}

fs::path out_dir(const Options& o) {
  fs::create_directories(o.out);
  return fs::path(o.out);
}

TrainingConfig training_config(const Options& o) {
  TrainingConfig config;
  config.eta = o.eta;
  config.epochs = o.epochs;
  config.seed = o.seed;
  config.shuffle_samples = o.shuffle;
  const auto order = parse_sort_order(o.sort_order);
  if (!order) throw UsageError(fmt::format("--sort-order: unknown order '{}'", o.sort_order));
  config.sort_order = *order;
  config.validate();
  return config;
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> ids;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    if (comma > start) ids.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return ids;
}

int compose_labels(const Options& o, std::ostream& out, spdlog::logger& log) {
  require_file(o.vectors, "--vectors");
  require_file(o.labels, "--labels");
  const auto policy = parse_oov_policy(o.oov);
  if (!policy) throw UsageError(fmt::format("--oov: expected error or skip, got '{}'", o.oov));

  const auto labels = load_label_list(o.labels);
  if (labels.empty()) throw UsageError(fmt::format("label list '{}' is empty", o.labels));
  const auto table = load_word_vectors(o.vectors);
  const ClassSet classes = compose_class_set(labels, table, *policy);

  const auto path = (out_dir(o) / "class_embeddings.jsonl").string();
  write_class_embeddings(classes, path);
  log.info("composed {} label embeddings of dimension {}", classes.size(), classes.embedding_dim());
  out << path << '\n';
  return kExitOk;
}

int train_command(const Options& o, std::ostream& out, spdlog::logger& log) {
  require_file(o.manifest, "--manifest");
  require_file(o.embeddings, "--embeddings");
  require_file(o.class_embeddings, "--class-embeddings");
  const TrainingConfig config = training_config(o);

  const auto data = load_manifest(o.manifest, o.embeddings);
  const ClassSet classes =
      select_classes(load_class_embeddings(o.class_embeddings), data.manifest.labels(), o.normalize);
  std::vector<std::string> ids;
  for (const auto& record : data.manifest.records()) ids.push_back(record.sample_id);
  const TrainingSet samples = build_training_set(ids, data.manifest, data.embeddings, classes, o.normalize);

  const auto w = train(samples, classes, config, [&](std::size_t epoch, const CompatibilityMatrix& m) {
    if (log.should_log(spdlog::level::debug)) {
      log.debug("epoch {}: risk {:.6g}", epoch, empirical_risk(samples, m, classes));
    }
  });
  const double risk = empirical_risk(samples, w, classes);

  const auto path = (out_dir(o) / "model.json").string();
  save_model({w, class_infos(classes), config, o.normalize}, path);
  log.info("trained on {} samples, {} classes; model written to {}", samples.size(), classes.size(), path);
  out << fmt::format("final_risk {:.17g}\n", risk);
  return kExitOk;
}

int predict_command(const Options& o, std::ostream& out, spdlog::logger& log) {
  require_file(o.model, "--model");
  require_file(o.embeddings, "--embeddings");
  require_file(o.class_embeddings, "--class-embeddings");

  const Model model = load_model(o.model);
  ClassSet candidates = load_class_embeddings(o.class_embeddings);
  std::vector<std::string> labels;
  for (const auto& c : candidates) {
    if (o.category.empty() || c.category == o.category) labels.push_back(c.label);
  }
  if (labels.empty()) throw UsageError(fmt::format("--category: no candidate class in '{}'", o.category));
  candidates = select_classes(candidates, labels, model.normalize);
  if (candidates.embedding_dim() != model.w.cols()) {
    throw DimensionError(fmt::format("label embeddings have dimension {} but the model expects {}",
                                     candidates.embedding_dim(), model.w.cols()));
  }

  const EmbeddingStore store = load_embeddings(o.embeddings);
  const std::vector<std::string> ids = o.ids.empty() ? store.ids() : split_ids(o.ids);

  std::string csv = "sample_id,predicted_label,score\n";
  for (const auto& id : ids) {
    const EmbeddingVector& raw = store.at(id);
    if (raw.dim() != model.w.rows()) {
      throw DimensionError(fmt::format("sample '{}' has dimension {} but the model expects {}", id,
                                       raw.dim(), model.w.rows()));
    }
    const auto best = predict_scored(model.normalize ? l2_normalized(raw) : raw, model.w, candidates);
    csv += fmt::format("{},{},{:.17g}\n", id, candidates.at(best.class_id).label, best.score);
  }

  const auto path = (out_dir(o) / "predictions.csv").string();
  std::ofstream file(path, std::ios::binary);
  if (!(file << csv) || !file.flush()) throw IoError(fmt::format("cannot write '{}'", path));
  log.info("predicted {} samples among {} classes", ids.size(), candidates.size());
  out << path << '\n';
  return kExitOk;
}

int evaluate_command(const Options& o, std::ostream& out, spdlog::logger& log) {
  require_file(o.manifest, "--manifest");
  require_file(o.embeddings, "--embeddings");
  require_file(o.class_embeddings, "--class-embeddings");
  const auto setting = setting_from_number(o.setting);
  if (!setting) throw UsageError("--setting must be 1, 2, 3 or 4");
  if (o.jobs == 0) throw UsageError("--jobs must be at least 1");

  EvalOptions options;
  options.training = training_config(o);
  options.normalize = o.normalize;
  options.jobs = o.jobs;

  const auto data = load_manifest(o.manifest, o.embeddings);
  const ClassSet classes = load_class_embeddings(o.class_embeddings);
  const auto plan = make_plan(*setting, data.manifest, o.seed,
                              o.category.empty() ? std::nullopt : std::optional(o.category),
                              {.relaxed = o.relaxed});
  log.info("{}: {} runs", to_string(*setting), plan.runs.size());

  const std::vector<AccuracyReport> reports{
      run_plan(plan, data.manifest, data.embeddings, classes, options)};
  const auto dir = out_dir(o).string();
  write_report(reports, dir);
  log.info("report written to {}", dir);
  out << fmt::format("{} aggregate_accuracy {}\n", to_string(*setting),
                     format_percent(reports.front().aggregate()));
  return kExitOk;
}

int synth_command(const Options& o, std::ostream& out, spdlog::logger& log) {
  SynthParams params = o.synth;
  params.seed = o.seed;
  const SynthCorpus corpus = synth_dataset(params);
  const auto files = write_synth(corpus, out_dir(o).string());
  log.info("synthetic corpus: {} classes x {} samples", params.n_classes, params.samples_per_class);
  out << files.manifest << '\n'
      << files.embeddings << '\n'
      << files.word_vectors << '\n'
      << files.labels << '\n';
  return kExitOk;
}

void add_options(CLI::App& app, Options& o) {
  app.set_config("--config", "", "JSON file of flag values; flags given on the command line win")
      ->check(CLI::ExistingFile);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.allow_config_extras(CLI::config_extras_mode::error);

  app.add_option("--vectors", o.vectors, "Word-vector table (token followed by its values)");
  app.add_option("--labels", o.labels, "Label list CSV: label,category");
  app.add_option("--manifest", o.manifest, "Dataset manifest CSV");
  app.add_option("--embeddings", o.embeddings, "Audio embeddings JSONL");
  app.add_option("--class-embeddings", o.class_embeddings, "Composed label embeddings JSONL");
  app.add_option("--model", o.model, "Trained model JSON");
  app.add_option("--ids", o.ids, "Comma-separated sample ids to predict (default: all)");
  app.add_option("--out", o.out, "Output directory")->capture_default_str();

  app.add_option("--seed", o.seed, "Seed for fold assignment, shuffling and synthesis")
      ->capture_default_str();
  app.add_option("--eta", o.eta, "Learning rate")->capture_default_str();
  app.add_option("--epochs", o.epochs, "Training epochs")->capture_default_str();
  app.add_option("--sort-order", o.sort_order, "Order of loss ranking: descending or ascending")
      ->capture_default_str();
  app.add_flag("--shuffle", o.shuffle, "Shuffle sample order each epoch");
  app.add_flag("--normalize", o.normalize, "L2-normalize audio and label embeddings");

  app.add_option("--setting", o.setting, "Evaluation setting: 1, 2, 3 or 4");
  app.add_option("--category", o.category,
                 "Category to evaluate (evaluate) or restrict candidates to (predict)");
  app.add_flag("--relaxed", o.relaxed, "Accept corpora that do not have the 5 x 10 x 40 shape");
  app.add_option("--jobs", o.jobs, "Runs evaluated in parallel")->capture_default_str();

  app.add_option("--oov", o.oov, "Out-of-vocabulary tokens: error or skip")->capture_default_str();

  app.add_option("--classes", o.synth.n_classes, "Synthetic classes")->capture_default_str();
  app.add_option("--samples", o.synth.samples_per_class, "Synthetic samples per class")
      ->capture_default_str();
  app.add_option("--dx", o.synth.d_x, "Synthetic audio embedding dimension")->capture_default_str();
  app.add_option("--dy", o.synth.d_y, "Synthetic label embedding dimension")->capture_default_str();
  app.add_option("--noise", o.synth.noise_sigma, "Synthetic noise standard deviation")
      ->capture_default_str();
  app.add_option("--classes-per-category", o.synth.classes_per_category,
                 "Synthetic classes per category")
      ->capture_default_str();
}

bool is_usage_error(const Error& e) {
  return dynamic_cast<const ParameterError*>(&e) || dynamic_cast<const OovError*>(&e) ||
         dynamic_cast<const EmptyCompositionError*>(&e) ||
         dynamic_cast<const DuplicateLabelError*>(&e);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Zero-shot audio classification with a bilinear compatibility model", "zsac");
  app.require_subcommand(1);
  add_options(app, o);

  using Command = int (*)(const Options&, std::ostream&, spdlog::logger&);
  const std::vector<std::pair<std::string, std::pair<std::string, Command>>> commands = {
      {"compose-labels", {"Compose label embeddings from word vectors", compose_labels}},
      {"train", {"Train a model on every sample of a manifest", train_command}},
      {"predict", {"Predict labels for audio embeddings", predict_command}},
      {"evaluate", {"Run an evaluation setting and write its report", evaluate_command}},
      {"synth", {"Write a synthetic corpus with a known audio/label relation", synth_command}},
  };
  for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto log = make_logger(err);
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    for (const auto& [command, entry] : commands) {
      if (command == name) return entry.second(o, out, *log);
    }
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_usage_error(e) ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace zsac::cli
