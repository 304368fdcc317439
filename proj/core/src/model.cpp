#include "zsac/model.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "log.hpp"
#include "zsac/error.hpp"
#include "zsac/rng.hpp"

namespace zsac {
namespace {

void check_theta(const EmbeddingVector& theta, const CompatibilityMatrix& w) {
  if (theta.dim() != w.rows()) {
    throw DimensionError(fmt::format("audio embedding has dim {} but W has {} rows", theta.dim(),
                                     w.rows()));
  }
}

void check_phi_dim(std::size_t phi_dim, const CompatibilityMatrix& w) {
  if (phi_dim != w.cols()) {
    throw DimensionError(
        fmt::format("label embedding has dim {} but W has {} columns", phi_dim, w.cols()));
  }
}

void check_class(std::size_t id, const ClassSet& classes) {
  if (id >= classes.size()) {
    throw ClassIndexError(
        fmt::format("class id {} out of range for class set of size {}", id, classes.size()));
  }
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Scores of all classes given the projection v = W^T theta.
void scores_from_projection(std::span<const double> v, const ClassSet& classes,
                            std::span<double> out) {
  for (std::size_t c = 0; c < classes.size(); ++c) out[c] = dot(v, classes[c].embedding.values());
}

void losses_from_scores(std::span<const double> scores, std::size_t y_true,
                        std::span<double> out) {
  const double truth = scores[y_true];
  for (std::size_t y = 0; y < scores.size(); ++y) {
    out[y] = y == y_true ? 0.0 : 1.0 + scores[y] - truth;
  }
}

}  // namespace

double compatibility(const EmbeddingVector& theta, const CompatibilityMatrix& w,
                     const EmbeddingVector& phi) {
  check_theta(theta, w);
  check_phi_dim(phi.dim(), w);
  std::vector<double> v(w.cols());
  w.project(theta.values(), v);
  return dot(v, phi.values());
}

std::vector<double> class_scores(const EmbeddingVector& theta, const CompatibilityMatrix& w,
                                 const ClassSet& classes) {
  check_theta(theta, w);
  check_phi_dim(classes.embedding_dim(), w);
  std::vector<double> v(w.cols());
  w.project(theta.values(), v);
  std::vector<double> scores(classes.size());
  scores_from_projection(v, classes, scores);
  return scores;
}

Prediction predict_scored(const EmbeddingVector& theta, const CompatibilityMatrix& w,
                          const ClassSet& classes) {
  if (classes.empty()) throw EmptyClassSetError("cannot predict against an empty class set");
  const auto scores = class_scores(theta, w, classes);
  // max_element keeps the first maximum, i.e. the smallest class id on ties.
  const auto best = std::max_element(scores.begin(), scores.end());
  return {static_cast<std::size_t>(best - scores.begin()), *best};
}

std::size_t predict(const EmbeddingVector& theta, const CompatibilityMatrix& w,
                    const ClassSet& classes) {
  return predict_scored(theta, w, classes).class_id;
}

double margin_loss(const EmbeddingVector& theta, std::size_t y_true, std::size_t y,
                   const CompatibilityMatrix& w, const ClassSet& classes) {
  check_class(y_true, classes);
  check_class(y, classes);
  if (y == y_true) {
    check_theta(theta, w);
    check_phi_dim(classes.embedding_dim(), w);
    return 0.0;
  }
  return 1.0 + compatibility(theta, w, classes[y].embedding) -
         compatibility(theta, w, classes[y_true].embedding);
}

std::vector<double> margin_losses(const EmbeddingVector& theta, std::size_t y_true,
                                  const CompatibilityMatrix& w, const ClassSet& classes) {
  check_class(y_true, classes);
  const auto scores = class_scores(theta, w, classes);
  std::vector<double> losses(scores.size());
  losses_from_scores(scores, y_true, losses);
  return losses;
}

double rank_penalty(std::size_t r) noexcept {
  double sum = 0.0;
  for (std::size_t j = 1; j <= r; ++j) sum += 1.0 / static_cast<double>(j);
  return sum;
}

std::size_t violation_rank(const EmbeddingVector& theta, std::size_t y_true,
                           const CompatibilityMatrix& w, const ClassSet& classes) {
  const auto losses = margin_losses(theta, y_true, w, classes);
  std::size_t r = 0;
  for (std::size_t y = 0; y < losses.size(); ++y) {
    if (y != y_true && losses[y] > 0.0) ++r;
  }
  return r;
}

double empirical_risk(std::span<const TrainingSample> dataset, const CompatibilityMatrix& w,
                      const ClassSet& classes) {
  if (dataset.empty()) throw EmptyDatasetError("empirical risk of an empty dataset");
  double total = 0.0;
  for (const auto& sample : dataset) {
    const auto losses = margin_losses(sample.theta, sample.class_id, w, classes);
    std::size_t r = 0;
    double hinge = 0.0;
    for (std::size_t y = 0; y < losses.size(); ++y) {
      if (losses[y] > 0.0) {
        hinge += losses[y];
        if (y != sample.class_id) ++r;
      }
    }
    if (r == 0) continue;
    total += rank_penalty(r) / static_cast<double>(r) * hinge;
  }
  return total / static_cast<double>(dataset.size());
}

CompatibilityMatrix loss_gradient(const EmbeddingVector& theta, std::size_t y_true, std::size_t y,
                                  const ClassSet& classes) {
  check_class(y_true, classes);
  check_class(y, classes);
  const auto phi_y = classes[y].embedding.values();
  const auto phi_true = classes[y_true].embedding.values();
  std::vector<double> diff(phi_y.size());
  for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = phi_y[j] - phi_true[j];
  auto grad = CompatibilityMatrix::zeros(theta.dim(), classes.embedding_dim());
  grad.add_outer(1.0, theta.values(), diff);
  return grad;
}

CompatibilityMatrix train(std::span<const TrainingSample> dataset, const ClassSet& classes,
                          const TrainingConfig& config, const EpochObserver& observer) {
  config.validate();
  if (dataset.empty()) throw EmptyDatasetError("training set is empty");
  const std::size_t n_classes = classes.size();
  if (n_classes < 2) {
    throw InsufficientClassesError(
        fmt::format("training needs at least 2 classes, got {}", n_classes));
  }
  const std::size_t d_x = dataset.front().theta.dim();
  const std::size_t d_y = classes.embedding_dim();
  for (std::size_t n = 0; n < dataset.size(); ++n) {
    if (dataset[n].theta.dim() != d_x) {
      throw DimensionError(fmt::format("sample {} has audio dim {}, expected {}", n,
                                       dataset[n].theta.dim(), d_x));
    }
    check_class(dataset[n].class_id, classes);
  }

  auto w = CompatibilityMatrix::zeros(d_x, d_y);

  // beta_{floor((C-1)/r)} for r = 1..C
  std::vector<double> step_weight(n_classes + 1, 0.0);
  for (std::size_t r = 1; r <= n_classes; ++r) step_weight[r] = rank_penalty((n_classes - 1) / r);

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(config.seed);

  std::vector<double> projection(d_y);
  std::vector<double> scores(n_classes);
  std::vector<double> losses(n_classes);
  std::vector<std::size_t> ranked(n_classes);
  std::vector<double> diff(d_y);

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    if (config.shuffle_samples) rng.shuffle(std::span<std::size_t>(order));
    for (const std::size_t n : order) {
      const auto& sample = dataset[n];
      const auto theta = sample.theta.values();
      w.project(theta, projection);
      scores_from_projection(projection, classes, scores);
      losses_from_scores(scores, sample.class_id, losses);

      std::iota(ranked.begin(), ranked.end(), std::size_t{0});
      if (config.sort_order == SortOrder::kDescending) {
        std::stable_sort(ranked.begin(), ranked.end(),
                         [&](std::size_t a, std::size_t b) { return losses[a] > losses[b]; });
      } else {
        std::stable_sort(ranked.begin(), ranked.end(),
                         [&](std::size_t a, std::size_t b) { return losses[a] < losses[b]; });
      }

      const auto phi_true = classes[sample.class_id].embedding.values();
      for (std::size_t r = 1; r <= n_classes; ++r) {
        const std::size_t y = ranked[r - 1];
        if (!(losses[y] > 0.0)) continue;
        const double weight = step_weight[r];
        if (weight == 0.0) continue;
        const auto phi_y = classes[y].embedding.values();
        for (std::size_t j = 0; j < d_y; ++j) diff[j] = phi_y[j] - phi_true[j];
        w.add_outer(-config.eta * weight, theta, diff);
      }
    }
    if (observer) observer(epoch, w);
    log()->debug("epoch {}/{} done", epoch, config.epochs);
  }
  return w;
}

}  // namespace zsac
