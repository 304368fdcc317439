#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "zsac/types.hpp"

namespace zsac {

/// Bilinear compatibility theta^T W phi.
double compatibility(const EmbeddingVector& theta, const CompatibilityMatrix& w,
                     const EmbeddingVector& phi);

/// F(x, y; W) for every class in `classes`, indexed by class id.
std::vector<double> class_scores(const EmbeddingVector& theta, const CompatibilityMatrix& w,
                                 const ClassSet& classes);

struct Prediction {
  std::size_t class_id;
  double score;
};

/// Highest-scoring class; ties go to the smallest class id.
Prediction predict_scored(const EmbeddingVector& theta, const CompatibilityMatrix& w,
                          const ClassSet& classes);

std::size_t predict(const EmbeddingVector& theta, const CompatibilityMatrix& w,
                    const ClassSet& classes);

/// Delta(y_true, y) + F(x, y) - F(x, y_true).
double margin_loss(const EmbeddingVector& theta, std::size_t y_true, std::size_t y,
                   const CompatibilityMatrix& w, const ClassSet& classes);

/// margin_loss against every class at once, indexed by class id. The entry for
/// y_true is exactly zero.
std::vector<double> margin_losses(const EmbeddingVector& theta, std::size_t y_true,
                                  const CompatibilityMatrix& w, const ClassSet& classes);

/// Partial harmonic sum 1 + 1/2 + ... + 1/r; zero for r = 0.
double rank_penalty(std::size_t r) noexcept;

/// Number of wrong classes whose margin loss is positive.
std::size_t violation_rank(const EmbeddingVector& theta, std::size_t y_true,
                           const CompatibilityMatrix& w, const ClassSet& classes);

/// Rank-weighted hinge risk averaged over the dataset. A sample with no
/// violating class contributes zero.
double empirical_risk(std::span<const TrainingSample> dataset, const CompatibilityMatrix& w,
                      const ClassSet& classes);

/// theta [phi(y) - phi(y_true)]^T, the gradient of margin_loss in W where the
/// loss is active.
CompatibilityMatrix loss_gradient(const EmbeddingVector& theta, std::size_t y_true, std::size_t y,
                                  const ClassSet& classes);

/// Called after each completed epoch (1-based) with the current matrix.
using EpochObserver = std::function<void(std::size_t epoch, const CompatibilityMatrix& w)>;

/// Sorted-loss SGD starting from W = 0.
///
/// For each sample the losses against every class are computed once, sorted
/// (descending by default, ties by class id), and every class at 1-based rank
/// r with positive loss moves W by
///   -eta * beta_{floor((C-1)/r)} * theta [phi(y) - phi(y_true)]^T,
/// applied immediately. Deterministic given the sample order and config.
CompatibilityMatrix train(std::span<const TrainingSample> dataset, const ClassSet& classes,
                          const TrainingConfig& config, const EpochObserver& observer = {});

}  // namespace zsac
