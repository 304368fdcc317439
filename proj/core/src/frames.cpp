#include "zsac/frames.hpp"

#include <fmt/format.h>

#include "zsac/error.hpp"

namespace zsac {

EmbeddingVector aggregate_frames(const FrameSequence& seq) {
  if (seq.frames.empty()) {
    throw EmptyFramesError(fmt::format("sample '{}' has no frames", seq.sample_id));
  }
  const std::size_t dim = seq.frames.front().dim();
  std::vector<double> mean(dim, 0.0);
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    const auto& frame = seq.frames[f];
    if (frame.dim() != dim) {
      throw DimensionError(fmt::format("sample '{}' frame {} has dim {}, frame 0 has dim {}",
                                       seq.sample_id, f, frame.dim(), dim));
    }
    for (std::size_t i = 0; i < dim; ++i) mean[i] += frame[i];
  }
  const auto n = static_cast<double>(seq.frames.size());
  for (double& m : mean) m /= n;
  return EmbeddingVector(std::move(mean));
}

}  // namespace zsac
