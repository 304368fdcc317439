#pragma once

#include <string>
#include <vector>

#include "zsac/types.hpp"

namespace zsac {

/// Per-second embeddings of one clip.
struct FrameSequence {
  std::string sample_id;
  std::vector<EmbeddingVector> frames;
};

/// Elementwise mean of the frames.
EmbeddingVector aggregate_frames(const FrameSequence& frames);

}  // namespace zsac
