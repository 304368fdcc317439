#include "zsac/error.hpp"

#include <fmt/format.h>

namespace zsac {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : Error(line == 0 ? fmt::format("{}: {}", source, what)
                      : fmt::format("{}:{}: {}", source, line, what)),
      line_(line) {}

OovError::OovError(std::string token, const std::string& context)
    : Error(context.empty()
                ? fmt::format("token '{}' not found in word-vector table", token)
                : fmt::format("{}: token '{}' not found in word-vector table", context, token)),
      token_(std::move(token)) {}

MissingEmbeddingError::MissingEmbeddingError(std::string sample_id, const std::string& embedding_id)
    : Error(fmt::format("sample '{}' references missing embedding '{}'", sample_id, embedding_id)),
      sample_id_(std::move(sample_id)) {}

RunError::RunError(std::string run_label, const std::string& cause)
    : Error(fmt::format("run '{}': {}", run_label, cause)), run_label_(std::move(run_label)) {}

}  // namespace zsac
