#include "zsac/word_vectors.hpp"

#include <fmt/format.h>

#include "log.hpp"
#include "text.hpp"
#include "zsac/error.hpp"

namespace zsac {

WordVectorTable::WordVectorTable(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) throw DimensionError("word-vector table dim must be >= 1");
}

bool WordVectorTable::insert(std::string token, EmbeddingVector vec) {
  if (token.empty() || text::split_whitespace(token).size() != 1 ||
      text::trim(token).size() != token.size()) {
    throw ParameterError(fmt::format("invalid token '{}'", token));
  }
  if (vec.dim() != dim_) {
    throw DimensionError(
        fmt::format("vector for '{}' has dim {}, table has dim {}", token, vec.dim(), dim_));
  }
  if (const auto it = index_.find(token); it != index_.end()) {
    vectors_[it->second] = std::move(vec);
    return false;
  }
  index_.emplace(token, tokens_.size());
  tokens_.push_back(std::move(token));
  vectors_.push_back(std::move(vec));
  return true;
}

const EmbeddingVector* WordVectorTable::find(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  return it == index_.end() ? nullptr : &vectors_[it->second];
}

WordVectorTable parse_word_vectors(std::string_view content,
                                   std::optional<std::size_t> expected_dim,
                                   const std::string& source) {
  text::LineReader lines(content);
  std::string_view line;
  std::optional<WordVectorTable> table;
  std::optional<std::size_t> header_count;
  std::size_t entries = 0;
  std::size_t duplicates = 0;

  while (lines.next(line)) {
    const std::size_t line_no = lines.line_number();
    const auto fields = text::split_whitespace(line);
    if (fields.empty()) continue;

    if (line_no == 1 && fields.size() == 2) {
      const auto count = text::parse_size(fields[0]);
      const auto dim = text::parse_size(fields[1]);
      if (count && dim) {
        if (*dim == 0) throw ParseError(source, line_no, "header declares dim 0");
        if (expected_dim && *dim != *expected_dim) {
          throw DimensionError(fmt::format("{}:{}: header declares dim {}, expected {}", source,
                                           line_no, *dim, *expected_dim));
        }
        header_count = *count;
        table.emplace(*dim);
        continue;
      }
    }

    if (fields.size() < 2) throw ParseError(source, line_no, "expected a token followed by values");
    const std::size_t dim = fields.size() - 1;
    const std::size_t want = table ? table->dim() : expected_dim.value_or(dim);
    if (dim != want) {
      throw DimensionError(
          fmt::format("{}:{}: token '{}' has {} values, expected {}", source, line_no,
                      fields[0], dim, want));
    }
    std::vector<double> values(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const auto v = text::parse_double(fields[i + 1]);
      if (!v) {
        throw ParseError(source, line_no, fmt::format("invalid number '{}'", fields[i + 1]));
      }
      values[i] = *v;
    }
    if (!table) table.emplace(dim);
    try {
      if (!table->insert(std::string(fields[0]), EmbeddingVector(std::move(values)))) {
        ++duplicates;
      }
    } catch (const ParameterError& e) {
      throw ParseError(source, line_no, e.what());
    }
    ++entries;
  }

  if (!table || entries == 0) throw EmptyTableError(fmt::format("{}: no word vectors", source));
  if (header_count && *header_count != entries) {
    throw ParseError(source, 1,
                     fmt::format("header declares {} entries, found {}", *header_count, entries));
  }
  if (duplicates > 0) {
    log()->warn("{}: {} duplicate token(s), last occurrence kept", source, duplicates);
  }
  table->set_duplicate_count(duplicates);
  return std::move(*table);
}

WordVectorTable load_word_vectors(const std::string& path,
                                  std::optional<std::size_t> expected_dim) {
  return parse_word_vectors(text::read_file(path), expected_dim, path);
}

std::string format_word_vectors(const WordVectorTable& table) {
  fmt::memory_buffer out;
  fmt::format_to(std::back_inserter(out), "{} {}\n", table.size(), table.dim());
  for (const auto& token : table.tokens()) {
    fmt::format_to(std::back_inserter(out), "{}", token);
    for (double v : table.find(token)->values()) fmt::format_to(std::back_inserter(out), " {:.17g}", v);
    out.push_back('\n');
  }
  return fmt::to_string(out);
}

void write_word_vectors(const WordVectorTable& table, const std::string& path) {
  text::write_file(path, format_word_vectors(table));
}

}  // namespace zsac
