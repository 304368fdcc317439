#include "zsac/labels.hpp"

#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "zsac/error.hpp"

namespace zsac {
namespace {

// Class labels of the five ESC-50 categories.
const std::vector<std::pair<std::string, std::vector<std::string>>> kEsc50 = {
    {"Animals",
     {"dog", "rooster", "pig", "cow", "frog", "cat", "hen", "insects", "sheep", "crow"}},
    {"Natural",
     {"rain", "sea waves", "crackling fire", "crickets", "chirping birds", "water drops", "wind",
      "pouring water", "toilet flush", "thunderstorm"}},
    {"Human",
     {"crying baby", "sneezing", "clapping", "breathing", "coughing", "footsteps", "laughing",
      "brushing teeth", "snoring", "drinking sipping"}},
    {"Interior",
     {"door wood knock", "mouse click", "keyboard typing", "door wood creaks", "can opening",
      "washing machine", "vacuum cleaner", "clock alarm", "clock tick", "glass breaking"}},
    {"Exterior",
     {"helicopter", "chainsaw", "siren", "car horn", "engine", "train", "church bells",
      "airplane", "fireworks", "hand saw"}},
};

WordVectorTable esc50_table(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  WordVectorTable table(dim);
  for (const auto& [category, labels] : kEsc50) {
    for (const auto& label : labels) {
      for (const auto& token : tokenize_label(label)) {
        if (table.find(token)) continue;
        std::vector<double> v(dim);
        for (double& x : v) x = normal(gen);
        table.insert(token, EmbeddingVector(v));
      }
    }
  }
  return table;
}

TEST(TokenizeTest, LowercasesAndSplits) {
  EXPECT_EQ(tokenize_label("Sea  Waves"), (std::vector<std::string>{"sea", "waves"}));
  EXPECT_EQ(tokenize_label("door_wood_knock"),
            (std::vector<std::string>{"door", "wood", "knock"}));
  EXPECT_EQ(tokenize_label(" Crying__Baby "), (std::vector<std::string>{"crying", "baby"}));
  EXPECT_EQ(tokenize_label("hand-saw"), (std::vector<std::string>{"hand-saw"}));
}

TEST(ComposeTest, SingleTokenIsExactVector) {
  WordVectorTable table(2);
  table.insert("dog", EmbeddingVector{1, 0});
  EXPECT_EQ(compose_label_embedding("dog", table), (EmbeddingVector{1, 0}));
  EXPECT_EQ(compose_label_embedding("DOG", table), (EmbeddingVector{1, 0}));
}

TEST(ComposeTest, MultiTokenMean) {
  WordVectorTable table(2);
  table.insert("sea", EmbeddingVector{1, 0});
  table.insert("waves", EmbeddingVector{0, 1});
  EXPECT_EQ(compose_label_embedding("sea waves", table), (EmbeddingVector{0.5, 0.5}));
  EXPECT_EQ(compose_label_embedding("Sea  Waves", table), compose_label_embedding("sea waves", table));
  EXPECT_EQ(compose_label_embedding("sea_waves", table), compose_label_embedding("sea waves", table));
  // Repeated tokens count once per occurrence.
  EXPECT_EQ(compose_label_embedding("sea sea waves", table),
            (EmbeddingVector{2.0 / 3.0, 1.0 / 3.0}));
}

TEST(ComposeTest, OovPolicies) {
  WordVectorTable table(2);
  table.insert("sea", EmbeddingVector{1, 3});
  try {
    compose_label_embedding("sea waves", table, OovPolicy::kError);
    FAIL();
  } catch (const OovError& e) {
    EXPECT_EQ(e.token(), "waves");
  }
  EXPECT_EQ(compose_label_embedding("sea waves", table, OovPolicy::kSkip), (EmbeddingVector{1, 3}));
  EXPECT_THROW(compose_label_embedding("big waves", table, OovPolicy::kSkip), EmptyCompositionError);
  EXPECT_THROW(compose_label_embedding("   ", table), ParameterError);
}

TEST(ComposeTest, MatchesSumDivideOracle) {
  const auto table = esc50_table(9, 4);
  for (const auto& [category, labels] : kEsc50) {
    for (const auto& label : labels) {
      const auto tokens = tokenize_label(label);
      std::vector<double> expected(9, 0.0);
      for (const auto& t : tokens) {
        for (std::size_t i = 0; i < 9; ++i) expected[i] += (*table.find(t))[i];
      }
      const auto got = compose_label_embedding(label, table);
      ASSERT_EQ(got.dim(), table.dim());
      for (std::size_t i = 0; i < 9; ++i) {
        EXPECT_NEAR(got[i], expected[i] / static_cast<double>(tokens.size()), 1e-12);
      }
    }
  }
}

TEST(ComposeClassSetTest, Esc50Animals) {
  const auto table = esc50_table(300, 1);
  std::vector<LabelSpec> specs;
  for (const auto& label : kEsc50[0].second) specs.push_back({label, "Animals"});
  const auto classes = compose_class_set(specs, table);
  ASSERT_EQ(classes.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(classes[i].class_id, i);
    EXPECT_EQ(classes[i].label, kEsc50[0].second[i]);
    EXPECT_EQ(classes[i].embedding.dim(), 300u);
  }
}

TEST(ComposeClassSetTest, FullTableGivesFiftyClasses) {
  const auto table = esc50_table(300, 2);
  std::vector<LabelSpec> specs;
  for (const auto& [category, labels] : kEsc50) {
    for (const auto& label : labels) specs.push_back({label, category});
  }
  EXPECT_EQ(compose_class_set(specs, table).size(), 50u);
}

TEST(ComposeClassSetTest, EdgeCases) {
  WordVectorTable table(2);
  table.insert("dog", EmbeddingVector{1, 0});
  const std::vector<LabelSpec> one{{"dog", "Animals"}};
  EXPECT_EQ(compose_class_set(one, table).size(), 1u);
  const std::vector<LabelSpec> twice{{"dog", "Animals"}, {"dog", "Animals"}};
  EXPECT_THROW(compose_class_set(twice, table), DuplicateLabelError);
  EXPECT_THROW(compose_class_set(std::vector<LabelSpec>{}, table), ParameterError);
  const std::vector<LabelSpec> oov{{"dog", "Animals"}, {"hot dog", "Food"}};
  try {
    compose_class_set(oov, table);
    FAIL();
  } catch (const OovError& e) {
    EXPECT_NE(std::string(e.what()).find("hot dog"), std::string::npos);
    EXPECT_EQ(e.token(), "hot");
  }
}

TEST(ClassEmbeddingsFileTest, RoundTripKeepsOrderAndValues) {
  const auto table = esc50_table(5, 3);
  std::vector<LabelSpec> specs;
  for (const auto& [category, labels] : kEsc50) {
    for (const auto& label : labels) specs.push_back({label, category});
  }
  const auto classes = compose_class_set(specs, table);
  testing::TempDir dir;
  write_class_embeddings(classes, dir.file("classes.jsonl"));
  const auto loaded = load_class_embeddings(dir.file("classes.jsonl"));
  ASSERT_EQ(loaded.size(), classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    EXPECT_EQ(loaded[i].label, classes[i].label);
    EXPECT_EQ(loaded[i].category, classes[i].category);
    EXPECT_EQ(loaded[i].embedding, classes[i].embedding);
  }
}

TEST(ClassEmbeddingsFileTest, RejectsBadFiles) {
  EXPECT_THROW(parse_class_embeddings(""), EmptyClassSetError);
  EXPECT_THROW(parse_class_embeddings("{\"id\":1,\"label\":\"a\",\"embedding\":[1]}\n"), ParseError);
  EXPECT_THROW(parse_class_embeddings("{\"id\":0,\"label\":\"a\",\"embedding\":[1]}\n"
                                      "{\"id\":1,\"label\":\"b\",\"embedding\":[1,2]}\n"),
               DimensionError);
  EXPECT_THROW(parse_class_embeddings("not json\n"), ParseError);
}

TEST(LabelListTest, RoundTrip) {
  testing::TempDir dir;
  const std::vector<LabelSpec> specs{{"dog", "Animals"}, {"sea waves", "Natural"}};
  write_label_list(specs, dir.file("labels.csv"));
  EXPECT_EQ(load_label_list(dir.file("labels.csv")), specs);
  testing::write_text(dir.file("bad.csv"), "name,group\ndog,Animals\n");
  EXPECT_THROW(load_label_list(dir.file("bad.csv")), ParseError);
}

}  // namespace
}  // namespace zsac
