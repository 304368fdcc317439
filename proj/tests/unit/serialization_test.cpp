#include "zsac/serialization.hpp"

#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "zsac/error.hpp"

namespace zsac {
namespace {

TEST(ModelJsonTest, RoundTripIsExact) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> normal(0.0, 1e3);
  std::vector<double> w(6 * 4);
  for (double& x : w) x = normal(gen) / 7.0;
  Model model{CompatibilityMatrix(6, 4, w),
              {{0, "dog", "Animals"}, {1, "sea waves", "Natural"}},
              {0.125, 7, 99, SortOrder::kAscending, true},
              true};
  const auto restored = model_from_json(model_to_json(model));
  EXPECT_EQ(restored.w, model.w);
  EXPECT_EQ(restored.classes, model.classes);
  EXPECT_EQ(restored.config.eta, 0.125);
  EXPECT_EQ(restored.config.epochs, 7u);
  EXPECT_EQ(restored.config.seed, 99u);
  EXPECT_EQ(restored.config.sort_order, SortOrder::kAscending);
  EXPECT_TRUE(restored.config.shuffle_samples);
  EXPECT_TRUE(restored.normalize);
}

TEST(ModelJsonTest, LayoutIsRowMajor) {
  Model model{CompatibilityMatrix::from_rows({{1, 2, 3}, {4, 5, 6}}), {}, {}, false};
  const auto j = nlohmann::json::parse(model_to_json(model));
  EXPECT_EQ(j.at("d_x"), 2);
  EXPECT_EQ(j.at("d_y"), 3);
  EXPECT_EQ(j.at("w"), nlohmann::json::parse("[1.0,2.0,3.0,4.0,5.0,6.0]"));
  EXPECT_TRUE(j.at("classes").is_array());
  EXPECT_TRUE(j.at("config").is_object());
}

TEST(ModelJsonTest, RejectsMalformed) {
  EXPECT_THROW(model_from_json("{"), ParseError);
  EXPECT_THROW(model_from_json(R"({"d_x":2,"d_y":2,"w":[1,2,3]})"), DimensionError);
  EXPECT_THROW(model_from_json(R"({"d_x":1,"d_y":1,"w":[1],"config":{"sort_order":"sideways"}})"),
               ParseError);
}

TEST(ModelJsonTest, SaveAndLoadFile) {
  testing::TempDir dir;
  Model model{CompatibilityMatrix::from_rows({{0.1, -0.1}, {0, 0}}), {}, {}, false};
  save_model(model, dir.file("m.json"));
  EXPECT_EQ(load_model(dir.file("m.json")).w, model.w);
  EXPECT_THROW(load_model(dir.file("missing.json")), IoError);
}

}  // namespace
}  // namespace zsac
