#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>

#include "alseg/coreset.hpp"
#include "alseg/error.hpp"
#include "alseg/text_format.hpp"
#include "oracles.hpp"

namespace alseg {
namespace {

std::vector<std::string> make_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("item" + std::to_string(i));
  return ids;
}

EmbeddingMatrix from_rows(const std::vector<std::vector<double>>& rows,
                          bool normalized = false) {
  std::vector<double> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return EmbeddingMatrix(make_ids(rows.size()), rows.front().size(),
                         std::move(flat), normalized);
}

std::vector<std::size_t> indices(const SelectionManifest& m) {
  std::vector<std::size_t> out;
  for (const auto& id : m.selected) out.push_back(std::stoul(id.substr(4)));
  return out;
}

TEST(NormalizeTest, ThreeFourFive) {
  auto e = normalize_rows(from_rows({{3.0, 4.0}}));
  EXPECT_TRUE(e.normalized());
  EXPECT_DOUBLE_EQ(e.row(0)[0], 0.6);
  EXPECT_DOUBLE_EQ(e.row(0)[1], 0.8);
}

TEST(NormalizeTest, UnitRowsUnchanged) {
  std::mt19937_64 gen(2);
  auto rows = oracle::random_unit_rows(gen, 20, 7);
  auto e = normalize_rows(from_rows(rows));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < 7; ++k)
      EXPECT_NEAR(e.row(i)[k], rows[i][k], 1e-12);
  EXPECT_EQ(e.ids(), make_ids(20));
}

TEST(NormalizeTest, ZeroRowNamesId) {
  try {
    normalize_rows(from_rows({{1.0, 0.0}, {0.0, 0.0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("item1"), std::string::npos);
  }
}

TEST(EmbeddingMatrixTest, Validation) {
  EXPECT_THROW(EmbeddingMatrix({"a", "a"}, 1, {1.0, 2.0}), Error);
  EXPECT_THROW(EmbeddingMatrix({"a"}, 2, {1.0}), Error);
  EXPECT_THROW(EmbeddingMatrix({"a"}, 1, {NAN}), Error);
  EXPECT_THROW(EmbeddingMatrix({"a"}, 2, {1.0, 1.0}, true), Error);
  EXPECT_THROW(EmbeddingMatrix({}, 2, {}), Error);
}

TEST(DistanceTest, Cases) {
  auto e = from_rows({{1, 0}, {1, 0}, {-1, 0}, {0, 1}}, true);
  auto d = cosine_distance_matrix(e);
  EXPECT_EQ(d(0, 1), 0.0);
  EXPECT_EQ(d(0, 2), 2.0);
  EXPECT_EQ(d(0, 3), 1.0);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(d(i, i), 0.0);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(d(i, j), d(j, i));
  }
  EXPECT_THROW(cosine_distance_matrix(from_rows({{2, 0}})), Error);
}

TEST(DistanceTest, RandomInvariants) {
  std::mt19937_64 gen(13);
  auto e = from_rows(oracle::random_unit_rows(gen, 40, 6), true);
  auto d = cosine_distance_matrix(e);
  for (double v : d.entries()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 2.0);
  }
}

TEST(KCenterTest, UnitCircle) {
  ASSERT_EQ(sample_without_replacement(4, 1, 6), (std::vector<std::size_t>{0}));
  EmbeddingMatrix e({"deg0", "deg90", "deg180", "deg270"}, 2,
                    {1, 0, 0, 1, -1, 0, 0, -1});
  auto m = kcenter_greedy(e, 2, 1, 6);
  EXPECT_EQ(m.selected, (std::vector<std::string>{"deg0", "deg180"}));
  // after the seed every other point is at distance 1 or 2
  EXPECT_EQ(m.radius_trace, (std::vector<double>{2.0, 1.0}));
}

TEST(KCenterTest, FullBudgetIsPermutation) {
  std::mt19937_64 gen(4);
  auto e = from_rows(oracle::random_unit_rows(gen, 17, 3));
  auto m = kcenter_greedy(e, 17, 3, 11);
  std::set<std::string> got(m.selected.begin(), m.selected.end());
  EXPECT_EQ(got.size(), 17u);
  EXPECT_EQ(m.radius_trace.back(), 0.0);
}

TEST(KCenterTest, MatchesBruteForceOracle) {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> nd(1, 64), dd(1, 8);
    const std::size_t n = nd(gen), dim = dd(gen);
    auto rows = oracle::random_unit_rows(gen, n, dim);
    std::uniform_int_distribution<std::size_t> bd(1, n);
    const std::size_t budget = bd(gen);
    std::uniform_int_distribution<std::size_t> kd(1, std::min<std::size_t>(3, budget));
    const std::size_t k = kd(gen);
    const std::uint64_t seed = gen();
    auto m = kcenter_greedy(from_rows(rows, true), budget, k, seed);
    auto expected =
        oracle::brute_force_kcenter(oracle::full_distance_matrix(rows), budget, k, seed);
    ASSERT_EQ(indices(m), expected) << "trial " << trial;
  }
}

TEST(KCenterTest, PrecomputedMatrixGivesSameSelection) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 20; ++trial) {
    auto e = from_rows(oracle::random_unit_rows(gen, 50, 5), true);
    auto a = kcenter_greedy(e, 20, 3, trial);
    auto b = kcenter_greedy(cosine_distance_matrix(e), e.ids(), 20, 3, trial);
    EXPECT_EQ(a, b);
  }
}

TEST(KCenterTest, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 gen(8);
  auto e = from_rows(oracle::random_unit_rows(gen, 600, 16), true);
  auto one = kcenter_greedy(e, 60, 3, 5, {.threads = 1});
  for (std::size_t t : {2u, 3u, 8u}) {
    EXPECT_EQ(kcenter_greedy(e, 60, 3, 5, {.threads = t}), one);
  }
}

TEST(KCenterTest, TiesGoToLowestIndex) {
  // Indices 1 and 2 are both orthogonal to index 0.
  std::uint64_t seed = 0;
  while (sample_without_replacement(3, 1, seed) != std::vector<std::size_t>{0}) ++seed;
  EmbeddingMatrix e({"a", "b", "c"}, 2, {1, 0, 0, 1, 0, -1});
  auto m = kcenter_greedy(e, 2, 1, seed);
  ASSERT_EQ(m.selected.front(), "a");
  EXPECT_EQ(m.selected[1], "b");
}

TEST(KCenterTest, RadiusTraceMonotoneAndConsistent) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto e = from_rows(oracle::random_unit_rows(gen, 80, 4), true);
    auto m = kcenter_greedy(e, 30, 3, trial);
    ASSERT_EQ(m.radius_trace.size(), 30u);
    for (std::size_t i = 1; i < m.radius_trace.size(); ++i) {
      EXPECT_LE(m.radius_trace[i], m.radius_trace[i - 1]);
    }
    EXPECT_EQ(m.radius_trace.back(), coverage_radius(e, m.selected));
  }
}

TEST(KCenterTest, ScaleInvariantSelection) {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 10; ++trial) {
    auto rows = oracle::random_unit_rows(gen, 40, 6);
    auto scaled = rows;
    for (auto& r : scaled) {
      const double c = scale(gen);
      for (auto& v : r) v *= c;
    }
    EXPECT_EQ(kcenter_greedy(from_rows(rows), 15, 3, trial).selected,
              kcenter_greedy(from_rows(scaled), 15, 3, trial).selected);
  }
}

TEST(KCenterTest, TwoApproximationInChordMetric) {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> nd(2, 10);
    const std::size_t n = nd(gen);
    auto rows = oracle::random_unit_rows(gen, n, 3);
    auto d = oracle::full_distance_matrix(rows);
    for (std::size_t b = 1; b <= std::min<std::size_t>(4, n); ++b) {
      auto m = kcenter_greedy(from_rows(rows, true), b, 1, trial);
      // 1 - cos is half the squared chord length, so the factor 2 holds
      // for the chord and becomes 4 here.
      const double opt = oracle::optimal_kcenter_radius(d, b);
      EXPECT_LE(std::sqrt(2.0 * m.radius_trace.back()),
                2.0 * std::sqrt(2.0 * opt) + 1e-9);
      EXPECT_LE(m.radius_trace.back(), 4.0 * opt + 1e-12);
    }
  }
}

TEST(KCenterTest, DuplicatesAreLegal) {
  EmbeddingMatrix e({"a", "a2", "b", "c"}, 2, {1, 0, 1, 0, 0, 1, -1, 0});
  auto m = kcenter_greedy(e, 3, 1, 6);  // seed picks "a"
  EXPECT_EQ(m.selected, (std::vector<std::string>{"a", "c", "b"}));
  auto all = kcenter_greedy(e, 4, 1, 6);
  EXPECT_EQ(all.selected.back(), "a2");
}

TEST(KCenterTest, PreconditionErrors) {
  EmbeddingMatrix e({"a", "b"}, 1, {1, -1});
  EXPECT_THROW(kcenter_greedy(e, 3, 1, 0), Error);
  EXPECT_THROW(kcenter_greedy(e, 1, 2, 0), Error);
  EXPECT_THROW(kcenter_greedy(e, 1, 0, 0), Error);
}

TEST(RandomSelectTest, Basics) {
  auto ids = make_ids(10);
  auto m = random_select(ids, 3, 42);
  EXPECT_EQ(m.selected, (std::vector<std::string>{"item3", "item2", "item4"}));
  EXPECT_EQ(m.method, SelectionMethod::random);
  EXPECT_EQ(random_select(ids, 3, 42), m);
  auto all = random_select(ids, 10, 1);
  EXPECT_EQ(std::set<std::string>(all.selected.begin(), all.selected.end()).size(), 10u);
  EXPECT_THROW(random_select(ids, 11, 1), Error);
}

TEST(RandomSelectTest, TraceFromEmbeddings) {
  std::mt19937_64 gen(3);
  auto e = from_rows(oracle::random_unit_rows(gen, 30, 4), true);
  auto m = random_select(e, 10, 9);
  EXPECT_EQ(m.selected, random_select(e.ids(), 10, 9).selected);
  ASSERT_EQ(m.radius_trace.size(), 10u);
  EXPECT_EQ(m.radius_trace.back(), coverage_radius(e, m.selected));
}

TEST(CoverageRadiusTest, Definition) {
  std::mt19937_64 gen(12);
  auto e = from_rows(oracle::random_unit_rows(gen, 9, 3), true);
  auto d = cosine_distance_matrix(e);
  std::vector<std::size_t> all(9);
  for (std::size_t i = 0; i < 9; ++i) all[i] = i;
  EXPECT_EQ(coverage_radius(d, all), 0.0);
  std::vector<std::size_t> one = {4};
  double mx = 0.0;
  for (std::size_t j = 0; j < 9; ++j) mx = std::max(mx, d(4, j));
  EXPECT_EQ(coverage_radius(d, one), mx);
  EXPECT_THROW(coverage_radius(d, std::vector<std::size_t>{}), Error);
}

TEST(ManifestTest, EncodeDecode) {
  std::mt19937_64 gen(6);
  auto e = from_rows(oracle::random_unit_rows(gen, 25, 3), true);
  auto m = kcenter_greedy(e, 8, 3, 77);
  const std::string text = encode_manifest(m);
  EXPECT_EQ(text.rfind("format_version=1\n", 0), 0u);
  EXPECT_EQ(decode_manifest(text), m);
  EXPECT_THROW(decode_manifest("format_version=2\n\n"), Error);
}

class EmbeddingFileTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("alseg_emb_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& n) { return (dir_ / n).string(); }
  std::filesystem::path dir_;
};

TEST_F(EmbeddingFileTest, RoundTripThroughFloat32) {
  auto e = from_rows({{0.5, -1.25, 3.0}, {1e-3, 2.0, -0.0}});
  write_embeddings(e, path("f.f32"), path("f.ids"));
  EXPECT_EQ(read_file(path("f.f32.hdr")), "count=2\ndim=3\ndtype=f32le\n");
  auto back = read_embeddings(path("f.f32"), path("f.ids"));
  EXPECT_EQ(back.ids(), e.ids());
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(back.values()[i], static_cast<double>(static_cast<float>(e.values()[i])));
  }
}

TEST_F(EmbeddingFileTest, Mismatches) {
  auto e = from_rows({{1.0}, {2.0}});
  write_embeddings(e, path("f.f32"), path("f.ids"));
  write_file(path("three.ids"), "a\nb\nc\n");
  EXPECT_THROW(read_embeddings(path("f.f32"), path("three.ids")), Error);
  write_file(path("f.f32"), "abc");
  EXPECT_THROW(read_embeddings(path("f.f32"), path("f.ids")), Error);
  EXPECT_THROW(read_embeddings(path("none.f32"), path("f.ids")), Error);
}

}  // namespace
}  // namespace alseg
