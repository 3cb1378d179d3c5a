#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <random>

#include "alseg/error.hpp"
#include "alseg/label_fusion.hpp"
#include "alseg/volume_io.hpp"
#include "oracles.hpp"

namespace alseg {
namespace {

LabelVolume plane(std::size_t y, std::size_t x, std::vector<Label> v) {
  return LabelVolume({1, y, x}, ValueKind::instance_labels, std::move(v));
}

TEST(StackSlicesTest, AllZeroStaysZero) {
  std::vector<LabelVolume> s(3, LabelVolume({1, 2, 2}, ValueKind::instance_labels));
  auto v = stack_slices(s);
  EXPECT_EQ(v.shape(), (Shape3{3, 2, 2}));
  EXPECT_EQ(v.kind(), ValueKind::binary_mask);
  for (Label x : v.voxels()) EXPECT_EQ(x, 0u);
}

TEST(StackSlicesTest, InstancesBecomeForeground) {
  std::vector<LabelVolume> s = {plane(2, 2, {1, 0, 0, 7}), plane(2, 2, {0, 0, 0, 0})};
  auto v = stack_slices(s);
  EXPECT_EQ(v.at(0, 0, 0), 1u);
  EXPECT_EQ(v.at(0, 1, 1), 1u);
  EXPECT_EQ(v.at(0, 0, 1), 0u);
  EXPECT_EQ(v.at(1, 1, 1), 0u);
}

TEST(StackSlicesTest, MismatchedAndEmpty) {
  std::vector<LabelVolume> s = {LabelVolume({1, 512, 512}, ValueKind::instance_labels),
                                LabelVolume({1, 256, 256}, ValueKind::instance_labels)};
  EXPECT_THROW(stack_slices(s), Error);
  EXPECT_THROW(stack_slices(std::vector<LabelVolume>{}), Error);
}

TEST(BinarizeTest, Definition) {
  LabelVolume v({1, 1, 3}, ValueKind::instance_labels, {0, 3, 9});
  auto b = binarize(v);
  EXPECT_EQ(std::vector<Label>(b.voxels().begin(), b.voxels().end()),
            (std::vector<Label>{0, 1, 1}));
  LabelVolume z({2, 2, 2}, ValueKind::instance_labels);
  auto bz = binarize(z);
  for (Label x : bz.voxels()) EXPECT_EQ(x, 0u);
}

TEST(BinarizeTest, IdempotentThroughComponents) {
  std::mt19937_64 gen(8);
  for (int i = 0; i < 30; ++i) {
    auto v = oracle::random_instances(gen, oracle::random_shape(gen, 10), 5);
    EXPECT_EQ(binarize(connected_components(binarize(v))), binarize(v));
  }
}

TEST(ConnectedComponentsTest, OppositeCorners) {
  LabelVolume m({2, 2, 2}, ValueKind::binary_mask);
  m.at(0, 0, 0) = 1;
  m.at(1, 1, 1) = 1;
  EXPECT_EQ(count_instances(connected_components(m, Connectivity::face6)), 2u);
  EXPECT_EQ(count_instances(connected_components(m, Connectivity::full26)), 1u);
}

TEST(ConnectedComponentsTest, AllForegroundIsOneComponent) {
  LabelVolume m({4, 3, 5}, ValueKind::binary_mask);
  for (auto& v : m.voxels()) v = 1;
  for (auto c : {Connectivity::face6, Connectivity::full26}) {
    auto l = connected_components(m, c);
    for (Label v : l.voxels()) EXPECT_EQ(v, 1u);
  }
}

TEST(ConnectedComponentsTest, MatchesFloodFillOracle) {
  std::mt19937_64 gen(1234);
  std::uniform_real_distribution<double> density(0.05, 0.6);
  for (int i = 0; i < 150; ++i) {
    auto m = oracle::random_mask(gen, oracle::random_shape(gen, 16), density(gen));
    for (auto c : {Connectivity::face6, Connectivity::full26}) {
      ASSERT_EQ(connected_components(m, c), oracle::flood_fill(m, c))
          << "trial " << i << " conn " << to_string(c);
    }
  }
}

TEST(ConnectedComponentsTest, CanonicalNumberingIsScanOrder) {
  // The voxel at (0,1,0) is reached after (0,0,3) but joins the component
  // whose first voxel is (0,0,1), so it takes id 1.
  LabelVolume m({1, 2, 4}, ValueKind::binary_mask,
                {0, 1, 0, 1,
                 1, 1, 0, 1});
  auto l = connected_components(m, Connectivity::face6);
  EXPECT_EQ(std::vector<Label>(l.voxels().begin(), l.voxels().end()),
            (std::vector<Label>{0, 1, 0, 2, 1, 1, 0, 2}));
}

TEST(ConnectedComponentsTest, Properties) {
  std::mt19937_64 gen(77);
  for (int i = 0; i < 60; ++i) {
    auto m = oracle::random_mask(gen, oracle::random_shape(gen, 12), 0.35);
    auto l6 = connected_components(m, Connectivity::face6);
    auto l26 = connected_components(m, Connectivity::full26);
    // partition
    for (std::size_t k = 0; k < m.size(); ++k) {
      EXPECT_EQ(m.voxels()[k] != 0, l6.voxels()[k] != 0);
    }
    EXPECT_LE(count_instances(l26), count_instances(l6));
  }
}

TEST(ConnectedComponentsTest, MinSizeFilter) {
  LabelVolume m({1, 1, 7}, ValueKind::binary_mask, {1, 0, 1, 1, 0, 1, 1});
  auto l = connected_components(m, Connectivity::face6, 2);
  EXPECT_EQ(std::vector<Label>(l.voxels().begin(), l.voxels().end()),
            (std::vector<Label>{0, 0, 1, 1, 0, 2, 2}));
}

TEST(ConnectedComponentsTest, RejectsNonBinary) {
  LabelVolume v({1, 1, 2}, ValueKind::instance_labels, {0, 4});
  EXPECT_THROW(connected_components(v), Error);
}

TEST(ConnectivityTest, Parse) {
  EXPECT_EQ(parse_connectivity("6"), Connectivity::face6);
  EXPECT_EQ(parse_connectivity("26"), Connectivity::full26);
  EXPECT_THROW(parse_connectivity("18"), Error);
}

class SliceDirTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("alseg_slices_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(SliceDirTest, OrdersByNumericSuffix) {
  write_volume(plane(1, 2, {0, 5}), (dir_ / "s_10.vol3d").string());
  write_volume(plane(1, 2, {3, 0}), (dir_ / "s_9.vol3d").string());
  write_volume(plane(1, 2, {0, 0}), (dir_ / "s_0001.vol3d").string());
  auto files = list_slice_files(dir_);
  ASSERT_EQ(files.size(), 3u);
  EXPECT_EQ(files[0].filename(), "s_0001.vol3d");
  EXPECT_EQ(files[2].filename(), "s_10.vol3d");
  auto v = stack_slice_directory(dir_);
  EXPECT_EQ(v.at(1, 0, 0), 1u);
  EXPECT_EQ(v.at(2, 0, 1), 1u);
}

TEST_F(SliceDirTest, ErrorNamesOffendingFile) {
  write_volume(plane(2, 2, {0, 0, 0, 0}), (dir_ / "s_0.vol3d").string());
  write_volume(plane(1, 3, {0, 0, 0}), (dir_ / "s_1.vol3d").string());
  try {
    stack_slice_directory(dir_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("s_1.vol3d"), std::string::npos);
    EXPECT_EQ(e.code(), Errc::shape_mismatch);
  }
}

TEST_F(SliceDirTest, EmptyDirectory) {
  EXPECT_THROW(list_slice_files(dir_), Error);
}

}  // namespace
}  // namespace alseg
