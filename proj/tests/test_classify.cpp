#include "oracles.hpp"
#include "test_support.hpp"

#include "tileinspect/classify.hpp"
#include "tileinspect/error.hpp"

#include <gtest/gtest.h>

using namespace tileinspect;

namespace {

void plus_at(LabelMatrix& m, Index r, Index c) {
  m(r - 1, c) = m(r + 1, c) = m(r, c - 1) = m(r, c + 1) = 1;
}

ClassifierConfig small_cfg(int c_range, int e_range) {
  ClassifierConfig cfg;
  cfg.c_range = c_range;
  cfg.e_range = e_range;
  return cfg;
}

const DetectionResult kDefective{10, 1, true};

}  // namespace

TEST(Pinhole, PlusPattern) {
  LabelMatrix m = LabelMatrix::Zero(9, 9);
  plus_at(m, 4, 4);
  const PinholeResult r = classify_pinhole(m, small_cfg(2, 1));
  EXPECT_EQ(r.p_count, 1);
  EXPECT_TRUE(r.found);
}

TEST(Pinhole, DiagonalMustBeBackground) {
  LabelMatrix m = LabelMatrix::Zero(9, 9);
  plus_at(m, 4, 4);
  m(3, 3) = 2;
  EXPECT_FALSE(classify_pinhole(m, small_cfg(2, 1)).found);
}

TEST(Pinhole, CrackCellsAreNotRing) {
  LabelMatrix m = LabelMatrix::Zero(9, 9);
  plus_at(m, 4, 4);
  m(3, 4) = label::kCrack;
  EXPECT_EQ(classify_pinhole(m, small_cfg(2, 1)).p_count, 0);
}

TEST(Pinhole, RegionExcludesBandsAndCorners) {
  const ClassifierConfig cfg = small_cfg(3, 1);
  // e_range band
  EXPECT_FALSE(in_pinhole_region(0, 5, 12, 12, cfg));
  EXPECT_TRUE(in_pinhole_region(1, 5, 12, 12, cfg));
  EXPECT_TRUE(in_pinhole_region(10, 5, 12, 12, cfg));
  EXPECT_FALSE(in_pinhole_region(11, 5, 12, 12, cfg));
  // corner squares
  EXPECT_FALSE(in_pinhole_region(2, 2, 12, 12, cfg));
  EXPECT_TRUE(in_pinhole_region(3, 2, 12, 12, cfg));
  EXPECT_FALSE(in_pinhole_region(9, 9, 12, 12, cfg));
  EXPECT_TRUE(in_pinhole_region(8, 9, 12, 12, cfg));

  LabelMatrix m = LabelMatrix::Zero(12, 12);
  plus_at(m, 2, 2);  // centre inside the top-left corner square
  EXPECT_EQ(classify_pinhole(m, cfg).p_count, 0);
}

TEST(Pinhole, EmptyRegionIsAConfigError) {
  EXPECT_THROW(classify_pinhole(LabelMatrix::Zero(4, 4), small_cfg(1, 2)), ConfigError);
}

TEST(Pinhole, MatchesBruteForce) {
  SplitMix64 rng(1001);
  for (int t = 0; t < 300; ++t) {
    const Index rows = rng.uniform(5, 33), cols = rng.uniform(5, 33);
    const LabelMatrix m = oracle::random_label(rng, rows, cols);
    const auto cfg = small_cfg(static_cast<int>(rng.uniform(1, 3)), static_cast<int>(rng.uniform(1, 3)));
    ASSERT_EQ(classify_pinhole(m, cfg).p_count, oracle::pinhole_count(m, cfg.c_range, cfg.e_range));
  }
}

TEST(Crack, Examples) {
  ClassifierConfig cfg;
  cfg.c_length = 10;
  const CrackPass none = classify_crack(LabelMatrix::Zero(8, 8), cfg);
  EXPECT_EQ(none.result, (CrackResult{false, 0}));

  LabelMatrix line = LabelMatrix::Zero(5, 20);
  line.block(2, 3, 1, 12) = 1;
  const CrackPass pass = classify_crack(line, cfg);
  EXPECT_EQ(pass.result, (CrackResult{true, 12}));
  EXPECT_EQ((pass.claimed == label::kCrack).count(), 12);
  EXPECT_TRUE((pass.claimed.block(2, 3, 1, 12) == label::kCrack).all());

  LabelMatrix plus = LabelMatrix::Zero(7, 7);
  plus_at(plus, 3, 3);
  const CrackPass small = classify_crack(plus, cfg);
  EXPECT_EQ(small.result, (CrackResult{false, 4}));
  EXPECT_TRUE((small.claimed == plus).all());
}

TEST(Crack, OnlyLongComponentsAreClaimed) {
  ClassifierConfig cfg;
  cfg.c_length = 5;
  LabelMatrix m = LabelMatrix::Zero(6, 12);
  m.block(1, 0, 1, 8) = 1;   // 8 cells
  m.block(4, 0, 1, 3) = 1;   // 3 cells
  m(4, 10) = 2;
  const CrackPass pass = classify_crack(m, cfg);
  EXPECT_EQ(pass.result.c_count, 8);
  EXPECT_EQ((pass.claimed == label::kCrack).count(), 8);
  EXPECT_EQ((pass.claimed == label::kEdge).count(), 3);
  EXPECT_EQ(pass.claimed(4, 10), 2);
}

TEST(Crack, MatchesUnionFind) {
  SplitMix64 rng(2002);
  for (int t = 0; t < 300; ++t) {
    const LabelMatrix m = oracle::random_label(rng, rng.uniform(1, 33), rng.uniform(1, 33));
    ClassifierConfig cfg;
    cfg.c_length = static_cast<int>(rng.uniform(1, 40));
    const CrackPass pass = classify_crack(m, cfg);
    ASSERT_EQ(pass.result.c_count, oracle::max_component(m, 1));
    EXPECT_EQ(pass.result.found, pass.result.c_count > cfg.c_length);
  }
}

TEST(Crack, ClaimingNeverAddsPinholes) {
  SplitMix64 rng(2003);
  for (int t = 0; t < 200; ++t) {
    const LabelMatrix m = oracle::random_label(rng, rng.uniform(8, 33), rng.uniform(8, 33));
    ClassifierConfig cfg = small_cfg(2, 1);
    cfg.c_length = static_cast<int>(rng.uniform(1, 20));
    const Index before = classify_pinhole(m, cfg).p_count;
    EXPECT_LE(classify_pinhole(classify_crack(m, cfg).claimed, cfg).p_count, before);
  }
}

TEST(SquareBlocks, Examples) {
  LabelMatrix m = LabelMatrix::Zero(15, 15);
  m.block(4, 5, 7, 7) = 2;
  const auto one = find_square_blocks(m, 7);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], (Cell{7, 8}));

  EXPECT_TRUE(find_square_blocks(LabelMatrix::Zero(9, 9), 3).empty());

  LabelMatrix big = LabelMatrix::Zero(15, 15);
  big.block(2, 2, 9, 9) = 2;
  const auto nine = find_square_blocks(big, 7);
  ASSERT_EQ(nine.size(), 9u);
  EXPECT_EQ(nine.front(), (Cell{5, 5}));
  EXPECT_EQ(nine.back(), (Cell{7, 7}));
}

TEST(SquareBlocks, RejectsBadSides) {
  const LabelMatrix m = LabelMatrix::Zero(6, 9);
  EXPECT_THROW(find_square_blocks(m, 4), ParamError);
  EXPECT_THROW(find_square_blocks(m, 1), ParamError);
  EXPECT_THROW(find_square_blocks(m, 7), ParamError);
  EXPECT_NO_THROW(find_square_blocks(m, 5));
}

TEST(SquareBlocks, MatchesSlidingWindow) {
  SplitMix64 rng(3003);
  for (int t = 0; t < 300; ++t) {
    const LabelMatrix m = oracle::random_label(rng, rng.uniform(3, 33), rng.uniform(3, 33));
    const Index limit = std::min(m.rows(), m.cols());
    const Index k = 3 + 2 * rng.uniform(0, (limit - 3) / 2 + 1);
    ASSERT_EQ(find_square_blocks(m, k), oracle::square_blocks(m, k));
  }
}

TEST(BlobSpot, Examples) {
  ClassifierConfig cfg;
  LabelMatrix m = LabelMatrix::Zero(20, 20);
  m.block(5, 5, 7, 7) = 2;
  EXPECT_TRUE(classify_blob(m, cfg));

  LabelMatrix five = LabelMatrix::Zero(20, 20);
  five.block(5, 5, 5, 5) = 2;
  EXPECT_FALSE(classify_blob(five, cfg));
  EXPECT_TRUE(classify_spot(five, cfg));

  LabelMatrix three = LabelMatrix::Zero(20, 20);
  three.block(8, 8, 3, 3) = 2;
  EXPECT_TRUE(classify_spot(three, cfg));
  EXPECT_FALSE(classify_blob(three, cfg));

  LabelMatrix nine = LabelMatrix::Zero(20, 20);
  nine.block(3, 3, 9, 9) = 2;
  EXPECT_TRUE(classify_blob(nine, cfg));
  EXPECT_FALSE(classify_spot(nine, cfg));

  EXPECT_FALSE(classify_blob(LabelMatrix::Zero(20, 20), cfg));
  EXPECT_FALSE(classify_spot(LabelMatrix::Zero(20, 20), cfg));
}

TEST(BlobSpot, SeparateRegionsAreJudgedSeparately) {
  ClassifierConfig cfg;
  LabelMatrix m = LabelMatrix::Zero(30, 30);
  m.block(2, 2, 9, 9) = 2;
  m.block(20, 20, 4, 4) = 2;
  EXPECT_TRUE(classify_blob(m, cfg));
  EXPECT_TRUE(classify_spot(m, cfg));
  // Touching diagonally merges them into one blob-class region.
  m.block(11, 11, 9, 9).matrix().diagonal().setConstant(2);
  EXPECT_FALSE(classify_spot(m, cfg));
}

TEST(BlobSpot, ExclusiveOnSingleRegions) {
  SplitMix64 rng(4004);
  ClassifierConfig cfg;
  int blobs = 0, spots = 0;
  for (int t = 0; t < 200; ++t) {
    const LabelMatrix m = oracle::random_region(rng, 40);
    const bool b = classify_blob(m, cfg), s = classify_spot(m, cfg);
    EXPECT_FALSE(b && s);
    blobs += b;
    spots += s;
  }
  // The generator must exercise both outcomes for the property to mean anything.
  EXPECT_GT(blobs, 10);
  EXPECT_GT(spots, 10);
}

TEST(BlobSpot, SpotMustBeSmallerThanBlob) {
  ClassifierConfig cfg;
  cfg.spot_matx = 7;
  EXPECT_THROW(classify_spot(LabelMatrix::Zero(20, 20), cfg), ConfigError);
}

TEST(Edge, Examples) {
  const ClassifierConfig cfg = small_cfg(3, 1);
  LabelMatrix m = LabelMatrix::Zero(12, 12);
  m(0, 5) = 1;
  EXPECT_EQ(classify_edge(m, cfg), (EdgeResult{true, 1}));

  LabelMatrix corners = LabelMatrix::Zero(12, 12);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) {
      corners(i, j) = corners(i, 11 - j) = 1;
      corners(11 - i, j) = corners(11 - i, 11 - j) = 2;
    }
  EXPECT_EQ(classify_edge(corners, cfg), (EdgeResult{false, 0}));
  EXPECT_EQ(classify_edge(LabelMatrix::Zero(12, 12), cfg), (EdgeResult{false, 0}));
}

TEST(Edge, EveryBandAndValue) {
  const ClassifierConfig cfg = small_cfg(3, 1);
  const std::pair<Index, Index> cells[] = {{0, 3}, {0, 8}, {11, 4}, {5, 0}, {8, 11}};
  for (const auto& [r, c] : cells) {
    for (std::uint8_t v : {1, 2, 3}) {
      LabelMatrix m = LabelMatrix::Zero(12, 12);
      m(r, c) = v;
      EXPECT_TRUE(classify_edge(m, cfg).found) << r << "," << c << " v=" << int(v);
    }
  }
  LabelMatrix inner = LabelMatrix::Zero(12, 12);
  inner(1, 5) = 1;
  EXPECT_FALSE(classify_edge(inner, cfg).found);
}

TEST(Corner, Examples) {
  const ClassifierConfig cfg = small_cfg(3, 1);
  LabelMatrix m = LabelMatrix::Zero(12, 12);
  m.topLeftCorner(3, 3) = 2;
  CornerResult r = classify_corner(m, cfg);
  EXPECT_TRUE(r.found);
  EXPECT_EQ(r.corner_ids, std::vector<CornerId>{CornerId::TopLeft});

  m(1, 1) = 1;
  EXPECT_FALSE(classify_corner(m, cfg).found);

  LabelMatrix all = LabelMatrix::Zero(12, 12);
  all.bottomRightCorner(3, 3) = 2;
  all.topRightCorner(3, 3) = 2;
  r = classify_corner(all, cfg);
  EXPECT_EQ(r.corner_ids, (std::vector<CornerId>{CornerId::TopRight, CornerId::BottomRight}));
  EXPECT_FALSE(classify_corner(LabelMatrix::Zero(12, 12), cfg).found);
}

TEST(EdgeCorner, IgnoreInteriorCells) {
  SplitMix64 rng(5005);
  const ClassifierConfig cfg = small_cfg(4, 2);
  for (int t = 0; t < 100; ++t) {
    LabelMatrix m = oracle::random_label(rng, 24, 24);
    const EdgeResult e = classify_edge(m, cfg);
    const CornerResult c = classify_corner(m, cfg);
    for (int k = 0; k < 30; ++k) {
      const Index r = rng.uniform(cfg.c_range, 24 - cfg.c_range);
      const Index col = rng.uniform(1, 23);
      m(r, col) = static_cast<std::uint8_t>(rng.uniform(0, 4));
    }
    EXPECT_EQ(classify_edge(m, cfg), e);
    EXPECT_EQ(classify_corner(m, cfg), c);
  }
}

TEST(ClassifyAll, GateOnDetection) {
  LabelMatrix m = LabelMatrix::Zero(40, 40);
  m.block(10, 10, 9, 9) = 2;
  const DefectReport r = classify_all(m, {3, 3, false}, {});
  for (DefectKind k : kAllDefectKinds) EXPECT_FALSE(r.found(k));
  EXPECT_TRUE(classify_all(m, kDefective, {}).blob);
}

TEST(ClassifyAll, Deterministic) {
  SplitMix64 rng(6006);
  for (int t = 0; t < 30; ++t) {
    const LabelMatrix m = oracle::random_label(rng, 32, 32);
    EXPECT_EQ(classify_all(m, kDefective, {}), classify_all(m, kDefective, {}));
  }
}

TEST(ClassifyAll, RejectsOverlappingCornerZones) {
  EXPECT_THROW(classify_all(LabelMatrix::Zero(20, 20), kDefective, {}), ConfigError);
}

TEST(ClassifyAll, CrackRunsFirst) {
  // A long line with a pinhole-like notch: once claimed, the notch is no pinhole.
  ClassifierConfig cfg = small_cfg(2, 1);
  cfg.c_length = 10;
  LabelMatrix m = LabelMatrix::Zero(30, 30);
  m.block(10, 2, 1, 20) = 1;
  m(11, 12) = 0;
  m(12, 12) = 1;
  m(11, 11) = 1;
  m(11, 13) = 1;
  m(10, 12) = 1;
  m(10, 11) = m(10, 13) = 0;
  m(12, 11) = m(12, 13) = 0;
  EXPECT_EQ(classify_pinhole(m, cfg).p_count, 1);
  const DefectReport r = classify_all(m, kDefective, cfg);
  EXPECT_TRUE(r.crack.found);
  EXPECT_FALSE(r.pinhole.found);
}

TEST(Report, TextLine) {
  DefectReport r;
  r.detection = {7, 2, true};
  r.pinhole = {true, 1};
  r.corner = {true, {CornerId::TopLeft, CornerId::BottomRight}};
  EXPECT_EQ(to_string(r),
            "defective=1 n1=7 n2=2 pinhole=found(1) crack=not(0) blob=not spot=not edge=not(0) "
            "corner=found(TL,BR)");
}

TEST(KindNames, RoundTrip) {
  for (DefectKind k : kAllDefectKinds) EXPECT_EQ(parse_defect_kind(to_string(k)), k);
  EXPECT_THROW(parse_defect_kind("scratch"), ParseError);
}

TEST(Golden, BlobRadiusFiveLabel) {
  const LabelMatrix golden = load_matrix(testing_support::data_path("blob5_label.txt"));
  const auto centres = find_square_blocks(golden, 7);
  ASSERT_EQ(centres.size(), 1u);
  EXPECT_EQ(centres[0], (Cell{128, 128}));
}
