#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pwtrotter/system.hpp"

namespace pw = pwtrotter;

namespace {

pw::SystemSpec spec_2d(std::vector<int> sides, int eta, double rs) {
  pw::SystemSpec s;
  s.dimension = 2;
  s.sides = std::move(sides);
  s.num_electrons = eta;
  s.rs = rs;
  return s;
}

TEST(System, CellVolume2D) {
  EXPECT_DOUBLE_EQ(pw::cell_volume(spec_2d({2, 2}, 2, 1.0)), 2.0 * std::numbers::pi);
}

TEST(System, CellVolume3D) {
  pw::SystemSpec s;
  s.dimension = 3;
  s.sides = {2, 2, 2};
  s.num_electrons = 3;
  s.rs = 2.0;
  EXPECT_DOUBLE_EQ(pw::cell_volume(s), 32.0 * std::numbers::pi);
}

TEST(System, AxisRangesAreSymmetricAroundZero) {
  EXPECT_EQ(pw::axis_range(2), (std::vector<int>{-1, 0}));
  EXPECT_EQ(pw::axis_range(3), (std::vector<int>{-1, 0, 1}));
  EXPECT_EQ(pw::axis_range(4), (std::vector<int>{-2, -1, 0, 1}));
  EXPECT_EQ(pw::axis_range(5), (std::vector<int>{-2, -1, 0, 1, 2}));
}

TEST(System, LatticePointsRowMajor) {
  const auto pts = pw::lattice_points(spec_2d({2, 2}, 1, 1.0));
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(pts[0], (std::array<int, 3>{-1, -1, 0}));
  EXPECT_EQ(pts[1], (std::array<int, 3>{-1, 0, 0}));
  EXPECT_EQ(pts[2], (std::array<int, 3>{0, -1, 0}));
  EXPECT_EQ(pts[3], (std::array<int, 3>{0, 0, 0}));
}

TEST(System, MomentaAndPositionsMatchSpacing) {
  const auto spec = spec_2d({2, 3}, 4, 1.5);
  const double s = pw::grid_spacing(spec);
  EXPECT_NEAR(s * s * 6, pw::cell_volume(spec), 1e-12 * pw::cell_volume(spec));
  const auto ks = pw::momentum_vectors(spec);
  const auto pts = pw::lattice_points(spec);
  const auto pos = pw::orbital_positions(spec);
  ASSERT_EQ(ks.size(), 6u);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    EXPECT_NEAR(ks[i][0], 2.0 * std::numbers::pi * pts[i][0] / (s * 2), 1e-12);
    EXPECT_NEAR(ks[i][1], 2.0 * std::numbers::pi * pts[i][1] / (s * 3), 1e-12);
    EXPECT_DOUBLE_EQ(pos[i][0], s * pts[i][0]);
    EXPECT_DOUBLE_EQ(pos[i][1], s * pts[i][1]);
  }
}

TEST(System, SpinAndSiteIndexing) {
  const auto spec = spec_2d({2, 2}, 2, 1.0);
  EXPECT_EQ(spec.num_spin_orbitals(), 8);
  EXPECT_EQ(pw::spin_of(spec, 3), 0);
  EXPECT_EQ(pw::spin_of(spec, 4), 1);
  EXPECT_EQ(pw::site_of(spec, 3), 3);
  EXPECT_EQ(pw::site_of(spec, 4), 0);
}

TEST(System, ValidationErrors) {
  EXPECT_THROW(pw::cell_volume(spec_2d({2}, 1, 1.0)), std::invalid_argument);
  EXPECT_THROW(pw::cell_volume(spec_2d({2, 2}, 9, 1.0)), std::invalid_argument);
  EXPECT_THROW(pw::cell_volume(spec_2d({2, 2}, 1, 0.0)), std::invalid_argument);
  pw::SystemSpec bad_dim;
  bad_dim.dimension = 4;
  bad_dim.sides = {2, 2, 2, 2};
  EXPECT_THROW(bad_dim.validate(), std::invalid_argument);
  pw::SystemSpec ok = spec_2d({2, 2}, 8, 1.0);  // eta == N is allowed
  EXPECT_NO_THROW(ok.validate());
}

}  // namespace
