#include <gtest/gtest.h>

#include <cmath>

#include "dense_oracle.hpp"
#include "gen.hpp"
#include "parrondo/errors.hpp"
#include "parrondo/generator_lab.hpp"

using namespace parrondo;

namespace {

const GameParams kP{{0.1, 0.6, 0.6, 0.9}};
const GameParams kFair{{0.5, 0.5, 0.5, 0.5}};

double table_distance(const CylinderFunction& a, const CylinderFunction& b) { return (a - b).sup_norm(); }

int wbit(std::uint32_t w, int j) { return static_cast<int>((w >> j) & 1u); }

}  // namespace

TEST(Cylinder, ConstructionAndAlgebra) {
  EXPECT_THROW(CylinderFunction(1, std::vector<double>(7)), InvalidArgument);
  EXPECT_THROW(CylinderFunction(5, std::vector<double>(2048)), InvalidArgument);
  const auto c = CylinderFunction::constant(1, 2.5);
  EXPECT_EQ(c.window(), 3);
  EXPECT_EQ(c.sup_norm(), 2.5);
  const auto x0 = CylinderFunction::coordinate(1, 0);
  for (std::uint32_t w = 0; w < 8; ++w) EXPECT_EQ(x0[w], wbit(w, 1));
  const auto y = (x0 * 2.0 + c) - c;
  EXPECT_EQ(table_distance(y, x0 * 2.0), 0.0);
  const auto wide = x0.widened(3);
  EXPECT_EQ(wide.half_width(), 3);
  for (std::uint32_t w = 0; w < 128; ++w) EXPECT_EQ(wide[w], wbit(w, 3));
  EXPECT_EQ(x0.eval_centered(0b0001000, 3), 1.0);
  EXPECT_THROW(wide.widened(1), InvalidArgument);
}

TEST(Psi, ConstantsAndCoordinates) {
  const auto psi = embed_psi(CylinderFunction::constant(1, -0.75), 6);
  for (double v : psi.values) EXPECT_EQ(v, -0.75);
  const auto site0 = embed_psi(CylinderFunction::coordinate(0, 0), 5);
  for (std::size_t s = 0; s < site0.values.size(); ++s) EXPECT_EQ(site0.values[s], static_cast<double>(s & 1u));
  EXPECT_THROW(embed_psi(CylinderFunction::constant(2, 0), 4), InvalidArgument);
  EXPECT_THROW(embed_psi(CylinderFunction::constant(1, 0), 21), CapacityExceeded);
}

TEST(Psi, WindowEqualsRing) {
  ptest::Gen g(30);
  // k = 1, n = 3: labels -1, 0, 1 are indices 2, 0, 1.
  const auto f1 = g.cylinder(1);
  const auto p1 = embed_psi(f1, 3);
  for (std::uint32_t s = 0; s < 8; ++s) {
    const std::uint32_t w = ((s >> 2) & 1u) | ((s & 1u) << 1) | (((s >> 1) & 1u) << 2);
    EXPECT_EQ(p1.values[s], f1[w]);
  }
  // k = 2, n = 5: labels -2..2 are indices 3, 4, 0, 1, 2.
  const auto f2 = g.cylinder(2);
  const auto p2 = embed_psi(f2, 5);
  const int idx[5] = {3, 4, 0, 1, 2};
  for (std::uint32_t s = 0; s < 32; ++s) {
    std::uint32_t w = 0;
    for (int j = 0; j < 5; ++j) w |= ((s >> idx[j]) & 1u) << j;
    EXPECT_EQ(p2.values[s], f2[w]);
  }
}

TEST(Generators, AnnihilateConstants) {
  ptest::Gen g(31);
  for (int k = 0; k <= kMaxCylinderHalfWidth; ++k) {
    const auto c = CylinderFunction::constant(k, g.in(-5, 5));
    const auto p = g.any_params();
    EXPECT_LE(omega_Aprime(c).sup_norm(), 1e-14);
    EXPECT_LE(omega_Aprime_duel_form(c).sup_norm(), 1e-14);
    EXPECT_LE(omega_B(p, c).sup_norm(), 1e-14);
    EXPECT_LE(omega_Cprime(0.3, p, c).sup_norm(), 1e-14);
    EXPECT_EQ(omega_B(p, c).half_width(), k + 1);
  }
  EXPECT_THROW(omega_B(kP, CylinderFunction::constant(4, 0)), InvalidArgument);
}

TEST(Generators, AprimeOnCoordinateByHand) {
  const auto om = omega_Aprime(CylinderFunction::coordinate(0, 0));
  ASSERT_EQ(om.half_width(), 1);
  for (std::uint32_t w = 0; w < 8; ++w) {
    const int l = wbit(w, 0), e = wbit(w, 1), r = wbit(w, 2);
    const double flip = rate_Aprime_local(l, e, r) * (1 - 2 * e);
    const double swaps = 0.5 * (l - e) + 0.5 * (r - e);
    EXPECT_NEAR(om[w], flip + swaps, 1e-15) << w;
  }
}

TEST(Generators, BOnCoordinate) {
  const auto fair = omega_B(kFair, CylinderFunction::coordinate(0, 0));
  for (std::uint32_t w = 0; w < 8; ++w) EXPECT_NEAR(fair[w], 0.5 * (1 - 2 * wbit(w, 1)), 1e-15);
  ptest::Gen g(32);
  const auto p = g.any_params();
  const auto om = omega_B(p, CylinderFunction::coordinate(0, 0));
  for (std::uint32_t w = 0; w < 8; ++w) {
    const int l = wbit(w, 0), e = wbit(w, 1), r = wbit(w, 2);
    EXPECT_NEAR(om[w], rate_B_local(p, l, e, r) * (1 - 2 * e), 1e-15);
  }
}

TEST(Generators, DuelFormMatchesFlipSwapForm) {
  ptest::Gen g(33);
  for (int k = 0; k <= 3; ++k) {
    const auto f = g.cylinder(k);
    EXPECT_LE(table_distance(omega_Aprime(f), omega_Aprime_duel_form(f)), 1e-13);
  }
}

TEST(Generators, MixtureIsConvexCombination) {
  ptest::Gen g(34);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = g.integer(0, 3);
    const auto f = g.cylinder(k), h = g.cylinder(k);
    const auto p = g.any_params();
    const double gamma = g.in(0.01, 0.99);
    const auto lhs = omega_Cprime(gamma, p, f);
    EXPECT_LE(table_distance(lhs, omega_Aprime(f) * gamma + omega_B(p, f) * (1 - gamma)), 1e-13);
    EXPECT_LE(table_distance(lhs, omega_Cprime_grouped(gamma, p, f, gamma / 2)), 1e-13);
    EXPECT_LE(table_distance(omega_Cprime(gamma, p, f * 2.0 + h), lhs * 2.0 + omega_Cprime(gamma, p, h)), 1e-12);
  }
  const auto f = g.cylinder(1);
  EXPECT_LE(table_distance(omega_Cprime(0.5, kP, f), (omega_Aprime(f) + omega_B(kP, f)) * 0.5), 1e-14);
  EXPECT_THROW(omega_Cprime(0.0, kP, f), InvalidArgument);
  EXPECT_THROW(omega_Cprime(1.0, kP, f), InvalidArgument);
}

TEST(Generators, SwapCoefficientGammaIsADifferentOperator) {
  ptest::Gen g(35);
  const auto f = g.cylinder(1);
  const auto diff = omega_Cprime_grouped(0.5, kP, f, 0.5) - omega_Cprime(0.5, kP, f);
  EXPECT_LE(table_distance(diff, swap_part(f) * 0.25), 1e-14);
  EXPECT_GT(diff.sup_norm(), 1e-3);
}

TEST(Generators, OutputHalfWidthIsKPlusOne) {
  ptest::Gen g(36);
  for (int k = 0; k <= 2; ++k) {
    const auto f = g.cylinder(k);
    for (const auto& om : {omega_Aprime(f), omega_B(kP, f), omega_Cprime(0.4, kP, f)}) {
      ASSERT_EQ(om.half_width(), k + 1);
      const auto wide = om.widened(k + 2);
      const std::uint32_t edge = (1u << 0) | (1u << (2 * (k + 2)));
      for (std::uint32_t w = 0; w < wide.table().size(); ++w) EXPECT_EQ(wide[w], wide[w ^ edge]);
    }
  }
}

TEST(DiscreteOmega, ConstantsVanish) {
  const WindowFunctionOnRing c{5, std::vector<double>(32, 3.0)};
  for (const LabGame& game : {LabGame{AprimeGame{}}, LabGame{BGame{}}, LabGame{MixtureGame{0.3}}, LabGame{PeriodicGame{2, 1}}}) {
    EXPECT_LE(discrete_omega(5, game, kP, c).sup_norm(), 1e-14);
  }
}

TEST(DiscreteOmega, BMatchesDenseKernel) {
  ptest::Gen g(37);
  for (int n : {3, 4, 5}) {
    const auto p = g.any_params();
    WindowFunctionOnRing h{n, std::vector<double>(std::size_t{1} << n)};
    dense::Vec hv(1 << n);
    for (std::size_t s = 0; s < h.values.size(); ++s) hv(static_cast<Eigen::Index>(s)) = h.values[s] = g.in(-1, 1);
    const dense::Vec expect = n * (dense::P_B(n, p) * hv - hv);
    const auto got = discrete_omega(n, BGame{}, p, h);
    for (std::size_t s = 0; s < h.values.size(); ++s) EXPECT_NEAR(got.values[s], expect(static_cast<Eigen::Index>(s)), 1e-14);
  }
}

TEST(DiscreteOmega, AprimeMatchesPairResetSum) {
  ptest::Gen g(38);
  const int n = 6;
  WindowFunctionOnRing h{n, std::vector<double>(64)};
  for (auto& v : h.values) v = g.in(-1, 1);
  const auto got = discrete_omega(n, AprimeGame{}, kP, h);
  for (unsigned s = 0; s < 64; ++s) {
    double expect = 0;
    for (int x = 0; x < n; ++x) {
      const unsigned xl = static_cast<unsigned>((x + n - 1) % n), xr = static_cast<unsigned>((x + 1) % n);
      const unsigned lost_left = (s | (1u << xl)) & ~(1u << x);
      const unsigned lost_right = (s & ~(1u << x)) | (1u << xr);
      expect += 0.5 * h.values[lost_left] + 0.5 * h.values[lost_right] - h.values[s];
    }
    EXPECT_NEAR(got.values[s], expect, 1e-14);
  }
}

TEST(DiscreteOmega, MixtureIsConvexCombination) {
  ptest::Gen g(39);
  const int n = 7;
  WindowFunctionOnRing h{n, std::vector<double>(128)};
  for (auto& v : h.values) v = g.in(-1, 1);
  const auto a = discrete_omega(n, AprimeGame{}, kP, h), b = discrete_omega(n, BGame{}, kP, h);
  const auto c = discrete_omega(n, MixtureGame{0.3}, kP, h);
  for (std::size_t s = 0; s < h.values.size(); ++s) EXPECT_NEAR(c.values[s], 0.3 * a.values[s] + 0.7 * b.values[s], 1e-14);
}

TEST(LemmaCheck, ExactForLargeEnoughRings) {
  ptest::Gen g(40);
  for (int trial = 0; trial < 4; ++trial) {
    const auto f = g.cylinder(1);
    const auto p = g.any_params();
    for (int n = 6; n <= 10; ++n) {
      for (const LabGame& game : {LabGame{AprimeGame{}}, LabGame{BGame{}}, LabGame{MixtureGame{g.in(0.05, 0.95)}}}) {
        const auto check = lemma_check(f, n, game, p);
        EXPECT_TRUE(check.within_hypothesis);
        EXPECT_LE(check.residual, 1e-12) << "n=" << n;
      }
    }
  }
  const auto f0 = g.cylinder(0), f2 = g.cylinder(2);
  EXPECT_LE(lemma_check(f0, 4, MixtureGame{0.5}, kP).residual, 1e-12);
  EXPECT_LE(lemma_check(f2, 8, MixtureGame{0.5}, kP).residual, 1e-12);
}

TEST(LemmaCheck, BelowHypothesisIsOnlyRecorded) {
  ptest::Gen g(41);
  const auto check = lemma_check(g.cylinder(1), 5, MixtureGame{0.5}, kP);
  EXPECT_FALSE(check.within_hypothesis);
  EXPECT_TRUE(std::isfinite(check.residual));
  EXPECT_THROW(lemma_check(g.cylinder(1), 4, BGame{}, kP), InvalidArgument);
  EXPECT_THROW(lemma_check(g.cylinder(1), 8, PeriodicGame{1, 1}, kP), InvalidArgument);
  EXPECT_LE(lemma_check(CylinderFunction::constant(1, 4.0), 6, BGame{}, kP).residual, 1e-14);
}

TEST(PeriodicResidual, ConstantsAndMargins) {
  EXPECT_LE(periodic_residual(CylinderFunction::constant(1, 2.0), 6, 1, 1, kP), 1e-14);
  ptest::Gen g(42);
  const auto f = g.cylinder(1);
  EXPECT_THROW(periodic_residual(f, 8, 1, 1, kP, 2), InvalidArgument);
  EXPECT_NO_THROW(periodic_residual(f, 8, 1, 1, kP, 3));
  EXPECT_THROW(periodic_residual(f, 8, 0, 1, kP), InvalidArgument);
  EXPECT_THROW(periodic_residual(f, 16, 1, 1, kP), CapacityExceeded);
}

TEST(PeriodicResidual, DecaysLikeOneOverN) {
  ptest::Gen g(43);
  const auto f = g.cylinder(1);
  std::vector<double> res;
  for (int n = 6; n <= 12; n += 2) res.push_back(periodic_residual(f, n, 1, 1, kP));
  for (std::size_t i = 1; i < res.size(); ++i) EXPECT_LT(res[i], res[i - 1]);
  EXPECT_NEAR(res.back() / res.front(), 0.5, 0.125);
}
