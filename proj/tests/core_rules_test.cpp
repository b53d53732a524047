#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "parrondo/core_rules.hpp"
#include "parrondo/errors.hpp"

using namespace parrondo;

TEST(GameParams, RejectsOutOfRange) {
  EXPECT_THROW(GameParams::make(-0.1, 0.5, 0.5, 0.5), InvalidArgument);
  EXPECT_THROW(GameParams::make(0.5, 0.5, 1.0001, 0.5), InvalidArgument);
  EXPECT_THROW(GameParams::make(0.5, std::nan(""), 0.5, 0.5), InvalidArgument);
  EXPECT_NO_THROW(GameParams::make(0.0, 1.0, 0.0, 1.0));
  EXPECT_FALSE(GameParams::make(0.0, 0.5, 0.5, 0.5).interior());
  EXPECT_TRUE(GameParams::make(0.1, 0.5, 0.5, 0.9).interior());
}

TEST(GameParams, ReflectedSwapsMiddleCoins) {
  const auto p = GameParams::make(0.1, 0.2, 0.3, 0.4);
  EXPECT_EQ(p.reflected(), GameParams::make(0.1, 0.3, 0.2, 0.4));
  EXPECT_EQ(p.reflected().reflected(), p);
  EXPECT_DOUBLE_EQ(p.q(3), 0.6);
}

TEST(Configuration, RequiresThreePlayers) {
  EXPECT_THROW(Configuration(2), InvalidArgument);
  EXPECT_NO_THROW(Configuration(3));
  EXPECT_THROW(Configuration(3, 8), InvalidArgument);
  EXPECT_THROW((Configuration{0, 1, 2}), InvalidArgument);
}

TEST(Configuration, CircularAccessAndCodes) {
  const Configuration c{1, 0, 1, 1};
  EXPECT_EQ(c.code(), 0b1101u);
  EXPECT_EQ(c.get(-1), 1);
  EXPECT_EQ(c.get(5), 0);
  EXPECT_EQ(c.get(-7), 0);
  EXPECT_THROW(c.at(4), InvalidArgument);
  EXPECT_EQ(c.count_ones(), 3);
  EXPECT_EQ(c.to_string(), "1011");
  EXPECT_EQ(Configuration(4, c.code()), c);
}

TEST(Configuration, WideRingsSpanWords) {
  Configuration c(130);
  c.set(129, 1);
  c.set(64, 1);
  EXPECT_EQ(c.get(-1), 1);
  EXPECT_EQ(c.count_ones(), 2);
  EXPECT_EQ(c.rotated(1).get(0), 1);
  EXPECT_EQ(c.rotated(1).get(65), 1);
  EXPECT_THROW(c.code(), InvalidArgument);
}

TEST(Neighborhood, Examples) {
  for (int x = 0; x < 3; ++x) {
    EXPECT_EQ(m_index(Configuration{0, 0, 0}, x), 0);
    EXPECT_EQ(m_index(Configuration{1, 1, 1}, x), 3);
  }
  EXPECT_EQ(m_index(Configuration{0, 1, 1}, 1), 1);
  EXPECT_EQ(m_index(Configuration{1, 0, 0}, 1), 2);
  EXPECT_EQ(m_index(Configuration{0, 0, 1}, 0), 2);
}

TEST(Flip, Examples) {
  EXPECT_EQ(flip(Configuration{0, 0, 0}, 0), (Configuration{1, 0, 0}));
  EXPECT_EQ(flip(Configuration{1, 0, 1}, 2), (Configuration{1, 0, 0}));
  EXPECT_THROW(flip(Configuration{1, 0, 1}, 3), InvalidArgument);
}

TEST(Duel, LoserBecomesZero) {
  // Players at 0-based sites 0 and 1 both winning; site 0 loses to its right neighbor.
  const Configuration c{1, 1, 0, 1};
  EXPECT_EQ(duel(c, 0, Side::right, Outcome::lose), (Configuration{0, 1, 0, 1}));
  EXPECT_EQ(duel(c, 0, Side::left, Outcome::win), (Configuration{1, 1, 0, 0}));
  EXPECT_EQ(duel(c, 3, Side::right, Outcome::win), (Configuration{0, 1, 0, 1}));
}

TEST(Swap, Examples) {
  EXPECT_EQ(swap(Configuration{0, 1, 0}, 0), (Configuration{1, 0, 0}));
  EXPECT_EQ(swap(Configuration{1, 0, 0}, 2), (Configuration{0, 0, 1}));
  EXPECT_EQ(swap(Configuration{1, 1, 0}, 0), (Configuration{1, 1, 0}));
}

TEST(Rates, FairAndForced) {
  const auto fair = GameParams::make(0.5, 0.5, 0.5, 0.5);
  const auto p = GameParams::make(0.1, 0.6, 0.6, 0.9);
  ptest::Gen g(1);
  for (int i = 0; i < 50; ++i) {
    const auto c = g.config(5);
    EXPECT_EQ(rate_B(fair, c, i % 5), 0.5);
  }
  EXPECT_DOUBLE_EQ(rate_B(p, Configuration{0, 0, 0, 0}, 2), 0.1);
  EXPECT_DOUBLE_EQ(rate_B(p, Configuration{1, 1, 1, 1}, 2), 1.0 - 0.9);
  EXPECT_EQ(rate_Aprime(Configuration{1, 1, 1, 1}, 1), 1.0);
  EXPECT_EQ(rate_Aprime(Configuration{0, 0, 0, 0}, 3), 1.0);
  for (int x = 0; x < 4; ++x) EXPECT_EQ(rate_Aprime(Configuration{0, 1, 0, 1}, x), 0.0);
  EXPECT_EQ(rate_Aprime(Configuration{0, 0, 1, 1}, 1), 0.5);
}

TEST(Rates, ComplementaryOverAllLocalPatterns) {
  ptest::Gen g(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = g.any_params();
    for (int pat = 0; pat < 8; ++pat) {
      const int l = (pat >> 2) & 1, self = (pat >> 1) & 1, r = pat & 1;
      EXPECT_EQ(rate_B_local(p, l, self, r) + rate_B_local(p, l, 1 - self, r), 1.0);
      EXPECT_EQ(rate_Aprime_local(l, self, r) + rate_Aprime_local(l, 1 - self, r), 1.0);
      const double a = rate_Aprime_local(l, self, r);
      EXPECT_TRUE(a == 0.0 || a == 0.5 || a == 1.0);
      const double b = rate_B_local(p, l, self, r);
      EXPECT_GE(b, 0.0);
      EXPECT_LE(b, 1.0);
    }
  }
}

TEST(Labels, CenteredRange) {
  EXPECT_EQ(label_range(5).left, -2);
  EXPECT_EQ(label_range(5).right, 2);
  EXPECT_EQ(label_range(6).left, -3);
  EXPECT_EQ(label_range(6).right, 2);
  for (int n : {3, 4, 7, 10}) {
    for (int i = 0; i < n; ++i) {
      const int l = label_of(n, i);
      EXPECT_GE(l, label_range(n).left);
      EXPECT_LE(l, label_range(n).right);
      EXPECT_EQ(index_of(n, l), i);
    }
  }
  EXPECT_EQ(index_of(6, -1), 5);
  EXPECT_EQ(index_of(6, 1), 1);
}

TEST(Schedulers, ValidateAndDescribe) {
  EXPECT_THROW(validate(SchedulerSpec{RandomMixture{0.0}}), InvalidArgument);
  EXPECT_THROW(validate(SchedulerSpec{RandomMixture{1.0}}), InvalidArgument);
  EXPECT_THROW(validate(SchedulerSpec{PeriodicPattern{0, 1}}), InvalidArgument);
  EXPECT_NO_THROW(validate(SchedulerSpec{SingleGame{Game::aprime}}));
  EXPECT_DOUBLE_EQ(aprime_fraction(PeriodicPattern{2, 1}), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(aprime_fraction(RandomMixture{0.3}), 0.3);
  EXPECT_DOUBLE_EQ(aprime_fraction(SingleGame{Game::b}), 0.0);
  EXPECT_FALSE(describe(PeriodicPattern{2, 1}).empty());
}

// Properties over random rings.

TEST(CoreProperties, MovesCommuteWithRotation) {
  ptest::Gen g(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = g.integer(3, 70);
    const auto c = g.config(n);
    const int x = g.integer(0, n - 1), k = g.integer(0, n - 1);
    const auto rot = [&](const Configuration& a) { return a.rotated(k); };
    const int xr = (x + k) % n;
    EXPECT_EQ(rot(flip(c, x)), flip(rot(c), xr));
    EXPECT_EQ(rot(swap(c, x)), swap(rot(c), xr));
    EXPECT_EQ(rot(duel(c, x, Side::left, Outcome::win)), duel(rot(c), xr, Side::left, Outcome::win));
    EXPECT_EQ(m_index(c, x), m_index(rot(c), xr));
  }
}

TEST(CoreProperties, InvolutionsAndLocality) {
  ptest::Gen g(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = g.integer(3, 40);
    const auto c = g.config(n);
    const int x = g.integer(0, n - 1);
    EXPECT_EQ(flip(flip(c, x), x), c);
    EXPECT_EQ(swap(swap(c, x), x), c);
    if (c.get(x) == c.get(x + 1)) {
      EXPECT_EQ(swap(c, x), c);
    }
    auto changed = [&](const Configuration& d) {
      int k = 0;
      for (int i = 0; i < n; ++i) k += c.get(i) != d.get(i);
      return k;
    };
    EXPECT_EQ(changed(flip(c, x)), 1);
    EXPECT_LE(changed(swap(c, x)), 2);
    for (Side s : {Side::left, Side::right}) {
      for (Outcome o : {Outcome::win, Outcome::lose}) {
        const auto d = duel(c, x, s, o);
        EXPECT_LE(changed(d), 2);
        const int y = s == Side::left ? x - 1 : x + 1;
        EXPECT_EQ(d.get(x) + d.get(y), 1);
        EXPECT_EQ(d.get(x), o == Outcome::win ? 1 : 0);
        EXPECT_LE(std::abs(d.count_ones() - c.count_ones()), 1);
      }
    }
    EXPECT_EQ(duel(c, x, Side::right, Outcome::lose), duel(c, (x + 1) % n, Side::left, Outcome::win));
  }
}

TEST(CoreProperties, ReflectionMapsCoins) {
  ptest::Gen g(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = g.integer(3, 20);
    const auto c = g.config(n);
    const auto p = g.any_params();
    const int x = g.integer(0, n - 1);
    EXPECT_EQ(rate_B(p, c, x), rate_B(p.reflected(), c.reflected(), (n - x) % n));
  }
}
