#include "powerops/lambda_free.hpp"
#include "powerops/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace powerops;

namespace {

GradedLambdaElement sym(int g, int k, int cap) { return GradedLambdaElement::symbol(g, k, cap); }

std::vector<Int> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

IntMatrix random_matrix(std::mt19937 &rng, std::size_t rows, std::size_t cols, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

} // namespace

TEST(LambdaSeries, SingleGenerator) {
  auto s = lambda_series(ints({1}), 2);
  EXPECT_EQ(s[0], GradedLambdaElement::constant(1, 2));
  EXPECT_EQ(s[1], sym(0, 1, 2));
  EXPECT_EQ(s[2], sym(0, 2, 2));
}

TEST(LambdaSeries, TwiceGenerator) {
  auto s = lambda_series(ints({2}), 2);
  EXPECT_EQ(s[2], sym(0, 1, 2) * sym(0, 1, 2) + Int(2) * sym(0, 2, 2));
}

TEST(LambdaSeries, NegativeGenerator) {
  auto s = lambda_series(ints({-1}), 2);
  EXPECT_EQ(s[1], Int(-1) * sym(0, 1, 2));
  EXPECT_EQ(s[2], sym(0, 1, 2) * sym(0, 1, 2) - sym(0, 2, 2));
}

TEST(LambdaSeries, ZeroIsUnitSeries) {
  auto s = lambda_series(ints({0}), 3);
  for (int k = 1; k <= 3; ++k) EXPECT_TRUE(s[k].is_zero());
  EXPECT_EQ(lambda_series(std::vector<Int>{}, 3), LambdaSeries(3));
}

TEST(LambdaSeries, SecondPowerOfMultipleMatchesClosedForm) {
  // lambda^2(n x) = n lambda^2(x) + binom(n, 2) lambda^1(x)^2, binom(n,2) = n(n-1)/2 also for n < 0
  for (long n = -10; n <= 10; ++n) {
    auto s = lambda_series(ints({n}), 2);
    GradedLambdaElement expected = Int(n) * sym(0, 2, 2) + Int(n * (n - 1) / 2) * (sym(0, 1, 2) * sym(0, 1, 2));
    EXPECT_EQ(s[2], expected) << n;
    EXPECT_EQ(s[1], Int(n) * sym(0, 1, 2));
  }
}

TEST(LambdaSeries, Multiplicativity) {
  std::mt19937 rng(314);
  std::uniform_int_distribution<long> coef(-4, 4);
  std::uniform_int_distribution<int> gens(1, 3), caps(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const int b = gens(rng), cap = caps(rng);
    std::vector<Int> u(static_cast<std::size_t>(b)), v(static_cast<std::size_t>(b)), w(static_cast<std::size_t>(b));
    for (int i = 0; i < b; ++i) {
      u[static_cast<std::size_t>(i)] = coef(rng);
      v[static_cast<std::size_t>(i)] = coef(rng);
      w[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(i)];
    }
    EXPECT_EQ(lambda_series(w, cap), lambda_series(u, cap) * lambda_series(v, cap));
  }
}

TEST(LambdaSeries, AugmentationGivesBinomials) {
  // Under e -> n, lambda^k(c e) evaluates to binom(c n, k).
  for (long c = -3; c <= 3; ++c)
    for (long n = -4; n <= 4; ++n) {
      auto s = lambda_series(ints({c}), 4);
      std::vector<Int> at{Int(n)};
      for (int k = 0; k <= 4; ++k) EXPECT_EQ(augment(s[k], at), binomial(Int(c * n), k)) << c << " " << n << " " << k;
    }
}

TEST(TnFreeBasis, OneGeneratorWeightTwo) {
  auto basis = tn_free_basis(1, 2);
  ASSERT_EQ(basis.size(), 2u);
  EXPECT_EQ(basis[0], LambdaMonomial({{0, 2}}));
  EXPECT_EQ(basis[1], LambdaMonomial({{0, 1}, {0, 1}}));
}

TEST(TnFreeBasis, OneGeneratorWeightThree) {
  auto basis = tn_free_basis(1, 3);
  ASSERT_EQ(basis.size(), 3u);
  EXPECT_EQ(basis[0], LambdaMonomial({{0, 3}}));
  EXPECT_EQ(basis[1], LambdaMonomial({{0, 2}, {0, 1}}));
  EXPECT_EQ(basis[2], LambdaMonomial({{0, 1}, {0, 1}, {0, 1}}));
}

TEST(TnFreeBasis, TwoGeneratorsWeightTwo) {
  auto basis = tn_free_basis(2, 2);
  std::vector<LambdaMonomial> expected{
      LambdaMonomial({{0, 2}}),          LambdaMonomial({{1, 2}}), LambdaMonomial({{0, 1}, {0, 1}}),
      LambdaMonomial({{0, 1}, {1, 1}}), LambdaMonomial({{1, 1}, {1, 1}}),
  };
  EXPECT_EQ(basis, expected);
}

TEST(TnFreeBasis, EdgeCases) {
  EXPECT_EQ(tn_free_basis(0, 0).size(), 1u);
  EXPECT_EQ(tn_free_basis(0, 3).size(), 0u);
  EXPECT_EQ(tn_free_basis(3, 0).size(), 1u);
  EXPECT_TRUE(tn_free_basis(3, 0)[0].is_unit());
}

TEST(TnFreeBasis, RankIsPartitionNumber) {
  auto p = oracle::partition_numbers(12);
  const long expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
  for (int n = 0; n <= 12; ++n) {
    EXPECT_EQ(Int(static_cast<long>(tn_free_basis(1, n).size())), p[static_cast<std::size_t>(n)]);
    EXPECT_EQ(p[static_cast<std::size_t>(n)], Int(expected[n]));
  }
}

TEST(TnOfMap, IdentityOnZ) {
  for (int n = 0; n <= 6; ++n) {
    const std::size_t pn = tn_free_basis(1, n).size();
    EXPECT_EQ(tn_of_map(IntMatrix::identity(1), n), IntMatrix::identity(pn));
  }
}

TEST(TnOfMap, MultiplicationByM) {
  for (long m = -6; m <= 6; ++m) {
    IntMatrix f{{m}};
    IntMatrix expected{{m, 0}, {m * (m - 1) / 2, m * m}};
    EXPECT_EQ(tn_of_map(f, 2), expected) << m;
  }
}

TEST(TnOfMap, ZeroMap) {
  for (int n = 1; n <= 4; ++n) EXPECT_TRUE(tn_of_map(IntMatrix(2, 3), n).is_zero());
}

TEST(TnOfMap, Functoriality) {
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> dim(1, 2), weight(0, 4);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t a = dim(rng), b = dim(rng), c = dim(rng);
    IntMatrix f = random_matrix(rng, b, a, 3), g = random_matrix(rng, c, b, 3);
    const int n = weight(rng);
    EXPECT_EQ(tn_of_map(g * f, n), tn_of_map(g, n) * tn_of_map(f, n)) << f << " " << g << " n=" << n;
  }
}

TEST(TnPresented, CyclicWeightTwo) {
  for (long m = 2; m <= 20; ++m) {
    GroupClass expected = m % 2 ? GroupClass{0, {m, m}} : GroupClass{0, {m / 2, 2 * m}};
    if (m == 2) expected = GroupClass{0, {4}};
    EXPECT_EQ(tn_presented(Presentation::cyclic(m), 2), expected) << m;
  }
}

TEST(TnPresented, CyclicWeightTwoMatchesGeneratorRelationOracle) {
  for (long m = 1; m <= 9; ++m)
    EXPECT_EQ(tn_presented(Presentation::cyclic(m), 2), oracle::t2_cyclic_by_enumeration(m)) << m;
}

TEST(TnPresented, FreeAndZero) {
  auto p = oracle::partition_numbers(8);
  for (int n = 0; n <= 8; ++n)
    EXPECT_EQ(tn_presented(Presentation::free(1), n), (GroupClass{p[static_cast<std::size_t>(n)].get_ui(), {}}));
  EXPECT_EQ(tn_presented(Presentation::zero(), 0), (GroupClass{1, {}}));
  for (int n = 1; n <= 4; ++n) EXPECT_TRUE(tn_presented(Presentation::zero(), n).is_trivial());
}

TEST(TnPresented, ExponentialFormula) {
  std::mt19937 rng(161);
  std::uniform_int_distribution<long> order(1, 12);
  for (int trial = 0; trial < 30; ++trial) {
    Presentation m = Presentation::cyclic(order(rng)), n = Presentation::cyclic(order(rng));
    for (int w = 0; w <= 4; ++w) {
      GroupClass expected{};
      for (int i = 0; i <= w; ++i)
        expected = direct_sum(expected, tensor(tn_presented(m, i), tn_presented(n, w - i)));
      EXPECT_EQ(tn_presented(direct_sum(m, n), w), expected)
          << "Z/" << m.relations(0, 0) << " + Z/" << n.relations(0, 0) << " weight " << w;
    }
  }
}

TEST(TnPresented, PreservesSurjections) {
  // Z/a -> Z/b for b | a via multiplication by a unit mod b, and Z -> Z/b.
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    long b = std::uniform_int_distribution<long>(2, 9)(rng);
    long a = b * std::uniform_int_distribution<long>(0, 3)(rng);
    long u = 1;
    do u = std::uniform_int_distribution<long>(1, b - 1)(rng);
    while (std::gcd(u, b) != 1);
    Presentation src = a == 0 ? Presentation::free(1) : Presentation::cyclic(a), dst = Presentation::cyclic(b);
    ASSERT_TRUE(map_cokernel(IntMatrix{{u}}, src, dst).is_epi());
    for (int n = 0; n <= 4; ++n) {
      auto induced = map_cokernel(tn_of_map(IntMatrix{{u}}, n), tn_presentation(src, n), tn_presentation(dst, n));
      EXPECT_TRUE(induced.is_epi()) << a << " -> " << b << " unit " << u << " weight " << n;
    }
  }
}

TEST(Adams, LowDegrees) {
  EXPECT_EQ(adams(1, 3), sym(0, 1, 3));
  EXPECT_EQ(adams(2, 3), sym(0, 1, 3) * sym(0, 1, 3) - Int(2) * sym(0, 2, 3));
  // psi^3 = l1^3 - 3 l1 l2 + 3 l3
  GradedLambdaElement l1 = sym(0, 1, 3);
  EXPECT_EQ(adams(3, 3), l1 * l1 * l1 - Int(3) * (l1 * sym(0, 2, 3)) + Int(3) * sym(0, 3, 3));
  EXPECT_THROW(adams(0, 3), std::invalid_argument);
  EXPECT_THROW(adams(4, 3), std::invalid_argument);
}

TEST(Adams, TrivialOnIntegers) {
  for (int i = 1; i <= 5; ++i) {
    auto psi = adams(i, 5);
    for (long n = -10; n <= 10; ++n) EXPECT_EQ(augment(psi, std::vector<Int>{Int(n)}), Int(n)) << i << " " << n;
  }
}

TEST(ThetaFromLambda, Generator) {
  EXPECT_EQ(theta_from_lambda(2, ints({1}), 2), Int(-1) * sym(0, 2, 2));
  EXPECT_TRUE(theta_from_lambda(3, ints({0}), 3).is_zero());
  EXPECT_THROW(theta_from_lambda(4, ints({1}), 4), std::invalid_argument);
  EXPECT_THROW(theta_from_lambda(3, ints({1}), 2), std::invalid_argument);
}

TEST(ThetaFromLambda, GroundRingValues) {
  for (long p : {2L, 3L, 5L})
    for (long n = -6; n <= 6; ++n) {
      auto t = theta_from_lambda(p, ints({n}), static_cast<int>(p));
      EXPECT_EQ(augment(t, std::vector<Int>{Int(1)}), exact_div(Int(n) - ipow(Int(n), static_cast<unsigned long>(p)), Int(p)));
    }
  // p = 3, n = 2 -> (2 - 8)/3 = -2
  EXPECT_EQ(augment(theta_from_lambda(3, ints({2}), 3), std::vector<Int>{Int(1)}), Int(-2));
}

TEST(ThetaFromLambda, IntegralityNeverFails) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> coef(-6, 6);
  std::uniform_int_distribution<int> gens(1, 3);
  for (long p : {2L, 3L, 5L})
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Int> w(static_cast<std::size_t>(gens(rng)));
      for (auto &c : w) c = coef(rng);
      EXPECT_NO_THROW(theta_from_lambda(p, w, static_cast<int>(p)));
    }
}

TEST(KeyConstant, SmallWeights) {
  for (long p : {2L, 3L, 5L}) {
    EXPECT_EQ(key_constant(0, p, 4), 1);
    EXPECT_EQ(key_constant(1, p, 4), 1);
  }
  EXPECT_EQ(key_constant(2, 2, 4), 2);
  auto k3 = key_constant(3, 2, 6);
  ASSERT_TRUE(k3);
  EXPECT_LE(*k3, 3);
}

TEST(KeyConstant, WeightTwoAtOddPrimesIsOne) {
  // T_2(Z/p) = Z/p + Z/p for odd p, which already has two summands mod p.
  for (long p : {3L, 5L, 7L}) {
    EXPECT_EQ(tn_presented(Presentation::cyclic(p), 2), (GroupClass{0, {p, p}}));
    EXPECT_EQ(key_constant(2, p, 4), 1) << p;
  }
}

TEST(KeyConstant, SentinelWhenBoundTooSmall) { EXPECT_FALSE(key_constant(2, 2, 1)); }
