#include "powerops/completion.hpp"
#include "powerops/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace powerops;

namespace {

std::vector<Atom> atoms_for(long p) {
  const long q = p == 2 ? 3 : 2;
  return {{AtomKind::integers, 0},
          {AtomKind::cyclic, Int(p)},
          {AtomKind::cyclic, ipow(p, 2)},
          {AtomKind::cyclic, ipow(p, 3)},
          {AtomKind::cyclic, Int(q)},
          {AtomKind::cyclic, Int(q * q)},
          {AtomKind::p_inverted, 0},
          {AtomKind::prufer, 0},
          {AtomKind::p_adic, 0}};
}

ModuleExpr random_expr(std::mt19937 &rng, long p) {
  auto atoms = atoms_for(p);
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1), count(0, 4);
  std::vector<Atom> chosen;
  for (std::size_t i = count(rng); i > 0; --i) chosen.push_back(atoms[pick(rng)]);
  return ModuleExpr(chosen);
}

ModuleExpr random_fg_expr(std::mt19937 &rng, long p) {
  const long q = p == 2 ? 3 : 2;
  std::uniform_int_distribution<int> kind(0, 2), exponent(1, 3), count(0, 3);
  std::vector<Atom> chosen;
  for (int i = count(rng); i > 0; --i) {
    switch (kind(rng)) {
    case 0: chosen.push_back({AtomKind::integers, 0}); break;
    case 1: chosen.push_back({AtomKind::cyclic, ipow(p, static_cast<unsigned long>(exponent(rng)))}); break;
    default: chosen.push_back({AtomKind::cyclic, Int(q) * ipow(p, static_cast<unsigned long>(exponent(rng)))}); break;
    }
  }
  return ModuleExpr(chosen);
}

} // namespace

TEST(ModuleGrammar, ParsesAndNormalizes) {
  EXPECT_EQ(parse_module("Z + Z/12", 2), ModuleExpr::integers() + ModuleExpr::cyclic(3) + ModuleExpr::cyclic(4));
  EXPECT_EQ(parse_module("Z/12").to_string(), "Z/3 + Z/4");
  EXPECT_EQ(parse_module("  Zp_hat+Z  ", 3).to_string(), "Z + Zp_hat");
  EXPECT_EQ(parse_module("0").to_string(), "0");
  EXPECT_EQ(parse_module("Z/1 + 0").to_string(), "0");
  EXPECT_EQ(parse_module("Z[1/p]", 5), ModuleExpr::p_inverted());
  EXPECT_EQ(parse_module("Z[1/5]", 5), ModuleExpr::p_inverted());
  EXPECT_EQ(parse_module("Zp_inf + Zp_inf", 2).count(AtomKind::prufer), 2u);
}

TEST(ModuleGrammar, RejectsMalformedInput) {
  for (const char *bad : {"", " ", "Z +", "+ Z", "Q", "Z/0", "Z/-3", "Z/x", "Z/", "Z[1/]", "Zp"})
    EXPECT_THROW(parse_module(bad, 2), parse_error) << bad;
  EXPECT_THROW(parse_module("Zp_hat"), parse_error);
  EXPECT_THROW(parse_module("Z[1/3]", 2), unsupported_input);
}

TEST(ModuleGrammar, RoundTrip) {
  std::mt19937 rng(5);
  for (long p : {2L, 3L, 5L})
    for (int trial = 0; trial < 50; ++trial) {
      ModuleExpr m = random_expr(rng, p);
      std::string text = m.to_string();
      EXPECT_EQ(parse_module(text, p), m) << text;
    }
}

TEST(LComplete, AtomTableMatchesTorTowers) {
  for (long p : {2L, 3L, 5L, 7L})
    for (auto const &atom : atoms_for(p)) {
      auto [tor0, tor1] = oracle::tor_towers(atom.to_string(), p, 20);
      auto lim0 = oracle::tower_limit(tor0), lim1 = oracle::tower_limit(tor1);
      EXPECT_TRUE(lim0.mittag_leffler);
      EXPECT_TRUE(lim1.mittag_leffler);
      CompletionResult r = l_complete(ModuleExpr({atom}), p);
      EXPECT_EQ(r.L0.to_string(), lim0.lim) << atom.to_string() << " p=" << p;
      EXPECT_EQ(r.L1.to_string(), lim1.lim) << atom.to_string() << " p=" << p;
    }
}

TEST(LComplete, Examples) {
  EXPECT_EQ(l_complete(parse_module("Z"), 3), (CompletionResult{ModuleExpr::p_adic(), {}}));
  EXPECT_EQ(l_complete(parse_module("Zp_inf", 3), 3), (CompletionResult{{}, ModuleExpr::p_adic()}));
  EXPECT_EQ(l_complete(parse_module("Z/7"), 3), CompletionResult{});
  CompletionResult r = l_complete(parse_module("Z + Z/12"), 2);
  EXPECT_EQ(r.L0, ModuleExpr::p_adic() + ModuleExpr::cyclic(4));
  EXPECT_TRUE(r.L1.is_zero());
  EXPECT_EQ(l_complete(parse_module("Z/6"), 2).L0.to_string(), "Z/2");
  EXPECT_EQ(l_complete(parse_module("Z[1/p]", 5), 5), CompletionResult{});
  EXPECT_THROW(l_complete(parse_module("Z"), 6), std::invalid_argument);
}

TEST(LComplete, Idempotent) {
  std::mt19937 rng(10);
  for (long p : {2L, 3L, 5L})
    for (int trial = 0; trial < 100; ++trial) {
      CompletionResult r = l_complete(random_expr(rng, p), p);
      EXPECT_EQ(l_complete(r.L0, p), (CompletionResult{r.L0, {}}));
      EXPECT_EQ(l_complete(r.L1, p), (CompletionResult{r.L1, {}}));
    }
}

TEST(LComplete, VanishesExactlyWhenModPVanishes) {
  std::mt19937 rng(11);
  for (long p : {2L, 3L, 5L})
    for (int trial = 0; trial < 100; ++trial) {
      ModuleExpr m = random_expr(rng, p);
      // Z/p (x) M from the first level of the Tor_0 towers
      bool mod_p_zero = true;
      for (auto const &a : m.atoms()) mod_p_zero &= oracle::tor_towers(a.to_string(), p, 2).first.exponent[0] == 0;
      EXPECT_EQ(l_complete(m, p).L0.is_zero(), mod_p_zero) << m.to_string();
      EXPECT_EQ(reduce_mod_prime_power(m, p, 1).is_trivial(), mod_p_zero) << m.to_string();
    }
}

TEST(LComplete, ModPrimePowerInsensitive) {
  std::mt19937 rng(12);
  for (long p : {2L, 3L})
    for (int trial = 0; trial < 100; ++trial) {
      ModuleExpr m = random_fg_expr(rng, p);
      for (int k = 1; k <= 4; ++k) {
        GroupClass direct = classify(tensor_with_cyclic(m.presentation(), ipow(p, static_cast<unsigned long>(k))));
        EXPECT_EQ(direct, reduce_mod_prime_power(l_complete(m, p).L0, p, k)) << m.to_string() << " k=" << k;
      }
    }
}

TEST(L0Equivalence, Examples) {
  auto z = Presentation::free(1);
  EXPECT_TRUE(is_l0_equivalence(map_cokernel(IntMatrix{{3}}, z, z), 2));
  EXPECT_FALSE(is_l0_equivalence(map_cokernel(IntMatrix{{2}}, z, z), 2));
  EXPECT_TRUE(is_l0_equivalence(map_cokernel(IntMatrix{{1}}, z, z), 5));
  // Z -> Z/3 is not: its kernel is infinite
  EXPECT_FALSE(is_l0_equivalence(map_cokernel(IntMatrix{{1}}, z, Presentation::cyclic(3)), 2));
  // Z/12 -> Z/4 projection at p = 2: kernel Z/3
  EXPECT_TRUE(is_l0_equivalence(map_cokernel(IntMatrix{{1}}, Presentation::cyclic(12), Presentation::cyclic(4)), 2));
  EXPECT_FALSE(is_l0_equivalence(map_cokernel(IntMatrix{{1}}, Presentation::cyclic(12), Presentation::cyclic(4)), 3));
}

TEST(L0Equivalence, MultiplicationMapsAgreeWithCompletion) {
  auto z = Presentation::free(1);
  for (long p : {2L, 3L, 5L})
    for (long a = -12; a <= 12; ++a)
      EXPECT_EQ(is_l0_equivalence(map_cokernel(IntMatrix{{a}}, z, z), p), a != 0 && a % p != 0) << a << " p=" << p;
}

TEST(HatTn, Examples) {
  auto p_n = oracle::partition_numbers(6);
  for (long p : {2L, 3L})
    for (int n = 0; n <= 6; ++n)
      EXPECT_EQ(hat_tn(ModuleExpr::integers(), n, p), ModuleExpr::p_adic(p_n[static_cast<std::size_t>(n)].get_ui()));
  for (long p : {3L, 5L, 7L})
    EXPECT_EQ(hat_tn(ModuleExpr::cyclic(p), 2, p), ModuleExpr::cyclic(p) + ModuleExpr::cyclic(p));
  for (int n = 1; n <= 4; ++n) EXPECT_TRUE(hat_tn(ModuleExpr{}, n, 2).is_zero());
  EXPECT_EQ(hat_tn(ModuleExpr::p_adic(), 3, 2), hat_tn(ModuleExpr::integers(), 3, 2));
  // the prime-to-p part disappears
  EXPECT_EQ(hat_tn(parse_module("Z/12"), 2, 2), hat_tn(parse_module("Z/4"), 2, 2));
  EXPECT_THROW(hat_tn(parse_module("Z[1/p]", 2), 2, 2), unsupported_input);
  EXPECT_THROW(hat_tn(parse_module("Zp_inf", 2), 2, 2), unsupported_input);
}

TEST(MainTheorem, Examples) {
  auto z = Presentation::free(1);
  EXPECT_TRUE(verify_main_theorem(z, 2, 2, 2));
  EXPECT_FALSE(verify_main_theorem(z, 2, 2, 1));
  for (long p : {2L, 3L, 5L})
    for (int k = 1; k <= 3; ++k) EXPECT_TRUE(verify_main_theorem(Presentation::cyclic(p), 4, p, k));
  EXPECT_THROW(verify_main_theorem(z, 2, 2, 0), std::invalid_argument);
}

TEST(MainTheorem, HoldsAtKeyConstantForSmallGroups) {
  for (long p : {2L, 3L}) {
    std::vector<Presentation> groups{Presentation::zero(), Presentation::free(1), Presentation::free(2)};
    for (int i = 1; i <= 3; ++i) {
      const Int a = ipow(p, static_cast<unsigned long>(i));
      groups.push_back(Presentation::cyclic(a));
      groups.push_back(direct_sum(Presentation::free(1), Presentation::cyclic(a)));
      for (int j = i; j <= 3; ++j) groups.push_back(direct_sum(Presentation::cyclic(a), Presentation::cyclic(ipow(p, static_cast<unsigned long>(j)))));
    }
    // one presentation that is not in diagonal form: coker [[p, 1], [0, p]] = Z/p^2
    groups.push_back(Presentation{2, IntMatrix{{p, 1}, {0, p}}});
    for (int n = 0; n <= 4; ++n) {
      auto k = key_constant(n, p, 8);
      ASSERT_TRUE(k);
      for (auto const &g : groups) {
        EXPECT_TRUE(verify_main_theorem(g, n, p, *k)) << classify(g).to_string() << " n=" << n << " p=" << p;
        EXPECT_TRUE(verify_main_theorem(g, n, p, *k + 1)) << classify(g).to_string() << " n=" << n << " p=" << p;
      }
    }
  }
}
