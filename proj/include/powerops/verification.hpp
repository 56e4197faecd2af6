#pragma once

// Reproduction checks shared by `powerops verify` and the acceptance runner.
// Each suite returns one CheckResult per statement it checks.

#include "powerops/completion.hpp"
#include "powerops/lambda_free.hpp"
#include "powerops/oracles.hpp"
#include "powerops/symrep.hpp"
#include "powerops/theta_free.hpp"

#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace powerops::verification {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  std::string citation;
};

struct Bounds {
  std::optional<int> max_m;
  std::optional<int> max_k;
};

struct Suite {
  std::string name;
  int criterion;
  std::string title;
  std::function<std::vector<CheckResult>(const Bounds &)> run;
};

namespace detail {

class Collector {
public:
  Collector(std::string name, std::string citation) : result_{std::move(name), true, "", std::move(citation)} {}

  /// Records a failure; only the first few are kept in the detail text.
  void fail(const std::string &what) {
    result_.passed = false;
    if (++failures_ <= 5) result_.detail += (result_.detail.empty() ? "" : "; ") + what;
  }
  void expect(bool ok, const std::string &what) {
    if (!ok) fail(what);
  }
  void note(const std::string &text) {
    if (result_.passed) result_.detail = text;
  }
  CheckResult done() {
    if (failures_ > 5) result_.detail += "; " + std::to_string(failures_ - 5) + " more";
    return result_;
  }

private:
  CheckResult result_;
  int failures_ = 0;
};

inline std::string join(const std::vector<Int> &xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i].get_str();
  return out;
}

inline std::vector<Int> poly_from_roots(const std::vector<long> &roots) {
  std::vector<Int> poly{1};
  for (long r : roots) {
    std::vector<Int> next(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * r;
    }
    poly = std::move(next);
  }
  return poly;
}

} // namespace detail

inline std::vector<CheckResult> t2_cyclic(const Bounds &b) {
  const int max_m = b.max_m.value_or(50);
  detail::Collector c("T_2 of Z/m for 2 <= m <= " + std::to_string(max_m),
                      "T_2(Z/m) is Z/m + Z/m for odd m and Z/2m + Z/(m/2) for even m");
  for (long m = 2; m <= max_m; ++m) {
    GroupClass expected = m % 2 ? GroupClass{0, {m, m}} : direct_sum(GroupClass{0, {2 * m}}, GroupClass{0, {m / 2}});
    GroupClass got = tn_presented(Presentation::cyclic(m), 2);
    c.expect(got == expected, "m=" + std::to_string(m) + ": got " + got.to_string() + ", expected " + expected.to_string());
  }
  return {c.done()};
}

inline std::vector<CheckResult> appendix_b(const Bounds &) {
  struct Case {
    int m;
    IntMatrix matrix;
    std::vector<long> roots;
  };
  const std::vector<Case> cases{
      {2, IntMatrix{{3, 1}, {1, 3}}, {2, 4}},
      {3, IntMatrix{{10, 1, 8}, {1, 10, 8}, {8, 8, 19}}, {27, 9, 3}},
      {4,
       IntMatrix{{35, 1, 20, 45, 15}, {1, 35, 20, 15, 45}, {20, 20, 56, 60, 60}, {45, 15, 60, 115, 81}, {15, 45, 60, 81, 115}},
       {256, 64, 16, 16, 4}},
  };
  std::vector<CheckResult> out;
  for (auto const &k : cases) {
    const std::string tag = "t(" + std::to_string(k.m) + "," + std::to_string(k.m) + ")";
    detail::Collector c(tag + " matrix and characteristic polynomial",
                        "the worked transfer matrices for S_2, S_3, S_4 with p = m");
    TransferMatrix t = transfer_matrix(k.m, k.m);
    IntMatrix paper = in_paper_basis(t);
    std::ostringstream got;
    got << paper;
    c.expect(paper == k.matrix, "matrix " + got.str());
    auto poly = characteristic_polynomial(t.matrix);
    c.expect(poly == detail::poly_from_roots(k.roots), "char poly coefficients " + detail::join(poly));
    c.note(got.str());
    out.push_back(c.done());
  }
  {
    detail::Collector c("t(4,4)^5 = 0 mod 4", "the fifth power of t(4,4) vanishes mod 4");
    IntMatrix t = transfer_matrix(4, 4).matrix, power = IntMatrix::identity(5);
    for (int i = 0; i < 5; ++i) power = power * t;
    c.expect(power.mod(4).is_zero(), "t(4,4)^5 is nonzero mod 4");
    out.push_back(c.done());
  }
  return out;
}

inline std::vector<CheckResult> nilpotence(const Bounds &b) {
  const int max_m = b.max_m.value_or(7);
  detail::Collector c("t(m,p)^{p(m)} = 0 and char poly = x^{p(m)} mod p, m <= " + std::to_string(max_m) + ", p in {2,3,4,5}",
                      "the transfer is nilpotent mod p");
  for (int m = 1; m <= max_m; ++m)
    for (long p : {2L, 3L, 4L, 5L}) {
      const std::string tag = "m=" + std::to_string(m) + " p=" + std::to_string(p);
      IntMatrix t = transfer_matrix(m, p).matrix;
      const std::size_t pm = t.rows();
      IntMatrix power = IntMatrix::identity(pm);
      for (std::size_t i = 0; i < pm; ++i) power = (power * t).mod(p);
      c.expect(power.is_zero(), tag + ": power p(m) nonzero mod p");
      auto poly = characteristic_polynomial(t);
      for (std::size_t i = 0; i + 1 < poly.size(); ++i)
        c.expect(divides(Int(p), poly[i]), tag + ": coefficient of x^" + std::to_string(i) + " is " + poly[i].get_str());
    }
  return {c.done()};
}

inline std::vector<CheckResult> spectrum(const Bounds &b) {
  const int max_m = b.max_m.value_or(7);
  detail::Collector c("eigenvalues of t(m,p) are p^{l_c}, m <= " + std::to_string(max_m) + ", p in {2,3,5}",
                      "the eigenvalues of t(m,p) are precisely the p^{l_c}, one for each class c");
  for (int m = 1; m <= max_m; ++m)
    for (long p : {2L, 3L, 5L}) {
      const std::string tag = "m=" + std::to_string(m) + " p=" + std::to_string(p);
      std::vector<Int> expected, from_lambda;
      for (auto const &cls : partitions(m)) expected.push_back(ipow(p, cls.length()));
      for (auto const &mono : tn_free_basis(1, m)) from_lambda.push_back(ipow(p, mono.factors().size()));
      std::sort(expected.rbegin(), expected.rend());
      std::sort(from_lambda.rbegin(), from_lambda.rend());
      try {
        TransferSpectrum s = transfer_spectrum(m, p);
        std::vector<Int> diagonal = s.class_eigenvalues;
        std::sort(diagonal.rbegin(), diagonal.rend());
        c.expect(s.eigenvalues == expected, tag + ": char poly roots " + detail::join(s.eigenvalues));
        c.expect(diagonal == expected, tag + ": class indicator eigenvalues " + detail::join(diagonal));
        c.expect(from_lambda == expected, tag + ": lambda monomial lengths " + detail::join(from_lambda));
      } catch (const defect_error &e) {
        c.fail(tag + ": " + e.what());
      }
    }
  return {c.done()};
}

inline std::vector<CheckResult> partition_ranks(const Bounds &) {
  const long expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
  detail::Collector c("rank T_n(Z) = p(n) for n <= 12", "T_n(Z) is free of rank the number of partitions of n");
  auto pentagonal = oracle::partition_numbers(12);
  for (int n = 0; n <= 12; ++n) {
    GroupClass g = tn_presented(Presentation::free(1), n);
    c.expect(g == GroupClass{static_cast<std::size_t>(expected[n]), {}}, "n=" + std::to_string(n) + ": " + g.to_string());
    c.expect(pentagonal[static_cast<std::size_t>(n)] == expected[n], "pentagonal p(" + std::to_string(n) + ")");
  }
  return {c.done()};
}

inline std::vector<CheckResult> key_constant_suite(const Bounds &b) {
  std::vector<CheckResult> out;
  for (long p : {2L, 3L, 5L}) {
    detail::Collector c("key_constant(2," + std::to_string(p) + ") = 2",
                        "k(2) = 2 works and k(2) must be greater than 1");
    auto k = key_constant(2, p, b.max_k.value_or(8));
    c.expect(k == 2, "computed " + (k ? std::to_string(*k) : std::string("none")) + "; T_2(Z/" + std::to_string(p) +
                         ") = " + tn_presented(Presentation::cyclic(p), 2).to_string());
    out.push_back(c.done());
  }
  detail::Collector c("key_constant(n,p) <= p(n), n <= 5, p in {2,3}", "the key constant may be taken to be p(n)");
  auto pn = oracle::partition_numbers(5);
  std::string values;
  for (long p : {2L, 3L})
    for (int n = 0; n <= 5; ++n) {
      const int bound = static_cast<int>(pn[static_cast<std::size_t>(n)].get_si());
      auto k = key_constant(n, p, std::max(bound, b.max_k.value_or(bound)));
      c.expect(k && *k <= bound, "n=" + std::to_string(n) + " p=" + std::to_string(p));
      values += (values.empty() ? "" : " ") + std::string("k(") + std::to_string(n) + "," + std::to_string(p) +
                ")=" + (k ? std::to_string(*k) : "none");
    }
  c.note(values);
  out.push_back(c.done());
  return out;
}

/// Every finitely generated group with at most two generators and p-power
/// torsion of order at most p^3 per summand, up to isomorphism, plus one
/// non-diagonal presentation.
inline std::vector<Presentation> small_groups(long p) {
  std::vector<Presentation> groups{Presentation::zero(), Presentation::free(1), Presentation::free(2)};
  for (unsigned i = 1; i <= 3; ++i) {
    const Int a = ipow(p, i);
    groups.push_back(Presentation::cyclic(a));
    groups.push_back(direct_sum(Presentation::free(1), Presentation::cyclic(a)));
    for (unsigned j = i; j <= 3; ++j) groups.push_back(direct_sum(Presentation::cyclic(a), Presentation::cyclic(ipow(p, j))));
  }
  groups.push_back(Presentation{2, IntMatrix{{p, 1}, {0, p}}});
  return groups;
}

inline std::vector<CheckResult> main_theorem(const Bounds &b) {
  detail::Collector c("main theorem at k = key_constant(n,p), n <= 4, p in {2,3}",
                      "Z/p (x) T_m(M) -> Z/p (x) T_m(Z/p^k (x) M) is an isomorphism for all m <= n");
  for (long p : {2L, 3L})
    for (int n = 0; n <= 4; ++n) {
      auto k = key_constant(n, p, b.max_k.value_or(8));
      if (!k) {
        c.fail("no key constant for n=" + std::to_string(n) + " p=" + std::to_string(p));
        continue;
      }
      for (auto const &g : small_groups(p))
        c.expect(verify_main_theorem(g, n, p, *k),
                 classify(g).to_string() + " n=" + std::to_string(n) + " p=" + std::to_string(p) + " k=" + std::to_string(*k));
    }
  return {c.done()};
}

inline std::vector<CheckResult> theta_ranks(const Bounds &) {
  detail::Collector c("free theta-algebra ranks in weights 0..p, p in {2,3,5}",
                      "T_n of one even generator has basis x^n for n < p and x^p, theta x in weight p");
  for (long p : {2L, 3L, 5L}) {
    for (int n = 0; n < p; ++n) {
      auto basis = free_theta_basis(p, n, Parity::even);
      c.expect(basis.size() == 1 && basis[0] == ThetaMonomial::even_variable(0, 0, n),
               "p=" + std::to_string(p) + " n=" + std::to_string(n) + " rank " + std::to_string(basis.size()));
    }
    auto basis = free_theta_basis(p, static_cast<int>(p), Parity::even);
    std::vector<ThetaMonomial> expected{ThetaMonomial::even_variable(0, 0, static_cast<int>(p)), ThetaMonomial::even_variable(0, 1)};
    std::sort(expected.begin(), expected.end());
    c.expect(basis == expected, "p=" + std::to_string(p) + " weight p rank " + std::to_string(basis.size()));
    for (int n = 0; n <= static_cast<int>(p); ++n) {
      GroupClass g = theta_tn_presented(p, Presentation::free(1), n);
      c.expect(g == GroupClass{n < p ? 1u : 2u, {}}, "p=" + std::to_string(p) + " n=" + std::to_string(n) + " group " + g.to_string());
    }
  }
  return {c.done()};
}

inline std::vector<CheckResult> axioms(const Bounds &) {
  std::vector<CheckResult> out;
  {
    detail::Collector c("lambda_t(x + y) = lambda_t(x) lambda_t(y), 200 cases", "lambda_t is a homomorphism");
    std::mt19937 rng(9001);
    std::uniform_int_distribution<long> coef(-4, 4);
    std::uniform_int_distribution<int> gens(1, 3), caps(0, 6);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t b = static_cast<std::size_t>(gens(rng));
      const int cap = caps(rng);
      std::vector<Int> u(b), v(b), w(b);
      for (std::size_t i = 0; i < b; ++i) {
        u[i] = coef(rng);
        v[i] = coef(rng);
        w[i] = u[i] + v[i];
      }
      c.expect(lambda_series(w, cap) == lambda_series(u, cap) * lambda_series(v, cap), "trial " + std::to_string(trial));
    }
    out.push_back(c.done());
  }
  {
    detail::Collector c("theta sum and product rules, psi multiplicative, 100 cases per p in {2,3}",
                        "theta(x+y) and theta(xy) formulas; psi(x) = x^p + p theta(x) is a ring map");
    std::mt19937 rng(9002);
    std::uniform_int_distribution<long> coef(-5, 5);
    for (long p : {2L, 3L}) {
      const int cap = static_cast<int>(2 * p * p);
      auto random_even = [&] {
        return ThetaElement::constant(p, cap, coef(rng)) + Int(coef(rng)) * ThetaElement::even_generator(p, cap) +
               Int(coef(rng)) * ThetaElement::even_generator(p, cap, 0, 1);
      };
      for (int trial = 0; trial < 100; ++trial) {
        ThetaElement u = random_even(), v = random_even();
        const std::string tag = "p=" + std::to_string(p) + " trial " + std::to_string(trial);
        c.expect(theta(u + v) == theta_add(u, v), tag + " sum rule");
        c.expect(theta(u * v) == theta_mul(u, v), tag + " product rule");
        c.expect(psi(u * v) == psi(u) * psi(v), tag + " psi multiplicative");
      }
      c.expect(theta(ThetaElement::constant(p, cap, 1)).is_zero(), "theta(1) != 0");
    }
    out.push_back(c.done());
  }
  {
    detail::Collector c("theta from lambda is integral", "psi^p(x) - x^p is divisible by p");
    std::mt19937 rng(9003);
    std::uniform_int_distribution<long> coef(-6, 6);
    std::uniform_int_distribution<int> gens(1, 3);
    for (long p : {2L, 3L, 5L})
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<Int> w(static_cast<std::size_t>(gens(rng)));
        for (auto &x : w) x = coef(rng);
        try {
          theta_from_lambda(p, w, static_cast<int>(p));
        } catch (const defect_error &e) {
          c.fail(e.what());
        }
      }
    out.push_back(c.done());
  }
  {
    detail::Collector c("psi^i(n) = n on integers, i <= 5, |n| <= 10", "the Adams operations on Z are all trivial");
    for (int i = 1; i <= 5; ++i) {
      GradedLambdaElement psi_i = adams(i, 5);
      for (long n = -10; n <= 10; ++n) {
        std::vector<Int> at{Int(n)};
        c.expect(augment(psi_i, at) == n, "psi^" + std::to_string(i) + "(" + std::to_string(n) + ")");
      }
    }
    out.push_back(c.done());
  }
  return out;
}

inline std::vector<CheckResult> completion_suite(const Bounds &) {
  std::vector<CheckResult> out;
  auto atoms_for = [](long p) {
    const long q = p == 2 ? 3 : 2;
    return std::vector<Atom>{{AtomKind::integers, 0}, {AtomKind::cyclic, Int(p)},       {AtomKind::cyclic, ipow(p, 2)},
                             {AtomKind::cyclic, Int(q)}, {AtomKind::p_inverted, 0},     {AtomKind::prufer, 0},
                             {AtomKind::p_adic, 0}};
  };
  {
    detail::Collector c("atom table against lim and lim^1 of Tor towers (depth 20)",
                        "short exact sequence 0 -> lim^1 Tor_{s+1} -> L_s M -> lim Tor_s -> 0");
    for (long p : {2L, 3L, 5L})
      for (auto const &atom : atoms_for(p)) {
        auto [tor0, tor1] = oracle::tor_towers(atom.to_string(), p, 20);
        auto l0 = oracle::tower_limit(tor0), l1 = oracle::tower_limit(tor1);
        CompletionResult r = l_complete(ModuleExpr({atom}), p);
        const std::string tag = atom.to_string() + " p=" + std::to_string(p);
        c.expect(l0.mittag_leffler && l1.mittag_leffler, tag + ": towers not Mittag-Leffler");
        c.expect(r.L0.to_string() == l0.lim, tag + ": L0 " + r.L0.to_string() + " vs " + l0.lim);
        c.expect(r.L1.to_string() == l1.lim, tag + ": L1 " + r.L1.to_string() + " vs " + l1.lim);
      }
    out.push_back(c.done());
  }
  std::mt19937 rng(9004);
  auto random_expr = [&](long p) {
    auto atoms = atoms_for(p);
    std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1), count(0, 4);
    std::vector<Atom> chosen;
    for (std::size_t i = count(rng); i > 0; --i) chosen.push_back(atoms[pick(rng)]);
    return ModuleExpr(chosen);
  };
  {
    detail::Collector c("L0 idempotent and L1 of completions vanishes", "L0 is idempotent and L_t vanishes on L-complete modules");
    for (long p : {2L, 3L, 5L})
      for (int trial = 0; trial < 100; ++trial) {
        ModuleExpr m = random_expr(p);
        CompletionResult r = l_complete(m, p);
        c.expect(l_complete(r.L0, p) == CompletionResult{r.L0, {}}, m.to_string() + " L0");
        c.expect(l_complete(r.L1, p) == CompletionResult{r.L1, {}}, m.to_string() + " L1");
      }
    out.push_back(c.done());
  }
  {
    detail::Collector c("L0 M = 0 exactly when Z/p (x) M = 0", "L0 M vanishes if and only if M/pM does");
    for (long p : {2L, 3L, 5L})
      for (int trial = 0; trial < 100; ++trial) {
        ModuleExpr m = random_expr(p);
        bool mod_p_zero = true;
        for (auto const &a : m.atoms()) mod_p_zero &= oracle::tor_towers(a.to_string(), p, 2).first.exponent[0] == 0;
        c.expect(l_complete(m, p).L0.is_zero() == mod_p_zero, m.to_string());
      }
    out.push_back(c.done());
  }
  {
    detail::Collector c("L1(Z/p^inf) = Zp_hat", "L_1 of the Pruefer group is the p-adic integers");
    for (long p : {2L, 3L, 5L, 7L}) {
      CompletionResult r = l_complete(ModuleExpr::prufer(), p);
      c.expect(r.L0.is_zero() && r.L1 == ModuleExpr::p_adic(), "p=" + std::to_string(p));
    }
    out.push_back(c.done());
  }
  return out;
}

inline std::vector<CheckResult> representation(const Bounds &b) {
  const int max_m = b.max_m.value_or(7);
  std::vector<CheckResult> out;
  std::mt19937 rng(9005);
  {
    detail::Collector c("character orthogonality, 50 random pairs, m <= " + std::to_string(max_m),
                        "sum_c |c| chi_i(c) chi_j(c) = m! delta_ij");
    for (int trial = 0; trial < 50; ++trial) {
      const int m = std::uniform_int_distribution<int>(1, max_m)(rng);
      const CharTable &t = character_table(m);
      std::uniform_int_distribution<std::size_t> pick(0, t.labels.size() - 1);
      const std::size_t i = pick(rng), j = pick(rng);
      Int rows = 0, cols = 0;
      for (std::size_t k = 0; k < t.labels.size(); ++k) {
        rows += t.class_sizes[k] * t(i, k) * t(j, k);
        cols += t(k, i) * t(k, j);
      }
      c.expect(rows == (i == j ? factorial(static_cast<unsigned long>(m)) : Int(0)), "rows m=" + std::to_string(m));
      c.expect(cols == (i == j ? centralizer_order(t.labels[i]) : Int(0)), "columns m=" + std::to_string(m));
    }
    out.push_back(c.done());
  }
  {
    detail::Collector c("Frobenius reciprocity, 50 random pairs, m <= " + std::to_string(max_m),
                        "<Ind f, chi> = <f, Res chi>");
    std::uniform_int_distribution<long> value(-6, 6);
    for (int trial = 0; trial < 50; ++trial) {
      const int m = std::uniform_int_distribution<int>(1, max_m)(rng);
      const int blocks = std::uniform_int_distribution<int>(1, 4)(rng);
      std::vector<int> comp(static_cast<std::size_t>(blocks), 0);
      for (int i = 0; i < m; ++i) ++comp[std::uniform_int_distribution<std::size_t>(0, comp.size() - 1)(rng)];
      YoungClassFunction f{comp, {}};
      for (auto const &tuple : young_classes(comp)) f.values.emplace(tuple, value(rng));
      ClassFunction chi = ClassFunction::zero(m);
      for (auto &v : chi.values) v = value(rng);
      c.expect(inner_product(induce(f), chi) == inner_product(f, restrict(chi, comp)), "m=" + std::to_string(m));
    }
    out.push_back(c.done());
  }
  return out;
}

inline const std::vector<Suite> &suites() {
  static const std::vector<Suite> all{
      {"t2cyclic", 1, "T_2 of cyclic groups", t2_cyclic},
      {"appendix-b", 2, "worked transfer matrices", appendix_b},
      {"nilpotence", 3, "transfer nilpotent mod p", nilpotence},
      {"spectrum", 4, "transfer eigenvalues", spectrum},
      {"partition-ranks", 5, "ranks of T_n(Z)", partition_ranks},
      {"key-constant", 6, "key constant values and bound", key_constant_suite},
      {"main-theorem", 7, "main theorem on small groups", main_theorem},
      {"theta-ranks", 8, "free theta-algebra ranks", theta_ranks},
      {"axioms", 9, "lambda and theta axiom properties", axioms},
      {"completion", 10, "derived completion calculus", completion_suite},
      {"representation", 11, "representation theory internals", representation},
  };
  return all;
}

/// Suites selected by name: a suite name, "all", or "none".
inline std::vector<Suite> select(const std::string &name) {
  if (name == "none") return {};
  if (name == "all") return suites();
  for (auto const &s : suites())
    if (s.name == name) return {s};
  throw std::invalid_argument("unknown suite '" + name + "'");
}

inline const Suite &by_criterion(int n) {
  for (auto const &s : suites())
    if (s.criterion == n) return s;
  throw std::invalid_argument("unknown criterion " + std::to_string(n));
}

} // namespace powerops::verification
