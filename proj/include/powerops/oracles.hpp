#pragma once

// Reference computations used to cross-check the library. Each one follows a
// route that shares nothing with the code path it checks beyond the Smith
// normal form: counting recurrences, presentations by explicit generators and
// relations over every element of a finite group, limits of Tor towers, and
// induction computed by summing over all permutations.

#include "powerops/abelian.hpp"
#include "powerops/integer.hpp"
#include "powerops/partitions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace powerops::oracle {

/// p(n) by Euler's pentagonal number recurrence.
inline std::vector<Int> partition_numbers(int up_to) {
  std::vector<Int> p(static_cast<std::size_t>(up_to) + 1);
  p[0] = 1;
  for (int n = 1; n <= up_to; ++n) {
    Int s = 0;
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > n) break;
      int sign = (k % 2) ? 1 : -1;
      s += sign * p[static_cast<std::size_t>(n - g1)];
      if (g2 <= n) s += sign * p[static_cast<std::size_t>(n - g2)];
    }
    p[static_cast<std::size_t>(n)] = s;
  }
  return p;
}

/// Number of multisets of powers of p summing to n (coin-change count).
inline Int multisets_of_prime_powers(long p, int n) {
  std::vector<Int> ways(static_cast<std::size_t>(n) + 1);
  ways[0] = 1;
  for (long coin = 1; coin <= n; coin *= p)
    for (int v = static_cast<int>(coin); v <= n; ++v) ways[static_cast<std::size_t>(v)] += ways[static_cast<std::size_t>(v - coin)];
  return ways[static_cast<std::size_t>(n)];
}

/// Number of sets of distinct powers of p summing to n.
inline Int sets_of_prime_powers(long p, int n) {
  std::vector<Int> ways(static_cast<std::size_t>(n) + 1);
  ways[0] = 1;
  for (long coin = 1; coin <= n; coin *= p)
    for (int v = n; v >= coin; --v) ways[static_cast<std::size_t>(v)] += ways[static_cast<std::size_t>(v - coin)];
  return ways[static_cast<std::size_t>(n)];
}

namespace detail {
// Accumulates relations as columns over a fixed generator set.
struct RelationBuilder {
  std::size_t generators;
  std::vector<std::vector<std::pair<std::size_t, long>>> columns;
  void add(std::vector<std::pair<std::size_t, long>> col) { columns.push_back(std::move(col)); }
  Presentation build() const {
    IntMatrix r(generators, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (auto [g, c] : columns[j]) r(g, j) += c;
    return {generators, r.without_zero_columns()};
  }
};
} // namespace detail

/// T_2 of Z/n for the free lambda-ring, presented by the symbols lambda^2(x)
/// and lambda^1(y)lambda^1(z) for all x, y, z in Z/n subject to
///   lambda^2(x+y) = lambda^2(x) + lambda^1(x)lambda^1(y) + lambda^2(y)
/// and bilinearity and symmetry of lambda^1(y)lambda^1(z).
inline GroupClass t2_cyclic_by_enumeration(long n) {
  auto sq = [n](long x) { return static_cast<std::size_t>(((x % n) + n) % n); };
  std::map<std::pair<long, long>, std::size_t> pair_index;
  for (long y = 0; y < n; ++y)
    for (long z = y; z < n; ++z) pair_index.emplace(std::pair{y, z}, static_cast<std::size_t>(n) + pair_index.size());
  auto prod = [&](long y, long z) {
    long a = static_cast<long>(sq(y)), b = static_cast<long>(sq(z));
    return pair_index.at({std::min(a, b), std::max(a, b)});
  };
  detail::RelationBuilder rb{static_cast<std::size_t>(n) + pair_index.size(), {}};
  for (long x = 0; x < n; ++x)
    for (long y = 0; y < n; ++y) {
      rb.add({{sq(x + y), 1}, {sq(x), -1}, {prod(x, y), -1}, {sq(y), -1}});
      for (long z = 0; z < n; ++z) rb.add({{prod(x + y, z), 1}, {prod(x, z), -1}, {prod(y, z), -1}});
    }
  return classify(rb.build());
}

/// Weight-p part of the free theta^p-algebra on Z/n, presented by symbols
/// theta(x) and symmetric p-fold products x_1...x_p over all elements, with
/// multilinearity and theta(x+y) = theta x + theta y - sum_i binom(p,i)/p x^i y^(p-i).
inline GroupClass theta_weight_p_cyclic_by_enumeration(long p, long n) {
  auto red = [n](long x) { return ((x % n) + n) % n; };
  std::map<std::vector<long>, std::size_t> products;
  std::vector<long> cur;
  std::function<void(long, long)> gen = [&](long start, long left) {
    if (left == 0) {
      products.emplace(cur, static_cast<std::size_t>(n) + products.size());
      return;
    }
    for (long v = start; v < n; ++v) {
      cur.push_back(v);
      gen(v, left - 1);
      cur.pop_back();
    }
  };
  gen(0, p);
  auto prod = [&](std::vector<long> xs) {
    for (auto &x : xs) x = red(x);
    std::sort(xs.begin(), xs.end());
    return products.at(xs);
  };
  auto theta = [&](long x) { return static_cast<std::size_t>(red(x)); };

  detail::RelationBuilder rb{static_cast<std::size_t>(n) + products.size(), {}};
  // multilinearity in the first slot, with the remaining p-1 slots arbitrary
  std::vector<std::vector<long>> rests;
  std::function<void(long, long)> gen_rest = [&](long start, long left) {
    if (left == 0) {
      rests.push_back(cur);
      return;
    }
    for (long v = start; v < n; ++v) {
      cur.push_back(v);
      gen_rest(v, left - 1);
      cur.pop_back();
    }
  };
  cur.clear();
  gen_rest(0, p - 1);
  for (long x = 0; x < n; ++x)
    for (long y = 0; y < n; ++y) {
      for (auto const &rest : rests) {
        auto with = [&](long v) {
          std::vector<long> xs = rest;
          xs.push_back(v);
          return prod(xs);
        };
        rb.add({{with(x + y), 1}, {with(x), -1}, {with(y), -1}});
      }
      std::vector<std::pair<std::size_t, long>> col{{theta(x + y), 1}, {theta(x), -1}, {theta(y), -1}};
      for (long i = 1; i < p; ++i) {
        std::vector<long> xs(static_cast<std::size_t>(i), x);
        xs.insert(xs.end(), static_cast<std::size_t>(p - i), y);
        col.push_back({prod(xs), exact_div(binomial(Int(p), i), Int(p)).get_si()});
      }
      rb.add(col);
    }
  return classify(rb.build());
}

/// Tower of cyclic p-groups Z/p^{exponent[k]} (levels k = 1..depth) whose
/// transition G_{k+1} -> G_k is x -> multiplier[k] * x.
struct CyclicTower {
  long p;
  std::vector<int> exponent;
  std::vector<Int> multiplier;
};

/// Limit of a tower read off from its stable images, as one of "0",
/// "Zp_hat", or "Z/<p^e>". The towers here are of finite groups, so they
/// satisfy Mittag-Leffler and lim^1 vanishes; `mittag_leffler` reports
/// whether the images were seen to stabilize within the available depth.
struct TowerLimit {
  std::string lim;
  bool mittag_leffler = true;
};

inline TowerLimit tower_limit(const CyclicTower &t) {
  const std::size_t depth = t.exponent.size();
  auto stable_exponent = [&](std::size_t level, std::size_t upto) {
    Int c = 1;
    for (std::size_t i = level; i < upto; ++i) c *= t.multiplier[i];
    int a = t.exponent[level];
    int v = c == 0 ? a : static_cast<int>(std::min<unsigned>(valuation(c, t.p), static_cast<unsigned>(a)));
    return a - v;
  };
  TowerLimit out;
  std::vector<int> stable;
  for (std::size_t k = 0; k < depth / 2; ++k) {
    int full = stable_exponent(k, depth - 1);
    int shorter = stable_exponent(k, depth - 2);
    if (full != shorter) out.mittag_leffler = false;
    stable.push_back(full);
  }
  const int last = stable.back(), before = stable[stable.size() - 2];
  if (last == 0) out.lim = "0";
  else if (last > before) out.lim = "Zp_hat";
  else out.lim = "Z/" + ipow(t.p, static_cast<unsigned long>(last)).get_str();
  return out;
}

/// Tor_s(Z/p^k, A) towers (s = 0, 1) for a single atom of the module grammar,
/// computed from A/p^k A and A[p^k] with the maps induced by Z/p^{k+1} -> Z/p^k.
/// Atom names: "Z", "Z/<n>", "Z[1/p]", "Zp_inf", "Zp_hat".
inline std::pair<CyclicTower, CyclicTower> tor_towers(const std::string &atom, long p, int depth = 20) {
  CyclicTower tor0{p, {}, {}}, tor1{p, {}, {}};
  for (int k = 1; k <= depth; ++k) {
    int e0 = 0, e1 = 0;
    Int c0 = 1, c1 = 1;
    if (atom == "Z" || atom == "Zp_hat") {
      e0 = k; // A / p^k = Z/p^k, reduction maps; torsion-free
    } else if (atom == "Zp_inf") {
      e1 = k; // A[p^k] = Z/p^k generated by 1/p^k; x -> p x sends 1/p^{k+1} to 1/p^k
    } else if (atom == "Z[1/p]") {
      // p-divisible and torsion-free
    } else if (atom.rfind("Z/", 0) == 0) {
      Int n(atom.substr(2));
      int j = static_cast<int>(valuation(n, p));
      e0 = std::min(k, j);
      e1 = std::min(k, j);
      // A[p^{k+1}] -> A[p^k] is x -> p x; relative to the generators
      // p^{j-min(k+1,j)} and p^{j-min(k,j)} the multiplier is p^{1 + min(k,j) - min(k+1,j)}.
      c1 = ipow(p, static_cast<unsigned long>(1 + std::min(k, j) - std::min(k + 1, j)));
    }
    tor0.exponent.push_back(e0);
    tor0.multiplier.push_back(c0);
    tor1.exponent.push_back(e1);
    tor1.multiplier.push_back(c1);
  }
  return {tor0, tor1};
}

/// Induction of a class function on a Young subgroup, evaluated directly as
/// Ind f(g) = 1/|H| sum_{x in S_m} f0(x^-1 g x) over every permutation. The
/// function is given as a callable on tuples of cycle types (one per block).
template <class F>
std::vector<Int> induce_by_permutations(const std::vector<int> &composition, F &&f) {
  const int m = std::accumulate(composition.begin(), composition.end(), 0);
  std::vector<int> block(static_cast<std::size_t>(m));
  {
    int pos = 0;
    for (std::size_t b = 0; b < composition.size(); ++b)
      for (int i = 0; i < composition[b]; ++i) block[static_cast<std::size_t>(pos++)] = static_cast<int>(b);
  }
  auto cycle_types_by_block = [&](const std::vector<int> &perm, std::vector<Partition> &out) {
    for (int i = 0; i < m; ++i)
      if (block[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] != block[static_cast<std::size_t>(i)]) return false;
    std::vector<std::vector<int>> parts(composition.size());
    std::vector<bool> seen(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      if (seen[static_cast<std::size_t>(i)]) continue;
      int len = 0;
      for (int j = i; !seen[static_cast<std::size_t>(j)]; j = perm[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = true;
        ++len;
      }
      parts[static_cast<std::size_t>(block[static_cast<std::size_t>(i)])].push_back(len);
    }
    out.clear();
    for (auto &p : parts) out.emplace_back(p);
    return true;
  };
  auto cycle_type = [&](const std::vector<int> &perm) {
    std::vector<int> parts;
    std::vector<bool> seen(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      if (seen[static_cast<std::size_t>(i)]) continue;
      int len = 0;
      for (int j = i; !seen[static_cast<std::size_t>(j)]; j = perm[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = true;
        ++len;
      }
      parts.push_back(len);
    }
    return Partition(parts);
  };

  std::vector<std::vector<int>> all;
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  do all.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  Int h_order = 1;
  for (int c : composition) h_order *= factorial(static_cast<unsigned long>(c));

  auto classes = partitions(m);
  std::vector<Int> values(classes.size());
  std::vector<bool> done(classes.size());
  std::vector<Partition> tuple;
  for (auto const &g : all) {
    std::size_t idx = partition_index(classes, cycle_type(g));
    if (done[idx]) continue;
    done[idx] = true;
    Int total = 0;
    std::vector<int> conj(static_cast<std::size_t>(m)), inv(static_cast<std::size_t>(m));
    for (auto const &x : all) {
      for (int i = 0; i < m; ++i) inv[static_cast<std::size_t>(x[static_cast<std::size_t>(i)])] = i;
      // x^-1 g x
      for (int i = 0; i < m; ++i)
        conj[static_cast<std::size_t>(i)] = inv[static_cast<std::size_t>(g[static_cast<std::size_t>(x[static_cast<std::size_t>(i)])])];
      if (cycle_types_by_block(conj, tuple)) total += f(tuple);
    }
    values[idx] = exact_div(total, h_order);
  }
  return values;
}

} // namespace powerops::oracle
