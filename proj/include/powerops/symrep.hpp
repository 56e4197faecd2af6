#pragma once

// Representation rings of symmetric groups and the transfer t(m, p), the sum
// of Ind o Res over the Young subgroups S_{i_1} x ... x S_{i_p} with
// i_1 + ... + i_p = m.

#include "powerops/int_matrix.hpp"
#include "powerops/integer.hpp"
#include "powerops/partitions.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

namespace powerops {

/// z_c = prod_k k^{m_k} m_k!, the order of the centralizer of a permutation
/// of cycle type c.
inline Int centralizer_order(const Partition &c) {
  Int z = 1;
  for (auto const &[k, mult] : c.multiplicities()) z *= ipow(k, static_cast<unsigned long>(mult)) * factorial(static_cast<unsigned long>(mult));
  return z;
}

inline Int class_size(const Partition &c) { return exact_div(factorial(static_cast<unsigned long>(c.size())), centralizer_order(c)); }

/// Irreducible characters of S_m. Rows and columns are both indexed by
/// partitions(m): row lambda is the character of the Specht module S^lambda,
/// column mu the class of cycle type mu.
struct CharTable {
  int m = 0;
  std::vector<Partition> labels;
  IntMatrix values;
  std::vector<Int> class_sizes;

  const Int &operator()(std::size_t irrep, std::size_t cls) const { return values(irrep, cls); }
  std::size_t index(const Partition &p) const { return partition_index(labels, p); }
};

namespace detail {

/// Murnaghan-Nakayama on beta-sets: a rim hook of length r is a bead moved
/// from b to b - r, with sign (-1)^(beads strictly between).
class MurnaghanNakayama {
public:
  Int character(const Partition &lambda, const Partition &mu) { return eval(beta_set(lambda), mu.parts, 0); }

private:
  static std::vector<int> beta_set(const Partition &lambda) {
    const int l = static_cast<int>(lambda.length());
    std::vector<int> beta;
    for (int i = 0; i < l; ++i) beta.push_back(lambda.parts[static_cast<std::size_t>(i)] + l - 1 - i);
    return beta; // strictly decreasing
  }

  static std::vector<int> normalize(std::vector<int> beta) {
    std::sort(beta.begin(), beta.end(), std::greater<>());
    // strip beads 0, 1, ..., k-1 at the bottom (empty rows)
    int shift = 0;
    while (!beta.empty() && beta.back() == shift) {
      beta.pop_back();
      ++shift;
    }
    for (auto &b : beta) b -= shift;
    return beta;
  }

  Int eval(const std::vector<int> &beta, const std::vector<int> &mu, std::size_t pos) {
    if (pos == mu.size()) return beta.empty() ? Int(1) : Int(0);
    auto key = std::make_pair(beta, pos);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const int r = mu[pos];
    Int total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
      const int target = beta[i] - r;
      if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
      int between = 0;
      for (int b : beta)
        if (b > target && b < beta[i]) ++between;
      std::vector<int> next = beta;
      next[i] = target;
      Int value = eval(normalize(next), mu, pos + 1);
      total += between % 2 ? Int(-value) : value;
    }
    memo_.emplace(key, total);
    return total;
  }

  // Keyed by the remaining suffix of mu through its start position; one
  // instance evaluates a single mu.
  std::map<std::pair<std::vector<int>, std::size_t>, Int> memo_;
};

inline CharTable compute_character_table(int m) {
  CharTable t;
  t.m = m;
  t.labels = partitions(m);
  const std::size_t n = t.labels.size();
  t.values = IntMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    MurnaghanNakayama mn;
    for (std::size_t i = 0; i < n; ++i) t.values(i, j) = mn.character(t.labels[i], t.labels[j]);
    t.class_sizes.push_back(class_size(t.labels[j]));
  }
  return t;
}

} // namespace detail

/// Memoized; safe to call from several threads.
inline const CharTable &character_table(int m) {
  if (m < 0) throw std::invalid_argument("character_table: m must be non-negative");
  static std::shared_mutex mutex;
  static std::map<int, std::unique_ptr<const CharTable>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return *it->second;
  }
  auto table = std::make_unique<const CharTable>(detail::compute_character_table(m));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.try_emplace(m, std::move(table));
  return *it->second;
}

/// Integer-valued class function on S_m, indexed by partitions(m).
struct ClassFunction {
  int m = 0;
  std::vector<Int> values;

  static ClassFunction zero(int m) { return {m, std::vector<Int>(partitions(m).size())}; }
  static ClassFunction irreducible(int m, const Partition &lambda) {
    const CharTable &t = character_table(m);
    ClassFunction f{m, {}};
    const std::size_t i = t.index(lambda);
    for (std::size_t j = 0; j < t.labels.size(); ++j) f.values.push_back(t(i, j));
    return f;
  }
  /// Indicator function of the class of cycle type c.
  static ClassFunction indicator(const Partition &c) {
    ClassFunction f = zero(c.size());
    f.values[partition_index(character_table(c.size()).labels, c)] = 1;
    return f;
  }

  const Int &at(const Partition &c) const { return values[partition_index(character_table(m).labels, c)]; }

  ClassFunction &operator+=(const ClassFunction &o) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
  }
  friend ClassFunction operator*(const Int &s, ClassFunction f) {
    for (auto &v : f.values) v *= s;
    return f;
  }
  friend bool operator==(const ClassFunction &, const ClassFunction &) = default;
};

/// Classes of the Young subgroup S_{i_1} x ... x S_{i_k}: tuples of cycle types.
inline std::vector<std::vector<Partition>> young_classes(const std::vector<int> &composition) {
  std::vector<std::vector<Partition>> out{{}};
  for (int part : composition) {
    if (part < 0) throw std::invalid_argument("young_classes: negative part");
    std::vector<std::vector<Partition>> next;
    for (auto const &prefix : out)
      for (auto const &c : partitions(part)) {
        next.push_back(prefix);
        next.back().push_back(c);
      }
    out = std::move(next);
  }
  return out;
}

inline Partition concatenate(const std::vector<Partition> &tuple) {
  std::vector<int> parts;
  for (auto const &c : tuple) parts.insert(parts.end(), c.parts.begin(), c.parts.end());
  return Partition(std::move(parts));
}

/// Integer-valued class function on a Young subgroup.
struct YoungClassFunction {
  std::vector<int> composition;
  std::map<std::vector<Partition>, Int> values;

  const Int &at(const std::vector<Partition> &tuple) const { return values.at(tuple); }
  friend bool operator==(const YoungClassFunction &, const YoungClassFunction &) = default;
};

namespace detail {
inline int composition_total(const std::vector<int> &composition) {
  int total = 0;
  for (int c : composition) {
    if (c < 0) throw std::invalid_argument("composition: negative part");
    total += c;
  }
  return total;
}

inline Rational tuple_weight(const std::vector<Partition> &tuple) {
  Int z = 1;
  for (auto const &c : tuple) z *= centralizer_order(c);
  return Rational(Int(1), z);
}
} // namespace detail

/// <f, g> = (1/|G|) sum_x f(x) g(x) on S_m.
inline Rational inner_product(const ClassFunction &f, const ClassFunction &g) {
  if (f.m != g.m) throw std::invalid_argument("inner_product: degrees differ");
  const CharTable &t = character_table(f.m);
  Rational total = 0;
  for (std::size_t j = 0; j < t.labels.size(); ++j)
    total += Rational(f.values[j] * g.values[j], centralizer_order(t.labels[j]));
  total.canonicalize();
  return total;
}

/// The same on a Young subgroup.
inline Rational inner_product(const YoungClassFunction &f, const YoungClassFunction &g) {
  if (f.composition != g.composition) throw std::invalid_argument("inner_product: subgroups differ");
  Rational total = 0;
  for (auto const &[tuple, v] : f.values) total += Rational(v * g.at(tuple)) * detail::tuple_weight(tuple);
  total.canonicalize();
  return total;
}

/// Value on (c_1, ..., c_k) is f at the concatenated cycle type.
inline YoungClassFunction restrict(const ClassFunction &f, const std::vector<int> &composition) {
  if (detail::composition_total(composition) != f.m)
    throw std::invalid_argument("restrict: composition does not sum to " + std::to_string(f.m));
  YoungClassFunction out{composition, {}};
  for (auto const &tuple : young_classes(composition)) out.values.emplace(tuple, f.at(concatenate(tuple)));
  return out;
}

/// Ind f = sum_chi <f, Res chi>_H chi over the irreducible characters.
inline ClassFunction induce(const YoungClassFunction &f) {
  const int m = detail::composition_total(f.composition);
  const CharTable &t = character_table(m);
  std::vector<Rational> acc(t.labels.size());
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    const Rational coeff = inner_product(f, restrict(ClassFunction::irreducible(m, t.labels[i]), f.composition));
    if (coeff == 0) continue;
    for (std::size_t j = 0; j < t.labels.size(); ++j) acc[j] += coeff * Rational(t(i, j));
  }
  ClassFunction out{m, {}};
  for (auto &v : acc) {
    v.canonicalize();
    if (v.get_den() != 1) throw defect_error("induce: non-integral value " + v.get_str());
    out.values.push_back(v.get_num());
  }
  return out;
}

/// Transfer t(m, p) in the irreducible basis, rows and columns in the order of
/// partitions(m).
struct TransferMatrix {
  int m = 0;
  long p = 0;
  std::vector<Partition> labels;
  IntMatrix matrix;
};

namespace detail {
/// Multisets of positive parts, with at most p parts, summing to m, each with
/// the number of ordered p-tuples (zeros allowed) that rearrange to it.
inline std::vector<std::pair<Partition, Int>> composition_types(int m, long p) {
  std::vector<std::pair<Partition, Int>> out;
  for (auto const &shape : partitions(m)) {
    if (static_cast<long>(shape.length()) > p) continue;
    // p! / ((p - l)! prod mult!)
    Int count = 1;
    for (long i = 0; i < static_cast<long>(shape.length()); ++i) count *= p - i;
    for (auto const &[part, mult] : shape.multiplicities()) count = exact_div(count, factorial(static_cast<unsigned long>(mult)));
    out.emplace_back(shape, count);
  }
  return out;
}

/// <Res chi_i, Res chi_j>_H for H the Young subgroup of the given composition.
inline IntMatrix restricted_gram(const CharTable &t, const std::vector<int> &composition) {
  const std::size_t n = t.labels.size();
  // weight of each class of S_m seen from H: sum over H-classes mapping to it
  std::vector<Rational> weight(n);
  for (auto const &tuple : young_classes(composition)) weight[t.index(concatenate(tuple))] += tuple_weight(tuple);
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational s = 0;
      for (std::size_t c = 0; c < n; ++c)
        if (weight[c] != 0) s += weight[c] * Rational(t(i, c) * t(j, c));
      s.canonicalize();
      if (s.get_den() != 1) throw defect_error("transfer: non-integral multiplicity " + s.get_str());
      out(i, j) = out(j, i) = s.get_num();
    }
  return out;
}
} // namespace detail

/// Entry (i, j) is the multiplicity of chi_i in t(chi_j), i.e. the sum over
/// compositions of <Res chi_i, Res chi_j>. Compositions that are
/// rearrangements of each other contribute equally and are counted once.
inline TransferMatrix transfer_matrix(int m, long p) {
  if (m < 1 || p < 1) throw std::invalid_argument("transfer_matrix: require m >= 1, p >= 1");
  const CharTable &t = character_table(m);
  TransferMatrix out{m, p, t.labels, IntMatrix(t.labels.size(), t.labels.size())};
  for (auto const &[shape, count] : detail::composition_types(m, p))
    out.matrix = out.matrix + count * detail::restricted_gram(t, shape.parts);
  return out;
}

/// The same sum taken literally over every ordered composition.
inline IntMatrix transfer_matrix_by_compositions(int m, long p) {
  const CharTable &t = character_table(m);
  IntMatrix out(t.labels.size(), t.labels.size());
  for (auto const &composition : weak_compositions(m, static_cast<int>(p)))
    out = out + detail::restricted_gram(t, composition);
  return out;
}

/// t applied to a class function: sum over compositions of Ind(Res f).
inline ClassFunction apply_transfer(const ClassFunction &f, long p) {
  ClassFunction out = ClassFunction::zero(f.m);
  for (auto const &[shape, count] : detail::composition_types(f.m, p)) out += count * induce(restrict(f, shape.parts));
  return out;
}

/// Named irreducibles used for the worked examples, in their printed order.
/// Defined for m <= 4.
inline std::vector<std::pair<std::string, Partition>> paper_basis(int m) {
  switch (m) {
  case 1: return {{"1", Partition({1})}};
  case 2: return {{"1", Partition({2})}, {"σ", Partition({1, 1})}};
  case 3: return {{"1", Partition({3})}, {"σ", Partition({1, 1, 1})}, {"V", Partition({2, 1})}};
  case 4:
    return {{"1", Partition({4})},
            {"σ", Partition({1, 1, 1, 1})},
            {"T", Partition({2, 2})},
            {"V", Partition({3, 1})},
            {"W", Partition({2, 1, 1})}};
  default: throw unsupported_input("paper basis is only named for m <= 4");
  }
}

/// The transfer matrix reordered to paper_basis(m).
inline IntMatrix in_paper_basis(const TransferMatrix &t) {
  auto basis = paper_basis(t.m);
  std::vector<std::size_t> idx;
  for (auto const &[name, lambda] : basis) idx.push_back(partition_index(t.labels, lambda));
  IntMatrix out(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = t.matrix(idx[i], idx[j]);
  return out;
}

struct TransferSpectrum {
  /// Characteristic polynomial, ascending coefficients.
  std::vector<Int> char_poly;
  /// Eigenvalues from factoring the characteristic polynomial over the
  /// candidates p^l, descending.
  std::vector<Int> eigenvalues;
  /// Eigenvalue of each class indicator, indexed by partitions(m).
  std::vector<Int> class_eigenvalues;
  /// Least e with t^e = 0 mod p, if any e <= p(m) + 1 works.
  std::optional<int> nilpotency_index;
};

/// Divides out (x - root) as often as possible; ascending coefficients.
inline int strip_root(std::vector<Int> &poly, const Int &root) {
  int count = 0;
  while (poly.size() > 1) {
    // synthetic division
    std::vector<Int> quotient(poly.size() - 1);
    Int carry = 0;
    for (std::size_t i = poly.size(); i-- > 1;) {
      carry = poly[i] + carry * root;
      quotient[i - 1] = carry;
    }
    if (poly[0] + carry * root != 0) break;
    poly = std::move(quotient);
    ++count;
  }
  return count;
}

inline std::optional<int> nilpotency_index_mod(const IntMatrix &a, const Int &modulus, int bound) {
  if (a.rows() == 0) return 0;
  IntMatrix power = a.mod(modulus);
  for (int e = 1; e <= bound; ++e) {
    if (power.is_zero()) return e;
    power = (power * a).mod(modulus);
  }
  return std::nullopt;
}

inline TransferSpectrum transfer_spectrum(int m, long p) {
  if (m < 1 || p < 2) throw std::invalid_argument("transfer_spectrum: require m >= 1, p >= 2");
  const TransferMatrix t = transfer_matrix(m, p);
  TransferSpectrum s;
  s.char_poly = characteristic_polynomial(t.matrix);

  std::vector<Int> rest = s.char_poly;
  for (int l = m; l >= 1; --l) {
    const Int root = ipow(p, static_cast<unsigned long>(l));
    for (int k = strip_root(rest, root); k > 0; --k) s.eigenvalues.push_back(root);
  }
  if (rest.size() != 1) throw defect_error("transfer_spectrum: characteristic polynomial has roots outside {p^l}");

  for (auto const &c : t.labels) {
    ClassFunction image = apply_transfer(ClassFunction::indicator(c), p);
    const Int value = image.at(c);
    if (!(image == value * ClassFunction::indicator(c)))
      throw defect_error("transfer_spectrum: class indicator " + c.to_string() + " is not an eigenvector");
    s.class_eigenvalues.push_back(value);
  }
  s.nilpotency_index = nilpotency_index_mod(t.matrix, Int(p), static_cast<int>(t.labels.size()) + 1);
  return s;
}

} // namespace powerops
