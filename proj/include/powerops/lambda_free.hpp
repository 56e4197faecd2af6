#pragma once

// The free lambda-ring on a free abelian group, truncated at a fixed weight.
// Elements are integer polynomials in the symbols lambda^k(e_i), where the
// symbol lambda^k(e_i) has weight k. T_n picks out the weight n part.

#include "powerops/abelian.hpp"
#include "powerops/integer.hpp"
#include "powerops/partitions.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace powerops {

/// The symbol lambda^weight(e_generator).
struct LambdaFactor {
  int generator = 0;
  int weight = 1;

  friend bool operator==(const LambdaFactor &, const LambdaFactor &) = default;
};

/// Canonical factor order: weight descending, then generator ascending.
inline bool canonical_before(const LambdaFactor &a, const LambdaFactor &b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  return a.generator < b.generator;
}

/// Product of lambda symbols, kept sorted in canonical factor order. The
/// empty product is the unit.
class LambdaMonomial {
public:
  LambdaMonomial() = default;
  explicit LambdaMonomial(std::vector<LambdaFactor> factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end(), canonical_before);
  }

  const std::vector<LambdaFactor> &factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  int weight() const {
    int w = 0;
    for (auto const &f : factors_) w += f.weight;
    return w;
  }

  friend LambdaMonomial operator*(const LambdaMonomial &a, const LambdaMonomial &b) {
    LambdaMonomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    std::merge(a.factors_.begin(), a.factors_.end(), b.factors_.begin(), b.factors_.end(),
               std::back_inserter(r.factors_), canonical_before);
    return r;
  }

  friend bool operator==(const LambdaMonomial &, const LambdaMonomial &) = default;
  friend bool operator<(const LambdaMonomial &a, const LambdaMonomial &b) {
    return std::lexicographical_compare(a.factors_.begin(), a.factors_.end(), b.factors_.begin(),
                                        b.factors_.end(), canonical_before);
  }

  /// e.g. "λ^2(e0)*λ^1(e1)"; the unit prints as "1".
  std::string to_string() const {
    if (factors_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      os << (i ? "*" : "") << "λ^" << factors_[i].weight << "(e" << factors_[i].generator << ")";
    return os.str();
  }

private:
  std::vector<LambdaFactor> factors_;
};

/// Integer combination of lambda monomials, truncated above weight_cap.
class GradedLambdaElement {
public:
  using Terms = std::map<LambdaMonomial, Int>;

  explicit GradedLambdaElement(int weight_cap = 0) : cap_(weight_cap) {}

  static GradedLambdaElement constant(const Int &c, int cap) {
    GradedLambdaElement e(cap);
    e.add_term(LambdaMonomial{}, c);
    return e;
  }
  /// lambda^k(e_generator).
  static GradedLambdaElement symbol(int generator, int k, int cap) {
    GradedLambdaElement e(cap);
    e.add_term(LambdaMonomial({{generator, k}}), 1);
    return e;
  }

  int weight_cap() const { return cap_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Int coefficient(const LambdaMonomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Int(0) : it->second;
  }

  void add_term(const LambdaMonomial &m, const Int &c) {
    if (c == 0 || m.weight() > cap_) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  GradedLambdaElement &operator+=(const GradedLambdaElement &o) {
    for (auto const &[m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GradedLambdaElement &operator-=(const GradedLambdaElement &o) {
    for (auto const &[m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend GradedLambdaElement operator+(GradedLambdaElement a, const GradedLambdaElement &b) { return a += b; }
  friend GradedLambdaElement operator-(GradedLambdaElement a, const GradedLambdaElement &b) { return a -= b; }
  friend GradedLambdaElement operator*(const Int &s, const GradedLambdaElement &a) {
    GradedLambdaElement r(a.cap_);
    if (s == 0) return r;
    for (auto const &[m, c] : a.terms_) r.terms_.emplace(m, s * c);
    return r;
  }
  friend GradedLambdaElement operator*(const GradedLambdaElement &a, const GradedLambdaElement &b) {
    GradedLambdaElement r(std::min(a.cap_, b.cap_));
    for (auto const &[ma, ca] : a.terms_)
      for (auto const &[mb, cb] : b.terms_)
        if (ma.weight() + mb.weight() <= r.cap_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  friend bool operator==(const GradedLambdaElement &a, const GradedLambdaElement &b) { return a.terms_ == b.terms_; }

  GradedLambdaElement pow(unsigned e) const {
    GradedLambdaElement r = constant(1, cap_);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto const &[m, c] : terms_) {
      Int mag = abs(c);
      os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      if (m.is_unit()) os << mag;
      else {
        if (mag != 1) os << mag << "*";
        os << m.to_string();
      }
      first = false;
    }
    return os.str();
  }

private:
  int cap_;
  Terms terms_;
};

/// Truncated power series sum_k c_k t^k with c_0 = 1 and c_k of pure weight k.
class LambdaSeries {
public:
  explicit LambdaSeries(int cap) : coeffs_(static_cast<std::size_t>(cap) + 1, GradedLambdaElement(cap)) {
    coeffs_[0] = GradedLambdaElement::constant(1, cap);
  }

  /// lambda_t(e_g) = 1 + sum_k lambda^k(e_g) t^k.
  static LambdaSeries of_generator(int generator, int cap) {
    LambdaSeries s(cap);
    for (int k = 1; k <= cap; ++k) s.coeffs_[static_cast<std::size_t>(k)] = GradedLambdaElement::symbol(generator, k, cap);
    return s;
  }

  int cap() const { return static_cast<int>(coeffs_.size()) - 1; }
  const GradedLambdaElement &operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  const std::vector<GradedLambdaElement> &coefficients() const { return coeffs_; }

  friend LambdaSeries operator*(const LambdaSeries &a, const LambdaSeries &b) {
    const int cap = std::min(a.cap(), b.cap());
    LambdaSeries r(cap);
    for (int k = 0; k <= cap; ++k) {
      GradedLambdaElement acc(cap);
      for (int i = 0; i <= k; ++i) {
        if (a[i].is_zero() || b[k - i].is_zero()) continue;
        acc += a[i] * b[k - i];
      }
      r.coeffs_[static_cast<std::size_t>(k)] = std::move(acc);
    }
    return r;
  }

  /// Formal inverse; well defined since the constant term is 1.
  LambdaSeries inverse() const {
    const int c = cap();
    LambdaSeries r(c);
    for (int k = 1; k <= c; ++k) {
      GradedLambdaElement acc(c);
      for (int i = 1; i <= k; ++i) {
        if ((*this)[i].is_zero() || r[k - i].is_zero()) continue;
        acc -= (*this)[i] * r[k - i];
      }
      r.coeffs_[static_cast<std::size_t>(k)] = std::move(acc);
    }
    return r;
  }

  LambdaSeries pow(Int e) const {
    LambdaSeries base = *this, result(cap());
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }

  friend bool operator==(const LambdaSeries &a, const LambdaSeries &b) { return a.coeffs_ == b.coeffs_; }

private:
  std::vector<GradedLambdaElement> coeffs_;
};

/// lambda_t(sum_i n_i e_i) truncated at t^cap. Negative multiples go through
/// the power-series inverse of lambda_t(e_i).
inline LambdaSeries lambda_series(std::span<const Int> combo, int cap) {
  if (cap < 0) throw std::invalid_argument("lambda_series: cap must be non-negative");
  LambdaSeries out(cap);
  for (std::size_t g = 0; g < combo.size(); ++g) {
    if (combo[g] == 0) continue;
    LambdaSeries base = LambdaSeries::of_generator(static_cast<int>(g), cap);
    if (combo[g] < 0) base = base.inverse();
    out = out * base.pow(abs(combo[g]));
  }
  return out;
}

inline LambdaSeries lambda_series(const std::vector<Int> &combo, int cap) {
  return lambda_series(std::span<const Int>(combo), cap);
}

namespace detail {
inline void lambda_basis_rec(int generators, int remaining, LambdaFactor bound, bool bounded,
                             std::vector<LambdaFactor> &cur, std::vector<LambdaMonomial> &out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  // Factors are emitted in canonical order so each multiset is produced once.
  for (int w = remaining; w >= 1; --w) {
    for (int g = 0; g < generators; ++g) {
      LambdaFactor f{g, w};
      if (bounded && canonical_before(f, bound)) continue;
      cur.push_back(f);
      lambda_basis_rec(generators, remaining - w, f, true, cur, out);
      cur.pop_back();
    }
  }
}
} // namespace detail

/// Weight-n monomials in lambda^k(e_0..e_{b-1}), sorted canonically. For b = 1
/// the count is the partition number p(n).
inline std::vector<LambdaMonomial> tn_free_basis(int generators, int n) {
  if (generators < 0 || n < 0) throw std::invalid_argument("tn_free_basis: negative argument");
  std::vector<LambdaMonomial> out;
  std::vector<LambdaFactor> cur;
  detail::lambda_basis_rec(generators, n, {}, false, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Matrix of T_n(f) for f : Z^a -> Z^b (f is b x a) in the canonical bases of
/// tn_free_basis(a, n) (columns) and tn_free_basis(b, n) (rows).
inline IntMatrix tn_of_map(const IntMatrix &f, int n) {
  const auto src = tn_free_basis(static_cast<int>(f.cols()), n);
  const auto dst = tn_free_basis(static_cast<int>(f.rows()), n);
  std::map<LambdaMonomial, std::size_t> index;
  for (std::size_t i = 0; i < dst.size(); ++i) index.emplace(dst[i], i);

  std::vector<LambdaSeries> images;
  images.reserve(f.cols());
  for (std::size_t j = 0; j < f.cols(); ++j) images.push_back(lambda_series(f.column(j), n));

  IntMatrix out(dst.size(), src.size());
  for (std::size_t col = 0; col < src.size(); ++col) {
    GradedLambdaElement image = GradedLambdaElement::constant(1, n);
    for (auto const &factor : src[col].factors()) {
      image = image * images[static_cast<std::size_t>(factor.generator)][factor.weight];
      if (image.is_zero()) break;
    }
    for (auto const &[m, c] : image.terms()) out(index.at(m), col) = c;
  }
  return out;
}

/// Presentation of T_n(coker P) on the basis tn_free_basis(b, n), from the
/// reflexive coequalizer Z^{b+a} ==> Z^b with d0 = (id, 0), d1 = (id, R).
inline Presentation tn_presentation(const Presentation &p, int n) {
  if (n < 0) throw std::invalid_argument("tn_presentation: n must be non-negative");
  const std::size_t b = p.generators, a = p.relator_count();
  IntMatrix d0(b, b + a), d1(b, b + a);
  for (std::size_t i = 0; i < b; ++i) {
    d0(i, i) = 1;
    d1(i, i) = 1;
    for (std::size_t j = 0; j < a; ++j) d1(i, b + j) = p.relations(i, j);
  }
  IntMatrix rel = (tn_of_map(d1, n) - tn_of_map(d0, n)).without_zero_columns();
  return {rel.rows(), rel};
}

inline GroupClass tn_presented(const Presentation &p, int n) { return classify(tn_presentation(p, n)); }

/// psi^n(e_generator) as a polynomial in lambda^1..lambda^n, from Newton's
/// identity psi^n = sum_{i<n} (-1)^{i-1} lambda^i psi^{n-i} + (-1)^{n-1} n lambda^n.
inline GradedLambdaElement adams(int n, int cap, int generator = 0) {
  if (n < 1 || n > cap) throw std::invalid_argument("adams: require 1 <= n <= cap");
  std::vector<GradedLambdaElement> psi{GradedLambdaElement(cap)};
  for (int k = 1; k <= n; ++k) {
    GradedLambdaElement acc = Int(k % 2 ? k : -k) * GradedLambdaElement::symbol(generator, k, cap);
    for (int i = 1; i < k; ++i) {
      GradedLambdaElement term = GradedLambdaElement::symbol(generator, i, cap) * psi[static_cast<std::size_t>(k - i)];
      if (i % 2) acc += term;
      else acc -= term;
    }
    psi.push_back(std::move(acc));
  }
  return psi.back();
}

/// Evaluates an element under the ring map lambda^k(e_g) -> binom(values[g], k),
/// the standard lambda-structure on Z.
inline Int augment(const GradedLambdaElement &e, std::span<const Int> values) {
  Int total = 0;
  for (auto const &[m, c] : e.terms()) {
    Int v = c;
    for (auto const &f : m.factors()) v *= binomial(values[static_cast<std::size_t>(f.generator)], f.weight);
    total += v;
  }
  return total;
}

/// (psi^p(w) - w^p) / p for w = sum_g combo[g] e_g; the theta operation of
/// the underlying theta^p-ring.
inline GradedLambdaElement theta_from_lambda(long p, std::span<const Int> combo, int cap) {
  if (!is_prime(p)) throw std::invalid_argument("theta_from_lambda: p must be prime");
  if (p > cap) throw std::invalid_argument("theta_from_lambda: cap must be at least p");
  GradedLambdaElement psi(cap), w(cap);
  for (std::size_t g = 0; g < combo.size(); ++g) {
    if (combo[g] == 0) continue;
    psi += combo[g] * adams(static_cast<int>(p), cap, static_cast<int>(g));
    w += combo[g] * GradedLambdaElement::symbol(static_cast<int>(g), 1, cap);
  }
  GradedLambdaElement diff = psi - w.pow(static_cast<unsigned>(p));
  GradedLambdaElement out(cap);
  for (auto const &[m, c] : diff.terms()) {
    if (!divides(Int(p), c))
      throw defect_error("theta_from_lambda: coefficient " + c.get_str() + " of " + m.to_string() +
                         " is not divisible by " + std::to_string(p));
    out.add_term(m, exact_div(c, Int(p)));
  }
  return out;
}

/// The reduction map Z/p (x) T_m(P) -> Z/p (x) T_m(P (x) Z/p^k), induced by the
/// quotient P -> P (x) Z/p^k. Both sides are presented on the same basis, so
/// the map is the identity on generators.
inline CokernelMap reduction_map(const Presentation &p, int m, long prime, int k) {
  Presentation source = tn_presentation(p, m);
  Presentation truncated = tn_presentation(tensor_with_cyclic(p, ipow(prime, static_cast<unsigned long>(k))), m);
  return map_cokernel(IntMatrix::identity(source.generators), tensor_with_cyclic(source, prime),
                      tensor_with_cyclic(truncated, prime));
}

/// Least k in [1, k_max] such that Z/p (x) T_m(Z) -> Z/p (x) T_m(Z/p^k) is an
/// isomorphism for every m <= n; nullopt if none is found. Success at k
/// implies success at every k' >= k.
inline std::optional<int> key_constant(int n, long p, int k_max) {
  if (n < 0 || p < 2) throw std::invalid_argument("key_constant: require n >= 0, p >= 2");
  const Presentation z = Presentation::free(1);
  for (int k = 1; k <= k_max; ++k) {
    bool all = true;
    for (int m = 0; m <= n && all; ++m) all = reduction_map(z, m, p, k).is_iso();
    if (all) return k;
  }
  return std::nullopt;
}

} // namespace powerops
