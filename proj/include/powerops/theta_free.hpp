#pragma once

// Free Z/2-graded theta-rings over Z_p, truncated at a fixed weight. Even
// generators x_g carry the polynomial variables theta^i x_g of weight p^i; odd
// generators y_g carry the exterior variables psi^i y_g of weight p^i.
// Coefficients are integers; every formula used here is integral.

#include "powerops/abelian.hpp"
#include "powerops/integer.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace powerops {

/// A variable theta^iterate(x_generator) or psi^iterate(y_generator).
struct ThetaVariable {
  int generator = 0;
  int iterate = 0;

  friend auto operator<=>(const ThetaVariable &, const ThetaVariable &) = default;
};

enum class Parity { even, odd };

class ThetaMonomial {
public:
  ThetaMonomial() = default;

  static ThetaMonomial even_variable(int generator, int iterate, int exponent = 1) {
    ThetaMonomial m;
    if (exponent > 0) m.even_[{generator, iterate}] = exponent;
    return m;
  }
  static ThetaMonomial odd_variable(int generator, int iterate) {
    ThetaMonomial m;
    m.odd_.push_back({generator, iterate});
    return m;
  }

  const std::map<ThetaVariable, int> &even_factors() const { return even_; }
  /// Strictly increasing.
  const std::vector<ThetaVariable> &odd_factors() const { return odd_; }

  bool is_unit() const { return even_.empty() && odd_.empty(); }
  Parity parity() const { return odd_.size() % 2 ? Parity::odd : Parity::even; }

  long weight(long p) const {
    long w = 0;
    for (auto const &[v, e] : even_) w += ipow(p, static_cast<unsigned long>(v.iterate)).get_si() * e;
    for (auto const &v : odd_) w += ipow(p, static_cast<unsigned long>(v.iterate)).get_si();
    return w;
  }

  /// Product with its sign, or nullopt when an odd variable repeats.
  friend std::optional<std::pair<int, ThetaMonomial>> multiply(const ThetaMonomial &a, const ThetaMonomial &b) {
    ThetaMonomial r = a;
    for (auto const &[v, e] : b.even_) r.even_[v] += e;
    int sign = 1;
    r.odd_.clear();
    std::size_t i = 0, j = 0;
    while (i < a.odd_.size() || j < b.odd_.size()) {
      if (j == b.odd_.size() || (i < a.odd_.size() && a.odd_[i] < b.odd_[j])) {
        r.odd_.push_back(a.odd_[i++]);
      } else if (i == a.odd_.size() || b.odd_[j] < a.odd_[i]) {
        // b's factor moves past the remaining factors of a
        if ((a.odd_.size() - i) % 2) sign = -sign;
        r.odd_.push_back(b.odd_[j++]);
      } else {
        return std::nullopt;
      }
    }
    return std::pair{sign, r};
  }

  /// Splits off the last odd factor: *this = rest * last.
  std::pair<ThetaMonomial, ThetaVariable> split_last_odd() const {
    ThetaMonomial rest = *this;
    ThetaVariable last = rest.odd_.back();
    rest.odd_.pop_back();
    return {rest, last};
  }

  ThetaMonomial even_part() const {
    ThetaMonomial m;
    m.even_ = even_;
    return m;
  }
  ThetaMonomial odd_part() const {
    ThetaMonomial m;
    m.odd_ = odd_;
    return m;
  }

  friend bool operator==(const ThetaMonomial &, const ThetaMonomial &) = default;
  friend bool operator<(const ThetaMonomial &a, const ThetaMonomial &b) {
    if (a.even_ != b.even_) return a.even_ < b.even_;
    return a.odd_ < b.odd_;
  }

  /// e.g. "x0^2*θx0*ψy0"; the unit prints as "1".
  std::string to_string() const {
    if (is_unit()) return "1";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
      if (!first) os << "*";
      first = false;
    };
    for (auto const &[v, e] : even_) {
      sep();
      if (v.iterate == 1) os << "θ";
      else if (v.iterate > 1) os << "θ^" << v.iterate;
      os << "x" << v.generator;
      if (e > 1) os << "^" << e;
    }
    for (auto const &v : odd_) {
      sep();
      if (v.iterate == 1) os << "ψ";
      else if (v.iterate > 1) os << "ψ^" << v.iterate;
      os << "y" << v.generator;
    }
    return os.str();
  }

private:
  std::map<ThetaVariable, int> even_;
  std::vector<ThetaVariable> odd_;
};

/// Integer combination of theta monomials over a fixed prime, truncated above
/// weight_cap.
class ThetaElement {
public:
  using Terms = std::map<ThetaMonomial, Int>;

  ThetaElement(long p, int weight_cap) : p_(p), cap_(weight_cap) {
    if (!is_prime(p)) throw std::invalid_argument("ThetaElement: p must be prime, got " + std::to_string(p));
    if (weight_cap < 0) throw std::invalid_argument("ThetaElement: weight cap must be non-negative");
  }

  static ThetaElement constant(long p, int cap, const Int &c) {
    ThetaElement e(p, cap);
    e.add_term(ThetaMonomial{}, c);
    return e;
  }
  static ThetaElement monomial(long p, int cap, const ThetaMonomial &m, const Int &c = 1) {
    ThetaElement e(p, cap);
    e.add_term(m, c);
    return e;
  }
  /// theta^iterate(x_generator).
  static ThetaElement even_generator(long p, int cap, int generator = 0, int iterate = 0) {
    return monomial(p, cap, ThetaMonomial::even_variable(generator, iterate));
  }
  /// psi^iterate(y_generator).
  static ThetaElement odd_generator(long p, int cap, int generator = 0, int iterate = 0) {
    return monomial(p, cap, ThetaMonomial::odd_variable(generator, iterate));
  }

  long prime() const { return p_; }
  int weight_cap() const { return cap_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Int coefficient(const ThetaMonomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Int(0) : it->second;
  }

  bool is_homogeneous(Parity parity) const {
    return std::all_of(terms_.begin(), terms_.end(), [&](auto const &t) { return t.first.parity() == parity; });
  }

  /// Terms of the given parity.
  ThetaElement part(Parity parity) const {
    ThetaElement r(p_, cap_);
    for (auto const &[m, c] : terms_)
      if (m.parity() == parity) r.terms_.emplace(m, c);
    return r;
  }

  void add_term(const ThetaMonomial &m, const Int &c) {
    if (c == 0 || m.weight(p_) > cap_) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  ThetaElement &operator+=(const ThetaElement &o) {
    check_compatible(o);
    for (auto const &[m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  ThetaElement &operator-=(const ThetaElement &o) {
    check_compatible(o);
    for (auto const &[m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend ThetaElement operator+(ThetaElement a, const ThetaElement &b) { return a += b; }
  friend ThetaElement operator-(ThetaElement a, const ThetaElement &b) { return a -= b; }
  friend ThetaElement operator*(const Int &s, const ThetaElement &a) {
    ThetaElement r(a.p_, a.cap_);
    if (s == 0) return r;
    for (auto const &[m, c] : a.terms_) r.terms_.emplace(m, s * c);
    return r;
  }
  friend ThetaElement operator*(const ThetaElement &a, const ThetaElement &b) {
    a.check_compatible(b);
    ThetaElement r(a.p_, a.cap_);
    for (auto const &[ma, ca] : a.terms_) {
      const long wa = ma.weight(a.p_);
      for (auto const &[mb, cb] : b.terms_) {
        if (wa + mb.weight(a.p_) > a.cap_) continue;
        if (auto prod = multiply(ma, mb)) r.add_term(prod->second, prod->first * ca * cb);
      }
    }
    return r;
  }
  friend bool operator==(const ThetaElement &a, const ThetaElement &b) {
    return a.p_ == b.p_ && a.terms_ == b.terms_;
  }

  ThetaElement pow(unsigned e) const {
    ThetaElement r = constant(p_, cap_, 1), base = *this;
    while (e) {
      if (e & 1u) r = r * base;
      e >>= 1;
      if (e) base = base * base;
    }
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
  void check_compatible(const ThetaElement &o) const {
    if (o.p_ != p_ || o.cap_ != cap_)
      throw std::invalid_argument("ThetaElement: operands have different prime or weight cap");
  }

  long p_;
  int cap_;
  Terms terms_;
};

namespace detail {

inline ThetaElement divide_by_p(const ThetaElement &e, const char *where) {
  const Int p = e.prime();
  ThetaElement out(e.prime(), e.weight_cap());
  for (auto const &[m, c] : e.terms()) {
    if (!divides(p, c))
      throw defect_error(std::string(where) + ": coefficient " + c.get_str() + " of " + m.to_string() +
                         " is not divisible by " + p.get_str());
    out.add_term(m, exact_div(c, p));
  }
  return out;
}

/// theta and psi on a fixed (p, cap), with theta of monomials memoized.
class ThetaCalculus {
public:
  ThetaCalculus(long p, int cap) : p_(p), cap_(cap) {}

  ThetaElement theta(const ThetaElement &u) {
    if (!u.is_homogeneous(Parity::even)) throw std::invalid_argument("theta: argument must have even degree");
    // theta(sum a_j) = sum theta(a_j) - ((sum a_j)^p - sum a_j^p) / p
    ThetaElement sum_theta(p_, cap_), sum_powers(p_, cap_);
    for (auto const &[m, c] : u.terms()) {
      const ThetaElement term = ThetaElement::monomial(p_, cap_, m, c);
      sum_theta += scaled_theta(m, c);
      sum_powers += term.pow(static_cast<unsigned>(p_));
    }
    return sum_theta - divide_by_p(u.pow(static_cast<unsigned>(p_)) - sum_powers, "theta");
  }

  /// psi(u) = u^p + p theta(u) on even parts; on odd parts psi is additive
  /// with psi(a y) = psi(a) psi(y) and psi(psi^i y) = psi^{i+1} y.
  ThetaElement psi(const ThetaElement &u) {
    const ThetaElement even = u.part(Parity::even);
    ThetaElement out = even.pow(static_cast<unsigned>(p_)) + Int(p_) * theta(even);
    for (auto const &[m, c] : u.terms()) {
      if (m.parity() != Parity::odd) continue;
      auto [rest, last] = m.split_last_odd();
      ThetaElement y = ThetaElement::odd_generator(p_, cap_, last.generator, last.iterate + 1);
      out += c * (psi(ThetaElement::monomial(p_, cap_, rest)) * y);
    }
    return out;
  }

private:
  // theta(c m) = c theta(m) + ((c - c^p) / p) m^p
  ThetaElement scaled_theta(const ThetaMonomial &m, const Int &c) {
    const Int ground = exact_div(c - ipow(c, static_cast<unsigned long>(p_)), Int(p_));
    return c * theta_monomial(m) + ground * ThetaElement::monomial(p_, cap_, m).pow(static_cast<unsigned>(p_));
  }

  ThetaElement theta_monomial(const ThetaMonomial &m) {
    if (auto it = cache_.find(m); it != cache_.end()) return it->second;
    ThetaElement result = compute_theta_monomial(m);
    cache_.emplace(m, result);
    return result;
  }

  ThetaElement compute_theta_monomial(const ThetaMonomial &m) {
    if (m.is_unit()) return ThetaElement(p_, cap_);
    const auto &even = m.even_factors();
    const auto &odd = m.odd_factors();
    if (odd.empty() && even.size() == 1 && even.begin()->second == 1) {
      const ThetaVariable v = even.begin()->first;
      return ThetaElement::even_generator(p_, cap_, v.generator, v.iterate + 1);
    }
    ThetaMonomial a, b;
    if (!odd.empty() && !even.empty()) {
      a = m.even_part();
      b = m.odd_part();
    } else if (odd.empty()) {
      // peel one even variable
      const ThetaVariable v = even.begin()->first;
      a = ThetaMonomial::even_variable(v.generator, v.iterate);
      b = *multiply_checked(ThetaMonomial::even_variable(v.generator, v.iterate, even.begin()->second - 1),
                            rest_even(m, v));
    } else if (odd.size() == 2) {
      // theta(y z) = psi(y) psi(z)
      ThetaElement y = ThetaElement::odd_generator(p_, cap_, odd[0].generator, odd[0].iterate + 1);
      ThetaElement z = ThetaElement::odd_generator(p_, cap_, odd[1].generator, odd[1].iterate + 1);
      return y * z;
    } else {
      ThetaMonomial first_two = *multiply_checked(ThetaMonomial::odd_variable(odd[0].generator, odd[0].iterate),
                                                  ThetaMonomial::odd_variable(odd[1].generator, odd[1].iterate));
      ThetaMonomial rest;
      for (std::size_t i = 2; i < odd.size(); ++i)
        rest = *multiply_checked(rest, ThetaMonomial::odd_variable(odd[i].generator, odd[i].iterate));
      a = first_two;
      b = rest;
    }
    return theta_mul_monomials(a, b);
  }

  static ThetaMonomial rest_even(const ThetaMonomial &m, const ThetaVariable &skip) {
    ThetaMonomial r;
    for (auto const &[v, e] : m.even_factors())
      if (!(v == skip)) r = *multiply_checked(r, ThetaMonomial::even_variable(v.generator, v.iterate, e));
    return r;
  }

  static std::optional<ThetaMonomial> multiply_checked(const ThetaMonomial &a, const ThetaMonomial &b) {
    auto prod = multiply(a, b);
    if (!prod || prod->first != 1) return std::nullopt;
    return prod->second;
  }

  // theta(ab) = theta(a) b^p + a^p theta(b) + p theta(a) theta(b), a and b even
  ThetaElement theta_mul_monomials(const ThetaMonomial &a, const ThetaMonomial &b) {
    const unsigned p = static_cast<unsigned>(p_);
    ThetaElement ta = theta_monomial(a), tb = theta_monomial(b);
    ThetaElement ea = ThetaElement::monomial(p_, cap_, a), eb = ThetaElement::monomial(p_, cap_, b);
    return ta * eb.pow(p) + ea.pow(p) * tb + Int(p_) * (ta * tb);
  }

  long p_;
  int cap_;
  std::map<ThetaMonomial, ThetaElement> cache_;
};

} // namespace detail

/// theta(u) for u of even degree.
inline ThetaElement theta(const ThetaElement &u) {
  return detail::ThetaCalculus(u.prime(), u.weight_cap()).theta(u);
}

/// The Adams operation: u^p + p theta(u) on even degree, the additive psi on
/// odd degree.
inline ThetaElement psi(const ThetaElement &u) { return detail::ThetaCalculus(u.prime(), u.weight_cap()).psi(u); }

/// theta(u + v) = theta u + theta v - sum_{i=1}^{p-1} (1/p) binom(p, i) u^i v^{p-i}.
inline ThetaElement theta_add(const ThetaElement &u, const ThetaElement &v) {
  const long p = u.prime();
  ThetaElement out = theta(u) + theta(v);
  for (long i = 1; i < p; ++i) {
    const Int c = exact_div(binomial(Int(p), i), Int(p));
    out -= c * (u.pow(static_cast<unsigned>(i)) * v.pow(static_cast<unsigned>(p - i)));
  }
  return out;
}

/// theta(u v) = theta(u) v^p + u^p theta(v) + p theta(u) theta(v).
inline ThetaElement theta_mul(const ThetaElement &u, const ThetaElement &v) {
  const long p = u.prime();
  const unsigned e = static_cast<unsigned>(p);
  ThetaElement tu = theta(u), tv = theta(v);
  return tu * v.pow(e) + u.pow(e) * tv + Int(p) * (tu * tv);
}

namespace detail {
inline void theta_basis_rec(const std::vector<std::pair<ThetaVariable, long>> &even_vars,
                            const std::vector<std::pair<ThetaVariable, long>> &odd_vars, std::size_t index,
                            long remaining, ThetaMonomial cur, std::vector<ThetaMonomial> &out) {
  const std::size_t total = even_vars.size() + odd_vars.size();
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  if (index == total) return;
  if (index < even_vars.size()) {
    auto const &[v, w] = even_vars[index];
    for (long e = 0; e * w <= remaining; ++e) {
      ThetaMonomial with = cur;
      if (e) with = multiply(cur, ThetaMonomial::even_variable(v.generator, v.iterate, static_cast<int>(e)))->second;
      theta_basis_rec(even_vars, odd_vars, index + 1, remaining - e * w, with, out);
    }
  } else {
    auto const &[v, w] = odd_vars[index - even_vars.size()];
    theta_basis_rec(even_vars, odd_vars, index + 1, remaining, cur, out);
    if (w <= remaining) {
      auto with = multiply(cur, ThetaMonomial::odd_variable(v.generator, v.iterate));
      theta_basis_rec(even_vars, odd_vars, index + 1, remaining - w, with->second, out);
    }
  }
}
} // namespace detail

/// Monomials of exact weight n in the free theta-algebra on the given numbers
/// of even and odd generators, sorted.
inline std::vector<ThetaMonomial> theta_basis(long p, int n, int even_generators, int odd_generators = 0) {
  if (!is_prime(p)) throw std::invalid_argument("theta_basis: p must be prime");
  if (n < 0 || even_generators < 0 || odd_generators < 0)
    throw std::invalid_argument("theta_basis: negative argument");
  std::vector<std::pair<ThetaVariable, long>> even_vars, odd_vars;
  for (int i = 0; ipow(p, static_cast<unsigned long>(i)) <= n; ++i) {
    const long w = ipow(p, static_cast<unsigned long>(i)).get_si();
    for (int g = 0; g < even_generators; ++g) even_vars.push_back({{g, i}, w});
    for (int g = 0; g < odd_generators; ++g) odd_vars.push_back({{g, i}, w});
  }
  std::vector<ThetaMonomial> out;
  detail::theta_basis_rec(even_vars, odd_vars, 0, n, ThetaMonomial{}, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Weight-n monomials on one generator of the given parity.
inline std::vector<ThetaMonomial> free_theta_basis(long p, int n, Parity parity) {
  return parity == Parity::even ? theta_basis(p, n, 1, 0) : theta_basis(p, n, 0, 1);
}

/// Matrix of the weight-n part of the induced map on free theta-algebras for
/// f : Z^a -> Z^b on even generators (f is b x a), in the bases of theta_basis.
inline IntMatrix theta_tn_of_map(long p, const IntMatrix &f, int n) {
  const auto src = theta_basis(p, n, static_cast<int>(f.cols()));
  const auto dst = theta_basis(p, n, static_cast<int>(f.rows()));
  std::map<ThetaMonomial, std::size_t> index;
  for (std::size_t i = 0; i < dst.size(); ++i) index.emplace(dst[i], i);

  detail::ThetaCalculus calc(p, n);
  // iterates[g][i] = theta^i(f(x_g))
  std::vector<std::vector<ThetaElement>> iterates(f.cols());
  for (std::size_t g = 0; g < f.cols(); ++g) {
    ThetaElement w(p, n);
    for (std::size_t h = 0; h < f.rows(); ++h) w += f(h, g) * ThetaElement::even_generator(p, n, static_cast<int>(h));
    iterates[g].push_back(w);
    for (Int weight = p; weight <= n; weight *= p) iterates[g].push_back(calc.theta(iterates[g].back()));
  }

  IntMatrix out(dst.size(), src.size());
  for (std::size_t col = 0; col < src.size(); ++col) {
    ThetaElement image = ThetaElement::constant(p, n, 1);
    for (auto const &[v, e] : src[col].even_factors()) {
      image = image * iterates[static_cast<std::size_t>(v.generator)][static_cast<std::size_t>(v.iterate)].pow(
                          static_cast<unsigned>(e));
      if (image.is_zero()) break;
    }
    for (auto const &[m, c] : image.terms()) out(index.at(m), col) = c;
  }
  return out;
}

/// Presentation of the weight-n part of the free theta-algebra on coker P,
/// from the reflexive coequalizer with d0 = (id, 0), d1 = (id, R). Generators
/// are theta_basis(p, n, b).
inline Presentation theta_tn_presentation(long p, const Presentation &P, int n) {
  if (n < 0) throw std::invalid_argument("theta_tn_presentation: n must be non-negative");
  if (!is_prime(p)) throw std::invalid_argument("theta_tn_presentation: p must be prime");
  for (auto const &t : classify(P).torsion)
    if (!is_power_of(t, p))
      throw unsupported_input("theta_tn_presentation: torsion Z/" + t.get_str() + " is not a " + std::to_string(p) +
                              "-group");
  const std::size_t b = P.generators, a = P.relator_count();
  IntMatrix d0(b, b + a), d1(b, b + a);
  for (std::size_t i = 0; i < b; ++i) {
    d0(i, i) = 1;
    d1(i, i) = 1;
    for (std::size_t j = 0; j < a; ++j) d1(i, b + j) = P.relations(i, j);
  }
  IntMatrix rel = (theta_tn_of_map(p, d1, n) - theta_tn_of_map(p, d0, n)).without_zero_columns();
  return {rel.rows(), rel};
}

/// The weight-n part over Z_p, reported with Z_p summands written as Z.
inline GroupClass theta_tn_presented(long p, const Presentation &P, int n) {
  return p_local_part(classify(theta_tn_presentation(p, P, n)), p);
}

} // namespace powerops
