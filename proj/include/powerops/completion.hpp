#pragma once

// Derived p-completion at height 1 on a small module grammar: finite direct
// sums of Z, Z/n, Z[1/p], Z/p^inf and the p-adic integers.

#include "powerops/abelian.hpp"
#include "powerops/integer.hpp"
#include "powerops/lambda_free.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace powerops {

class parse_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class AtomKind { integers, cyclic, p_inverted, prufer, p_adic };

/// One summand. For `cyclic`, order is a prime power q^e > 1.
struct Atom {
  AtomKind kind = AtomKind::integers;
  Int order = 0;

  friend bool operator==(const Atom &, const Atom &) = default;
  friend bool operator<(const Atom &a, const Atom &b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.order < b.order;
  }

  bool finitely_generated() const { return kind == AtomKind::integers || kind == AtomKind::cyclic; }

  std::string to_string() const {
    switch (kind) {
    case AtomKind::integers: return "Z";
    case AtomKind::cyclic: return "Z/" + order.get_str();
    case AtomKind::p_inverted: return "Z[1/p]";
    case AtomKind::prufer: return "Zp_inf";
    case AtomKind::p_adic: return "Zp_hat";
    }
    return "?";
  }
};

/// A finite direct sum of atoms, normalized: cyclic groups split into prime
/// power parts and summands sorted.
class ModuleExpr {
public:
  ModuleExpr() = default;
  explicit ModuleExpr(std::vector<Atom> atoms) {
    for (auto const &a : atoms) add(a);
  }

  static ModuleExpr integers(std::size_t copies = 1) { return ModuleExpr(std::vector<Atom>(copies, {AtomKind::integers, 0})); }
  static ModuleExpr p_adic(std::size_t copies = 1) { return ModuleExpr(std::vector<Atom>(copies, {AtomKind::p_adic, 0})); }
  static ModuleExpr cyclic(const Int &n) {
    ModuleExpr m;
    m.add({AtomKind::cyclic, n});
    return m;
  }
  static ModuleExpr p_inverted() { return ModuleExpr({{AtomKind::p_inverted, 0}}); }
  static ModuleExpr prufer() { return ModuleExpr({{AtomKind::prufer, 0}}); }

  /// Z^r + Z/n_1 + ... for a finitely generated group.
  static ModuleExpr from_group(const GroupClass &g) {
    ModuleExpr m = integers(g.free_rank);
    for (auto const &t : g.torsion) m.add({AtomKind::cyclic, t});
    return m;
  }

  const std::vector<Atom> &atoms() const { return atoms_; }
  bool is_zero() const { return atoms_.empty(); }
  bool finitely_generated() const {
    return std::all_of(atoms_.begin(), atoms_.end(), [](auto const &a) { return a.finitely_generated(); });
  }
  std::size_t count(AtomKind kind) const {
    return static_cast<std::size_t>(std::count_if(atoms_.begin(), atoms_.end(), [&](auto const &a) { return a.kind == kind; }));
  }

  friend ModuleExpr operator+(ModuleExpr a, const ModuleExpr &b) {
    for (auto const &atom : b.atoms_) a.add(atom);
    return a;
  }
  friend bool operator==(const ModuleExpr &, const ModuleExpr &) = default;

  /// Grammar syntax, e.g. "Z + Z/4 + Zp_hat"; the zero module is "0".
  std::string to_string() const {
    if (atoms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < atoms_.size(); ++i) out += (i ? " + " : "") + atoms_[i].to_string();
    return out;
  }

  /// Presentation of a finitely generated expression.
  Presentation presentation() const {
    if (!finitely_generated()) throw unsupported_input("presentation: " + to_string() + " is not finitely generated");
    Presentation p = Presentation::free(count(AtomKind::integers));
    for (auto const &a : atoms_)
      if (a.kind == AtomKind::cyclic) p = direct_sum(p, Presentation::cyclic(a.order));
    return p;
  }

private:
  void add(const Atom &a) {
    if (a.kind != AtomKind::cyclic) {
      atoms_.insert(std::upper_bound(atoms_.begin(), atoms_.end(), a), a);
      return;
    }
    if (a.order == 0) {
      add({AtomKind::integers, 0});
      return;
    }
    Int n = abs(a.order);
    auto insert_cyclic = [this](const Int &order) {
      Atom c{AtomKind::cyclic, order};
      atoms_.insert(std::upper_bound(atoms_.begin(), atoms_.end(), c), c);
    };
    for (Int q = 2; q * q <= n; ++q) {
      if (!divides(q, n)) continue;
      Int part = 1;
      while (divides(q, n)) {
        n /= q;
        part *= q;
      }
      insert_cyclic(part);
    }
    if (n > 1) insert_cyclic(n);
  }

  std::vector<Atom> atoms_;
};

namespace detail {
inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline Int parse_positive(const std::string &digits, const std::string &context) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw parse_error("module expression: expected a positive integer in '" + context + "'");
  Int v(digits);
  if (v < 1) throw parse_error("module expression: expected a positive integer in '" + context + "'");
  return v;
}
} // namespace detail

/// Parses `Z`, `Z/<n>`, `Z[1/p]` or `Z[1/<p>]`, `Zp_inf`, `Zp_hat`, `0`,
/// joined by `+`. Atoms that depend on the prime need p; `Z[1/q]` with q
/// other than p is rejected as unsupported.
inline ModuleExpr parse_module(std::string_view text, std::optional<long> p = std::nullopt) {
  if (detail::trim(text).empty()) throw parse_error("module expression: empty input");
  ModuleExpr out;
  std::size_t start = 0;
  while (true) {
    const std::size_t plus = text.find('+', start);
    const std::string token = detail::trim(text.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start));
    if (token.empty()) throw parse_error("module expression: empty summand in '" + std::string(text) + "'");
    auto need_p = [&] {
      if (!p) throw parse_error("module expression: '" + token + "' requires a prime p");
    };
    if (token == "0") {
    } else if (token == "Z") {
      out = out + ModuleExpr::integers();
    } else if (token == "Zp_inf") {
      need_p();
      out = out + ModuleExpr::prufer();
    } else if (token == "Zp_hat") {
      need_p();
      out = out + ModuleExpr::p_adic();
    } else if (token.rfind("Z[1/", 0) == 0 && token.back() == ']') {
      need_p();
      const std::string inner = token.substr(4, token.size() - 5);
      if (inner != "p" && detail::parse_positive(inner, token) != *p)
        throw unsupported_input("module expression: " + token + " is outside the grammar for p = " + std::to_string(*p));
      out = out + ModuleExpr::p_inverted();
    } else if (token.rfind("Z/", 0) == 0) {
      const Int n = detail::parse_positive(token.substr(2), token);
      if (n != 1) out = out + ModuleExpr::cyclic(n);
    } else {
      throw parse_error("module expression: unknown summand '" + token + "'");
    }
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return out;
}

struct CompletionResult {
  ModuleExpr L0;
  ModuleExpr L1;

  friend bool operator==(const CompletionResult &, const CompletionResult &) = default;
};

/// (L0, L1) of a single atom.
inline CompletionResult l_complete(const Atom &a, long p) {
  switch (a.kind) {
  case AtomKind::integers:
  case AtomKind::p_adic: return {ModuleExpr::p_adic(), {}};
  case AtomKind::cyclic:
    if (divides(Int(p), a.order)) return {ModuleExpr::cyclic(a.order), {}};
    return {};
  case AtomKind::p_inverted: return {};
  case AtomKind::prufer: return {{}, ModuleExpr::p_adic()};
  }
  return {};
}

/// L0 and L1 of M, summand by summand.
inline CompletionResult l_complete(const ModuleExpr &m, long p) {
  if (!is_prime(p)) throw std::invalid_argument("l_complete: p must be prime");
  CompletionResult out;
  for (auto const &a : m.atoms()) {
    CompletionResult r = l_complete(a, p);
    out.L0 = out.L0 + r.L0;
    out.L1 = out.L1 + r.L1;
  }
  return out;
}

/// Z/p^k (x) M, reading Zp_hat (x) Z/p^k as Z/p^k.
inline GroupClass reduce_mod_prime_power(const ModuleExpr &m, long p, int k) {
  const Int q = ipow(p, static_cast<unsigned long>(k));
  GroupClass out;
  for (auto const &a : m.atoms()) {
    Int order = 1;
    switch (a.kind) {
    case AtomKind::integers:
    case AtomKind::p_adic: order = q; break;
    case AtomKind::cyclic: order = gcd(q, a.order); break;
    case AtomKind::p_inverted:
    case AtomKind::prufer: break;
    }
    if (order != 1) out = direct_sum(out, GroupClass{0, {order}});
  }
  return out;
}

/// Whether L0 f is an isomorphism for a map of finitely generated groups:
/// kernel and cokernel must be finite of order prime to p.
inline bool is_l0_equivalence(const CokernelMap &f, long p) {
  if (!is_prime(p)) throw std::invalid_argument("is_l0_equivalence: p must be prime");
  auto completes_to_zero = [p](const GroupClass &g) { return g.is_finite() && !divides(Int(p), g.order()); };
  return completes_to_zero(f.kernel()) && completes_to_zero(f.cokernel());
}

/// L0 T_n of M for M finitely generated or a sum of Zp_hat and finite groups.
/// Zp_hat is modeled by Z before T_n and completed afterwards.
inline ModuleExpr hat_tn(const ModuleExpr &m, int n, long p) {
  if (!is_prime(p)) throw std::invalid_argument("hat_tn: p must be prime");
  if (m.count(AtomKind::p_inverted) || m.count(AtomKind::prufer))
    throw unsupported_input("hat_tn: " + m.to_string() + " contains Z[1/p] or Zp_inf");
  GroupClass model{m.count(AtomKind::integers) + m.count(AtomKind::p_adic), {}};
  Presentation pres = Presentation::free(model.free_rank);
  for (auto const &a : m.atoms())
    if (a.kind == AtomKind::cyclic) pres = direct_sum(pres, Presentation::cyclic(a.order));
  return l_complete(ModuleExpr::from_group(tn_presented(pres, n)), p).L0;
}

/// Whether Z/p (x) T_m(M) -> Z/p (x) T_m(Z/p^k (x) M) is an isomorphism for
/// every m <= n.
inline bool verify_main_theorem(const Presentation &m, int n, long p, int k) {
  if (k < 1) throw std::invalid_argument("verify_main_theorem: k must be at least 1");
  if (n < 0) throw std::invalid_argument("verify_main_theorem: n must be non-negative");
  for (int w = 0; w <= n; ++w)
    if (!reduction_map(m, w, p, k).is_iso()) return false;
  return true;
}

} // namespace powerops
