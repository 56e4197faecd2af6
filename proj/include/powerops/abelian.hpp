#pragma once

// Exact linear algebra over Z: Smith normal form, finitely presented abelian
// groups given as cokernels of integer matrices, and homomorphisms between
// them.

#include "powerops/int_matrix.hpp"
#include "powerops/integer.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace powerops {

/// U * M * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ... .
/// The inverses of U and V are carried along because callers need both.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inverse;
  IntMatrix V_inverse;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < std::min(D.rows(), D.cols()) && D(r, r) != 0) ++r;
    return r;
  }
  std::vector<Int> diagonal() const {
    std::vector<Int> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

// In-place diagonalization. Row operations are mirrored into U (left) and
// U_inverse, column operations into V (right) and V_inverse, when tracking.
class SmithReducer {
public:
  SmithReducer(IntMatrix a, bool track) : a_(std::move(a)), track_(track) {
    if (track_) {
      u_ = IntMatrix::identity(a_.rows());
      ui_ = IntMatrix::identity(a_.rows());
      v_ = IntMatrix::identity(a_.cols());
      vi_ = IntMatrix::identity(a_.cols());
    }
  }

  void run() {
    const std::size_t r = a_.rows(), c = a_.cols();
    for (std::size_t t = 0; t < std::min(r, c); ++t) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (a_(i, j) != 0 && (!best || abs(a_(i, j)) < abs(a_(best->first, best->second)))) best = {i, j};
      if (!best) break;
      swap_rows(t, best->first);
      swap_cols(t, best->second);

      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < r; ++i) {
          if (a_(i, t) == 0) continue;
          Int q;
          mpz_tdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
          add_row(i, t, -q);
          if (a_(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < c; ++j) {
          if (a_(t, j) == 0) continue;
          Int q;
          mpz_tdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
          add_col(j, t, -q);
          if (a_(t, j) != 0) clean = false;
        }
        if (!clean) {
          // A remainder smaller than the pivot survived; promote it.
          std::size_t bi = t, bj = t;
          for (std::size_t i = t + 1; i < r; ++i)
            if (a_(i, t) != 0 && abs(a_(i, t)) < abs(a_(bi, bj))) bi = i, bj = t;
          for (std::size_t j = t + 1; j < c; ++j)
            if (a_(t, j) != 0 && abs(a_(t, j)) < abs(a_(bi, bj))) bi = t, bj = j;
          swap_rows(t, bi);
          swap_cols(t, bj);
          continue;
        }
        std::optional<std::size_t> offending;
        for (std::size_t i = t + 1; i < r && !offending; ++i)
          for (std::size_t j = t + 1; j < c; ++j)
            if (!divides(a_(t, t), a_(i, j))) {
              offending = i;
              break;
            }
        if (!offending) break;
        add_row(t, *offending, 1);
      }
      if (a_(t, t) < 0) negate_row(t);
    }
  }

  SmithDecomposition result() && {
    return {std::move(u_), std::move(a_), std::move(v_), std::move(ui_), std::move(vi_)};
  }
  const IntMatrix &diagonal_matrix() const { return a_; }

private:
  void swap_rows(std::size_t x, std::size_t y) {
    if (x == y) return;
    a_.swap_rows(x, y);
    if (track_) {
      u_.swap_rows(x, y);
      ui_.swap_cols(x, y);
    }
  }
  void swap_cols(std::size_t x, std::size_t y) {
    if (x == y) return;
    a_.swap_cols(x, y);
    if (track_) {
      v_.swap_cols(x, y);
      vi_.swap_rows(x, y);
    }
  }
  void add_row(std::size_t dst, std::size_t src, const Int &q) {
    a_.add_row(dst, src, q);
    if (track_) {
      u_.add_row(dst, src, q);
      ui_.add_col(src, dst, -q);
    }
  }
  void add_col(std::size_t dst, std::size_t src, const Int &q) {
    a_.add_col(dst, src, q);
    if (track_) {
      v_.add_col(dst, src, q);
      vi_.add_row(src, dst, -q);
    }
  }
  void negate_row(std::size_t i) {
    a_.negate_row(i);
    if (track_) {
      u_.negate_row(i);
      ui_.negate_col(i);
    }
  }

  IntMatrix a_, u_, ui_, v_, vi_;
  bool track_;
};

} // namespace detail

inline SmithDecomposition smith_normal_form(const IntMatrix &m) {
  detail::SmithReducer reducer(m, true);
  reducer.run();
  return std::move(reducer).result();
}

/// Diagonal of the Smith form only (no transforms tracked).
inline std::vector<Int> smith_invariants(const IntMatrix &m) {
  detail::SmithReducer reducer(m, false);
  reducer.run();
  const IntMatrix &d = reducer.diagonal_matrix();
  std::vector<Int> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

/// Canonical isomorphism class Z^free_rank + Z/n_1 + ... with n_1 | n_2 | ...
struct GroupClass {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  Int order() const {
    Int o = 1;
    for (auto const &t : torsion) o *= t;
    return o;
  }
  /// Number of cyclic summands; the dimension of the group tensored with Z/p
  /// when every torsion invariant is a multiple of p.
  std::size_t summands() const { return free_rank + torsion.size(); }

  friend bool operator==(const GroupClass &, const GroupClass &) = default;

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank == 1) os << "Z", first = false;
    else if (free_rank > 1) os << "Z^" << free_rank, first = false;
    for (auto const &t : torsion) {
      os << (first ? "" : " + ") << "Z/" << t;
      first = false;
    }
    return os.str();
  }
};

/// coker(relations : Z^a -> Z^b); relations is b x a, columns are relators.
struct Presentation {
  std::size_t generators = 0;
  IntMatrix relations;

  Presentation() = default;
  Presentation(std::size_t b, IntMatrix rel) : generators(b), relations(std::move(rel)) {
    if (relations.rows() != generators) {
      if (relations.rows() == 0 && relations.cols() == 0) relations = IntMatrix(generators, 0);
      else throw std::invalid_argument("Presentation: relation matrix must have one row per generator");
    }
  }

  static Presentation free(std::size_t b) { return {b, IntMatrix(b, 0)}; }
  static Presentation zero() { return free(0); }
  static Presentation cyclic(const Int &n) {
    IntMatrix r(1, 1);
    r(0, 0) = n;
    return {1, r};
  }
  static Presentation from_class(const GroupClass &g) {
    std::size_t b = g.free_rank + g.torsion.size();
    IntMatrix r(b, g.torsion.size());
    for (std::size_t i = 0; i < g.torsion.size(); ++i) r(g.free_rank + i, i) = g.torsion[i];
    return {b, r};
  }

  std::size_t relator_count() const { return relations.cols(); }
};

inline Presentation direct_sum(const Presentation &a, const Presentation &b) {
  IntMatrix r(a.generators + b.generators, a.relator_count() + b.relator_count());
  for (std::size_t i = 0; i < a.generators; ++i)
    for (std::size_t j = 0; j < a.relator_count(); ++j) r(i, j) = a.relations(i, j);
  for (std::size_t i = 0; i < b.generators; ++i)
    for (std::size_t j = 0; j < b.relator_count(); ++j) r(a.generators + i, a.relator_count() + j) = b.relations(i, j);
  return {a.generators + b.generators, r};
}

inline GroupClass classify(const Presentation &p) {
  GroupClass g;
  std::size_t nonzero = 0;
  for (auto const &d : smith_invariants(p.relations)) {
    if (d == 0) continue;
    ++nonzero;
    if (d != 1) g.torsion.push_back(d);
  }
  g.free_rank = p.generators - nonzero;
  return g;
}

inline GroupClass direct_sum(const GroupClass &a, const GroupClass &b) {
  return classify(direct_sum(Presentation::from_class(a), Presentation::from_class(b)));
}

/// Tensor product over Z, from Z (x) A = A and Z/m (x) Z/n = Z/gcd(m, n).
inline GroupClass tensor(const GroupClass &a, const GroupClass &b) {
  std::vector<Int> cyclic;
  for (auto const &t : a.torsion)
    for (std::size_t i = 0; i < b.free_rank; ++i) cyclic.push_back(t);
  for (auto const &t : b.torsion)
    for (std::size_t i = 0; i < a.free_rank; ++i) cyclic.push_back(t);
  for (auto const &s : a.torsion)
    for (auto const &t : b.torsion) cyclic.push_back(gcd(s, t));
  const std::size_t free = a.free_rank * b.free_rank;
  IntMatrix rel(free + cyclic.size(), cyclic.size());
  for (std::size_t i = 0; i < cyclic.size(); ++i) rel(free + i, i) = cyclic[i];
  return classify(Presentation{free + cyclic.size(), rel});
}

/// Z_(p) (x) G: free rank kept, each torsion invariant replaced by its p-part.
inline GroupClass p_local_part(const GroupClass &g, long p) {
  GroupClass out{g.free_rank, {}};
  for (auto const &t : g.torsion) {
    Int part = ipow(p, valuation(t, p));
    if (part != 1) out.torsion.push_back(part);
  }
  return out;
}

/// Presentation of P (x) Z/n: the relators n*e_i are appended.
inline Presentation tensor_with_cyclic(const Presentation &p, const Int &n) {
  if (n < 1) throw std::invalid_argument("tensor_with_cyclic: n must be positive");
  return {p.generators, p.relations.hstack(IntMatrix::scalar(p.generators, n))};
}

/// An integer matrix X with A X = Y, if one exists.
inline std::optional<IntMatrix> solve_integral(const IntMatrix &a, const IntMatrix &y) {
  if (a.rows() != y.rows()) throw std::invalid_argument("solve_integral: row mismatch");
  auto s = smith_normal_form(a);
  IntMatrix uy = s.U * y;
  const std::size_t r = s.rank();
  IntMatrix z(a.cols(), y.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) {
      if (i < r) {
        if (!divides(s.D(i, i), uy(i, j))) return std::nullopt;
        z(i, j) = exact_div(uy(i, j), s.D(i, i));
      } else if (uy(i, j) != 0) {
        return std::nullopt;
      }
    }
  return s.V * z;
}

/// Columns form a Z-basis of {x : A x = 0}.
inline IntMatrix integer_kernel(const IntMatrix &a) {
  auto s = smith_normal_form(a);
  const std::size_t r = s.rank();
  return s.V.columns(r, a.cols() - r);
}

/// Z-basis (as columns) of the lattice spanned by the columns of g.
inline IntMatrix column_lattice_basis(const IntMatrix &g) {
  auto s = smith_normal_form(g);
  const std::size_t r = s.rank();
  IntMatrix b(g.rows(), r);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) b(i, j) = s.U_inverse(i, j) * s.D(j, j);
  return b;
}

/// Homomorphism coker(src) -> coker(dst) induced by an integer matrix on
/// generators.
class CokernelMap {
public:
  CokernelMap(IntMatrix f, Presentation src, Presentation dst)
      : f_(std::move(f)), src_(std::move(src)), dst_(std::move(dst)) {}

  const IntMatrix &matrix() const { return f_; }
  const Presentation &source() const { return src_; }
  const Presentation &target() const { return dst_; }

  GroupClass cokernel() const { return classify(Presentation{dst_.generators, f_.hstack(dst_.relations)}); }

  GroupClass kernel() const {
    // Preimage lattice L = {x : f x in im(dst)} contains im(src); ker = L / im(src).
    IntMatrix combined = f_.hstack(dst_.relations);
    IntMatrix null = integer_kernel(combined);
    IntMatrix basis = column_lattice_basis(null.top_rows(src_.generators));
    if (basis.cols() == 0) return {};
    auto coords = solve_integral(basis, src_.relations);
    if (!coords) throw defect_error("CokernelMap::kernel: relations not contained in preimage lattice");
    return classify(Presentation{basis.cols(), *coords});
  }

  bool is_epi() const { return cokernel().is_trivial(); }
  bool is_mono() const { return kernel().is_trivial(); }
  bool is_iso() const { return is_epi() && is_mono(); }

private:
  IntMatrix f_;
  Presentation src_;
  Presentation dst_;
};

/// Validates that f carries the relations of src into the span of those of
/// dst, then wraps the induced map.
inline CokernelMap map_cokernel(IntMatrix f, Presentation src, Presentation dst) {
  if (f.rows() != dst.generators || f.cols() != src.generators)
    throw std::invalid_argument("map_cokernel: matrix shape does not match generator counts");
  IntMatrix image = f * src.relations;
  bool respects = image.is_zero() || solve_integral(dst.relations, image).has_value();
  if (!respects) throw std::invalid_argument("map_cokernel: map does not respect relations");
  return CokernelMap(std::move(f), std::move(src), std::move(dst));
}

} // namespace powerops
