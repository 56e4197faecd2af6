#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace powerops {

/// Weakly decreasing positive parts. Doubles as a cycle type of a conjugacy
/// class in the symmetric group.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p) : parts(std::move(p)) {
    std::sort(parts.begin(), parts.end(), std::greater<>());
    parts.erase(std::remove(parts.begin(), parts.end(), 0), parts.end());
  }

  int size() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  std::size_t length() const { return parts.size(); }

  /// Multiplicity of each distinct part.
  std::map<int, int> multiplicities() const {
    std::map<int, int> m;
    for (int x : parts) ++m[x];
    return m;
  }

  Partition conjugate() const {
    std::vector<int> c;
    for (int i = 1; !parts.empty() && i <= parts.front(); ++i)
      c.push_back(static_cast<int>(std::count_if(parts.begin(), parts.end(), [i](int x) { return x >= i; })));
    return Partition(std::move(c));
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
    os << ')';
    return os.str();
  }

  friend bool operator==(const Partition &, const Partition &) = default;
  friend auto operator<=>(const Partition &a, const Partition &b) { return a.parts <=> b.parts; }
};

namespace detail {
inline void partitions_rec(int remaining, int max_part, std::vector<int> &cur, std::vector<Partition> &out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, part, cur, out);
    cur.pop_back();
  }
}
} // namespace detail

/// All partitions of m in reverse-lexicographic order: (m) first, (1^m) last.
inline std::vector<Partition> partitions(int m) {
  if (m < 0) throw std::invalid_argument("partitions: m must be non-negative");
  std::vector<Partition> out;
  std::vector<int> cur;
  detail::partitions_rec(m, m, cur, out);
  return out;
}

inline std::size_t partition_index(const std::vector<Partition> &list, const Partition &p) {
  // list is reverse-lexicographic, i.e. sorted descending.
  auto it = std::lower_bound(list.begin(), list.end(), p, std::greater<>());
  if (it == list.end() || *it != p) throw std::out_of_range("partition_index: " + p.to_string() + " not in list");
  return static_cast<std::size_t>(it - list.begin());
}

/// Ordered tuples of `parts` non-negative integers summing to m, in
/// lexicographically decreasing order.
inline std::vector<std::vector<int>> weak_compositions(int m, int parts) {
  std::vector<std::vector<int>> out;
  if (parts <= 0) {
    if (m == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur(static_cast<std::size_t>(parts), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int remaining) {
    if (pos + 1 == cur.size()) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      cur[pos] = v;
      rec(pos + 1, remaining - v);
    }
  };
  rec(0, m);
  return out;
}

} // namespace powerops
