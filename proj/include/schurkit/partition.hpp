#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "schurkit/error.hpp"

namespace schurkit {

using part_t = std::int64_t;
using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

/// A partition in canonical form: non-increasing, nonnegative, no trailing
/// zeros. The default-constructed value is the zero partition.
class partition {
 public:
  partition() = default;

  /// Validates and canonicalizes. Non-monotone input is rejected, never sorted.
  explicit partition(std::vector<part_t> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0)
        throw error(errc::negative, "part " + std::to_string(i + 1) + " is " + std::to_string(parts_[i]));
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw error(errc::non_monotone, "part " + std::to_string(i + 1) + " exceeds part " + std::to_string(i));
    }
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  }

  partition(std::initializer_list<part_t> parts) : partition(std::vector<part_t>(parts)) {}

  const std::vector<part_t>& parts() const noexcept { return parts_; }
  std::size_t length() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }

  /// i-th part (0-based); zero past the length.
  part_t operator[](std::size_t i) const noexcept { return i < parts_.size() ? parts_[i] : 0; }

  part_t weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), part_t{0}); }

  std::vector<part_t> padded(std::size_t d) const {
    std::vector<part_t> out(std::max(d, parts_.size()), 0);
    std::copy(parts_.begin(), parts_.end(), out.begin());
    return out;
  }

  partition scaled(part_t k) const {
    std::vector<part_t> out(parts_);
    for (auto& p : out) p *= k;
    return partition(std::move(out));
  }

  /// Young-diagram containment: every row of `inner` fits in the matching row.
  bool contains(const partition& inner) const noexcept {
    if (inner.length() > length()) return false;
    for (std::size_t i = 0; i < inner.length(); ++i)
      if (inner.parts_[i] > parts_[i]) return false;
    return true;
  }

  friend partition operator+(const partition& x, const partition& y) {
    std::vector<part_t> out(std::max(x.length(), y.length()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + y[i];
    return partition(std::move(out));
  }

  friend bool operator==(const partition&, const partition&) = default;
  friend auto operator<=>(const partition&, const partition&) = default;

 private:
  std::vector<part_t> parts_;
};

inline partition make_partition(std::vector<part_t> parts) { return partition(std::move(parts)); }

inline part_t weight(const partition& p) noexcept { return p.weight(); }

inline std::string to_string(const partition& p) {
  if (p.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.length(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[i]);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const partition& p) { return os << to_string(p); }

/// Rank d of the bundle together with mu = lcm(1..d).
struct rank_context {
  std::size_t d = 1;
  part_t mu = 1;

  explicit rank_context(std::size_t rank) : d(rank) {
    if (rank == 0) throw error(errc::invalid_rank, "rank must be at least 1");
    for (std::size_t i = 2; i <= rank; ++i) mu = std::lcm(mu, static_cast<part_t>(i));
  }

  bool admits(const partition& p) const noexcept { return p.length() <= d; }
};

/// An ordered sequence of positive blocks, an element of L(d) when it sums to d.
struct composition {
  std::vector<part_t> blocks;

  part_t total() const noexcept { return std::accumulate(blocks.begin(), blocks.end(), part_t{0}); }

  friend bool operator==(const composition&, const composition&) = default;
  friend auto operator<=>(const composition&, const composition&) = default;
};

inline std::string to_string(const composition& c) {
  std::string out = "[";
  for (std::size_t i = 0; i < c.blocks.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c.blocks[i]);
  }
  return out + "]";
}

inline std::ostream& operator<<(std::ostream& os, const composition& c) { return os << to_string(c); }

// ---------------------------------------------------------------------------
// Dominance

namespace detail {

// Prefix-sum comparison of two sequences of equal total; lengths may differ.
inline bool prefix_dominated(std::span<const part_t> lower, std::span<const part_t> upper) {
  const std::size_t n = std::max(lower.size(), upper.size());
  part_t sl = 0, su = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sl += k < lower.size() ? lower[k] : 0;
    su += k < upper.size() ? upper[k] : 0;
    if (sl > su) return false;
  }
  return sl == su;
}

}  // namespace detail

/// b ⪯ a for partitions of equal weight, compared on the first d prefixes.
inline bool dominated_eq(const partition& b, const partition& a, std::size_t d) {
  if (b.weight() != a.weight())
    throw error(errc::weight_mismatch, to_string(b) + " vs " + to_string(a));
  const auto pb = b.padded(d);
  const auto pa = a.padded(d);
  return detail::prefix_dominated(pb, pa);
}

/// Dominance extended to unequal weights by cross-scaling: |a|·b ⪯ |b|·a.
inline bool dominated_ext(const partition& b, const partition& a, std::size_t d) {
  if (a.empty() || b.empty())
    throw error(errc::zero_partition, "extended dominance needs non-zero partitions");
  return dominated_eq(b.scaled(a.weight()), a.scaled(b.weight()), d);
}

/// Membership in Z(a): non-zero partitions dominated by a in the extended order.
inline bool in_Z(const partition& b, const partition& a, std::size_t d) {
  if (b.empty()) return false;
  return dominated_ext(b, a, d);
}

// ---------------------------------------------------------------------------
// Sequences and compositions

inline std::vector<part_t> concat(std::span<const part_t> b, std::span<const part_t> c) {
  std::vector<part_t> out(b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

/// All 2^(d-1) compositions of d in lexicographic order of their blocks.
inline std::vector<composition> compositions(std::size_t d) {
  if (d == 0) throw error(errc::invalid_rank, "compositions of 0 are not enumerated");
  std::vector<composition> out;
  std::vector<part_t> blocks;
  auto rec = [&](auto&& self, part_t remaining) -> void {
    if (remaining == 0) {
      out.push_back(composition{blocks});
      return;
    }
    for (part_t first = 1; first <= remaining; ++first) {
      blocks.push_back(first);
      self(self, remaining - first);
      blocks.pop_back();
    }
  };
  rec(rec, static_cast<part_t>(d));
  return out;
}

using rational_sequence = std::vector<rational>;

/// v(L, a): every block of `a` (padded to d) replaced by its exact average.
inline rational_sequence block_average(const composition& blocks, const partition& a, std::size_t d) {
  if (blocks.total() != static_cast<part_t>(d))
    throw error(errc::length_mismatch, to_string(blocks) + " does not sum to " + std::to_string(d));
  if (a.length() > d)
    throw error(errc::length_mismatch, to_string(a) + " is longer than " + std::to_string(d));
  const auto pa = a.padded(d);
  rational_sequence out;
  out.reserve(d);
  std::size_t pos = 0;
  for (part_t len : blocks.blocks) {
    part_t sum = 0;
    for (part_t i = 0; i < len; ++i) sum += pa[pos + static_cast<std::size_t>(i)];
    const rational avg(sum, len);
    out.insert(out.end(), static_cast<std::size_t>(len), avg);
    pos += static_cast<std::size_t>(len);
  }
  return out;
}

/// One row of the generator table: the composition and its integral v(L, mu·a).
struct generator {
  composition blocks;
  partition v;
};

/// v(L, mu·a) for every L in L(d), in composition order (duplicates kept).
inline std::vector<generator> generator_table(const partition& a, const rank_context& ctx) {
  if (a.empty()) throw error(errc::zero_partition, "generators of the zero partition");
  if (!ctx.admits(a)) throw error(errc::length_mismatch, to_string(a) + " is longer than the rank");
  const partition scaled = a.scaled(ctx.mu);
  std::vector<generator> out;
  for (auto& blocks : compositions(ctx.d)) {
    std::vector<part_t> parts;
    for (const auto& x : block_average(blocks, scaled, ctx.d)) {
      // mu is divisible by every block length, so the average is integral.
      parts.push_back(static_cast<part_t>(numerator(x)));
    }
    out.push_back(generator{std::move(blocks), partition(std::move(parts))});
  }
  return out;
}

/// The de-duplicated generator set { v(L, mu·a) : L in L(d) }.
inline std::set<partition> generators(const partition& a, const rank_context& ctx) {
  std::set<partition> out;
  for (auto& g : generator_table(a, ctx)) out.insert(std::move(g.v));
  return out;
}

// ---------------------------------------------------------------------------
// Flag signature

struct flag_signature {
  std::vector<std::size_t> s;   // 0 = s_0 < s_1 < ... < s_m = d
  std::vector<part_t> exponents;  // a_{s_1}, ..., a_{s_m}

  friend bool operator==(const flag_signature&, const flag_signature&) = default;
};

/// Strict-descent positions of `a` (padded to d) and the matching exponents.
inline flag_signature signature_of(const partition& a, std::size_t d) {
  if (d == 0) throw error(errc::invalid_rank, "rank must be at least 1");
  if (a.length() > d) throw error(errc::length_mismatch, to_string(a) + " is longer than " + std::to_string(d));
  const auto pa = a.padded(d);
  flag_signature sig;
  sig.s.push_back(0);
  for (std::size_t j = 1; j < d; ++j)
    if (pa[j - 1] > pa[j]) sig.s.push_back(j);
  sig.s.push_back(d);
  for (std::size_t i = 1; i < sig.s.size(); ++i) sig.exponents.push_back(pa[sig.s[i] - 1]);
  return sig;
}

/// Inverse of signature_of: a is constant on each block (s_{i-1}, s_i].
inline partition from_signature(const flag_signature& sig) {
  std::vector<part_t> parts;
  for (std::size_t i = 1; i < sig.s.size(); ++i)
    parts.insert(parts.end(), sig.s[i] - sig.s[i - 1], sig.exponents.at(i - 1));
  return partition(std::move(parts));
}

// ---------------------------------------------------------------------------
// Enumeration helpers shared by the engine and the sigma search

/// Calls fn(p) for every partition of `w` with at most `max_len` parts and
/// first part at most `max_part`, in decreasing lexicographic order.
template <typename Fn>
void for_each_partition(part_t w, std::size_t max_len, part_t max_part, Fn&& fn) {
  std::vector<part_t> parts;
  auto rec = [&](auto&& self, part_t remaining, part_t cap) -> void {
    if (remaining == 0) {
      fn(partition(parts));
      return;
    }
    if (parts.size() == max_len) return;
    for (part_t first = std::min(cap, remaining); first >= 1; --first) {
      // the remaining rows cannot absorb more than first per row
      if (first * static_cast<part_t>(max_len - parts.size()) < remaining) break;
      parts.push_back(first);
      self(self, remaining - first, first);
      parts.pop_back();
    }
  };
  rec(rec, w, max_part);
}

template <typename Fn>
void for_each_partition(part_t w, std::size_t max_len, Fn&& fn) {
  for_each_partition(w, max_len, w, std::forward<Fn>(fn));
}

}  // namespace schurkit
