#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <vector>

#include "schurkit/partition.hpp"

namespace schurkit {

// ---------------------------------------------------------------------------
// Littlewood-Richardson coefficients

namespace detail {

// Depth-first filling of the skew shape outer/inner. Cells are visited row by
// row, top to bottom, and right to left inside a row, so the visiting order
// is the reverse reading word and the lattice condition can be checked on
// every prefix.
class lr_filler {
 public:
  lr_filler(const partition& inner, const partition& content, const partition& outer)
      : inner_(inner), content_(content), outer_(outer), counts_(content.length() + 1, 0) {
    rows_.resize(outer.length());
    for (std::size_t i = 0; i < outer.length(); ++i) rows_[i].assign(static_cast<std::size_t>(outer[i]), 0);
  }

  std::uint64_t count() {
    total_ = 0;
    next_cell(0, static_cast<part_t>(outer_[0]) - 1);
    return total_;
  }

 private:
  void next_cell(std::size_t row, part_t col) {
    while (row < outer_.length() && col < inner_[row]) {
      ++row;
      if (row < outer_.length()) col = outer_[row] - 1;
    }
    if (row == outer_.length()) {
      ++total_;
      return;
    }
    const auto j = static_cast<std::size_t>(col);
    // row weakly increases to the right
    int hi = col + 1 < outer_[row] ? rows_[row][j + 1] : static_cast<int>(content_.length());
    // entries in row i never exceed i+1 in a lattice filling
    hi = std::min(hi, static_cast<int>(row) + 1);
    // columns strictly increase downward
    const int lo = (row > 0 && col >= inner_[row - 1]) ? rows_[row - 1][j] + 1 : 1;
    for (int v = lo; v <= hi; ++v) {
      const auto uv = static_cast<std::size_t>(v);
      if (counts_[uv] >= content_[uv - 1]) continue;
      if (v > 1 && counts_[uv - 1] <= counts_[uv]) continue;
      ++counts_[uv];
      rows_[row][j] = v;
      next_cell(row, col - 1);
      rows_[row][j] = 0;
      --counts_[uv];
    }
  }

  const partition& inner_;
  const partition& content_;
  const partition& outer_;
  std::vector<part_t> counts_;
  std::vector<std::vector<int>> rows_;
  std::uint64_t total_ = 0;
};

}  // namespace detail

/// c^b_{a,c}: the number of LR tableaux of shape b/a and content c.
/// Degenerate inputs (weight mismatch, a or c not inside b) give 0.
inline bigint lr_coefficient(const partition& a, const partition& c, const partition& b) {
  if (b.weight() != a.weight() + c.weight()) return 0;
  if (!b.contains(a) || !b.contains(c)) return 0;
  if (c.empty()) return 1;
  return bigint(detail::lr_filler(a, c, b).count());
}

/// Cache key for c^outer_{inner,content}; canonical form orders the two
/// factors since the coefficient is symmetric in them.
struct lr_key {
  partition inner;
  partition content;
  partition outer;

  lr_key canonical() const {
    if (content < inner) return lr_key{content, inner, outer};
    return *this;
  }

  friend bool operator==(const lr_key&, const lr_key&) = default;
  friend auto operator<=>(const lr_key&, const lr_key&) = default;
};

/// Memo table for LR coefficients. Reads take a shared lock; inserts are
/// idempotent so concurrent writers of the same key cannot disagree.
class lr_cache {
 public:
  using map_type = std::map<lr_key, bigint>;

  lr_cache() = default;
  explicit lr_cache(map_type records) {
    for (auto& [k, v] : records) table_.insert_or_assign(k.canonical(), std::move(v));
  }

  lr_cache(const lr_cache& other) : table_(other.snapshot()) {}
  lr_cache& operator=(const lr_cache& other) {
    if (this != &other) {
      auto copy = other.snapshot();
      std::unique_lock lock(mutex_);
      table_ = std::move(copy);
    }
    return *this;
  }

  std::optional<bigint> find(const lr_key& key) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find(key.canonical());
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

  void insert(const lr_key& key, const bigint& value) {
    std::unique_lock lock(mutex_);
    table_.insert_or_assign(key.canonical(), value);
  }

  bigint coefficient(const partition& a, const partition& c, const partition& b) {
    const lr_key key{a, c, b};
    if (auto hit = find(key)) return *hit;
    bigint value = lr_coefficient(a, c, b);
    insert(key, value);
    return value;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

  map_type snapshot() const {
    std::shared_lock lock(mutex_);
    return table_;
  }

 private:
  mutable std::shared_mutex mutex_;
  map_type table_;
};

// ---------------------------------------------------------------------------
// Decompositions

/// A finite sum of Schur functors; terms iterate in lexicographic order.
struct decomposition {
  using map_type = std::map<partition, bigint>;

  std::size_t rank = 1;
  map_type terms;

  void add(const partition& b, const bigint& mult) {
    if (mult == 0) return;
    auto [it, inserted] = terms.try_emplace(b, mult);
    if (!inserted) it->second += mult;
  }

  friend bool operator==(const decomposition&, const decomposition&) = default;
};

inline bigint multiplicity(const partition& b, const decomposition& dec) {
  auto it = dec.terms.find(b);
  return it == dec.terms.end() ? bigint(0) : it->second;
}

inline decomposition single_term(const partition& a, const rank_context& ctx) {
  decomposition out{ctx.d, {}};
  if (ctx.admits(a)) out.add(a, 1);
  return out;
}

/// S_a ⊗ S_c truncated to partitions with at most d rows.
inline decomposition tensor_product(const partition& a, const partition& c, const rank_context& ctx,
                                    lr_cache& cache) {
  decomposition out{ctx.d, {}};
  if (!ctx.admits(a) || !ctx.admits(c)) return out;
  if (a.empty()) return single_term(c, ctx);
  if (c.empty()) return single_term(a, ctx);
  const std::size_t max_len = std::min(ctx.d, a.length() + c.length());
  for_each_partition(a.weight() + c.weight(), max_len, a[0] + c[0], [&](const partition& b) {
    if (!b.contains(a) || !b.contains(c)) return;
    out.add(b, cache.coefficient(a, c, b));
  });
  return out;
}

inline decomposition tensor_product(const partition& a, const partition& c, const rank_context& ctx) {
  lr_cache cache;
  return tensor_product(a, c, ctx, cache);
}

/// Product of two decompositions, expanded termwise.
inline decomposition multiply(const decomposition& x, const decomposition& y, const rank_context& ctx,
                              lr_cache& cache) {
  decomposition out{ctx.d, {}};
  for (const auto& [bx, mx] : x.terms)
    for (const auto& [by, my] : y.terms)
      for (const auto& [b, m] : tensor_product(bx, by, ctx, cache).terms) out.add(b, mx * my * m);
  return out;
}

/// (S_a)^{⊗n}, truncated to rank d after every factor. n = 0 gives the
/// empty product {∅:1}.
inline decomposition tensor_power(const partition& a, std::size_t n, const rank_context& ctx,
                                  lr_cache& cache) {
  decomposition acc = single_term(partition{}, ctx);
  for (std::size_t i = 0; i < n; ++i) {
    decomposition next{ctx.d, {}};
    for (const auto& [b, m] : acc.terms)
      for (const auto& [bb, mm] : tensor_product(b, a, ctx, cache).terms) next.add(bb, m * mm);
    acc = std::move(next);
  }
  return acc;
}

inline decomposition tensor_power(const partition& a, std::size_t n, const rank_context& ctx) {
  lr_cache cache;
  return tensor_power(a, n, ctx, cache);
}

/// dim S_a(C^d) by the hook-content formula.
inline bigint dim_schur(const partition& a, std::size_t d) {
  bigint num = 1, den = 1;
  for (std::size_t i = 0; i < a.length(); ++i) {
    for (part_t j = 0; j < a[i]; ++j) {
      const part_t content = j - static_cast<part_t>(i);
      num *= static_cast<part_t>(d) + content;
      part_t below = 0;
      for (std::size_t k = i + 1; k < a.length() && a[k] > j; ++k) ++below;
      den *= (a[i] - j - 1) + below + 1;
    }
  }
  if (num <= 0) return 0;
  return num / den;
}

// ---------------------------------------------------------------------------
// Property checkers

/// Semigroup property of LR occurrence: c ∈ a⊗b and f ∈ dd⊗e imply
/// c+f ∈ (a+dd)⊗(b+e). A false return means the engine is wrong.
inline bool check_semigroup(const partition& a, const partition& b, const partition& c, const partition& dd,
                            const partition& e, const partition& f, const rank_context& ctx, lr_cache& cache) {
  for (const auto* p : {&a, &b, &c, &dd, &e, &f})
    if (!ctx.admits(*p)) throw error(errc::length_mismatch, to_string(*p) + " is longer than the rank");
  if (cache.coefficient(a, b, c) < 1)
    throw error(errc::hypothesis_failed, to_string(c) + " is not in " + to_string(a) + " ⊗ " + to_string(b));
  if (cache.coefficient(dd, e, f) < 1)
    throw error(errc::hypothesis_failed, to_string(f) + " is not in " + to_string(dd) + " ⊗ " + to_string(e));
  return cache.coefficient(a + dd, b + e, c + f) >= 1;
}

struct dominance_report {
  partition a;
  std::size_t n = 0;
  std::size_t checked = 0;
  std::vector<partition> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Every subfactor b of (S_a)^{⊗n} must satisfy b ⪯ a; returns the ones that do not.
inline dominance_report check_dominance_bound(const partition& a, std::size_t n, const rank_context& ctx,
                                              lr_cache& cache) {
  if (a.empty()) throw error(errc::zero_partition, "dominance bound of the zero partition");
  dominance_report report{a, n, 0, {}};
  for (const auto& [b, m] : tensor_power(a, n, ctx, cache).terms) {
    ++report.checked;
    if (!dominated_ext(b, a, ctx.d)) report.violations.push_back(b);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Seeded sampling for the semigroup driver

/// Uniform pick below n. Avoids std::uniform_int_distribution, whose output
/// is not specified across standard libraries.
inline std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

/// Weight uniform in [0, max_weight], then uniform among partitions of that
/// weight with at most max_len rows.
inline partition random_partition(std::mt19937_64& rng, part_t max_weight, std::size_t max_len) {
  const auto w = static_cast<part_t>(pick(rng, static_cast<std::size_t>(max_weight) + 1));
  std::vector<partition> pool;
  for_each_partition(w, max_len, [&](const partition& p) { pool.push_back(p); });
  return pool[pick(rng, pool.size())];
}

struct semigroup_sample {
  partition a, b, c, dd, e, f;
};

/// Draws a hypothesis-satisfying tuple: c and f are chosen among the
/// subfactors of a⊗b and dd⊗e.
inline semigroup_sample sample_semigroup(std::mt19937_64& rng, part_t max_weight, const rank_context& ctx,
                                         lr_cache& cache) {
  auto draw_factor = [&](partition& x, partition& y, partition& z) {
    for (;;) {
      x = random_partition(rng, max_weight, ctx.d);
      y = random_partition(rng, max_weight, ctx.d);
      const auto prod = tensor_product(x, y, ctx, cache);
      if (prod.terms.empty()) continue;
      auto it = prod.terms.begin();
      std::advance(it, static_cast<std::ptrdiff_t>(pick(rng, prod.terms.size())));
      z = it->first;
      return;
    }
  };
  semigroup_sample s;
  draw_factor(s.a, s.b, s.c);
  draw_factor(s.dd, s.e, s.f);
  return s;
}

struct semigroup_report {
  std::size_t samples = 0;
  std::vector<semigroup_sample> failures;

  bool ok() const noexcept { return failures.empty(); }
};

inline semigroup_report check_semigroup_samples(std::size_t samples, std::uint64_t seed, part_t max_weight,
                                                const rank_context& ctx, lr_cache& cache) {
  std::mt19937_64 rng(seed);
  semigroup_report report;
  for (std::size_t i = 0; i < samples; ++i) {
    auto s = sample_semigroup(rng, max_weight, ctx, cache);
    ++report.samples;
    if (!check_semigroup(s.a, s.b, s.c, s.dd, s.e, s.f, ctx, cache)) report.failures.push_back(std::move(s));
  }
  return report;
}

}  // namespace schurkit
