#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "schurkit/lr.hpp"
#include "schurkit/partition.hpp"

namespace schurkit {

/// Remainder set σ(a) found by bounded enumeration. Always contains ∅.
struct sigma_set {
  partition a;
  std::size_t rank = 1;
  part_t weight_cap = 0;
  std::set<partition> members;

  bool contains(const partition& p) const { return members.count(p) != 0; }
};

/// Data of b = c + Σ_L m_L v(L, mu·a); M = Σ_L m_L.
struct decomposition_witness {
  partition c;
  std::map<composition, part_t> m;
  part_t M = 0;

  friend bool operator==(const decomposition_witness&, const decomposition_witness&) = default;
};

struct certificate {
  partition a;
  std::size_t n = 0;
  partition b;
  partition f;
  part_t l = 0;
  decomposition_witness witness;
  bool weight_identity = false;
  bool verified = false;
};

inline part_t default_weight_cap(const partition& a, const rank_context& ctx) { return 3 * ctx.mu * a.weight(); }

namespace detail {

// b - v as a partition, or nothing when the difference goes negative or
// stops being non-increasing.
inline std::optional<partition> subtract(const partition& b, const partition& v, std::size_t d) {
  const auto pb = b.padded(d);
  const auto pv = v.padded(d);
  if (pv.size() > pb.size()) return std::nullopt;
  std::vector<part_t> out(pb.size());
  for (std::size_t i = 0; i < pb.size(); ++i) {
    out[i] = pb[i] - (i < pv.size() ? pv[i] : 0);
    if (out[i] < 0 || (i > 0 && out[i] > out[i - 1])) return std::nullopt;
  }
  return partition(std::move(out));
}

inline bool in_Z_or_zero(const partition& p, const partition& a, std::size_t d) {
  return p.empty() || in_Z(p, a, d);
}

}  // namespace detail

/// All b ∈ Z(a) ∪ {∅} with |b| <= weight_cap from which no generator can be
/// subtracted while staying in Z(a) ∪ {∅}.
inline sigma_set compute_sigma(const partition& a, const rank_context& ctx, part_t weight_cap) {
  if (a.empty()) throw error(errc::zero_partition, "σ of the zero partition");
  if (!ctx.admits(a)) throw error(errc::length_mismatch, to_string(a) + " is longer than the rank");
  if (weight_cap < ctx.mu * a.weight())
    throw error(errc::cap_too_small, "weight cap " + std::to_string(weight_cap) + " < " +
                                         std::to_string(ctx.mu * a.weight()));
  const auto gens = generators(a, ctx);
  sigma_set sigma{a, ctx.d, weight_cap, {}};
  for (part_t w = 0; w <= weight_cap; ++w) {
    for_each_partition(w, ctx.d, [&](const partition& b) {
      if (!detail::in_Z_or_zero(b, a, ctx.d)) return;
      for (const auto& v : gens) {
        auto r = detail::subtract(b, v, ctx.d);
        if (r && detail::in_Z_or_zero(*r, a, ctx.d)) return;
      }
      sigma.members.insert(b);
    });
  }
  return sigma;
}

inline sigma_set compute_sigma(const partition& a, const rank_context& ctx) {
  return compute_sigma(a, ctx, default_weight_cap(a, ctx));
}

/// c + Σ_L m_L v(L, mu·a).
inline partition reconstruct(const partition& c, const std::map<composition, part_t>& m, const partition& a,
                             const rank_context& ctx) {
  partition out = c;
  for (const auto& g : generator_table(a, ctx)) {
    auto it = m.find(g.blocks);
    if (it != m.end() && it->second > 0) out = out + g.v.scaled(it->second);
  }
  return out;
}

inline partition reconstruct(const decomposition_witness& w, const partition& a, const rank_context& ctx) {
  return reconstruct(w.c, w.m, a, ctx);
}

/// Writes b = c + Σ m_L v(L, mu·a) with c ∈ σ. Every partial subtraction stays
/// in Z(a) ∪ {∅}. Among all such witnesses the one with the largest M wins,
/// then the lexicographically greatest m in composition order.
inline decomposition_witness decompose(const partition& b, const partition& a, const rank_context& ctx,
                                       const sigma_set& sigma) {
  if (!ctx.admits(b)) throw error(errc::length_mismatch, to_string(b) + " is longer than the rank");
  if (!in_Z(b, a, ctx.d)) throw error(errc::not_in_z, to_string(b) + " is not dominated by " + to_string(a));
  const auto table = generator_table(a, ctx);

  // Duplicate generators only ever receive counts on their first composition:
  // moving counts to an earlier index keeps the remainder and raises m.
  std::vector<std::size_t> moves;
  for (std::size_t i = 0; i < table.size(); ++i) {
    bool first = true;
    for (std::size_t j = 0; j < i; ++j)
      if (table[j].v == table[i].v) first = false;
    if (first) moves.push_back(i);
  }

  using counts = std::vector<part_t>;
  std::set<counts> seen;
  std::optional<std::pair<counts, partition>> best;
  part_t best_total = -1;

  std::vector<std::pair<counts, partition>> stack;
  stack.emplace_back(counts(table.size(), 0), b);
  seen.insert(stack.back().first);
  while (!stack.empty()) {
    auto [m, rest] = std::move(stack.back());
    stack.pop_back();
    if (sigma.contains(rest)) {
      part_t total = 0;
      for (auto x : m) total += x;
      if (total > best_total || (total == best_total && m > best->first)) {
        best_total = total;
        best.emplace(m, rest);
      }
    }
    for (std::size_t i : moves) {
      auto r = detail::subtract(rest, table[i].v, ctx.d);
      if (!r || !detail::in_Z_or_zero(*r, a, ctx.d)) continue;
      counts next = m;
      ++next[i];
      if (seen.insert(next).second) stack.emplace_back(std::move(next), std::move(*r));
    }
  }
  if (!best)
    throw error(errc::no_decomposition, "no remainder of " + to_string(b) + " lies in σ(" + to_string(a) +
                                            ") with weight cap " + std::to_string(sigma.weight_cap));

  decomposition_witness w;
  w.c = best->second;
  w.M = best_total;
  for (std::size_t i = 0; i < table.size(); ++i) w.m.emplace(table[i].blocks, best->first[i]);
  return w;
}

struct vinc_entry {
  composition blocks;
  partition v;
  bigint multiplicity;
};

struct vinc_report {
  partition a;
  std::vector<vinc_entry> entries;

  bool ok() const {
    for (const auto& e : entries)
      if (e.multiplicity < 1) return false;
    return true;
  }
};

/// Multiplicity of every v(L, mu·a) in (S_a)^{⊗mu}; all of them must be positive.
inline vinc_report verify_vinc(const partition& a, const rank_context& ctx, lr_cache& cache) {
  if (a.empty()) throw error(errc::zero_partition, "generators of the zero partition");
  const auto power = tensor_power(a, static_cast<std::size_t>(ctx.mu), ctx, cache);
  vinc_report report{a, {}};
  for (auto& g : generator_table(a, ctx)) {
    auto mult = multiplicity(g.v, power);
    report.entries.push_back(vinc_entry{std::move(g.blocks), std::move(g.v), std::move(mult)});
  }
  return report;
}

/// g = Σ m_L v(L, mu·a) must be a subfactor of (S_{M·a})^{⊗mu}.
inline bool verify_g(const decomposition_witness& w, const partition& a, const rank_context& ctx, lr_cache& cache) {
  part_t total = 0;
  for (const auto& [blocks, k] : w.m) total += k;
  if (total == 0) throw error(errc::zero_m, "witness has no generator terms");
  const partition g = reconstruct(partition{}, w.m, a, ctx);
  const auto power = tensor_power(a.scaled(total), static_cast<std::size_t>(ctx.mu), ctx, cache);
  return multiplicity(g, power) >= 1;
}

namespace detail {

inline bool weight_identity_holds(const partition& a, std::size_t n, part_t l, const partition& f,
                                  const rank_context& ctx) {
  return static_cast<part_t>(n) * a.weight() == ctx.mu * l * a.weight() + f.weight();
}

// (S_{l·a})^{⊗mu} ⊗ S_f; with l = 0 the power is the empty product.
inline decomposition embedding_target(const partition& a, part_t l, const partition& f, const rank_context& ctx,
                                      lr_cache& cache) {
  if (l == 0) return single_term(f, ctx);
  const auto power = tensor_power(a.scaled(l), static_cast<std::size_t>(ctx.mu), ctx, cache);
  return multiply(power, single_term(f, ctx), ctx, cache);
}

}  // namespace detail

/// One certificate per subfactor b of (S_a)^{⊗n}: b embeds in
/// (S_{l·a})^{⊗mu} ⊗ S_f with f ∈ σ(a) and n|a| = mu·l·|a| + |f|.
inline std::vector<certificate> certify(const partition& a, std::size_t n, const rank_context& ctx,
                                        const sigma_set& sigma, lr_cache& cache) {
  if (a.empty()) throw error(errc::zero_partition, "certificates for the zero partition");
  std::vector<certificate> out;
  std::map<std::pair<part_t, partition>, decomposition> targets;
  for (const auto& [b, mult] : tensor_power(a, n, ctx, cache).terms) {
    certificate cert;
    cert.a = a;
    cert.n = n;
    cert.b = b;
    cert.witness = decompose(b, a, ctx, sigma);
    cert.l = cert.witness.M;
    cert.f = cert.witness.c;
    cert.weight_identity = detail::weight_identity_holds(a, n, cert.l, cert.f, ctx);
    auto key = std::make_pair(cert.l, cert.f);
    auto it = targets.find(key);
    if (it == targets.end()) it = targets.emplace(key, detail::embedding_target(a, cert.l, cert.f, ctx, cache)).first;
    cert.verified = cert.weight_identity && multiplicity(b, it->second) >= 1;
    out.push_back(std::move(cert));
  }
  return out;
}

/// Independent re-check with a private cache: the weight identity, that the
/// witness rebuilds b from f, and the containment itself.
inline bool verify_certificate(const certificate& cert, const rank_context& ctx) {
  if (cert.a.empty() || !ctx.admits(cert.a) || !ctx.admits(cert.b) || !ctx.admits(cert.f)) return false;
  if (!detail::weight_identity_holds(cert.a, cert.n, cert.l, cert.f, ctx)) return false;
  part_t total = 0;
  for (const auto& [blocks, k] : cert.witness.m) total += k;
  if (total != cert.l || cert.witness.M != cert.l) return false;
  if (reconstruct(cert.f, cert.witness.m, cert.a, ctx) != cert.b) return false;
  lr_cache fresh;
  return multiplicity(cert.b, detail::embedding_target(cert.a, cert.l, cert.f, ctx, fresh)) >= 1;
}

}  // namespace schurkit
