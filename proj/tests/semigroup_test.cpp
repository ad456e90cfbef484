#include <gtest/gtest.h>

#include "oracle.hpp"
#include "schurkit/semigroup.hpp"
#include "test_util.hpp"

using namespace schurkit;
using P = partition;
using C = composition;

namespace {

std::set<P> from_oracle(const std::set<oracle::seq>& s) {
  std::set<P> out;
  for (const auto& x : s) out.insert(testutil::from_seq(x));
  return out;
}

errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected schurkit::error";
  return errc::io_error;
}

}  // namespace

TEST(ComputeSigma, Examples) {
  EXPECT_EQ(compute_sigma(P{1}, rank_context(1), 3).members, (std::set<P>{P{}}));
  EXPECT_EQ(compute_sigma(P{1, 1}, rank_context(2), 8).members, (std::set<P>{P{}, P{1, 1}}));
}

TEST(ComputeSigma, TwoOneAtRankTwo) {
  // Frozen from oracle::sigma. (4,3) is irreducible: 12 <= 14 puts it in
  // Z((2,1)), (4,3)-(3,3) = (1) leaves Z and (4,3)-(4,2) is not a partition.
  const std::set<P> expected{P{}, P{1, 1}, P{2, 1}, P{2, 2}, P{3, 2}, P{4, 3}};
  EXPECT_EQ(from_oracle(oracle::sigma({2, 1}, 2, 12)), expected);
  EXPECT_EQ(compute_sigma(P{2, 1}, rank_context(2), 12).members, expected);
  EXPECT_EQ(compute_sigma(P{2, 1}, rank_context(2), 6).members,
            (std::set<P>{P{}, P{1, 1}, P{2, 1}, P{2, 2}, P{3, 2}}));
}

TEST(ComputeSigma, MatchesOracle) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const rank_context ctx(d);
    for (const auto& a : testutil::all_partitions(3, d)) {
      if (a.empty()) continue;
      const part_t cap = std::min<part_t>(default_weight_cap(a, ctx), 30);
      if (cap < ctx.mu * a.weight()) continue;
      EXPECT_EQ(compute_sigma(a, ctx, cap).members, from_oracle(oracle::sigma(testutil::to_seq(a), d, cap)))
          << a << " d=" << d;
    }
  }
}

TEST(ComputeSigma, Invariants) {
  const rank_context ctx(3);
  for (const auto& a : {P{1}, P{2, 1}, P{1, 1, 1}, P{3, 1}}) {
    const auto sigma = compute_sigma(a, ctx);
    EXPECT_EQ(sigma.weight_cap, 3 * ctx.mu * a.weight());
    EXPECT_TRUE(sigma.contains(P{}));
    const auto gens = generators(a, ctx);
    for (const auto& m : sigma.members) {
      EXPECT_LE(m.weight(), sigma.weight_cap);
      if (!m.empty()) {
        EXPECT_TRUE(in_Z(m, a, 3));
      }
      for (const auto& v : gens) {
        auto r = detail::subtract(m, v, 3);
        if (r) {
          EXPECT_FALSE(r->empty() || in_Z(*r, a, 3)) << m << " - " << v;
        }
      }
    }
  }
}

TEST(ComputeSigma, Errors) {
  EXPECT_EQ(code_of([] { compute_sigma(P{2, 1}, rank_context(2), 5); }), errc::cap_too_small);
  EXPECT_EQ(code_of([] { compute_sigma(P{}, rank_context(2), 5); }), errc::zero_partition);
}

TEST(Decompose, Examples) {
  const rank_context ctx(2);
  const auto sigma = compute_sigma(P{2, 1}, ctx, 12);

  auto w = decompose(P{6, 3}, P{2, 1}, ctx, sigma);
  EXPECT_EQ(w.c, (P{2, 1}));
  EXPECT_EQ(w.m, (std::map<C, part_t>{{C{{1, 1}}, 1}, {C{{2}}, 0}}));
  EXPECT_EQ(w.M, 1);

  w = decompose(P{3, 3}, P{2, 1}, ctx, sigma);
  EXPECT_EQ(w.c, P{});
  EXPECT_EQ(w.m, (std::map<C, part_t>{{C{{1, 1}}, 0}, {C{{2}}, 1}}));
  EXPECT_EQ(w.M, 1);

  w = decompose(P{1, 1}, P{2, 1}, ctx, sigma);
  EXPECT_EQ(w.c, (P{1, 1}));
  EXPECT_EQ(w.M, 0);
  for (const auto& [L, k] : w.m) EXPECT_EQ(k, 0) << L;
}

TEST(Decompose, DuplicateGeneratorsLoadTheFirstComposition) {
  const rank_context ctx(2);
  const auto w = decompose(P{6, 6}, P{1, 1}, ctx, compute_sigma(P{1, 1}, ctx));
  EXPECT_EQ(w.c, P{});
  EXPECT_EQ(w.m, (std::map<C, part_t>{{C{{1, 1}}, 3}, {C{{2}}, 0}}));
}

TEST(Decompose, Errors) {
  const rank_context ctx(2);
  EXPECT_EQ(code_of([&] { decompose(P{3}, P{2, 1}, ctx, compute_sigma(P{2, 1}, ctx, 12)); }), errc::not_in_z);
  // With cap 6 the irreducible (4,3) is missing from σ.
  EXPECT_EQ(code_of([&] { decompose(P{4, 3}, P{2, 1}, ctx, compute_sigma(P{2, 1}, ctx, 6)); }),
            errc::no_decomposition);
}

TEST(Decompose, ReconstructsDeterministicallyAndCompletely) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const rank_context ctx(d);
    for (const auto& a : testutil::all_partitions(3, d)) {
      if (a.empty()) continue;
      const auto sigma = compute_sigma(a, ctx);
      for (const auto& b : testutil::all_partitions(sigma.weight_cap - ctx.mu * a.weight(), d)) {
        if (!in_Z(b, a, d)) continue;
        const auto w = decompose(b, a, ctx, sigma);
        EXPECT_TRUE(sigma.contains(w.c));
        EXPECT_EQ(reconstruct(w, a, ctx), b);
        part_t total = 0;
        for (const auto& [L, k] : w.m) total += k;
        EXPECT_EQ(total, w.M);
        EXPECT_EQ(b.weight(), w.c.weight() + w.M * ctx.mu * a.weight());
        EXPECT_EQ(decompose(b, a, ctx, sigma), w);
      }
    }
  }
}

TEST(VerifyVinc, Examples) {
  lr_cache cache;
  auto rep = verify_vinc(P{2, 1}, rank_context(2), cache);
  ASSERT_EQ(rep.entries.size(), 2u);
  EXPECT_EQ(rep.entries[0].v, (P{4, 2}));
  EXPECT_EQ(rep.entries[0].multiplicity, 1);
  EXPECT_EQ(rep.entries[1].v, (P{3, 3}));
  EXPECT_EQ(rep.entries[1].multiplicity, 1);
  EXPECT_TRUE(rep.ok());

  rep = verify_vinc(P{1}, rank_context(1), cache);
  ASSERT_EQ(rep.entries.size(), 1u);
  EXPECT_EQ(rep.entries[0].multiplicity, 1);

  rep = verify_vinc(P{1, 1}, rank_context(2), cache);
  for (const auto& e : rep.entries) {
    EXPECT_EQ(e.v, (P{2, 2}));
    EXPECT_EQ(e.multiplicity, 1);
  }
}

TEST(VerifyG, Examples) {
  lr_cache cache;
  const rank_context ctx(2);
  decomposition_witness w;
  w.m = {{C{{1, 1}}, 0}, {C{{2}}, 1}};
  EXPECT_TRUE(verify_g(w, P{2, 1}, ctx, cache));
  w.m = {{C{{1, 1}}, 1}, {C{{2}}, 0}};
  EXPECT_TRUE(verify_g(w, P{2, 1}, ctx, cache));
  w.m = {{C{{1, 1}}, 1}, {C{{2}}, 1}};
  EXPECT_EQ(reconstruct(P{}, w.m, P{2, 1}, ctx), (P{7, 5}));
  EXPECT_TRUE(verify_g(w, P{2, 1}, ctx, cache));
  EXPECT_GE(multiplicity(P{7, 5}, tensor_power(P{4, 2}, 2, ctx, cache)), 1);

  w.m = {{C{{1, 1}}, 0}, {C{{2}}, 0}};
  EXPECT_EQ(code_of([&] { verify_g(w, P{2, 1}, ctx, cache); }), errc::zero_m);
}

TEST(Certify, TwoOneCubed) {
  lr_cache cache;
  const rank_context ctx(2);
  const auto certs = certify(P{2, 1}, 3, ctx, compute_sigma(P{2, 1}, ctx), cache);
  ASSERT_EQ(certs.size(), 2u);
  EXPECT_EQ(certs[0].b, (P{5, 4}));
  EXPECT_EQ(certs[1].b, (P{6, 3}));
  for (const auto& c : certs) {
    EXPECT_EQ(c.l, 1);
    EXPECT_EQ(c.f, (P{2, 1}));
    EXPECT_TRUE(c.weight_identity);
    EXPECT_TRUE(c.verified);
    EXPECT_EQ(9, ctx.mu * c.l * 3 + c.f.weight());
  }
  const auto target = multiply(tensor_power(P{2, 1}, 2, ctx, cache), single_term(P{2, 1}, ctx), ctx, cache);
  EXPECT_EQ(multiplicity(P{6, 3}, target), 1);
  EXPECT_EQ(multiplicity(P{5, 4}, target), 2);
}

TEST(Certify, SquareAndFirstPower) {
  lr_cache cache;
  const rank_context ctx(2);
  const auto sigma = compute_sigma(P{2, 1}, ctx);
  const auto sq = certify(P{2, 1}, 2, ctx, sigma, cache);
  ASSERT_EQ(sq.size(), 2u);
  for (const auto& c : sq) {
    EXPECT_EQ(c.l, 1);
    EXPECT_EQ(c.f, P{});
    EXPECT_TRUE(c.verified);
  }
  const auto one = certify(P{2, 1}, 1, ctx, sigma, cache);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].b, (P{2, 1}));
  EXPECT_EQ(one[0].l, 0);
  EXPECT_EQ(one[0].f, (P{2, 1}));
  EXPECT_TRUE(one[0].verified);
}

TEST(Certify, EverySubfactorAtDeskScale) {
  lr_cache cache;
  for (std::size_t d = 1; d <= 3; ++d) {
    const rank_context ctx(d);
    for (const auto& a : testutil::all_partitions(3, d)) {
      if (a.empty()) continue;
      const auto sigma = compute_sigma(a, ctx);
      for (std::size_t n = 1; n <= 4; ++n) {
        const auto certs = certify(a, n, ctx, sigma, cache);
        EXPECT_EQ(certs.size(), tensor_power(a, n, ctx, cache).terms.size());
        for (const auto& c : certs) {
          EXPECT_TRUE(c.verified) << a << " n=" << n << " b=" << c.b;
          EXPECT_EQ(static_cast<part_t>(n) * a.weight(), ctx.mu * c.l * a.weight() + c.f.weight());
        }
      }
    }
  }
}

TEST(VerifyCertificate, DetectsTampering) {
  lr_cache cache;
  const rank_context ctx(2);
  const auto certs = certify(P{2, 1}, 3, ctx, compute_sigma(P{2, 1}, ctx), cache);
  const auto& good = certs[1];
  ASSERT_EQ(good.b, (P{6, 3}));
  EXPECT_TRUE(verify_certificate(good, ctx));

  auto bad_l = good;
  bad_l.l = 0;
  EXPECT_FALSE(verify_certificate(bad_l, ctx));

  auto bad_f = good;
  bad_f.f = P{3};
  EXPECT_FALSE(verify_certificate(bad_f, ctx));
}
