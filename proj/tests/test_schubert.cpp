#include <gtest/gtest.h>

#include <random>

#include "sl2fusion/fusion.hpp"
#include "sl2fusion/schubert.hpp"
#include "sl2fusion/testing/oracles.hpp"

using namespace sl2f;

namespace {

Composition C(std::vector<int> parts) { return Composition(std::move(parts)); }
BundleWeights B(std::vector<int> b) { return BundleWeights(std::move(b)); }
constexpr auto V = ParticleKind::V;
constexpr auto U = ParticleKind::U;

bool same_space(const SpanBasis<Particle>& x, const SpanBasis<Particle>& y) {
  return x.dimension() == y.dimension() && subspace_contains(x, y);
}

// all bundles with entries in [lo, hi] of length n, weakly increasing
void for_each_bundle(int n, int lo, int hi, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> b(static_cast<std::size_t>(n), lo);
  while (true) {
    f(b);
    int pos = n - 1;
    while (pos >= 0 && b[static_cast<std::size_t>(pos)] == hi) --pos;
    if (pos < 0) return;
    const int v = b[static_cast<std::size_t>(pos)] + 1;
    for (int q = pos; q < n; ++q) b[static_cast<std::size_t>(q)] = v;
  }
}

oracle::DenseMatrix dense_of(const SpanBasis<Particle>& w, int n) {
  oracle::DenseMatrix out;
  for (const auto& [pivot, row] : w.rows()) {
    oracle::DenseVector d(2 * static_cast<std::size_t>(n), 0);
    for (const auto& [p, c] : row.entries()) {
      d[static_cast<std::size_t>(particle_bit(p, n))] = c.to_mpq();
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace

TEST(Isomorphic, Examples) {
  EXPECT_TRUE(isomorphic(WeightVector({2, 2, 3}), WeightVector({5, 5, 9})));
  EXPECT_FALSE(isomorphic(WeightVector({2, 3}), WeightVector({2, 2})));
  for (int n = 1; n <= 4; ++n) {
    for (int k = 2; k <= 6; ++k) {
      EXPECT_TRUE(isomorphic(WeightVector(std::vector<int>(n, 2)), WeightVector(std::vector<int>(n, k))));
    }
  }
  EXPECT_THROW(isomorphic(WeightVector({1, 2}), WeightVector({2, 3})), InvalidInput);
}

TEST(Morphism, Examples) {
  EXPECT_TRUE(morphism_exists(C({1, 1, 1}), C({2, 1})));
  EXPECT_FALSE(morphism_exists(C({2, 1}), C({1, 2})));
  EXPECT_TRUE(morphism_exists(C({2, 1}), C({3})));
  EXPECT_FALSE(morphism_exists(C({3}), C({2, 1})));
}

TEST(Morphism, PreorderIsPartialOrder) {
  for (int n = 1; n <= 6; ++n) {
    const auto all = compositions_of(n);
    for (const auto& a : all) {
      EXPECT_TRUE(morphism_exists(a, a));
      for (const auto& b : all) {
        if (morphism_exists(a, b) && morphism_exists(b, a)) {
          EXPECT_EQ(a, b);
        }
        if (!morphism_exists(a, b)) continue;
        for (const auto& c : all) {
          if (morphism_exists(b, c)) {
            EXPECT_TRUE(morphism_exists(a, c));
          }
        }
      }
    }
  }
}

TEST(BundleSplit, Examples) {
  auto s = bundle_split(C({2, 1}), 1);
  EXPECT_EQ(s.fiber, C({2}));
  EXPECT_EQ(s.base, C({1}));
  EXPECT_TRUE(s.identity_holds);
  auto t = bundle_split(C({1, 1}), 1);
  EXPECT_EQ(t.fiber, C({1}));
  EXPECT_TRUE(t.identity_holds);
  EXPECT_THROW(bundle_split(C({3}), 1), InvalidInput);
}

TEST(BundleSplit, IdentityHoldsEverywhere) {
  for (int n = 2; n <= 8; ++n) {
    for (const auto& c : compositions_of(n)) {
      for (std::size_t t = 1; t < c.length(); ++t) EXPECT_TRUE(bundle_split(c, t).identity_holds);
    }
  }
}

TEST(LineBundle, Examples) {
  EXPECT_TRUE(line_bundle_exists(B({1, 1, 2}), C({2, 1})));
  EXPECT_FALSE(line_bundle_exists(B({1, 2, 2}), C({2, 1})));
  for (const auto& c : compositions_of(3)) EXPECT_TRUE(line_bundle_exists(B({3, 3, 3}), c));
  EXPECT_THROW(B({2, 1}), InvalidInput);
  EXPECT_THROW(line_bundle_exists(B({1, 1}), C({2, 1})), InvalidInput);
}

TEST(LineBundle, MonotoneAlongOrder) {
  for (int n = 1; n <= 5; ++n) {
    const auto all = compositions_of(n);
    for_each_bundle(n, 0, 3, [&](const std::vector<int>& b) {
      for (const auto& c : all) {
        if (!line_bundle_exists(B(b), c)) continue;
        for (const auto& d : all) {
          if (leq(c, d)) {
            EXPECT_TRUE(line_bundle_exists(B(b), d));
          }
        }
      }
    });
  }
}

TEST(CurveDegrees, Examples) {
  EXPECT_EQ(curve_degrees(B({1, 2})), (std::vector<long long>{3, 1}));
  EXPECT_EQ(curve_degrees(B({0, 0, 0})), (std::vector<long long>{0, 0, 0}));
  EXPECT_EQ(curve_degrees(B({1, 1, 1})), (std::vector<long long>{3, 2, 1}));
  EXPECT_EQ(curve_degrees(B({-1, 0})), (std::vector<long long>{-1, -1}));
}

TEST(CurveDegrees, CanonicalBundlesArePositive) {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& c : compositions_of(n)) {
      std::vector<int> b = canonical_A(c).entries();
      for (int& x : b) x -= 1;
      auto deg = curve_degrees(B(b));
      for (std::size_t j = 0; j < deg.size(); ++j) {
        EXPECT_GT(deg[j], 0);
        if (j > 0) {
          EXPECT_LE(deg[j], deg[j - 1]);
        }
      }
    }
  }
}

TEST(Sections, Examples) {
  EXPECT_EQ(sections_dim(B({1, 1, 2}), C({2, 1})), 12u);
  EXPECT_EQ(build_module(WeightVector({2, 2, 3})).dimension(), 12u);
  EXPECT_EQ(sections_dim(B({0, 0}), C({1, 1})), 1u);
  EXPECT_EQ(sections_dim(B({1, 1, 1, 1}), C({1, 1, 1, 1})), 16u);
  EXPECT_THROW(sections_dim(B({1, 2, 2}), C({2, 1})), InvalidInput);
  EXPECT_THROW(sections_dim(B({-1, 0}), C({1, 1})), InvalidInput);
}

TEST(Sections, IndependentOfVariety) {
  for (int n = 1; n <= 4; ++n) {
    for_each_bundle(n, 0, 3, [&](const std::vector<int>& b) {
      std::optional<std::uint64_t> seen;
      for (const auto& c : compositions_of(n)) {
        if (!line_bundle_exists(B(b), c)) continue;
        const auto d = sections_dim(B(b), c);
        if (seen) {
          EXPECT_EQ(d, *seen);
        }
        seen = d;
      }
    });
  }
}

TEST(Picard, Examples) {
  EXPECT_EQ(picard_rank(C({4})), 1u);
  EXPECT_EQ(picard_rank(C({1, 1, 1, 1})), 4u);
  EXPECT_EQ(picard_rank(C({2, 1})), 2u);
  for (int n = 1; n <= 6; ++n) {
    for (const auto& lo : compositions_of(n)) {
      for (const auto& hi : compositions_of(n)) {
        if (leq(lo, hi)) {
          EXPECT_LE(picard_rank(lo), picard_rank(hi));
        }
      }
    }
  }
}

TEST(CoordinateRing, Examples) {
  EXPECT_EQ(coordinate_ring_dims(WeightVector({2, 2}), 2), (std::vector<std::uint64_t>{1, 4, 9}));
  EXPECT_EQ(coordinate_ring_dims(WeightVector({2, 3}), 1).back(), 6u);
  EXPECT_EQ(coordinate_ring_dims(WeightVector({4, 7}), 0), (std::vector<std::uint64_t>{1}));
  // degree i piece is M^{i(A−1)+1}
  EXPECT_EQ(coordinate_ring_dims(WeightVector({2, 3}), 2).back(),
            build_module(WeightVector({3, 5})).dimension());
}

TEST(CanonicalFlag, Examples) {
  auto f3 = canonical_flag(C({3}));
  ASSERT_EQ(f3.subspaces.size(), 1u);
  EXPECT_TRUE(same_space(f3.subspaces[0],
                         make_flag(3, {{basis_vector(V, 0), basis_vector(V, 1), basis_vector(V, 2)}}).subspaces[0]));

  auto f11 = canonical_flag(C({1, 1}));
  auto e11 = make_flag(2, {{basis_vector(V, 0), basis_vector(V, 1), basis_vector(U, 1)},
                           {basis_vector(V, 0), basis_vector(V, 1)}});
  ASSERT_EQ(f11.subspaces.size(), 2u);
  EXPECT_TRUE(same_space(f11.subspaces[0], e11.subspaces[0]));
  EXPECT_TRUE(same_space(f11.subspaces[1], e11.subspaces[1]));

  auto f21 = canonical_flag(C({2, 1}));
  EXPECT_EQ(f21.subspaces[0].dimension(), 5u);
  EXPECT_TRUE(f21.subspaces[0].contains(basis_vector(U, 1)));
  EXPECT_FALSE(f21.subspaces[0].contains(basis_vector(U, 0)));
  EXPECT_EQ(f21.subspaces[1].dimension(), 3u);
}

TEST(FlagMembership, CanonicalFlags) {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& c : compositions_of(n)) EXPECT_TRUE(flag_membership(canonical_flag(c), c)) << c.str();
  }
}

TEST(FlagMembership, Negatives) {
  // the whole space has codimension 0
  std::vector<FlagVector> all;
  for (int i = 0; i < 3; ++i) {
    all.push_back(basis_vector(V, i));
    all.push_back(basis_vector(U, i));
  }
  EXPECT_FALSE(flag_membership(make_flag(3, {all}), C({3})));
  // right codimension, not t-stable
  EXPECT_FALSE(flag_membership(make_flag(2, {{basis_vector(V, 1), basis_vector(U, 0)}}), C({2})));
  // canonical flag of a different type
  EXPECT_FALSE(flag_membership(canonical_flag(C({1, 2})), C({2, 1})));
}

TEST(FlagMembership, AllUChain) {
  for (int n = 1; n <= 5; ++n) {
    std::vector<FlagVector> us;
    for (int i = 0; i < n; ++i) us.push_back(basis_vector(U, i));
    EXPECT_TRUE(flag_membership(make_flag(n, {us}), C({n})));
  }
}

TEST(GroupAction, Identity) {
  for (const auto& c : compositions_of(4)) {
    auto f = canonical_flag(c);
    auto g = group_act(GroupElement::identity(4), f);
    for (std::size_t k = 0; k < f.subspaces.size(); ++k) EXPECT_TRUE(same_space(f.subspaces[k], g.subspaces[k]));
  }
}

TEST(GroupAction, ExpE0OnSingleBlock) {
  const Scalar z(3, 2);
  for (int n = 1; n <= 4; ++n) {
    auto moved = group_act(GroupElement::exp_e(n, 0, z), canonical_flag(C({n})));
    std::vector<FlagVector> expected;
    for (int i = 0; i < n; ++i) {
      expected.push_back(FlagVector::from_terms({{Particle{V, i}, Scalar(1)}, {Particle{U, i}, z}}));
    }
    EXPECT_TRUE(same_space(moved.subspaces[0], make_flag(n, {expected}).subspaces[0]));
    EXPECT_TRUE(flag_membership(moved, C({n})));
  }
}

TEST(GroupAction, DeterminantIsChecked) {
  TruncPoly two{Scalar(2)}, zero{Scalar(0)}, one{Scalar(1)};
  EXPECT_THROW(GroupElement(1, two, zero, zero, one), InvalidInput);
}

TEST(GroupAction, PreservesMembership) {
  std::mt19937_64 rng(2024);
  for (int n = 1; n <= 4; ++n) {
    for (const auto& c : compositions_of(n)) {
      for (int trial = 0; trial < 25; ++trial) {
        auto g = random_group_element(n, rng);
        auto moved = group_act(g, canonical_flag(c));
        EXPECT_TRUE(flag_membership(moved, c)) << c.str();
        if (trial % 5 == 0) {
          std::vector<oracle::DenseMatrix> dense;
          for (const auto& w : moved.subspaces) dense.push_back(dense_of(w, n));
          EXPECT_TRUE(oracle::dense_flag_conditions(n, dense, c.parts()));
        }
      }
    }
  }
}
