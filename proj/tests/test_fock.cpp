#include <gtest/gtest.h>

#include <random>

#include "sl2fusion/fock.hpp"

using namespace sl2f;

namespace {

constexpr auto V = ParticleKind::V;
constexpr auto U = ParticleKind::U;

std::uint64_t mono(std::initializer_list<Particle> ps, int m) {
  std::vector<Particle> v(ps);
  auto c = canonical_monomial(v, m);
  return c->first.bits;
}

std::shared_ptr<const FactorLayout> layout_of(std::vector<int> truncations) {
  std::vector<FactorShape> shapes;
  for (int m : truncations) shapes.push_back({m, 0});
  return make_layout(shapes);
}

WedgeState random_state(const std::shared_ptr<const FactorLayout>& layout, std::mt19937_64& rng,
                        int terms) {
  WedgeState s(layout, {});
  for (int t = 0; t < terms; ++t) {
    StateKey key;
    for (const auto& shape : layout->shapes()) {
      // m particles out of 2m slots
      std::vector<int> slots(static_cast<std::size_t>(2 * shape.truncation));
      std::iota(slots.begin(), slots.end(), 0);
      std::shuffle(slots.begin(), slots.end(), rng);
      std::uint64_t bits = 0;
      for (int k = 0; k < shape.truncation; ++k) bits |= std::uint64_t{1} << slots[static_cast<std::size_t>(k)];
      key.push_back(bits);
    }
    s += basis_state(layout, key, Scalar(static_cast<long>(rng() % 7) - 3));
  }
  return s;
}

WedgeState minus(WedgeState a, const WedgeState& b) {
  WedgeState nb(b.layout_ptr(), b.coefficients());
  auto c = nb.coefficients();
  c.scale(Scalar(-1));
  a += WedgeState(b.layout_ptr(), c);
  return a;
}

}  // namespace

TEST(Fock, TopWedgeShapes) {
  EXPECT_EQ(top_wedge(std::vector<FactorShape>{{1, 0}}).coefficients().leading_index()[0], mono({{V, 0}}, 1));
  auto w2 = top_wedge(std::vector<FactorShape>{{2, 0}});
  EXPECT_EQ(w2.coefficients().leading_index()[0], mono({{V, 0}, {V, 1}}, 2));
  auto w31 = top_wedge(layout_of({3, 1}));
  ASSERT_EQ(w31.coefficients().size(), 1u);
  const auto& key = w31.coefficients().leading_index();
  EXPECT_EQ(key[0], mono({{V, 0}, {V, 1}, {V, 2}}, 3));
  EXPECT_EQ(key[1], mono({{V, 0}}, 1));
  EXPECT_EQ(w31.coefficients().leading_coeff(), Scalar(1));
}

TEST(Fock, CanonicalMonomialSign) {
  auto a = canonical_monomial(std::vector<Particle>{{U, 1}, {V, 1}}, 2);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->second, -1);
  EXPECT_EQ(a->first.bits, mono({{V, 1}, {U, 1}}, 2));
  EXPECT_FALSE(canonical_monomial(std::vector<Particle>{{V, 0}, {V, 0}}, 2));
}

TEST(Fock, ModeZeroRaisingOnSingleParticle) {
  auto l = layout_of({1});
  auto img = apply_current(Current::E, 0, top_wedge(l));
  EXPECT_EQ(img, basis_state(l, {mono({{U, 0}}, 1)}));
  EXPECT_TRUE(apply_current(Current::F, 0, top_wedge(l)).is_zero());
}

TEST(Fock, ModeOneOnTopWedge) {
  auto l = layout_of({2});
  auto img = apply_current(Current::E, 1, top_wedge(l));
  // u_1∧v_1 = −v_1∧u_1
  EXPECT_EQ(img, basis_state(l, {mono({{V, 1}, {U, 1}}, 2)}, Scalar(-1)));
  EXPECT_TRUE(apply_current(Current::E, 1, img).is_zero());
}

TEST(Fock, LoweringKillsTopWedge) {
  for (int m = 1; m <= 5; ++m) {
    for (int j = 0; j < m + 2; ++j) {
      EXPECT_TRUE(apply_current(Current::F, j, top_wedge(layout_of({m, m - 1 > 0 ? m - 1 : 1}))).is_zero());
    }
  }
}

TEST(Fock, ModesBeyondTruncationVanish) {
  auto l = layout_of({3, 2});
  EXPECT_TRUE(apply_current(Current::E, 3, top_wedge(l)).is_zero());
}

TEST(Fock, BigradeExamples) {
  auto l = layout_of({2});
  EXPECT_EQ(bigrade(top_wedge(l).coefficients().leading_index(), *l), (Bigrade{-2, 1}));
  EXPECT_EQ(bigrade(StateKey{mono({{V, 0}, {U, 0}}, 2)}, *l), (Bigrade{0, 0}));
  auto l2 = layout_of({3, 1});
  EXPECT_EQ(bigrade(top_wedge(l2).coefficients().leading_index(), *l2), (Bigrade{-4, 3}));
}

TEST(Fock, CurrentsShiftBigrade) {
  std::mt19937_64 rng(3);
  auto l = layout_of({3, 2, 2});
  for (int trial = 0; trial < 30; ++trial) {
    WedgeState s = random_state(l, rng, 1);
    if (s.is_zero()) continue;
    const Bigrade g = bigrade(s.coefficients().leading_index(), *l);
    for (int j = 0; j < 3; ++j) {
      for (auto [kind, dw] : {std::pair{Current::E, 2}, std::pair{Current::F, -2}, std::pair{Current::H, 0}}) {
        const WedgeState image = apply_current(kind, j, s);
        for (const auto& [key, c] : image.coefficients().entries()) {
          EXPECT_EQ(bigrade(key, *l), (Bigrade{g.weight + dw, g.tdeg + j}));
        }
      }
    }
  }
}

TEST(Fock, RaisingCurrentsCommuteAndSquareToZeroPerFactor) {
  std::mt19937_64 rng(17);
  auto l = layout_of({3, 3, 2});
  for (int trial = 0; trial < 20; ++trial) {
    WedgeState s = random_state(l, rng, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        auto ij = apply_current(Current::E, j, apply_current(Current::E, i, s));
        auto ji = apply_current(Current::E, i, apply_current(Current::E, j, s));
        EXPECT_EQ(ij, ji);
      }
    }
    // each e_0 turns a v into a u, so three of them kill a truncation-2 factor
    auto single = layout_of({2});
    WedgeState t = random_state(single, rng, 2);
    for (int k = 0; k < 3; ++k) t = apply_current(Current::E, 0, t);
    EXPECT_TRUE(t.is_zero());
  }
}

TEST(Fock, BracketOfRaisingAndLowering) {
  std::mt19937_64 rng(29);
  for (auto truncs : {std::vector<int>{2, 2}, std::vector<int>{3, 1, 1}, std::vector<int>{2, 2, 2}}) {
    auto l = layout_of(truncs);
    for (int trial = 0; trial < 10; ++trial) {
      WedgeState s = random_state(l, rng, 3);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          auto ef = apply_current(Current::E, i, apply_current(Current::F, j, s));
          auto fe = apply_current(Current::F, j, apply_current(Current::E, i, s));
          EXPECT_EQ(minus(ef, fe), apply_current(Current::H, i + j, s));
        }
      }
    }
  }
}

TEST(Fock, BlockRestrictedAction) {
  auto l = make_layout({{2, 0}, {1, 1}});
  auto top = top_wedge(l);
  auto all = apply_current(Current::E, 0, top);
  auto b0 = apply_current(Current::E, 0, top, 0);
  auto b1 = apply_current(Current::E, 0, top, 1);
  b0 += b1;
  EXPECT_EQ(all, b0);
  EXPECT_EQ(apply_current(Current::E, 1, top, 1), WedgeState(l, {}));
}

TEST(Fock, SymmetricRunsMatchUnsymmetrizedCount) {
  // e_0 on (v_0)⊗(v_0) gives u_0⊗v_0 + v_0⊗u_0, one symmetric key with coefficient 1
  auto l = layout_of({1, 1});
  auto img = apply_current(Current::E, 0, top_wedge(l));
  ASSERT_EQ(img.coefficients().size(), 1u);
  EXPECT_EQ(img.coefficients().leading_coeff(), Scalar(1));
  // second application lands on u_0⊗u_0 with multiplicity 2
  auto img2 = apply_current(Current::E, 0, img);
  ASSERT_EQ(img2.coefficients().size(), 1u);
  EXPECT_EQ(img2.coefficients().leading_coeff(), Scalar(2));
}

TEST(Fock, RejectsBadInput) {
  EXPECT_THROW(layout_of({0}), InvalidInput);
  EXPECT_THROW(layout_of({33}), InvalidInput);
  EXPECT_THROW(apply_current(Current::E, -1, top_wedge(layout_of({1}))), InvalidInput);
}
