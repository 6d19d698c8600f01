#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "ultracat/dendro.hpp"
#include "ultracat/endsemi.hpp"
#include "ultracat/error.hpp"

#include <random>

using namespace ultracat;
using testutil::tri122;

namespace {

UltraSpace pair_space(const Rat& d, std::vector<Rat> levels) {
  LambdaSpec l;
  l.values = std::move(levels);
  return make_space({"a", "b"}, {Rat(0), d, d, Rat(0)}, l);
}

UltraSpace with_levels(UltraSpace s, std::vector<Rat> levels) {
  LambdaSpec l;
  l.values = std::move(levels);
  return make_space(s.labels, s.dist, l);
}

NearUnit rand_near_unit(std::mt19937_64& rng, const UltraSpace& s) {
  NearUnit z;
  z.space = s;
  for (int x = 0; x < s.n(); ++x) {
    std::vector<Rat> choices{Rat(0)};
    if (s.lambda)
      for (const auto& v : s.lambda->values)
        if (ExtRat(v) < isolation(s, x)) choices.push_back(v);
    z.lambdas.push_back(choices[rng() % choices.size()]);
  }
  return z;
}

}  // namespace

TEST_CASE("zero levels give the identity morphism") {
  auto s = tri122();
  NearUnit z{s, {Rat(0), Rat(0), Rat(0)}};
  CHECK(morphism_eq(near_unit_morphism(z), identity_morphism(s)));
}

TEST_CASE("near unit coset matrix on a two point space") {
  auto s = pair_space(Rat(2), {Rat(1), Rat(2)});
  auto m = near_unit_morphism(NearUnit{s, {Rat(1), Rat(0)}});
  CHECK(delta_at(m, 0, 0) == 1);
  CHECK(delta_at(m, 0, 1) == 2);
  CHECK(delta_at(m, 1, 0) == 2);
  CHECK(delta_at(m, 1, 1) == 0);
  CHECK(is_selfadjoint_idempotent(m));
  CHECK(morphism_eq(compose(m, m), m));
}

TEST_CASE("levels at or past the isolation radius are refused") {
  auto s = pair_space(Rat(2), {Rat(1), Rat(2)});
  CHECK_THROWS_WITH_AS(near_unit_morphism(NearUnit{s, {Rat(2), Rat(0)}}),
                       doctest::Contains("InadmissibleLambda"), DomainError);
  // a level outside the declared set is refused as well
  auto t = pair_space(Rat(4), {Rat(1), Rat(2), Rat(4)});
  CHECK_THROWS_WITH_AS(near_unit_morphism(NearUnit{t, {rat(3, 2), Rat(0)}}),
                       doctest::Contains("InadmissibleLambda"), DomainError);
  CHECK_THROWS_AS(near_unit_morphism(NearUnit{s, {Rat(1)}}), DomainError);
}

TEST_CASE("one point spaces admit any listed level") {
  LambdaSpec l;
  l.values = {Rat(1), Rat(5)};
  auto s = make_space({"a"}, {Rat(0)}, l);
  auto m = near_unit_morphism(NearUnit{s, {Rat(5)}});
  CHECK(delta_at(m, 0, 0) == 5);
}

TEST_CASE("near unit products take pointwise maxima") {
  auto s = pair_space(Rat(4), {Rat(1), Rat(2), Rat(4)});
  NearUnit z{s, {Rat(1), Rat(0)}}, w{s, {Rat(0), Rat(2)}};
  auto prod = near_unit_product(z, w);
  CHECK(prod.lambdas == std::vector<Rat>{Rat(1), Rat(2)});
  CHECK(near_unit_product(z, z).lambdas == z.lambdas);
  NearUnit unit{s, {Rat(0), Rat(0)}};
  CHECK(near_unit_product(z, unit).lambdas == z.lambdas);
  auto other = pair_space(Rat(2), {Rat(1), Rat(2)});
  CHECK_THROWS_WITH_AS(near_unit_product(z, NearUnit{other, {Rat(0), Rat(0)}}),
                       doctest::Contains("SpaceMismatch"), DomainError);
}

TEST_CASE("near unit products agree with morphism composition") {
  std::mt19937_64 rng(61);
  for (int it = 0; it < 40; ++it) {
    auto s = with_levels(testutil::rand_space(rng, 2 + static_cast<int>(rng() % 4),
                                              {Rat(1), Rat(2), Rat(3)}),
                         {Rat(1), Rat(2), Rat(3)});
    auto z = rand_near_unit(rng, s);
    auto w = rand_near_unit(rng, s);
    auto via_semigroup = near_unit_morphism(near_unit_product(z, w));
    auto via_category = compose(near_unit_morphism(z), near_unit_morphism(w));
    CHECK(morphism_eq(via_semigroup, via_category));
    // commutativity
    CHECK(morphism_eq(via_category, compose(near_unit_morphism(w), near_unit_morphism(z))));
  }
}

TEST_CASE("isometry graphs compose contravariantly in the point maps") {
  auto s = testutil::equilateral(3, Rat(1));
  std::vector<int> rot{1, 2, 0}, swp{1, 0, 2};
  auto a = iso_morphism(s, rot);
  auto b = iso_morphism(s, swp);
  std::vector<int> swp_after_rot(3), rot_after_swp(3);
  for (int i = 0; i < 3; ++i) {
    swp_after_rot[i] = swp[rot[i]];
    rot_after_swp[i] = rot[swp[i]];
  }
  CHECK(morphism_eq(compose(a, b), iso_morphism(s, swp_after_rot)));
  CHECK(morphism_eq(compose(b, a), iso_morphism(s, rot_after_swp)));
  CHECK(morphism_eq(iso_morphism(s, {0, 1, 2}), identity_morphism(s)));
  CHECK_THROWS_AS(iso_morphism(tri122(), {2, 1, 0}), DomainError);
}

TEST_CASE("the identity classifies as the trivial near automorphism") {
  auto s = tri122();
  auto c = classify_endo(identity_morphism(s));
  REQUIRE(std::holds_alternative<NearAutomorphism>(c));
  const auto& na = std::get<NearAutomorphism>(c);
  CHECK(na.kappa == std::vector<int>{0, 1, 2});
  CHECK(na.z.lambdas == std::vector<Rat>(3, Rat(0)));
}

TEST_CASE("near units classify back to themselves") {
  std::mt19937_64 rng(62);
  for (int it = 0; it < 30; ++it) {
    auto s = with_levels(testutil::rand_space(rng, 2 + static_cast<int>(rng() % 4),
                                              {Rat(1), Rat(2), Rat(4)}),
                         {Rat(1), Rat(2), Rat(4)});
    auto z = rand_near_unit(rng, s);
    auto c = classify_endo(near_unit_morphism(z));
    REQUIRE(std::holds_alternative<NearAutomorphism>(c));
    const auto& na = std::get<NearAutomorphism>(c);
    for (int i = 0; i < s.n(); ++i) CHECK(na.kappa[i] == i);
    CHECK(na.z.lambdas == z.lambdas);
  }
}

TEST_CASE("near automorphisms round trip through classification") {
  std::mt19937_64 rng(63);
  for (int it = 0; it < 40; ++it) {
    auto s = with_levels(testutil::rand_space(rng, 2 + static_cast<int>(rng() % 4),
                                              {Rat(1), Rat(2)}),
                         {Rat(1), Rat(2)});
    auto group = isometry_group(s);
    NearAutomorphism a{group[rng() % group.size()], rand_near_unit(rng, s)};
    auto p = near_automorphism_morphism(a);
    // coset matrix shape: lambda on the graph of kappa, distances elsewhere
    for (int x = 0; x < s.n(); ++x)
      for (int y = 0; y < s.n(); ++y)
        CHECK(delta_at(p, x, y) == (y == a.kappa[x] ? a.z.lambdas[x] : s.d(a.kappa[x], y)));
    auto c = classify_endo(p);
    REQUIRE(std::holds_alternative<NearAutomorphism>(c));
    const auto& na = std::get<NearAutomorphism>(c);
    CHECK(na.kappa == a.kappa);
    CHECK(na.z.lambdas == a.z.lambdas);
  }
}

TEST_CASE("a contraction through a subspace is not a near automorphism") {
  auto s = pair_space(Rat(2), {Rat(1), Rat(2)});
  auto q = morphism_from_delta(s, s, {Rat(0), Rat(2), Rat(2), Rat(2)});
  auto c = classify_endo(q);
  REQUIRE(std::holds_alternative<NotNearAutomorphism>(c));
  CHECK(std::get<NotNearAutomorphism>(c).certificate == 1);
  CHECK(std::get<NotNearAutomorphism>(c).reason == "no nearby target");
}

TEST_CASE("two points folding onto one nearby target collide") {
  auto s = with_levels(tri122(), {Rat(1), Rat(2)});
  auto q = morphism_from_delta(
      s, s, {Rat(2), Rat(2), Rat(1), Rat(2), Rat(2), Rat(1), Rat(2), Rat(2), Rat(2)});
  auto c = classify_endo(q);
  REQUIRE(std::holds_alternative<NotNearAutomorphism>(c));
  CHECK(std::get<NotNearAutomorphism>(c).certificate == 1);
  CHECK(std::get<NotNearAutomorphism>(c).reason == "collision");
}

TEST_CASE("order three rotations are neither symmetric nor idempotent") {
  auto s = testutil::equilateral(3, Rat(1));
  CHECK(is_selfadjoint_idempotent(identity_morphism(s)));
  auto rot = iso_morphism(s, {1, 2, 0});
  CHECK(!is_selfadjoint_idempotent(rot));
  CHECK(!morphism_eq(rot, involution(rot)));
  CHECK(!morphism_eq(compose(rot, rot), rot));
}

TEST_CASE("a swap has a symmetric coset matrix yet squares to the identity") {
  // symmetry of the matrix alone does not make an endomorphism idempotent
  auto s = pair_space(Rat(2), {Rat(1), Rat(2)});
  auto swp = iso_morphism(s, {1, 0});
  CHECK(delta_at(swp, 0, 0) == 2);
  CHECK(delta_at(swp, 0, 1) == 0);
  CHECK(morphism_eq(swp, involution(swp)));
  CHECK(morphism_eq(compose(swp, swp), identity_morphism(s)));
  CHECK(!morphism_eq(compose(swp, swp), swp));
  CHECK(!is_selfadjoint_idempotent(swp));
}

TEST_CASE("exhaustive two point semigroup: seventeen endomorphisms") {
  auto s = pair_space(Rat(2), {Rat(1), Rat(2)});
  auto endos = all_endomorphisms(s);
  CHECK(endos.size() == 17);
  int symmetric_non_idempotent = 0;
  for (const auto& p : endos) {
    validate_morphism(p);
    bool idem = morphism_eq(compose(p, p), p);
    CHECK(is_selfadjoint_idempotent(p) == idem);
    if (idem) CHECK(morphism_eq(p, involution(p)));
    if (morphism_eq(p, involution(p)) && !idem) ++symmetric_non_idempotent;
  }
  // the swap and the swap dressed with levels (1,1): symmetric coset
  // matrices whose squares are near units, not themselves
  CHECK(symmetric_non_idempotent == 2);
  // any two idempotents commute
  for (const auto& p : endos) {
    if (!morphism_eq(compose(p, p), p)) continue;
    for (const auto& q : endos) {
      if (!morphism_eq(compose(q, q), q)) continue;
      CHECK(morphism_eq(compose(p, q), compose(q, p)));
    }
  }
}

TEST_CASE("self adjoint matches idempotent across small spaces") {
  std::vector<UltraSpace> spaces{
      with_levels(tri122(), {Rat(1), Rat(2)}),
      with_levels(testutil::equilateral(3, Rat(1)), {Rat(1), Rat(2)}),
      with_levels(testutil::equilateral(2, Rat(1)), {Rat(1), Rat(2)}),
  };
  for (const auto& s : spaces) {
    auto endos = all_endomorphisms(s);
    CHECK(!endos.empty());
    for (const auto& p : endos) {
      bool idem = morphism_eq(compose(p, p), p);
      CHECK(is_selfadjoint_idempotent(p) == idem);
      if (idem) CHECK(morphism_eq(p, involution(p)));
    }
  }
}

TEST_CASE("closure of the exhaustive endomorphism list under composition") {
  auto s = pair_space(Rat(2), {Rat(1), Rat(2)});
  auto deltas = all_endo_deltas(s);
  std::set<std::vector<Rat>> table(deltas.begin(), deltas.end());
  for (const auto& a : deltas)
    for (const auto& b : deltas) {
      auto p = morphism_from_delta(s, s, a);
      auto q = morphism_from_delta(s, s, b);
      CHECK(table.count(delta(compose(p, q))) == 1);
    }
}

TEST_CASE("factoring the worked contraction idempotent") {
  auto s = pair_space(Rat(2), {Rat(1), Rat(2)});
  auto q = morphism_from_delta(s, s, {Rat(0), Rat(2), Rat(2), Rat(2)});
  auto f = idempotent_factor(q);
  CHECK(f.y_indices == std::vector<int>{0});
  CHECK(f.t.target.labels == std::vector<std::string>{"a"});
  CHECK(delta_at(f.t, 0, 0) == 0);
  CHECK(delta_at(f.t, 1, 0) == 2);
  CHECK(morphism_eq(compose(f.t, involution(f.t)), q));
}

TEST_CASE("factoring refuses near automorphisms and non idempotents") {
  auto s = pair_space(Rat(2), {Rat(1), Rat(2)});
  CHECK_THROWS_WITH_AS(idempotent_factor(identity_morphism(s)),
                       doctest::Contains("IsNearAutomorphism"), DomainError);
  auto skew = morphism_from_delta(s, s, {Rat(2), Rat(1), Rat(2), Rat(2)});
  CHECK_THROWS_WITH_AS(idempotent_factor(skew), doctest::Contains("NotIdempotent"), DomainError);
}

TEST_CASE("every stuck self adjoint idempotent factors through a proper subspace") {
  std::vector<UltraSpace> spaces{
      pair_space(Rat(2), {Rat(1), Rat(2)}),
      with_levels(tri122(), {Rat(1), Rat(2)}),
      with_levels(testutil::equilateral(3, Rat(1)), {Rat(1), Rat(2)}),
  };
  int factored = 0;
  for (const auto& s : spaces) {
    for (const auto& q : all_endomorphisms(s)) {
      if (!is_selfadjoint_idempotent(q)) continue;
      if (!morphism_eq(compose(q, q), q)) continue;
      if (std::holds_alternative<NearAutomorphism>(classify_endo(q))) continue;
      auto f = idempotent_factor(q);
      CHECK(static_cast<int>(f.y_indices.size()) < s.n());
      CHECK(!f.y_indices.empty());
      CHECK(morphism_eq(compose(f.t, involution(f.t)), q));
      ++factored;
    }
  }
  CHECK(factored > 0);
}

TEST_CASE("products against the involution stay stuck") {
  std::mt19937_64 rng(64);
  auto s = with_levels(tri122(), {Rat(1), Rat(2)});
  auto endos = all_endomorphisms(s);
  for (const auto& p : endos) {
    if (std::holds_alternative<NearAutomorphism>(classify_endo(p))) continue;
    auto q = compose(p, involution(p));
    CHECK(std::holds_alternative<NotNearAutomorphism>(classify_endo(q)));
  }
}
