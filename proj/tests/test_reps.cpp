#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "ultracat/endsemi.hpp"
#include "ultracat/error.hpp"
#include "ultracat/reps.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <set>

using namespace ultracat;
using testutil::equilateral;

namespace {

PerfectPair cp(long long r) { return {PairKind::closed, ExtRat(Rat(r))}; }
PerfectPair op(long long r) { return {PairKind::open, ExtRat(Rat(r))}; }

LambdaSpec lam(std::vector<long long> vals) {
  LambdaSpec l;
  for (long long v : vals) l.values.push_back(Rat(v));
  return l;
}

UltraSpace pair_space(long long d, std::vector<long long> levels) {
  return make_space({"a", "b"}, {Rat(0), Rat(d), Rat(d), Rat(0)}, lam(std::move(levels)));
}

UltraSpace with_levels(UltraSpace s, std::vector<long long> levels) {
  return make_space(s.labels, s.dist, lam(std::move(levels)));
}

// d(a,b)=1, d(c,d)=2, cross distances 2: isometries swap inside each pair only
UltraSpace two_pairs_distinct() {
  std::vector<Rat> m{Rat(0), Rat(1), Rat(2), Rat(2),  //
                     Rat(1), Rat(0), Rat(2), Rat(2),  //
                     Rat(2), Rat(2), Rat(0), Rat(2),  //
                     Rat(2), Rat(2), Rat(2), Rat(0)};
  return make_space({"a", "b", "c", "d"}, std::move(m), lam({1, 2}));
}

// two pairs at inner distance 1, cross distances 2: isometry group of order 8
UltraSpace two_pairs_same() {
  std::vector<Rat> m{Rat(0), Rat(1), Rat(2), Rat(2),  //
                     Rat(1), Rat(0), Rat(2), Rat(2),  //
                     Rat(2), Rat(2), Rat(0), Rat(1),  //
                     Rat(2), Rat(2), Rat(1), Rat(0)};
  return make_space({"a", "b", "c", "d"}, std::move(m), lam({1, 2}));
}

// a pair at distance 1 next to an equilateral triple, cross distances 2:
// the isometry group has order 12, beyond the stored tables
UltraSpace pair_plus_triple() {
  const int n = 5;
  std::vector<Rat> m(static_cast<size_t>(n) * n, Rat(2));
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = Rat(0);
  m[0 * n + 1] = m[1 * n + 0] = Rat(1);
  for (int i = 2; i < n; ++i)
    for (int j = 2; j < n; ++j)
      if (i != j) m[static_cast<size_t>(i) * n + j] = Rat(1);
  return make_space({"a", "b", "c", "d", "e"}, std::move(m), lam({1, 2}));
}

CMatrix scalar_matrix(std::complex<double> v) {
  CMatrix m(1, 1);
  m.at(0, 0) = v;
  return m;
}

const CensusEntry& census_entry(const std::vector<CensusEntry>& census, const std::string& code,
                                const std::string& nu_name) {
  for (const auto& e : census)
    if (e.orbit_code == code && e.nu_name == nu_name) return e;
  REQUIRE(false);
  return census.front();
}

std::vector<int> census_dims(const std::vector<CensusEntry>& census) {
  std::vector<int> dims;
  for (const auto& e : census) dims.push_back(e.dim);
  std::sort(dims.begin(), dims.end());
  return dims;
}

long long dim_square_sum(const std::vector<CensusEntry>& census) {
  long long s = 0;
  for (const auto& e : census) s += static_cast<long long>(e.dim) * e.dim;
  return s;
}

}  // namespace

TEST_CASE("admissible pairs list closed radii below the bound") {
  auto got = admissible_pairs(lam({1, 2}), ExtRat(Rat(2)));
  CHECK(got == std::vector<PerfectPair>{cp(0), cp(1)});
  CHECK(admissible_pairs(lam({1}), ExtRat(Rat(1))) == std::vector<PerfectPair>{cp(0)});
}

TEST_CASE("declared left limits contribute open pairs up to the bound") {
  auto l = lam({1, 2});
  l.left_limits = {Rat(2)};
  CHECK(admissible_pairs(l, ExtRat(Rat(2))) == std::vector<PerfectPair>{cp(0), cp(1), op(2)});
  CHECK(admissible_pairs(l, ExtRat(Rat(1))) == std::vector<PerfectPair>{cp(0)});
}

TEST_CASE("an unbounded spectrum admits the infinite open pair at infinite bound") {
  auto l = lam({1, 2});
  l.unbounded = true;
  auto got = admissible_pairs(l, ExtRat::infinity());
  std::vector<PerfectPair> want{cp(0), cp(1), cp(2), {PairKind::open, ExtRat::infinity()}};
  CHECK(got == want);
  // zero accumulation removes the closed pair at radius zero
  l.zero_is_limit = true;
  got = admissible_pairs(l, ExtRat(Rat(1)));
  CHECK(got == std::vector<PerfectPair>{});
}

TEST_CASE("a nonpositive bound is refused") {
  CHECK_THROWS_AS(admissible_pairs(lam({1}), ExtRat(Rat(0))), DomainError);
}

TEST_CASE("indicator characters at pinned values") {
  CHECK(chi(Rat(1), cp(1)) == 1);
  CHECK(chi(Rat(1), op(1)) == 0);
  CHECK(chi(Rat(0), cp(0)) == 1);
  CHECK(chi(Rat(0), op(1)) == 1);
  CHECK(chi(Rat(2), cp(1)) == 0);
  CHECK(chi(Rat(2), op(2)) == 0);
  CHECK(chi(Rat(1), op(2)) == 1);
}

TEST_CASE("indicator characters turn max into multiplication") {
  auto l = lam({1, 2, 3});
  l.left_limits = {Rat(2), Rat(3)};
  std::vector<Rat> levels{Rat(0), Rat(1), Rat(2), Rat(3)};
  for (const auto& pair : admissible_pairs(l, ExtRat(Rat(3))))
    for (const auto& a : levels)
      for (const auto& b : levels)
        CHECK(chi(std::max(a, b), pair) == chi(a, pair) * chi(b, pair));
}

TEST_CASE("the two point space carries four labelings in three orbits") {
  auto s = pair_space(2, {1, 2});
  auto all = labelings(s);
  CHECK(all.size() == 4);
  auto orbits = orbit_decomposition(s, all);
  REQUIRE(orbits.size() == 3);
  CHECK(orbits[0].rep == Labeling{cp(0), cp(0)});
  CHECK(orbits[0].elements.size() == 1);
  CHECK(orbits[0].stabilizer.size() == 2);
  CHECK(orbits[1].rep == Labeling{cp(0), cp(1)});
  CHECK(orbits[1].elements.size() == 2);
  CHECK(orbits[1].stabilizer.size() == 1);
  CHECK(orbits[2].rep == Labeling{cp(1), cp(1)});
  CHECK(orbits[2].stabilizer.size() == 2);
}

TEST_CASE("a single point admits exactly one labeling over a bounded spectrum") {
  auto s = make_space({"x"}, {Rat(0)}, lam({1}));
  auto all = labelings(s);
  REQUIRE(all.size() == 1);
  CHECK(all[0] == Labeling{cp(0)});
  // with an unbounded spectrum every closed radius stays available
  auto l = lam({1, 2});
  l.unbounded = true;
  auto s2 = make_space({"x"}, {Rat(0)}, l);
  CHECK(labelings(s2).size() == 3);
}

TEST_CASE("the equilateral triple admits one labeling fixed by everything") {
  auto s = with_levels(equilateral(3, Rat(1)), {1});
  auto orbits = orbit_decomposition(s, labelings(s));
  REQUIRE(orbits.size() == 1);
  CHECK(orbits[0].rep == Labeling{cp(0), cp(0), cp(0)});
  CHECK(orbits[0].stabilizer.size() == 6);
}

TEST_CASE("labeling codes name kind and radius per point") {
  CHECK(labeling_code({cp(0), cp(1)}) == "c:0|c:1");
  CHECK(labeling_code({op(2)}) == "o:2");
  CHECK(labeling_code({{PairKind::open, ExtRat::infinity()}}) == "o:inf");
}

TEST_CASE("induction from the asymmetric orbit gives the two dimensional representation") {
  auto s = pair_space(2, {1, 2});
  std::map<std::vector<int>, CMatrix> nu;
  nu.emplace(std::vector<int>{0, 1}, CMatrix::identity(1));
  auto rep = induced_rep(s, {cp(0), cp(1)}, nu);
  CHECK(rep.dim == 2);
  CHECK(rep.exact);
  REQUIRE(rep.orbit.size() == 2);
  CHECK(rep.orbit[0] == Labeling{cp(0), cp(1)});
  CHECK(rep.orbit[1] == Labeling{cp(1), cp(0)});

  auto swap = rep_iso_matrix(rep, {1, 0});
  CHECK(swap.at(0, 0) == std::complex<double>(0.0));
  CHECK(swap.at(0, 1) == std::complex<double>(1.0));
  CHECK(swap.at(1, 0) == std::complex<double>(1.0));
  CHECK(swap.at(1, 1) == std::complex<double>(0.0));

  // the level element (1,0) keeps exactly the labelings with r_a at least 1
  auto d = rep_near_unit_matrix(rep, NearUnit{s, {Rat(1), Rat(0)}});
  CHECK(d.at(0, 0) == std::complex<double>(0.0));
  CHECK(d.at(1, 1) == std::complex<double>(1.0));
  CHECK(d.at(0, 1) == std::complex<double>(0.0));

  CHECK(commutant_dimension(rep) == 1);
}

TEST_CASE("induction from a symmetric labeling with the sign character") {
  auto s = pair_space(2, {1, 2});
  std::map<std::vector<int>, CMatrix> nu;
  nu.emplace(std::vector<int>{0, 1}, scalar_matrix(1.0));
  nu.emplace(std::vector<int>{1, 0}, scalar_matrix(-1.0));
  auto rep = induced_rep(s, {cp(0), cp(0)}, nu);
  CHECK(rep.dim == 1);
  auto m = rep_apply(rep, iso_morphism(s, {1, 0}));
  CHECK(m.at(0, 0) == std::complex<double>(-1.0));
  CHECK(commutant_dimension(rep) == 1);
}

TEST_CASE("induction rejects data that is not a unitary representation") {
  auto s = pair_space(2, {1, 2});
  std::map<std::vector<int>, CMatrix> missing;
  missing.emplace(std::vector<int>{0, 1}, CMatrix::identity(1));
  CHECK_THROWS_AS(induced_rep(s, {cp(0), cp(0)}, missing), DomainError);

  std::map<std::vector<int>, CMatrix> skew;
  CMatrix rot(2, 2);
  rot.at(0, 1) = -1.0;
  rot.at(1, 0) = 1.0;  // squares to minus one, not to the identity
  skew.emplace(std::vector<int>{0, 1}, CMatrix::identity(2));
  skew.emplace(std::vector<int>{1, 0}, rot);
  CHECK_THROWS_AS(induced_rep(s, {cp(0), cp(0)}, skew), DomainError);

  std::map<std::vector<int>, CMatrix> stretched;
  stretched.emplace(std::vector<int>{0, 1}, CMatrix::identity(1));
  stretched.emplace(std::vector<int>{1, 0}, scalar_matrix(2.0));
  CHECK_THROWS_AS(induced_rep(s, {cp(0), cp(0)}, stretched), DomainError);
}

TEST_CASE("induction rejects labelings that do not fit the space") {
  auto s = pair_space(2, {1, 2});
  std::map<std::vector<int>, CMatrix> nu;
  nu.emplace(std::vector<int>{0, 1}, CMatrix::identity(1));
  CHECK_THROWS_AS(induced_rep(s, {cp(0)}, nu), DomainError);
  CHECK_THROWS_AS(induced_rep(s, {cp(0), cp(2)}, nu), DomainError);
  CHECK_THROWS_AS(induced_rep(s, {cp(0), op(2)}, nu), DomainError);
}

TEST_CASE("iso matrices require a genuine isometry of the base") {
  auto s = with_levels(testutil::tri122(), {1, 2});
  std::map<std::vector<int>, CMatrix> nu;
  nu.emplace(std::vector<int>{0, 1, 2}, CMatrix::identity(1));
  nu.emplace(std::vector<int>{1, 0, 2}, scalar_matrix(1.0));
  auto rep = induced_rep(s, {cp(0), cp(0), cp(0)}, nu);
  CHECK_THROWS_AS(rep_iso_matrix(rep, {1, 2, 0}), DomainError);
}

TEST_CASE("endomorphism matrices: identity, level elements, and the zero ideal") {
  auto s = pair_space(2, {1, 2});
  std::map<std::vector<int>, CMatrix> nu;
  nu.emplace(std::vector<int>{0, 1}, CMatrix::identity(1));
  auto rep = induced_rep(s, {cp(0), cp(1)}, nu);

  CHECK(approx_eq(rep_apply(rep, identity_morphism(s)), CMatrix::identity(2), 0.0));

  // a stuck idempotent lies in the ideal that the representation kills
  auto stuck = morphism_from_delta(s, s, {Rat(0), Rat(2), Rat(2), Rat(2)});
  CHECK(approx_eq(rep_apply(rep, stuck), CMatrix::zero(2), 0.0));

  auto z1 = rep_apply(rep, near_unit_morphism(NearUnit{s, {Rat(1), Rat(0)}}));
  CHECK(z1.at(0, 0) == std::complex<double>(0.0));
  CHECK(z1.at(1, 1) == std::complex<double>(1.0));

  // the product of level elements goes to the product of their matrices
  auto z2 = rep_apply(rep, near_unit_morphism(NearUnit{s, {Rat(0), Rat(1)}}));
  auto both = rep_apply(rep, near_unit_morphism(near_unit_product(
                                  NearUnit{s, {Rat(1), Rat(0)}}, NearUnit{s, {Rat(0), Rat(1)}})));
  CHECK(approx_eq(both, z1 * z2, 0.0));
  CHECK(approx_eq(both, CMatrix::zero(2), 0.0));
}

TEST_CASE("matrices from a different space are refused") {
  auto s = pair_space(2, {1, 2});
  auto t = make_space({"x", "y"}, {Rat(0), Rat(2), Rat(2), Rat(0)}, lam({1, 2}));
  std::map<std::vector<int>, CMatrix> nu;
  nu.emplace(std::vector<int>{0, 1}, CMatrix::identity(1));
  auto rep = induced_rep(t, {cp(0), cp(1)}, nu);
  CHECK_THROWS_AS(rep_apply(rep, identity_morphism(s)), DomainError);
}

TEST_CASE("every census representation of the two point space passes the star checks") {
  auto s = pair_space(2, {1, 2});
  auto census = irrep_census(s);
  auto endos = all_endomorphisms(s);
  CHECK(endos.size() == 17);
  for (const auto& entry : census) {
    CHECK(entry.rep.exact);
    auto report = check_star_rep(entry.rep, endos);
    for (const auto& f : report.failures) INFO(f);
    CHECK(report.ok);
  }
}

TEST_CASE("the two point census has five members with pinned dimensions") {
  auto s = pair_space(2, {1, 2});
  auto census = irrep_census(s);
  REQUIRE(census.size() == 5);
  CHECK(census_dims(census) == std::vector<int>{1, 1, 1, 1, 2});
  std::set<std::pair<std::string, std::string>> names;
  for (const auto& e : census) {
    CHECK(commutant_dimension(e.rep) == 1);
    std::string char_code;
    for (auto c : e.nu_character)
      char_code += std::to_string(std::lround(c.real())) + "," +
                   std::to_string(std::lround(c.imag())) + ";";
    names.insert({e.orbit_code, e.nu_name + "#" + char_code});
  }
  CHECK(names.size() == 5);  // pairwise inequivalent by orbit and character

  const auto& sym = census_entry(census, "c:0|c:0", "C2:chi1");
  CHECK(sym.stabilizer_order == 2);
  CHECK(sym.dim == 1);
  const auto& asym = census_entry(census, "c:0|c:1", "C1:chi0");
  CHECK(asym.stabilizer_order == 1);
  CHECK(asym.dim == 2);
}

TEST_CASE("a single point over a one level spectrum has exactly the trivial member") {
  auto census = irrep_census(make_space({"x"}, {Rat(0)}, lam({1})));
  REQUIRE(census.size() == 1);
  CHECK(census[0].dim == 1);
  CHECK(census[0].stabilizer_order == 1);
  CHECK(commutant_dimension(census[0].rep) == 1);
}

TEST_CASE("the equilateral triple census carries the full symmetric group on three letters") {
  auto s = with_levels(equilateral(3, Rat(1)), {1});
  auto census = irrep_census(s);
  REQUIRE(census.size() == 3);
  CHECK(census_dims(census) == std::vector<int>{1, 1, 2});
  CHECK(dim_square_sum(census) == 6);  // regular representation of the isometry group
  auto endos = all_endomorphisms(s);
  for (const auto& e : census) {
    CHECK(e.stabilizer_order == 6);
    CHECK(commutant_dimension(e.rep) == 1);
    auto report = check_star_rep(e.rep, endos);
    for (const auto& f : report.failures) INFO(f);
    CHECK(report.ok);
  }
}

TEST_CASE("two pairs at one inner distance induce the eight element dihedral census") {
  auto s = two_pairs_same();
  auto all = labelings(s);
  REQUIRE(all.size() == 1);  // every point is isolated at radius one
  auto census = irrep_census(s);
  REQUIRE(census.size() == 5);
  CHECK(census_dims(census) == std::vector<int>{1, 1, 1, 1, 2});
  CHECK(dim_square_sum(census) == 8);
  for (const auto& e : census) {
    CHECK(e.stabilizer_order == 8);
    CHECK(commutant_dimension(e.rep) == 1);
  }
}

TEST_CASE("the equilateral four point census realizes all five symmetric group members") {
  auto s = with_levels(equilateral(4, Rat(1)), {1});
  auto census = irrep_census(s);
  REQUIRE(census.size() == 5);
  CHECK(census_dims(census) == std::vector<int>{1, 1, 2, 3, 3});
  CHECK(dim_square_sum(census) == 24);
  for (const auto& e : census) {
    CHECK(e.stabilizer_order == 24);
    CHECK(commutant_dimension(e.rep) == 1);
  }
  // the three dimensional members are exact signed permutation matrices
  int exact_count = 0;
  for (const auto& e : census)
    if (e.rep.exact) ++exact_count;
  CHECK(exact_count >= 4);  // all but the two dimensional member
}

TEST_CASE("pairs with distinct inner distances split the census over a Klein stabilizer") {
  auto s = two_pairs_distinct();
  auto orbits = orbit_decomposition(s, labelings(s));
  REQUIRE(orbits.size() == 3);
  auto census = irrep_census(s);
  CHECK(census.size() == 10);
  std::multiset<long long> stab_orders;
  for (const auto& e : census) {
    stab_orders.insert(e.stabilizer_order);
    CHECK(commutant_dimension(e.rep) == 1);
  }
  CHECK(stab_orders == std::multiset<long long>{2, 2, 4, 4, 4, 4, 4, 4, 4, 4});
}

TEST_CASE("a stabilizer outside the stored tables is reported") {
  auto s = pair_plus_triple();
  try {
    irrep_census(s);
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(e.kind() == "UnsupportedStabilizer");
  }
}

TEST_CASE("a reducible inner representation is detected by the commutant") {
  auto s = pair_space(2, {1, 2});
  std::map<std::vector<int>, CMatrix> nu;
  nu.emplace(std::vector<int>{0, 1}, CMatrix::identity(2));
  nu.emplace(std::vector<int>{1, 0}, CMatrix::identity(2));
  auto rep = induced_rep(s, {cp(0), cp(0)}, nu);
  CHECK(rep.dim == 2);
  CHECK(commutant_dimension(rep) == 4);  // two copies of one character
}

TEST_CASE("matrix helpers: norms, adjoints, exactness detection") {
  CMatrix m(2, 2);
  m.at(0, 1) = std::complex<double>(0.0, 1.0);
  m.at(1, 0) = 1.0;
  CHECK(has_unit_entries(m));
  CHECK(is_unitary(m, 0.0));
  CHECK(operator_norm(m) == doctest::Approx(1.0));
  auto a = adjoint(m);
  CHECK(a.at(1, 0) == std::complex<double>(0.0, -1.0));

  CMatrix r(2, 2);
  r.at(0, 0) = 3.0;
  r.at(1, 1) = 0.5;
  CHECK(!has_unit_entries(r));
  CHECK(operator_norm(r) == doctest::Approx(3.0));
}
