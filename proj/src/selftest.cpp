#include "ultracat/selftest.hpp"

#include "ultracat/amalgam.hpp"
#include "ultracat/cosets.hpp"
#include "ultracat/embed.hpp"
#include "ultracat/endsemi.hpp"
#include "ultracat/error.hpp"
#include "ultracat/random_gen.hpp"
#include "ultracat/reps.hpp"
#include "ultracat/urysohn.hpp"

#include <algorithm>
#include <chrono>
#include <complex>
#include <map>
#include <random>
#include <sstream>

namespace ultracat {

namespace {

std::vector<std::string> numbered(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

bool triples_ultrametric(const UltraSpace& s) {
  const int n = s.n();
  for (int i = 0; i < n; ++i) {
    if (s.d(i, i) != 0) return false;
    for (int j = 0; j < n; ++j) {
      if (i != j && (s.d(i, j) <= 0 || s.d(i, j) != s.d(j, i))) return false;
      for (int k = 0; k < n; ++k)
        if (s.d(i, k) > std::max(s.d(i, j), s.d(j, k))) return false;
    }
  }
  return true;
}

// ten criteria; each fills a deterministic one-line summary

bool crit_amalgam_closure(std::mt19937_64& rng, std::string& detail) {
  const int rounds = 1000;
  int max_side = 0;
  for (int it = 0; it < rounds; ++it) {
    const auto pool = random_pool(rng, 8, 5);
    const int c = 1 + static_cast<int>(rng() % 3);
    const int ex = static_cast<int>(rng() % 6), ey = static_cast<int>(rng() % 6);
    const auto pts = random_configuration(rng, c + ex + ey, pool);
    const std::vector<NguyenPoint> xs(pts.begin(), pts.begin() + c + ex);
    std::vector<NguyenPoint> ys(pts.begin(), pts.begin() + c);
    ys.insert(ys.end(), pts.begin() + c + ex, pts.end());
    const auto x = induced_space(numbered("x", c + ex), xs);
    const auto y = induced_space(numbered("y", c + ey), ys);
    max_side = std::max({max_side, x.n(), y.n()});
    std::vector<std::pair<int, int>> overlap;
    for (int i = 0; i < c; ++i) overlap.push_back({i, i});
    const auto am = amalgamate(x, y, overlap);
    if (am.space.n() != x.n() + y.n() - c) {
      detail = "amalgam has the wrong point count";
      return false;
    }
    for (int i = 0; i < x.n(); ++i)
      for (int j = 0; j < x.n(); ++j)
        if (am.space.d(am.from_x[i], am.from_x[j]) != x.d(i, j)) {
          detail = "amalgam does not extend the left side";
          return false;
        }
    for (int i = 0; i < y.n(); ++i)
      for (int j = 0; j < y.n(); ++j)
        if (am.space.d(am.from_y[i], am.from_y[j]) != y.d(i, j)) {
          detail = "amalgam does not extend the right side";
          return false;
        }
    if (!triples_ultrametric(am.space)) {
      detail = "amalgam violates the ultrametric inequality";
      return false;
    }
  }
  std::ostringstream os;
  os << rounds << " random amalgams, sides up to " << max_side
     << ", level sets inside {1..8}: all-triples validation exact";
  detail = os.str();
  return true;
}

bool crit_associativity(std::mt19937_64& rng, std::string& detail) {
  const int rounds = 500;
  for (int it = 0; it < rounds; ++it) {
    const auto pool = random_pool(rng, 8, 4);
    const int nx = 1 + static_cast<int>(rng() % 3), ny = 1 + static_cast<int>(rng() % 3);
    const int nz = 1 + static_cast<int>(rng() % 3), nw = 1 + static_cast<int>(rng() % 3);
    const auto xs = random_configuration(rng, nx, pool);
    const auto ys = random_configuration(rng, ny, pool);
    const auto zs = random_configuration(rng, nz, pool);
    const auto ws = random_configuration(rng, nw, pool);
    const auto p =
        morphism_from_configuration(xs, ys, xs, numbered("x", nx), numbered("y", ny));
    const auto q =
        morphism_from_configuration(ys, zs, ys, numbered("y", ny), numbered("z", nz));
    const auto r =
        morphism_from_configuration(zs, ws, zs, numbered("z", nz), numbered("w", nw));
    const auto left = compose(compose(p, q), r);
    const auto right = compose(p, compose(q, r));
    if (!morphism_eq(left, right) || canonical_key(left) != canonical_key(right)) {
      detail = "groupings disagree on round " + std::to_string(it);
      return false;
    }
  }
  detail = std::to_string(rounds) +
           " random composable triples: canonical forms of both groupings identical";
  return true;
}

bool crit_functor_equivalence(std::mt19937_64& rng, std::string& detail) {
  const int rounds = 500;
  for (int it = 0; it < rounds; ++it) {
    const auto pool = random_pool(rng, 8, 4);
    const auto [p, q] =
        random_chain(rng, pool, 1 + static_cast<int>(rng() % 3),
                     1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3));
    const auto direct = compose(p, q);
    const auto via_tree = from_partial_iso(
        compose_partial(to_partial_iso(q), to_partial_iso(p)));
    if (!morphism_eq(direct, via_tree)) {
      detail = "amalgam and tree-isomorphism composites differ on round " +
               std::to_string(it);
      return false;
    }
    if (!morphism_eq(direct, compose_via_delta(p, q))) {
      detail = "amalgam and min-max composites differ on round " + std::to_string(it);
      return false;
    }
  }
  detail = std::to_string(rounds) +
           " random pairs: amalgam composition equals partial tree-isomorphism "
           "composition exactly";
  return true;
}

bool crit_inverse_law(std::mt19937_64& rng, std::string& detail) {
  const int rounds = 500;
  for (int it = 0; it < rounds; ++it) {
    const auto pool = random_pool(rng, 8, 4);
    const auto p = random_morphism(rng, pool, 1 + static_cast<int>(rng() % 3),
                                   1 + static_cast<int>(rng() % 3));
    const auto sandwich = compose(compose(p, involution(p)), p);
    if (!morphism_eq(sandwich, p)) {
      detail = "sandwich identity fails on round " + std::to_string(it);
      return false;
    }
  }

  // exhaustive on the two point space at distance 2 over levels {1, 2}
  LambdaSpec l;
  l.values = {Rat(1), Rat(2)};
  const auto x = make_space({"a", "b"}, {Rat(0), Rat(2), Rat(2), Rat(0)}, l);
  const auto endos = all_endomorphisms(x);
  std::vector<Morphism> idempotents;
  int selfadj = 0;
  for (const auto& e : endos) {
    const bool idem = morphism_eq(compose(e, e), e);
    const bool sa = morphism_eq(e, involution(e));
    selfadj += sa ? 1 : 0;
    if (idem && !sa) {
      detail = "an idempotent endomorphism is not self-adjoint";
      return false;
    }
    if (is_selfadjoint_idempotent(e) != idem) {
      detail = "self-adjoint idempotent predicate disagrees with the square test";
      return false;
    }
    if (idem) idempotents.push_back(e);
  }
  for (const auto& e : idempotents)
    for (const auto& f : idempotents)
      if (!morphism_eq(compose(e, f), compose(f, e))) {
        detail = "two idempotents fail to commute";
        return false;
      }
  std::ostringstream os;
  os << rounds << " sandwich identities exact; exhaustive 2-point endomorphisms: "
     << endos.size() << " elements, " << idempotents.size()
     << " idempotents (all self-adjoint, pairwise commuting), " << selfadj
     << " self-adjoint elements (isometric involutions included, so self-adjoint "
        "alone does not force idempotent)";
  detail = os.str();
  return true;
}

// all spaces with at most 3 points and spectrum inside {1,2,3}, one
// representative per shape, each level subset as the attached data
std::vector<UltraSpace> small_census_spaces() {
  std::vector<UltraSpace> out;
  for (int mask = 1; mask < 8; ++mask) {
    LambdaSpec l;
    for (long long v = 1; v <= 3; ++v)
      if (mask & (1 << (v - 1))) l.values.push_back(Rat(v));
    out.push_back(make_space({"a"}, {Rat(0)}, l));
    for (const auto& d : l.values)
      out.push_back(make_space({"a", "b"}, {Rat(0), d, d, Rat(0)}, l));
    for (const auto& s : l.values)
      for (const auto& b : l.values)
        if (s <= b)
          out.push_back(make_space({"a", "b", "c"},
                                   {Rat(0), s, b, s, Rat(0), b, b, b, Rat(0)}, l));
  }
  return out;
}

// index of each endomorphism by its coset matrix, plus the full product
// table k = i after j computed by the min-max rule
struct EndoTable {
  std::vector<Morphism> elems;
  std::map<std::vector<Rat>, int> index;
  std::vector<std::vector<int>> prod;  // prod[i][j] = index of compose(elems[i], elems[j])
  int id = -1;
  std::vector<int> star;  // index of the involution
};

EndoTable build_endo_table(const UltraSpace& x) {
  EndoTable t;
  t.elems = all_endomorphisms(x);
  const int m = static_cast<int>(t.elems.size());
  const int n = x.n();
  std::vector<std::vector<Rat>> deltas;
  for (int i = 0; i < m; ++i) {
    deltas.push_back(delta(t.elems[i]));
    t.index.emplace(deltas.back(), i);
  }
  {
    std::vector<Rat> idd;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) idd.push_back(x.d(a, b));
    const auto it = t.index.find(idd);
    if (it == t.index.end()) throw DomainError("SelfTestSetup", {{"what", "identity missing"}});
    t.id = it->second;
  }
  t.star.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    std::vector<Rat> tr(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        tr[static_cast<size_t>(a) * n + b] = deltas[i][static_cast<size_t>(b) * n + a];
    const auto it = t.index.find(tr);
    if (it == t.index.end())
      throw DomainError("SelfTestSetup", {{"what", "involution missing"}});
    t.star[i] = it->second;
  }
  t.prod.assign(m, std::vector<int>(m, -1));
  std::vector<Rat> comp(static_cast<size_t>(n) * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      // compose(elems[i], elems[j]): i first, then j
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
          Rat best = std::max(deltas[i][static_cast<size_t>(a) * n], deltas[j][c]);
          for (int b = 1; b < n; ++b)
            best = std::min(best, std::max(deltas[i][static_cast<size_t>(a) * n + b],
                                           deltas[j][static_cast<size_t>(b) * n + c]));
          comp[static_cast<size_t>(a) * n + c] = best;
        }
      const auto it = t.index.find(comp);
      if (it == t.index.end())
        throw DomainError("SelfTestSetup", {{"what", "product escapes the semigroup"}});
      t.prod[i][j] = it->second;
    }
  return t;
}

bool crit_representation_laws(std::mt19937_64& rng, std::string& detail) {
  const auto spaces = small_census_spaces();
  int reps_checked = 0, exact_reps = 0, max_endos = 0;
  for (const auto& x : spaces) {
    const auto table = build_endo_table(x);
    const int m = static_cast<int>(table.elems.size());
    max_endos = std::max(max_endos, m);
    // the min-max table must agree with the amalgam route on random pairs
    for (int probe = 0; probe < 40; ++probe) {
      const int i = static_cast<int>(rng() % m), j = static_cast<int>(rng() % m);
      const auto direct = compose(table.elems[i], table.elems[j]);
      if (delta(direct) != delta(table.elems[table.prod[i][j]])) {
        detail = "product table disagrees with amalgam composition";
        return false;
      }
    }
    for (const auto& entry : irrep_census(x)) {
      const auto& rep = entry.rep;
      const double tol = rep.exact ? 0.0 : 1e-9;
      std::vector<CMatrix> mats;
      for (const auto& e : table.elems) mats.push_back(rep_apply(rep, e));
      if (max_abs_diff(mats[static_cast<size_t>(table.id)],
                       CMatrix::identity(rep.dim)) > tol) {
        detail = "identity endomorphism misses the identity matrix";
        return false;
      }
      for (int i = 0; i < m; ++i) {
        if (max_abs_diff(mats[static_cast<size_t>(table.star[i])],
                         adjoint(mats[static_cast<size_t>(i)])) > tol) {
          detail = "involution does not map to the adjoint";
          return false;
        }
        if (operator_norm(mats[static_cast<size_t>(i)]) > 1.0 + 1e-9) {
          detail = "an endomorphism acts with operator norm above one";
          return false;
        }
        for (int j = 0; j < m; ++j)
          // compose(e_i, e_j) is e_i first, so the matrices multiply j after i
          if (max_abs_diff(mats[static_cast<size_t>(table.prod[i][j])],
                           mats[static_cast<size_t>(j)] * mats[static_cast<size_t>(i)]) >
              tol) {
            detail = "multiplicativity fails";
            return false;
          }
      }
      ++reps_checked;
      exact_reps += rep.exact ? 1 : 0;
    }
  }

  // the library's own checker on the pinned two point space
  LambdaSpec l;
  l.values = {Rat(1), Rat(2)};
  const auto pinned = make_space({"a", "b"}, {Rat(0), Rat(2), Rat(2), Rat(0)}, l);
  const auto sample = all_endomorphisms(pinned);
  for (const auto& entry : irrep_census(pinned)) {
    const auto report = check_star_rep(entry.rep, sample);
    if (!report.ok) {
      detail = "library star check fails: " + report.failures.front();
      return false;
    }
  }

  std::ostringstream os;
  os << spaces.size() << " spaces (up to 3 points, levels inside {1,2,3}), "
     << reps_checked << " representations (" << exact_reps
     << " exact), endomorphism semigroups up to " << max_endos
     << " elements: homomorphism, adjoint, contraction, and unit checks pass "
        "exhaustively";
  detail = os.str();
  return true;
}

bool crit_irreducibility_census(std::mt19937_64&, std::string& detail) {
  const auto spaces = small_census_spaces();
  int entries = 0;
  for (const auto& x : spaces)
    for (const auto& entry : irrep_census(x)) {
      if (commutant_dimension(entry.rep) != 1) {
        detail = "a census entry has commutant dimension above one";
        return false;
      }
      ++entries;
    }

  LambdaSpec l;
  l.values = {Rat(1), Rat(2)};
  const auto pinned = make_space({"a", "b"}, {Rat(0), Rat(2), Rat(2), Rat(0)}, l);
  const auto census = irrep_census(pinned);
  std::vector<int> dims;
  for (const auto& e : census) dims.push_back(e.dim);
  std::sort(dims.begin(), dims.end());
  if (dims != std::vector<int>{1, 1, 1, 1, 2}) {
    detail = "two point census is not five entries of dimensions 1,1,1,1,2";
    return false;
  }
  std::ostringstream os;
  os << entries
     << " census entries across the small-space family, all with commutant "
        "dimension 1; the two point space lists exactly 5 entries of dimensions "
        "1,1,1,1,2";
  detail = os.str();
  return true;
}

bool crit_theta_stabilization(std::mt19937_64& rng, std::string& detail) {
  {
    NguyenPoint a, b, zero;
    a.set(Rat(1), 1);
    b.set(Rat(1), 2);
    const auto res = theta_stabilization({a}, {zero}, {b}, {}, {}, 8);
    if (res.J != 2 || delta_at(res.limit, 0, 0) != Rat(1)) {
      detail = "the collision example does not stabilize at 2 with limit 1";
      return false;
    }
  }
  const std::vector<Rat> pool{Rat(1), Rat(2), Rat(3)};
  const int rounds = 100;
  long long max_j = 0;
  for (int it = 0; it < rounds; ++it) {
    const auto xs = random_configuration(rng, 1 + static_cast<int>(rng() % 3), pool);
    const auto ys = random_configuration(rng, 1 + static_cast<int>(rng() % 3), pool);
    const auto zs = random_configuration(rng, 1 + static_cast<int>(rng() % 3), pool);
    const auto g1 = random_isometry(rng, pool, static_cast<int>(rng() % 2));
    const auto g2 = random_isometry(rng, pool, static_cast<int>(rng() % 2));
    try {
      const auto res = theta_stabilization(xs, ys, zs, g1, g2, 64);
      max_j = std::max(max_j, res.J);
    } catch (const DomainError& e) {
      detail = std::string("stabilization failed: ") + e.what();
      return false;
    }
  }
  std::ostringstream os;
  os << "collision example stabilizes at 2 with limit 1; " << rounds
     << " random configurations stabilize within 64 (largest onset " << max_j
     << ") and match the composite coset";
  detail = os.str();
  return true;
}

bool crit_embedding_exactness(std::mt19937_64& rng, std::string& detail) {
  const int rounds = 200;
  int max_n = 0, max_dim = 0;
  for (int it = 0; it < rounds; ++it) {
    const int n = 1 + static_cast<int>(rng() % 32);
    const auto pool = random_pool(rng, 8, 4);
    const auto s = random_space(rng, n, pool);
    const auto e = tree_embedding(s, MetricMode::squared);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (e.sq_dist[static_cast<size_t>(i) * n + j] != s.d(i, j) * s.d(i, j)) {
          detail = "squared distances disagree with the metric";
          return false;
        }
    max_n = std::max(max_n, n);
    max_dim = std::max(max_dim, e.dim);
  }
  std::ostringstream os;
  os << rounds << " random spaces up to " << max_n
     << " points: embedding norms reproduce squared distances as exact "
        "rationals (largest ambient dimension "
     << max_dim << ")";
  detail = os.str();
  return true;
}

bool crit_schoenberg_psd(std::mt19937_64& rng, std::string& detail) {
  const int rounds = 100;
  int exact_certs = 0, float_certs = 0;
  for (int it = 0; it < rounds; ++it) {
    const int n = 1 + static_cast<int>(rng() % 32);
    // every tenth space uses fractional distances to drive the float path
    std::vector<Rat> pool;
    if (it % 10 == 9)
      pool = {Rat(1) / 2, Rat(3) / 2, Rat(3)};
    else
      pool = random_pool(rng, 8, 4);
    const auto sp = random_space(rng, n, pool);
    for (int k = 1; k <= 9; ++k) {
      const auto g = schoenberg_gram(sp, Rat(k) / 10);
      const auto cert = psd_check(g);
      if (!cert.psd) {
        detail = "a Gram matrix fails the positive semidefinite check";
        return false;
      }
      if (cert.exact)
        ++exact_certs;
      else
        ++float_certs;
    }
  }
  std::ostringstream os;
  os << rounds << " random spaces up to 32 points, bases 0.1 to 0.9: " << exact_certs
     << " exact pivot certificates and " << float_certs
     << " eigenvalue certificates, all positive semidefinite";
  detail = os.str();
  return true;
}

bool crit_urysohn_fidelity(std::mt19937_64& rng, std::string& detail) {
  const int rounds = 200;
  for (int it = 0; it < rounds; ++it) {
    const auto pool = random_pool(rng, 8, 4);
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto s = random_space(rng, n, pool);
    LambdaSpec l;
    l.values = pool;
    const auto pts = embed_space(s, l);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (model_distance(pts[i], pts[j]) != s.d(i, j)) {
          detail = "embedded configuration distorts a distance";
          return false;
        }
    // witness families at the first embedded point, one per level
    for (const auto& lam : pool) {
      const auto ws = witnesses_at(pts[0], lam, 10);
      if (ws.size() != 10) {
        detail = "witness family has the wrong size";
        return false;
      }
      for (size_t a = 0; a < ws.size(); ++a) {
        if (!(ws[a] == pts[0]) && model_distance(ws[a], pts[0]) != lam) {
          detail = "witness sits at the wrong distance from its base";
          return false;
        }
        for (size_t b = a + 1; b < ws.size(); ++b)
          if (model_distance(ws[a], ws[b]) != lam) {
            detail = "witnesses are not pairwise at the prescribed distance";
            return false;
          }
      }
    }
  }
  detail = std::to_string(rounds) +
           " random matrices reproduced exactly in the model; 10-point witness "
           "families pairwise at distance lambda for every level";
  return true;
}

struct Criterion {
  const char* name;
  double budget;
  bool (*fn)(std::mt19937_64&, std::string&);
};

const Criterion kCriteria[] = {
    {"amalgam-closure", 5.0, crit_amalgam_closure},
    {"associativity", 10.0, crit_associativity},
    {"functor-equivalence", 10.0, crit_functor_equivalence},
    {"inverse-law", 10.0, crit_inverse_law},
    {"representation-laws", 60.0, crit_representation_laws},
    {"irreducibility-census", 10.0, crit_irreducibility_census},
    {"theta-stabilization", 30.0, crit_theta_stabilization},
    {"embedding-exactness", 10.0, crit_embedding_exactness},
    {"schoenberg-psd", 30.0, crit_schoenberg_psd},
    {"urysohn-fidelity", 10.0, crit_urysohn_fidelity},
};

}  // namespace

const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : kCriteria) out.push_back(c.name);
    return out;
  }();
  return names;
}

std::vector<CriterionResult> run_selftest(const std::string& filter, std::uint64_t seed) {
  std::vector<CriterionResult> results;
  for (size_t idx = 0; idx < std::size(kCriteria); ++idx) {
    const auto& c = kCriteria[idx];
    if (!filter.empty() && std::string(c.name).find(filter) == std::string::npos)
      continue;
    CriterionResult r;
    r.name = c.name;
    r.budget = c.budget;
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (idx + 1)));
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.pass = c.fn(rng, r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("unexpected exception: ") + e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    results.push_back(std::move(r));
  }
  return results;
}

std::string selftest_report(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  size_t passed = 0;
  for (const auto& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail << "\n";
    passed += r.pass ? 1 : 0;
  }
  os << "criteria passed: " << passed << "/" << results.size() << "\n";
  return os.str();
}

}  // namespace ultracat
