#include "ultracat/reps.hpp"

#include "ultracat/dendro.hpp"
#include "ultracat/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

namespace ultracat {

namespace {

using Cx = std::complex<double>;
using Perm = std::vector<int>;

// (a o b)(x) = a[b[x]]: b first, then a
Perm compose_perm(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm inverse_perm(const Perm& a) {
  Perm c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<int>(i);
  return c;
}

Perm identity_perm(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

int perm_order(const Perm& p) {
  Perm q = p;
  int k = 1;
  const Perm id = identity_perm(static_cast<int>(p.size()));
  while (q != id) {
    q = compose_perm(p, q);
    ++k;
  }
  return k;
}

int perm_sign(const Perm& p) {
  int transpositions = 0;
  std::vector<bool> seen(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    size_t j = i, len = 0;
    while (!seen[j]) {
      seen[j] = true;
      j = static_cast<size_t>(p[j]);
      ++len;
    }
    transpositions += static_cast<int>(len) - 1;
  }
  return transpositions % 2 == 0 ? 1 : -1;
}

std::vector<Perm> close_perm_group(std::vector<Perm> gens, int n) {
  std::set<Perm> seen;
  std::deque<Perm> queue;
  seen.insert(identity_perm(n));
  queue.push_back(identity_perm(n));
  while (!queue.empty()) {
    Perm cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Perm next = compose_perm(cur, g);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return {seen.begin(), seen.end()};
}

bool same_labeled_space(const UltraSpace& a, const UltraSpace& b) {
  return a.labels == b.labels && a.dist == b.dist;
}

}  // namespace

// ---------------------------------------------------------------- matrices

CMatrix operator*(const CMatrix& x, const CMatrix& y) {
  if (x.cols != y.rows) throw std::logic_error("matrix shape mismatch");
  CMatrix out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Cx v = x.at(i, k);
      if (v == Cx(0.0)) continue;
      for (int j = 0; j < y.cols; ++j) out.at(i, j) += v * y.at(k, j);
    }
  return out;
}

CMatrix adjoint(const CMatrix& x) {
  CMatrix out(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) out.at(j, i) = std::conj(x.at(i, j));
  return out;
}

double max_abs_diff(const CMatrix& x, const CMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  return m;
}

bool approx_eq(const CMatrix& x, const CMatrix& y, double tol) {
  return max_abs_diff(x, y) <= tol;
}

bool is_unitary(const CMatrix& x, double tol) {
  if (x.rows != x.cols) return false;
  return approx_eq(adjoint(x) * x, CMatrix::identity(x.rows), tol);
}

double operator_norm(const CMatrix& x) {
  if (x.rows == 0 || x.cols == 0) return 0.0;
  CMatrix h = adjoint(x) * x;
  std::vector<Cx> v(static_cast<size_t>(h.rows), Cx(1.0));
  double lambda = 0.0;
  for (int it = 0; it < 300; ++it) {
    std::vector<Cx> w(v.size(), Cx(0.0));
    for (int i = 0; i < h.rows; ++i)
      for (int j = 0; j < h.cols; ++j) w[i] += h.at(i, j) * v[j];
    double norm = 0.0;
    for (const auto& c : w) norm += std::norm(c);
    norm = std::sqrt(norm);
    if (norm < 1e-300) return 0.0;
    for (auto& c : w) c /= norm;
    lambda = norm;  // Rayleigh quotient of the previous unit vector
    v = std::move(w);
  }
  return std::sqrt(std::max(lambda, 0.0));
}

bool has_unit_entries(const CMatrix& x) {
  for (const auto& c : x.a) {
    const double re = c.real(), im = c.imag();
    const bool re_ok = re == 0.0 || re == 1.0 || re == -1.0;
    const bool im_ok = im == 0.0 || im == 1.0 || im == -1.0;
    if (!re_ok || !im_ok) return false;
    if (re != 0.0 && im != 0.0) return false;
  }
  return true;
}

// ----------------------------------------------------- pairs and labelings

bool operator==(const PerfectPair& a, const PerfectPair& b) {
  return a.kind == b.kind && a.radius == b.radius;
}

bool operator<(const PerfectPair& a, const PerfectPair& b) {
  if (a.kind != b.kind) return a.kind == PairKind::closed;
  return a.radius < b.radius;
}

int chi(const Rat& lambda, const PerfectPair& pair) {
  if (pair.kind == PairKind::closed) return pair.radius >= ExtRat(lambda) ? 1 : 0;
  return pair.radius > ExtRat(lambda) ? 1 : 0;
}

std::vector<PerfectPair> admissible_pairs(const LambdaSpec& lambda, const ExtRat& d) {
  validate_lambda(lambda);
  if (!(ExtRat(Rat(0)) < d)) throw DomainError("InvalidBound", {{"bound", ext_str(d)}});
  std::vector<PerfectPair> out;
  if (!lambda.zero_is_limit) out.push_back({PairKind::closed, ExtRat(Rat(0))});
  for (const auto& v : lambda.values)
    if (ExtRat(v) < d) out.push_back({PairKind::closed, ExtRat(v)});
  for (const auto& v : lambda.left_limits)
    if (ExtRat(v) <= d) out.push_back({PairKind::open, ExtRat(v)});
  if (lambda.unbounded && d.is_inf()) out.push_back({PairKind::open, ExtRat::infinity()});
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// pairs usable in a labeling at a point with the given isolation radius:
// the characters cut at d, minus those describing the whole ambient space
std::vector<PerfectPair> labeling_pairs(const LambdaSpec& lambda, const ExtRat& d) {
  std::vector<PerfectPair> out;
  for (const auto& p : admissible_pairs(lambda, d)) {
    if (p.kind == PairKind::open && p.radius.is_inf()) continue;
    if (p.kind == PairKind::closed && !lambda.unbounded && !lambda.values.empty() &&
        p.radius == ExtRat(lambda.max_value()))
      continue;
    out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<Labeling> labelings(const UltraSpace& x) {
  if (!x.lambda) throw DomainError("MissingLambda");
  const int n = x.n();
  std::vector<std::vector<PerfectPair>> per_point;
  for (int i = 0; i < n; ++i) per_point.push_back(labeling_pairs(*x.lambda, isolation(x, i)));
  std::vector<Labeling> out;
  Labeling cur(n);
  const auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (const auto& p : per_point[i]) {
      cur[i] = p;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

Labeling apply_iso_labeling(const Labeling& l, const std::vector<int>& perm) {
  Labeling out(l.size());
  for (size_t i = 0; i < l.size(); ++i) out[i] = l[perm[i]];
  return out;
}

std::vector<LabelingOrbit> orbit_decomposition(const UltraSpace& x,
                                               const std::vector<Labeling>& all) {
  auto group = isometry_group(x);
  std::sort(group.begin(), group.end());
  std::vector<Labeling> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  std::set<Labeling> used;
  std::vector<LabelingOrbit> out;
  for (const auto& l : sorted) {
    if (used.count(l)) continue;
    LabelingOrbit orbit;
    orbit.rep = l;
    std::set<Labeling> elements;
    for (const auto& g : group) {
      Labeling moved = apply_iso_labeling(l, g);
      elements.insert(moved);
      if (moved == l) orbit.stabilizer.push_back(g);
    }
    orbit.elements.assign(elements.begin(), elements.end());
    used.insert(elements.begin(), elements.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

std::string labeling_code(const Labeling& l) {
  std::string out;
  for (size_t i = 0; i < l.size(); ++i) {
    if (i) out += "|";
    out += (l[i].kind == PairKind::closed ? "c:" : "o:") + ext_str(l[i].radius);
  }
  return out;
}

// ------------------------------------------------------------ small groups

namespace {

struct StoredIrrep {
  std::string name;
  int dim = 0;
  std::map<Perm, CMatrix> mats;
};

struct StoredGroup {
  std::string name;
  std::vector<Perm> elements;  // sorted
  std::vector<StoredIrrep> irreps;
};

// grows the assignment generator-by-generator from the identity; the final
// homomorphism check over all pairs catches any inconsistent relation
std::map<Perm, CMatrix> extend_matrices(const std::vector<std::pair<Perm, CMatrix>>& gens,
                                        int dim) {
  const int n = static_cast<int>(gens.front().first.size());
  std::map<Perm, CMatrix> out;
  std::deque<Perm> queue;
  out.emplace(identity_perm(n), CMatrix::identity(dim));
  queue.push_back(identity_perm(n));
  while (!queue.empty()) {
    Perm cur = queue.front();
    queue.pop_front();
    const CMatrix m = out.at(cur);
    for (const auto& [g, mg] : gens) {
      Perm next = compose_perm(cur, g);
      if (!out.count(next)) {
        out.emplace(next, m * mg);
        queue.push_back(next);
      }
    }
  }
  return out;
}

void verify_irrep(const StoredGroup& g, const StoredIrrep& r) {
  if (r.mats.size() != g.elements.size()) throw std::logic_error("irrep size " + r.name);
  for (const auto& [p, m] : r.mats)
    if (!is_unitary(m, 1e-9)) throw std::logic_error("irrep unitarity " + r.name);
  for (const auto& [p, mp] : r.mats)
    for (const auto& [q, mq] : r.mats)
      if (!approx_eq(r.mats.at(compose_perm(p, q)), mp * mq, 1e-9))
        throw std::logic_error("irrep homomorphism " + r.name);
}

StoredIrrep make_irrep(const StoredGroup& g, std::string name,
                       const std::vector<std::pair<Perm, CMatrix>>& gens) {
  StoredIrrep r;
  r.name = std::move(name);
  r.dim = gens.front().second.rows;
  r.mats = extend_matrices(gens, r.dim);
  verify_irrep(g, r);
  return r;
}

StoredIrrep scalar_irrep(const StoredGroup& g, std::string name,
                         const std::map<Perm, Cx>& values) {
  StoredIrrep r;
  r.name = std::move(name);
  r.dim = 1;
  for (const auto& [p, v] : values) {
    CMatrix m(1, 1);
    m.at(0, 0) = v;
    r.mats.emplace(p, m);
  }
  verify_irrep(g, r);
  return r;
}

StoredGroup make_cyclic(int n) {
  StoredGroup g;
  g.name = "C" + std::to_string(n);
  Perm c(n);
  for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
  g.elements = close_perm_group({c}, n);
  for (int k = 0; k < n; ++k) {
    std::map<Perm, Cx> vals;
    Perm p = identity_perm(n);
    const bool fourth_roots = n == 1 || n == 2 || n == 4;  // exact values
    for (int j = 0; j < n; ++j) {
      const double arg = 2.0 * std::numbers::pi * j * k / n;
      const Cx w = fourth_roots ? Cx(std::round(std::cos(arg)), std::round(std::sin(arg)))
                                : Cx(std::cos(arg), std::sin(arg));
      vals[p] = w;
      p = compose_perm(c, p);
    }
    g.irreps.push_back(scalar_irrep(g, "chi" + std::to_string(k), vals));
  }
  return g;
}

StoredGroup make_v4() {
  StoredGroup g;
  g.name = "V4";
  const Perm a{1, 0, 2, 3}, b{0, 1, 3, 2};
  g.elements = close_perm_group({a, b}, 4);
  for (int sa : {1, -1})
    for (int sb : {1, -1}) {
      std::map<Perm, Cx> vals;
      for (const auto& e : g.elements) {
        // exponent of each generator mod 2, read off the moved points
        const int ea = e[0] == 1 ? 1 : 0;
        const int eb = e[2] == 3 ? 1 : 0;
        vals[e] = Cx((ea ? sa : 1) * (eb ? sb : 1), 0.0);
      }
      std::string name = std::string("chi_") + (sa > 0 ? "p" : "m") + (sb > 0 ? "p" : "m");
      g.irreps.push_back(scalar_irrep(g, name, vals));
    }
  return g;
}

// permutation matrix restricted to the orthogonal complement of (1,...,1)
CMatrix complement_block(const Perm& p) {
  const int n = static_cast<int>(p.size());
  // orthonormal basis u_k of the complement (Helmert-type rows)
  std::vector<std::vector<double>> u;
  for (int k = 1; k < n; ++k) {
    std::vector<double> v(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < k; ++i) v[i] = 1.0;
    v[k] = -static_cast<double>(k);
    const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    for (auto& t : v) t /= norm;
    u.push_back(v);
  }
  const Perm pinv = inverse_perm(p);
  CMatrix m(n - 1, n - 1);
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) {
      double s = 0.0;
      // (P u_j)(row) = u_j[p^{-1}(row)], contracted against u_i
      for (int row = 0; row < n; ++row) s += u[i][row] * u[j][pinv[row]];
      m.at(i, j) = Cx(s, 0.0);
    }
  return m;
}

StoredGroup make_s3() {
  StoredGroup g;
  g.name = "S3";
  g.elements = close_perm_group({{1, 2, 0}, {1, 0, 2}}, 3);
  std::map<Perm, Cx> triv, sign;
  std::map<Perm, CMatrix> std2;
  for (const auto& e : g.elements) {
    triv[e] = 1.0;
    sign[e] = static_cast<double>(perm_sign(e));
    std2[e] = complement_block(e);
  }
  g.irreps.push_back(scalar_irrep(g, "trivial", triv));
  g.irreps.push_back(scalar_irrep(g, "sign", sign));
  StoredIrrep s;
  s.name = "standard";
  s.dim = 2;
  s.mats = std2;
  verify_irrep(g, s);
  g.irreps.push_back(std::move(s));
  return g;
}

StoredGroup make_d4() {
  StoredGroup g;
  g.name = "D4";
  const Perm r{1, 2, 3, 0}, s{3, 2, 1, 0};
  g.elements = close_perm_group({r, s}, 4);
  for (int sr : {1, -1})
    for (int ss : {1, -1}) {
      CMatrix mr(1, 1), ms(1, 1);
      mr.at(0, 0) = sr;
      ms.at(0, 0) = ss;
      std::string name = std::string("chi_") + (sr > 0 ? "p" : "m") + (ss > 0 ? "p" : "m");
      g.irreps.push_back(make_irrep(g, name, {{r, mr}, {s, ms}}));
    }
  CMatrix rot(2, 2), ref(2, 2);
  rot.at(0, 1) = -1.0;
  rot.at(1, 0) = 1.0;
  ref.at(0, 0) = 1.0;
  ref.at(1, 1) = -1.0;
  g.irreps.push_back(make_irrep(g, "plane", {{r, rot}, {s, ref}}));
  return g;
}

// the 24 rotation matrices of the cube, keyed by the permutation they induce
// on its four body diagonals
std::map<Perm, CMatrix> cube_rotations() {
  const int diag[4][3] = {{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}};
  std::map<Perm, CMatrix> out;
  Perm axis{0, 1, 2};
  std::sort(axis.begin(), axis.end());
  do {
    for (int signs = 0; signs < 8; ++signs) {
      CMatrix m(3, 3);
      int det_sign = perm_sign(axis);
      for (int row = 0; row < 3; ++row) {
        const int s = (signs >> row) & 1 ? -1 : 1;
        m.at(row, axis[row]) = s;
        det_sign *= s;
      }
      if (det_sign != 1) continue;
      Perm induced(4, -1);
      for (int i = 0; i < 4; ++i) {
        int image[3];
        for (int row = 0; row < 3; ++row)
          image[row] = static_cast<int>(std::lround(m.at(row, axis[row]).real())) *
                       diag[i][axis[row]];
        for (int j = 0; j < 4; ++j) {
          bool plus = true, minus = true;
          for (int row = 0; row < 3; ++row) {
            plus = plus && image[row] == diag[j][row];
            minus = minus && image[row] == -diag[j][row];
          }
          if (plus || minus) induced[i] = j;
        }
      }
      out.emplace(induced, m);
    }
  } while (std::next_permutation(axis.begin(), axis.end()));
  if (out.size() != 24) throw std::logic_error("cube rotation table");
  return out;
}

StoredGroup make_s4() {
  StoredGroup g;
  g.name = "S4";
  Perm p{0, 1, 2, 3};
  do g.elements.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::sort(g.elements.begin(), g.elements.end());

  std::map<Perm, Cx> triv, sign;
  for (const auto& e : g.elements) {
    triv[e] = 1.0;
    sign[e] = static_cast<double>(perm_sign(e));
  }
  g.irreps.push_back(scalar_irrep(g, "trivial", triv));
  g.irreps.push_back(scalar_irrep(g, "sign", sign));

  // 2-dimensional: factor through the action on the three pair partitions
  const int partner0[3] = {1, 2, 3};  // partition i pairs 0 with partner0[i]
  const StoredGroup s3 = make_s3();
  const StoredIrrep& s3std = s3.irreps.back();
  std::map<Perm, CMatrix> dim2;
  for (const auto& e : g.elements) {
    Perm induced(3);
    for (int i = 0; i < 3; ++i) {
      // the image partition is named by the new partner of 0
      const int a = e[0], b = e[partner0[i]];
      int q;
      if (a == 0)
        q = b;
      else if (b == 0)
        q = a;
      else
        q = 6 - a - b;  // the pair {a,b} misses 0 and q
      induced[i] = q - 1;
    }
    dim2[e] = s3std.mats.at(induced);
  }
  StoredIrrep d2;
  d2.name = "partition";
  d2.dim = 2;
  d2.mats = std::move(dim2);
  verify_irrep(g, d2);
  g.irreps.push_back(std::move(d2));

  const auto cube = cube_rotations();
  StoredIrrep std3, std3s;
  std3.name = "standard";
  std3s.name = "standard_sign";
  std3.dim = std3s.dim = 3;
  for (const auto& e : g.elements) {
    CMatrix m = cube.at(e);
    std3.mats.emplace(e, m);
    if (perm_sign(e) < 0)
      for (auto& c : m.a) c = -c;
    std3s.mats.emplace(e, m);
  }
  verify_irrep(g, std3);
  verify_irrep(g, std3s);
  g.irreps.push_back(std::move(std3));
  g.irreps.push_back(std::move(std3s));
  return g;
}

const std::vector<StoredGroup>& stored_groups() {
  static const std::vector<StoredGroup> groups = [] {
    std::vector<StoredGroup> out;
    for (int n = 1; n <= 6; ++n) out.push_back(make_cyclic(n));
    out.push_back(make_v4());
    out.push_back(make_s3());
    out.push_back(make_d4());
    out.push_back(make_s4());
    return out;
  }();
  return groups;
}

struct GroupMatch {
  const StoredGroup* group = nullptr;
  std::map<Perm, Perm> phi;  // concrete element -> stored element
};

// tries to extend a generator assignment to an isomorphism; the word
// extension is first-come, the full pair check at the end decides
bool try_match(const std::vector<Perm>& concrete, const std::vector<Perm>& gens,
               const StoredGroup& target, const std::vector<Perm>& images,
               std::map<Perm, Perm>& phi_out) {
  const int n = static_cast<int>(concrete.front().size());
  const int tn = static_cast<int>(target.elements.front().size());
  std::map<Perm, Perm> phi;
  std::deque<Perm> queue;
  phi.emplace(identity_perm(n), identity_perm(tn));
  queue.push_back(identity_perm(n));
  while (!queue.empty()) {
    Perm cur = queue.front();
    queue.pop_front();
    const Perm img = phi.at(cur);
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      Perm next = compose_perm(cur, gens[gi]);
      if (!phi.count(next)) {
        phi.emplace(next, compose_perm(img, images[gi]));
        queue.push_back(next);
      }
    }
  }
  if (phi.size() != concrete.size()) return false;
  std::set<Perm> image_set;
  for (const auto& [c, t] : phi) image_set.insert(t);
  if (image_set.size() != concrete.size()) return false;
  for (const auto& [a, fa] : phi)
    for (const auto& [b, fb] : phi)
      if (phi.at(compose_perm(a, b)) != compose_perm(fa, fb)) return false;
  phi_out = std::move(phi);
  return true;
}

std::vector<Perm> small_generating_set(const std::vector<Perm>& elements) {
  const int n = static_cast<int>(elements.front().size());
  for (const auto& a : elements)
    if (close_perm_group({a}, n).size() == elements.size()) return {a};
  for (const auto& a : elements)
    for (const auto& b : elements)
      if (close_perm_group({a, b}, n).size() == elements.size()) return {a, b};
  return {};
}

GroupMatch identify_group(const std::vector<Perm>& concrete) {
  const size_t m = concrete.size();
  const auto gens = small_generating_set(concrete);
  for (const auto& stored : stored_groups()) {
    if (stored.elements.size() != m) continue;
    if (gens.empty()) break;
    std::vector<int> gen_orders;
    for (const auto& g : gens) gen_orders.push_back(perm_order(g));
    // candidate images with matching element orders
    std::vector<std::vector<Perm>> candidates(gens.size());
    for (size_t gi = 0; gi < gens.size(); ++gi)
      for (const auto& e : stored.elements)
        if (perm_order(e) == gen_orders[gi]) candidates[gi].push_back(e);
    std::vector<Perm> images(gens.size());
    std::map<Perm, Perm> phi;
    const auto rec = [&](auto&& self, size_t gi) -> bool {
      if (gi == gens.size()) return try_match(concrete, gens, stored, images, phi);
      for (const auto& cand : candidates[gi]) {
        images[gi] = cand;
        if (self(self, gi + 1)) return true;
      }
      return false;
    };
    if (rec(rec, 0)) return {&stored, std::move(phi)};
  }
  throw DomainError("UnsupportedStabilizer", {{"order", static_cast<long long>(m)}});
}

}  // namespace

// ------------------------------------------------------------ induced rep

FiniteRep induced_rep(const UltraSpace& x, const Labeling& rep_label,
                      const std::map<std::vector<int>, CMatrix>& nu) {
  if (!x.lambda) throw DomainError("MissingLambda");
  if (static_cast<int>(rep_label.size()) != x.n())
    throw DomainError("InvalidLabeling", {{"reason", "size"}});
  for (int i = 0; i < x.n(); ++i) {
    const auto allowed = labeling_pairs(*x.lambda, isolation(x, i));
    if (std::find(allowed.begin(), allowed.end(), rep_label[i]) == allowed.end())
      throw DomainError("InvalidLabeling", {{"point", x.labels[i]}});
  }
  FiniteRep rep;
  rep.base = x;

  auto group = isometry_group(x);
  std::sort(group.begin(), group.end());
  std::vector<Perm> stab;
  std::set<Labeling> orbit_set;
  for (const auto& g : group) {
    Labeling moved = apply_iso_labeling(rep_label, g);
    orbit_set.insert(moved);
    if (moved == rep_label) stab.push_back(g);
  }
  rep.stabilizer = stab;

  // nu must be a unitary homomorphism defined exactly on the stabilizer
  if (nu.size() != stab.size()) throw DomainError("NotARepresentation", {{"reason", "domain"}});
  for (const auto& g : stab)
    if (!nu.count(g)) throw DomainError("NotARepresentation", {{"reason", "domain"}});
  const int nd = nu.begin()->second.rows;
  for (const auto& [g, m] : nu) {
    if (m.rows != nd || m.cols != nd)
      throw DomainError("NotARepresentation", {{"reason", "shape"}});
    if (!is_unitary(m, 1e-9)) throw DomainError("NotARepresentation", {{"reason", "unitarity"}});
  }
  for (const auto& [a, ma] : nu)
    for (const auto& [b, mb] : nu)
      if (!approx_eq(nu.at(compose_perm(a, b)), ma * mb, 1e-9))
        throw DomainError("NotARepresentation", {{"reason", "homomorphism"}});

  rep.nu = nu;
  rep.nu_dim = nd;
  rep.orbit.push_back(rep_label);
  for (const auto& l : orbit_set)
    if (!(l == rep_label)) rep.orbit.push_back(l);
  for (const auto& l : rep.orbit) {
    for (const auto& g : group)
      if (apply_iso_labeling(rep_label, g) == l) {
        rep.section.push_back(g);
        break;
      }
  }
  rep.dim = static_cast<int>(rep.orbit.size()) * nd;
  rep.exact = true;
  for (const auto& [g, m] : nu) rep.exact = rep.exact && has_unit_entries(m);
  return rep;
}

CMatrix rep_iso_matrix(const FiniteRep& rep, const std::vector<int>& perm) {
  if (!is_isometry(rep.base, perm)) throw DomainError("NotAnIsometry");
  std::map<Labeling, int> index;
  for (size_t i = 0; i < rep.orbit.size(); ++i) index[rep.orbit[i]] = static_cast<int>(i);
  const int nd = rep.nu_dim;
  CMatrix out(rep.dim, rep.dim);
  for (size_t il = 0; il < rep.orbit.size(); ++il) {
    const Labeling moved = apply_iso_labeling(rep.orbit[il], perm);
    const int jl = index.at(moved);
    const Perm h = compose_perm(compose_perm(rep.section[il], perm),
                                inverse_perm(rep.section[static_cast<size_t>(jl)]));
    const CMatrix& block = rep.nu.at(h);
    for (int a = 0; a < nd; ++a)
      for (int b = 0; b < nd; ++b)
        out.at(static_cast<int>(il) * nd + a, jl * nd + b) = block.at(a, b);
  }
  return out;
}

CMatrix rep_near_unit_matrix(const FiniteRep& rep, const NearUnit& z) {
  if (!same_labeled_space(z.space, rep.base)) throw DomainError("SpaceMismatch");
  validate_near_unit(z);
  const int nd = rep.nu_dim;
  CMatrix out(rep.dim, rep.dim);
  for (size_t il = 0; il < rep.orbit.size(); ++il) {
    int scalar = 1;
    for (int i = 0; i < rep.base.n(); ++i) scalar *= chi(z.lambdas[i], rep.orbit[il][i]);
    if (scalar)
      for (int a = 0; a < nd; ++a)
        out.at(static_cast<int>(il) * nd + a, static_cast<int>(il) * nd + a) = 1.0;
  }
  return out;
}

CMatrix rep_apply(const FiniteRep& rep, const Morphism& p) {
  if (!same_labeled_space(p.source, rep.base) || !same_labeled_space(p.target, rep.base))
    throw DomainError("SpaceMismatch");
  const EndoClass cls = classify_endo(p);
  if (std::holds_alternative<NotNearAutomorphism>(cls)) return CMatrix::zero(rep.dim);
  const auto& na = std::get<NearAutomorphism>(cls);
  NearUnit z = na.z;
  z.space = rep.base;  // carry the attached level set
  return rep_iso_matrix(rep, na.kappa) * rep_near_unit_matrix(rep, z);
}

CheckReport check_star_rep(const FiniteRep& rep, const std::vector<Morphism>& sample) {
  CheckReport report;
  const double tol = rep.exact ? 0.0 : 1e-9;
  const auto fail = [&report](std::string msg) {
    report.ok = false;
    report.failures.push_back(std::move(msg));
  };

  if (!approx_eq(rep_apply(rep, identity_morphism(rep.base)), CMatrix::identity(rep.dim), tol))
    fail("identity does not act as the unit matrix");

  std::vector<CMatrix> mats;
  mats.reserve(sample.size());
  for (const auto& p : sample) mats.push_back(rep_apply(rep, p));

  for (size_t i = 0; i < sample.size(); ++i) {
    if (!approx_eq(rep_apply(rep, involution(sample[i])), adjoint(mats[i]), tol))
      fail("adjoint law fails at sample " + std::to_string(i));
    if (operator_norm(mats[i]) > 1.0 + 1e-9)
      fail("contraction bound fails at sample " + std::to_string(i));
  }
  for (size_t i = 0; i < sample.size(); ++i)
    for (size_t j = 0; j < sample.size(); ++j) {
      const CMatrix lhs = rep_apply(rep, compose(sample[i], sample[j]));
      if (!approx_eq(lhs, mats[j] * mats[i], tol))
        fail("product law fails at pair " + std::to_string(i) + "," + std::to_string(j));
    }
  return report;
}

int commutant_dimension(const FiniteRep& rep) {
  std::vector<CMatrix> gens;
  auto group = isometry_group(rep.base);
  for (const auto& g : group) gens.push_back(rep_iso_matrix(rep, g));
  if (rep.base.lambda) {
    for (int i = 0; i < rep.base.n(); ++i)
      for (const auto& v : rep.base.lambda->values) {
        if (!(ExtRat(v) < isolation(rep.base, i))) continue;
        NearUnit z{rep.base, std::vector<Rat>(static_cast<size_t>(rep.base.n()), Rat(0))};
        z.lambdas[static_cast<size_t>(i)] = v;
        gens.push_back(rep_near_unit_matrix(rep, z));
      }
  }
  const int d = rep.dim;
  std::vector<std::vector<Cx>> rows;
  for (const auto& g : gens)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        // entry (i,j) of M g - g M as a linear form in M
        std::vector<Cx> row(static_cast<size_t>(d) * d, Cx(0.0));
        for (int k = 0; k < d; ++k) {
          row[static_cast<size_t>(i) * d + k] += g.at(k, j);
          row[static_cast<size_t>(k) * d + j] -= g.at(i, k);
        }
        rows.push_back(std::move(row));
      }
  // rank over the complex numbers by elimination with partial pivoting
  const double tol = 1e-7;
  int rank = 0;
  const int cols = d * d;
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int best = -1;
    double best_abs = tol;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (std::abs(rows[r][c]) > best_abs) {
        best_abs = std::abs(rows[r][c]);
        best = r;
      }
    if (best < 0) continue;
    std::swap(rows[rank], rows[best]);
    const Cx pivot = rows[rank][c];
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][c] == Cx(0.0)) continue;
      const Cx f = rows[r][c] / pivot;
      for (int cc = c; cc < cols; ++cc) rows[r][cc] -= f * rows[rank][cc];
    }
    ++rank;
  }
  return d * d - rank;
}

std::vector<CensusEntry> irrep_census(const UltraSpace& x) {
  std::vector<CensusEntry> out;
  for (const auto& orbit : orbit_decomposition(x, labelings(x))) {
    const GroupMatch match = identify_group(orbit.stabilizer);
    for (const auto& irrep : match.group->irreps) {
      std::map<Perm, CMatrix> nu;
      for (const auto& g : orbit.stabilizer) nu.emplace(g, irrep.mats.at(match.phi.at(g)));
      CensusEntry entry;
      entry.orbit_rep = orbit.rep;
      entry.orbit_code = labeling_code(orbit.rep);
      entry.stabilizer_order = static_cast<long long>(orbit.stabilizer.size());
      entry.nu_name = match.group->name + ":" + irrep.name;
      for (const auto& g : orbit.stabilizer) {
        const CMatrix& m = nu.at(g);
        Cx tr(0.0);
        for (int i = 0; i < m.rows; ++i) tr += m.at(i, i);
        entry.nu_character.push_back(tr);
      }
      entry.rep = induced_rep(x, orbit.rep, nu);
      entry.dim = entry.rep.dim;
      out.push_back(std::move(entry));
    }
  }
  return out;
}

}  // namespace ultracat
