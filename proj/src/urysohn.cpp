#include "ultracat/urysohn.hpp"

#include "ultracat/error.hpp"

#include <algorithm>
#include <set>

namespace ultracat {

bool operator==(const NguyenPoint& a, const NguyenPoint& b) { return a.support == b.support; }

bool operator<(const NguyenPoint& a, const NguyenPoint& b) {
  return std::lexicographical_compare(
      a.support.begin(), a.support.end(), b.support.begin(), b.support.end(),
      [](const auto& p, const auto& q) {
        if (p.first != q.first) return p.first < q.first;
        return p.second < q.second;
      });
}

Rat model_distance(const NguyenPoint& a, const NguyenPoint& b) {
  Rat best(0);
  for (const auto& [lam, v] : a.support)
    if (b.at(lam) != v) best = std::max(best, lam);
  for (const auto& [lam, v] : b.support)
    if (a.at(lam) != v) best = std::max(best, lam);
  return best;
}

ModelBall ball_of(const NguyenPoint& w, BallKind kind, const Rat& r) {
  ModelBall b;
  b.kind = kind;
  b.radius = r;
  for (const auto& [lam, v] : w.support) {
    const bool keep = (kind == BallKind::closed) ? (lam > r) : (lam >= r);
    if (keep) b.nu[lam] = v;
  }
  return b;
}

bool ball_contains(const ModelBall& b, const NguyenPoint& w) {
  ModelBall c = ball_of(w, b.kind, b.radius);
  return c.nu == b.nu;
}

bool operator==(const ModelBall& a, const ModelBall& b) {
  return a.kind == b.kind && a.radius == b.radius && a.nu == b.nu;
}

bool operator<(const ModelBall& a, const ModelBall& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.radius != b.radius) return a.radius < b.radius;
  NguyenPoint pa, pb;
  pa.support = a.nu;
  pb.support = b.nu;
  return pa < pb;
}

NguyenPoint ball_witness(const ModelBall& b) {
  NguyenPoint w;
  w.support = b.nu;
  return w;
}

NguyenPoint shift(const ModelBall& b1, const ModelBall& b2, const NguyenPoint& w) {
  if (b1.kind != b2.kind || b1.radius != b2.radius)
    throw DomainError("BallMismatch",
                      {{"r1", rat_str(b1.radius)}, {"r2", rat_str(b2.radius)}});
  if (!ball_contains(b1, w)) throw DomainError("NotInBall");
  NguyenPoint out;
  const Rat& r = b1.radius;
  auto low = [&](const Rat& lam) {
    return (b1.kind == BallKind::closed) ? (lam <= r) : (lam < r);
  };
  for (const auto& [lam, v] : w.support)
    if (low(lam)) out.set(lam, v);
  for (const auto& [lam, v] : b2.nu) out.set(lam, v);
  return out;
}

NguyenPoint urysohn_extend(const LambdaSpec& lambda, const std::vector<NguyenPoint>& pts,
                           const std::vector<Rat>& distances) {
  if (pts.size() != distances.size()) throw DomainError("InconsistentInput");
  if (pts.empty()) return NguyenPoint{};
  for (const auto& d : distances) {
    if (d <= 0) throw DomainError("InconsistentInput", {{"reason", "new point must be distinct"}});
    if (!lambda.contains(d)) throw DomainError("SpectrumViolation", {{"distance", rat_str(d)}});
  }
  // the prescribed column must extend the realized matrix to an ultrametric
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Rat dij = model_distance(pts[i], pts[j]);
      if (dij > std::max(distances[i], distances[j]) ||
          distances[i] > std::max(dij, distances[j]))
        throw DomainError("InconsistentInput", {{"i", i}, {"j", j}});
    }

  int star = 0;
  for (int i = 1; i < n; ++i)
    if (distances[i] < distances[star]) star = i;
  const Rat& s = distances[star];

  std::set<long long> conflict;
  for (int i = 0; i < n; ++i)
    if (model_distance(pts[star], pts[i]) <= s) conflict.insert(pts[i].at(s));
  long long fresh = 1;
  while (conflict.count(fresh)) ++fresh;

  NguyenPoint theta;
  for (const auto& [lam, v] : pts[star].support)
    if (lam > s) theta.set(lam, v);
  theta.set(s, fresh);

  for (int i = 0; i < n; ++i)
    if (model_distance(theta, pts[i]) != distances[i])
      throw DomainError("InconsistentInput", {{"point", i}});
  return theta;
}

std::vector<NguyenPoint> embed_space(const UltraSpace& s, const LambdaSpec& lambda) {
  std::vector<NguyenPoint> out;
  for (int i = 0; i < s.n(); ++i) {
    std::vector<Rat> col;
    for (int j = 0; j < i; ++j) col.push_back(s.d(j, i));
    out.push_back(urysohn_extend(lambda, out, col));
  }
  return out;
}

UltraSpace induced_space(const std::vector<std::string>& labels,
                         const std::vector<NguyenPoint>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<Rat> m(static_cast<size_t>(n) * n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rat d = model_distance(pts[i], pts[j]);
      m[static_cast<size_t>(i) * n + j] = d;
      m[static_cast<size_t>(j) * n + i] = d;
    }
  return make_space(labels, std::move(m));
}

std::vector<NguyenPoint> witnesses_at(const NguyenPoint& x, const Rat& lam, int count) {
  std::vector<NguyenPoint> out;
  out.push_back(x);
  long long k = 0;
  while (static_cast<int>(out.size()) < count) {
    if (k != x.at(lam)) {
      NguyenPoint w = x;
      w.set(lam, k);
      out.push_back(w);
    }
    ++k;
  }
  return out;
}

namespace {

// order preserving bijection Z minus occupied -> Z; nonnegative free values
// get ranks 0,1,2,..., negative free values get -1,-2,...
long long rank_of(const std::set<long long>& occ, long long a) {
  long long r = 0;
  if (a >= 0) {
    for (long long m = 0; m < a; ++m)
      if (!occ.count(m)) ++r;
    return r;
  }
  for (long long m = a; m < 0; ++m)
    if (!occ.count(m)) --r;
  return r;
}

long long unrank(const std::set<long long>& occ, long long t) {
  if (t >= 0) {
    long long seen = -1;
    for (long long a = 0;; ++a)
      if (!occ.count(a) && ++seen == t) return a;
  }
  long long seen = 0;
  for (long long a = -1;; --a)
    if (!occ.count(a) && --seen == t) return a;
}

}  // namespace

NguyenPoint theta_apply(const std::vector<NguyenPoint>& y, long long j, const NguyenPoint& w) {
  if (y.empty()) throw DomainError("EmptyConfiguration");
  if (j < 0) throw DomainError("InvalidShiftIndex", {{"j", j}});
  for (const auto& p : y)
    if (p == w) return w;

  // entry height into the configuration tree and the nearest listed point
  Rat h = model_distance(w, y[0]);
  size_t star = 0;
  for (size_t i = 1; i < y.size(); ++i) {
    Rat d = model_distance(w, y[i]);
    if (d < h) {
      h = d;
      star = i;
    }
  }

  std::set<long long> occupied;
  for (const auto& p : y)
    if (model_distance(p, y[star]) <= h) occupied.insert(p.at(h));

  const long long k = w.at(h);
  const long long moved = unrank(occupied, rank_of(occupied, k) + j);

  NguyenPoint out = w;
  out.set(h, moved);
  return out;
}

NguyenPoint apply_isometry(const ModelIsometry& g, const NguyenPoint& w) {
  NguyenPoint cur = w;
  for (const auto& mv : g) {
    if (std::holds_alternative<ThetaMove>(mv)) {
      const auto& t = std::get<ThetaMove>(mv);
      cur = theta_apply(t.y, t.j, cur);
    } else if (std::holds_alternative<SwapMove>(mv)) {
      const auto& sw = std::get<SwapMove>(mv);
      if (sw.b1.kind != sw.b2.kind || sw.b1.radius != sw.b2.radius)
        throw DomainError("BallMismatch");
      if (sw.b1 == sw.b2) continue;
      // only a transposition of two germs at a common vertex extends to an
      // isometry: open balls whose mutual distance equals the radius
      if (sw.b1.kind != BallKind::open ||
          model_distance(ball_witness(sw.b1), ball_witness(sw.b2)) != sw.b1.radius)
        throw DomainError("InvalidSwap");
      if (ball_contains(sw.b1, cur))
        cur = shift(sw.b1, sw.b2, cur);
      else if (ball_contains(sw.b2, cur))
        cur = shift(sw.b2, sw.b1, cur);
    } else {
      const auto& mp = std::get<MapMove>(mv);
      bool hit = false;
      for (const auto& [in, outp] : mp.pairs)
        if (in == cur) {
          cur = outp;
          hit = true;
          break;
        }
      if (!hit) throw DomainError("InsufficientData");
    }
  }
  return cur;
}

std::vector<NguyenPoint> apply_isometry(const ModelIsometry& g,
                                        const std::vector<NguyenPoint>& ws) {
  std::vector<NguyenPoint> out;
  out.reserve(ws.size());
  for (const auto& w : ws) out.push_back(apply_isometry(g, w));
  return out;
}

}  // namespace ultracat
