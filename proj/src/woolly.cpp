#include "ultracat/woolly.hpp"

#include "ultracat/error.hpp"
#include "ultracat/lambda.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ultracat {

namespace {

// (radius, kind) with an open ball strictly below the closed one of equal
// radius; this is exactly ambient inclusion of concentric perfect balls
int key_cmp(const FiniteBall& a, const FiniteBall& b) {
  if (a.radius < b.radius) return -1;
  if (b.radius < a.radius) return 1;
  if (a.kind == b.kind) return 0;
  return a.kind == BallKind::open ? -1 : 1;
}

bool same_lambda(const std::optional<LambdaSpec>& a, const std::optional<LambdaSpec>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->values == b->values && a->zero_is_limit == b->zero_is_limit &&
         a->unbounded == b->unbounded && a->left_limits == b->left_limits &&
         a->inf_left_limit == b->inf_left_limit;
}

bool same_ambient(const UltraSpace& a, const UltraSpace& b) {
  return a.labels == b.labels && a.dist == b.dist && same_lambda(a.lambda, b.lambda);
}

nlohmann::json ball_json(const UltraSpace& s, const FiniteBall& b) {
  return {{"kind", b.kind == BallKind::closed ? "c" : "o"},
          {"center", s.labels[static_cast<size_t>(b.center)]},
          {"radius", ext_str(b.radius)}};
}

// the perfect (radius, kind) ladder in ascending key order
std::vector<FiniteBall> perfect_keys(const LambdaSpec& l) {
  std::vector<FiniteBall> keys;
  if (!l.zero_is_limit) keys.push_back({BallKind::closed, 0, ExtRat(Rat(0))});
  for (const auto& v : l.values) {
    if (l.is_left_limit(v)) keys.push_back({BallKind::open, 0, ExtRat(v)});
    keys.push_back({BallKind::closed, 0, ExtRat(v)});
  }
  if (l.unbounded) keys.push_back({BallKind::open, 0, ExtRat::infinity()});
  return keys;
}

void require_lambda(const UltraSpace& s) {
  if (!s.lambda) throw DomainError("MissingLambda");
}

}  // namespace

bool operator==(const FiniteBall& a, const FiniteBall& b) {
  return a.kind == b.kind && a.center == b.center && a.radius == b.radius;
}

bool operator<(const FiniteBall& a, const FiniteBall& b) {
  const int c = key_cmp(a, b);
  if (c != 0) return c < 0;
  return a.center < b.center;
}

bool is_perfect_ball(const UltraSpace& s, const FiniteBall& b) {
  require_lambda(s);
  if (b.center < 0 || b.center >= s.n()) return false;
  if (b.kind == BallKind::closed) {
    if (b.radius.is_inf()) return false;
    return s.lambda->in_plus0(b.radius.finite());
  }
  if (b.radius.is_inf()) return s.lambda->unbounded;
  return s.lambda->is_left_limit(b.radius.finite());
}

std::vector<int> ball_points(const UltraSpace& s, const FiniteBall& b) {
  std::vector<int> out;
  for (int y = 0; y < s.n(); ++y) {
    const ExtRat d{s.d(b.center, y)};
    if (b.kind == BallKind::closed ? d <= b.radius : d < b.radius) out.push_back(y);
  }
  return out;
}

FiniteBall canonical_ball(const UltraSpace& s, const FiniteBall& b) {
  FiniteBall out = b;
  const auto pts = ball_points(s, b);
  if (!pts.empty()) out.center = pts.front();
  return out;
}

bool ball_contains(const UltraSpace& s, const FiniteBall& outer, const FiniteBall& inner) {
  if (key_cmp(inner, outer) > 0) return false;
  const ExtRat d{s.d(outer.center, inner.center)};
  return outer.kind == BallKind::closed ? d <= outer.radius : d < outer.radius;
}

WoollySubtree dilative_closure(const UltraSpace& s, const std::vector<FiniteBall>& gens) {
  require_lambda(s);
  if (gens.empty()) throw DomainError("EmptyGenerators");
  const auto keys = perfect_keys(*s.lambda);
  std::set<FiniteBall> closed;
  for (const auto& g : gens) {
    if (!is_perfect_ball(s, g)) throw DomainError("NotPerfect", ball_json(s, g));
    for (const auto& key : keys) {
      if (key_cmp(key, g) < 0) continue;
      closed.insert(canonical_ball(s, {key.kind, g.center, key.radius}));
    }
  }
  WoollySubtree w;
  w.space = s;
  w.balls.assign(closed.begin(), closed.end());
  return w;
}

bool subtree_contains(const WoollySubtree& w, const FiniteBall& b) {
  const FiniteBall c = canonical_ball(w.space, b);
  return std::find(w.balls.begin(), w.balls.end(), c) != w.balls.end();
}

bool subtree_eq(const WoollySubtree& a, const WoollySubtree& b) {
  return same_ambient(a.space, b.space) && a.balls == b.balls;
}

WoollySubtree subtree_intersection(const WoollySubtree& a, const WoollySubtree& b) {
  if (!same_ambient(a.space, b.space)) throw DomainError("AmbientMismatch");
  WoollySubtree out;
  out.space = a.space;
  for (const auto& ball : a.balls)
    if (subtree_contains(b, ball)) out.balls.push_back(ball);
  return out;
}

void validate_gamma(const GammaElement& g) {
  const UltraSpace& s = g.dom.space;
  require_lambda(s);
  if (g.images.size() != g.dom.balls.size())
    throw DomainError("InvalidGamma", {{"reason", "size mismatch"}});
  const size_t m = g.images.size();
  if (m == 0) throw DomainError("InvalidGamma", {{"reason", "empty domain"}});
  for (size_t i = 0; i < m; ++i) {
    const auto& d = g.dom.balls[i];
    const auto& im = g.images[i];
    if (!is_perfect_ball(s, d)) throw DomainError("InvalidGamma", ball_json(s, d));
    if (!is_perfect_ball(s, im)) throw DomainError("InvalidGamma", ball_json(s, im));
    if (d.kind != im.kind || d.radius != im.radius)
      throw DomainError("InvalidGamma", {{"reason", "height or kind changed"}});
    if (!(canonical_ball(s, d) == d))
      throw DomainError("InvalidGamma", {{"reason", "domain not canonical"}});
    if (!(canonical_ball(s, im) == im))
      throw DomainError("InvalidGamma", {{"reason", "image not canonical"}});
    if (i + 1 < m && !(d < g.dom.balls[i + 1]))
      throw DomainError("InvalidGamma", {{"reason", "domain not sorted"}});
  }
  std::set<FiniteBall> image_set(g.images.begin(), g.images.end());
  if (image_set.size() != m) throw DomainError("InvalidGamma", {{"reason", "not injective"}});
  // both families must be upward closed and the map an order isomorphism
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j)
      if (ball_contains(s, g.dom.balls[j], g.dom.balls[i]) !=
          ball_contains(s, g.images[j], g.images[i]))
        throw DomainError("InvalidGamma", {{"reason", "order broken"}});
  const std::set<FiniteBall> dom_set(g.dom.balls.begin(), g.dom.balls.end());
  for (size_t i = 0; i < m; ++i) {
    for (const auto& up : dilative_closure(s, {g.dom.balls[i]}).balls)
      if (!dom_set.count(up))
        throw DomainError("InvalidGamma", {{"reason", "domain not dilative"}});
    for (const auto& up : dilative_closure(s, {g.images[i]}).balls)
      if (!image_set.count(up))
        throw DomainError("InvalidGamma", {{"reason", "image not dilative"}});
  }
}

GammaElement identity_gamma(const WoollySubtree& w) {
  GammaElement g;
  g.dom = w;
  g.images = w.balls;
  validate_gamma(g);
  return g;
}

WoollySubtree gamma_image(const GammaElement& g) {
  WoollySubtree out;
  out.space = g.dom.space;
  out.balls = g.images;
  std::sort(out.balls.begin(), out.balls.end());
  return out;
}

GammaElement gamma_inverse(const GammaElement& g) {
  std::vector<std::pair<FiniteBall, FiniteBall>> pairs;
  for (size_t i = 0; i < g.images.size(); ++i) pairs.push_back({g.images[i], g.dom.balls[i]});
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  GammaElement out;
  out.dom.space = g.dom.space;
  for (const auto& [im, d] : pairs) {
    out.dom.balls.push_back(im);
    out.images.push_back(d);
  }
  validate_gamma(out);
  return out;
}

bool gamma_eq(const GammaElement& a, const GammaElement& b) {
  return subtree_eq(a.dom, b.dom) && a.images == b.images;
}

bool is_identity_gamma(const GammaElement& g) { return g.images == g.dom.balls; }

GammaElement compose_gamma(const GammaElement& b, const GammaElement& a) {
  if (!same_ambient(a.dom.space, b.dom.space)) throw DomainError("AmbientMismatch");
  std::map<FiniteBall, FiniteBall> bmap;
  for (size_t i = 0; i < b.dom.balls.size(); ++i) bmap.emplace(b.dom.balls[i], b.images[i]);
  GammaElement out;
  out.dom.space = a.dom.space;
  for (size_t i = 0; i < a.dom.balls.size(); ++i) {
    const auto it = bmap.find(a.images[i]);
    if (it == bmap.end()) continue;
    out.dom.balls.push_back(a.dom.balls[i]);
    out.images.push_back(it->second);
  }
  validate_gamma(out);
  return out;
}

GammaElement group_shadow(const UltraSpace& s, const std::vector<int>& g,
                          const WoollySubtree& w) {
  if (!same_ambient(s, w.space)) throw DomainError("AmbientMismatch");
  if (static_cast<int>(g.size()) != s.n())
    throw DomainError("NotIsometric", {{"reason", "size mismatch"}});
  for (int x = 0; x < s.n(); ++x) {
    if (g[x] < 0) continue;
    if (g[x] >= s.n()) throw DomainError("NotIsometric", {{"point", s.labels[x]}});
    for (int y = 0; y < s.n(); ++y) {
      if (g[y] < 0) continue;
      if (s.d(g[x], g[y]) != s.d(x, y))
        throw DomainError("NotIsometric", {{"points", {s.labels[x], s.labels[y]}}});
    }
  }
  GammaElement out;
  out.dom = w;
  for (const auto& ball : w.balls) {
    int known = -1;
    for (const int y : ball_points(s, ball))
      if (g[y] >= 0) {
        known = y;
        break;
      }
    if (known < 0) throw DomainError("InsufficientData", ball_json(s, ball));
    out.images.push_back(canonical_ball(s, {ball.kind, g[known], ball.radius}));
  }
  validate_gamma(out);
  return out;
}

}  // namespace ultracat
