#include "ultracat/space.hpp"

#include "ultracat/error.hpp"

#include <algorithm>
#include <set>

namespace ultracat {

int UltraSpace::index_of(const std::string& label) const {
  for (int i = 0; i < n(); ++i)
    if (labels[i] == label) return i;
  return -1;
}

void validate_lambda(const LambdaSpec& l) {
  for (size_t i = 0; i < l.values.size(); ++i) {
    if (l.values[i] <= 0)
      throw DomainError("InvalidLambda", {{"reason", "values must be positive"}});
    if (i > 0 && !(l.values[i - 1] < l.values[i]))
      throw DomainError("InvalidLambda", {{"reason", "values must be strictly ascending"}});
  }
  for (const auto& v : l.left_limits)
    if (!l.contains(v))
      throw DomainError("InvalidLambda",
                        {{"reason", "left_limits must be listed values"}, {"value", rat_str(v)}});
  if (l.inf_left_limit && !l.unbounded)
    throw DomainError("InvalidLambda", {{"reason", "infinite left limit requires unbounded"}});
}

std::variant<UltraSpace, Violation> validate_ultrametric(std::vector<std::string> labels,
                                                         std::vector<Rat> matrix) {
  const int n = static_cast<int>(labels.size());
  if (matrix.size() != static_cast<size_t>(n) * n)
    throw DomainError("ShapeMismatch", {{"reason", "matrix is not n x n"}});
  auto at = [&](int i, int j) -> const Rat& { return matrix[static_cast<size_t>(i) * n + j]; };

  for (int i = 0; i < n; ++i)
    if (at(i, i) != 0) return Violation{"NonzeroDiagonal", i, i, -1};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (at(i, j) != at(j, i)) return Violation{"NonSymmetric", i, j, -1};
      if (at(i, j) <= 0) return Violation{"NonPositive", i, j, -1};
    }
  // lexicographically first violating ordered triple
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (at(i, k) > std::max(at(i, j), at(j, k))) return Violation{"TriangleViolation", i, j, k};
      }

  UltraSpace s;
  s.labels = std::move(labels);
  s.dist = std::move(matrix);
  return s;
}

UltraSpace make_space(std::vector<std::string> labels, std::vector<Rat> matrix,
                      std::optional<LambdaSpec> lambda) {
  if (labels.empty()) throw DomainError("EmptySpace");
  {
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw DomainError("DuplicateLabels");
  }
  const std::vector<std::string> names = labels;
  auto r = validate_ultrametric(std::move(labels), std::move(matrix));
  if (std::holds_alternative<Violation>(r)) {
    const auto& v = std::get<Violation>(r);
    nlohmann::json detail{{"i", v.i}, {"j", v.j}, {"k", v.k}};
    auto points = nlohmann::json::array();
    for (int idx : {v.i, v.j, v.k})
      if (idx >= 0) points.push_back(names[static_cast<size_t>(idx)]);
    detail["points"] = std::move(points);
    throw DomainError(v.kind, detail);
  }
  UltraSpace s = std::get<UltraSpace>(std::move(r));
  if (lambda) {
    validate_lambda(*lambda);
    for (const auto& v : spectrum(s))
      if (!lambda->contains(v))
        throw DomainError("SpectrumViolation", {{"distance", rat_str(v)}});
    s.lambda = std::move(lambda);
  }
  return s;
}

std::vector<Rat> spectrum(const UltraSpace& s) {
  std::set<Rat> vals;
  for (int i = 0; i < s.n(); ++i)
    for (int j = i + 1; j < s.n(); ++j) vals.insert(s.d(i, j));
  return {vals.begin(), vals.end()};
}

std::vector<std::vector<int>> ball_partition(const UltraSpace& s, const Rat& r, BallKind kind) {
  const int n = s.n();
  std::vector<int> block(n, -1);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (block[i] >= 0) continue;
    out.emplace_back();
    const int b = static_cast<int>(out.size()) - 1;
    for (int j = i; j < n; ++j) {
      if (block[j] >= 0) continue;
      const bool in = (kind == BallKind::closed) ? (s.d(i, j) <= r) : (s.d(i, j) < r);
      if (in) {
        block[j] = b;
        out[b].push_back(j);
      }
    }
  }
  return out;
}

UltraSpace level_quotient(const UltraSpace& s, const Rat& h) {
  if (h <= 0) throw DomainError("InvalidHeight", {{"h", rat_str(h)}});
  auto blocks = ball_partition(s, h, BallKind::closed);
  const int m = static_cast<int>(blocks.size());
  UltraSpace q;
  // quotient distances may leave the declared spectrum, so no lambda is attached
  for (const auto& b : blocks) q.labels.push_back(s.labels[b.front()]);
  q.dist.assign(static_cast<size_t>(m) * m, Rat(0));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      Rat v = s.d(blocks[a].front(), blocks[b].front()) - h;
      q.d(a, b) = v;
      q.d(b, a) = v;
    }
  return q;
}

UltraSpace restrict_space(const UltraSpace& s, const std::vector<int>& idx) {
  UltraSpace r;
  r.lambda = s.lambda;
  const int m = static_cast<int>(idx.size());
  for (int i : idx) r.labels.push_back(s.labels[i]);
  r.dist.assign(static_cast<size_t>(m) * m, Rat(0));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) r.d(a, b) = s.d(idx[a], idx[b]);
  return r;
}

ExtRat isolation(const UltraSpace& s, int x) {
  if (s.n() == 1) return ExtRat::infinity();
  Rat best;
  bool first = true;
  for (int j = 0; j < s.n(); ++j) {
    if (j == x) continue;
    if (first || s.d(x, j) < best) {
      best = s.d(x, j);
      first = false;
    }
  }
  return ExtRat(best);
}

bool is_isometry(const UltraSpace& s, const std::vector<int>& perm) {
  const int n = s.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (s.d(i, j) != s.d(perm[i], perm[j])) return false;
  return true;
}

}  // namespace ultracat
