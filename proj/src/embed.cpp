#include "ultracat/embed.hpp"

#include "ultracat/dendro.hpp"
#include "ultracat/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ultracat {

namespace {

Rat pow_int(const Rat& s, long long k) {
  Rat r(1);
  for (long long i = 0; i < k; ++i) r *= s;
  return r;
}

bool is_integer(const Rat& q) { return boost::multiprecision::denominator(q) == 1; }

// eigenvalues of a symmetric matrix by cyclic Jacobi rotations
std::vector<double> sym_eigenvalues(std::vector<double> a, int n) {
  const auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
  double scale = 0.0;
  for (const double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off = std::max(off, std::abs(at(i, j)));
    if (off <= 1e-14 * scale) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) <= 1e-18 * scale) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<size_t>(i)] = at(i, i);
  return eig;
}

}  // namespace

EmbeddingResult tree_embedding(const UltraSpace& x, MetricMode mode) {
  const int n = x.n();
  UltraSpace base = x;
  if (mode == MetricMode::squared) {
    std::vector<Rat> sq(x.dist.size());
    for (size_t i = 0; i < x.dist.size(); ++i) sq[i] = x.dist[i] * x.dist[i];
    base = make_space(x.labels, std::move(sq));
  }

  const Dendrogram tree = build_tree(base);
  EmbeddingResult out;
  // one axis per non-root node, weighted by half the climb to its parent
  std::vector<int> axis_of_node(tree.nodes.size(), -1);
  for (size_t id = 0; id < tree.nodes.size(); ++id) {
    if (static_cast<int>(id) == tree.root) continue;
    axis_of_node[id] = out.dim++;
    const Rat climb = tree.at(tree.at(static_cast<int>(id)).parent).height -
                      tree.at(static_cast<int>(id)).height;
    out.axis_weights.push_back(climb / 2);
  }

  out.coordinates.assign(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(out.dim)));
  for (int i = 0; i < n; ++i)
    for (int v = tree.leaf_of_point[static_cast<size_t>(i)]; v != tree.root;
         v = tree.at(v).parent)
      out.coordinates[static_cast<size_t>(i)][static_cast<size_t>(axis_of_node[v])] = 1;

  out.sq_dist.assign(static_cast<size_t>(n) * n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat s(0);
      for (int k = 0; k < out.dim; ++k) {
        const Rat diff = out.coordinates[static_cast<size_t>(i)][static_cast<size_t>(k)] -
                         out.coordinates[static_cast<size_t>(j)][static_cast<size_t>(k)];
        s += out.axis_weights[static_cast<size_t>(k)] * diff * diff;
      }
      out.sq_dist[static_cast<size_t>(i) * n + j] = s;
      if (s != base.d(i, j)) throw std::logic_error("embedding does not realize the metric");
    }
  return out;
}

Rat embedding_dot(const EmbeddingResult& e, int x, int y, int z, int w) {
  Rat s(0);
  for (int k = 0; k < e.dim; ++k) {
    const auto& ck = [&](int p) -> const Rat& {
      return e.coordinates[static_cast<size_t>(p)][static_cast<size_t>(k)];
    };
    s += e.axis_weights[static_cast<size_t>(k)] * (ck(x) - ck(y)) * (ck(z) - ck(w));
  }
  return s;
}

GramMatrix schoenberg_gram(const UltraSpace& x, const Rat& s) {
  if (!(Rat(0) < s && s < Rat(1)))
    throw DomainError("SOutOfRange", {{"s", rat_str(s)}});
  const int n = x.n();
  GramMatrix g;
  g.n = n;
  g.exact = true;
  for (const auto& d : x.dist) g.exact = g.exact && is_integer(d);
  g.num.resize(static_cast<size_t>(n) * n);
  if (g.exact) g.rat.resize(static_cast<size_t>(n) * n);
  const double sf = static_cast<double>(s);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const size_t idx = static_cast<size_t>(i) * n + j;
      if (g.exact) {
        g.rat[idx] = pow_int(s, x.dist[idx].convert_to<long long>());
        g.num[idx] = static_cast<double>(g.rat[idx]);
      } else {
        g.num[idx] = std::pow(sf, static_cast<double>(x.dist[idx]));
      }
    }
  return g;
}

PsdCertificate psd_check(const GramMatrix& g) {
  const int n = g.n;
  PsdCertificate cert;
  cert.exact = g.exact;
  if (g.exact) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j)
        if (g.rat[static_cast<size_t>(i) * n + j] != g.rat[static_cast<size_t>(j) * n + i])
          throw DomainError("NotSymmetric");
    std::vector<Rat> a = g.rat;
    const auto at = [&](int i, int j) -> Rat& { return a[static_cast<size_t>(i) * n + j]; };
    cert.psd = true;
    for (int k = 0; k < n; ++k) {
      const Rat piv = at(k, k);
      cert.pivots.push_back(piv);
      if (piv < 0) {
        cert.psd = false;
        return cert;
      }
      if (piv == 0) {
        // a vanishing pivot needs a vanishing row to stay semidefinite
        for (int j = k + 1; j < n; ++j)
          if (at(k, j) != 0) {
            cert.psd = false;
            return cert;
          }
        continue;
      }
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < n; ++j) at(i, j) -= at(i, k) * at(k, j) / piv;
    }
    return cert;
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(g.num[static_cast<size_t>(i) * n + j] -
                   g.num[static_cast<size_t>(j) * n + i]) > 1e-12)
        throw DomainError("NotSymmetric");
  const auto eig = sym_eigenvalues(g.num, n);
  cert.min_eig = eig.empty() ? 0.0 : eig.front();
  cert.scale = 0.0;
  for (const double e : eig) {
    cert.min_eig = std::min(cert.min_eig, e);
    cert.scale = std::max(cert.scale, std::abs(e));
  }
  cert.psd = cert.min_eig >= -1e-9 * std::max(cert.scale, 1e-300);
  return cert;
}

}  // namespace ultracat
