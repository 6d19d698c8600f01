#include "ultracat/json_io.hpp"

#include "ultracat/error.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ultracat {

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw DomainError("ParseError", {{"what", what}});
}

long long to_ll(const Rat& r, bool num) {
  const auto& part = num ? boost::multiprecision::numerator(r)
                         : boost::multiprecision::denominator(r);
  return part.template convert_to<long long>();
}

const nlohmann::json& need(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string need_label(const UltraSpace& s, const nlohmann::json& j) {
  if (!j.is_string()) parse_fail("point label must be a string");
  const std::string l = j.get<std::string>();
  if (s.index_of(l) < 0) parse_fail("unknown point label '" + l + "'");
  return l;
}

nlohmann::json complex_to_json(const std::complex<double>& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

nlohmann::json support_to_json(const std::map<Rat, long long>& support) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [lam, v] : support)
    rows.push_back({to_ll(lam, true), to_ll(lam, false), v});
  return rows;
}

std::map<Rat, long long> support_from_json(const nlohmann::json& j) {
  if (!j.is_array()) parse_fail("support must be an array of triples");
  std::map<Rat, long long> out;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 3)
      parse_fail("support row must be [lambda_num, lambda_den, value]");
    const long long den = row[1].get<long long>();
    if (den == 0) parse_fail("zero denominator");
    const Rat lam = Rat(row[0].get<long long>()) / Rat(den);
    const long long v = row[2].get<long long>();
    if (v != 0) out[lam] = v;
  }
  return out;
}

}  // namespace

nlohmann::json rat_to_json(const Rat& r) {
  return nlohmann::json::array({to_ll(r, true), to_ll(r, false)});
}

Rat rat_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    const long long den = j[1].get<long long>();
    if (den == 0) parse_fail("zero denominator");
    return Rat(j[0].get<long long>()) / Rat(den);
  }
  parse_fail("expected a rational as [num, den] or an integer");
}

nlohmann::json ext_to_json(const ExtRat& r) {
  if (r.is_inf()) return "inf";
  return rat_to_json(r.finite());
}

ExtRat ext_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ExtRat::infinity();
    parse_fail("expected [num, den] or \"inf\"");
  }
  return ExtRat(rat_from_json(j));
}

nlohmann::json lambda_to_json(const LambdaSpec& l) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : l.values) values.push_back(rat_to_json(v));
  nlohmann::json limits = nlohmann::json::array();
  for (const auto& v : l.left_limits) limits.push_back(rat_to_json(v));
  if (l.inf_left_limit) limits.push_back("inf");
  return {{"values", values},
          {"zero_is_limit", l.zero_is_limit},
          {"unbounded", l.unbounded},
          {"left_limits", limits}};
}

LambdaSpec lambda_from_json(const nlohmann::json& j) {
  LambdaSpec l;
  for (const auto& v : need(j, "values")) l.values.push_back(rat_from_json(v));
  l.zero_is_limit = j.value("zero_is_limit", false);
  l.unbounded = j.value("unbounded", false);
  if (j.contains("left_limits"))
    for (const auto& v : j.at("left_limits")) {
      if (v.is_string() && v.get<std::string>() == "inf")
        l.inf_left_limit = true;
      else
        l.left_limits.push_back(rat_from_json(v));
    }
  validate_lambda(l);
  return l;
}

nlohmann::json space_to_json(const UltraSpace& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < s.n(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < s.n(); ++k) row.push_back(rat_to_json(s.d(i, k)));
    rows.push_back(row);
  }
  nlohmann::json out = {{"labels", s.labels}, {"dist", rows}};
  if (s.lambda) out["lambda"] = lambda_to_json(*s.lambda);
  return out;
}

UltraSpace space_from_json(const nlohmann::json& j) {
  std::vector<std::string> labels;
  for (const auto& l : need(j, "labels")) {
    if (!l.is_string()) parse_fail("labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  const auto& rows = need(j, "dist");
  if (!rows.is_array() || rows.size() != labels.size())
    parse_fail("dist must have one row per label");
  std::vector<Rat> m;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != labels.size())
      parse_fail("dist rows must have one entry per label");
    for (const auto& e : row) m.push_back(rat_from_json(e));
  }
  std::optional<LambdaSpec> lambda;
  if (j.contains("lambda") && !j.at("lambda").is_null())
    lambda = lambda_from_json(j.at("lambda"));
  return make_space(std::move(labels), std::move(m), std::move(lambda));
}

nlohmann::json dendro_to_json(const UltraSpace& s, const Dendrogram& t) {
  auto emit = [&](auto&& self, int id) -> nlohmann::json {
    const auto& node = t.at(id);
    nlohmann::json members = nlohmann::json::array();
    for (int p : node.members) members.push_back(s.labels[static_cast<size_t>(p)]);
    nlohmann::json children = nlohmann::json::array();
    for (int c : node.children) children.push_back(self(self, c));
    return {{"height", rat_to_json(node.height)},
            {"members", members},
            {"children", children}};
  };
  return emit(emit, t.root);
}

nlohmann::json morphism_to_json(const Morphism& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int x = 0; x < m.source.n(); ++x) {
    nlohmann::json row = nlohmann::json::array();
    for (int y = 0; y < m.target.n(); ++y) row.push_back(rat_to_json(delta_at(m, x, y)));
    rows.push_back(row);
  }
  return {{"source", space_to_json(m.source)},
          {"target", space_to_json(m.target)},
          {"delta", rows}};
}

Morphism morphism_from_json(const nlohmann::json& j) {
  const UltraSpace source = space_from_json(need(j, "source"));
  const UltraSpace target = space_from_json(need(j, "target"));
  const auto& rows = need(j, "delta");
  if (!rows.is_array() || rows.size() != static_cast<size_t>(source.n()))
    parse_fail("delta must have one row per source point");
  std::vector<Rat> d;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != static_cast<size_t>(target.n()))
      parse_fail("delta rows must have one entry per target point");
    for (const auto& e : row) d.push_back(rat_from_json(e));
  }
  return morphism_from_delta(source, target, std::move(d));
}

nlohmann::json near_unit_to_json(const NearUnit& z) {
  nlohmann::json lambdas = nlohmann::json::array();
  for (const auto& l : z.lambdas) lambdas.push_back(rat_to_json(l));
  return {{"lambdas", lambdas}};
}

NearUnit near_unit_from_json(const UltraSpace& source, const nlohmann::json& j) {
  NearUnit z;
  z.space = source;
  for (const auto& l : need(j, "lambdas")) z.lambdas.push_back(rat_from_json(l));
  if (z.lambdas.size() != static_cast<size_t>(source.n()))
    parse_fail("lambdas must have one entry per source label");
  return z;
}

nlohmann::json census_to_json(const std::vector<CensusEntry>& entries) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json chars = nlohmann::json::array();
    for (const auto& c : e.nu_character) chars.push_back(complex_to_json(c));
    out.push_back({{"orbit_code", e.orbit_code},
                   {"stabilizer_order", e.stabilizer_order},
                   {"nu_name", e.nu_name},
                   {"nu_character", chars},
                   {"dim", e.dim}});
  }
  return out;
}

nlohmann::json nguyen_to_json(const NguyenPoint& w) {
  return {{"support", support_to_json(w.support)}};
}

NguyenPoint nguyen_from_json(const nlohmann::json& j) {
  NguyenPoint w;
  w.support = support_from_json(need(j, "support"));
  return w;
}

nlohmann::json nguyen_list_to_json(const std::vector<NguyenPoint>& ws) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& w : ws) out.push_back(nguyen_to_json(w));
  return out;
}

std::vector<NguyenPoint> nguyen_list_from_json(const nlohmann::json& j) {
  if (!j.is_array()) parse_fail("expected an array of points");
  std::vector<NguyenPoint> out;
  for (const auto& e : j) out.push_back(nguyen_from_json(e));
  return out;
}

nlohmann::json model_ball_to_json(const ModelBall& b) {
  return {{"kind", b.kind == BallKind::closed ? "c" : "o"},
          {"radius", rat_to_json(b.radius)},
          {"nu", support_to_json(b.nu)}};
}

ModelBall model_ball_from_json(const nlohmann::json& j) {
  ModelBall b;
  const std::string kind = need(j, "kind").get<std::string>();
  if (kind == "c")
    b.kind = BallKind::closed;
  else if (kind == "o")
    b.kind = BallKind::open;
  else
    parse_fail("ball kind must be \"c\" or \"o\"");
  b.radius = rat_from_json(need(j, "radius"));
  b.nu = support_from_json(need(j, "nu"));
  return b;
}

nlohmann::json isometry_to_json(const ModelIsometry& g) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& move : g)
    std::visit(
        [&](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, ThetaMove>) {
            out.push_back({{"kind", "theta"}, {"y", nguyen_list_to_json(m.y)}, {"j", m.j}});
          } else if constexpr (std::is_same_v<T, SwapMove>) {
            out.push_back({{"kind", "swap"},
                           {"b1", model_ball_to_json(m.b1)},
                           {"b2", model_ball_to_json(m.b2)}});
          } else {
            nlohmann::json pairs = nlohmann::json::array();
            for (const auto& [w, v] : m.pairs)
              pairs.push_back({nguyen_to_json(w), nguyen_to_json(v)});
            out.push_back({{"kind", "map"}, {"pairs", pairs}});
          }
        },
        move);
  return out;
}

ModelIsometry isometry_from_json(const nlohmann::json& j) {
  if (!j.is_array()) parse_fail("expected an array of moves");
  ModelIsometry g;
  for (const auto& e : j) {
    const std::string kind = need(e, "kind").get<std::string>();
    if (kind == "theta") {
      ThetaMove m;
      m.y = nguyen_list_from_json(need(e, "y"));
      m.j = need(e, "j").get<long long>();
      g.push_back(m);
    } else if (kind == "swap") {
      SwapMove m;
      m.b1 = model_ball_from_json(need(e, "b1"));
      m.b2 = model_ball_from_json(need(e, "b2"));
      g.push_back(m);
    } else if (kind == "map") {
      MapMove m;
      for (const auto& p : need(e, "pairs")) {
        if (!p.is_array() || p.size() != 2) parse_fail("map pairs must be [from, to]");
        m.pairs.push_back({nguyen_from_json(p[0]), nguyen_from_json(p[1])});
      }
      g.push_back(m);
    } else {
      parse_fail("move kind must be theta, swap, or map");
    }
  }
  return g;
}

nlohmann::json embedding_to_json(const EmbeddingResult& e) {
  nlohmann::json coords = nlohmann::json::array();
  for (const auto& point : e.coordinates) {
    nlohmann::json sparse = nlohmann::json::array();
    for (size_t k = 0; k < point.size(); ++k)
      if (point[k] != 0) sparse.push_back({k, rat_to_json(point[k])});
    coords.push_back(sparse);
  }
  nlohmann::json weights = nlohmann::json::array();
  for (const auto& w : e.axis_weights) weights.push_back(rat_to_json(w));
  const size_t n = e.coordinates.size();
  nlohmann::json dists = nlohmann::json::array();
  for (size_t i = 0; i < n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (size_t k = 0; k < n; ++k) row.push_back(rat_to_json(e.sq_dist[i * n + k]));
    dists.push_back(row);
  }
  return {{"dim", e.dim},
          {"axis_weights", weights},
          {"coordinates", coords},
          {"sq_dist", dists}};
}

nlohmann::json gram_to_json(const GramMatrix& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < g.n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < g.n; ++k) {
      const size_t idx = static_cast<size_t>(i) * g.n + k;
      if (g.exact)
        row.push_back(rat_to_json(g.rat[idx]));
      else
        row.push_back(g.num[idx]);
    }
    rows.push_back(row);
  }
  return {{"n", g.n}, {"exact", g.exact}, {"entries", rows}};
}

nlohmann::json psd_to_json(const PsdCertificate& c) {
  nlohmann::json out = {{"psd", c.psd}, {"exact", c.exact}};
  if (c.exact) {
    nlohmann::json pivots = nlohmann::json::array();
    for (const auto& p : c.pivots) pivots.push_back(rat_to_json(p));
    out["pivots"] = pivots;
  } else {
    out["min_eig"] = c.min_eig;
    out["scale"] = c.scale;
  }
  return out;
}

nlohmann::json cmatrix_to_json(const CMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < m.cols; ++k) row.push_back(complex_to_json(m.at(i, k)));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json finite_ball_to_json(const UltraSpace& s, const FiniteBall& b) {
  return {{"kind", b.kind == BallKind::closed ? "c" : "o"},
          {"center", s.labels[static_cast<size_t>(b.center)]},
          {"radius", ext_to_json(b.radius)}};
}

FiniteBall finite_ball_from_json(const UltraSpace& s, const nlohmann::json& j) {
  FiniteBall b;
  const std::string kind = need(j, "kind").get<std::string>();
  if (kind == "c")
    b.kind = BallKind::closed;
  else if (kind == "o")
    b.kind = BallKind::open;
  else
    parse_fail("ball kind must be \"c\" or \"o\"");
  b.center = s.index_of(need_label(s, need(j, "center")));
  b.radius = ext_from_json(need(j, "radius"));
  return b;
}

nlohmann::json subtree_to_json(const WoollySubtree& w) {
  const UltraSpace& s = w.space;
  nlohmann::json balls = nlohmann::json::array();
  nlohmann::json germs = nlohmann::json::array();
  for (const auto& b : w.balls) {
    if (b.kind == BallKind::open && !b.radius.is_inf()) {
      // a germ hangs below the vertex ball of the same radius
      const FiniteBall vertex =
          canonical_ball(s, {BallKind::closed, b.center, b.radius});
      germs.push_back(
          {{"vertex",
            {{"center", s.labels[static_cast<size_t>(vertex.center)]},
             {"radius", rat_to_json(b.radius.finite())}}},
           {"coordinate", s.labels[static_cast<size_t>(b.center)]}});
    } else {
      balls.push_back(finite_ball_to_json(s, b));
    }
  }
  return {{"balls", balls}, {"germs", germs}};
}

WoollySubtree subtree_from_json(const UltraSpace& s, const nlohmann::json& j) {
  std::set<FiniteBall> members;
  for (const auto& e : need(j, "balls"))
    members.insert(canonical_ball(s, finite_ball_from_json(s, e)));
  for (const auto& e : need(j, "germs")) {
    const auto& vertex = need(e, "vertex");
    const Rat radius = rat_from_json(need(vertex, "radius"));
    const int center = s.index_of(need_label(s, need(e, "coordinate")));
    const FiniteBall germ =
        canonical_ball(s, {BallKind::open, center, ExtRat(radius)});
    const FiniteBall v = canonical_ball(s, {BallKind::closed, center, ExtRat(radius)});
    if (s.labels[static_cast<size_t>(v.center)] !=
        need(vertex, "center").get<std::string>())
      parse_fail("germ coordinate does not lie under its vertex");
    members.insert(germ);
  }
  if (members.empty()) parse_fail("subtree has no members");
  WoollySubtree w;
  w.space = s;
  w.balls.assign(members.begin(), members.end());
  if (!subtree_eq(w, dilative_closure(s, w.balls)))
    parse_fail("ball family is not closed upward");
  return w;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("FileError", {{"path", path}});
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("ParseError", {{"path", path}, {"what", e.what()}});
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError("FileError", {{"path", path}});
  out << text;
  if (!out) throw DomainError("FileError", {{"path", path}});
}

}  // namespace ultracat
