#include "ultracat/cli.hpp"

#include "ultracat/amalgam.hpp"
#include "ultracat/cosets.hpp"
#include "ultracat/dendro.hpp"
#include "ultracat/embed.hpp"
#include "ultracat/endsemi.hpp"
#include "ultracat/error.hpp"
#include "ultracat/json_io.hpp"
#include "ultracat/reps.hpp"
#include "ultracat/selftest.hpp"
#include "ultracat/urysohn.hpp"
#include "ultracat/woolly.hpp"

#include <CLI11.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace ultracat {

namespace {

using nlohmann::json;

// accepts "3", "1/2", and decimal forms like "0.3", all as exact rationals
Rat parse_rat(const std::string& text) {
  using boost::multiprecision::cpp_int;
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos)
      return Rat(cpp_int(text.substr(0, slash)), cpp_int(text.substr(slash + 1)));
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
      cpp_int den = 1;
      for (size_t i = dot + 1; i < text.size(); ++i) den *= 10;
      return Rat(cpp_int(text.substr(0, dot) + text.substr(dot + 1)), den);
    }
    return Rat(cpp_int(text));
  } catch (const DomainError&) {
    throw;
  } catch (...) {
    throw DomainError("ParseError", {{"what", "not a rational: " + text}});
  }
}

int label_index(const UltraSpace& s, const std::string& label) {
  for (int i = 0; i < s.n(); ++i)
    if (s.labels[static_cast<size_t>(i)] == label) return i;
  throw DomainError("UnknownLabel", {{"label", label}});
}

// "a=b,c=d" against the two sides' label lists
std::vector<std::pair<int, int>> parse_overlap(const UltraSpace& x, const UltraSpace& y,
                                               const std::string& text) {
  std::vector<std::pair<int, int>> out;
  size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string piece = text.substr(pos, comma - pos);
    const auto eq = piece.find('=');
    if (eq == std::string::npos)
      throw DomainError("ParseError", {{"what", "overlap entry needs left=right: " + piece}});
    out.push_back({label_index(x, piece.substr(0, eq)), label_index(y, piece.substr(eq + 1))});
    pos = comma + 1;
  }
  return out;
}

UltraSpace load_space(const std::string& path) { return space_from_json(load_json_file(path)); }

json rat_row(const std::vector<Rat>& row) {
  json out = json::array();
  for (const auto& v : row) out.push_back(rat_to_json(v));
  return out;
}

struct Output {
  std::string path;  // empty = stdout
  void emit(const std::string& text) const {
    if (path.empty())
      std::cout << text;
    else
      write_text_file(path, text);
  }
  void emit_json(const json& j) const { emit(j.dump(2) + "\n"); }
};

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"exact toolkit for ultrametric spaces: trees, amalgams, morphism "
               "algebra, representations, embeddings, and the countable model"};
  app.require_subcommand(1);

  Output out;

  std::string space_path, left_path, right_path, overlap_text;
  std::string lambda_path, base_text, meet_path, subtree_path;
  std::string x_path, y_path, z_path, g1_path, g2_path, filter;
  long long jmax = 64;
  bool squared = false, full = false;
  std::uint64_t seed = 0;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out.path, "write the report here instead of stdout");
  };

  auto* validate = app.add_subcommand("validate", "check a distance matrix file");
  validate->add_option("space", space_path, "space file")->required();
  add_out(validate);

  auto* tree = app.add_subcommand("tree", "print the merge tree of a space");
  tree->add_option("space", space_path, "space file")->required();
  add_out(tree);

  auto* amalgam = app.add_subcommand("amalgam", "glue two spaces along an overlap");
  amalgam->add_option("left", left_path, "left space file")->required();
  amalgam->add_option("right", right_path, "right space file")->required();
  amalgam->add_option("--overlap", overlap_text, "pairs left=right, comma separated");
  add_out(amalgam);

  auto* compose_cmd = app.add_subcommand("compose", "compose two coset matrices");
  compose_cmd->add_option("first", left_path, "morphism applied first")->required();
  compose_cmd->add_option("second", right_path, "morphism applied second")->required();
  add_out(compose_cmd);

  auto* endo = app.add_subcommand("endo", "enumerate the endomorphisms of a space");
  endo->add_option("space", space_path, "space file with an attached level set")->required();
  endo->add_flag("--full", full, "list every coset matrix, not just the summary");
  add_out(endo);

  auto* census = app.add_subcommand("census", "irreducible representation census");
  census->add_option("--space", space_path, "space file")->required();
  census->add_option("--lambda", lambda_path, "level set file overriding the space's own");
  add_out(census);

  auto* embed = app.add_subcommand("embed", "isometric coordinates in a weighted sequence space");
  embed->add_option("space", space_path, "space file")->required();
  embed->add_flag("--squared", squared, "realize squared distances instead");
  add_out(embed);

  auto* gram = app.add_subcommand("gram", "Schoenberg matrix and its positivity certificate");
  gram->add_option("space", space_path, "space file")->required();
  gram->add_option("--base", base_text, "base of the exponential kernel, in (0,1)")->required();
  add_out(gram);

  auto* coset = app.add_subcommand("coset", "coset matrix of a partial map between configurations");
  coset->add_option("--x", x_path, "source configuration file")->required();
  coset->add_option("--z", z_path, "target configuration file")->required();
  coset->add_option("--gx", g1_path, "moved copy of the source (defaults to the source)");
  add_out(coset);

  auto* theta = app.add_subcommand("theta", "stabilization of the translated coset sequence");
  theta->add_option("--x", x_path, "source configuration file")->required();
  theta->add_option("--y", y_path, "middle configuration file")->required();
  theta->add_option("--z", z_path, "target configuration file")->required();
  theta->add_option("--g1", g1_path, "outer isometry file");
  theta->add_option("--g2", g2_path, "inner isometry file");
  theta->add_option("--jmax", jmax, "largest translation index tried")->capture_default_str();
  add_out(theta);

  auto* woolly = app.add_subcommand("woolly", "canonicalize ball families over a finite space");
  woolly->add_option("--space", space_path, "ambient space file")->required();
  woolly->add_option("subtree", subtree_path, "ball family file")->required();
  woolly->add_option("--meet", meet_path, "second family to intersect with");
  add_out(woolly);

  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_option("--filter", filter, "only criteria whose name contains this");
  auto* seed_opt = selftest->add_option("--seed", seed, "base seed for the randomized suites");
  add_out(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) {
      const auto s = load_space(space_path);
      json spec = json::array();
      for (const auto& v : spectrum(s)) spec.push_back(rat_to_json(v));
      out.emit_json({{"ok", true},
                     {"points", s.n()},
                     {"labels", s.labels},
                     {"spectrum", spec},
                     {"levels_attached", s.lambda.has_value()}});
    } else if (tree->parsed()) {
      const auto s = load_space(space_path);
      out.emit_json({{"tree", dendro_to_json(s, build_tree(s))}});
    } else if (amalgam->parsed()) {
      const auto x = load_space(left_path);
      const auto y = load_space(right_path);
      const auto am = amalgamate(x, y, parse_overlap(x, y, overlap_text));
      out.emit_json({{"space", space_to_json(am.space)},
                     {"from_left", am.from_x},
                     {"from_right", am.from_y}});
    } else if (compose_cmd->parsed()) {
      const auto p = morphism_from_json(load_json_file(left_path));
      const auto q = morphism_from_json(load_json_file(right_path));
      const auto pq = compose(p, q);
      out.emit_json({{"morphism", morphism_to_json(pq)}, {"canonical", canonical_key(pq)}});
    } else if (endo->parsed()) {
      const auto s = load_space(space_path);
      const auto elems = all_endomorphisms(s);
      int idem = 0, near_auto = 0;
      json rows = json::array();
      for (const auto& e : elems) {
        idem += is_selfadjoint_idempotent(e) ? 1 : 0;
        near_auto += std::holds_alternative<NearAutomorphism>(classify_endo(e)) ? 1 : 0;
        if (full) rows.push_back(rat_row(delta(e)));
      }
      json report{{"count", elems.size()},
                  {"isometries", isometry_group(s).size()},
                  {"near_automorphisms", near_auto},
                  {"idempotents", idem}};
      if (full) report["elements"] = std::move(rows);
      out.emit_json(report);
    } else if (census->parsed()) {
      auto s = load_space(space_path);
      if (!lambda_path.empty()) {
        auto l = lambda_from_json(load_json_file(lambda_path));
        s = make_space(s.labels, s.dist, std::move(l));
      }
      const auto entries = irrep_census(s);
      out.emit_json({{"count", entries.size()}, {"irreps", census_to_json(entries)}});
    } else if (embed->parsed()) {
      const auto s = load_space(space_path);
      out.emit_json(
          embedding_to_json(tree_embedding(s, squared ? MetricMode::squared : MetricMode::original)));
    } else if (gram->parsed()) {
      const auto s = load_space(space_path);
      const Rat base = parse_rat(base_text);
      const auto g = schoenberg_gram(s, base);
      out.emit_json({{"base", rat_to_json(base)},
                     {"gram", gram_to_json(g)},
                     {"certificate", psd_to_json(psd_check(g))}});
    } else if (coset->parsed()) {
      const auto xs = nguyen_list_from_json(load_json_file(x_path));
      const auto zs = nguyen_list_from_json(load_json_file(z_path));
      const auto gxs = g1_path.empty() ? xs : nguyen_list_from_json(load_json_file(g1_path));
      const auto m = double_coset(xs, zs, gxs);
      out.emit_json({{"morphism", morphism_to_json(m)}, {"canonical", canonical_key(m)}});
    } else if (theta->parsed()) {
      const auto xs = nguyen_list_from_json(load_json_file(x_path));
      const auto ys = nguyen_list_from_json(load_json_file(y_path));
      const auto zs = nguyen_list_from_json(load_json_file(z_path));
      ModelIsometry g1, g2;
      if (!g1_path.empty()) g1 = isometry_from_json(load_json_file(g1_path));
      if (!g2_path.empty()) g2 = isometry_from_json(load_json_file(g2_path));
      const auto res = theta_stabilization(xs, ys, zs, g1, g2, jmax);
      out.emit_json({{"stabilizes_at", res.J}, {"limit", morphism_to_json(res.limit)}});
    } else if (woolly->parsed()) {
      const auto s = load_space(space_path);
      const auto w = subtree_from_json(s, load_json_file(subtree_path));
      json report{{"subtree", subtree_to_json(w)}, {"balls", w.balls.size()}};
      if (!meet_path.empty()) {
        const auto other = subtree_from_json(s, load_json_file(meet_path));
        report["meet"] = subtree_to_json(subtree_intersection(w, other));
      }
      out.emit_json(report);
    } else if (selftest->parsed()) {
      if (seed_opt->count() == 0) {
        if (const char* env = std::getenv("ULTRACAT_SEED"))
          seed = std::strtoull(env, nullptr, 10);
      }
      const auto results = run_selftest(filter, seed);
      if (results.empty()) {
        std::cerr << "usage error: no criterion matches filter '" << filter << "'\n";
        return 2;
      }
      out.emit(selftest_report(results));
      for (const auto& r : results)
        if (!r.pass) return 1;
    }
    return 0;
  } catch (const DomainError& e) {
    std::cout << e.to_json().dump(2) << "\n";
    return 1;
  }
}

}  // namespace ultracat
