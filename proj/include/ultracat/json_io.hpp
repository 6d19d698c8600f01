#pragma once

#include "ultracat/amalgam.hpp"
#include "ultracat/dendro.hpp"
#include "ultracat/embed.hpp"
#include "ultracat/endsemi.hpp"
#include "ultracat/reps.hpp"
#include "ultracat/urysohn.hpp"
#include "ultracat/woolly.hpp"

#include <json.hpp>
#include <string>
#include <vector>

namespace ultracat {

// Exact rationals travel as [numerator, denominator]; a bare integer is
// accepted on input.  Radii may also be the string "inf".
nlohmann::json rat_to_json(const Rat& r);
Rat rat_from_json(const nlohmann::json& j);
nlohmann::json ext_to_json(const ExtRat& r);
ExtRat ext_from_json(const nlohmann::json& j);

nlohmann::json lambda_to_json(const LambdaSpec& l);
LambdaSpec lambda_from_json(const nlohmann::json& j);

// { "labels": [...], "dist": [ rows of [num,den] ], "lambda": {...} }
nlohmann::json space_to_json(const UltraSpace& s);
UltraSpace space_from_json(const nlohmann::json& j);

// nested nodes { "height": [num,den], "members": [labels], "children": [...] }
nlohmann::json dendro_to_json(const UltraSpace& s, const Dendrogram& t);

// { "source": space, "target": space, "delta": [ rows ] }
nlohmann::json morphism_to_json(const Morphism& m);
Morphism morphism_from_json(const nlohmann::json& j);

// { "lambdas": [ one rational per source label, in label order ] }
nlohmann::json near_unit_to_json(const NearUnit& z);
NearUnit near_unit_from_json(const UltraSpace& source, const nlohmann::json& j);

// per irrep: { orbit_code, stabilizer_order, nu_name, nu_character, dim }
nlohmann::json census_to_json(const std::vector<CensusEntry>& entries);

// { "support": [ [lambda_num, lambda_den, value], ... ] }
nlohmann::json nguyen_to_json(const NguyenPoint& w);
NguyenPoint nguyen_from_json(const nlohmann::json& j);
nlohmann::json nguyen_list_to_json(const std::vector<NguyenPoint>& ws);
std::vector<NguyenPoint> nguyen_list_from_json(const nlohmann::json& j);

// { "kind": "c"|"o", "radius": [num,den], "nu": support rows }
nlohmann::json model_ball_to_json(const ModelBall& b);
ModelBall model_ball_from_json(const nlohmann::json& j);

// move list; each move tagged { "kind": "theta"|"swap"|"map", ... }
nlohmann::json isometry_to_json(const ModelIsometry& g);
ModelIsometry isometry_from_json(const nlohmann::json& j);

// coordinates as sparse [axis, [num,den]] pairs per point
nlohmann::json embedding_to_json(const EmbeddingResult& e);
nlohmann::json gram_to_json(const GramMatrix& g);
nlohmann::json psd_to_json(const PsdCertificate& c);

nlohmann::json cmatrix_to_json(const CMatrix& m);

// { "kind": "c"|"o", "center": label, "radius": [num,den] | "inf" }
nlohmann::json finite_ball_to_json(const UltraSpace& s, const FiniteBall& b);
FiniteBall finite_ball_from_json(const UltraSpace& s, const nlohmann::json& j);

// { "balls": [closed and whole-space members], "germs": [ {vertex, coordinate} ] };
// a germ is an open ball of finite radius, keyed by its enclosing vertex ball
// and the label of a member picking the branch below it
nlohmann::json subtree_to_json(const WoollySubtree& w);
WoollySubtree subtree_from_json(const UltraSpace& s, const nlohmann::json& j);

// file helpers; FileError on unreadable paths, ParseError on bad JSON
nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ultracat
