#pragma once

// JSON encodings. Rationals travel as "p/q" strings (or "p" when integral);
// polynomial term lists are written canonical and reduced again on load.

#include "bundle_forge/bundles.hpp"
#include "bundle_forge/exact_ring.hpp"
#include "bundle_forge/forms.hpp"
#include "bundle_forge/kets.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace bundle_forge::io {

using Json = nlohmann::json;

Json to_json(const XPoly& p);
Json to_json(const ZPoly& p);
/// Throws InvalidInput on a wrong variable list, bad exponents or bad rationals.
XPoly xpoly_from_json(const Json& j);
ZPoly zpoly_from_json(const Json& j);

/// {"vars":[...],"components":[{"deg":d,"basis":"dx1^dx2","coeff":poly},...]}.
/// x 2-forms use the cyclic basis dx1^dx2, dx2^dx3, dx3^dx1.
Json to_json(const XForm& w);
Json to_json(const ZForm& w);
XForm xform_from_json(const Json& j);
ZForm zform_from_json(const Json& j);

/// {"basis":"dvol","coeff":poly}.
Json to_json(const SphereTwoForm& w);
SphereTwoForm sphere_form_from_json(const Json& j);

Json to_json(const EquivariantKet& k);
EquivariantKet ket_from_json(const Json& j);

Json to_json(const WeightedProjector& p);
WeightedProjector projector_from_json(const Json& j);

/// {"row_weights":[...],"col_weights":[...],"core":[[poly,...],...]}.
Json to_json(const WeightedMatrix& m);
WeightedMatrix weighted_matrix_from_json(const Json& j);

Json to_json(const AxiomReport& a);
Json to_json(const ChernReport& r);

/// {"n":N,"entries":[[{"re":..,"im":..},...],...]} with decimal floats.
Eigen::MatrixXcd gauge_matrix_from_json(const Json& j);
Json gauge_matrix_to_json(const Eigen::MatrixXcd& g);

}  // namespace bundle_forge::io
