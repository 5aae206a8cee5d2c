#pragma once

#include <json.hpp>

#include "smf/mumford.hpp"
#include "smf/superconformal.hpp"

namespace smf::io {

using nlohmann::json;

// Element form: [{"coeff": "p/q", "gens": [i1 < i2 < ...]}, ...]; the empty
// gens array is the body term.  Containers carry the generator count; when a
// container omits "num_generators" it is inferred as 1 + the largest index.
json element_to_json(const GrassmannElement& element);
GrassmannElement element_from_json(const json& j, int num_generators);

json matrix_to_json(const SuperMatrix& matrix);
SuperMatrix matrix_from_json(const json& j);

json series_to_json(const SuperSeries& series);
SuperSeries series_from_json(const json& j, int num_generators);
// Standalone form with its own generator context.
SuperSeries series_from_json(const json& j);

json change_to_json(const CoordinateChange& change);
CoordinateChange change_from_json(const json& j);

json oneform_to_json(const OneFormLocal& form);

json ramond_input_to_json(const RamondInput& input);
RamondInput ramond_input_from_json(const json& j);

json ns_input_to_json(const NSInput& input);
NSInput ns_input_from_json(const json& j);

json result_to_json(const MumfordFormResult& result);

}  // namespace smf::io
