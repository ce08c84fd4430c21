#ifndef BERK_JSON_IO_HPP
#define BERK_JSON_IO_HPP

#include <json.hpp>

#include "berk/cousin.hpp"
#include "berk/line.hpp"
#include "berk/series.hpp"
#include "berk/spectrum.hpp"
#include "berk/weierstrass.hpp"

namespace berk {

using json = nlohmann::json;

/* Stable JSON encodings: rationals as "num/den" strings, places as
 * "p:2" | "inf" | "triv", magnitudes as factor lists. Decoders validate
 * and throw precondition_error with a field path on junk.
 */

json to_json(const rat& q);
rat rat_from_json(const json& j, const std::string& path);

json to_json(const ext_rat& e);
ext_rat ext_rat_from_json(const json& j, const std::string& path);

json to_json(const place& p);
place place_from_json(const json& j, const std::string& path);

json to_json(const base_point& b);
base_point base_point_from_json(const json& j, const std::string& path);

json to_json(const magnitude& m);
magnitude magnitude_from_json(const json& j, const std::string& path);

json to_json(const star_compact& V);
star_compact star_compact_from_json(const json& j, const std::string& path);

json to_json(const poly_q& P);
poly_q poly_from_json(const json& j, const std::string& path);

json to_json(const fiber_point& x);
fiber_point fiber_point_from_json(const json& j, const std::string& path);

json to_json(const lemniscate_region& R);
lemniscate_region region_from_json(const json& j, const std::string& path);

json to_json(const series_context& c);
series_context series_context_from_json(const json& j, const std::string& path);

json to_json(const disk_element& f);
disk_element disk_element_from_json(const json& j, const std::string& path);

// default window applied when a disk element payload omits "window"
extern long disk_element_default_window;

json to_json(const branch_segment& s);

json to_json(const split_result& s);
json to_json(const division_result& d);
json to_json(const rat_matrix& m);
rat_matrix matrix_from_json(const json& j, const std::string& path);

} // namespace berk

#endif
