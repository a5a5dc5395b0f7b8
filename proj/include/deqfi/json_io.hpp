#pragma once

#include <string>

#include "json.hpp"

#include "deqfi/channels.hpp"
#include "deqfi/classify.hpp"
#include "deqfi/hamming.hpp"
#include "deqfi/states.hpp"

namespace deqfi::io {

using json = nlohmann::json;

// Wire formats. A complex entry is a [re, im] pair, a matrix is a nested
// array of rows of such pairs.
//   state:   { "n": int, "rho":   [[[re,im], ...], ...] }
//   channel: { "n": int, "kraus": [matrix, ...] }
//   choi:    { "n": int, "choi":  matrix }

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const json& j, double tol = default_tol());

json channel_to_json(const KrausChannel& ch);
/// Validates trace preservation and Choi positivity after deserialization.
KrausChannel channel_from_json(const json& j, double tol = default_tol());

json choi_to_json(const ChoiMatrix& choi);

json verdict_to_json(const ClassVerdict& v);
json hierarchy_to_json(const HierarchyReport& rep);

json hdf_to_json(const HDFunction& f);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace deqfi::io
