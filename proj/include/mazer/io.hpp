#pragma once

#include <string>

#include <json.hpp>

#include "mazer/batch.hpp"
#include "mazer/dressed.hpp"
#include "mazer/mode_profile.hpp"
#include "mazer/observables.hpp"

namespace mazer {

/// "%.17g" rendering used by every CSV emitter, enough digits to round-trip
/// a double exactly.
std::string fmt17(double v);

/// Profile descriptor:
/// {"mode": "mesa"|"sech2"|"gaussian"|"sin"|"expr", "kappa_L": float,
///  "width": float?, "lobes": int?, "expr": string?}
ModeProfile profile_from_json(const nlohmann::json& j);
nlohmann::json profile_to_json(const ModeProfile& profile);

/// State file:
/// {"form": "product"|"joint", "atom": [re,im,re,im]?, "field": [[re,im],...]?,
///  "a": [[re,im],...]?, "b": [[re,im],...]?}
PureStateSpec state_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const PureStateSpec& state);

nlohmann::json coords_to_json(const DressedCoordinates& coords);

nlohmann::json report_to_json(const ObservablesReport& report);

/// Per-level CSV: columns n, re_K, im_K, Delta, delta_P.
std::string report_per_n_csv(const ObservablesReport& report);

/// Amplitude table CSV: columns n, branch, k_over_kappa, re_r, im_r, re_t,
/// im_t, defect; rows in table order.
std::string amplitude_table_csv(const AmplitudeTable& table);

/// Read a whole file / write a string as a file (binary mode, LF endings
/// preserved). Throws IoError on failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

} // namespace mazer
