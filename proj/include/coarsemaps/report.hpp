#pragma once

#include "json.hpp"

#include "coarsemaps/coarse.hpp"
#include "coarsemaps/normalq.hpp"

// Deterministic CSV and JSON renderings of profiles and witness reports.
// Elements are serialized with the same literal syntax the parsers accept.

namespace coarsemaps {

using ordered_json = nlohmann::ordered_json;

// Header kind,radius,set_size,max_norm,mode; one row per radius.
std::string profile_csv(const DefectProfile& prof);

ordered_json profile_json(const DefectProfile& prof);
ordered_json witness_json(const WitnessReport& rep);
ordered_json normality_json(const NormalityReport& rep);
ordered_json elems_json(const std::vector<Elem>& elems);

}  // namespace coarsemaps
