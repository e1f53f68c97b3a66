#pragma once

// JSON and CSV forms of the library's results.  Output is deterministic:
// no clocks, no host data, shortest round-trip decimal for doubles.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "frwave/bifurcation.hpp"
#include "frwave/development.hpp"
#include "frwave/field2d.hpp"
#include "frwave/galerkin.hpp"
#include "frwave/linearization.hpp"
#include "frwave/range.hpp"

namespace frwave::io {

using json = nlohmann::ordered_json;

json to_json(const bifurcation::WaveProfile& g);
/// Accepts the object written by to_json; residual gates are not re-run.
bifurcation::WaveProfile profile_from_json(const json& j);

json to_json(const linearization::NondegeneracyCertificate& c);
json to_json(const galerkin::OracleReport& r);
json to_json(const development::DevelopmentReport& r);
json to_json(const range::BifurcationSolve& s);
/// The field w itself is left to grid_csv.
json to_json(const range::RangeSolveReport& r);
json to_json(const range::SweepReport& r);

/// "t,x,u" rows on an nt x nx grid of [0, 2 pi) x [0, pi].
std::string grid_csv(const field2d::FourierSeries2D& u, int nt, int nx);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);
/// Hash of the compact dump of a config object, as 16 hex digits.
std::string config_hash(const json& config);

/// {"meta": {tool, version, config_hash, seed}, "config": config, "result": body}.
json stamp(const json& body, const json& config, std::uint64_t seed);

/// Cosine coefficients a_c, c < modes, of a function sampled at increasing
/// points of [0, pi] (trapezoid rule after linear interpolation to a fine
/// uniform grid).  a_0 is the mean.
std::vector<double> cosine_modes(const std::vector<double>& x, const std::vector<double>& y,
                                 int modes = 32);

}  // namespace frwave::io
