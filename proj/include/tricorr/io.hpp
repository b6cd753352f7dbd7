#pragma once

// State-file loading and the small parsing helpers shared with the CLI.
//
// A state file is JSON holding either
//   {"amplitudes": [[re, im] x 8]}            a pure state, or
//   {"matrix": [[[re, im] x 8] x 8]}          a density matrix;
// a bare top-level array of 8 pairs (or 8x8 pairs) is also accepted.

#include <fstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "tricorr/complex_matrix.hpp"
#include "tricorr/states.hpp"

namespace tricorr {

using LoadedState = std::variant<PureState3Q, DensityMatrix3Q>;

namespace detail {

inline cplx parse_complex(const nlohmann::json& j) {
  if (j.is_number()) return cplx{j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return cplx{j[0].get<double>(), j[1].get<double>()};
  }
  throw std::invalid_argument("state file: complex entries must be numbers or [re, im] pairs");
}

inline PureState3Q amplitudes_from_json(const nlohmann::json& arr) {
  if (!arr.is_array() || arr.size() != 8) {
    throw std::invalid_argument("state file: expected 8 amplitudes");
  }
  std::array<cplx, 8> amps{};
  for (std::size_t i = 0; i < 8; ++i) amps[i] = parse_complex(arr[i]);
  return PureState3Q::from_amplitudes(amps);
}

inline DensityMatrix3Q matrix_from_json(const nlohmann::json& arr) {
  if (!arr.is_array() || arr.size() != 8) {
    throw std::invalid_argument("state file: expected an 8x8 matrix");
  }
  ComplexMatrix m(8, 8);
  for (std::size_t r = 0; r < 8; ++r) {
    if (!arr[r].is_array() || arr[r].size() != 8) {
      throw std::invalid_argument("state file: expected an 8x8 matrix");
    }
    for (std::size_t c = 0; c < 8; ++c) m(r, c) = parse_complex(arr[r][c]);
  }
  const DensityValidation v = validate_density(m);
  if (!v.passed()) {
    throw std::invalid_argument("state file: " + v.summary());
  }
  return DensityMatrix3Q(std::move(m));
}

}  // namespace detail

inline LoadedState load_state_json(const nlohmann::json& j) {
  if (j.is_object() && j.contains("amplitudes")) return detail::amplitudes_from_json(j["amplitudes"]);
  if (j.is_object() && j.contains("matrix")) return detail::matrix_from_json(j["matrix"]);
  if (j.is_array() && j.size() == 8 && !j.empty() && j[0].is_array() && j[0].size() == 8 &&
      j[0][0].is_array()) {
    return detail::matrix_from_json(j);
  }
  if (j.is_array() && j.size() == 8) return detail::amplitudes_from_json(j);
  throw std::invalid_argument(
      "state file: expected {\"amplitudes\": ...}, {\"matrix\": ...}, or a bare array");
}

inline LoadedState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("state file '" + path + "': parse error: " + e.what());
  }
  return load_state_json(j);
}

inline DensityMatrix3Q density_of(const LoadedState& s) {
  if (std::holds_alternative<PureState3Q>(s)) return to_density(std::get<PureState3Q>(s));
  return std::get<DensityMatrix3Q>(s);
}

// "start:stop:step" with both endpoints included within half a step.
inline std::array<double, 3> parse_grid_spec(const std::string& spec) {
  std::array<double, 3> out{};
  std::string s = spec;
  for (int i = 0; i < 3; ++i) {
    const std::size_t colon = s.find(':');
    const std::string tok = i < 2 ? s.substr(0, colon) : s;
    if ((i < 2 && colon == std::string::npos) || tok.empty()) {
      throw std::invalid_argument("grid spec must be start:stop:step");
    }
    try {
      std::size_t used = 0;
      out[i] = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("");
    } catch (...) {
      throw std::invalid_argument("grid spec must be start:stop:step (bad number '" + tok + "')");
    }
    if (i < 2) s = s.substr(colon + 1);
  }
  return out;
}

}  // namespace tricorr
