#pragma once

#include <stdexcept>
#include <string>

#include "sturmian/models.hpp"

namespace sturmian {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Key-value model description, one "key = value" pair per line, '#' comments.
//
//   model   = chain | rod | beam | beam_on_supports
//   varied  = name of the field following the Sturmian pattern
//   theta_p = value of that field on p elements
//   theta_q = value of that field on q elements
//   plus the base fields of the model (chain: m, K; rod: EA, rhoA, l;
//   beam: EI, GA, rhoA, rhoI, l; beam_on_supports adds K).
//
// Values carry the same units as the model structs; no conversion happens.
ModelSpec parse_model_config(const std::string& text);
ModelSpec load_model_config(const std::string& path);

} // namespace sturmian
