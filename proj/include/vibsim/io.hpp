// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vibsim/doktorov.hpp"
#include "vibsim/force_field.hpp"

namespace vibsim {

// Bad user input (files, flags, schemas). The CLI maps this to exit 2,
// while std::runtime_error (numerical failures) maps to exit 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kToolVersion = "0.1.0";

// Display conversion for --cm1 spectra output; storage stays in hartree.
inline constexpr double kHartreeToCm1 = 219474.6313632;

// Force-field JSON schema: {"label", "modes", "units": "atomic",
// "k2": [[i,i,value]...], "k3": [[i,j,k,value]...], "k4": [[i,j,k,l,value]...]}
// with 1-based ascending indices. Absent cubic/quartic coefficients are
// zero; every mode needs a positive diagonal k2 entry. Validation errors
// name the offending entry.
ForceField parse_force_field(const std::string& json_text);
ForceField load_force_field(const std::string& path);

// Duschinsky JSON {"U": [[..]], "d": [..]}; frequencies are taken from the
// caller (normally the two force fields).
DuschinskyData load_duschinsky(const std::string& path,
                               const std::vector<double>& omega_i,
                               const std::vector<double>& omega_f);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// FNV-1a of the canonical config rendering, as 16 hex digits.
std::string config_hash_hex(const std::string& canonical_config);

// "# vibsim <version>\n# units atomic\n# config-hash <hex>\n# config <json>\n";
// shared by the CSV writers and mirrored in JSON output metadata.
std::string output_header(const std::string& canonical_config);

// Header plus comma-joined column names plus fmt_g17-stable rows.
std::string csv_document(const std::string& canonical_config,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows);

}  // namespace vibsim
