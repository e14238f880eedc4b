// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "vibsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vibsim/util.hpp"

namespace vibsim {

namespace {

using nlohmann::json;

std::string index_label(const std::vector<int>& idx) {
  std::string s = "(";
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(idx[k]);
  }
  return s + ")";
}

// One k-block: entries are [i_1..i_order, value], 1-based ascending unique.
void parse_block(const json& j, const char* key, int order, int modes,
                 bool diagonal_only, std::set<std::vector<int>>& seen,
                 Polynomial& poly) {
  if (!j.contains(key)) return;
  const json& block = j.at(key);
  if (!block.is_array())
    throw ConfigError(std::string("force field: ") + key + " must be an array");
  for (const json& entry : block) {
    if (!entry.is_array() || static_cast<int>(entry.size()) != order + 1)
      throw ConfigError(std::string("force field: ") + key + " entry needs " +
                        std::to_string(order) + " indices and a value");
    std::vector<int> idx(order);
    for (int k = 0; k < order; ++k) {
      if (!entry[k].is_number_integer())
        throw ConfigError(std::string("force field: ") + key + " index not an integer");
      idx[k] = entry[k].get<int>();
    }
    if (!entry[order].is_number())
      throw ConfigError(std::string("force field: ") + key + " entry " +
                        index_label(idx) + ": value not a number");
    const double value = entry[order].get<double>();
    for (int k = 0; k < order; ++k) {
      if (idx[k] < 1 || idx[k] > modes)
        throw ConfigError(std::string("force field: ") + key + " entry " +
                          index_label(idx) + ": index out of range");
      if (k > 0 && idx[k] < idx[k - 1])
        throw ConfigError(std::string("force field: ") + key + " entry " +
                          index_label(idx) + ": indices must be ascending");
    }
    if (diagonal_only && idx[0] != idx[1])
      throw ConfigError(std::string("force field: ") + key + " entry " +
                        index_label(idx) + ": quadratic terms must be diagonal");
    if (!std::isfinite(value))
      throw ConfigError(std::string("force field: ") + key + " entry " +
                        index_label(idx) + ": value not finite");
    if (diagonal_only && value <= 0.0)
      throw ConfigError(std::string("force field: ") + key + " entry " +
                        index_label(idx) +
                        ": harmonic coefficient must be positive");
    std::vector<int> tagged = idx;
    tagged.insert(tagged.begin(), order);
    if (!seen.insert(tagged).second)
      throw ConfigError(std::string("force field: ") + key + " entry " +
                        index_label(idx) + ": duplicate coefficient");
    std::vector<int> zero_based(order);
    for (int k = 0; k < order; ++k) zero_based[k] = idx[k] - 1;
    poly.add(zero_based, value);
  }
}

}  // namespace

ForceField parse_force_field(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("force field: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("force field: top level must be an object");
  if (!j.contains("label") || !j.at("label").is_string())
    throw ConfigError("force field: missing string field \"label\"");
  if (!j.contains("modes") || !j.at("modes").is_number_integer())
    throw ConfigError("force field: missing integer field \"modes\"");
  if (!j.contains("units") || j.at("units") != "atomic")
    throw ConfigError("force field: field \"units\" must be \"atomic\"");

  ForceField ff;
  ff.label = j.at("label").get<std::string>();
  ff.modes = j.at("modes").get<int>();
  if (ff.modes < 1) throw ConfigError("force field: modes must be >= 1");
  ff.potential = Polynomial(ff.modes);

  std::set<std::vector<int>> seen;
  parse_block(j, "k2", 2, ff.modes, true, seen, ff.potential);
  parse_block(j, "k3", 3, ff.modes, false, seen, ff.potential);
  parse_block(j, "k4", 4, ff.modes, false, seen, ff.potential);

  for (int m = 1; m <= ff.modes; ++m) {
    std::vector<int> key{2, m, m};
    if (!seen.count(key))
      throw ConfigError("force field: k2 entry (" + std::to_string(m) + "," +
                        std::to_string(m) + ") is required");
  }
  return ff;
}

ForceField load_force_field(const std::string& path) {
  return parse_force_field(read_text_file(path));
}

DuschinskyData load_duschinsky(const std::string& path,
                               const std::vector<double>& omega_i,
                               const std::vector<double>& omega_f) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("duschinsky: malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("U") || !j.contains("d"))
    throw ConfigError("duschinsky: need fields \"U\" and \"d\"");
  const json& ju = j.at("U");
  const json& jd = j.at("d");
  const int m = static_cast<int>(omega_i.size());
  if (static_cast<int>(omega_f.size()) != m)
    throw ConfigError("duschinsky: frequency vectors disagree in length");
  if (!ju.is_array() || static_cast<int>(ju.size()) != m)
    throw ConfigError("duschinsky: \"U\" must be a " + std::to_string(m) + "-row matrix");
  if (!jd.is_array() || static_cast<int>(jd.size()) != m)
    throw ConfigError("duschinsky: \"d\" must have " + std::to_string(m) + " entries");

  DuschinskyData dusch;
  dusch.u.resize(m, m);
  dusch.shift.resize(m);
  dusch.omega_i.resize(m);
  dusch.omega_f.resize(m);
  for (int r = 0; r < m; ++r) {
    if (!ju[r].is_array() || static_cast<int>(ju[r].size()) != m)
      throw ConfigError("duschinsky: \"U\" row " + std::to_string(r) +
                        " must have " + std::to_string(m) + " entries");
    for (int c = 0; c < m; ++c) {
      if (!ju[r][c].is_number())
        throw ConfigError("duschinsky: \"U\" entries must be numbers");
      dusch.u(r, c) = ju[r][c].get<double>();
    }
    if (!jd[r].is_number())
      throw ConfigError("duschinsky: \"d\" entries must be numbers");
    dusch.shift(r) = jd[r].get<double>();
    dusch.omega_i(r) = omega_i[r];
    dusch.omega_f(r) = omega_f[r];
  }
  try {
    validate(dusch);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return dusch;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
  if (!out) throw ConfigError("write failed: " + path);
}

std::string config_hash_hex(const std::string& canonical_config) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical_config)));
  return std::string(buf);
}

std::string output_header(const std::string& canonical_config) {
  std::string out;
  out += std::string("# vibsim ") + kToolVersion + "\n";
  out += "# units atomic\n";
  out += "# config-hash " + config_hash_hex(canonical_config) + "\n";
  out += "# config " + canonical_config + "\n";
  return out;
}

std::string csv_document(const std::string& canonical_config,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows) {
  std::string out = output_header(canonical_config);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ",";
    out += columns[c];
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      out += row[c];
    }
    out += "\n";
  }
  return out;
}

}  // namespace vibsim
