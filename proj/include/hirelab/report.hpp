#pragma once

// Result serialization: CSV with embedded manifest comments, JSON, and the
// sidecar run manifest. Hashing needs OpenSSL's libcrypto.

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hirelab/epoly.hpp"
#include "hirelab/error.hpp"
#include "hirelab/rational.hpp"
#include "hirelab/sim.hpp"
#include "hirelab/stats.hpp"

namespace hirelab {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw ResourceError("format_double: buffer too small");
  return std::string(buf.data(), ptr);
}

/// Git blob id: SHA-1 over "blob <size>\0" + content.
inline std::string git_blob_sha1(const std::string& content) {
  const std::string header = "blob " + std::to_string(content.size()) + '\0';
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw ResourceError("EVP_MD_CTX_new failed");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                  EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, md.data(), &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw ResourceError("SHA-1 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Manifest

/// Inputs that determine an output byte for byte, plus run metadata that
/// does not (wall time, worker count, output hash).
struct RunManifest {
  std::string tool_version = kToolVersion;
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // resolved, in flag order
  std::uint64_t master_seed = kDefaultSeed;
  double wall_seconds = 0.0;
  unsigned workers = 0;
  std::string content_hash;

  void set(const std::string& key, std::string value) {
    for (auto& [k, v] : config)
      if (k == key) {
        v = std::move(value);
        return;
      }
    config.emplace_back(key, std::move(value));
  }

  /// Deterministic part, embedded in every artifact.
  Json inputs_json() const {
    Json j;
    j["tool"] = "hirelab";
    j["version"] = tool_version;
    j["command"] = command;
    j["master_seed"] = master_seed;
    Json cfg = Json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = cfg;
    return j;
  }

  /// Full sidecar manifest.
  Json to_json() const {
    Json j = inputs_json();
    j["wall_seconds"] = wall_seconds;
    j["workers"] = workers;
    j["content_hash"] = content_hash;
    return j;
  }

  /// "# key: value" lines for CSV headers.
  std::string csv_comment() const {
    std::ostringstream os;
    os << "# hirelab " << tool_version << ' ' << command << '\n';
    os << "# master_seed: " << master_seed << '\n';
    for (const auto& [k, v] : config) os << "# " << k << ": " << v << '\n';
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// CSV

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) throw ConsistencyError("CSV row width does not match header");
    rows.push_back(std::move(row));
  }
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string to_csv(const CsvTable& t, const RunManifest* manifest = nullptr) {
  std::ostringstream os;
  if (manifest) os << manifest->csv_comment();
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
    os << "\r\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return os.str();
}

/// Parse RFC 4180 CSV, skipping leading '#' comment lines.
inline CsvTable parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, at_line_start = true, field_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (at_line_start && c == '#' && records.empty()) {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    at_line_start = false;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\r') {
    } else if (c == '\n') {
      record.push_back(std::move(field));
      field.clear();
      field_started = false;
      records.push_back(std::move(record));
      record.clear();
      at_line_start = true;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw DomainError("parse_csv: unterminated quote");
  if (field_started || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  CsvTable t;
  if (records.empty()) return t;
  t.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) t.add_row(std::move(records[r]));
  return t;
}

// ---------------------------------------------------------------------------
// Tables for simulation results

inline std::vector<std::string> estimate_cells(const Estimate& e) {
  return {format_double(e.mean), format_double(e.std_error)};
}

inline CsvTable growth_table(const GrowthStats& g) {
  const bool compact = g.config.dist.compact();
  CsvTable t;
  t.header = {"k", "mean_score", "mean_score_se", "last_score", "last_score_se",
              "best_score", "best_score_se"};
  if (compact) {
    for (const char* c : {"mu", "mu_se", "xi", "xi_se", "nu", "nu_se"}) t.header.push_back(c);
  }
  for (const char* c : {"age", "age_se", "age_var"}) t.header.push_back(c);
  if (g.superiority_tracked) {
    t.header.push_back("superior_grown");
    t.header.push_back("superior_grown_se");
  }
  t.header.push_back("count");
  for (int k = 1; k <= g.max_size(); ++k) {
    std::vector<std::string> row{std::to_string(k)};
    auto put = [&](const Estimate& e) {
      const auto cells = estimate_cells(e);
      row.insert(row.end(), cells.begin(), cells.end());
    };
    put(g.mean_score(k));
    put(g.last_score(k));
    put(g.best_score(k));
    if (compact) {
      put(g.mean_gap(k));
      put(g.last_gap(k));
      put(g.best_gap(k));
    }
    put(g.mean_age(k));
    row.push_back(format_double(g.age_variance(k)));
    if (g.superiority_tracked) put(g.superior_fraction(k));
    row.push_back(std::to_string(g.at(k).mean_score.count));
    t.add_row(std::move(row));
  }
  return t;
}

inline Json estimate_json(const Estimate& e) {
  return Json{{"mean", e.mean}, {"stderr", e.std_error}, {"count", e.count}};
}

inline Json growth_json(const GrowthStats& g) {
  Json rows = Json::array();
  const CsvTable t = growth_table(g);
  for (const auto& r : t.rows) {
    Json row;
    for (std::size_t i = 0; i < r.size(); ++i)
      row[t.header[i]] = i == 0 || t.header[i] == "count" ? Json(std::stoll(r[i])) : Json(std::stod(r[i]));
    rows.push_back(row);
  }
  Json j;
  j["thresholds_empirical"] = g.thresholds_empirical;
  if (g.superiority_tracked) j["thresholds"] = g.thresholds;
  j["sizes"] = rows;
  return j;
}

inline Json rational_json(const Rational& r) {
  return Json{{"numerator", r.get_num().get_str()},
              {"denominator", r.get_den().get_str()},
              {"value", to_double(r)}};
}

inline Json epoly_json(const EPoly& p) {
  Json terms = Json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    terms.push_back(Json{{"power", it->first}, {"coefficient", to_string(it->second)}});
  return terms;
}

/// Artifact with the manifest inputs embedded.
inline std::string json_artifact(const RunManifest& m, Json result) {
  Json j;
  j["manifest"] = m.inputs_json();
  j["result"] = std::move(result);
  return j.dump(2) + "\n";
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ResourceError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw ResourceError("write to '" + path + "' failed");
}

}  // namespace hirelab
