#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "khbound/diagram.hpp"

namespace khbound {

/// One named diagram from a table file. Extra integer columns (for example
/// a known i_max) land in `properties`.
struct KnotTableEntry {
  std::string name;
  std::string pd;
  std::map<std::string, long long> properties;

  Diagram diagram() const { return parse_pd(pd, name); }
};

/// Parses a table. CSV needs a header with at least `name` and `pd`; an
/// optional `mirror_name` column adds the mirror image as a second entry
/// under that name. JSON is an array of objects with the same keys.
/// Throws InputError with a line (CSV) or entry (JSON) number on bad input,
/// including duplicate names.
std::vector<KnotTableEntry> parse_table(std::string_view text, bool json, const std::string& source = "<table>");

/// Reads `path`; the format follows the extension (.json or anything else as
/// CSV). Throws InputError if the file cannot be read.
std::vector<KnotTableEntry> ingest_table(const std::filesystem::path& path);

/// The bundled fixture table, overridable with KHBOUND_TABLE.
std::filesystem::path default_table_path();

/// Looks `target` up in the table. Falls back to "unknot", "T(p,q)" torus
/// names and "m<name>" for the mirror of a table entry. Throws InputError
/// when nothing matches.
Diagram resolve_target(const std::string& target, const std::vector<KnotTableEntry>& table);

}  // namespace khbound
