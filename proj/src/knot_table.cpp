#include "khbound/knot_table.hpp"

#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "khbound/errors.hpp"
#include "khbound/factory.hpp"

#ifndef KHBOUND_DATA_DIR
#define KHBOUND_DATA_DIR "data"
#endif

namespace khbound {

namespace {

// Splits one CSV record; fields may be double-quoted with "" as an escaped quote.
std::vector<std::string> split_csv(const std::string& line, int line_no, const std::string& source) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      if (!cur.empty() && !was_quoted) {
        throw InputError(source + ":" + std::to_string(line_no) + ": stray quote inside an unquoted field");
      }
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
      was_quoted = false;
    } else {
      cur += c;
    }
  }
  if (quoted) throw InputError(source + ":" + std::to_string(line_no) + ": unterminated quote");
  out.push_back(cur);
  for (auto& f : out) {
    const auto b = f.find_first_not_of(" \t\r");
    const auto e = f.find_last_not_of(" \t\r");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

long long parse_property(const std::string& value, const std::string& where) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw InputError(where + ": property value '" + value + "' is not an integer");
  }
}

// Validates the PD, appends the entry and its mirror if requested.
void add_entry(std::vector<KnotTableEntry>& out, std::set<std::string>& names, KnotTableEntry e,
               const std::string& mirror_name, const std::string& where) {
  if (e.name.empty()) throw InputError(where + ": empty name");
  Diagram d;
  try {
    d = e.diagram();
  } catch (const InputError& err) {
    throw InputError(where + ": entry '" + e.name + "': " + err.what());
  }
  if (!names.insert(e.name).second) throw InputError(where + ": duplicate name '" + e.name + "'");
  out.push_back(e);
  if (mirror_name.empty()) return;
  if (!names.insert(mirror_name).second) throw InputError(where + ": duplicate name '" + mirror_name + "'");
  KnotTableEntry m;
  m.name = mirror_name;
  m.pd = mirror(d).to_pd_text();
  out.push_back(std::move(m));
}

}  // namespace

std::vector<KnotTableEntry> parse_table(std::string_view text, bool json, const std::string& source) {
  std::vector<KnotTableEntry> out;
  std::set<std::string> names;
  if (json) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(source + ": invalid JSON: " + e.what());
    }
    if (!j.is_array()) throw InputError(source + ": expected a JSON array of entries");
    for (std::size_t k = 0; k < j.size(); ++k) {
      const std::string where = source + ": entry " + std::to_string(k);
      const auto& item = j[k];
      if (!item.is_object() || !item.contains("name") || !item.contains("pd") || !item["name"].is_string() ||
          !item["pd"].is_string()) {
        throw InputError(where + ": needs string fields 'name' and 'pd'");
      }
      KnotTableEntry e;
      e.name = item["name"].get<std::string>();
      e.pd = item["pd"].get<std::string>();
      std::string mirror_name;
      for (const auto& [key, value] : item.items()) {
        if (key == "name" || key == "pd") continue;
        if (key == "mirror_name") {
          if (!value.is_string()) throw InputError(where + ": mirror_name must be a string");
          mirror_name = value.get<std::string>();
        } else if (value.is_number_integer()) {
          e.properties[key] = value.get<long long>();
        } else {
          throw InputError(where + ": property '" + key + "' must be an integer");
        }
      }
      add_entry(out, names, std::move(e), mirror_name, where);
    }
    return out;
  }

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  int name_col = -1;
  int pd_col = -1;
  int mirror_col = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    auto fields = split_csv(line, line_no, source);
    if (header.empty()) {
      header = fields;
      for (int c = 0; c < static_cast<int>(header.size()); ++c) {
        if (header[c] == "name") name_col = c;
        if (header[c] == "pd") pd_col = c;
        if (header[c] == "mirror_name") mirror_col = c;
      }
      if (name_col < 0 || pd_col < 0) throw InputError(source + ":" + std::to_string(line_no) + ": header needs name and pd columns");
      continue;
    }
    const std::string where = source + ":" + std::to_string(line_no);
    if (fields.size() != header.size()) {
      throw InputError(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()) + " (quote PD codes that contain commas)");
    }
    KnotTableEntry e;
    e.name = fields[name_col];
    e.pd = fields[pd_col];
    for (int c = 0; c < static_cast<int>(header.size()); ++c) {
      if (c == name_col || c == pd_col || c == mirror_col || fields[c].empty()) continue;
      e.properties[header[c]] = parse_property(fields[c], where);
    }
    add_entry(out, names, std::move(e), mirror_col >= 0 ? fields[mirror_col] : std::string(), where);
  }
  return out;
}

std::vector<KnotTableEntry> ingest_table(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read table file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_table(ss.str(), path.extension() == ".json", path.string());
}

std::filesystem::path default_table_path() {
  if (const char* env = std::getenv("KHBOUND_TABLE"); env != nullptr && *env != '\0') return env;
  return std::filesystem::path(KHBOUND_DATA_DIR) / "knots.csv";
}

Diagram resolve_target(const std::string& target, const std::vector<KnotTableEntry>& table) {
  for (const auto& e : table) {
    if (e.name == target) return e.diagram();
  }
  if (target == "unknot") return Diagram({}, 1, "unknot");
  static const std::regex torus(R"(T\((-?\d+),(-?\d+)\))");
  std::smatch m;
  if (std::regex_match(target, m, torus)) return torus_diagram(std::stoi(m[1]), std::stoi(m[2]));
  if (target.size() > 1 && target[0] == 'm') {
    const std::string base = target.substr(1);
    for (const auto& e : table) {
      if (e.name == base) return mirror(e.diagram()).with_name(target);
    }
  }
  throw InputError("unknown knot '" + target + "' (not in the table, not unknot, T(p,q) or m<name>)");
}

}  // namespace khbound
