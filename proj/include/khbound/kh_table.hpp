#pragma once

#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "khbound/cube.hpp"
#include "khbound/diagram.hpp"
#include "khbound/laurent.hpp"
#include "khbound/scanner.hpp"

namespace khbound {

enum class Backend { kNaive, kScan, kAuto };

std::string to_string(Backend b);
/// "naive", "scan" or "auto"; anything else is an InputError.
Backend parse_backend(const std::string& s);

using BettiMap = std::map<std::pair<int, int>, long long>;

/// Rational Khovanov Betti numbers in normalized bidegrees (i, j).
struct KhTable {
  BettiMap betti;
  std::string diagram_name;
  std::string diagram_hash;
  Backend backend = Backend::kNaive;  ///< never kAuto once computed
  int c_plus = 0;
  int c_minus = 0;

  /// {"backend", "betti": [[i, j, rank], ...], "c_minus", "c_plus",
  /// "diagram": {"hash", "name"}}, keys and entries sorted.
  nlohmann::json to_json() const;
  /// Throws InputError on a malformed document.
  static KhTable from_json(const nlohmann::json& j);
  /// Hash of the compact JSON form.
  std::string hash() const;

  friend bool operator==(const KhTable&, const KhTable&) = default;
};

/// Above this many crossings the cube is much slower than the scan.
inline constexpr int kDefaultAutoNaiveLimit = 10;

struct KhOptions {
  Backend backend = Backend::kAuto;
  /// The auto backend uses the cube up to this many crossings. An explicit
  /// naive request is accepted up to max(naive_limit, kDefaultNaiveLimit).
  int naive_limit = kDefaultAutoNaiveLimit;
  ScanOptions scan;
};

KhTable kh_table(const Diagram& d, const KhOptions& options = {});

/// (i_min, i_max). Throws InvariantError on an empty table.
std::pair<int, int> extreme_degrees(const KhTable& t);
inline int i_max(const KhTable& t) { return extreme_degrees(t).second; }
inline int i_min(const KhTable& t) { return extreme_degrees(t).first; }

/// sum (-1)^i rank q^j
Laurent graded_euler(const BettiMap& betti);

/// Betti map under (i, j) -> (-i, -j).
BettiMap dual_betti(const BettiMap& betti);
/// Betti map under i -> i + di, j -> j + dj.
BettiMap shift_betti(const BettiMap& betti, int di, int dj = 0);

inline constexpr int kJonesCrossingLimit = 20;

/// Unnormalized Jones polynomial (unknot -> q + 1/q) from the Kauffman
/// bracket state sum. Throws ResourceError above kJonesCrossingLimit.
Laurent jones_via_kauffman(const Diagram& d);

/// True when no circle of the all-1 state passes through both arcs of one
/// crossing. For such diagrams i_max = c_plus(D).
bool plus_adequate(const Diagram& d);

/// True when no crossing is nugatory, i.e. no face of the diagram meets a
/// crossing at two opposite corners.
bool is_reduced(const Diagram& d);

}  // namespace khbound
