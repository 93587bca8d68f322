#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "khbound/diagram.hpp"
#include "khbound/kh_table.hpp"

namespace khbound {

inline constexpr const char* kEngineVersion = "khbound-1.0";

inline constexpr const char* kDiagramBound = "diagram-bound";
inline constexpr const char* kCableBound = "cable-bound";
inline constexpr const char* kNotNegative = "verdict-not-negative";
inline constexpr const char* kNotPositive = "verdict-not-positive";

/// A lower bound on c+ (and for diagram bounds also c-) read off one table.
///
/// diagram-bound: c+(L) >= i_max and c-(L) >= -i_min of the table of L.
/// cable-bound: c+(K) >= ceil(i_max / p^2) from the table of K(p, pt),
/// valid when t <= 2 c+(K); t <= 0 always qualifies, and t > 0 is accepted
/// only up to 2 i_max(K), since c+(K) >= i_max(K).
struct Certificate {
  std::string subject_name;
  std::string subject_hash;
  std::string statement;
  std::optional<int> p;
  std::optional<int> t;
  int i_max = 0;
  std::optional<int> i_min;           ///< diagram bounds only
  int c_plus_bound = 0;
  std::optional<int> c_minus_bound;   ///< diagram bounds only
  std::optional<int> knot_i_max;      ///< cable bounds with t > 0
  std::vector<std::string> verdicts;  ///< sorted
  std::string table_ref;
  std::string backend;
  std::string engine = kEngineVersion;

  nlohmann::json to_json() const;
  static Certificate from_json(const nlohmann::json& j);
  /// "<subject>: c+ >= 1 (i_max 2 of the (2,0) cable); not negative"
  std::string summary() const;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Re-derivation from the table alone.
Certificate diagram_bound(const KhTable& t);

/// subject: the knot K. `cable` is the table of K(p, pt).
Certificate cable_bound(const Diagram& knot, const KhTable& cable, int p, int t,
                        std::optional<int> knot_i_max = std::nullopt);

/// Builds the cable, computes its table and certifies. For t > 0 the knot's
/// own table is computed first and t <= 2 i_max(K) is required; otherwise
/// InputError ("not certifiable").
Certificate cable_certificate(const Diagram& knot, int p, int t, const KhOptions& options = {});

/// Recomputes everything the certificate depends on and compares the result
/// with `cert` field by field. `subject` must be the certified diagram.
bool revalidate(const Certificate& cert, const Diagram& subject, const KhOptions& options = {});

enum class VanishingRegion { kTwistBounded, kEvenStrands, kOddStrands };
std::string to_string(VanishingRegion r);

/// Outcome of checking that KH^i(K(p, pt)) = 0 above a line.
///
/// For t <= 2c the line is i = p^2 c; otherwise it is
/// i = slope (t - 2c) + p^2 c with slope 2k^2 for p = 2k and 2k(k+1) for
/// p = 2k + 1.
struct VanishingReport {
  VanishingRegion region = VanishingRegion::kTwistBounded;
  int p = 0;
  int t = 0;
  int c_plus = 0;
  int limit = 0;  ///< largest i allowed to carry homology
  int i_max = 0;
  std::vector<std::pair<int, int>> violations;  ///< offending (i, j)
  bool pass = true;

  nlohmann::json to_json() const;
};

/// `cable` is the table of K(p, pt); `c_plus` is the c+ value to test against.
VanishingReport vanishing_check(const KhTable& cable, int p, int t, int c_plus);

struct GapReport {
  int k = 0;
  int t = 0;
  int c_plus = 0;  ///< 2kt(2k - 1)
  int i_max = 0;   ///< computed for T(2k, 2kt)
  int gap = 0;
  nlohmann::json to_json() const;
};

/// Computes i_max(T(2k, 2kt)) and compares with c+ = 2kt(2k - 1). Throws
/// InvariantError if i_max differs from 2k^2 t or the standard diagram is not
/// positive with that many crossings.
GapReport gap_report(int k, int t, const KhOptions& options = {});

/// One (p, t) sample of the search for cables with positive i_max.
struct CableSample {
  int p = 0;
  int t = 0;
  int crossings = 0;
  std::optional<int> i_max;
  std::string status;  ///< "ok", "resource-limit" or "not-certifiable"
  nlohmann::json to_json() const;
};

struct CableExploration {
  std::string knot;
  int knot_i_max = 0;
  std::vector<CableSample> samples;
  /// True when some admissible sample has i_max > 0. No claim is made
  /// otherwise.
  bool found_positive = false;
  nlohmann::json to_json() const;
};

/// Sweeps p in [2, p_max] and t in [t_min, t_max], skipping t > 2 i_max(K).
CableExploration explore_cables(const Diagram& knot, int p_max, int t_min, int t_max, const KhOptions& options = {},
                                unsigned jobs = 1);

/// i_max(K) <= i_max(K(p, 2p i_max(K))) / p^2 <= c+(K), checked on data. The
/// second inequality always holds for the true c+; here it is compared with
/// c+ of the given diagram, which can only be larger.
struct ChainCheck {
  std::string knot;
  int p = 0;
  int knot_i_max = 0;
  int t = 0;
  std::optional<int> cable_i_max;
  int diagram_c_plus = 0;
  std::optional<bool> left_holds;
  std::optional<bool> right_holds;
  std::string status;  ///< "ok" or "resource-limit"
  nlohmann::json to_json() const;
};

ChainCheck check_chain(const Diagram& knot, int p, const KhOptions& options = {});

}  // namespace khbound
