#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace khbound {

/// One crossing of a planar diagram.
///
/// `edges` lists the four incident edge labels counterclockwise, starting with
/// the incoming under-strand, so the under-strand runs edges[0] -> edges[2].
/// `sign` is +1 when the over-strand runs edges[3] -> edges[1] (it crosses the
/// under-strand from its left to its right) and -1 when it runs the other way.
struct Crossing {
  std::array<int, 4> edges{};
  int sign = 1;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Slot indices into Crossing::edges.
inline constexpr int kUnderIn = 0;
inline constexpr int kUnderOut = 2;
inline int over_in_slot(const Crossing& x) { return x.sign > 0 ? 3 : 1; }
inline int over_out_slot(const Crossing& x) { return x.sign > 0 ? 1 : 3; }

struct DiagramStats {
  int c_plus = 0;
  int c_minus = 0;
  int writhe = 0;
  int n_components = 0;

  friend bool operator==(const DiagramStats&, const DiagramStats&) = default;
};

/// An oriented link diagram: signed PD crossings plus explicit zero-crossing
/// circles. Immutable once constructed; the constructor validates the
/// edge structure and derives components.
///
/// Components are numbered from 0: first those carrying crossings, ordered by
/// their smallest edge label, then the explicit circles.
class Diagram {
 public:
  Diagram() = default;
  Diagram(std::vector<Crossing> crossings, int circles = 0, std::string name = {});

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int num_crossings() const { return static_cast<int>(crossings_.size()); }
  /// Number of explicit zero-crossing circle components.
  int circles() const { return circles_; }
  int num_components() const { return static_cast<int>(component_edges_.size()) + circles_; }
  const std::string& name() const { return name_; }
  Diagram with_name(std::string name) const;

  /// Sorted list of all edge labels.
  std::vector<int> edge_labels() const;
  int max_label() const;
  int component_of_edge(int label) const;
  /// Edges of a crossing-carrying component in orientation order, starting
  /// at its smallest label. Empty for explicit circles.
  const std::vector<int>& component_edges(int component) const;
  int under_component(int crossing) const;
  int over_component(int crossing) const;

  /// (crossing, slot) where the edge ends / starts.
  std::pair<int, int> head(int label) const;
  std::pair<int, int> tail(int label) const;
  /// The next edge along the orientation.
  int successor(int label) const;

  /// Relabels edges 1..N consecutively along each component, in component
  /// order. Crossing order, signs and circles are kept.
  Diagram canonical() const;

  /// "X[a,b,c,d], ..., U<n>" text. Labels are emitted as stored.
  std::string to_pd_text() const;
  /// Stable 64-bit FNV-1a hash of the canonical signed PD code, as 16 hex digits.
  std::string hash() const;

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.crossings_ == b.crossings_ && a.circles_ == b.circles_;
  }

 private:
  std::vector<Crossing> crossings_;
  int circles_ = 0;
  std::string name_;

  std::unordered_map<int, std::pair<int, int>> head_;
  std::unordered_map<int, std::pair<int, int>> tail_;
  std::unordered_map<int, int> component_of_;
  std::vector<std::vector<int>> component_edges_;
};

/// Parses PD text: "X[a,b,c,d]" entries separated by commas or whitespace,
/// optionally wrapped in "PD[...]", plus "U<n>" tokens for zero-crossing
/// circles ("U1" alone is the unknot). Text starting with '[' or '{' is read
/// as JSON: either an array of 4-tuples or an object with "pd", optional
/// "circles" and optional "signs" (per-crossing orientation override).
///
/// Over-strand directions are propagated from the under-strand directions
/// (which PD fixes); components that never pass under fall back to the
/// increasing-label convention. Throws InputError.
Diagram parse_pd(std::string_view text, std::string name = {});

/// Builds a diagram from unsigned PD tuples, inferring signs as parse_pd does
/// unless `signs` is given.
Diagram diagram_from_pd(const std::vector<std::array<int, 4>>& pd, int circles,
                        const std::optional<std::vector<int>>& signs, std::string name = {});

DiagramStats stats(const Diagram& d);

/// Half the signed count of crossings between components a and b.
/// Throws InputError when a == b or an index is out of range.
int linking_number(const Diagram& d, int a, int b);

/// Switches every crossing; orientation is kept.
Diagram mirror(const Diagram& d);

/// Reverses the orientation of component k. Throws InputError on a bad index.
Diagram reverse_component(const Diagram& d, int k);

}  // namespace khbound
