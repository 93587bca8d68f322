#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "khbound/diagram.hpp"
#include "khbound/laurent.hpp"
#include "khbound/rational.hpp"

namespace khbound {

/// Perfect matching on the open boundary points of a tangle: partner[i].
using Matching = std::vector<std::uint8_t>;

/// One basis cobordism: a disjoint union of disks, one per boundary circle,
/// `dots` marking the dotted disks.
///
/// For a morphism between objects with matchings A and B on m points and
/// loop counts la and lb, bit i < m stands for the circle of A ∪ B whose
/// smallest point is i, bits m .. m+la-1 for the source loops and
/// m+la .. m+la+lb-1 for the target loops.
struct CobordismTerm {
  std::uint64_t dots = 0;
  Rational coef;
};

/// Linear combination of basis cobordisms, sorted by `dots`, no zero terms.
using Morphism = std::vector<CobordismTerm>;

/// A generator of the local complex: a crossingless matching, possibly
/// together with closed loops, placed in bidegree (h, q).
struct LocalObject {
  std::uint32_t matching = 0;
  int loops = 0;
  int h = 0;
  int q = 0;
};

/// Chain complex over the dotted cobordism category with sphere = 0,
/// dotted sphere = 1, two dots = 0 and neck cutting, i.e. the Khovanov
/// theory over Q. Surfaces are handled abstractly: every morphism is kept
/// in the disk basis above.
class LocalComplex {
 public:
  /// Empty tangle complex: one object with no boundary, `circles` closed
  /// loops, at bidegree (0, 0).
  explicit LocalComplex(int circles = 0);

  const std::vector<int>& boundary() const { return boundary_; }
  const Matching& matching(std::uint32_t id) const { return matchings_[id]; }
  std::uint32_t intern(const Matching& m);

  std::size_t add_object(const LocalObject& o);
  /// Adds `m` to the entry src -> tgt.
  void add_morphism(std::size_t src, std::size_t tgt, const Morphism& m);
  const Morphism* morphism(std::size_t src, std::size_t tgt) const;

  const LocalObject& object(std::size_t i) const { return objects_[i]; }
  bool alive(std::size_t i) const { return alive_[i]; }
  std::size_t object_slots() const { return objects_.size(); }
  std::size_t live_objects() const { return live_; }
  std::size_t live_entries() const;
  bool has_loops() const;

  /// Replaces each object carrying loops by 2^loops loop-free copies with
  /// quantum shifts of +-1 per loop. No-op when nothing has loops.
  void deloop();

  /// True when the entry src -> tgt is an isomorphism: same matching, same
  /// q, no loops, and a nonzero multiple of the identity.
  bool is_isomorphism(std::size_t src, std::size_t tgt) const;

  /// Cancels the isomorphism src -> tgt, correcting every other entry by the
  /// zig-zag term. Throws InputError if the entry is not invertible.
  void gauss_cancel(std::size_t src, std::size_t tgt);

  /// Repeated cancellation until no isomorphism entry remains; unit
  /// coefficients first, lowest indices first. Returns the number of
  /// cancellations.
  std::size_t cancel_all();

  /// Tensors with the two-term complex of crossing x and glues along shared
  /// edge labels. Leaves loops in place; call deloop() afterwards.
  void add_crossing(const Crossing& x);

  /// Drops dead objects and renumbers the rest, keeping their order.
  void compact();

  /// sum over live objects of (-1)^h q^q, keyed by matching (loops counted as
  /// factors q + 1/q).
  std::map<std::vector<std::uint8_t>, Laurent> graded_euler() const;

  /// Live object counts per (h, q). For a closed complex with zero
  /// differential these are the Betti numbers.
  std::map<std::pair<int, int>, long long> generator_counts() const;

 private:
  struct GlueComponent {
    std::uint64_t in1 = 0;
    std::uint64_t in2 = 0;
    std::uint64_t out = 0;
    int genus = 0;
  };
  using GluePlan = std::vector<GlueComponent>;

  void remove_object(std::size_t i);
  const GluePlan& composition_plan(std::uint32_t c, std::uint32_t a, std::uint32_t d);
  Morphism compose(std::uint32_t c, std::uint32_t a, std::uint32_t d, const Morphism& f, const Morphism& g);

  static void apply_plan(const GluePlan& plan, std::uint64_t m1, std::uint64_t m2, const Rational& coef,
                         std::map<std::uint64_t, Rational>& acc);

  std::vector<int> boundary_;
  std::vector<Matching> matchings_;
  std::unordered_map<std::string, std::uint32_t> matching_ids_;
  std::vector<LocalObject> objects_;
  std::vector<bool> alive_;
  std::size_t live_ = 0;
  std::vector<std::unordered_map<std::uint32_t, Morphism>> out_;
  std::vector<std::unordered_set<std::uint32_t>> in_;
  std::unordered_map<std::uint64_t, GluePlan> composition_plans_;
};

struct ScanProgress {
  int processed = 0;
  int total = 0;
  std::size_t live_generators = 0;
  std::size_t boundary_points = 0;
};

inline constexpr std::size_t kDefaultCeiling = 10'000'000;

struct ScanOptions {
  /// Maximum number of live generators at any point of the scan.
  std::size_t ceiling = kDefaultCeiling;
  std::function<void(const ScanProgress&)> progress;
  /// Called after each crossing with the current (delooped, reduced) complex.
  std::function<void(const LocalComplex&)> inspect;
};

struct ScanResult {
  std::map<std::pair<int, int>, long long> betti;
  std::size_t peak_generators = 0;
  int peak_boundary = 0;
};

/// Crossing order greedily keeping the processed tangle's boundary small.
std::vector<int> crossing_order(const Diagram& d);

/// Khovanov Betti numbers in normalized (i, j) by scanning the crossings
/// and reducing after each one. Throws ResourceError past the ceiling.
ScanResult scan(const Diagram& d, const ScanOptions& options = {});

}  // namespace khbound
