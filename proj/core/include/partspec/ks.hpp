#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "partspec/budget.hpp"

namespace partspec {

/// a + b*sqrt(2) with exact integer arithmetic.
struct QuadInt {
  std::int64_t a = 0;
  std::int64_t b = 0;

  bool is_zero() const { return a == 0 && b == 0; }
  QuadInt conj() const { return {a, -b}; }
  /// a^2 - 2b^2, the field norm.
  std::int64_t norm() const { return a * a - 2 * b * b; }

  friend QuadInt operator+(QuadInt x, QuadInt y) { return {x.a + y.a, x.b + y.b}; }
  friend QuadInt operator-(QuadInt x, QuadInt y) { return {x.a - y.a, x.b - y.b}; }
  friend QuadInt operator-(QuadInt x) { return {-x.a, -x.b}; }
  friend QuadInt operator*(QuadInt x, QuadInt y) {
    return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  auto operator<=>(const QuadInt&) const = default;
};

/// Exact quotient x / y. Throws PreconditionError if y is zero or the
/// quotient is not in Z[sqrt(2)].
QuadInt exact_divide(QuadInt x, QuadInt y);

/// A direction in d-space with Z[sqrt(2)] coordinates.
struct Ray {
  std::vector<QuadInt> coords;

  std::size_t dim() const { return coords.size(); }
  auto operator<=>(const Ray&) const = default;
};

/// Primitive, sign-normalized representative. Throws PreconditionError on
/// the zero vector.
Ray canonicalize(const Ray& r);
/// Throws PreconditionError on a dimension mismatch.
QuadInt dot(const Ray& r, const Ray& s);
/// True iff r and s span the same line.
bool parallel(const Ray& r, const Ray& s);
/// Determinant of the matrix whose rows are `rows`.
QuadInt determinant(const std::vector<Ray>& rows);

/// Canonicalized rays with every complete orthogonal basis among them.
struct RaySystem {
  std::size_t dim = 0;
  std::vector<Ray> rays;
  /// Ascending ray indices; list in lexicographic order.
  std::vector<std::vector<std::size_t>> bases;
};

/// Canonicalizes, removes parallel duplicates and sorts. `duplicates`
/// receives the number of rays dropped.
std::vector<Ray> normalize_rays(const std::vector<Ray>& rays, std::size_t* duplicates = nullptr);

/// All d-subsets that are pairwise orthogonal with nonzero determinant.
std::vector<std::vector<std::size_t>> extract_bases(const std::vector<Ray>& rays, std::size_t d);

/// Normalizes `rays` and extracts all bases.
RaySystem make_ray_system(std::size_t dim, const std::vector<Ray>& rays,
                          std::size_t* duplicates = nullptr);

/// The 33 rays of dimension 3 whose squared-coordinate multisets are
/// {1,0,0}, {1,1,0}, {0,1,2} or {1,1,2}.
RaySystem generate_peres();

/// A {0,1}-coloring problem: exactly one vertex per basis gets 1, and at
/// most one vertex of each exclusive pair does.
struct ColoringInstance {
  std::size_t vertices = 0;
  std::vector<std::vector<std::size_t>> bases;
  std::vector<std::pair<std::size_t, std::size_t>> exclusive;
};

enum class ColoringStatus { kSat, kUnsat, kUnknown };

struct ColoringStats {
  std::uint64_t nodes = 0;
  std::uint64_t backtracks = 0;
  double seconds = 0.0;
  bool complete = false;
};

struct ColoringResult {
  ColoringStatus status = ColoringStatus::kUnknown;
  /// One 0/1 entry per vertex when SAT.
  std::vector<std::uint8_t> coloring;
  ColoringStats stats;
};

struct ColoringOptions {
  Budget budget;
  /// Randomizes branching order and value order when set.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Exactly one 1 per basis and at most one per exclusive pair.
bool verify_coloring(const ColoringInstance& inst, const std::vector<std::uint8_t>& coloring);

/// Backtracking with unit propagation. A SAT witness is re-verified before
/// it is returned; UNSAT is reported only after an exhaustive search.
ColoringResult solve_coloring(const ColoringInstance& inst, const ColoringOptions& options = {});

/// Bases of the system plus every orthogonal pair as an exclusive pair: an
/// orthogonal pair of rank-one projections extends to a resolution of the
/// identity over the reals, so both cannot take the value 1.
ColoringInstance coloring_instance(const RaySystem& sys);

/// Throws PreconditionError if `sys.bases` is not the complete basis list.
ColoringResult ks_colorable(const RaySystem& sys, const ColoringOptions& options = {});

enum class LiftBases {
  kComplete,      ///< every orthogonal basis among the lifted rays
  kConstruction,  ///< only the slice bases and the standard basis
};

/// Embeds a 3-dimensional system into the coordinate slices {i, i+1, i+2}
/// of n-space and adds the standard axes.
RaySystem lift_to_dimension(const RaySystem& sys, std::size_t n,
                            LiftBases bases = LiftBases::kComplete);

struct LoadedRays {
  RaySystem system;
  std::size_t duplicates = 0;
};

/// Text format: a `dim d` header, then 2d integers per ray (a1 b1 ... ad bd),
/// `#` starts a comment line. Throws ParseError naming the line.
LoadedRays parse_rays(std::istream& in);
LoadedRays load_rays(const std::filesystem::path& path);
void write_rays(std::ostream& out, const RaySystem& sys);
void save_rays(const std::filesystem::path& path, const RaySystem& sys);

std::string to_string(const QuadInt& x);
std::string to_string(const Ray& r);

}  // namespace partspec
