#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "partspec/subset.hpp"

namespace partspec {

/// Default element cap for constructed rings.
inline constexpr std::size_t kDefaultSizeCap = 4096;

/// How thoroughly ring axioms are checked when a table is built.
enum class AxiomCheck {
  kNone,         ///< trusted input (subrings of an already verified ring)
  kAuto,         ///< exhaustive up to 512 elements, sampled above
  kExhaustive,
  kSampled,
};

class RingTable;

/// Entry layout of matrix-like rings: element index = sum of
/// entry[p] * base.size()^p over `positions` (row-major, so position 0 is
/// the least significant digit).
struct MatrixLayout {
  std::shared_ptr<const RingTable> base;
  std::size_t n = 0;
  bool upper_triangular = false;
  std::vector<std::pair<std::size_t, std::size_t>> positions;
};

/// Layout of a direct product: index = mixed radix over `factors`, first
/// factor most significant.
struct ProductLayout {
  std::vector<RingTable> factors;
};

/// A finite unital ring given by dense operation tables. Immutable after
/// construction; copies share storage.
class RingTable {
 public:
  RingTable() = default;

  /// Builds a ring from explicit tables (`size*size` row-major). Negation is
  /// derived from `add`. Throws AxiomError with a witness on violation.
  static RingTable from_tables(std::string label, std::size_t size, std::vector<Elem> add,
                               std::vector<Elem> mul, Elem zero, Elem one,
                               AxiomCheck check = AxiomCheck::kAuto);

  std::size_t size() const { return impl_ ? impl_->size : 0; }
  Elem add(Elem a, Elem b) const { return impl_->add_data[a * impl_->size + b]; }
  Elem mul(Elem a, Elem b) const { return impl_->mul_data[a * impl_->size + b]; }
  Elem neg(Elem a) const { return impl_->neg[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem zero() const { return impl_->zero; }
  Elem one() const { return impl_->one; }
  const std::string& label() const { return impl_->label; }

  bool is_commutative() const { return impl_->commutative; }
  bool commute(Elem a, Elem b) const { return mul(a, b) == mul(b, a); }
  /// Content hash of (size, add table, mul table).
  std::uint64_t fingerprint() const { return impl_->fingerprint; }

  /// m * 1 for an integer m (image of the prime subring).
  Elem scalar(std::int64_t m) const;
  /// m * a.
  Elem multiple(Elem a, std::int64_t m) const;
  Elem power(Elem a, std::uint64_t e) const;
  /// Additive order of 1.
  std::size_t characteristic() const;

  const MatrixLayout* matrix_layout() const { return impl_->matrix ? &*impl_->matrix : nullptr; }
  const ProductLayout* product_layout() const { return impl_->product ? &*impl_->product : nullptr; }

  RingTable with_label(std::string label) const;
  RingTable with_matrix_layout(MatrixLayout layout) const;
  RingTable with_product_layout(ProductLayout layout) const;

  bool same_tables(const RingTable& other) const;

 private:
  struct Impl {
    std::size_t size = 0;
    std::shared_ptr<const std::vector<Elem>> add, mul;
    const Elem* add_data = nullptr;
    const Elem* mul_data = nullptr;
    std::vector<Elem> neg;
    Elem zero = 0, one = 0;
    std::string label;
    bool commutative = false;
    std::uint64_t fingerprint = 0;
    std::optional<MatrixLayout> matrix;
    std::optional<ProductLayout> product;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Checks all ring axioms. Returns the first violation as (axiom, witness).
std::optional<std::pair<std::string, std::vector<Elem>>> find_axiom_violation(
    const RingTable& ring, AxiomCheck mode);

/// A unital subring. `commutative` is computed, never assumed.
struct Subring {
  ElementSubset members;
  bool commutative = false;

  std::size_t size() const { return members.count(); }
  bool operator==(const Subring& other) const { return members == other.members; }
};

/// A function between ring element sets; not necessarily a homomorphism.
struct RingMap {
  RingTable domain;
  RingTable codomain;
  std::vector<Elem> table;

  Elem operator()(Elem x) const { return table[x]; }
};

struct ElementClasses {
  ElementSubset idempotents;
  ElementSubset nilpotents;
  ElementSubset units;
};

/// A subring realized as a standalone ring; `to_ambient[i]` is the ambient
/// index of local element i (ascending).
struct EmbeddedRing {
  RingTable ring;
  std::vector<Elem> to_ambient;

  ElementSubset lift(const ElementSubset& local, std::size_t ambient_size) const;
  ElementSubset restrict(const ElementSubset& ambient) const;
};

// Constructors.
RingTable make_zmod(std::size_t m, std::size_t cap = kDefaultSizeCap);
RingTable make_gf(std::uint32_t p, std::uint32_t k, std::size_t cap = kDefaultSizeCap);
RingTable make_matrix_ring(const RingTable& base, std::size_t n, std::size_t cap = kDefaultSizeCap);
RingTable make_triangular_ring(const RingTable& base, std::size_t n,
                               std::size_t cap = kDefaultSizeCap);
RingTable make_product(const RingTable& a, const RingTable& b, std::size_t cap = kDefaultSizeCap);
/// base^n as a flat n-fold product.
RingTable make_power(const RingTable& base, std::size_t n, std::size_t cap = kDefaultSizeCap);

/// Moduli bundled for GF(p^k): coefficient lists, constant term first,
/// monic leading term included.
const std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>>>&
gf_catalog();

// Element coordinates for structured rings.
std::vector<Elem> matrix_entries(const RingTable& ring, Elem x);
Elem matrix_element(const RingTable& ring, std::span<const Elem> entries);
/// Entry (r, c) of a matrix-like ring element; zero below the diagonal of a
/// triangular ring.
Elem matrix_entry(const RingTable& ring, Elem x, std::size_t r, std::size_t c);
/// Elementary matrix with `value` at (r, c).
Elem matrix_unit(const RingTable& ring, std::size_t r, std::size_t c, Elem value);
std::vector<Elem> product_components(const RingTable& ring, Elem x);
Elem product_element(const RingTable& ring, std::span<const Elem> components);

// Subring machinery.
Subring closure(const RingTable& ring, const ElementSubset& gens);
/// Closure of `closed` plus `extra`, where `closed` is already a subring.
Subring extend_closure(const RingTable& ring, const ElementSubset& closed,
                       std::span<const Elem> extra);
Subring centralizer(const RingTable& ring, const ElementSubset& s);
bool is_subring(const RingTable& ring, const ElementSubset& s);
bool is_commutative_set(const RingTable& ring, const ElementSubset& s);
/// True iff `ideal` is an ideal of the commutative subring `sub`.
bool is_ideal_of(const RingTable& ring, const ElementSubset& sub, const ElementSubset& ideal);
EmbeddedRing as_ring(const RingTable& ring, const Subring& sub);

// Maps.
bool is_ring_hom(const RingMap& f);
RingMap identity_map(const RingTable& ring);
/// g after f.
RingMap compose(const RingMap& g, const RingMap& f);
RingMap matrix_map(const RingMap& f, std::size_t n, std::size_t cap = kDefaultSizeCap);
/// Inclusion of a subring's standalone ring into the ambient ring.
RingMap inclusion_map(const EmbeddedRing& sub, const RingTable& ambient);

bool is_idempotent(const RingTable& ring, Elem x);
bool is_nilpotent(const RingTable& ring, Elem x);
std::optional<Elem> two_sided_inverse(const RingTable& ring, Elem x);
ElementClasses classify_elements(const RingTable& ring);

}  // namespace partspec
