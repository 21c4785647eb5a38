#include "partspec/finring.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "partspec/errors.hpp"

namespace partspec {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

void require_cap(std::size_t size, std::size_t cap, const std::string& what) {
  if (size > cap)
    throw CapacityError(what + " would have " + std::to_string(size) +
                        " elements, above the cap of " + std::to_string(cap));
}

/// base^exp, saturating at limit + 1.
std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > limit / std::max<std::size_t>(base, 1)) return limit + 1;
    r *= base;
  }
  return r;
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

RingTable RingTable::from_tables(std::string label, std::size_t size, std::vector<Elem> add,
                                 std::vector<Elem> mul, Elem zero, Elem one, AxiomCheck check) {
  if (size == 0) throw PreconditionError("ring must have at least one element");
  if (add.size() != size * size || mul.size() != size * size)
    throw PreconditionError("operation tables must have size*size entries");
  if (zero >= size || one >= size) throw PreconditionError("zero/one index out of range");
  for (std::size_t i = 0; i < size * size; ++i) {
    if (add[i] >= size) throw AxiomError("add closure", {Elem(i / size), Elem(i % size)});
    if (mul[i] >= size) throw AxiomError("mul closure", {Elem(i / size), Elem(i % size)});
  }

  auto impl = std::make_shared<Impl>();
  impl->size = size;
  impl->zero = zero;
  impl->one = one;
  impl->label = std::move(label);

  // Negation from the addition table; a missing inverse is an axiom failure.
  impl->neg.assign(size, static_cast<Elem>(size));
  for (Elem a = 0; a < size; ++a)
    for (Elem b = 0; b < size; ++b)
      if (add[a * size + b] == zero) {
        impl->neg[a] = b;
        break;
      }
  for (Elem a = 0; a < size; ++a)
    if (impl->neg[a] == size) throw AxiomError("additive inverse", {a});

  std::uint64_t h = fnv1a(14695981039346656037ull, size);
  for (Elem v : add) h = fnv1a(h, v);
  for (Elem v : mul) h = fnv1a(h, v);
  impl->fingerprint = h;

  bool comm = true;
  for (std::size_t a = 0; a < size && comm; ++a)
    for (std::size_t b = a + 1; b < size; ++b)
      if (mul[a * size + b] != mul[b * size + a]) {
        comm = false;
        break;
      }
  impl->commutative = comm;

  impl->add = std::make_shared<const std::vector<Elem>>(std::move(add));
  impl->mul = std::make_shared<const std::vector<Elem>>(std::move(mul));
  impl->add_data = impl->add->data();
  impl->mul_data = impl->mul->data();

  RingTable ring;
  ring.impl_ = std::move(impl);
  if (check != AxiomCheck::kNone) {
    if (auto bad = find_axiom_violation(ring, check)) throw AxiomError(bad->first, bad->second);
  }
  return ring;
}

RingTable RingTable::with_label(std::string label) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->label = std::move(label);
  RingTable r;
  r.impl_ = std::move(impl);
  return r;
}

RingTable RingTable::with_matrix_layout(MatrixLayout layout) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->matrix = std::move(layout);
  RingTable r;
  r.impl_ = std::move(impl);
  return r;
}

RingTable RingTable::with_product_layout(ProductLayout layout) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->product = std::move(layout);
  RingTable r;
  r.impl_ = std::move(impl);
  return r;
}

bool RingTable::same_tables(const RingTable& other) const {
  if (impl_ == other.impl_) return true;
  if (!impl_ || !other.impl_) return false;
  return size() == other.size() && zero() == other.zero() && one() == other.one() &&
         *impl_->add == *other.impl_->add && *impl_->mul == *other.impl_->mul;
}

Elem RingTable::multiple(Elem a, std::int64_t m) const {
  Elem base = a;
  if (m < 0) {
    base = neg(a);
    m = -m;
  }
  Elem acc = zero();
  while (m) {
    if (m & 1) acc = add(acc, base);
    base = add(base, base);
    m >>= 1;
  }
  return acc;
}

Elem RingTable::scalar(std::int64_t m) const { return multiple(one(), m); }

Elem RingTable::power(Elem a, std::uint64_t e) const {
  Elem acc = one();
  Elem base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

std::size_t RingTable::characteristic() const {
  std::size_t c = 1;
  Elem x = one();
  while (x != zero()) {
    x = add(x, one());
    ++c;
  }
  return c;
}

std::optional<std::pair<std::string, std::vector<Elem>>> find_axiom_violation(
    const RingTable& r, AxiomCheck mode) {
  using Violation = std::pair<std::string, std::vector<Elem>>;
  const Elem n = static_cast<Elem>(r.size());
  if (mode == AxiomCheck::kNone) return std::nullopt;
  if (mode == AxiomCheck::kAuto) mode = n <= 512 ? AxiomCheck::kExhaustive : AxiomCheck::kSampled;

  if (n > 1 && r.zero() == r.one()) return Violation{"zero != one", {r.zero()}};
  for (Elem a = 0; a < n; ++a) {
    if (r.add(a, r.zero()) != a || r.add(r.zero(), a) != a) return Violation{"additive identity", {a}};
    if (r.mul(a, r.one()) != a || r.mul(r.one(), a) != a)
      return Violation{"multiplicative identity", {a}};
    if (r.add(a, r.neg(a)) != r.zero() || r.add(r.neg(a), a) != r.zero())
      return Violation{"additive inverse", {a}};
    for (Elem b = 0; b < n; ++b)
      if (r.add(a, b) != r.add(b, a)) return Violation{"additive commutativity", {a, b}};
  }

  auto check_triple = [&](Elem a, Elem b, Elem c) -> std::optional<Violation> {
    if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
      return Violation{"additive associativity", {a, b, c}};
    if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
      return Violation{"multiplicative associativity", {a, b, c}};
    if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
      return Violation{"left distributivity", {a, b, c}};
    if (r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c)))
      return Violation{"right distributivity", {a, b, c}};
    return std::nullopt;
  };

  if (mode == AxiomCheck::kExhaustive) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (auto v = check_triple(a, b, c)) return v;
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<Elem> pick(0, n - 1);
    for (int i = 0; i < 200000; ++i)
      if (auto v = check_triple(pick(rng), pick(rng), pick(rng))) return v;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructors

RingTable make_zmod(std::size_t m, std::size_t cap) {
  if (m == 0) throw PreconditionError("modulus must be positive");
  require_cap(m, cap, "Z/" + std::to_string(m));
  std::vector<Elem> add(m * m), mul(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      add[a * m + b] = static_cast<Elem>((a + b) % m);
      mul[a * m + b] = static_cast<Elem>((a * b) % m);
    }
  return RingTable::from_tables("Z/" + std::to_string(m), m, std::move(add), std::move(mul), 0,
                                m == 1 ? 0 : 1);
}

const std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>>>&
gf_catalog() {
  static const std::vector<
      std::pair<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>>>
      catalog = {
          {{2, 2}, {1, 1, 1}},                    // x^2 + x + 1
          {{2, 3}, {1, 1, 0, 1}},                 // x^3 + x + 1
          {{2, 4}, {1, 1, 0, 0, 1}},              // x^4 + x + 1
          {{2, 5}, {1, 0, 1, 0, 0, 1}},           // x^5 + x^2 + 1
          {{2, 6}, {1, 1, 0, 0, 0, 0, 1}},        // x^6 + x + 1
          {{2, 8}, {1, 1, 0, 1, 1, 0, 0, 0, 1}},  // x^8 + x^4 + x^3 + x + 1
          {{3, 2}, {1, 0, 1}},                    // x^2 + 1
          {{3, 3}, {1, 2, 0, 1}},                 // x^3 + 2x + 1
          {{5, 2}, {2, 1, 1}},                    // x^2 + x + 2
          {{7, 2}, {1, 0, 1}},                    // x^2 + 1
      };
  return catalog;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // constant term first

/// Remainder of `num` by monic `den` over F_p.
Poly poly_mod(Poly num, const Poly& den, std::uint32_t p) {
  const std::size_t dd = den.size() - 1;
  while (num.size() > dd) {
    const std::uint32_t lead = num.back();
    const std::size_t shift = num.size() - 1 - dd;
    if (lead)
      for (std::size_t i = 0; i <= dd; ++i)
        num[shift + i] = (num[shift + i] + (p - lead) * den[i]) % p;
    num.pop_back();
  }
  return num;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    // Every monic polynomial of degree d.
    const std::size_t count = checked_pow(p, d, SIZE_MAX - 1);
    for (std::size_t code = 0; code < count; ++code) {
      Poly g(d + 1);
      std::size_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[d] = 1;
      const Poly rem = poly_mod(f, g, p);
      if (std::all_of(rem.begin(), rem.end(), [](auto v) { return v == 0; })) return false;
    }
  }
  return true;
}

}  // namespace

RingTable make_gf(std::uint32_t p, std::uint32_t k, std::size_t cap) {
  if (!is_prime(p) || k == 0)
    throw UnsupportedError("GF(" + std::to_string(p) + "^" + std::to_string(k) +
                           ") needs a prime characteristic and positive degree");
  const std::size_t q = checked_pow(p, k, cap);
  require_cap(q, cap, "GF(" + std::to_string(p) + "^" + std::to_string(k) + ")");

  Poly modulus;
  if (k == 1) {
    modulus = {0, 1};
  } else {
    for (const auto& [key, coeffs] : gf_catalog())
      if (key.first == p && key.second == k) modulus = coeffs;
    if (modulus.empty())
      throw UnsupportedError("no bundled modulus for GF(" + std::to_string(p) + "^" +
                             std::to_string(k) + ")");
  }
  if (!is_irreducible(modulus, p)) throw ConsistencyError("bundled modulus is reducible");

  auto decode = [&](std::size_t x) {
    Poly c(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      c[i] = x % p;
      x /= p;
    }
    return c;
  };
  auto encode = [&](const Poly& c) {
    std::size_t x = 0;
    for (std::size_t i = c.size(); i-- > 0;) x = x * p + c[i];
    return static_cast<Elem>(x);
  };

  std::vector<Poly> digits(q);
  for (std::size_t x = 0; x < q; ++x) digits[x] = decode(x);

  std::vector<Elem> add(q * q), mul(q * q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) {
      Poly s(k);
      for (std::uint32_t i = 0; i < k; ++i) s[i] = (digits[a][i] + digits[b][i]) % p;
      add[a * q + b] = encode(s);
      Poly prod(2 * k - 1, 0);
      for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < k; ++j)
          prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p;
      Poly rem = poly_mod(prod, modulus, p);
      rem.resize(k, 0);
      mul[a * q + b] = encode(rem);
    }
  const std::string label =
      k == 1 ? "F" + std::to_string(p) : "F" + std::to_string(q);
  return RingTable::from_tables(label, q, std::move(add), std::move(mul), 0, 1);
}

namespace {

RingTable build_matrix_like(const RingTable& base, std::size_t n, bool triangular,
                            std::size_t cap) {
  if (n == 0) throw PreconditionError("matrix size must be positive");
  if (triangular && !base.is_commutative())
    throw PreconditionError("triangular rings require a commutative base");
  std::vector<std::pair<std::size_t, std::size_t>> positions;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = triangular ? r : 0; c < n; ++c) positions.emplace_back(r, c);

  const std::size_t s = base.size();
  const std::string label =
      (triangular ? "T" : "M") + std::to_string(n) + "(" + base.label() + ")";
  const std::size_t size = checked_pow(s, positions.size(), cap);
  require_cap(size, cap, label);

  // Position index of (r, c), or npos below the diagonal.
  const std::size_t npos = SIZE_MAX;
  std::vector<std::size_t> slot(n * n, npos);
  for (std::size_t i = 0; i < positions.size(); ++i)
    slot[positions[i].first * n + positions[i].second] = i;

  std::vector<std::vector<Elem>> entries(size, std::vector<Elem>(positions.size()));
  for (std::size_t x = 0; x < size; ++x) {
    std::size_t v = x;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      entries[x][i] = static_cast<Elem>(v % s);
      v /= s;
    }
  }
  auto encode = [&](const std::vector<Elem>& e) {
    std::size_t x = 0;
    for (std::size_t i = e.size(); i-- > 0;) x = x * s + e[i];
    return static_cast<Elem>(x);
  };

  std::vector<Elem> add(size * size), mul(size * size);
  std::vector<Elem> tmp(positions.size());
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      for (std::size_t i = 0; i < positions.size(); ++i)
        tmp[i] = base.add(entries[a][i], entries[b][i]);
      add[a * size + b] = encode(tmp);
      for (std::size_t i = 0; i < positions.size(); ++i) {
        const auto [r, c] = positions[i];
        Elem acc = base.zero();
        for (std::size_t m = 0; m < n; ++m) {
          const std::size_t left = slot[r * n + m], right = slot[m * n + c];
          if (left == npos || right == npos) continue;
          acc = base.add(acc, base.mul(entries[a][left], entries[b][right]));
        }
        tmp[i] = acc;
      }
      mul[a * size + b] = encode(tmp);
    }

  std::vector<Elem> zero_e(positions.size(), base.zero()), one_e(positions.size(), base.zero());
  for (std::size_t r = 0; r < n; ++r) one_e[slot[r * n + r]] = base.one();
  RingTable ring = RingTable::from_tables(label, size, std::move(add), std::move(mul),
                                          encode(zero_e), encode(one_e));
  MatrixLayout layout{std::make_shared<const RingTable>(base), n, triangular, positions};
  return ring.with_matrix_layout(std::move(layout));
}

}  // namespace

RingTable make_matrix_ring(const RingTable& base, std::size_t n, std::size_t cap) {
  return build_matrix_like(base, n, false, cap);
}

RingTable make_triangular_ring(const RingTable& base, std::size_t n, std::size_t cap) {
  return build_matrix_like(base, n, true, cap);
}

namespace {

RingTable build_product(const std::vector<RingTable>& factors, std::size_t cap) {
  std::size_t size = 1;
  std::string label;
  for (const auto& f : factors) {
    if (size > cap / std::max<std::size_t>(f.size(), 1)) size = cap + 1;
    else size *= f.size();
    label += (label.empty() ? "" : "x") + f.label();
  }
  require_cap(size, cap, label);

  const std::size_t k = factors.size();
  std::vector<std::vector<Elem>> comps(size, std::vector<Elem>(k));
  for (std::size_t x = 0; x < size; ++x) {
    std::size_t v = x;
    for (std::size_t i = k; i-- > 0;) {
      comps[x][i] = static_cast<Elem>(v % factors[i].size());
      v /= factors[i].size();
    }
  }
  auto encode = [&](const std::vector<Elem>& c) {
    std::size_t x = 0;
    for (std::size_t i = 0; i < k; ++i) x = x * factors[i].size() + c[i];
    return static_cast<Elem>(x);
  };
  std::vector<Elem> add(size * size), mul(size * size), tmp(k);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      for (std::size_t i = 0; i < k; ++i) tmp[i] = factors[i].add(comps[a][i], comps[b][i]);
      add[a * size + b] = encode(tmp);
      for (std::size_t i = 0; i < k; ++i) tmp[i] = factors[i].mul(comps[a][i], comps[b][i]);
      mul[a * size + b] = encode(tmp);
    }
  std::vector<Elem> z(k), o(k);
  for (std::size_t i = 0; i < k; ++i) {
    z[i] = factors[i].zero();
    o[i] = factors[i].one();
  }
  RingTable ring =
      RingTable::from_tables(label, size, std::move(add), std::move(mul), encode(z), encode(o));
  return ring.with_product_layout(ProductLayout{factors});
}

}  // namespace

RingTable make_product(const RingTable& a, const RingTable& b, std::size_t cap) {
  return build_product({a, b}, cap);
}

RingTable make_power(const RingTable& base, std::size_t n, std::size_t cap) {
  if (n == 0) throw PreconditionError("power must be positive");
  RingTable r = build_product(std::vector<RingTable>(n, base), cap);
  return r.with_label(base.label() + "^" + std::to_string(n));
}

// ---------------------------------------------------------------------------
// Coordinates

std::vector<Elem> matrix_entries(const RingTable& ring, Elem x) {
  const MatrixLayout* m = ring.matrix_layout();
  if (!m) throw PreconditionError(ring.label() + " is not a matrix ring");
  const std::size_t s = m->base->size();
  std::vector<Elem> e(m->positions.size());
  for (auto& v : e) {
    v = static_cast<Elem>(x % s);
    x = static_cast<Elem>(x / s);
  }
  return e;
}

Elem matrix_element(const RingTable& ring, std::span<const Elem> entries) {
  const MatrixLayout* m = ring.matrix_layout();
  if (!m) throw PreconditionError(ring.label() + " is not a matrix ring");
  if (entries.size() != m->positions.size())
    throw PreconditionError("wrong number of matrix entries");
  const std::size_t s = m->base->size();
  std::size_t x = 0;
  for (std::size_t i = entries.size(); i-- > 0;) x = x * s + entries[i];
  return static_cast<Elem>(x);
}

Elem matrix_entry(const RingTable& ring, Elem x, std::size_t r, std::size_t c) {
  const MatrixLayout* m = ring.matrix_layout();
  if (!m) throw PreconditionError(ring.label() + " is not a matrix ring");
  const auto e = matrix_entries(ring, x);
  for (std::size_t i = 0; i < m->positions.size(); ++i)
    if (m->positions[i] == std::pair{r, c}) return e[i];
  return m->base->zero();
}

Elem matrix_unit(const RingTable& ring, std::size_t r, std::size_t c, Elem value) {
  const MatrixLayout* m = ring.matrix_layout();
  if (!m) throw PreconditionError(ring.label() + " is not a matrix ring");
  std::vector<Elem> e(m->positions.size(), m->base->zero());
  bool placed = false;
  for (std::size_t i = 0; i < m->positions.size(); ++i)
    if (m->positions[i] == std::pair{r, c}) {
      e[i] = value;
      placed = true;
    }
  if (!placed) throw PreconditionError("position outside the ring's support");
  return matrix_element(ring, e);
}

std::vector<Elem> product_components(const RingTable& ring, Elem x) {
  const ProductLayout* p = ring.product_layout();
  if (!p) throw PreconditionError(ring.label() + " is not a product ring");
  std::vector<Elem> c(p->factors.size());
  for (std::size_t i = c.size(); i-- > 0;) {
    c[i] = static_cast<Elem>(x % p->factors[i].size());
    x = static_cast<Elem>(x / p->factors[i].size());
  }
  return c;
}

Elem product_element(const RingTable& ring, std::span<const Elem> components) {
  const ProductLayout* p = ring.product_layout();
  if (!p) throw PreconditionError(ring.label() + " is not a product ring");
  if (components.size() != p->factors.size())
    throw PreconditionError("wrong number of product components");
  std::size_t x = 0;
  for (std::size_t i = 0; i < components.size(); ++i) x = x * p->factors[i].size() + components[i];
  return static_cast<Elem>(x);
}

// ---------------------------------------------------------------------------
// Subrings

bool is_commutative_set(const RingTable& ring, const ElementSubset& s) {
  const auto m = s.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (!ring.commute(m[i], m[j])) return false;
  return true;
}

Subring extend_closure(const RingTable& ring, const ElementSubset& closed,
                       std::span<const Elem> extra) {
  ElementSubset set = closed;
  std::vector<Elem> elems = closed.members();
  const std::size_t settled = elems.size();
  for (Elem g : extra)
    if (set.insert(g)) elems.push_back(g);
  auto push = [&](Elem x) {
    if (set.insert(x)) elems.push_back(x);
  };
  // Elements before `settled` are already closed among themselves; each new
  // element is combined with everything found before it, and with itself.
  for (std::size_t i = settled; i < elems.size(); ++i) {
    const Elem x = elems[i];
    push(ring.neg(x));
    for (std::size_t j = 0; j <= i; ++j) {
      const Elem y = elems[j];
      push(ring.add(x, y));
      push(ring.mul(x, y));
      push(ring.mul(y, x));
    }
  }
  Subring out{std::move(set), false};
  out.commutative = is_commutative_set(ring, out.members);
  return out;
}

Subring closure(const RingTable& ring, const ElementSubset& gens) {
  ElementSubset empty(ring.size());
  std::vector<Elem> seed = {ring.zero(), ring.one()};
  for (Elem g : gens.members()) seed.push_back(g);
  return extend_closure(ring, empty, seed);
}

Subring centralizer(const RingTable& ring, const ElementSubset& s) {
  const auto members = s.members();
  ElementSubset out(ring.size());
  for (Elem x = 0; x < ring.size(); ++x) {
    bool ok = true;
    for (Elem a : members)
      if (!ring.commute(x, a)) {
        ok = false;
        break;
      }
    if (ok) out.insert(x);
  }
  Subring sub{std::move(out), false};
  sub.commutative = is_commutative_set(ring, sub.members);
  return sub;
}

bool is_subring(const RingTable& ring, const ElementSubset& s) {
  if (!s.contains(ring.zero()) || !s.contains(ring.one())) return false;
  const auto m = s.members();
  for (Elem a : m) {
    if (!s.contains(ring.neg(a))) return false;
    for (Elem b : m)
      if (!s.contains(ring.add(a, b)) || !s.contains(ring.mul(a, b))) return false;
  }
  return true;
}

bool is_ideal_of(const RingTable& ring, const ElementSubset& sub, const ElementSubset& ideal) {
  if (!ideal.is_subset_of(sub) || !ideal.contains(ring.zero())) return false;
  const auto im = ideal.members();
  const auto sm = sub.members();
  for (Elem a : im) {
    for (Elem b : im)
      if (!ideal.contains(ring.add(a, b))) return false;
    for (Elem c : sm)
      if (!ideal.contains(ring.mul(c, a)) || !ideal.contains(ring.mul(a, c))) return false;
  }
  return true;
}

EmbeddedRing as_ring(const RingTable& ring, const Subring& sub) {
  EmbeddedRing out;
  out.to_ambient = sub.members.members();
  const std::size_t n = out.to_ambient.size();
  std::vector<Elem> local(ring.size(), static_cast<Elem>(n));
  for (std::size_t i = 0; i < n; ++i) local[out.to_ambient[i]] = static_cast<Elem>(i);
  std::vector<Elem> add(n * n), mul(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Elem s = local[ring.add(out.to_ambient[i], out.to_ambient[j])];
      const Elem p = local[ring.mul(out.to_ambient[i], out.to_ambient[j])];
      if (s == n || p == n) throw PreconditionError("subset is not closed under the ring operations");
      add[i * n + j] = s;
      mul[i * n + j] = p;
    }
  if (local[ring.zero()] == n || local[ring.one()] == n)
    throw PreconditionError("subset does not contain zero and one");
  out.ring = RingTable::from_tables(ring.label() + "|sub" + std::to_string(n), n, std::move(add),
                                    std::move(mul), local[ring.zero()], local[ring.one()],
                                    AxiomCheck::kNone);
  return out;
}

ElementSubset EmbeddedRing::lift(const ElementSubset& local, std::size_t ambient_size) const {
  ElementSubset out(ambient_size);
  local.for_each([&](Elem x) { out.insert(to_ambient[x]); });
  return out;
}

ElementSubset EmbeddedRing::restrict(const ElementSubset& ambient) const {
  ElementSubset out(to_ambient.size());
  for (std::size_t i = 0; i < to_ambient.size(); ++i)
    if (ambient.contains(to_ambient[i])) out.insert(static_cast<Elem>(i));
  return out;
}

// ---------------------------------------------------------------------------
// Maps

bool is_ring_hom(const RingMap& f) {
  const RingTable& a = f.domain;
  const RingTable& b = f.codomain;
  if (f.table.size() != a.size()) throw PreconditionError("map table length != domain size");
  for (Elem v : f.table)
    if (v >= b.size()) return false;
  if (f(a.zero()) != b.zero() || f(a.one()) != b.one()) return false;
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = 0; y < a.size(); ++y) {
      if (f(a.add(x, y)) != b.add(f(x), f(y))) return false;
      if (f(a.mul(x, y)) != b.mul(f(x), f(y))) return false;
    }
  return true;
}

RingMap identity_map(const RingTable& ring) {
  RingMap m{ring, ring, std::vector<Elem>(ring.size())};
  std::iota(m.table.begin(), m.table.end(), Elem{0});
  return m;
}

RingMap compose(const RingMap& g, const RingMap& f) {
  if (f.codomain.size() != g.domain.size())
    throw PreconditionError("maps are not composable");
  RingMap out{f.domain, g.codomain, std::vector<Elem>(f.table.size())};
  for (std::size_t i = 0; i < f.table.size(); ++i) out.table[i] = g.table[f.table[i]];
  return out;
}

RingMap matrix_map(const RingMap& f, std::size_t n, std::size_t cap) {
  if (!is_ring_hom(f)) throw PreconditionError("matrix_map requires a ring homomorphism");
  RingTable src = make_matrix_ring(f.domain, n, cap);
  RingTable dst = make_matrix_ring(f.codomain, n, cap);
  RingMap out{src, dst, std::vector<Elem>(src.size())};
  for (Elem x = 0; x < src.size(); ++x) {
    auto e = matrix_entries(src, x);
    for (auto& v : e) v = f(v);
    out.table[x] = matrix_element(dst, e);
  }
  return out;
}

RingMap inclusion_map(const EmbeddedRing& sub, const RingTable& ambient) {
  return RingMap{sub.ring, ambient, sub.to_ambient};
}

bool is_idempotent(const RingTable& ring, Elem x) { return ring.mul(x, x) == x; }

bool is_nilpotent(const RingTable& ring, Elem x) {
  // x^(2^k) with 2^k >= size suffices.
  Elem y = x;
  for (std::size_t e = 1; e < ring.size(); e *= 2) y = ring.mul(y, y);
  return y == ring.zero();
}

std::optional<Elem> two_sided_inverse(const RingTable& ring, Elem x) {
  for (Elem y = 0; y < ring.size(); ++y)
    if (ring.mul(x, y) == ring.one() && ring.mul(y, x) == ring.one()) return y;
  return std::nullopt;
}

ElementClasses classify_elements(const RingTable& ring) {
  const std::size_t n = ring.size();
  ElementClasses c{ElementSubset(n), ElementSubset(n), ElementSubset(n)};
  for (Elem x = 0; x < n; ++x) {
    if (is_idempotent(ring, x)) c.idempotents.insert(x);
    if (is_nilpotent(ring, x)) c.nilpotents.insert(x);
    if (two_sided_inverse(ring, x)) c.units.insert(x);
  }
  return c;
}

}  // namespace partspec
