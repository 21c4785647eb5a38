#include "partspec/primespec.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "partspec/errors.hpp"

namespace partspec {

namespace {

constexpr Elem kUnset = UINT32_MAX;

void require_commutative(const RingTable& c, const char* what) {
  if (!c.is_commutative()) throw PreconditionError(std::string(what) + " requires a commutative ring");
}

/// Sum of two ideals of a commutative ring.
ElementSubset ideal_sum(const RingTable& c, const ElementSubset& i, const ElementSubset& j) {
  ElementSubset out(c.size());
  const auto jm = j.members();
  i.for_each([&](Elem x) {
    for (Elem y : jm) out.insert(c.add(x, y));
  });
  return out;
}

ElementSubset principal_ideal(const RingTable& c, Elem x) {
  ElementSubset out(c.size());
  for (Elem r = 0; r < c.size(); ++r) out.insert(c.mul(r, x));
  return out;
}

bool is_prime_ideal(const RingTable& c, const ElementSubset& p) {
  if (p.count() == c.size()) return false;
  const auto outside = (ElementSubset::full(c.size()) - p).members();
  for (Elem a : outside)
    for (Elem b : outside)
      if (p.contains(c.mul(a, b))) return false;
  return true;
}

}  // namespace

std::vector<ElementSubset> enumerate_ideals(const RingTable& c, const Budget& budget) {
  require_commutative(c, "ideal enumeration");
  BudgetMeter meter(budget);

  // Every ideal of a finite commutative ring is a finite sum of principal
  // ideals, so closing {0} under "add a principal ideal" reaches them all.
  std::vector<ElementSubset> principals;
  {
    std::unordered_set<ElementSubset> seen;
    for (Elem x = 0; x < c.size(); ++x) {
      auto p = principal_ideal(c, x);
      if (seen.insert(p).second) principals.push_back(std::move(p));
    }
  }

  std::unordered_set<ElementSubset> seen;
  std::vector<ElementSubset> ideals;
  ElementSubset zero(c.size(), {c.zero()});
  seen.insert(zero);
  ideals.push_back(zero);
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    for (const auto& p : principals) {
      if (p.is_subset_of(ideals[i])) continue;
      if (!meter.charge())
        throw BudgetExhausted("ideal enumeration ran out of budget for " + c.label(), meter.nodes(),
                              ideals.size());
      auto sum = ideal_sum(c, ideals[i], p);
      if (seen.insert(sum).second) ideals.push_back(std::move(sum));
    }
  }
  std::sort(ideals.begin(), ideals.end(), canonical_less);
  return ideals;
}

SpecResult spec(const RingTable& c, const Budget& budget) {
  require_commutative(c, "spec");
  const auto ideals = enumerate_ideals(c, budget);
  SpecResult out{c, {}};
  for (const auto& i : ideals)
    if (is_prime_ideal(c, i)) out.primes.push_back(i);
  // Finite commutative rings are artinian: primes are maximal.
  for (const auto& p : out.primes)
    for (const auto& i : ideals)
      if (p.is_subset_of(i) && i != p && i.count() != c.size())
        throw ConsistencyError("prime ideal of a finite commutative ring is not maximal");
  return out;
}

std::vector<std::size_t> spec_map(const RingMap& f, const SpecResult& domain,
                                  const SpecResult& codomain) {
  require_commutative(f.domain, "spec_map");
  require_commutative(f.codomain, "spec_map");
  if (!is_ring_hom(f)) throw PreconditionError("spec_map requires a ring homomorphism");
  std::vector<std::size_t> out;
  for (const auto& q : codomain.primes) {
    ElementSubset pre(f.domain.size());
    for (Elem x = 0; x < f.domain.size(); ++x)
      if (q.contains(f(x))) pre.insert(x);
    auto it = std::find(domain.primes.begin(), domain.primes.end(), pre);
    if (it == domain.primes.end()) throw ConsistencyError("preimage of a prime is not among the domain primes");
    out.push_back(static_cast<std::size_t>(it - domain.primes.begin()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// partSpec as a limit

namespace {

/// Pairwise compatibility between candidate values of CSP variables.
/// ok(v, p, u, q) is looked up in a dense table per ordered variable pair.
class PairTable {
 public:
  PairTable(std::size_t vars, const std::vector<std::size_t>& domain_sizes)
      : vars_(vars), sizes_(domain_sizes), tables_(vars * vars) {}

  void set(std::size_t v, std::size_t u, std::vector<std::uint8_t> table) {
    tables_[v * vars_ + u] = std::move(table);
  }
  bool trivial(std::size_t v, std::size_t u) const { return tables_[v * vars_ + u].empty(); }
  bool ok(std::size_t v, std::size_t p, std::size_t u, std::size_t q) const {
    const auto& t = tables_[v * vars_ + u];
    return t.empty() || t[p * sizes_[u] + q];
  }

 private:
  std::size_t vars_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<std::uint8_t>> tables_;
};

/// Forward-checking backtracking over finite domains with a pairwise
/// constraint table. Calls `emit` with each full assignment.
class PairwiseCsp {
 public:
  PairwiseCsp(const std::vector<std::size_t>& sizes, const PairTable& table, BudgetMeter& meter)
      : sizes_(sizes), table_(table), meter_(meter) {
    const std::size_t m = sizes.size();
    order_.resize(m);
    std::iota(order_.begin(), order_.end(), 0);
    // Fail-first: smallest domains first, ties by variable index.
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return sizes_[a] < sizes_[b]; });
    alive_.resize(m);
    count_.resize(m);
    for (std::size_t v = 0; v < m; ++v) {
      alive_[v].assign(sizes[v], 1);
      count_[v] = sizes[v];
    }
    assignment_.assign(m, 0);
  }

  template <typename Emit>
  bool run(Emit&& emit) {
    for (std::size_t v = 0; v < sizes_.size(); ++v)
      if (sizes_[v] == 0) return true;
    search(0, emit);
    return !aborted_;
  }

  std::uint64_t backtracks() const { return backtracks_; }

 private:
  template <typename Emit>
  void search(std::size_t depth, Emit& emit) {
    if (depth == order_.size()) {
      emit(assignment_);
      return;
    }
    const std::size_t v = order_[depth];
    for (std::size_t p = 0; p < sizes_[v] && !aborted_; ++p) {
      if (!alive_[v][p]) continue;
      if (!meter_.charge()) {
        aborted_ = true;
        return;
      }
      assignment_[v] = p;
      std::vector<std::pair<std::size_t, std::size_t>> trail;
      bool wiped = false;
      for (std::size_t d = depth + 1; d < order_.size() && !wiped; ++d) {
        const std::size_t u = order_[d];
        if (table_.trivial(v, u)) continue;
        for (std::size_t q = 0; q < sizes_[u]; ++q)
          if (alive_[u][q] && !table_.ok(v, p, u, q)) {
            alive_[u][q] = 0;
            --count_[u];
            trail.emplace_back(u, q);
          }
        if (count_[u] == 0) wiped = true;
      }
      if (!wiped) search(depth + 1, emit);
      else ++backtracks_;
      for (auto [u, q] : trail) {
        alive_[u][q] = 1;
        ++count_[u];
      }
    }
  }

  const std::vector<std::size_t>& sizes_;
  const PairTable& table_;
  BudgetMeter& meter_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::uint8_t>> alive_;
  std::vector<std::size_t> count_;
  std::vector<std::size_t> assignment_;
  std::uint64_t backtracks_ = 0;
  bool aborted_ = false;
};

void require_lattice_of(const RingTable& ring, const CommLattice& lat) {
  if (!ring.same_tables(lat.ring)) throw PreconditionError("lattice belongs to a different ring");
  if (lat.maximal.empty()) throw PreconditionError("lattice has no maximal subrings (incomplete)");
}

}  // namespace

PartSpecResult part_spec(const RingTable& ring, const CommLattice& lat, const Budget& budget) {
  require_lattice_of(ring, lat);
  BudgetMeter meter(budget);
  PartSpecResult out;
  out.ring = ring;

  for (std::size_t idx : lat.maximal) {
    const EmbeddedRing emb = as_ring(ring, lat.subrings[idx]);
    SpecResult s;
    try {
      s = spec(emb.ring, budget);
    } catch (const BudgetExhausted& e) {
      out.stats.nodes = e.nodes();
      out.stats.seconds = meter.elapsed_seconds();
      return out;
    }
    LocalSpec local{idx, {}};
    for (const auto& p : s.primes) local.primes.push_back(emb.lift(p, ring.size()));
    out.local.push_back(std::move(local));
  }

  const std::size_t m = out.local.size();
  std::vector<std::size_t> sizes(m);
  for (std::size_t v = 0; v < m; ++v) sizes[v] = out.local[v].primes.size();
  PairTable table(m, sizes);
  for (std::size_t v = 0; v < m; ++v)
    for (std::size_t u = 0; u < m; ++u) {
      if (u == v) continue;
      const auto& cv = lat.subrings[out.local[v].subring].members;
      const auto& cu = lat.subrings[out.local[u].subring].members;
      std::vector<std::uint8_t> t(sizes[v] * sizes[u]);
      bool all = true;
      for (std::size_t p = 0; p < sizes[v]; ++p)
        for (std::size_t q = 0; q < sizes[u]; ++q) {
          const bool ok = (out.local[v].primes[p] & cu) == (cv & out.local[u].primes[q]);
          t[p * sizes[u] + q] = ok;
          all = all && ok;
        }
      if (!all) table.set(v, u, std::move(t));
    }

  PairwiseCsp csp(sizes, table, meter);
  const bool complete = csp.run([&](const std::vector<std::size_t>& a) {
    out.families.push_back(CompatibleFamily{a});
  });
  out.stats.nodes = meter.nodes();
  out.stats.backtracks = csp.backtracks();
  out.stats.complete = complete;

  std::sort(out.families.begin(), out.families.end());
  const PartialStructure structure = standard_structure(ring);
  for (const auto& fam : out.families) {
    FamilyAssignment a;
    for (std::size_t v = 0; v < m; ++v) a.emplace(out.local[v].subring, out.local[v].primes[fam.choice[v]]);
    ElementSubset glued = glue_family(lat, a);
    if (!is_prime_partial_ideal(structure, glued))
      throw ConsistencyError("glued family is not a prime partial ideal");
    out.ideals.push_back(std::move(glued));
  }
  out.stats.seconds = meter.elapsed_seconds();
  return out;
}

std::vector<std::size_t> part_spec_map(const RingMap& f, const PartSpecResult& domain,
                                       const PartSpecResult& codomain) {
  if (!domain.stats.complete || !codomain.stats.complete)
    throw PreconditionError("part_spec_map needs complete partSpec results");
  if (!f.domain.same_tables(domain.ring) || !f.codomain.same_tables(codomain.ring))
    throw PreconditionError("map does not match the given partSpec results");
  std::vector<std::size_t> out;
  for (const auto& q : codomain.ideals) {
    const ElementSubset pre = preimage(f, q);
    auto it = std::find(domain.ideals.begin(), domain.ideals.end(), pre);
    if (it == domain.ideals.end())
      throw ConsistencyError("preimage of a prime partial ideal is missing from the domain's partSpec");
    out.push_back(static_cast<std::size_t>(it - domain.ideals.begin()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms

namespace {

struct HomState {
  std::vector<Elem> map;
  std::vector<Elem> known;
};

/// Extends `s` from its unsettled elements; false on a contradiction.
bool propagate(const RingTable& a, const RingTable& b, HomState& s, std::size_t settled) {
  auto bind = [&](Elem x, Elem v) {
    if (s.map[x] == kUnset) {
      s.map[x] = v;
      s.known.push_back(x);
      return true;
    }
    return s.map[x] == v;
  };
  for (std::size_t i = settled; i < s.known.size(); ++i) {
    const Elem x = s.known[i];
    if (!bind(a.neg(x), b.neg(s.map[x]))) return false;
    for (std::size_t j = 0; j <= i; ++j) {
      const Elem y = s.known[j];
      if (!bind(a.add(x, y), b.add(s.map[x], s.map[y]))) return false;
      if (!bind(a.mul(x, y), b.mul(s.map[x], s.map[y]))) return false;
      if (!bind(a.mul(y, x), b.mul(s.map[y], s.map[x]))) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<RingMap> enumerate_ring_homs(const RingTable& a, const RingTable& b,
                                         const Budget& budget) {
  BudgetMeter meter(budget);
  // Greedy generating set.
  std::vector<Elem> gens;
  Subring reached = closure(a, ElementSubset(a.size()));
  for (Elem x = 0; x < a.size(); ++x) {
    if (reached.members.contains(x)) continue;
    gens.push_back(x);
    const Elem extra[] = {x};
    reached = extend_closure(a, reached.members, extra);
  }

  HomState start{std::vector<Elem>(a.size(), kUnset), {}};
  start.map[a.zero()] = b.zero();
  start.known.push_back(a.zero());
  if (a.one() != a.zero()) {
    start.map[a.one()] = b.one();
    start.known.push_back(a.one());
  } else if (b.one() != b.zero()) {
    return {};
  }
  std::vector<RingMap> out;
  if (!propagate(a, b, start, 0)) return out;

  std::vector<HomState> stack = {start};
  std::vector<std::size_t> depth = {0};
  while (!stack.empty()) {
    HomState s = std::move(stack.back());
    const std::size_t d = depth.back();
    stack.pop_back();
    depth.pop_back();
    if (!meter.charge())
      throw BudgetExhausted("homomorphism search ran out of budget", meter.nodes(), out.size());
    if (d == gens.size()) {
      RingMap f{a, b, s.map};
      if (std::find(f.table.begin(), f.table.end(), kUnset) != f.table.end() || !is_ring_hom(f))
        throw ConsistencyError("propagated map is not a total ring homomorphism");
      out.push_back(std::move(f));
      continue;
    }
    const Elem g = gens[d];
    if (s.map[g] != kUnset) {
      stack.push_back(std::move(s));
      depth.push_back(d + 1);
      continue;
    }
    for (Elem v = b.size(); v-- > 0;) {
      HomState next = s;
      const std::size_t settled = next.known.size();
      next.map[g] = v;
      next.known.push_back(g);
      if (propagate(a, b, next, settled)) {
        stack.push_back(std::move(next));
        depth.push_back(d + 1);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RingMap& x, const RingMap& y) { return x.table < y.table; });
  return out;
}

std::vector<PartialMorphism> enumerate_partial_morphisms(const RingTable& ring, const RingTable& k,
                                                         const CommLattice& lat,
                                                         const Budget& budget) {
  require_lattice_of(ring, lat);
  if (!k.is_commutative() || k.size() < 2) throw PreconditionError("target must be a field");
  for (Elem x = 0; x < k.size(); ++x)
    if (x != k.zero() && !two_sided_inverse(k, x)) throw PreconditionError("target must be a field");

  BudgetMeter meter(budget);
  const std::size_t m = lat.maximal.size();
  std::vector<std::vector<std::vector<Elem>>> local(m);  // ambient-indexed partial tables
  for (std::size_t v = 0; v < m; ++v) {
    const EmbeddedRing emb = as_ring(ring, lat.subrings[lat.maximal[v]]);
    for (const RingMap& h : enumerate_ring_homs(emb.ring, k, budget)) {
      std::vector<Elem> t(ring.size(), kUnset);
      for (std::size_t i = 0; i < emb.to_ambient.size(); ++i) t[emb.to_ambient[i]] = h.table[i];
      local[v].push_back(std::move(t));
    }
  }
  std::vector<std::size_t> sizes(m);
  for (std::size_t v = 0; v < m; ++v) sizes[v] = local[v].size();

  PairTable table(m, sizes);
  for (std::size_t v = 0; v < m; ++v)
    for (std::size_t u = 0; u < m; ++u) {
      if (u == v) continue;
      const auto overlap = (lat.subrings[lat.maximal[v]].members &
                            lat.subrings[lat.maximal[u]].members).members();
      std::vector<std::uint8_t> t(sizes[v] * sizes[u]);
      bool all = true;
      for (std::size_t p = 0; p < sizes[v]; ++p)
        for (std::size_t q = 0; q < sizes[u]; ++q) {
          bool ok = true;
          for (Elem x : overlap)
            if (local[v][p][x] != local[u][q][x]) {
              ok = false;
              break;
            }
          t[p * sizes[u] + q] = ok;
          all = all && ok;
        }
      if (!all) table.set(v, u, std::move(t));
    }

  std::vector<std::vector<Elem>> tables;
  PairwiseCsp csp(sizes, table, meter);
  const bool complete = csp.run([&](const std::vector<std::size_t>& a) {
    std::vector<Elem> t(ring.size(), kUnset);
    for (std::size_t v = 0; v < m; ++v)
      for (Elem x = 0; x < ring.size(); ++x)
        if (local[v][a[v]][x] != kUnset) t[x] = local[v][a[v]][x];
    tables.push_back(std::move(t));
  });
  if (!complete)
    throw BudgetExhausted("partial morphism search ran out of budget", meter.nodes(), tables.size());

  std::sort(tables.begin(), tables.end());
  const PartialStructure structure = standard_structure(ring);
  std::vector<PartialMorphism> out;
  for (auto& t : tables) {
    if (std::find(t.begin(), t.end(), kUnset) != t.end())
      throw ConsistencyError("an element lies in no maximal commutative subring");
    PartialMorphism f{structure, k, std::move(t)};
    if (!is_partial_morphism(f)) throw ConsistencyError("glued function is not a partial morphism");
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace partspec
