#include "partspec/partial.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "partspec/errors.hpp"

namespace partspec {

PartialStructure PartialStructure::standard(const RingTable& ring) {
  const std::size_t n = ring.size();
  std::vector<ElementSubset> rows(n, ElementSubset(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b)
      if (ring.commute(a, b)) {
        rows[a].insert(b);
        rows[b].insert(a);
      }
  PartialStructure s;
  s.ring_ = ring;
  s.rows_ = std::make_shared<const std::vector<ElementSubset>>(std::move(rows));
  s.standard_ = true;
  return s;
}

PartialStructure PartialStructure::from_relation(const RingTable& ring,
                                                 std::vector<ElementSubset> rows) {
  if (rows.size() != ring.size()) throw PreconditionError("relation needs one row per element");
  for (const auto& r : rows)
    if (r.universe() != ring.size()) throw PreconditionError("relation row has wrong universe");
  PartialStructure s;
  s.ring_ = ring;
  s.rows_ = std::make_shared<const std::vector<ElementSubset>>(std::move(rows));
  return s;
}

PartialStructure standard_structure(const RingTable& ring) {
  return PartialStructure::standard(ring);
}

bool AxiomReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

const AxiomResult* AxiomReport::find(const std::string& axiom) const {
  for (const auto& r : results)
    if (r.axiom == axiom) return &r;
  return nullptr;
}

AxiomReport check_axioms(const PartialStructure& s) {
  const RingTable& r = s.ring();
  const Elem n = static_cast<Elem>(r.size());
  const std::size_t chr = r.characteristic();

  std::deque<AxiomResult> results;
  auto entry = [&](const char* name) -> AxiomResult& {
    results.push_back({name, true, {}});
    return results.back();
  };
  auto fail = [](AxiomResult& res, std::vector<Elem> w) {
    if (res.passed) {
      res.passed = false;
      res.witness = std::move(w);
    }
  };

  AxiomResult& reflexive = entry("reflexive");
  AxiomResult& symmetric = entry("symmetric");
  AxiomResult& zero_one = entry("(1) zero and one");
  for (Elem a = 0; a < n; ++a) {
    if (!s.commeasurable(a, a)) fail(reflexive, {a});
    if (!s.commeasurable(a, r.zero()) || !s.commeasurable(a, r.one())) fail(zero_one, {a});
    s.row(a).for_each([&](Elem b) {
      if (!s.commeasurable(b, a)) fail(symmetric, {a, b});
    });
  }

  AxiomResult& identities = entry("(3.0) identities");
  AxiomResult& commutative = entry("(3.1) commutativity");
  AxiomResult& negation = entry("(3.4) negation");
  AxiomResult& bilinear = entry("(3.5) bilinearity");
  for (Elem a = 0; a < n; ++a) {
    if (s.commeasurable(a, r.zero()) && r.add(r.zero(), a) != a) fail(identities, {a});
    if (s.commeasurable(a, r.one()) && (r.mul(r.one(), a) != a || r.mul(a, r.one()) != a))
      fail(identities, {a});
    const Elem na = r.neg(a);
    if (!s.commeasurable(a, na) || r.add(a, na) != r.zero()) fail(negation, {a});
    s.row(a).for_each([&](Elem b) {
      if (r.add(a, b) != r.add(b, a) || r.mul(a, b) != r.mul(b, a)) fail(commutative, {a, b});
      if (!s.commeasurable(na, b)) fail(negation, {a, b});
      for (std::size_t lambda = 0; lambda < chr; ++lambda) {
        const Elem la = r.multiple(a, static_cast<std::int64_t>(lambda));
        const Elem lb = r.multiple(b, static_cast<std::int64_t>(lambda));
        const Elem lab = r.multiple(r.mul(a, b), static_cast<std::int64_t>(lambda));
        if (r.mul(la, b) != lab || r.mul(a, lb) != lab) fail(bilinear, {a, b, static_cast<Elem>(lambda)});
      }
    });
  }

  AxiomResult& preserved = entry("(2) relation preserved");
  AxiomResult& associative = entry("(3.2) associativity");
  AxiomResult& distributive = entry("(3.3) distributivity");
  for (Elem a = 0; a < n; ++a) {
    if (!s.commeasurable(a, a)) continue;
    s.row(a).for_each([&](Elem b) {
      if (!s.commeasurable(b, b) || !s.commeasurable(b, a)) return;
      for (std::size_t lambda = 0; lambda < chr; ++lambda)
        if (!s.commeasurable(r.multiple(a, static_cast<std::int64_t>(lambda)), b))
          fail(preserved, {a, b, static_cast<Elem>(lambda)});
      const ElementSubset common = s.row(a) & s.row(b);
      common.for_each([&](Elem c) {
        if (!s.commeasurable(c, c) || !s.commeasurable(c, a) || !s.commeasurable(c, b)) return;
        if (!s.commeasurable(r.add(a, b), c) || !s.commeasurable(r.mul(a, b), c))
          fail(preserved, {a, b, c});
        if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)) ||
            r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
          fail(associative, {a, b, c});
        if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c))) fail(distributive, {a, b, c});
      });
    });
  }
  AxiomReport report;
  report.results.assign(results.begin(), results.end());
  return report;
}

Verdict is_partial_ideal(const PartialStructure& s, const ElementSubset& cand) {
  const RingTable& r = s.ring();
  if (cand.universe() != r.size()) throw PreconditionError("subset universe differs from ring size");
  if (!cand.contains(r.zero())) return Verdict::fail("does not contain zero", {r.zero()});
  for (Elem b : cand.members()) {
    Verdict v;
    s.row(b).for_each([&](Elem a) {
      if (!v.ok) return;
      if (!cand.contains(r.mul(a, b))) v = Verdict::fail("not closed under multiplication", {a, b});
      else if (cand.contains(a) && !cand.contains(r.add(a, b)))
        v = Verdict::fail("not closed under addition", {a, b});
    });
    if (!v.ok) return v;
  }
  return Verdict::pass();
}

Verdict is_prime_partial_ideal(const PartialStructure& s, const ElementSubset& cand) {
  if (!is_partial_ideal(s, cand)) throw PreconditionError("candidate is not a partial ideal");
  const RingTable& r = s.ring();
  if (cand.count() == r.size()) return Verdict::fail("improper (equals the ring)", {r.one()});
  for (Elem x = 0; x < r.size(); ++x) {
    if (cand.contains(x)) continue;
    Verdict v;
    s.row(x).for_each([&](Elem y) {
      if (v.ok && !cand.contains(y) && cand.contains(r.mul(x, y)))
        v = Verdict::fail("product of non-members lies in the ideal", {x, y});
    });
    if (!v.ok) return v;
  }
  return Verdict::pass();
}

ElementSubset partial_ideal_closure(const PartialStructure& s, const ElementSubset& gens) {
  const RingTable& r = s.ring();
  ElementSubset set = gens;
  std::vector<Elem> queue;
  set.insert(r.zero());
  set.for_each([&](Elem x) { queue.push_back(x); });
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Elem b = queue[i];
    s.row(b).for_each([&](Elem a) {
      if (set.insert(r.mul(a, b))) queue.push_back(r.mul(a, b));
      if (set.contains(a) && set.insert(r.add(a, b))) queue.push_back(r.add(a, b));
    });
  }
  return set;
}

Verdict is_partial_morphism(const PartialMorphism& f) {
  const RingTable& src = f.source.ring();
  const RingTable& dst = f.target;
  if (!dst.is_commutative())
    throw PreconditionError("partial morphism targets must be commutative rings");
  if (f.table.size() != src.size()) return Verdict::fail("table length differs from source size");
  for (Elem x = 0; x < src.size(); ++x)
    if (f(x) >= dst.size()) return Verdict::fail("value out of range", {x});
  if (f(src.zero()) != dst.zero()) return Verdict::fail("zero not preserved", {src.zero()});
  if (f(src.one()) != dst.one()) return Verdict::fail("one not preserved", {src.one()});
  const std::size_t chr = src.characteristic();
  for (Elem a = 0; a < src.size(); ++a) {
    for (std::size_t lambda = 2; lambda < chr; ++lambda)
      if (f(src.multiple(a, static_cast<std::int64_t>(lambda))) !=
          dst.multiple(f(a), static_cast<std::int64_t>(lambda)))
        return Verdict::fail("scalar action not preserved", {a, static_cast<Elem>(lambda)});
    Verdict v;
    f.source.row(a).for_each([&](Elem b) {
      if (!v.ok) return;
      if (f(src.add(a, b)) != dst.add(f(a), f(b)))
        v = Verdict::fail("addition not preserved", {a, b});
      else if (f(src.mul(a, b)) != dst.mul(f(a), f(b)))
        v = Verdict::fail("multiplication not preserved", {a, b});
    });
    if (!v.ok) return v;
  }
  return Verdict::pass();
}

PartialMorphism as_partial_morphism(const RingMap& f) {
  if (!f.codomain.is_commutative())
    throw PreconditionError("partial morphism targets must be commutative rings");
  return PartialMorphism{standard_structure(f.domain), f.codomain, f.table};
}

ElementSubset preimage(const PartialMorphism& f, const ElementSubset& ideal) {
  if (!is_partial_morphism(f)) throw PreconditionError("map is not a partial morphism");
  if (!is_partial_ideal(standard_structure(f.target), ideal))
    throw PreconditionError("target subset is not a partial ideal");
  ElementSubset out(f.source.ring().size());
  for (Elem x = 0; x < f.table.size(); ++x)
    if (ideal.contains(f(x))) out.insert(x);
  return out;
}

ElementSubset preimage(const RingMap& f, const ElementSubset& ideal) {
  if (!is_ring_hom(f)) throw PreconditionError("map is not a ring homomorphism");
  if (!is_partial_ideal(standard_structure(f.codomain), ideal))
    throw PreconditionError("codomain subset is not a partial ideal");
  ElementSubset out(f.domain.size());
  for (Elem x = 0; x < f.table.size(); ++x)
    if (ideal.contains(f(x))) out.insert(x);
  return out;
}

namespace {

/// First element where I1 ∩ C2 and C1 ∩ I2 differ.
std::optional<Elem> overlap_disagreement(const ElementSubset& c1, const ElementSubset& i1,
                                         const ElementSubset& c2, const ElementSubset& i2) {
  const ElementSubset lhs = i1 & c2;
  const ElementSubset rhs = c1 & i2;
  if (lhs == rhs) return std::nullopt;
  const auto diff = (lhs - rhs) | (rhs - lhs);
  return diff.members().front();
}

Verdict pairwise_condition(const CommLattice& lat, const FamilyAssignment& a) {
  for (auto it = a.begin(); it != a.end(); ++it)
    for (auto jt = std::next(it); jt != a.end(); ++jt) {
      const auto& c1 = lat.subrings[it->first].members;
      const auto& c2 = lat.subrings[jt->first].members;
      if (auto e = overlap_disagreement(c1, it->second, c2, jt->second))
        return Verdict::fail("assignments disagree on an overlap",
                             {static_cast<Elem>(it->first), static_cast<Elem>(jt->first), *e});
    }
  return Verdict::pass();
}

Verdict ideals_of_keys(const CommLattice& lat, const FamilyAssignment& a) {
  for (const auto& [idx, ideal] : a) {
    if (idx >= lat.size()) return Verdict::fail("subring index out of range", {static_cast<Elem>(idx)});
    if (!is_ideal_of(lat.ring, lat.subrings[idx].members, ideal))
      return Verdict::fail("assigned set is not an ideal of its subring", {static_cast<Elem>(idx)});
  }
  return Verdict::pass();
}

bool keys_are(const FamilyAssignment& a, const std::vector<std::size_t>& keys) {
  if (a.size() != keys.size()) return false;
  for (std::size_t k : keys)
    if (!a.count(k)) return false;
  return true;
}

std::vector<std::size_t> all_indices(const CommLattice& lat) {
  std::vector<std::size_t> v(lat.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

}  // namespace

ElementSubset glue_family(const CommLattice& lat, const FamilyAssignment& assignment) {
  if (!keys_are(assignment, lat.maximal))
    throw PreconditionError("assignment must cover exactly the maximal subrings");
  if (auto v = ideals_of_keys(lat, assignment); !v)
    throw PreconditionError(v.reason + " (subring " + std::to_string(v.witness[0]) + ")");
  for (auto it = assignment.begin(); it != assignment.end(); ++it)
    for (auto jt = std::next(it); jt != assignment.end(); ++jt)
      if (auto e = overlap_disagreement(lat.subrings[it->first].members, it->second,
                                        lat.subrings[jt->first].members, jt->second))
        throw CompatibilityError(it->first, jt->first, *e);
  ElementSubset out(lat.ring.size());
  for (const auto& [idx, ideal] : assignment) out = out | ideal;
  return out;
}

FamilyAssignment restrict_family(const ElementSubset& ideal, const CommLattice& lat) {
  FamilyAssignment out;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    ElementSubset part = ideal & lat.subrings[i].members;
    if (!is_ideal_of(lat.ring, lat.subrings[i].members, part))
      throw ConsistencyError("intersection with subring " + std::to_string(i) + " is not an ideal");
    out.emplace(i, std::move(part));
  }
  for (std::size_t i = 0; i < lat.size(); ++i)
    lat.above[i].for_each([&](Elem j) {
      if (out.at(i) != (out.at(j) & lat.subrings[i].members))
        throw ConsistencyError("restricted family violates nesting");
    });
  return out;
}

Verdict check_family(const CommLattice& lat, FamilyForm form, const FamilyAssignment& a) {
  switch (form) {
    case FamilyForm::kNested:
    case FamilyForm::kPairwise:
      if (!keys_are(a, all_indices(lat))) return Verdict::fail("must assign every subring");
      break;
    case FamilyForm::kCofinal: {
      std::vector<std::size_t> keys;
      for (const auto& [k, v] : a) {
        if (k >= lat.size()) return Verdict::fail("subring index out of range", {static_cast<Elem>(k)});
        keys.push_back(k);
      }
      if (!is_cofinal(lat, keys)) return Verdict::fail("assigned subrings are not cofinal");
      break;
    }
    case FamilyForm::kMaximal:
      if (!keys_are(a, lat.maximal)) return Verdict::fail("must assign exactly the maximal subrings");
      break;
  }
  if (auto v = ideals_of_keys(lat, a); !v) return v;
  if (form != FamilyForm::kNested) return pairwise_condition(lat, a);
  for (const auto& [i, ideal] : a) {
    Verdict v;
    lat.above[i].for_each([&](Elem j) {
      if (v.ok && ideal != (a.at(j) & lat.subrings[i].members))
        v = Verdict::fail("nesting condition fails", {static_cast<Elem>(i), j});
    });
    if (!v) return v;
  }
  return Verdict::pass();
}

IdempotentPartition partition_idempotents(const RingTable& ring) {
  IdempotentPartition p;
  p.trivial = {ring.zero()};
  if (ring.one() != ring.zero()) p.trivial.push_back(ring.one());
  std::sort(p.trivial.begin(), p.trivial.end());
  for (Elem e = 0; e < ring.size(); ++e) {
    if (e == ring.zero() || e == ring.one() || !is_idempotent(ring, e)) continue;
    const Elem f = ring.sub(ring.one(), e);
    if (f == e) throw ConsistencyError("idempotent equals its complement in a nonzero ring");
    if (e < f) {
      p.chosen.push_back(e);
      p.complement.emplace_back(e, f);
    }
  }

  const std::size_t chr = ring.characteristic();
  bool prime_char = chr > 1;
  for (std::size_t d = 2; d * d <= chr && prime_char; ++d)
    if (chr % d == 0) prime_char = false;
  if (prime_char) {
    std::vector<Elem> reps;
    std::vector<bool> covered(ring.size(), false);
    for (Elem x = 0; x < ring.size(); ++x) {
      if (x == ring.zero() || covered[x] || !is_nilpotent(ring, x)) continue;
      reps.push_back(x);  // smallest index of its class, by scan order
      for (std::size_t lambda = 1; lambda < chr; ++lambda)
        covered[ring.multiple(x, static_cast<std::int64_t>(lambda))] = true;
    }
    p.nil_representatives = std::move(reps);
  }
  return p;
}

}  // namespace partspec
