#include "partspec/obstruction.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <functional>

#include "partspec/commlattice.hpp"
#include "partspec/errors.hpp"
#include "partspec/primespec.hpp"

namespace partspec {

namespace {

void require_field(const RingTable& k) {
  if (!k.is_commutative() || k.size() < 2) throw PreconditionError(k.label() + " is not a field");
  for (Elem x = 0; x < k.size(); ++x)
    if (x != k.zero() && !two_sided_inverse(k, x))
      throw PreconditionError(k.label() + " is not a field");
}

double since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string slug(const std::string& label) {
  std::string out;
  for (char c : label) {
    if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(c));
    else if (!out.empty() && out.back() != '_') out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

std::string join(const std::vector<Elem>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrices over a field

FieldMatrix matrix_identity(const RingTable& k, std::size_t n) {
  FieldMatrix m{n, std::vector<Elem>(n * n, k.zero())};
  for (std::size_t i = 0; i < n; ++i) m.entries[i * n + i] = k.one();
  return m;
}

FieldMatrix matrix_product(const RingTable& k, const FieldMatrix& a, const FieldMatrix& b) {
  if (a.n != b.n) throw PreconditionError("matrix size mismatch");
  const std::size_t n = a.n;
  FieldMatrix c{n, std::vector<Elem>(n * n, k.zero())};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Elem s = k.zero();
      for (std::size_t t = 0; t < n; ++t) s = k.add(s, k.mul(a.at(i, t), b.at(t, j)));
      c.entries[i * n + j] = s;
    }
  return c;
}

std::optional<FieldMatrix> matrix_inverse(const RingTable& k, const FieldMatrix& a) {
  const std::size_t n = a.n;
  FieldMatrix m = a;
  FieldMatrix inv = matrix_identity(k, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m.at(pivot, col) == k.zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m.entries[col * n + j], m.entries[pivot * n + j]);
      std::swap(inv.entries[col * n + j], inv.entries[pivot * n + j]);
    }
    const auto scale = two_sided_inverse(k, m.at(col, col));
    if (!scale) throw PreconditionError(k.label() + " is not a field");
    for (std::size_t j = 0; j < n; ++j) {
      m.entries[col * n + j] = k.mul(*scale, m.at(col, j));
      inv.entries[col * n + j] = k.mul(*scale, inv.at(col, j));
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m.at(r, col) == k.zero()) continue;
      const Elem factor = m.at(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        m.entries[r * n + j] = k.sub(m.at(r, j), k.mul(factor, m.at(col, j)));
        inv.entries[r * n + j] = k.sub(inv.at(r, j), k.mul(factor, inv.at(col, j)));
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Morita scenario

FieldMatrix MoritaScenario::iota(Elem a) const {
  const auto comps = product_components(kn, a);
  FieldMatrix m{n, std::vector<Elem>(n * n, k.zero())};
  for (std::size_t i = 0; i < n; ++i) m.entries[i * n + i] = comps[i];
  return m;
}

FieldMatrix MoritaScenario::sigma(const FieldMatrix& x) const {
  return matrix_product(k, matrix_product(k, p, x), p_inverse);
}

MoritaScenario make_morita_scenario(const RingTable& k, std::size_t n,
                                    std::optional<std::vector<std::size_t>> pi) {
  require_field(k);
  if (n == 0) throw PreconditionError("Morita scenario needs n >= 1");
  MoritaScenario s;
  s.k = k;
  s.n = n;
  if (pi) {
    s.pi = *pi;
  } else {
    s.pi.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.pi[i] = (i + 1) % n;
  }
  std::vector<std::size_t> sorted = s.pi;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted.size() != n || sorted[i] != i) throw PreconditionError("pi is not a permutation of n points");

  s.kn = make_power(k, n);
  s.rho = RingMap{s.kn, s.kn, std::vector<Elem>(s.kn.size())};
  for (Elem a = 0; a < s.kn.size(); ++a) {
    const auto comps = product_components(s.kn, a);
    std::vector<Elem> image(n);
    for (std::size_t i = 0; i < n; ++i) image[i] = comps[s.pi[i]];
    s.rho.table[a] = product_element(s.kn, image);
  }
  if (!is_ring_hom(s.rho)) throw ConsistencyError("coordinate permutation is not a ring hom");

  s.p = FieldMatrix{n, std::vector<Elem>(n * n, k.zero())};
  for (std::size_t i = 0; i < n; ++i) s.p.entries[i * n + s.pi[i]] = k.one();
  s.p_inverse = *matrix_inverse(k, s.p);
  return s;
}

MoritaScenario with_conjugator(MoritaScenario s, FieldMatrix p) {
  if (p.n != s.n) throw PreconditionError("conjugator has the wrong size");
  auto inv = matrix_inverse(s.k, p);
  if (!inv) throw PreconditionError("conjugator is singular");
  s.p = std::move(p);
  s.p_inverse = std::move(*inv);
  return s;
}

Verdict verify_corner_commutation(const MoritaScenario& s) {
  for (Elem a = 0; a < s.kn.size(); ++a)
    if (s.iota(s.rho(a)) != s.sigma(s.iota(a)))
      return Verdict::fail("iota(rho(a)) differs from P iota(a) P^-1", {a});
  return Verdict::pass();
}

Verdict verify_fixed_point_free(const MoritaScenario& s) {
  if (s.n == 1)
    throw InapplicableError("n = 1: the induced map on Spec(k) is the identity");
  const SpecResult sp = spec(s.kn);
  if (sp.primes.size() != s.n)
    throw ConsistencyError("Spec(k^n) does not have n points");
  const auto induced = spec_map(s.rho, sp, sp);
  std::vector<Elem> perm(induced.begin(), induced.end());
  std::vector<Elem> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) return Verdict::fail("induced map on Spec is not a permutation", perm);
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] == i) return Verdict::fail("induced permutation has a fixed point", perm);
  Verdict v = Verdict::pass();
  v.witness = perm;
  return v;
}

std::vector<std::size_t> cycle_lengths(const std::vector<Elem>& perm) {
  std::vector<std::size_t> out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ClaimEntry derive_contradiction(const MoritaScenario& s) {
  const auto start = std::chrono::steady_clock::now();
  const std::string tag = s.k.label() + ".n" + std::to_string(s.n);
  const Verdict corner = verify_corner_commutation(s);
  if (!corner) throw PreconditionError("corner commutation fails for " + tag);
  const Verdict fixed = verify_fixed_point_free(s);
  if (!fixed) throw PreconditionError("induced Spec permutation has a fixed point for " + tag);

  ClaimEntry e;
  e.id = "morita.contradiction." + tag;
  e.statement = "no contravariant F extending Spec assigns a singleton to M" + std::to_string(s.n) +
                "(" + s.k.label() + ")";
  e.verified = true;
  e.facts = {
      {"premise.corner", "iota(rho(a)) = P iota(a) P^-1 for all " + std::to_string(s.kn.size()) +
                             " elements of " + s.kn.label()},
      {"premise.spec_permutation", join(fixed.witness)},
      {"deduction",
       "F(rho) F(iota) = F(iota) because sigma is inner; a singleton F(M_n(k)) would give a point "
       "of Spec(k^n) fixed by the induced permutation, which has none"},
  };
  e.seconds = since(start);
  return e;
}

// ---------------------------------------------------------------------------
// Eigenvalue check

namespace {

/// lambda -> lambda * 1 in the source ring.
std::vector<Elem> scalar_embedding(const RingTable& source, const RingTable& k) {
  std::vector<Elem> out(k.size());
  if (const MatrixLayout* m = source.matrix_layout(); m && m->base->same_tables(k)) {
    for (Elem lambda = 0; lambda < k.size(); ++lambda) {
      std::vector<Elem> entries(m->positions.size(), k.zero());
      for (std::size_t i = 0; i < m->positions.size(); ++i)
        if (m->positions[i].first == m->positions[i].second) entries[i] = lambda;
      out[lambda] = matrix_element(source, entries);
    }
    return out;
  }
  const std::size_t p = k.characteristic();
  if (k.size() != p || source.scalar(static_cast<std::int64_t>(p)) != source.zero())
    throw PreconditionError("no scalar embedding of " + k.label() + " into " + source.label());
  for (std::size_t m = 0; m < p; ++m) out[k.scalar(static_cast<std::int64_t>(m))] = source.scalar(static_cast<std::int64_t>(m));
  return out;
}

}  // namespace

Verdict eigenvalue_check(const PartialMorphism& f) {
  require_field(f.target);
  if (f.table.size() != f.source.ring().size())
    throw PreconditionError("function table has the wrong length");
  if (const Verdict v = is_partial_morphism(f); !v)
    throw PreconditionError("not a partial morphism: " + v.reason);

  const RingTable& r = f.source.ring();
  const auto lambda = scalar_embedding(r, f.target);
  const MatrixLayout* layout = r.matrix_layout();
  const bool triangular = layout && layout->upper_triangular && layout->base->same_tables(f.target);
  for (Elem x = 0; x < r.size(); ++x) {
    const Elem shifted = r.sub(x, lambda[f(x)]);
    if (two_sided_inverse(r, shifted))
      return Verdict::fail("r - f(r) is invertible", {x, f(x)});
    if (triangular) {
      bool on_diagonal = false;
      for (std::size_t i = 0; i < layout->n; ++i)
        if (matrix_entry(r, x, i, i) == f(x)) on_diagonal = true;
      if (!on_diagonal) return Verdict::fail("f(r) is not a diagonal entry of r", {x, f(x)});
    }
  }
  return Verdict::pass();
}

// ---------------------------------------------------------------------------
// Idempotent frames

IdempotentFrames idempotent_frames(const RingTable& ring) {
  std::vector<Elem> idem;
  for (Elem x = 0; x < ring.size(); ++x)
    if (x != ring.zero() && is_idempotent(ring, x)) idem.push_back(x);
  auto orthogonal = [&](Elem e, Elem f) {
    return ring.mul(e, f) == ring.zero() && ring.mul(f, e) == ring.zero();
  };

  IdempotentFrames out;
  for (Elem e : idem) {
    bool primitive = true;
    for (Elem f : idem)
      if (f != e && orthogonal(f, ring.sub(e, f)) && ring.sub(e, f) != ring.zero() &&
          is_idempotent(ring, ring.sub(e, f))) {
        primitive = false;
        break;
      }
    if (primitive) out.primitives.push_back(e);
  }
  const std::size_t m = out.primitives.size();
  out.instance.vertices = m;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (orthogonal(out.primitives[i], out.primitives[j])) out.instance.exclusive.emplace_back(i, j);

  std::vector<std::size_t> frame;
  auto grow = [&](auto&& self, std::size_t from, Elem sum) -> void {
    if (sum == ring.one() && !frame.empty()) {
      out.instance.bases.push_back(frame);
      return;
    }
    for (std::size_t v = from; v < m; ++v) {
      const Elem e = out.primitives[v];
      if (!std::all_of(frame.begin(), frame.end(),
                       [&](std::size_t u) { return orthogonal(out.primitives[u], e); }))
        continue;
      frame.push_back(v);
      self(self, v + 1, ring.add(sum, e));
      frame.pop_back();
    }
  };
  grow(grow, 0, ring.zero());
  return out;
}

// ---------------------------------------------------------------------------
// Report

ReportTargets ReportTargets::defaults() {
  ReportTargets t;
  const RingTable f2 = make_gf(2, 1);
  const RingTable f3 = make_gf(3, 1);
  t.rings = {make_matrix_ring(f2, 2), make_matrix_ring(f3, 2), make_triangular_ring(f2, 2)};
  t.ray_systems = {{"peres", generate_peres()}};
  t.lift_dimensions = {4};
  for (const RingTable& k : {f2, f3, make_gf(2, 2), make_gf(5, 1)})
    for (std::size_t n = 2; n <= 4; ++n) t.morita.emplace_back(k, n);
  return t;
}

namespace {

ClaimEntry ring_claim(const RingTable& ring, const ReportTargets& t) {
  const auto start = std::chrono::steady_clock::now();
  ClaimEntry e;
  e.id = "partspec." + slug(ring.label());
  e.statement = "prime partial ideals of " + ring.label() + " as compatible families";
  try {
    std::optional<CommLattice> lat;
    std::string cache_note = "off";
    if (t.cache_dir) {
      try {
        lat = cache_load(*t.cache_dir, ring);
        cache_note = lat ? "hit" : "miss";
      } catch (const CacheError& err) {
        cache_note = std::string("rejected: ") + err.what();
      }
    }
    if (!lat) {
      lat = enumerate_commutative_subrings(ring, LatticeOptions{t.budget, t.jobs});
      if (t.cache_dir) cache_store(*t.cache_dir, *lat);
    }
    const PartSpecResult ps = part_spec(ring, *lat, t.budget);
    e.complete = ps.stats.complete;
    e.verified = ps.stats.complete;
    e.facts = {
        {"commutative_subrings", std::to_string(lat->size())},
        {"maximal_subrings", std::to_string(lat->maximal.size())},
        {"prime_partial_ideals", ps.stats.complete ? std::to_string(ps.ideals.size())
                                                   : ">= " + std::to_string(ps.ideals.size())},
        {"search_nodes", std::to_string(ps.stats.nodes)},
        {"cache", cache_note},
    };
    if (ps.stats.complete) e.facts.emplace_back("empty", ps.ideals.empty() ? "true" : "false");
  } catch (const BudgetExhausted& err) {
    e.complete = false;
    e.verified = false;
    e.facts = {{"budget", err.what()}};
  }
  e.seconds = since(start);
  return e;
}

ClaimEntry ray_claim(const std::string& name, const RaySystem& sys, const Budget& budget) {
  const auto start = std::chrono::steady_clock::now();
  ClaimEntry e;
  e.id = "ks." + name + ".unsat";
  e.statement = "the " + name + " ray system in dimension " + std::to_string(sys.dim) +
                " admits no {0,1}-coloring";
  const ColoringResult r = ks_colorable(sys, ColoringOptions{budget, std::nullopt});
  e.complete = r.stats.complete;
  e.verified = r.status == ColoringStatus::kUnsat;
  e.facts = {
      {"rays", std::to_string(sys.rays.size())},
      {"bases", std::to_string(sys.bases.size())},
      {"status", r.status == ColoringStatus::kSat     ? "sat"
                 : r.status == ColoringStatus::kUnsat ? "unsat"
                                                      : "unknown"},
      {"search_nodes", std::to_string(r.stats.nodes)},
  };
  e.seconds = since(start);
  return e;
}

}  // namespace

ObstructionReport build_report(const ReportTargets& t) {
  for (const auto& [k, n] : t.morita)
    if (n < 2) throw PreconditionError("Morita targets need n >= 2");

  ObstructionReport report;
  for (const auto& ring : t.rings) report.entries.push_back(ring_claim(ring, t));
  for (const auto& [name, sys] : t.ray_systems) report.entries.push_back(ray_claim(name, sys, t.budget));
  if (!t.ray_systems.empty())
    for (std::size_t n : t.lift_dimensions)
      report.entries.push_back(ray_claim("lift" + std::to_string(n),
                                         lift_to_dimension(t.ray_systems.front().second, n), t.budget));
  for (const auto& [k, n] : t.morita) {
    const MoritaScenario s = make_morita_scenario(k, n);
    const std::string tag = k.label() + ".n" + std::to_string(n);

    auto start = std::chrono::steady_clock::now();
    const Verdict corner = verify_corner_commutation(s);
    report.entries.push_back(ClaimEntry{"morita.corner." + tag,
                                        "iota o rho = sigma o iota on " + s.kn.label(),
                                        corner.ok, true,
                                        {{"elements_checked", std::to_string(s.kn.size())}},
                                        since(start)});
    start = std::chrono::steady_clock::now();
    const Verdict fixed = verify_fixed_point_free(s);
    std::string cycles;
    for (std::size_t len : cycle_lengths(fixed.witness)) cycles += (cycles.empty() ? "" : ",") + std::to_string(len);
    report.entries.push_back(ClaimEntry{"morita.fixedpoint." + tag,
                                        "Spec(rho) permutes Spec(" + s.kn.label() + ") without fixed points",
                                        fixed.ok, true,
                                        {{"permutation", join(fixed.witness)}, {"cycle_lengths", cycles}},
                                        since(start)});
    if (corner && fixed) report.entries.push_back(derive_contradiction(s));
  }

  std::sort(report.entries.begin(), report.entries.end(),
            [](const ClaimEntry& a, const ClaimEntry& b) { return a.id < b.id; });

  for (const auto& e : report.entries)
    if (!e.complete) {
      report.verdict = ReportVerdict::kWithheld;
      report.verdict_reason = "incomplete search behind " + e.id;
      return report;
    }
  for (const auto& e : report.entries)
    if (!e.verified) {
      report.verdict = ReportVerdict::kFailed;
      report.verdict_reason = "claim not verified: " + e.id;
      return report;
    }
  const bool witness = std::any_of(report.entries.begin(), report.entries.end(), [](const ClaimEntry& e) {
    return e.id.rfind("ks.", 0) == 0 && e.id.find(".lift") == std::string::npos && e.verified;
  });
  if (!witness) {
    report.verdict = ReportVerdict::kWithheld;
    report.verdict_reason = "no uncolorable ray system among the claims";
    return report;
  }
  report.verdict = ReportVerdict::kVerified;
  report.verdict_reason = "all claims verified with complete searches";
  return report;
}

const char* to_string(ReportVerdict v) {
  switch (v) {
    case ReportVerdict::kVerified: return "verified";
    case ReportVerdict::kFailed: return "failed";
    case ReportVerdict::kWithheld: return "withheld";
  }
  return "withheld";
}

}  // namespace partspec
