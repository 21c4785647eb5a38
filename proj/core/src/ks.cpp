#include "partspec/ks.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "partspec/errors.hpp"

namespace partspec {

QuadInt exact_divide(QuadInt x, QuadInt y) {
  if (y.is_zero()) throw PreconditionError("division by zero in Z[sqrt2]");
  const QuadInt num = x * y.conj();
  const std::int64_t n = y.norm();
  if (num.a % n != 0 || num.b % n != 0) throw PreconditionError("inexact division in Z[sqrt2]");
  return {num.a / n, num.b / n};
}

Ray canonicalize(const Ray& r) {
  if (std::all_of(r.coords.begin(), r.coords.end(), [](QuadInt q) { return q.is_zero(); }))
    throw PreconditionError("cannot canonicalize the zero vector");
  Ray out = r;
  for (;;) {
    std::int64_t g = 0;
    for (const auto& q : out.coords) g = std::gcd(g, std::gcd(q.a, q.b));
    if (g > 1)
      for (auto& q : out.coords) q = {q.a / g, q.b / g};
    const bool all_a_even =
        std::all_of(out.coords.begin(), out.coords.end(), [](QuadInt q) { return q.a % 2 == 0; });
    if (!all_a_even) break;
    // (a + b*sqrt2) / sqrt2 = b + (a/2)*sqrt2
    for (auto& q : out.coords) q = {q.b, q.a / 2};
  }
  for (const auto& q : out.coords) {
    if (q.is_zero()) continue;
    const bool positive = q.a > 0 || (q.a == 0 && q.b > 0);
    if (!positive)
      for (auto& c : out.coords) c = -c;
    break;
  }
  return out;
}

QuadInt dot(const Ray& r, const Ray& s) {
  if (r.dim() != s.dim()) throw PreconditionError("dot product of rays of different dimension");
  QuadInt sum;
  for (std::size_t i = 0; i < r.dim(); ++i) sum = sum + r.coords[i] * s.coords[i];
  return sum;
}

bool parallel(const Ray& r, const Ray& s) {
  if (r.dim() != s.dim()) return false;
  for (std::size_t i = 0; i < r.dim(); ++i)
    for (std::size_t j = i + 1; j < r.dim(); ++j)
      if (!(r.coords[i] * s.coords[j] - r.coords[j] * s.coords[i]).is_zero()) return false;
  return true;
}

QuadInt determinant(const std::vector<Ray>& rows) {
  const std::size_t d = rows.size();
  if (d == 0) return {1, 0};
  std::vector<std::vector<QuadInt>> m;
  for (const auto& r : rows) {
    if (r.dim() != d) throw PreconditionError("determinant needs a square matrix");
    m.push_back(r.coords);
  }
  // Fraction-free elimination (Bareiss); every division is exact.
  QuadInt prev{1, 0};
  bool negate = false;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < d && m[p][k].is_zero()) ++p;
      if (p == d) return {};
      std::swap(m[k], m[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < d; ++i) {
      for (std::size_t j = k + 1; j < d; ++j)
        m[i][j] = exact_divide(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = {};
    }
    prev = m[k][k];
  }
  return negate ? -m[d - 1][d - 1] : m[d - 1][d - 1];
}

std::vector<Ray> normalize_rays(const std::vector<Ray>& rays, std::size_t* duplicates) {
  std::vector<Ray> canon;
  canon.reserve(rays.size());
  for (const auto& r : rays) canon.push_back(canonicalize(r));
  std::sort(canon.begin(), canon.end());
  std::vector<Ray> out;
  std::size_t dropped = 0;
  for (auto& r : canon) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Ray& s) { return parallel(r, s); });
    if (seen) ++dropped;
    else out.push_back(std::move(r));
  }
  if (duplicates) *duplicates = dropped;
  return out;
}

std::vector<std::vector<std::size_t>> extract_bases(const std::vector<Ray>& rays, std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t m = rays.size();
  if (d == 0 || m < d) return out;
  std::vector<std::vector<std::uint8_t>> orth(m, std::vector<std::uint8_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      orth[i][j] = orth[j][i] = dot(rays[i], rays[j]).is_zero();

  std::vector<std::size_t> clique;
  auto grow = [&](auto&& self, std::size_t from) -> void {
    if (clique.size() == d) {
      std::vector<Ray> rows;
      for (std::size_t i : clique) rows.push_back(rays[i]);
      if (!determinant(rows).is_zero()) out.push_back(clique);
      return;
    }
    for (std::size_t v = from; v + (d - clique.size()) <= m; ++v) {
      if (!std::all_of(clique.begin(), clique.end(), [&](std::size_t u) { return orth[u][v]; }))
        continue;
      clique.push_back(v);
      self(self, v + 1);
      clique.pop_back();
    }
  };
  grow(grow, 0);
  return out;
}

RaySystem make_ray_system(std::size_t dim, const std::vector<Ray>& rays, std::size_t* duplicates) {
  for (const auto& r : rays)
    if (r.dim() != dim)
      throw PreconditionError("ray of dimension " + std::to_string(r.dim()) +
                              " in a system of dimension " + std::to_string(dim));
  RaySystem sys;
  sys.dim = dim;
  sys.rays = normalize_rays(rays, duplicates);
  sys.bases = extract_bases(sys.rays, dim);
  return sys;
}

RaySystem generate_peres() {
  // Entries drawn from {0, +-1, +-sqrt2}; squares are 0, 1, 2.
  const QuadInt values[] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  const auto square = [](QuadInt q) { return (q * q).a; };
  const std::vector<std::vector<std::int64_t>> classes = {{0, 0, 1}, {0, 1, 1}, {0, 1, 2}, {1, 1, 2}};
  std::vector<Ray> rays;
  for (QuadInt x : values)
    for (QuadInt y : values)
      for (QuadInt z : values) {
        std::vector<std::int64_t> pattern = {square(x), square(y), square(z)};
        std::sort(pattern.begin(), pattern.end());
        if (std::find(classes.begin(), classes.end(), pattern) != classes.end())
          rays.push_back(Ray{{x, y, z}});
      }
  return make_ray_system(3, rays);
}

// ---------------------------------------------------------------------------
// Coloring search

bool verify_coloring(const ColoringInstance& inst, const std::vector<std::uint8_t>& coloring) {
  if (coloring.size() != inst.vertices) return false;
  for (std::uint8_t c : coloring)
    if (c > 1) return false;
  for (const auto& basis : inst.bases) {
    std::size_t ones = 0;
    for (std::size_t v : basis) ones += coloring[v];
    if (ones != 1) return false;
  }
  for (const auto& [u, v] : inst.exclusive)
    if (coloring[u] + coloring[v] > 1) return false;
  return true;
}

namespace {

class ColoringSearch {
 public:
  ColoringSearch(const ColoringInstance& inst, const ColoringOptions& options)
      : inst_(inst), meter_(options.budget), color_(inst.vertices, -1),
        ones_(inst.bases.size(), 0), zeros_(inst.bases.size(), 0), occurs_(inst.vertices),
        exclusive_(inst.vertices) {
    for (const auto& [u, v] : inst.exclusive) {
      if (u >= inst.vertices || v >= inst.vertices)
        throw PreconditionError("exclusive pair refers to a missing vertex");
      exclusive_[u].push_back(v);
      exclusive_[v].push_back(u);
    }
    for (std::size_t b = 0; b < inst.bases.size(); ++b)
      for (std::size_t v : inst.bases[b]) {
        if (v >= inst.vertices) throw PreconditionError("basis refers to a missing vertex");
        occurs_[v].push_back(b);
      }
    order_.resize(inst.vertices);
    std::iota(order_.begin(), order_.end(), 0);
    if (options.shuffle_seed) {
      std::mt19937_64 rng(*options.shuffle_seed);
      std::shuffle(order_.begin(), order_.end(), rng);
      one_first_ = (rng() & 1) == 0;
    } else {
      std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
        return occurs_[a].size() > occurs_[b].size();
      });
    }
  }

  ColoringResult run() {
    ColoringResult result;
    bool found = false;
    bool consistent = true;
    for (std::size_t b = 0; b < inst_.bases.size() && consistent; ++b)
      if (inst_.bases[b].empty()) consistent = false;
    if (consistent) found = search();
    result.stats.nodes = meter_.nodes();
    result.stats.backtracks = backtracks_;
    result.stats.seconds = meter_.elapsed_seconds();
    if (found) {
      result.status = ColoringStatus::kSat;
      result.coloring.resize(inst_.vertices);
      for (std::size_t v = 0; v < inst_.vertices; ++v) result.coloring[v] = color_[v] == 1;
      if (!verify_coloring(inst_, result.coloring))
        throw ConsistencyError("coloring search produced an invalid witness");
      result.stats.complete = true;
    } else if (aborted_) {
      result.status = ColoringStatus::kUnknown;
    } else {
      result.status = ColoringStatus::kUnsat;
      result.stats.complete = true;
    }
    return result;
  }

 private:
  bool assign(std::size_t v, int c) {
    if (color_[v] != -1) return color_[v] == c;
    color_[v] = static_cast<std::int8_t>(c);
    trail_.push_back(v);
    if (c == 1) pending_ones_.push_back(v);
    for (std::size_t b : occurs_[v]) {
      if (c == 1) ++ones_[b];
      else ++zeros_[b];
      queue_.push_back(b);
    }
    return true;
  }

  bool propagate() {
    while (!queue_.empty() || !pending_ones_.empty()) {
      if (!pending_ones_.empty()) {
        const std::size_t v = pending_ones_.back();
        pending_ones_.pop_back();
        for (std::size_t u : exclusive_[v])
          if (!assign(u, 0)) return false;
        continue;
      }
      const std::size_t b = queue_.back();
      queue_.pop_back();
      const auto& basis = inst_.bases[b];
      if (ones_[b] > 1 || zeros_[b] == basis.size()) return false;
      if (ones_[b] == 1) {
        for (std::size_t v : basis)
          if (color_[v] == -1 && !assign(v, 0)) return false;
      } else if (zeros_[b] + 1 == basis.size()) {
        for (std::size_t v : basis)
          if (color_[v] == -1 && !assign(v, 1)) return false;
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    queue_.clear();
    pending_ones_.clear();
    while (trail_.size() > mark) {
      const std::size_t v = trail_.back();
      trail_.pop_back();
      for (std::size_t b : occurs_[v]) {
        if (color_[v] == 1) --ones_[b];
        else --zeros_[b];
      }
      color_[v] = -1;
    }
  }

  bool search() {
    std::size_t v = inst_.vertices;
    for (std::size_t u : order_)
      if (color_[u] == -1) {
        v = u;
        break;
      }
    if (v == inst_.vertices) return true;
    if (occurs_[v].empty() && exclusive_[v].empty()) {
      // Unconstrained vertex: any value works.
      const std::size_t mark = trail_.size();
      assign(v, 0);
      if (search()) return true;
      undo(mark);
      return false;
    }
    for (int c : {one_first_ ? 1 : 0, one_first_ ? 0 : 1}) {
      if (!meter_.charge()) {
        aborted_ = true;
        return false;
      }
      const std::size_t mark = trail_.size();
      if (assign(v, c) && propagate() && search()) return true;
      undo(mark);
      if (aborted_) return false;
      ++backtracks_;
    }
    return false;
  }

  const ColoringInstance& inst_;
  BudgetMeter meter_;
  std::vector<std::int8_t> color_;
  std::vector<std::size_t> ones_, zeros_;
  std::vector<std::vector<std::size_t>> occurs_;
  std::vector<std::vector<std::size_t>> exclusive_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> pending_ones_;
  std::vector<std::size_t> trail_;
  std::vector<std::size_t> queue_;
  std::uint64_t backtracks_ = 0;
  bool one_first_ = true;
  bool aborted_ = false;
};

}  // namespace

ColoringResult solve_coloring(const ColoringInstance& inst, const ColoringOptions& options) {
  return ColoringSearch(inst, options).run();
}

ColoringInstance coloring_instance(const RaySystem& sys) {
  ColoringInstance inst{sys.rays.size(), sys.bases, {}};
  for (std::size_t i = 0; i < sys.rays.size(); ++i)
    for (std::size_t j = i + 1; j < sys.rays.size(); ++j)
      if (dot(sys.rays[i], sys.rays[j]).is_zero()) inst.exclusive.emplace_back(i, j);
  return inst;
}

ColoringResult ks_colorable(const RaySystem& sys, const ColoringOptions& options) {
  if (extract_bases(sys.rays, sys.dim) != sys.bases)
    throw PreconditionError("ray system does not list every complete orthogonal basis");
  return solve_coloring(coloring_instance(sys), options);
}

RaySystem lift_to_dimension(const RaySystem& sys, std::size_t n, LiftBases bases) {
  if (sys.dim != 3) throw PreconditionError("lift needs a 3-dimensional source system");
  if (n < 4) throw PreconditionError("lift target dimension must be at least 4");

  auto axis = [n](std::size_t i) {
    Ray r{std::vector<QuadInt>(n)};
    r.coords[i] = {1, 0};
    return r;
  };
  auto embed = [n](const Ray& r, std::size_t offset) {
    Ray out{std::vector<QuadInt>(n)};
    for (std::size_t i = 0; i < 3; ++i) out.coords[offset + i] = r.coords[i];
    return out;
  };

  std::vector<Ray> rays;
  std::vector<std::vector<Ray>> construction;
  std::vector<Ray> standard;
  for (std::size_t i = 0; i < n; ++i) standard.push_back(axis(i));
  construction.push_back(standard);
  rays = standard;
  for (std::size_t offset = 0; offset + 3 <= n; ++offset) {
    for (const auto& r : sys.rays) rays.push_back(embed(r, offset));
    for (const auto& basis : sys.bases) {
      std::vector<Ray> full;
      for (std::size_t idx : basis) full.push_back(embed(sys.rays[idx], offset));
      for (std::size_t i = 0; i < n; ++i)
        if (i < offset || i >= offset + 3) full.push_back(axis(i));
      construction.push_back(std::move(full));
    }
  }

  RaySystem out;
  out.dim = n;
  out.rays = normalize_rays(rays);
  if (bases == LiftBases::kComplete) {
    out.bases = extract_bases(out.rays, n);
    return out;
  }
  for (const auto& full : construction) {
    std::vector<std::size_t> idx;
    for (const auto& r : full) {
      const Ray c = canonicalize(r);
      auto it = std::find_if(out.rays.begin(), out.rays.end(), [&](const Ray& s) { return parallel(c, s); });
      idx.push_back(static_cast<std::size_t>(it - out.rays.begin()));
    }
    std::sort(idx.begin(), idx.end());
    out.bases.push_back(std::move(idx));
  }
  std::sort(out.bases.begin(), out.bases.end());
  out.bases.erase(std::unique(out.bases.begin(), out.bases.end()), out.bases.end());
  return out;
}

// ---------------------------------------------------------------------------
// Ray files

LoadedRays parse_rays(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t dim = 0;
  std::vector<Ray> rays;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (dim == 0) {
      std::string keyword;
      long long d = 0;
      std::string rest;
      if (!(fields >> keyword >> d) || keyword != "dim" || d < 1 || (fields >> rest))
        throw ParseError("expected header 'dim <d>'", lineno);
      dim = static_cast<std::size_t>(d);
      continue;
    }
    std::vector<std::int64_t> values;
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) throw ParseError("not an integer: '" + token + "'", lineno);
      values.push_back(v);
    }
    if (values.size() != 2 * dim)
      throw ParseError("expected " + std::to_string(2 * dim) + " integers, found " +
                           std::to_string(values.size()),
                       lineno);
    Ray r;
    for (std::size_t i = 0; i < dim; ++i) r.coords.push_back({values[2 * i], values[2 * i + 1]});
    if (std::all_of(r.coords.begin(), r.coords.end(), [](QuadInt q) { return q.is_zero(); }))
      throw ParseError("zero vector is not a ray", lineno);
    rays.push_back(std::move(r));
  }
  if (dim == 0) throw ParseError("missing 'dim' header", lineno);
  LoadedRays out;
  out.system = make_ray_system(dim, rays, &out.duplicates);
  return out;
}

LoadedRays load_rays(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open ray file " + path.string());
  return parse_rays(in);
}

void write_rays(std::ostream& out, const RaySystem& sys) {
  out << "dim " << sys.dim << '\n';
  for (const auto& r : sys.rays) {
    for (std::size_t i = 0; i < r.dim(); ++i) out << (i ? " " : "") << r.coords[i].a << ' ' << r.coords[i].b;
    out << '\n';
  }
}

void save_rays(const std::filesystem::path& path, const RaySystem& sys) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write ray file " + path.string());
  write_rays(out, sys);
}

std::string to_string(const QuadInt& x) {
  if (x.b == 0) return std::to_string(x.a);
  std::string root = (x.b == 1 ? "" : x.b == -1 ? "-" : std::to_string(x.b)) + "r2";
  if (x.a == 0) return root;
  return std::to_string(x.a) + (x.b > 0 ? "+" : "") + root;
}

std::string to_string(const Ray& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.dim(); ++i) s += (i ? "," : "") + to_string(r.coords[i]);
  return s + ")";
}

}  // namespace partspec
