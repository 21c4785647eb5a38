#include "partspec/commlattice.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "partspec/errors.hpp"

namespace partspec {

std::optional<std::size_t> CommLattice::find(const ElementSubset& members) const {
  auto it = std::lower_bound(subrings.begin(), subrings.end(), members,
                             [](const Subring& s, const ElementSubset& m) {
                               return canonical_less(s.members, m);
                             });
  if (it != subrings.end() && it->members == members)
    return static_cast<std::size_t>(it - subrings.begin());
  return std::nullopt;
}

CommLattice assemble_lattice(const RingTable& ring, std::vector<Subring> subrings) {
  for (const auto& s : subrings) {
    if (!is_subring(ring, s.members)) throw ConsistencyError("listed set is not a unital subring");
    if (!is_commutative_set(ring, s.members))
      throw ConsistencyError("listed subring is not commutative");
  }
  std::sort(subrings.begin(), subrings.end(), [](const Subring& a, const Subring& b) {
    return canonical_less(a.members, b.members);
  });
  for (std::size_t i = 1; i < subrings.size(); ++i)
    if (subrings[i].members == subrings[i - 1].members)
      throw ConsistencyError("duplicate subring in lattice");

  CommLattice lat;
  lat.ring = ring;
  lat.subrings = std::move(subrings);
  const std::size_t m = lat.subrings.size();
  lat.above.assign(m, ElementSubset(m));
  for (std::size_t i = 0; i < m; ++i) {
    lat.subrings[i].commutative = true;
    for (std::size_t j = i; j < m; ++j)
      if (lat.subrings[i].members.is_subset_of(lat.subrings[j].members))
        lat.above[i].insert(static_cast<Elem>(j));
  }
  for (std::size_t i = 0; i < m; ++i)
    if (lat.above[i].count() == 1) lat.maximal.push_back(i);
  return lat;
}

CommLattice enumerate_commutative_subrings(const RingTable& ring, const LatticeOptions& options) {
  BudgetMeter meter(options.budget);
  std::unordered_set<ElementSubset> seen;
  std::vector<Subring> found;
  std::vector<std::size_t> frontier;

  auto admit = [&](Subring s) {
    if (seen.insert(s.members).second) {
      frontier.push_back(found.size());
      found.push_back(std::move(s));
    }
  };
  auto exhausted = [&]() {
    throw BudgetExhausted("commutative subring enumeration ran out of budget for " + ring.label(),
                          meter.nodes(), found.size());
  };

  const ElementSubset none(ring.size());
  admit(closure(ring, none));
  for (Elem a = 0; a < ring.size(); ++a) {
    if (!meter.charge()) exhausted();
    admit(closure(ring, ElementSubset(ring.size(), {a})));
  }

  const unsigned jobs = std::max(1u, options.jobs);
  while (!frontier.empty()) {
    std::vector<std::size_t> current;
    current.swap(frontier);
    std::vector<std::vector<Subring>> produced(current.size());
    std::mutex meter_lock;
    bool out_of_budget = false;

    auto expand = [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        const Subring& c = found[current[k]];
        const Subring cent = centralizer(ring, c.members);
        const ElementSubset outside = cent.members - c.members;
        std::unordered_set<ElementSubset> local;
        for (Elem x : outside.members()) {
          {
            std::lock_guard<std::mutex> guard(meter_lock);
            if (out_of_budget || !meter.charge()) {
              out_of_budget = true;
              return;
            }
          }
          const Elem extra[] = {x};
          Subring d = extend_closure(ring, c.members, extra);
          if (local.insert(d.members).second) produced[k].push_back(std::move(d));
        }
      }
    };

    if (jobs == 1 || current.size() < 2) {
      expand(0, current.size());
    } else {
      std::vector<std::thread> workers;
      const std::size_t chunk = (current.size() + jobs - 1) / jobs;
      for (std::size_t b = 0; b < current.size(); b += chunk)
        workers.emplace_back(expand, b, std::min(current.size(), b + chunk));
      for (auto& w : workers) w.join();
    }
    if (out_of_budget) exhausted();
    for (auto& batch : produced)
      for (auto& d : batch) admit(std::move(d));
  }
  return assemble_lattice(ring, std::move(found));
}

std::vector<Subring> maximal_subrings(const CommLattice& lat) {
  std::vector<Subring> out;
  for (std::size_t i : lat.maximal) out.push_back(lat.subrings[i]);
  return out;
}

bool is_cofinal(const CommLattice& lat, std::span<const std::size_t> subset) {
  for (std::size_t s : subset)
    if (s >= lat.size()) throw PreconditionError("subring index out of range");
  for (std::size_t i = 0; i < lat.size(); ++i) {
    bool covered = false;
    for (std::size_t s : subset)
      if (lat.includes(i, s)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> conjugacy_orbits(const CommLattice& lat) {
  const RingTable& r = lat.ring;
  std::vector<std::pair<Elem, Elem>> units;
  for (Elem u = 0; u < r.size(); ++u)
    if (auto inv = two_sided_inverse(r, u)) units.emplace_back(u, *inv);

  std::vector<std::size_t> orbit_of(lat.size(), SIZE_MAX);
  std::vector<std::vector<std::size_t>> orbits;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (orbit_of[i] != SIZE_MAX) continue;
    const std::size_t id = orbits.size();
    orbits.emplace_back();
    const auto members = lat.subrings[i].members.members();
    for (const auto& [u, uinv] : units) {
      ElementSubset image(r.size());
      for (Elem x : members) image.insert(r.mul(r.mul(u, x), uinv));
      auto j = lat.find(image);
      if (!j) throw ConsistencyError("conjugate of a listed subring is missing from the lattice");
      if (orbit_of[*j] == SIZE_MAX) {
        orbit_of[*j] = id;
        orbits[id].push_back(*j);
      }
    }
    std::sort(orbits[id].begin(), orbits[id].end());
  }
  return orbits;
}

// ---------------------------------------------------------------------------
// Cache

namespace {

constexpr char kMagic[8] = {'P', 'S', 'L', 'A', 'T', 'T', '\0', '\0'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t checksum(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

template <typename T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
bool take(const std::string& in, std::size_t& pos, T& v) {
  if (pos + sizeof(T) > in.size()) return false;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return true;
}

}  // namespace

std::filesystem::path cache_file(const std::filesystem::path& dir, const RingTable& ring) {
  std::ostringstream name;
  name << std::hex << std::setw(16) << std::setfill('0') << ring.fingerprint() << ".lattice";
  return dir / name.str();
}

void cache_store(const std::filesystem::path& dir, const CommLattice& lat) {
  std::filesystem::create_directories(dir);
  std::string body(kMagic, sizeof(kMagic));
  put(body, kVersion);
  put(body, lat.ring.fingerprint());
  put(body, static_cast<std::uint64_t>(lat.ring.size()));
  put(body, static_cast<std::uint64_t>(lat.subrings.size()));
  for (const auto& s : lat.subrings)
    for (std::uint64_t w : s.members.words()) put(body, w);
  put(body, checksum(body));

  const auto path = cache_file(dir, lat.ring);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
  }
  std::filesystem::rename(tmp, path);
}

std::optional<CommLattice> cache_load(const std::filesystem::path& dir, const RingTable& ring) {
  const auto path = cache_file(dir, ring);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  auto corrupt = [&](const std::string& why) {
    return CacheError(CacheError::Reason::kCorrupt, "corrupt cache file " + path.string() + ": " + why);
  };
  if (bytes.size() < sizeof(kMagic) + 8 || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0)
    throw corrupt("bad header");
  std::uint64_t stored_sum = 0;
  std::memcpy(&stored_sum, bytes.data() + bytes.size() - 8, 8);
  if (checksum(bytes.substr(0, bytes.size() - 8)) != stored_sum) throw corrupt("checksum");

  std::size_t pos = sizeof(kMagic);
  std::uint32_t version = 0;
  std::uint64_t fingerprint = 0, size = 0, count = 0;
  if (!take(bytes, pos, version) || version != kVersion) throw corrupt("unsupported version");
  if (!take(bytes, pos, fingerprint) || !take(bytes, pos, size) || !take(bytes, pos, count))
    throw corrupt("truncated header");
  if (fingerprint != ring.fingerprint() || size != ring.size())
    throw CacheError(CacheError::Reason::kFingerprintMismatch,
                     "cache file " + path.string() + " belongs to a different ring");

  const std::size_t words = (size + 63) / 64;
  if (bytes.size() - 8 - pos != count * words * 8) throw corrupt("length");
  std::vector<Subring> subrings;
  subrings.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::vector<std::uint64_t> w(words);
    for (auto& v : w) take(bytes, pos, v);
    subrings.push_back({ElementSubset::from_words(size, std::move(w)), true});
  }
  try {
    return assemble_lattice(ring, std::move(subrings));
  } catch (const ConsistencyError& e) {
    throw corrupt(e.what());
  }
}

}  // namespace partspec
