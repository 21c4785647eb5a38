#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "partspec/commlattice.hpp"
#include "partspec/errors.hpp"
#include "partspec/ks.hpp"
#include "partspec/obstruction.hpp"
#include "partspec/partial.hpp"
#include "partspec/primespec.hpp"

namespace partspec::cli {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Ring definitions

namespace {

template <typename T>
T field_of(const json& def, const char* key) {
  if (!def.contains(key)) throw ParseError(std::string("ring definition is missing '") + key + "'");
  try {
    return def.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("ring definition field '") + key + "' has the wrong type");
  }
}

std::vector<Elem> flatten_table(const json& rows, std::size_t size, const char* key) {
  if (!rows.is_array() || rows.size() != size)
    throw ParseError(std::string("'") + key + "' must be a " + std::to_string(size) + "x" +
                     std::to_string(size) + " array");
  std::vector<Elem> out;
  out.reserve(size * size);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != size)
      throw ParseError(std::string("'") + key + "' has a row of the wrong length");
    for (const auto& v : row) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= size)
        throw ParseError(std::string("'") + key + "' has an entry outside [0, size)");
      out.push_back(v.get<Elem>());
    }
  }
  return out;
}

}  // namespace

RingTable ring_from_json(const json& def) {
  if (!def.is_object()) throw ParseError("ring definition must be a JSON object");
  const auto type = field_of<std::string>(def, "type");
  RingTable ring;
  if (type == "zmod") {
    ring = make_zmod(field_of<std::size_t>(def, "m"));
  } else if (type == "gf") {
    const auto k = def.contains("k") ? field_of<std::uint32_t>(def, "k") : 1u;
    ring = make_gf(field_of<std::uint32_t>(def, "p"), k);
  } else if (type == "matrix" || type == "triangular") {
    if (!def.contains("base")) throw ParseError("ring definition is missing 'base'");
    const RingTable base = ring_from_json(def.at("base"));
    const auto n = field_of<std::size_t>(def, "n");
    ring = type == "matrix" ? make_matrix_ring(base, n) : make_triangular_ring(base, n);
  } else if (type == "power") {
    if (!def.contains("base")) throw ParseError("ring definition is missing 'base'");
    ring = make_power(ring_from_json(def.at("base")), field_of<std::size_t>(def, "n"));
  } else if (type == "product") {
    if (!def.contains("factors") || !def.at("factors").is_array() || def.at("factors").empty())
      throw ParseError("'factors' must be a nonempty array");
    ring = ring_from_json(def.at("factors").front());
    for (std::size_t i = 1; i < def.at("factors").size(); ++i)
      ring = make_product(ring, ring_from_json(def.at("factors")[i]));
  } else if (type == "tables") {
    const auto size = field_of<std::size_t>(def, "size");
    if (size == 0 || size > kDefaultSizeCap) throw CapacityError("table size outside [1, cap]");
    auto add = flatten_table(def.at("add"), size, "add");
    auto mul = flatten_table(def.at("mul"), size, "mul");
    const auto zero = def.contains("zero") ? field_of<Elem>(def, "zero") : Elem{0};
    const auto one = def.contains("one") ? field_of<Elem>(def, "one") : Elem{size > 1 ? 1u : 0u};
    if (zero >= size || one >= size) throw ParseError("'zero' and 'one' must be elements");
    const auto label = def.contains("label") ? field_of<std::string>(def, "label") : "tables";
    ring = RingTable::from_tables(label, size, std::move(add), std::move(mul), zero, one);
  } else {
    throw ParseError("unknown ring type '" + type + "'");
  }
  if (def.contains("label") && type != "tables") ring = ring.with_label(field_of<std::string>(def, "label"));
  return ring;
}

RingTable parse_ring_definition(const std::string& source) {
  std::string text;
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') {
    text = source;
  } else {
    std::ifstream in(source);
    if (!in) throw ParseError("cannot open ring definition " + source);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  json def;
  try {
    def = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return ring_from_json(def);
}

std::chrono::milliseconds parse_duration(const std::string& text) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid duration '" + text + "'");
  }
  const std::string unit = text.substr(used);
  double ms = 0;
  if (unit.empty() || unit == "s") ms = value * 1000;
  else if (unit == "ms") ms = value;
  else if (unit == "m") ms = value * 60000;
  else if (unit == "h") ms = value * 3600000;
  else throw ParseError("invalid duration unit in '" + text + "'");
  if (!(ms > 0)) throw ParseError("duration must be positive");
  return std::chrono::milliseconds(static_cast<std::int64_t>(std::max(1.0, ms)));
}

// ---------------------------------------------------------------------------
// Argument parsing

std::optional<int> parse_args(int argc, const char* const* argv, RunConfig& config,
                              std::ostream& out, std::ostream& err) {
  CLI::App app{"Prime partial ideals of finite rings and Kochen-Specker colorability", "partspec"};
  app.require_subcommand(1, 1);

  std::string format = "json";
  std::string time_budget;
  std::uint64_t node_budget = config.budget.max_nodes;
  std::string cache_dir;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--cache-dir", cache_dir, "Lattice cache directory (overrides PARTSPEC_CACHE_DIR)");
    sub->add_option("--node-budget", node_budget, "Maximum search nodes")->check(CLI::PositiveNumber);
    sub->add_option("--time-budget", time_budget, "Wall-clock limit, e.g. 30s, 500ms, 2m");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("-v,--verbose", "Progress messages on stderr");
    sub->add_option("--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--timings", "Include wall-clock timings in the report");
  };
  auto ring_option = [&](CLI::App* sub) {
    sub->add_option("--ring", config.ring, "Ring definition file or inline JSON")->required();
  };
  auto rays_option = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--rays", config.rays, "Ray file");
    if (required) opt->required();
  };

  auto* subrings = app.add_subcommand("subrings", "Commutative subring lattice");
  ring_option(subrings);
  subrings->add_flag("--orbits", config.orbits, "Group subrings into conjugacy orbits");
  auto* spec_cmd = app.add_subcommand("spec", "Prime ideals of a commutative ring");
  ring_option(spec_cmd);
  auto* partspec = app.add_subcommand("partspec", "Prime partial ideals as compatible families");
  ring_option(partspec);
  auto* morphisms = app.add_subcommand("morphisms", "Partial morphisms to a finite field");
  ring_option(morphisms);
  morphisms->add_option("--field", config.field, "Target field definition (default: prime field)");
  auto* check = app.add_subcommand("check-ideal", "Test whether a subset is a (prime) partial ideal");
  ring_option(check);
  check->add_option("--ideal", config.ideal, "Comma-separated element indices")->required();
  auto* ks_check = app.add_subcommand("ks-check", "Kochen-Specker colorability of a ray file");
  rays_option(ks_check, true);
  auto* ks_lift = app.add_subcommand("ks-lift", "Lift a 3-dimensional ray system and test it");
  rays_option(ks_lift, true);
  ks_lift->add_option("--dim", config.dim, "Target dimension")->check(CLI::Range(4, 64));
  ks_lift->add_option("--out", config.out, "Write the lifted system to this ray file");
  auto* verify = app.add_subcommand("verify-paper", "Recompute the full obstruction report");
  rays_option(verify, false);

  for (auto* sub : {subrings, spec_cmd, partspec, morphisms, check, ks_check, ks_lift, verify})
    common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: usage: " << msg << "\n";
    return kExitUsage;
  }

  // Flags are counted on the chosen subcommand only.
  const CLI::App* chosen = app.get_subcommands().front();
  config.command = chosen->get_name();
  config.verbosity = static_cast<int>(chosen->count("--verbose"));
  config.timings = chosen->count("--timings") > 0;
  config.format = format == "text" ? Format::kText : Format::kJson;
  config.budget.max_nodes = node_budget;
  try {
    if (!time_budget.empty()) config.budget.max_time = parse_duration(time_budget);
  } catch (const ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!cache_dir.empty()) config.cache_dir = cache_dir;
  else if (const char* env = std::getenv("PARTSPEC_CACHE_DIR"); env && *env) config.cache_dir = env;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

using Clock = std::chrono::steady_clock;

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

json ring_json(const RingTable& r) {
  return {{"label", r.label()},
          {"size", r.size()},
          {"fingerprint", hex(r.fingerprint())},
          {"commutative", r.is_commutative()}};
}

json members(const ElementSubset& s) { return s.members(); }

struct Outcome {
  json report;
  int code = kExitOk;
};

class Runner {
 public:
  Runner(const RunConfig& config, std::ostream& err)
      : config_(config), err_(err), start_(Clock::now()) {}

  Outcome dispatch() {
    const std::string& c = config_.command;
    if (c == "subrings") return subrings();
    if (c == "spec") return spec_cmd();
    if (c == "partspec") return partspec();
    if (c == "morphisms") return morphisms();
    if (c == "check-ideal") return check_ideal();
    if (c == "ks-check") return ks_check();
    if (c == "ks-lift") return ks_lift();
    if (c == "verify-paper") return verify_paper();
    throw PreconditionError("unknown command '" + c + "'");
  }

 private:
  /// The time budget covers the whole command; each search phase gets what
  /// is left of it and the full node budget.
  Budget budget() const {
    Budget b = config_.budget;
    const auto used = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_);
    b.max_time = used >= b.max_time ? std::chrono::milliseconds(0) : b.max_time - used;
    return b;
  }

  void note(const std::string& msg) const {
    if (config_.verbosity > 0) err_ << "info: " << msg << "\n";
  }

  RingTable ring() const {
    if (!config_.ring) throw PreconditionError("--ring is required");
    RingTable r = parse_ring_definition(*config_.ring);
    note("ring " + r.label() + " with " + std::to_string(r.size()) + " elements");
    return r;
  }

  json start(const RingTable* r) const {
    json j = {{"schema_version", kSchemaVersion}, {"command", config_.command}};
    if (r) j["ring"] = ring_json(*r);
    return j;
  }

  CommLattice lattice(const RingTable& r) const {
    if (config_.cache_dir) {
      try {
        if (auto hit = cache_load(*config_.cache_dir, r)) {
          note("lattice cache hit in " + config_.cache_dir->string());
          return *hit;
        }
        note("lattice cache miss");
      } catch (const CacheError& e) {
        err_ << "warning: cache: " << e.what() << "; recomputing\n";
      }
    }
    CommLattice lat = enumerate_commutative_subrings(r, LatticeOptions{budget(), config_.jobs});
    note(std::to_string(lat.size()) + " commutative subrings, " + std::to_string(lat.maximal.size()) +
         " maximal");
    if (config_.cache_dir) cache_store(*config_.cache_dir, lat);
    return lat;
  }

  Outcome subrings() {
    const RingTable r = ring();
    json j = start(&r);
    const CommLattice lat = lattice(r);
    json list = json::array();
    for (std::size_t i = 0; i < lat.size(); ++i)
      list.push_back({{"index", i},
                      {"size", lat.subrings[i].size()},
                      {"maximal", lat.above[i].count() == 1},
                      {"members", members(lat.subrings[i].members)}});
    j["complete"] = true;
    j["count"] = lat.size();
    j["maximal"] = lat.maximal;
    j["subrings"] = std::move(list);
    if (config_.orbits) j["orbits"] = conjugacy_orbits(lat);
    return {j};
  }

  Outcome spec_cmd() {
    const RingTable r = ring();
    if (!r.is_commutative()) throw PreconditionError(r.label() + " is not commutative; use partspec");
    json j = start(&r);
    const auto ideals = enumerate_ideals(r, budget());
    const SpecResult sp = spec(r, budget());
    j["complete"] = true;
    j["ideal_count"] = ideals.size();
    j["count"] = sp.primes.size();
    json primes = json::array();
    for (const auto& p : sp.primes) primes.push_back(members(p));
    j["primes"] = std::move(primes);
    return {j};
  }

  Outcome partspec() {
    const RingTable r = ring();
    json j = start(&r);
    const CommLattice lat = lattice(r);
    const PartSpecResult ps = part_spec(r, lat, budget());

    json maximal = json::array();
    for (const auto& local : ps.local) {
      json primes = json::array();
      for (const auto& p : local.primes) primes.push_back(members(p));
      maximal.push_back({{"subring", local.subring},
                         {"members", members(lat.subrings[local.subring].members)},
                         {"primes", std::move(primes)}});
    }
    json families = json::array();
    for (std::size_t i = 0; i < ps.families.size(); ++i)
      families.push_back({{"choice", ps.families[i].choice}, {"ideal", members(ps.ideals[i])}});

    j["lattice"] = {{"subrings", lat.size()}, {"maximal", lat.maximal.size()}};
    j["maximal_subrings"] = std::move(maximal);
    j["complete"] = ps.stats.complete;
    j["count"] = ps.stats.complete ? json(ps.ideals.size()) : json(nullptr);
    if (ps.stats.complete) j["empty"] = ps.ideals.empty();
    j["families"] = std::move(families);
    j["stats"] = {{"nodes", ps.stats.nodes}, {"backtracks", ps.stats.backtracks}};
    if (!ps.stats.complete) {
      err_ << "error: budget: partSpec search stopped after " << ps.stats.nodes
           << " nodes; the listed families are a lower bound and no emptiness is claimed\n";
      return {j, kExitBudget};
    }
    return {j};
  }

  Outcome morphisms() {
    const RingTable r = ring();
    RingTable k;
    if (config_.field) {
      k = parse_ring_definition(*config_.field);
    } else {
      const std::size_t p = r.characteristic();
      bool prime = p >= 2;
      for (std::size_t d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
      if (!prime) throw PreconditionError("characteristic is not prime; pass --field");
      k = make_gf(static_cast<std::uint32_t>(p), 1);
    }
    json j = start(&r);
    j["field"] = ring_json(k);
    const CommLattice lat = lattice(r);
    const auto ms = enumerate_partial_morphisms(r, k, lat, budget());
    json list = json::array();
    bool kernels_prime = true;
    for (const auto& f : ms) {
      const ElementSubset kernel = preimage(f, ElementSubset(k.size(), {k.zero()}));
      kernels_prime = kernels_prime && is_prime_partial_ideal(f.source, kernel).ok;
      list.push_back({{"table", f.table}, {"kernel", members(kernel)}});
    }
    j["complete"] = true;
    j["count"] = ms.size();
    j["kernels_prime"] = kernels_prime;
    j["morphisms"] = std::move(list);
    return {j, kernels_prime ? kExitOk : kExitVerificationFailure};
  }

  Outcome check_ideal() {
    const RingTable r = ring();
    ElementSubset candidate(r.size());
    std::stringstream tokens(config_.ideal);
    std::string tok;
    while (std::getline(tokens, tok, ',')) {
      if (tok.find_first_not_of(" ") == std::string::npos) continue;
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || tok.find_first_not_of(" 0123456789") != std::string::npos)
        throw ParseError("--ideal: not an element index: '" + tok + "'");
      if (v >= r.size()) throw ParseError("--ideal: element " + tok + " is outside the ring");
      candidate.insert(static_cast<Elem>(v));
    }
    json j = start(&r);
    const PartialStructure s = standard_structure(r);
    const Verdict ideal = is_partial_ideal(s, candidate);
    j["candidate"] = members(candidate);
    j["partial_ideal"] = ideal.ok;
    if (!ideal) {
      j["reason"] = ideal.reason;
      j["witness"] = ideal.witness;
      j["prime"] = nullptr;
      return {j, kExitVerificationFailure};
    }
    const Verdict prime = is_prime_partial_ideal(s, candidate);
    j["prime"] = prime.ok;
    if (!prime) {
      j["reason"] = prime.reason;
      j["witness"] = prime.witness;
    }
    return {j};
  }

  static json coloring_json(const ColoringResult& res) {
    json j = {{"status", res.status == ColoringStatus::kSat     ? "sat"
                         : res.status == ColoringStatus::kUnsat ? "unsat"
                                                                : "unknown"},
              {"complete", res.stats.complete},
              {"stats", {{"nodes", res.stats.nodes}, {"backtracks", res.stats.backtracks}}}};
    if (res.status == ColoringStatus::kSat) j["coloring"] = res.coloring;
    return j;
  }

  static json system_json(const RaySystem& sys) {
    return {{"dim", sys.dim}, {"rays", sys.rays.size()}, {"bases", sys.bases.size()}};
  }

  Outcome ks_check() {
    const LoadedRays loaded = load_rays(*config_.rays);
    if (loaded.duplicates)
      err_ << "warning: rays: " << loaded.duplicates << " duplicate rays removed\n";
    json j = start(nullptr);
    j["system"] = system_json(loaded.system);
    j["duplicates"] = loaded.duplicates;
    const ColoringResult res = ks_colorable(loaded.system, ColoringOptions{budget(), std::nullopt});
    j.update(coloring_json(res));
    if (res.status == ColoringStatus::kUnknown) {
      err_ << "error: budget: coloring search stopped after " << res.stats.nodes << " nodes\n";
      return {j, kExitBudget};
    }
    return {j};
  }

  Outcome ks_lift() {
    const LoadedRays loaded = load_rays(*config_.rays);
    const RaySystem lifted = lift_to_dimension(loaded.system, config_.dim);
    if (config_.out) save_rays(*config_.out, lifted);
    json j = start(nullptr);
    j["source"] = system_json(loaded.system);
    j["system"] = system_json(lifted);
    const ColoringResult res = ks_colorable(lifted, ColoringOptions{budget(), std::nullopt});
    j.update(coloring_json(res));
    if (res.status == ColoringStatus::kUnknown) {
      err_ << "error: budget: coloring search stopped after " << res.stats.nodes << " nodes\n";
      return {j, kExitBudget};
    }
    return {j};
  }

  Outcome verify_paper() {
    ReportTargets targets = ReportTargets::defaults();
    targets.budget = budget();
    targets.cache_dir = config_.cache_dir;
    targets.jobs = config_.jobs;
    if (config_.rays) {
      const LoadedRays loaded = load_rays(*config_.rays);
      targets.ray_systems = {{config_.rays->stem().string(), loaded.system}};
    }
    const ObstructionReport report = build_report(targets);
    json j = start(nullptr);
    json claims = json::array();
    json times = json::object();
    bool incomplete = false;
    for (const auto& e : report.entries) {
      json facts = json::object();
      for (const auto& [key, value] : e.facts) facts[key] = value;
      claims.push_back({{"id", e.id},
                        {"statement", e.statement},
                        {"verified", e.verified},
                        {"complete", e.complete},
                        {"facts", std::move(facts)}});
      times[e.id] = e.seconds;
      incomplete = incomplete || !e.complete;
    }
    j["claims"] = std::move(claims);
    j["verdict"] = to_string(report.verdict);
    j["reason"] = report.verdict_reason;
    claim_timings_ = std::move(times);
    switch (report.verdict) {
      case ReportVerdict::kVerified: return {j};
      case ReportVerdict::kFailed: return {j, kExitVerificationFailure};
      case ReportVerdict::kWithheld:
        err_ << "error: " << (incomplete ? "budget" : "verification") << ": verdict withheld: "
             << report.verdict_reason << "\n";
        return {j, incomplete ? kExitBudget : kExitVerificationFailure};
    }
    return {j};
  }

 public:
  json claim_timings_ = nullptr;

 private:
  const RunConfig& config_;
  std::ostream& err_;
  Clock::time_point start_;
};

int exit_code_for(const Error& e) {
  if (dynamic_cast<const BudgetExhausted*>(&e)) return kExitBudget;
  if (dynamic_cast<const ConsistencyError*>(&e) || dynamic_cast<const CompatibilityError*>(&e) ||
      dynamic_cast<const CacheError*>(&e))
    return kExitVerificationFailure;
  return kExitUsage;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

void render(const json& j, const std::string& indent, std::string& out) {
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [&](const json& v) {
    if (!v.is_array()) return v.is_primitive();
    return std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); });
  };
  auto inline_form = [&](const json& v) {
    if (!v.is_array()) return scalar(v);
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar(v[i]);
    return s + "]";
  };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (flat(value)) {
        out += indent + key + ": " + inline_form(value) + "\n";
      } else {
        out += indent + key + ":\n";
        render(value, indent + "  ", out);
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (flat(j[i])) {
        out += indent + "- " + inline_form(j[i]) + "\n";
      } else {
        out += indent + "- [" + std::to_string(i) + "]\n";
        render(j[i], indent + "  ", out);
      }
    }
  } else {
    out += indent + scalar(j) + "\n";
  }
}

}  // namespace

std::string render_text(const json& report) {
  std::string out;
  render(report, "", out);
  return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  Outcome outcome;
  json claim_timings = nullptr;
  try {
    Runner runner(config, err);
    outcome = runner.dispatch();
    claim_timings = std::move(runner.claim_timings_);
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << one_line(e.what()) << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: internal: " << one_line(e.what()) << "\n";
    return kExitVerificationFailure;
  }
  if (config.timings) {
    outcome.report["timings"] = {
        {"seconds", std::chrono::duration<double>(Clock::now() - start).count()}};
    if (!claim_timings.is_null()) outcome.report["timings"]["claims"] = std::move(claim_timings);
  }
  if (config.format == Format::kJson) out << outcome.report.dump(2) << "\n";
  else out << render_text(outcome.report);
  return outcome.code;
}

}  // namespace partspec::cli
