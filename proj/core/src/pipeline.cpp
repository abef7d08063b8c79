#include "kurihara/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "kurihara/analytic.hpp"
#include "kurihara/error.hpp"
#include "kurihara/group_ring.hpp"
#include "kurihara/hypotheses.hpp"
#include "kurihara/kurihara.hpp"
#include "kurihara/numtheory.hpp"
#include "kurihara/selmer.hpp"

namespace kurihara {

using json = nlohmann::ordered_json;
using nt::i64;
using nt::u64;

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

i64 to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Config, "'" + key + "' expects an integer, got '" + v + "'");
  }
}

u64 to_uint(const std::string& key, const std::string& v) {
  const i64 x = to_int(key, v);
  if (x < 0) throw Error(ErrorKind::Config, "'" + key + "' must be nonnegative");
  return static_cast<u64>(x);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(std::uint64_t x) {
  std::ostringstream o;
  o << std::hex;
  o.width(16);
  o.fill('0');
  o << x;
  return o.str();
}

json exponent_json(Exponent e) { return e.is_finite() ? json(e.value()) : json("inf"); }

void apply_key(AnalysisConfig& cfg, const std::string& key, const std::string& v) {
  if (key == "curve") cfg.curve = v;
  else if (key == "curve-file") cfg.curve_file = v;
  else if (key == "ainvs") {
    auto parts = split(v, ',');
    if (parts.size() != 5) throw Error(ErrorKind::Config, "'ainvs' needs five integers");
    std::array<long, 5> a{};
    for (int i = 0; i < 5; ++i) a[i] = to_int(key, parts[static_cast<std::size_t>(i)]);
    cfg.ainvs = a;
  } else if (key == "p") cfg.p = to_uint(key, v);
  else if (key == "k-work") cfg.k_work = static_cast<int>(to_int(key, v));
  else if (key == "cyclotomic") cfg.cyclotomic = to_uint(key, v);
  else if (key == "subgroup") {
    cfg.subgroup.clear();
    for (const auto& g : split(v, ',')) cfg.subgroup.push_back(to_uint(key, g));
  } else if (key == "chars") {
    cfg.characters.clear();
    for (const auto& s : split(v, ';')) cfg.characters.push_back(parse_selector(s));
  } else if (key == "budget") cfg.budget = to_uint(key, v);
  else if (key == "levels") cfg.levels = static_cast<int>(to_int(key, v));
  else if (key == "prime-k") cfg.prime_k = static_cast<int>(to_int(key, v));
  else if (key == "scan-bound") cfg.scan_bound = to_uint(key, v);
  else if (key == "max-terms") cfg.max_terms = to_uint(key, v);
  else if (key == "digits") cfg.digits = static_cast<unsigned>(to_uint(key, v));
  else if (key == "root-number") cfg.root_number = static_cast<int>(to_int(key, v));
  else if (key == "cache-dir") cfg.cache_dir = v;
  else if (key == "output-dir") cfg.output_dir = v;
  else if (key == "emit-deltas") cfg.emit_deltas = v;
  else if (key == "threads") cfg.threads = static_cast<unsigned>(to_uint(key, v));
  else throw Error(ErrorKind::Config, "unknown key '" + key + "'");
}

std::string json_scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& x : v) {
      if (!s.empty()) s += ",";
      s += json_scalar(x);
    }
    return s;
  }
  return v.dump();
}

CharacterSelector selector_from_json(const json& v) {
  if (v.is_string()) return parse_selector(v.get<std::string>());
  CharacterSelector s;
  if (v.contains("kind")) {
    s.kind = v["kind"].get<std::string>();
    if (s.kind != "all" && s.kind != "trivial" && s.kind != "quadratic") {
      throw Error(ErrorKind::Config, "unknown character kind '" + s.kind + "'");
    }
    return s;
  }
  s.kind = "order";
  s.order = v.at("order").get<u64>();
  auto add_pin = [&](const json& pj) {
    CharacterPin pin;
    pin.at = pj.at("at").get<i64>();
    if (pj.contains("residue")) pin.residue = pj["residue"].get<i64>();
    if (pj.contains("root_of")) pin.root_of = pj["root_of"].get<std::vector<i64>>();
    pin.mod_exponent = pj.value("mod", 1);
    s.pins.push_back(pin);
  };
  if (v.contains("pin")) {
    if (v["pin"].is_array()) {
      for (const auto& pj : v["pin"]) add_pin(pj);
    } else {
      add_pin(v["pin"]);
    }
  }
  return s;
}

}  // namespace

void apply_setting(AnalysisConfig& cfg, const std::string& key, const std::string& value) {
  apply_key(cfg, key, value);
}

CharacterSelector parse_selector(const std::string& text) {
  CharacterSelector s;
  const std::string t = trim(text);
  if (t == "all" || t == "trivial" || t == "quadratic") {
    s.kind = t;
    return s;
  }
  s.kind = "order";
  bool have_order = false;
  for (const auto& part : split(t, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Config, "bad character selector '" + text + "'");
    const std::string k = trim(part.substr(0, eq)), v = trim(part.substr(eq + 1));
    if (k == "order") {
      s.order = to_uint(k, v);
      have_order = true;
    } else if (k == "at") {
      CharacterPin pin;
      pin.at = to_int(k, v);
      s.pins.push_back(pin);
    } else if (k == "residue" || k == "root" || k == "mod") {
      if (s.pins.empty()) throw Error(ErrorKind::Config, "'" + k + "' before 'at' in '" + text + "'");
      if (k == "residue") s.pins.back().residue = to_int(k, v);
      else if (k == "mod") s.pins.back().mod_exponent = static_cast<int>(to_int(k, v));
      else {
        for (const auto& c : split(v, ':')) s.pins.back().root_of.push_back(to_int(k, c));
      }
    } else {
      throw Error(ErrorKind::Config, "unknown selector field '" + k + "'");
    }
  }
  if (!have_order) throw Error(ErrorKind::Config, "selector '" + text + "' lacks order=");
  for (const auto& pin : s.pins) {
    if (!pin.residue && pin.root_of.empty()) {
      throw Error(ErrorKind::Config, "pin at " + std::to_string(pin.at) + " needs residue= or root=");
    }
  }
  return s;
}

void AnalysisConfig::validate() const {
  if (curve.empty() && curve_file.empty() && !ainvs) throw Error(ErrorKind::Config, "no curve given");
  if (p < 5 || !nt::is_prime(p)) throw Error(ErrorKind::Config, "p must be a prime >= 5");
  if (k_work < 1) throw Error(ErrorKind::Config, "k-work must be at least 1");
  if (budget < 1) throw Error(ErrorKind::Config, "budget must be at least 1");
  if (levels < 0) throw Error(ErrorKind::Config, "levels must be nonnegative");
  if (prime_k < 1) throw Error(ErrorKind::Config, "prime-k must be at least 1");
  if (cyclotomic < 1) throw Error(ErrorKind::Config, "cyclotomic must be positive");
  if (root_number != 0 && root_number != 1 && root_number != -1) {
    throw Error(ErrorKind::Config, "root-number must be 1 or -1");
  }
  if (characters.empty()) throw Error(ErrorKind::Config, "no characters selected");
  if (digits < 15) throw Error(ErrorKind::Config, "digits must be at least 15");
}

AnalysisConfig parse_config(const std::string& text) {
  AnalysisConfig cfg;
  const std::string t = trim(text);
  if (t.empty()) throw Error(ErrorKind::Config, "empty configuration");
  if (t.front() == '{') {
    json doc;
    try {
      doc = json::parse(t);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Config, e.what());
    }
    if (!doc.is_object() || doc.empty()) throw Error(ErrorKind::Config, "empty configuration");
    for (const auto& [key, v] : doc.items()) {
      if (key == "chars" && v.is_array()) {
        cfg.characters.clear();
        for (const auto& s : v) cfg.characters.push_back(selector_from_json(s));
      } else if (key == "chars" && v.is_object()) {
        cfg.characters = {selector_from_json(v)};
      } else {
        apply_key(cfg, key, json_scalar(v));
      }
    }
    return cfg;
  }
  std::istringstream in(t);
  std::string line;
  int lineno = 0, keys = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Config, "line " + std::to_string(lineno) + ": expected key = value");
    }
    apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    ++keys;
  }
  if (keys == 0) throw Error(ErrorKind::Config, "empty configuration");
  return cfg;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

CurveModel load_curve(const AnalysisConfig& cfg) {
  if (cfg.ainvs) return CurveModel::from_ainvs(*cfg.ainvs, cfg.curve);
  if (!cfg.curve_file.empty()) {
    if (!cfg.curve.empty()) return curve_from_file(cfg.curve_file, cfg.curve);
    std::ifstream in(cfg.curve_file);
    if (!in) throw Error(ErrorKind::Config, "cannot open curve file " + cfg.curve_file);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Config, cfg.curve_file + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("a_invariants")) {
      throw Error(ErrorKind::Config, cfg.curve_file + " holds no single curve; pass --curve to pick one");
    }
    std::array<long, 5> a{};
    for (int i = 0; i < 5; ++i) a[i] = doc["a_invariants"].at(i).get<long>();
    CurveModel E = CurveModel::from_ainvs(a, doc.value("label", std::string()));
    if (doc.contains("conductor") && doc["conductor"].get<u64>() != E.conductor) {
      throw Error(ErrorKind::Config, "conductor in " + cfg.curve_file + " disagrees with Tate's algorithm");
    }
    return E;
  }
  return curve_from_label(cfg.curve);
}

FieldSpec field_of(const AnalysisConfig& cfg) {
  if (cfg.cyclotomic <= 1) return FieldSpec::rationals();
  if (cfg.subgroup.empty()) return FieldSpec::cyclotomic(cfg.cyclotomic);
  return FieldSpec::from_subgroup(cfg.cyclotomic, cfg.subgroup);
}

std::vector<DirichletCharacter> select_characters(const FieldSpec& spec, const std::vector<CharacterSelector>& sel,
                                                  u64 p) {
  const auto all = enumerate_characters(spec);
  std::set<std::size_t> picked;
  auto index_of = [&](const DirichletCharacter& chi) -> std::size_t {
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i] == chi) return i;
    }
    throw Error(ErrorKind::Config, chi.label() + " is not a character of " + spec.label);
  };
  for (const auto& s : sel) {
    if (s.kind == "all") {
      for (std::size_t i = 0; i < all.size(); ++i) picked.insert(i);
    } else if (s.kind == "trivial") {
      picked.insert(0);
    } else if (s.kind == "quadratic") {
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i].order() == 2) picked.insert(i);
      }
    } else if (s.pins.empty()) {
      bool any = false;
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i].order() == s.order) {
          picked.insert(i);
          any = true;
        }
      }
      if (!any) throw Error(ErrorKind::Config, spec.label + " has no character of order " + std::to_string(s.order));
    } else {
      picked.insert(index_of(select_pinned(spec.c, s.order, s.pins, p)));
    }
  }
  std::vector<DirichletCharacter> out;
  for (std::size_t i : picked) out.push_back(all[i]);
  return out;
}

std::string cache_directory(const std::string& configured) {
  if (const char* env = std::getenv("KURIHARA_CACHE_DIR"); env && *env) return env;
  return configured;
}

namespace {

std::string curve_fingerprint(const CurveModel& E, int eps, u64 p) {
  std::string s = std::string(kEngineVersion) + "|";
  for (const auto& a : E.a) s += a.get_str() + ",";
  s += "|N=" + std::to_string(E.conductor) + "|eps=" + std::to_string(eps) + "|p=" + std::to_string(p);
  return hex(fnv1a(s));
}

json symbol_payload(const SymbolEvaluator& ev) {
  json d;
  d["level"] = ev.level();
  d["p1_fingerprint"] = hex(ev.p1().fingerprint());
  d["scale_plus"] = ev.scale(1).get_str();
  d["scale_minus"] = ev.scale(-1).get_str();
  d["phi_plus"] = ev.phi(1);
  d["phi_minus"] = ev.phi(-1);
  return d;
}

}  // namespace

std::optional<SymbolEvaluator> read_symbol_cache(const std::string& path, const CurveModel& E, int eps, u64 p) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::CacheCorrupt, path + ": " + e.what());
  }
  try {
    if (doc.at("fingerprint").get<std::string>() != curve_fingerprint(E, eps, p)) return std::nullopt;
    const json& d = doc.at("symbols");
    if (doc.at("checksum").get<std::string>() != hex(fnv1a(d.dump()))) {
      throw Error(ErrorKind::CacheCorrupt, path + ": checksum mismatch");
    }
    auto p1 = std::make_shared<const P1List>(d.at("level").get<u64>());
    if (hex(p1->fingerprint()) != d.at("p1_fingerprint").get<std::string>()) {
      throw Error(ErrorKind::CacheCorrupt, path + ": P1 table fingerprint mismatch");
    }
    return SymbolEvaluator(p1, d.at("phi_plus").get<std::vector<i64>>(), d.at("phi_minus").get<std::vector<i64>>(),
                           mpq_class(d.at("scale_plus").get<std::string>()),
                           mpq_class(d.at("scale_minus").get<std::string>()), p);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::CacheCorrupt, path + ": " + e.what());
  }
}

EvaluatorBuild cached_evaluator(const CurveModel& E, int eps, u64 p, unsigned digits, const std::string& cache_dir) {
  const std::string dir = cache_directory(cache_dir);
  if (dir.empty()) return {analytic::build_evaluator(E, eps, p, digits), false, {}};
  const std::string fp = curve_fingerprint(E, eps, p);
  const std::string path = dir + "/symbols-N" + std::to_string(E.conductor) + "-" + fp + ".json";
  try {
    if (auto ev = read_symbol_cache(path, E, eps, p)) return {*ev, true, path};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CacheCorrupt) throw;
  }
  SymbolEvaluator ev = analytic::build_evaluator(E, eps, p, digits);
  json doc;
  doc["engine"] = kEngineVersion;
  doc["fingerprint"] = fp;
  doc["symbols"] = symbol_payload(ev);
  doc["checksum"] = hex(fnv1a(doc["symbols"].dump()));
  std::filesystem::create_directories(dir);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorKind::Config, "cannot write cache file " + tmp);
    out << doc.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
  return {ev, false, path};
}

// ---------------------------------------------------------------------------

namespace {

struct CharacterResult {
  DirichletCharacter chi;
  ThetaLadder ladder;
  std::optional<SelmerReport> report;
  std::pair<int, std::optional<int>> bounds;
  std::string note;
  FunctionalEquationReport fe;
};

json ladder_json(const ThetaLadder& L) {
  json arr = json::array();
  for (std::size_t i = 0; i < L.entries.size(); ++i) {
    const auto& e = L.entries[i];
    json j;
    j["level"] = i;
    j["exponent"] = e.computed ? exponent_json(e.exponent) : json(nullptr);
    j["status"] = !e.computed ? "not_reached" : (e.exact ? "exact" : "upper_bound");
    j["witness"] = e.witness;
    j["parity_forced"] = e.parity_forced;
    j["samples"] = e.samples;
    j["skipped"] = e.skipped;
    arr.push_back(j);
  }
  return arr;
}

std::string exps_text(const std::vector<Exponent>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

std::string structure_text(const SelmerReport& r, u64 p, const DirichletCharacter& chi) {
  const std::string O = chi.order() <= 2 ? "Z_" + std::to_string(p) : "O";
  std::string s;
  if (r.rank > 0) s += O + (r.rank > 1 ? "^" + std::to_string(r.rank) : "");
  for (auto a : r.torsion) {
    if (!s.empty()) s += " + ";
    s += O + "/(" + std::to_string(p) + (a > 1 ? "^" + std::to_string(a) : "") + ")";
  }
  return s.empty() ? "0" : s;
}

json ideal_json(const IntegralIdeal& I, std::size_t index, const std::vector<std::pair<u64, std::size_t>>& sigma) {
  json j;
  j["index"] = index;
  json ex = json::array();
  for (auto e : I.exponents) ex.push_back(exponent_json(e));
  j["exponents"] = ex;
  json gen = json::object();
  for (const auto& [a, g] : sigma) {
    if (I.rational_generator) {
      const auto& q = (*I.rational_generator)[g];
      if (q != 0) gen["sigma_" + std::to_string(a)] = q.get_str();
    } else {
      const auto& c = I.generator[g].coeffs();
      const std::string v = c.empty() ? "0" : c[0].get_str();
      if (v != "0") gen["sigma_" + std::to_string(a)] = v;
    }
  }
  j["generator_over"] = I.rational_generator ? "Q" : "Z/p^k";
  j["generator"] = gen;
  return j;
}

}  // namespace

AnalysisOutcome run_analyze(const AnalysisConfig& cfg, std::ostream* log) {
  AnalysisOutcome out;
  std::string stage = "config";
  auto note = [&](const std::string& msg) {
    if (log) *log << "[" << stage << "] " << msg << "\n";
  };
  try {
    cfg.validate();

    stage = "curve";
    const CurveModel E = load_curve(cfg);
    const std::string curve_name = E.label.empty() ? "[" + E.a[0].get_str() + "," + E.a[1].get_str() + "," +
                                                         E.a[2].get_str() + "," + E.a[3].get_str() + "," +
                                                         E.a[4].get_str() + "]"
                                                   : E.label;
    const FieldSpec spec = field_of(cfg);
    note(curve_name + " N = " + std::to_string(E.conductor) + ", K = " + spec.label);

    stage = "hypotheses";
    HypothesisReport hyp = hypothesis_report(E, spec, cfg.p);

    stage = "symbols";
    const int eps = cfg.root_number != 0 ? cfg.root_number : analytic::root_number(E, cfg.digits);
    EvaluatorBuild built = cached_evaluator(E, eps, cfg.p, cfg.digits, cfg.cache_dir);
    note(std::string("modular symbols ") + (built.cache_hit ? "from cache" : "built"));

    stage = "characters";
    const auto chars = select_characters(spec, cfg.characters, cfg.p);
    const bool all_chars = chars.size() == spec.d;

    std::unique_ptr<std::ofstream> delta_file;
    std::ostream* delta_out = nullptr;
    if (!cfg.emit_deltas.empty()) {
      if (cfg.emit_deltas == "-") {
        delta_out = &std::cout;
      } else {
        delta_file = std::make_unique<std::ofstream>(cfg.emit_deltas);
        if (!*delta_file) throw Error(ErrorKind::Config, "cannot write " + cfg.emit_deltas);
        delta_out = delta_file.get();
      }
    }

    stage = "ladders";
    LadderStrategy strategy;
    strategy.primes_per_level = cfg.budget;
    strategy.max_level = cfg.levels;
    strategy.k = cfg.prime_k;
    strategy.scan_bound = cfg.scan_bound;
    strategy.sum.threads = cfg.threads;
    strategy.sum.max_terms = cfg.max_terms;

    std::vector<CharacterResult> results;
    for (const auto& chi : chars) {
      const PadicQuotient ring = PadicQuotient::build(cfg.p, cfg.k_work, chi.order());
      CharacterResult res{chi, {}, std::nullopt, {0, std::nullopt}, {}, {}};
      auto sink = [&](const KuriharaValue& v) {
        if (delta_out) *delta_out << delta_json_line(curve_name, v) << "\n";
      };
      try {
        res.ladder = theta_ladder(E, chi, built.evaluator, ring, eps, cfg.k_work, strategy, sink);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SearchExhausted) throw;
        res.note = e.what();
        LadderStrategy level0 = strategy;
        level0.max_level = 0;
        res.ladder = theta_ladder(E, chi, built.evaluator, ring, eps, cfg.k_work, level0, sink);
      }
      res.fe = functional_equation_check(E, eps, chi, res.ladder.values);
      res.bounds = rank_bounds(res.ladder);
      try {
        res.report = selmer_structure(res.ladder);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotReached && e.kind() != ErrorKind::ParityViolation &&
            e.kind() != ErrorKind::InconsistentLadder) {
          throw;
        }
        if (!res.note.empty()) res.note += "; ";
        res.note += e.what();
      }
      note(chi.label() + ": ladder " + exps_text([&] {
             std::vector<Exponent> v;
             for (const auto& e : res.ladder.entries) v.push_back(e.exponent);
             return v;
           }()));
      results.push_back(std::move(res));
    }

    bool every_unit = all_chars;
    for (const auto& r : results) every_unit = every_unit && r.ladder.unit_witnessed();
    if (every_unit) hyp.upgrade_main_conjecture("unit witnessed for every character of K");

    stage = "integral";
    json integral;
    std::string integral_text;
    const bool full_cyclotomic = spec.subgroup_elements().size() == 1;
    std::string reason;
    if (!all_chars) reason = "not every character of K was analysed";
    else if (!full_cyclotomic) reason = "integral assembly is implemented for K = Q(mu_c)";
    else {
      for (const auto& r : results) {
        if (!r.report) {
          reason = "no unit witnessed for " + r.chi.label();
          break;
        }
      }
    }
    if (reason.empty()) {
      const u64 c = std::max<u64>(spec.c, 1);
      const GroupDescriptor G = unit_group_descriptor(c);
      const auto decomp = decompose_group_ring(G, cfg.p, cfg.k_work);
      std::map<GroupCharacter, ComponentModule> per_char;
      std::map<GroupCharacter, std::string> names;
      for (const auto& r : results) {
        // The module of chi sits on the component of e_{chibar}.
        per_char[group_character(r.chi.conj())] = {r.report->rank, r.report->torsion};
        names[group_character(r.chi)] = r.chi.label();
      }
      const IntegralFitting F = assemble_integral_fitting(decomp, per_char);
      std::vector<std::pair<u64, std::size_t>> sigma;
      if (c == 1) sigma.push_back({1, 0});
      for (u64 a = 1; a < c; ++a) {
        if (nt::gcd(a, c) == 1) sigma.push_back({a, unit_index(c, static_cast<i64>(a))});
      }
      integral["available"] = true;
      integral["group"] = G.describe();
      integral["k"] = cfg.k_work;
      json comps = json::array();
      for (std::size_t j = 0; j < decomp.components.size(); ++j) {
        json cj;
        cj["degree"] = decomp.components[j].degree;
        json labels = json::array();
        for (const auto& x : decomp.components[j].orbit) labels.push_back(names.count(x) ? names[x] : "?");
        cj["characters"] = labels;
        cj["rank"] = F.modules[j].rank;
        cj["torsion"] = F.modules[j].torsion;
        comps.push_back(cj);
      }
      integral["components"] = comps;
      json fit = json::array();
      for (std::size_t i = 0; i < F.fitting.size(); ++i) fit.push_back(ideal_json(F.fitting[i], i, sigma));
      integral["fitting"] = fit;
      json pres = json::array();
      for (std::size_t i = 0; i < F.presentation.size(); ++i) {
        pres.push_back(ideal_json(F.presentation[i], i + 1, sigma));
      }
      integral["presentation"] = pres;
      integral_text = "Z_p[G] presentation: ";
      if (F.presentation.empty()) integral_text += "0";
      for (std::size_t i = 0; i < F.presentation.size(); ++i) {
        integral_text += (i ? " + " : "") + std::string("Z_p[G]/I_") + std::to_string(i + 1) + " " +
                         exps_text(F.presentation[i].exponents);
      }
      integral_text += "\n";
    } else {
      integral["available"] = false;
      integral["reason"] = reason;
      integral_text = "integral structure not assembled: " + reason + "\n";
    }

    stage = "report";
    json rep;
    rep["engine"] = kEngineVersion;
    rep["curve"] = curve_name;
    rep["conductor"] = E.conductor;
    rep["root_number"] = eps;
    rep["p"] = cfg.p;
    rep["k_work"] = cfg.k_work;
    rep["field"] = {{"c", spec.c}, {"d", spec.d}, {"label", spec.label}};
    json hj = json::array();
    for (const auto& h : hyp.checks) {
      hj.push_back({{"id", h.id}, {"status", to_string(h.status)}, {"heuristic", h.heuristic}, {"detail", h.detail}});
    }
    rep["hypotheses"] = hj;
    json cj = json::array();
    std::ostringstream txt;
    txt << "curve " << curve_name << " (N = " << E.conductor << ", root number " << (eps > 0 ? "+1" : "-1")
        << "), p = " << cfg.p << ", K = " << spec.label << " of degree " << spec.d << "\n";
    for (const auto& h : hyp.checks) {
      txt << "  " << h.id << ": " << to_string(h.status) << (h.heuristic ? " (heuristic)" : "") << ", " << h.detail
          << "\n";
    }
    for (const auto& r : results) {
      json j;
      j["chi"] = r.chi.label();
      j["primitive"] = r.ladder.chi;
      j["order"] = r.chi.order();
      j["conductor"] = r.chi.conductor();
      j["parity"] = r.chi.parity();
      j["case"] = r.chi.is_self_dual() ? "self_dual" : "non_self_dual";
      j["ladder"] = ladder_json(r.ladder);
      j["rank_bounds"] = {r.bounds.first, r.bounds.second ? json(*r.bounds.second) : json(nullptr)};
      if (r.report) {
        j["rank"] = r.report->rank;
        j["torsion"] = r.report->torsion;
        json f = json::array();
        for (auto e : r.report->fitting) f.push_back(exponent_json(e));
        j["fitting"] = f;
        j["certification"] = to_string(r.report->certification);
      } else {
        j["rank"] = nullptr;
        j["torsion"] = nullptr;
        j["fitting"] = nullptr;
        j["certification"] = to_string(Certification::empirical);
      }
      j["imc"] = to_string(imc_verdict(r.ladder));
      if (!r.fe.skipped) {
        j["functional_equation"] = {{"checked", r.fe.checked}, {"violations", r.fe.violations.size()}};
      }
      if (!r.note.empty()) j["note"] = r.note;
      cj.push_back(j);

      std::vector<Exponent> lad;
      for (const auto& e : r.ladder.entries) lad.push_back(e.exponent);
      txt << r.chi.label() << " (order " << r.chi.order() << "): ladder " << exps_text(lad);
      if (r.report) {
        txt << ", rank " << r.report->rank << ", Sel^vee = " << structure_text(*r.report, cfg.p, r.chi) << " ["
            << to_string(r.report->certification) << "]";
      } else {
        txt << ", rank in [" << r.bounds.first << ", " << (r.bounds.second ? std::to_string(*r.bounds.second) : "?")
            << "], no unit witnessed";
      }
      txt << ", main conjecture " << (imc_verdict(r.ladder) == ImcStatus::verified ? "verified" : "open") << "\n";
    }
    rep["characters"] = cj;
    rep["integral"] = integral;
    txt << integral_text;

    out.report_json = rep.dump(2) + "\n";
    out.summary = txt.str();
    if (!cfg.output_dir.empty()) {
      std::filesystem::create_directories(cfg.output_dir);
      std::ofstream(cfg.output_dir + "/report.json") << out.report_json;
      std::ofstream(cfg.output_dir + "/summary.txt") << out.summary;
    }
    out.exit_code = hyp.any_failed() ? 2 : 0;
  } catch (const Error& e) {
    out.exit_code = 1;
    out.error = stage + ": " + e.what();
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.error = stage + ": " + e.what();
  }
  return out;
}

}  // namespace kurihara
