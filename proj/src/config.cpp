#include "goc/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "goc/csv.hpp"

namespace goc {
namespace {

struct RawValue {
  enum class Type { Number, String, Bool } type;
  std::string text;  // unquoted
  int line;
};

using RawMap = std::map<std::string, RawValue>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

bool valid_key(const std::string& key) {
  if (key.empty() || key.front() == '.' || key.back() == '.') return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  });
}

RawMap tokenize(const std::string& text) {
  RawMap map;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_key(section)) throw ConfigError(where, "bad section name '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where, "expected key = value");
    const std::string local = trim(line.substr(0, eq));
    if (!valid_key(local)) throw ConfigError(where, "bad key '" + local + "'");
    const std::string key = section.empty() ? local : section + "." + local;
    std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(key, "missing value");
    RawValue raw{RawValue::Type::Number, value, lineno};
    if (value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') throw ConfigError(key, "unterminated string");
      raw.type = RawValue::Type::String;
      raw.text = value.substr(1, value.size() - 2);
    } else if (value == "true" || value == "false") {
      raw.type = RawValue::Type::Bool;
    }
    if (!map.emplace(key, raw).second) throw ConfigError(key, "duplicate key");
  }
  return map;
}

// Typed access that records which keys were consumed, so leftovers can be
// reported as unknown.
class Reader {
 public:
  explicit Reader(RawMap map) : map_(std::move(map)) {}

  bool has(const std::string& key) const { return map_.count(key) != 0; }

  std::optional<double> number(const std::string& key) {
    const RawValue* v = take(key);
    if (!v) return std::nullopt;
    if (v->type != RawValue::Type::Number) throw ConfigError(key, "expected a number");
    const char* begin = v->text.c_str();
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(x)) {
      throw ConfigError(key, "expected a number, got '" + v->text + "'");
    }
    return x;
  }

  std::optional<std::uint64_t> integer(const std::string& key) {
    const RawValue* v = take(key);
    if (!v) return std::nullopt;
    if (v->type != RawValue::Type::Number) throw ConfigError(key, "expected an integer");
    const std::string& t = v->text;
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw ConfigError(key, "expected a non-negative integer, got '" + t + "'");
    }
    errno = 0;
    const unsigned long long x = std::strtoull(t.c_str(), nullptr, 10);
    if (errno == ERANGE) throw ConfigError(key, "integer out of range");
    return static_cast<std::uint64_t>(x);
  }

  std::optional<std::string> string(const std::string& key) {
    const RawValue* v = take(key);
    if (!v) return std::nullopt;
    if (v->type != RawValue::Type::String) throw ConfigError(key, "expected a quoted string");
    return v->text;
  }

  double require_number(const std::string& key) {
    auto v = number(key);
    if (!v) throw ConfigError(key, "missing required key");
    return *v;
  }

  std::string require_string(const std::string& key) {
    auto v = string(key);
    if (!v) throw ConfigError(key, "missing required key");
    return *v;
  }

  void reject_leftovers() const {
    for (const auto& [key, value] : map_) {
      if (!used_.count(key)) throw ConfigError(key, "unknown key");
    }
  }

 private:
  const RawValue* take(const std::string& key) {
    auto it = map_.find(key);
    if (it == map_.end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }

  RawMap map_;
  std::set<std::string> used_;
};

// Validators elsewhere report "key.path: reason"; keep that key for the error.
template <class Fn>
auto rekey(const std::string& fallback, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    if (colon != std::string::npos && valid_key(msg.substr(0, colon))) {
      throw ConfigError(msg.substr(0, colon), msg.substr(colon + 2));
    }
    throw ConfigError(fallback, msg);
  }
}

std::vector<Algo> parse_algos(const std::string& key, const std::string& text) {
  std::vector<Algo> algos;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    part = trim(part);
    try {
      const Algo a = parse_algo(part);
      if (std::find(algos.begin(), algos.end(), a) != algos.end()) {
        throw ConfigError(key, "algorithm listed twice: " + part);
      }
      algos.push_back(a);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(key, e.what());
    }
  }
  if (algos.empty()) throw ConfigError(key, "no algorithms listed");
  return algos;
}

}  // namespace

ConfigError::ConfigError(const std::string& key, const std::string& reason)
    : std::runtime_error(key + ": " + reason), key_(key) {}

std::string to_string(Algo algo) { return algo == Algo::Etc ? "etc" : "elim"; }

Algo parse_algo(const std::string& text) {
  if (text == "etc") return Algo::Etc;
  if (text == "elim") return Algo::Elim;
  throw std::invalid_argument("unknown algorithm '" + text + "' (expected etc or elim)");
}

ExperimentConfig parse_config(const std::string& text) {
  Reader r(tokenize(text));
  ExperimentConfig c;

  const double delta = r.require_number("scenario.delta");
  const double big_m = r.require_number("scenario.big_m");
  const std::string kind = r.require_string("noise.kind");
  NoiseKind noise_kind;
  double sigma = 0.0;
  if (kind == "uniform") {
    noise_kind = NoiseKind::UniformSymmetric;
    r.number("noise.sigma");  // accepted, unused by the uniform family
  } else if (kind == "truncated_gaussian") {
    noise_kind = NoiseKind::TruncatedGaussian;
    sigma = r.require_number("noise.sigma");
    if (!(sigma > 0.0)) throw ConfigError("noise.sigma", "must be > 0");
  } else {
    throw ConfigError("noise.kind", "expected \"uniform\" or \"truncated_gaussian\", got \"" + kind + "\"");
  }
  c.scenario = rekey("scenario", [&] { return Scenario::create(delta, big_m, noise_kind, sigma); });

  if (auto g = r.integer("envelope.grid")) {
    if (*g < 101) throw ConfigError("envelope.grid", "must be >= 101");
    c.envelope.grid_size = static_cast<std::size_t>(*g);
  }
  if (auto a = r.number("envelope.alpha_min")) {
    if (!(*a > 0.0 && *a < 1.0)) throw ConfigError("envelope.alpha_min", "must lie in (0, 1)");
    c.envelope.alpha_min = *a;
  }

  const std::string dc = r.require_string("utility.dc.kind");
  if (dc == "linear") {
    c.utility.dc = LinearDc{r.number("utility.dc.gamma").value_or(1.0)};
  } else if (dc == "ratio") {
    c.utility.dc = RatioDc{};
  } else {
    throw ConfigError("utility.dc.kind", "expected \"linear\" or \"ratio\", got \"" + dc + "\"");
  }
  const std::string ad = r.require_string("utility.ad.kind");
  if (ad == "weighted_sum") {
    c.utility.ad = WeightedSumAd{r.number("utility.ad.w_mse").value_or(1.0),
                                 r.number("utility.ad.w_pa").value_or(1.0)};
  } else if (ad == "product") {
    c.utility.ad = ProductAd{r.number("utility.ad.theta").value_or(1.0)};
  } else {
    throw ConfigError("utility.ad.kind",
                      "expected \"weighted_sum\" or \"product\", got \"" + ad + "\"");
  }
  rekey("utility", [&] { c.utility.validate(); });

  c.lipschitz.ell = r.number("lipschitz.ell");
  c.lipschitz.big_l = r.number("lipschitz.L");
  c.lipschitz.d = r.number("lipschitz.d");
  if (c.lipschitz.ell && !(*c.lipschitz.ell > 0.0)) throw ConfigError("lipschitz.ell", "must be > 0");
  if (c.lipschitz.big_l && !(*c.lipschitz.big_l > 0.0)) throw ConfigError("lipschitz.L", "must be > 0");
  if (c.lipschitz.d && !(*c.lipschitz.d > 0.0)) throw ConfigError("lipschitz.d", "must be > 0");
  if (auto res = r.integer("lipschitz.resolution")) {
    if (*res < 2) throw ConfigError("lipschitz.resolution", "must be >= 2");
    c.lipschitz_resolution = static_cast<std::size_t>(*res);
  }

  if (auto v = r.number("learner.a")) c.a = *v;
  if (auto v = r.number("learner.b")) c.b = *v;
  if (auto v = r.number("learner.delta")) c.delta = *v;
  if (auto v = r.number("learner.lambda")) c.lambda = *v;
  if (auto v = r.number("learner.budget_scale")) c.budget_scale = *v;
  if (!(c.a >= 2.0)) throw ConfigError("learner.a", "must be >= 2");
  if (!(c.b > c.a)) throw ConfigError("learner.b", "must exceed learner.a");
  if (!(c.delta > 0.0 && c.delta < 1.0)) throw ConfigError("learner.delta", "must lie in (0, 1)");
  if (!(c.lambda > 0.0)) throw ConfigError("learner.lambda", "must be > 0");
  if (!(c.budget_scale > 0.0 && c.budget_scale <= 1.0)) {
    throw ConfigError("learner.budget_scale", "must lie in (0, 1]");
  }

  const std::string mode = r.string("env.mode").value_or("bernoulli");
  const auto spr = r.integer("env.samples_per_round");
  if (mode == "bernoulli") {
    if (spr) throw ConfigError("env.samples_per_round", "only valid with env.mode = \"physical\"");
    c.env = BernoulliMode{};
  } else if (mode == "physical") {
    PhysicalMode p;
    if (spr) {
      if (*spr < 1) throw ConfigError("env.samples_per_round", "must be >= 1");
      p.samples_per_round = static_cast<std::size_t>(*spr);
    }
    c.env = p;
  } else {
    throw ConfigError("env.mode", "expected \"bernoulli\" or \"physical\", got \"" + mode + "\"");
  }

  if (auto t = r.integer("experiment.trials")) {
    if (*t < 1) throw ConfigError("experiment.trials", "must be >= 1");
    c.trials = static_cast<std::size_t>(*t);
  }
  if (auto s = r.integer("experiment.seed")) c.base_seed = *s;
  if (auto a = r.string("experiment.algos")) c.algos = parse_algos("experiment.algos", *a);
  if (auto p = r.integer("experiment.curve_points")) {
    if (*p < 2) throw ConfigError("experiment.curve_points", "must be >= 2");
    c.curve_points = static_cast<std::size_t>(*p);
  }

  r.reject_leftovers();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot read config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string canonical_config(const ExperimentConfig& c) {
  std::map<std::string, std::string> kv;
  auto num = [](double x) { return format_real(x); };
  kv["scenario.delta"] = num(c.scenario.delta);
  kv["scenario.big_m"] = num(c.scenario.big_m);
  kv["noise.kind"] = "\"" + to_string(c.scenario.noise.kind()) + "\"";
  if (c.scenario.noise.kind() == NoiseKind::TruncatedGaussian) {
    kv["noise.sigma"] = num(c.scenario.noise.sigma());
  }
  kv["envelope.grid"] = std::to_string(c.envelope.grid_size);
  kv["envelope.alpha_min"] = num(c.envelope.alpha_min);
  if (const auto* u = std::get_if<LinearDc>(&c.utility.dc)) {
    kv["utility.dc.kind"] = "\"linear\"";
    kv["utility.dc.gamma"] = num(u->gamma);
  } else {
    kv["utility.dc.kind"] = "\"ratio\"";
  }
  if (const auto* u = std::get_if<WeightedSumAd>(&c.utility.ad)) {
    kv["utility.ad.kind"] = "\"weighted_sum\"";
    kv["utility.ad.w_mse"] = num(u->w_mse);
    kv["utility.ad.w_pa"] = num(u->w_pa);
  } else {
    kv["utility.ad.kind"] = "\"product\"";
    kv["utility.ad.theta"] = num(std::get<ProductAd>(c.utility.ad).theta);
  }
  if (c.lipschitz.ell) kv["lipschitz.ell"] = num(*c.lipschitz.ell);
  if (c.lipschitz.big_l) kv["lipschitz.L"] = num(*c.lipschitz.big_l);
  if (c.lipschitz.d) kv["lipschitz.d"] = num(*c.lipschitz.d);
  kv["lipschitz.resolution"] = std::to_string(c.lipschitz_resolution);
  kv["learner.a"] = num(c.a);
  kv["learner.b"] = num(c.b);
  kv["learner.delta"] = num(c.delta);
  kv["learner.lambda"] = num(c.lambda);
  kv["learner.budget_scale"] = num(c.budget_scale);
  if (const auto* p = std::get_if<PhysicalMode>(&c.env)) {
    kv["env.mode"] = "\"physical\"";
    kv["env.samples_per_round"] = std::to_string(p->samples_per_round);
  } else {
    kv["env.mode"] = "\"bernoulli\"";
  }
  kv["experiment.trials"] = std::to_string(c.trials);
  kv["experiment.seed"] = std::to_string(c.base_seed);
  std::string algos;
  for (Algo a : c.algos) algos += (algos.empty() ? "" : ",") + to_string(a);
  kv["experiment.algos"] = "\"" + algos + "\"";
  kv["experiment.curve_points"] = std::to_string(c.curve_points);

  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const ExperimentConfig& config) {
  return fnv1a_hex(canonical_config(config));
}

}  // namespace goc
