#include "driftk/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace driftk {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

struct RawValue {
  std::string text;
  int line = 0;
};

using RawSection = std::map<std::string, RawValue>;
using RawConfig = std::map<std::string, RawSection>;

const char* kSections[] = {"scenario", "bound", "policy", "drift",
                           "cost",     "cv",    "run"};

bool known_section(const std::string& name) {
  for (const char* s : kSections) {
    if (name == s) return true;
  }
  return false;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  std::ostringstream os;
  os << "invalid config (" << origin;
  if (line > 0) os << ":" << line;
  os << "): " << what;
  throw ConfigError(os.str());
}

RawConfig parse_raw(const std::string& text, const std::string& origin) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail(origin, lineno, "unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (!known_section(section)) {
        fail(origin, lineno, "[" + section + "]: unknown section");
      }
      raw[section]; // ensure the section exists even if empty
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      fail(origin, lineno, "expected `key = value`, got \"" + t + "\"");
    }
    if (section.empty()) {
      fail(origin, lineno, "key before any [section] header");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) fail(origin, lineno, "[" + section + "]: empty key");
    auto [it, inserted] = raw[section].emplace(key, RawValue{value, lineno});
    if (!inserted) {
      fail(origin, lineno,
           "[" + section + "] " + key + ": duplicate key (first at line " +
               std::to_string(it->second.line) + ")");
    }
  }
  return raw;
}

// Pulls typed values out of one raw section and remembers which keys were
// consumed so leftovers can be reported with their field path.
class SectionReader {
 public:
  SectionReader(const RawConfig& raw, std::string section, std::string origin)
      : section_(std::move(section)), origin_(std::move(origin)) {
    auto it = raw.find(section_);
    if (it != raw.end()) values_ = &it->second;
  }

  void get(const char* key, double& out) {
    const RawValue* rv = find(key);
    if (!rv) return;
    out = parse_double(key, *rv);
  }

  void get(const char* key, int& out) {
    const RawValue* rv = find(key);
    if (!rv) return;
    out = static_cast<int>(parse_long(key, *rv));
  }

  void get(const char* key, long& out) {
    const RawValue* rv = find(key);
    if (!rv) return;
    out = parse_long(key, *rv);
  }

  void get(const char* key, std::uint64_t& out) {
    const RawValue* rv = find(key);
    if (!rv) return;
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(rv->text.c_str(), &end, 10);
    if (errno != 0 || end == rv->text.c_str() || *end != '\0' ||
        rv->text.front() == '-') {
      bad(key, *rv, "expected an unsigned integer");
    }
    out = static_cast<std::uint64_t>(v);
  }

  void get(const char* key, bool& out) {
    const RawValue* rv = find(key);
    if (!rv) return;
    if (rv->text == "true" || rv->text == "1") {
      out = true;
    } else if (rv->text == "false" || rv->text == "0") {
      out = false;
    } else {
      bad(key, *rv, "expected true or false");
    }
  }

  void get(const char* key, std::string& out) {
    const RawValue* rv = find(key);
    if (!rv) return;
    out = rv->text;
  }

  void get(const char* key, std::vector<double>& out) {
    const RawValue* rv = find(key);
    if (!rv) return;
    out.clear();
    if (trim(rv->text).empty()) return;
    std::istringstream in(rv->text);
    std::string item;
    while (std::getline(in, item, ',')) {
      RawValue one{trim(item), rv->line};
      if (one.text.empty()) bad(key, *rv, "empty list entry");
      out.push_back(parse_double(key, one));
    }
  }

  // Call after all get()s: rejects keys nothing consumed.
  void finish() const {
    if (!values_) return;
    for (const auto& [key, rv] : *values_) {
      if (std::find(consumed_.begin(), consumed_.end(), key) == consumed_.end()) {
        fail(origin_, rv.line, "[" + section_ + "] " + key + ": unknown key");
      }
    }
  }

 private:
  const RawValue* find(const char* key) {
    consumed_.push_back(key);
    if (!values_) return nullptr;
    auto it = values_->find(key);
    return it == values_->end() ? nullptr : &it->second;
  }

  double parse_double(const char* key, const RawValue& rv) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(rv.text.c_str(), &end);
    if (errno != 0 || end == rv.text.c_str() || *end != '\0' || !std::isfinite(v)) {
      bad(key, rv, "expected a finite number");
    }
    return v;
  }

  long parse_long(const char* key, const RawValue& rv) {
    errno = 0;
    char* end = nullptr;
    long v = std::strtol(rv.text.c_str(), &end, 10);
    if (errno != 0 || end == rv.text.c_str() || *end != '\0') {
      bad(key, rv, "expected an integer");
    }
    return v;
  }

  [[noreturn]] void bad(const char* key, const RawValue& rv, const std::string& what) {
    fail(origin_, rv.line, "[" + section_ + "] " + key + ": " + what +
                               ", got \"" + rv.text + "\"");
  }

  const RawSection* values_ = nullptr;
  std::string section_;
  std::string origin_;
  std::vector<std::string> consumed_;
};

[[noreturn]] void bad_field(const std::string& section, const std::string& key,
                            const std::string& what) {
  throw ConfigError("invalid config: [" + section + "] " + key + ": " + what);
}

void check_enum(const std::string& section, const std::string& key,
                const std::string& value, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (value == a) return;
  }
  std::string list;
  for (const char* a : allowed) {
    if (!list.empty()) list += ", ";
    list += a;
  }
  bad_field(section, key, "must be one of {" + list + "}, got \"" + value + "\"");
}

void validate(const Config& cfg) {
  const auto& sc = cfg.scenario;
  check_enum("scenario", "kind", sc.kind,
             {"synth-regression", "synth-classification", "csv-stream"});
  check_enum("scenario", "drift_law", sc.drift_law, {"constant", "uniform"});
  if (sc.d < 1) bad_field("scenario", "d", "must be >= 1");
  if (sc.kind == "synth-classification" && sc.d < 2) {
    bad_field("scenario", "d", "must be >= 2 for synth-classification");
  }
  if (!(sc.radius > 0.0)) bad_field("scenario", "radius", "must be > 0");
  if (sc.rho < 0.0) bad_field("scenario", "rho", "must be >= 0");
  if (!(sc.sigma_x2 > 0.0)) bad_field("scenario", "sigma_x2", "must be > 0");
  if (sc.lambda < 0.0) bad_field("scenario", "lambda", "must be >= 0");
  if (!(sc.r_norm > 0.0)) bad_field("scenario", "r_norm", "must be > 0");
  if (!(sc.psd_margin > 0.0)) bad_field("scenario", "psd_margin", "must be > 0");
  if (!(sc.theta >= 0.0)) bad_field("scenario", "theta", "must be >= 0");
  if (sc.noise_var < 0.0) bad_field("scenario", "noise_var", "must be >= 0");
  if (sc.prior_pos <= 0.0 || sc.prior_pos >= 1.0) {
    bad_field("scenario", "prior_pos", "must lie in (0, 1)");
  }
  if (sc.kind == "csv-stream" && sc.csv_path.empty()) {
    bad_field("scenario", "csv_path", "required for csv-stream");
  }
  if (sc.t_test < 1) bad_field("scenario", "t_test", "must be >= 1");

  const auto& bd = cfg.bound;
  if (bd.k_cap < 1) bad_field("bound", "k_cap", "must be >= 1");

  const auto& po = cfg.policy;
  check_enum("policy", "kind", po.kind,
             {"known-rho", "no-update", "update-past", "up-front", "periodic",
              "cost-plan"});
  if (!(po.eps > 0.0)) bad_field("policy", "eps", "must be > 0");
  if (po.delta_t < 1) bad_field("policy", "delta_t", "must be >= 1");
  if (po.total_samples < 0) bad_field("policy", "total_samples", "must be >= 0");
  if ((po.kind == "up-front" || po.kind == "periodic") && po.total_samples == 0) {
    bad_field("policy", "total_samples", "required for baseline policies");
  }

  const auto& dr = cfg.drift;
  check_enum("drift", "mode", dr.mode, {"average", "windowed"});
  if (dr.window < 1) bad_field("drift", "window", "must be >= 1");
  if (dr.c_t < 0.0) bad_field("drift", "c_t", "must be >= 0");
  if (dr.c_c < 0.0) bad_field("drift", "c_c", "must be >= 0");

  const auto& co = cfg.cost;
  check_enum("cost", "phi", co.phi, {"mean", "max", "max-increasing-run"});
  if (co.p0 < 0.0) bad_field("cost", "p0", "must be >= 0");
  if (!(co.p1 > 0.0)) bad_field("cost", "p1", "must be > 0");
  if (!(co.k0 > 0.0 && co.k0 < 1.0)) bad_field("cost", "k0", "must lie in (0, 1)");
  if (co.budget < 0.0) bad_field("cost", "budget", "must be >= 0");
  if (po.kind == "cost-plan" && !(co.budget > 0.0)) {
    bad_field("cost", "budget", "required for the cost-plan policy");
  }
  if (co.solver_iters < 1) bad_field("cost", "solver_iters", "must be >= 1");
  if (!(co.tau > 0.0)) bad_field("cost", "tau", "must be > 0");
  if (co.rho_plan_init < 0.0) bad_field("cost", "rho_plan_init", "must be >= 0");

  const auto& cv = cfg.cv;
  if (!cv.lambdas.empty()) {
    if (cv.folds < 2) bad_field("cv", "folds", "must be >= 2");
    for (double l : cv.lambdas) {
      if (l < 0.0) bad_field("cv", "lambdas", "entries must be >= 0");
    }
  }

  const auto& rn = cfg.run;
  check_enum("run", "compare", rn.compare, {"none", "up-front", "cost"});
  if (rn.horizon < 1) bad_field("run", "horizon", "must be >= 1");
  if (rn.runs < 1) bad_field("run", "runs", "must be >= 1");
}

PolicyKind policy_kind_from(const std::string& s) {
  if (s == "known-rho") return PolicyKind::known_rho;
  if (s == "no-update") return PolicyKind::no_update;
  if (s == "update-past") return PolicyKind::update_past;
  if (s == "up-front") return PolicyKind::up_front;
  if (s == "periodic") return PolicyKind::periodic;
  return PolicyKind::cost_plan;
}

PhiKind phi_kind_from(const std::string& s) {
  if (s == "mean") return PhiKind::mean;
  if (s == "max") return PhiKind::max;
  return PhiKind::max_increasing_run;
}

} // namespace

Config parse_config_text(const std::string& text, const std::string& origin) {
  RawConfig raw = parse_raw(text, origin);

  Config cfg;
  cfg.name = origin;

  SectionReader sc(raw, "scenario", origin);
  sc.get("kind", cfg.scenario.kind);
  sc.get("d", cfg.scenario.d);
  sc.get("radius", cfg.scenario.radius);
  sc.get("rho", cfg.scenario.rho);
  sc.get("sigma_x2", cfg.scenario.sigma_x2);
  sc.get("lambda", cfg.scenario.lambda);
  sc.get("r_norm", cfg.scenario.r_norm);
  sc.get("psd_margin", cfg.scenario.psd_margin);
  sc.get("drift_law", cfg.scenario.drift_law);
  sc.get("theta", cfg.scenario.theta);
  sc.get("noise_var", cfg.scenario.noise_var);
  sc.get("prior_pos", cfg.scenario.prior_pos);
  sc.get("csv_path", cfg.scenario.csv_path);
  sc.get("t_test", cfg.scenario.t_test);
  sc.get("sgd_c", cfg.scenario.sgd_c);
  sc.get("sgd_k0", cfg.scenario.sgd_k0);
  sc.finish();

  SectionReader bd(raw, "bound", origin);
  bd.get("m", cfg.bound.m);
  bd.get("M", cfg.bound.big_m);
  bd.get("G", cfg.bound.g);
  bd.get("A", cfg.bound.a);
  bd.get("B", cfg.bound.b);
  bd.get("sigma", cfg.bound.sigma);
  bd.get("M_noise", cfg.bound.m_noise);
  bd.get("c_alpha", cfg.bound.c_alpha);
  bd.get("c_beta", cfg.bound.c_beta);
  bd.get("k_cap", cfg.bound.k_cap);
  bd.finish();

  SectionReader po(raw, "policy", origin);
  po.get("kind", cfg.policy.kind);
  po.get("eps", cfg.policy.eps);
  po.get("rho_known", cfg.policy.rho_known);
  po.get("delta_t", cfg.policy.delta_t);
  po.get("total_samples", cfg.policy.total_samples);
  po.finish();

  SectionReader dr(raw, "drift", origin);
  dr.get("mode", cfg.drift.mode);
  dr.get("window", cfg.drift.window);
  dr.get("c_t", cfg.drift.c_t);
  dr.get("c_c", cfg.drift.c_c);
  dr.get("use_dn", cfg.drift.use_dn);
  dr.finish();

  SectionReader co(raw, "cost", origin);
  co.get("p0", cfg.cost.p0);
  co.get("p1", cfg.cost.p1);
  co.get("k0", cfg.cost.k0);
  co.get("budget", cfg.cost.budget);
  co.get("phi", cfg.cost.phi);
  co.get("solver_iters", cfg.cost.solver_iters);
  co.get("tau", cfg.cost.tau);
  co.get("rho_plan_init", cfg.cost.rho_plan_init);
  co.finish();

  SectionReader cv(raw, "cv", origin);
  cv.get("lambdas", cfg.cv.lambdas);
  cv.get("folds", cfg.cv.folds);
  cv.finish();

  SectionReader rn(raw, "run", origin);
  rn.get("horizon", cfg.run.horizon);
  rn.get("runs", cfg.run.runs);
  rn.get("seed", cfg.run.seed);
  rn.get("compare", cfg.run.compare);
  rn.finish();

  validate(cfg);
  return cfg;
}

Config parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("invalid config (" + path + "): cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::unique_ptr<ResolvedConfig> resolve(const Config& input) {
  auto rc = std::make_unique<ResolvedConfig>();
  rc->resolved = input;
  Config& cfg = rc->resolved;
  const auto& sc = cfg.scenario;

  // Scenario and true drift. csv-stream has no ground-truth drift rate.
  double true_rho = -1.0;
  if (sc.kind == "synth-regression") {
    RegressionScenarioConfig r;
    r.d = sc.d;
    r.rho = sc.rho;
    r.sigma_x2 = sc.sigma_x2;
    r.lambda = sc.lambda;
    r.r_norm = sc.r_norm;
    r.psd_margin = sc.psd_margin;
    r.uniform_drift = (sc.drift_law == "uniform");
    rc->scenario = std::make_unique<RegressionScenario>(r);
    rc->loss = std::make_unique<QuadraticLoss>(sc.d, sc.lambda);
    true_rho = sc.rho;
  } else if (sc.kind == "synth-classification") {
    ClassificationScenarioConfig c;
    c.d = sc.d;
    c.theta = sc.theta;
    c.noise_var = sc.noise_var;
    c.prior_pos = sc.prior_pos;
    rc->scenario = std::make_unique<ClassificationScenario>(c);
    rc->loss = std::make_unique<SmoothedHingeLoss>(sc.d, sc.lambda);
    // The class means rotate by theta per step and the distribution is
    // rotationally equivariant, so the minimizer rotates with them: drift is
    // ||w*|| * chord(theta), with ||w*|| <= min(radius, 1/lambda) since the
    // risk gradient at the origin has norm at most ||mu|| = 1.
    double w_norm = sc.radius;
    if (sc.lambda > 0.0) w_norm = std::min(w_norm, 1.0 / sc.lambda);
    true_rho = 2.0 * std::sin(sc.theta / 2.0) * w_norm;
  } else {
    auto csv = std::make_unique<CsvScenario>(sc.csv_path);
    // The stream's header fixes the dimension; the config must agree.
    if (csv->dim() != sc.d) {
      bad_field("scenario", "d",
                "csv file has d=" + std::to_string(csv->dim()) + ", config says " +
                    std::to_string(sc.d));
    }
    if (cfg.run.horizon > csv->steps()) {
      bad_field("run", "horizon",
                "csv file covers " + std::to_string(csv->steps()) + " steps");
    }
    if (csv->is_classification()) {
      rc->loss = std::make_unique<SmoothedHingeLoss>(sc.d, sc.lambda);
    } else {
      rc->loss = std::make_unique<QuadraticLoss>(sc.d, sc.lambda);
    }
    rc->scenario = std::move(csv);
  }

  // Convexity constants, derived from the scenario when not pinned.
  ConvexityConstants cc;
  auto& bd = cfg.bound;
  if (bd.m < 0.0) {
    if (sc.kind == "synth-regression") {
      bd.m = sc.sigma_x2 + sc.lambda;
    } else if (sc.kind == "synth-classification") {
      bd.m = sc.lambda;
    } else {
      bad_field("bound", "m", "required for csv-stream");
    }
  }
  if (bd.big_m < 0.0) {
    if (sc.kind == "synth-regression") {
      bd.big_m = sc.sigma_x2 + sc.lambda;
    } else if (sc.kind == "synth-classification") {
      bd.big_m = 1.0 + sc.noise_var * sc.d + sc.lambda;
    } else {
      bad_field("bound", "M", "required for csv-stream");
    }
  }
  if (!(bd.m > 0.0)) bad_field("bound", "m", "must resolve to > 0");
  if (bd.big_m < bd.m) bad_field("bound", "M", "must resolve to >= m");
  if (bd.c_alpha < 0.0) {
    if (bd.g < 0.0) bad_field("bound", "c_alpha", "set c_alpha or G");
    bd.c_alpha = bd.g * bd.g / bd.m;
  }
  if (bd.c_beta < 0.0) {
    if (bd.a < 0.0) bad_field("bound", "c_beta", "set c_beta or A");
    bd.c_beta = bd.a / (2.0 * bd.m);
  }
  if (bd.g < 0.0) bd.g = std::sqrt(bd.c_alpha * bd.m);
  if (bd.a < 0.0) bd.a = 2.0 * bd.m * bd.c_beta;
  if (bd.b < 0.0) bd.b = 0.0;
  if (bd.sigma < 0.0) bd.sigma = 0.0;
  if (bd.m_noise < 0.0) bd.m_noise = 0.0;
  cc.m = bd.m;
  cc.M = bd.big_m;
  cc.G = bd.g;
  cc.A = bd.a;
  cc.B = bd.b;
  cc.sigma = bd.sigma;
  cc.M_noise = bd.m_noise;
  cc.validate();

  // Policy: resolve the known drift rate from the scenario when available.
  auto& po = cfg.policy;
  if (po.rho_known < 0.0) {
    if (true_rho >= 0.0) {
      po.rho_known = true_rho;
    } else if (po.kind == "known-rho") {
      bad_field("policy", "rho_known", "required for known-rho on csv-stream");
    } else {
      po.rho_known = 0.0;
    }
  }

  // SGD step sizes: eta_i = c / (i + k0) with c = 1/m and the first step
  // clamped below 1/M unless overridden.
  auto& s = cfg.scenario;
  if (s.sgd_c < 0.0) s.sgd_c = 1.0 / cc.m;
  if (s.sgd_k0 < 0.0) s.sgd_k0 = std::max(1.0, std::ceil(s.sgd_c * cc.M));

  RunSetup& su = rc->setup;
  su.scenario = rc->scenario.get();
  su.loss = rc->loss.get();
  su.bm.constants = cc;
  su.bm.c_alpha = bd.c_alpha;
  su.bm.c_beta = bd.c_beta;
  su.bm.k_cap = bd.k_cap;
  su.policy.kind = policy_kind_from(po.kind);
  su.policy.eps = po.eps;
  su.policy.rho_known = po.rho_known;
  su.policy.delta_t = po.delta_t;
  su.policy.total_samples = po.total_samples;
  su.drift.mode = (cfg.drift.mode == "windowed") ? DriftMode::windowed
                                                 : DriftMode::average;
  su.drift.window = cfg.drift.window;
  su.drift.c_t = cfg.drift.c_t;
  su.drift.c_c = cfg.drift.c_c;
  su.drift.use_dn = cfg.drift.use_dn;
  su.sgd.c = s.sgd_c;
  su.sgd.k0 = s.sgd_k0;
  su.cost.p0 = cfg.cost.p0;
  su.cost.p1 = cfg.cost.p1;
  su.cost.k0 = cfg.cost.k0;
  su.budget = cfg.cost.budget;
  su.phi = phi_kind_from(cfg.cost.phi);
  su.solver.iterations = cfg.cost.solver_iters;
  su.solver.tau = cfg.cost.tau;
  su.rho_plan_init = cfg.cost.rho_plan_init;
  su.radius = sc.radius;
  su.horizon = cfg.run.horizon;
  su.t_test = sc.t_test;
  if (!cfg.cv.lambdas.empty()) {
    rc->cv.lambdas = cfg.cv.lambdas;
    rc->cv.folds = cfg.cv.folds;
    su.cv = &rc->cv;
  }
  return rc;
}

std::string config_to_json(const Config& cfg) {
  nlohmann::ordered_json j;
  j["name"] = cfg.name;
  auto& sc = j["scenario"];
  sc["kind"] = cfg.scenario.kind;
  sc["d"] = cfg.scenario.d;
  sc["radius"] = cfg.scenario.radius;
  sc["rho"] = cfg.scenario.rho;
  sc["sigma_x2"] = cfg.scenario.sigma_x2;
  sc["lambda"] = cfg.scenario.lambda;
  sc["r_norm"] = cfg.scenario.r_norm;
  sc["psd_margin"] = cfg.scenario.psd_margin;
  sc["drift_law"] = cfg.scenario.drift_law;
  sc["theta"] = cfg.scenario.theta;
  sc["noise_var"] = cfg.scenario.noise_var;
  sc["prior_pos"] = cfg.scenario.prior_pos;
  sc["csv_path"] = cfg.scenario.csv_path;
  sc["t_test"] = cfg.scenario.t_test;
  sc["sgd_c"] = cfg.scenario.sgd_c;
  sc["sgd_k0"] = cfg.scenario.sgd_k0;
  auto& bd = j["bound"];
  bd["m"] = cfg.bound.m;
  bd["M"] = cfg.bound.big_m;
  bd["G"] = cfg.bound.g;
  bd["A"] = cfg.bound.a;
  bd["B"] = cfg.bound.b;
  bd["sigma"] = cfg.bound.sigma;
  bd["M_noise"] = cfg.bound.m_noise;
  bd["c_alpha"] = cfg.bound.c_alpha;
  bd["c_beta"] = cfg.bound.c_beta;
  bd["k_cap"] = cfg.bound.k_cap;
  auto& po = j["policy"];
  po["kind"] = cfg.policy.kind;
  po["eps"] = cfg.policy.eps;
  po["rho_known"] = cfg.policy.rho_known;
  po["delta_t"] = cfg.policy.delta_t;
  po["total_samples"] = cfg.policy.total_samples;
  auto& dr = j["drift"];
  dr["mode"] = cfg.drift.mode;
  dr["window"] = cfg.drift.window;
  dr["c_t"] = cfg.drift.c_t;
  dr["c_c"] = cfg.drift.c_c;
  dr["use_dn"] = cfg.drift.use_dn;
  auto& co = j["cost"];
  co["p0"] = cfg.cost.p0;
  co["p1"] = cfg.cost.p1;
  co["k0"] = cfg.cost.k0;
  co["budget"] = cfg.cost.budget;
  co["phi"] = cfg.cost.phi;
  co["solver_iters"] = cfg.cost.solver_iters;
  co["tau"] = cfg.cost.tau;
  co["rho_plan_init"] = cfg.cost.rho_plan_init;
  auto& cv = j["cv"];
  cv["lambdas"] = cfg.cv.lambdas;
  cv["folds"] = cfg.cv.folds;
  auto& rn = j["run"];
  rn["horizon"] = cfg.run.horizon;
  rn["runs"] = cfg.run.runs;
  rn["seed"] = cfg.run.seed;
  rn["compare"] = cfg.run.compare;
  return j.dump(2);
}

} // namespace driftk
