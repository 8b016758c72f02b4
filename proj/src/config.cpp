#include "nagflow/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace nagflow {

namespace {

struct Item {
  std::string value;
  int line = 0;
  bool used = false;
};

using Section = std::map<std::string, Item>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

const std::set<std::string> kSections = {"experiment", "problem", "scheme",
                                         "flow", "spectral", "schedule", "compare"};

const std::map<std::string, std::set<std::string>> kKeys = {
    {"experiment", {"kind", "seed", "out", "prefix", "verbose"}},
    {"problem", {"catalog", "dim", "kappa", "mu0", "file", "l1_weight"}},
    {"scheme",
     {"name", "gamma0", "alpha", "max_iter", "gap_tol", "x0", "v0", "restart",
      "period", "sigma", "gamma_cycle"}},
    {"flow", {"system", "time", "tol", "rescale", "b", "gamma0"}},
    {"spectral", {"analysis", "alpha", "alpha_count", "steps"}},
    {"schedule", {"rule", "gamma0", "mu", "lip", "steps"}},
    {"compare", {"schemes", "threads"}},
};

class Fields {
 public:
  explicit Fields(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    std::string section;
    while (std::getline(in, raw)) {
      ++line;
      std::string s = trim(raw);
      if (s.empty() || s[0] == '#') continue;
      if (s.front() == '[') {
        if (s.back() != ']') fail(line, "unterminated section header");
        section = trim(s.substr(1, s.size() - 2));
        if (!kSections.count(section)) fail(line, "unknown section [" + section + "]");
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos) fail(line, "expected key = value");
      if (section.empty()) fail(line, "key outside of any [section]");
      const std::string key = trim(s.substr(0, eq));
      const std::string value = trim(s.substr(eq + 1));
      if (key.empty()) fail(line, "empty key");
      if (!kKeys.at(section).count(key)) {
        fail(line, "unknown key '" + key + "' in [" + section + "]");
      }
      auto& sec = sections_[section];
      auto it = sec.find(key);
      if (it != sec.end()) {
        fail(line, "duplicate key '" + key + "' (first at line " +
                       std::to_string(it->second.line) + ")");
      }
      sec[key] = Item{value, line, false};
    }
  }

  std::optional<Item*> find(const std::string& section, const std::string& key) {
    auto s = sections_.find(section);
    if (s == sections_.end()) return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    k->second.used = true;
    return &k->second;
  }

  std::string str(const std::string& section, const std::string& key,
                  const std::string& fallback) {
    auto item = find(section, key);
    return item ? (*item)->value : fallback;
  }

  double num(const std::string& section, const std::string& key, double fallback) {
    auto item = find(section, key);
    if (!item) return fallback;
    const std::string& v = (*item)->value;
    try {
      std::size_t pos = 0;
      const double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("");
      return x;
    } catch (const std::exception&) {
      fail((*item)->line, "field '" + key + "': expected a number, got '" + v + "'");
    }
  }

  int integer(const std::string& section, const std::string& key, int fallback) {
    const double x = num(section, key, static_cast<double>(fallback));
    const int i = static_cast<int>(x);
    if (static_cast<double>(i) != x) {
      auto item = find(section, key);
      fail((*item)->line, "field '" + key + "': expected an integer");
    }
    return i;
  }

  std::uint64_t u64(const std::string& section, const std::string& key,
                    std::uint64_t fallback) {
    auto item = find(section, key);
    if (!item) return fallback;
    const std::string& v = (*item)->value;
    std::uint64_t x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size()) {
      fail((*item)->line, "field '" + key + "': expected an unsigned integer");
    }
    return x;
  }

  bool boolean(const std::string& section, const std::string& key, bool fallback) {
    auto item = find(section, key);
    if (!item) return fallback;
    const std::string& v = (*item)->value;
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail((*item)->line, "field '" + key + "': expected true/false");
  }

  void enumerated(const std::string& section, const std::string& key,
                  const std::set<std::string>& allowed, std::string* out) {
    auto item = find(section, key);
    if (!item) return;
    const std::string& v = (*item)->value;
    if (!allowed.count(v)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail((*item)->line, "field '" + key + "': '" + v + "' is not one of: " + list);
    }
    *out = v;
  }

 private:
  std::map<std::string, Section> sections_;
};

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  Fields f(text);
  ExperimentConfig c;

  std::string kind = "run";
  f.enumerated("experiment", "kind", {"run", "spectral", "flow", "compare", "schedule"},
               &kind);
  if (kind == "run") c.kind = ExperimentConfig::Kind::run;
  else if (kind == "spectral") c.kind = ExperimentConfig::Kind::spectral;
  else if (kind == "flow") c.kind = ExperimentConfig::Kind::flow;
  else if (kind == "compare") c.kind = ExperimentConfig::Kind::compare;
  else c.kind = ExperimentConfig::Kind::schedule;
  c.seed = f.u64("experiment", "seed", 0);
  c.out_dir = f.str("experiment", "out", ".");
  c.prefix = f.str("experiment", "prefix", kind);
  c.verbose = f.boolean("experiment", "verbose", false);

  f.enumerated("problem", "catalog",
               {"quadratic_identity", "quadratic_diag", "quadratic_random",
                "quadratic_file", "logistic_1d", "logistic_2d", "lasso_diag5",
                "lasso_flat5"},
               &c.problem_name);
  if (c.problem_name.empty()) c.problem_name = "quadratic_diag";
  c.dim = f.integer("problem", "dim", 2);
  c.kappa = f.num("problem", "kappa", 10.0);
  c.zero_smallest = f.boolean("problem", "mu0", false);
  c.matrix_file = f.str("problem", "file", "");
  c.l1_weight = f.num("problem", "l1_weight", 0.0);

  f.enumerated("scheme", "name",
               {"gd", "implicit", "gs", "gs_corrected", "nag", "oag1", "oag2", "fista"},
               &c.scheme);
  const std::string g0 = f.str("scheme", "gamma0", "");
  if (g0 == "mu" || g0 == "lip") {
    c.gamma0_word = g0;
  } else if (!g0.empty()) {
    try {
      c.gamma0 = std::stod(g0);
    } catch (const std::exception&) {
      throw ConfigError("field 'gamma0': expected a number, 'mu' or 'lip', got '" + g0 + "'");
    }
  }
  c.alpha = f.num("scheme", "alpha", -1.0);
  c.max_iter = f.integer("scheme", "max_iter", 100);
  c.gap_tol = f.num("scheme", "gap_tol", 0.0);
  c.x0 = f.str("scheme", "x0", "ones");
  c.v0 = f.str("scheme", "v0", "x0");
  f.enumerated("scheme", "restart", {"none", "fixed", "adaptive"}, &c.restart);
  c.restart_period = f.integer("scheme", "period", 0);
  c.restart_sigma = f.num("scheme", "sigma", 0.0);
  c.gamma_cycle = f.integer("scheme", "gamma_cycle", 0);

  f.enumerated("flow", "system", {"nag", "rescaled", "gradient"}, &c.flow_system);
  c.flow_time = f.num("flow", "time", 10.0);
  c.flow_tol = f.num("flow", "tol", 1e-9);
  f.enumerated("flow", "rescale", {"rational", "closed_form"}, &c.rescale_kind);
  c.rescale_b = f.num("flow", "b", 2.0);
  const double flow_gamma0 = f.num("flow", "gamma0", -1.0);
  if (flow_gamma0 > 0.0 && c.gamma0 < 0.0 && c.gamma0_word.empty()) c.gamma0 = flow_gamma0;

  f.enumerated("spectral", "analysis", {"radius", "condition", "scaled", "gd_rates"},
               &c.analysis);
  c.spectral_alpha = f.num("spectral", "alpha", -1.0);
  c.alpha_count = f.integer("spectral", "alpha_count", 1);
  c.spectral_steps = f.integer("spectral", "steps", 100);

  f.enumerated("schedule", "rule", {"nag", "oag1", "mu0"}, &c.schedule_rule);
  c.schedule_gamma0 = f.num("schedule", "gamma0", 1.0);
  c.schedule_mu = f.num("schedule", "mu", 0.0);
  c.schedule_lip = f.num("schedule", "lip", 1.0);
  c.schedule_steps = f.integer("schedule", "steps", 100);

  const std::string schemes = f.str("compare", "schemes", "");
  if (!schemes.empty()) {
    std::istringstream ss(schemes);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trim(tok);
      if (!tok.empty()) c.compare_schemes.push_back(tok);
    }
  }
  c.threads = f.integer("compare", "threads", 2);

  // Semantic checks.
  if (c.kind == ExperimentConfig::Kind::compare && c.compare_schemes.empty()) {
    throw ConfigError("field 'schemes': a compare experiment needs at least one scheme");
  }
  if (c.problem_name == "quadratic_file" && c.matrix_file.empty()) {
    throw ConfigError("field 'file': catalog quadratic_file needs a matrix path");
  }
  if (c.max_iter < 0) throw ConfigError("field 'max_iter': must be >= 0");
  if (c.schedule_steps < 1) throw ConfigError("field 'steps': must be >= 1");
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace nagflow
