#include "nullwave/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "nullwave/error.hpp"

namespace nullwave {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> kRunKeys = {
    {"grid", {"h", "u_max", "v_max", "V0", "L_max"}},
    {"phi", {"amplitude", "support", "modes"}},
    {"psi", {"amplitude", "support", "modes"}},
    {"physics", {"sources", "corrector_passes"}},
    {"analysis",
     {"delta", "delta_ell", "report_times", "report_log", "rows", "rows_log", "hyperboloid", "fit_phi",
      "fit_dphi", "residual_stride", "phi_limit"}},
    {"run", {"threads", "seed", "out"}},
};

const std::set<std::string> kSweepKeys = {"samples",       "eps_range", "support_a", "support_width",
                                          "data_L",        "tau_scale"};

Sections from_ptree(const pt::ptree& tree) {
  Sections s;
  for (const auto& [sec, sub] : tree) {
    if (sub.empty() && !sub.data().empty()) throw ConfigError(sec, "key outside of a section");
    auto& dst = s[sec];
    for (const auto& [key, val] : sub) dst[key] = val.data();
  }
  return s;
}

void check_known(const Sections& s, bool sweep) {
  for (const auto& [sec, keys] : s) {
    if (sweep && sec == "sweep") {
      for (const auto& [k, v] : keys)
        if (!kSweepKeys.count(k)) throw ConfigError(sec + "." + k, "unknown key");
      continue;
    }
    const auto it = kRunKeys.find(sec);
    if (it == kRunKeys.end()) throw ConfigError(sec, "unknown section");
    for (const auto& [k, v] : keys)
      if (!it->second.count(k)) throw ConfigError(sec + "." + k, "unknown key");
  }
}

std::string trim(const std::string& x) {
  const auto b = x.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = x.find_last_not_of(" \t\r\n");
  return x.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ConfigError(field, "expected a number, got '" + text + "'");
  return x;
}

long long parse_int(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ConfigError(field, "expected an integer, got '" + text + "'");
  return x;
}

bool parse_bool(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  if (t == "true" || t == "on" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "off" || t == "0" || t == "no") return false;
  throw ConfigError(field, "expected on/off, got '" + text + "'");
}

std::vector<double> parse_list(const std::string& text, const std::string& field) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(parse_double(tok, field));
  return out;
}

std::vector<ModeWeight> parse_modes(const std::string& text, const std::string& field) {
  std::vector<ModeWeight> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    if (trim(item).empty()) continue;
    std::istringstream one(item);
    std::string l, m, w;
    if (!(one >> l >> m >> w)) throw ConfigError(field, "each mode needs 'ell m weight'");
    out.push_back({static_cast<int>(parse_int(l, field)), static_cast<int>(parse_int(m, field)),
                   parse_double(w, field)});
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
  return s;
}

std::string join_modes(const std::vector<ModeWeight>& modes) {
  std::string s;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    s += (i ? "; " : "") + std::to_string(modes[i].ell) + " " + std::to_string(modes[i].m) + " " +
         format_double(modes[i].weight);
  }
  return s;
}

const std::string* find(const Sections& s, const std::string& sec, const std::string& key) {
  const auto it = s.find(sec);
  if (it == s.end()) return nullptr;
  const auto jt = it->second.find(key);
  return jt == it->second.end() ? nullptr : &jt->second;
}

void read_field(const Sections& s, const std::string& sec, FieldData& d) {
  if (auto* v = find(s, sec, "amplitude")) d.amplitude = parse_double(*v, sec + ".amplitude");
  if (auto* v = find(s, sec, "support")) {
    const auto ab = parse_list(*v, sec + ".support");
    if (ab.size() != 2) throw ConfigError(sec + ".support", "expected 'a b'");
    d.a = ab[0];
    d.b = ab[1];
  }
  if (auto* v = find(s, sec, "modes")) d.modes = parse_modes(*v, sec + ".modes");
}

std::vector<double> log_spaced(const std::vector<double>& spec, const std::string& field) {
  if (spec.empty()) return {};
  if (spec.size() != 3 || !(spec[0] > 0.0) || !(spec[1] >= spec[0]) || spec[2] < 2)
    throw ConfigError(field, "expected 'first last count' with 0 < first <= last, count >= 2");
  const int n = static_cast<int>(spec[2]);
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = spec[0] * std::pow(spec[1] / spec[0], static_cast<double>(k) / (n - 1));
  return out;
}

std::vector<double> pair(const std::string& text, const std::string& field) {
  const auto v = parse_list(text, field);
  if (v.size() != 2 || !(v[1] >= v[0])) throw ConfigError(field, "expected 'lo hi' with lo <= hi");
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

Sections read_ini_string(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config", e.what());
  }
  return from_ptree(tree);
}

Sections read_ini_file(const std::string& path) {
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config", e.what());
  }
  return from_ptree(tree);
}

RunConfig run_config_from_sections(const Sections& s) {
  Sections run_only = s;
  run_only.erase("sweep");
  check_known(run_only, false);
  RunConfig c;
  auto num = [&](const char* sec, const char* key, double& dst) {
    if (auto* v = find(s, sec, key)) dst = parse_double(*v, std::string(sec) + "." + key);
  };
  auto integer = [&](const char* sec, const char* key, auto& dst) {
    if (auto* v = find(s, sec, key)) dst = static_cast<std::decay_t<decltype(dst)>>(parse_int(*v, std::string(sec) + "." + key));
  };
  num("grid", "h", c.grid.h);
  num("grid", "u_max", c.grid.u_max);
  num("grid", "v_max", c.grid.v_max);
  num("grid", "V0", c.grid.V0);
  integer("grid", "L_max", c.grid.L_max);
  c.data.phi.amplitude = 0.0;
  c.data.psi.amplitude = 0.0;
  read_field(s, "phi", c.data.phi);
  read_field(s, "psi", c.data.psi);
  if (auto* v = find(s, "physics", "sources")) c.sources = parse_bool(*v, "physics.sources");
  integer("physics", "corrector_passes", c.corrector_passes);
  num("analysis", "delta", c.delta);
  num("analysis", "delta_ell", c.delta_ell);
  if (auto* v = find(s, "analysis", "report_times")) c.report_times = parse_list(*v, "analysis.report_times");
  if (auto* v = find(s, "analysis", "report_log")) c.report_log = parse_list(*v, "analysis.report_log");
  if (auto* v = find(s, "analysis", "rows")) c.rows = parse_list(*v, "analysis.rows");
  if (auto* v = find(s, "analysis", "rows_log")) c.rows_log = parse_list(*v, "analysis.rows_log");
  if (auto* v = find(s, "analysis", "hyperboloid")) c.hyperboloid = parse_bool(*v, "analysis.hyperboloid");
  if (auto* v = find(s, "analysis", "fit_phi")) c.fit_phi = pair(*v, "analysis.fit_phi");
  if (auto* v = find(s, "analysis", "fit_dphi")) c.fit_dphi = pair(*v, "analysis.fit_dphi");
  integer("analysis", "residual_stride", c.residual_stride);
  if (auto* v = find(s, "analysis", "phi_limit")) {
    const std::string t = trim(*v);
    if (t == "plain") {
      c.phi_limit = asympt::PhiLimit::plain;
    } else if (t == "log_slope") {
      c.phi_limit = asympt::PhiLimit::log_slope;
    } else {
      throw ConfigError("analysis.phi_limit", "expected plain or log_slope");
    }
  }
  integer("run", "threads", c.threads);
  if (auto* v = find(s, "run", "seed")) {
    const long long x = parse_int(*v, "run.seed");
    if (x < 0) throw ConfigError("run.seed", "must be >= 0");
    c.seed = static_cast<std::uint64_t>(x);
  }
  if (auto* v = find(s, "run", "out")) c.out_dir = trim(*v);
  return c;
}

Sections to_sections(const RunConfig& c) {
  Sections s;
  s["grid"] = {{"h", format_double(c.grid.h)},
               {"u_max", format_double(c.grid.u_max)},
               {"v_max", format_double(c.grid.v_max)},
               {"V0", format_double(c.grid.V0)},
               {"L_max", std::to_string(c.grid.L_max)}};
  auto field = [&](const FieldData& d) {
    return std::map<std::string, std::string>{{"amplitude", format_double(d.amplitude)},
                                              {"support", format_double(d.a) + " " + format_double(d.b)},
                                              {"modes", join_modes(d.modes)}};
  };
  s["phi"] = field(c.data.phi);
  s["psi"] = field(c.data.psi);
  s["physics"] = {{"sources", c.sources ? "on" : "off"}, {"corrector_passes", std::to_string(c.corrector_passes)}};
  s["analysis"] = {{"delta", format_double(c.delta)},
                   {"delta_ell", format_double(c.delta_ell)},
                   {"report_times", join(c.report_times)},
                   {"report_log", join(c.report_log)},
                   {"rows", join(c.rows)},
                   {"rows_log", join(c.rows_log)},
                   {"hyperboloid", c.hyperboloid ? "on" : "off"},
                   {"fit_phi", join(c.fit_phi)},
                   {"fit_dphi", join(c.fit_dphi)},
                   {"residual_stride", std::to_string(c.residual_stride)},
                   {"phi_limit", asympt::phi_limit_name(c.phi_limit)}};
  s["run"] = {{"threads", std::to_string(c.threads)}, {"seed", std::to_string(c.seed)}, {"out", c.out_dir}};
  return s;
}

std::vector<double> RunConfig::all_report_times() const {
  std::vector<double> t = report_times;
  for (double x : log_spaced(report_log, "analysis.report_log")) t.push_back(x);
  // Snap to the diagonal grid so duplicates collapse.
  for (double& x : t) x = grid.h * std::round(x / grid.h);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

std::vector<double> RunConfig::all_rows() const {
  std::vector<double> u = rows;
  for (double x : log_spaced(rows_log, "analysis.rows_log")) u.push_back(x);
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

ReportPlan RunConfig::report_plan() const {
  ReportPlan p;
  p.slice_times = all_report_times();
  p.row_us = all_rows();
  p.hyperboloid = hyperboloid;
  return p;
}

RunOptions RunConfig::run_options() const {
  RunOptions o;
  o.nonlinear = sources;
  o.corrector_passes = corrector_passes;
  o.threads = threads;
  return o;
}

void RunConfig::validate() const {
  grid.validate();
  data.validate(grid);
  if (corrector_passes < 0) throw ConfigError("physics.corrector_passes", "must be >= 0");
  if (!(delta > 0.0) || !(delta < 1.0)) throw ConfigError("analysis.delta", "need 0 < delta < 1");
  if (delta_ell < 0.0 || delta_ell >= 1.0) throw ConfigError("analysis.delta_ell", "need 0 <= delta_ell < 1");
  for (double t : all_report_times()) snap_report_time(grid, t);
  for (double u : all_rows()) {
    if (!(u >= grid.h) || u > grid.u_max - grid.h)
      throw ConfigError("analysis.rows", "row u must lie in [h, u_max - h]");
  }
  if (residual_stride < 1) throw ConfigError("analysis.residual_stride", "must be >= 1");
  if (threads < 1) throw ConfigError("run.threads", "must be >= 1");
}

SweepConfig sweep_config_from_sections(const Sections& s) {
  check_known(s, true);
  SweepConfig c;
  c.base = run_config_from_sections(s);
  const auto it = s.find("sweep");
  if (it != s.end()) {
    for (const auto& [k, v] : it->second) {
      const std::string f = "sweep." + k;
      if (k == "samples") c.samples = static_cast<int>(parse_int(v, f));
      if (k == "data_L") c.data_L = static_cast<int>(parse_int(v, f));
      if (k == "tau_scale") c.tau_scale = parse_double(v, f);
      if (k == "eps_range") {
        const auto p = pair(v, f);
        c.eps_min = p[0];
        c.eps_max = p[1];
      }
      if (k == "support_a") {
        const auto p = pair(v, f);
        c.a_min = p[0];
        c.a_max = p[1];
      }
      if (k == "support_width") {
        const auto p = pair(v, f);
        c.width_min = p[0];
        c.width_max = p[1];
      }
    }
  }
  return c;
}

Sections to_sections(const SweepConfig& c) {
  Sections s = to_sections(c.base);
  s["sweep"] = {{"samples", std::to_string(c.samples)},
                {"eps_range", format_double(c.eps_min) + " " + format_double(c.eps_max)},
                {"support_a", format_double(c.a_min) + " " + format_double(c.a_max)},
                {"support_width", format_double(c.width_min) + " " + format_double(c.width_max)},
                {"data_L", std::to_string(c.data_L)},
                {"tau_scale", format_double(c.tau_scale)}};
  return s;
}

void SweepConfig::validate() const {
  if (samples < 1) throw ConfigError("sweep.samples", "must be >= 1");
  if (!(eps_min > 0.0)) throw ConfigError("sweep.eps_range", "need 0 < eps_min <= eps_max");
  if (!(a_min > 0.0)) throw ConfigError("sweep.support_a", "need 0 < a_min <= a_max");
  if (!(width_min > 0.0)) throw ConfigError("sweep.support_width", "need 0 < width_min <= width_max");
  if (a_max + width_max > base.grid.V0 + 1e-12) throw ConfigError("sweep.support_width", "a_max + width_max exceeds V0");
  if (data_L < 0 || data_L > base.grid.L_max) throw ConfigError("sweep.data_L", "must lie in [0, grid.L_max]");
  if (!(tau_scale > 0.0)) throw ConfigError("sweep.tau_scale", "must be positive");
  base.grid.validate();
  if (base.threads < 1) throw ConfigError("run.threads", "must be >= 1");
}

RunConfig load_run_config(const std::string& path) {
  RunConfig c = run_config_from_sections(read_ini_file(path));
  c.validate();
  return c;
}

SweepConfig load_sweep_config(const std::string& path) {
  SweepConfig c = sweep_config_from_sections(read_ini_file(path));
  c.validate();
  return c;
}

}  // namespace nullwave
