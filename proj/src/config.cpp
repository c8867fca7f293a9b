#include "kitten/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "kitten/errors.hpp"

namespace kitten {

std::vector<double> TimeSpec::times() const {
  switch (kind) {
    case Kind::none:
      return {};
    case Kind::single:
    case Kind::list:
      return values;
    case Kind::range: {
      std::vector<double> out;
      if (stop < start) return out;
      const long long n = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
      out.reserve(static_cast<std::size_t>(n));
      for (long long i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
      return out;
    }
  }
  return {};
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

double parse_number(const std::string& raw, int line) {
  const std::string s = trim(raw);
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError("not a finite number: '" + s + "'", line);
  }
  return v;
}

std::vector<double> parse_number_list(const std::string& s, int line) {
  std::vector<double> out;
  if (trim(s).empty()) return out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_number(item, line));
  return out;
}

namespace {

int parse_int(const std::string& s, int line) {
  const double v = parse_number(s, line);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ParseError("not an integer: '" + trim(s) + "'", line);
  return static_cast<int>(v);
}

bool parse_bool(const std::string& raw, int line) {
  const std::string s = trim(raw);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ParseError("not a boolean: '" + s + "'", line);
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_number(v[i]);
  }
  return out;
}

void apply_entry(RunConfig& cfg, const std::string& key, const std::string& value, int line,
                 std::map<std::string, int>& lines) {
  lines[key] = line;
  auto num = [&] { return parse_number(value, line); };
  if (key == "delta") cfg.system.delta = num();
  else if (key == "epsilon") cfg.system.epsilon = num();
  else if (key == "omega") cfg.system.omega = num();
  else if (key == "lambda") cfg.system.lambda = num();
  else if (key == "alpha_re") cfg.state.alpha.real(num());
  else if (key == "alpha_im") cfg.state.alpha.imag(num());
  else if (key == "r") cfg.state.r = num();
  else if (key == "vartheta_deg") {
    cfg.vartheta_deg = num();
    cfg.state.vartheta = deg_to_rad(cfg.vartheta_deg);
  }
  else if (key == "c_re") cfg.state.c.real(num());
  else if (key == "c_im") cfg.state.c.imag(num());
  else if (key == "n_max") cfg.n_max = parse_int(value, line);
  else if (key == "tail_tol") cfg.tail_tol = num();
  else if (key == "grid_half_extent") cfg.grid_half_extent = num();
  else if (key == "grid_points") cfg.grid_points = parse_int(value, line);
  else if (key == "time") {
    cfg.time.kind = TimeSpec::Kind::single;
    cfg.time.values = {num()};
  } else if (key == "times") {
    cfg.time.kind = TimeSpec::Kind::list;
    cfg.time.values = parse_number_list(value, line);
  } else if (key == "t_start" || key == "t_stop" || key == "t_step") {
    if (cfg.time.kind != TimeSpec::Kind::range) {
      cfg.time.kind = TimeSpec::Kind::range;
      cfg.time.values.clear();
    }
    (key == "t_start" ? cfg.time.start : key == "t_stop" ? cfg.time.stop : cfg.time.step) = num();
  } else if (key == "reference_time") cfg.reference_time = num();
  else if (key == "out") cfg.out = trim(value);
  else if (key == "threads") cfg.threads = parse_int(value, line);
  else if (key == "kind") cfg.kind = trim(value);
  else if (key == "samples") cfg.samples = parse_int(value, line);
  else if (key == "p") cfg.p = parse_int(value, line);
  else if (key == "count") cfg.count = parse_int(value, line);
  else if (key == "fit_nbar") cfg.fit_nbar = parse_bool(value, line);
  else if (key == "max_evaluations") cfg.max_evaluations = parse_int(value, line);
  else if (key == "max_restarts") cfg.max_restarts = parse_int(value, line);
  else if (key == "ensemble") cfg.ensemble = trim(value);
  else throw ParseError("unknown key '" + key + "'", line);
}

void check(bool ok, const std::string& what, const std::map<std::string, int>& lines,
           const std::string& key) {
  if (ok) return;
  const auto it = lines.find(key);
  throw ParseError(what, it == lines.end() ? 0 : it->second);
}

void validate_with_lines(const RunConfig& cfg, const std::map<std::string, int>& lines) {
  check(cfg.system.omega > 0.0, "omega must be positive", lines, "omega");
  check(cfg.system.delta >= 0.0, "delta must be nonnegative", lines, "delta");
  check(cfg.system.lambda >= 0.0, "lambda must be nonnegative", lines, "lambda");
  check(cfg.state.r >= 0.0, "r must be nonnegative", lines, "r");
  check(cfg.n_max >= 0, "n_max must be nonnegative", lines, "n_max");
  check(cfg.tail_tol > 0.0, "tail_tol must be positive", lines, "tail_tol");
  check(cfg.grid_half_extent >= 0.0, "grid_half_extent must be nonnegative", lines,
        "grid_half_extent");
  check(cfg.grid_points >= 3 && cfg.grid_points % 2 == 1, "grid_points must be odd and >= 3",
        lines, "grid_points");
  check(cfg.time.kind != TimeSpec::Kind::range || cfg.time.step > 0.0, "t_step must be positive",
        lines, "t_step");
  check(cfg.threads >= 1, "threads must be >= 1", lines, "threads");
  check(cfg.samples >= 8, "samples must be >= 8", lines, "samples");
  check(cfg.p >= 1, "p must be >= 1", lines, "p");
  check(cfg.count >= 2 && cfg.count % 2 == 0, "count must be even and >= 2", lines, "count");
  check(cfg.max_evaluations >= 1, "max_evaluations must be >= 1", lines, "max_evaluations");
  check(cfg.max_restarts >= 1, "max_restarts must be >= 1", lines, "max_restarts");
  static const char* kinds[] = {"wigner", "husimi", "husimi-linear", "angular", "angular-husimi"};
  check(std::find(std::begin(kinds), std::end(kinds), cfg.kind) != std::end(kinds),
        "unknown grid kind '" + cfg.kind + "'", lines, "kind");
  check(!cfg.out.empty(), "out must not be empty", lines, "out");
}

}  // namespace

std::vector<KeyValue> parse_key_values(const std::string& text) {
  std::vector<KeyValue> out;
  std::stringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line);
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", line);
    out.push_back({key, trim(s.substr(eq + 1)), line});
  }
  return out;
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::map<std::string, int> lines;
  for (const auto& kv : parse_key_values(text)) apply_entry(base, kv.key, kv.value, kv.line, lines);
  validate_with_lines(base, lines);
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  return parse_config(read_file(path), std::move(base));
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ParseError("override must be key=value: '" + assignment + "'");
  std::map<std::string, int> lines;
  apply_entry(cfg, trim(assignment.substr(0, eq)), assignment.substr(eq + 1), 0, lines);
}

void validate_config(const RunConfig& cfg) { validate_with_lines(cfg, {}); }

std::string RunConfig::serialize() const {
  std::map<std::string, std::string> kv;
  kv["delta"] = format_number(system.delta);
  kv["epsilon"] = format_number(system.epsilon);
  kv["omega"] = format_number(system.omega);
  kv["lambda"] = format_number(system.lambda);
  kv["alpha_re"] = format_number(state.alpha.real());
  kv["alpha_im"] = format_number(state.alpha.imag());
  kv["r"] = format_number(state.r);
  kv["vartheta_deg"] = format_number(vartheta_deg);
  kv["c_re"] = format_number(state.c.real());
  kv["c_im"] = format_number(state.c.imag());
  kv["n_max"] = std::to_string(n_max);
  kv["tail_tol"] = format_number(tail_tol);
  kv["grid_half_extent"] = format_number(grid_half_extent);
  kv["grid_points"] = std::to_string(grid_points);
  switch (time.kind) {
    case TimeSpec::Kind::none:
      break;
    case TimeSpec::Kind::single:
      kv["time"] = format_number(time.values.at(0));
      break;
    case TimeSpec::Kind::list:
      kv["times"] = join(time.values);
      break;
    case TimeSpec::Kind::range:
      kv["t_start"] = format_number(time.start);
      kv["t_stop"] = format_number(time.stop);
      kv["t_step"] = format_number(time.step);
      break;
  }
  if (reference_time) kv["reference_time"] = format_number(*reference_time);
  kv["out"] = out;
  kv["threads"] = std::to_string(threads);
  kv["kind"] = kind;
  kv["samples"] = std::to_string(samples);
  kv["p"] = std::to_string(p);
  kv["count"] = std::to_string(count);
  kv["fit_nbar"] = fit_nbar ? "true" : "false";
  kv["max_evaluations"] = std::to_string(max_evaluations);
  kv["max_restarts"] = std::to_string(max_restarts);
  if (!ensemble.empty()) kv["ensemble"] = ensemble;
  std::string text;
  for (const auto& [k, v] : kv) text += k + " = " + v + "\n";
  return text;
}

PhaseGrid RunConfig::grid() const {
  if (grid_half_extent > 0.0) return PhaseGrid::make(0.0, grid_half_extent, grid_points);
  PhaseGrid g = default_grid(system, state);
  return PhaseGrid::make(g.center, g.half_extent, grid_points);
}

double RunConfig::single_time() const {
  const auto t = time.times();
  if (t.size() != 1) throw ParseError("this command needs exactly one time (key 'time')");
  return t.front();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace kitten
