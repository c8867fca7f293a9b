#pragma once

// Flat key = value run configuration with canonical serialization.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kitten/model.hpp"
#include "kitten/phase_space.hpp"

namespace kitten {

struct TimeSpec {
  enum class Kind { none, single, list, range };
  Kind kind = Kind::none;
  std::vector<double> values;  // single or list
  double start = 0.0, stop = 0.0, step = 1.0;

  /// Expanded sample times; a range includes stop when it lies on the lattice.
  std::vector<double> times() const;
};

struct RunConfig {
  SystemParams system;
  InitialState state;  // state.vartheta follows vartheta_deg
  double vartheta_deg = 0.0;
  int n_max = 0;  // 0 selects default_truncation
  double tail_tol = 1e-12;
  double grid_half_extent = 0.0;  // 0 selects default_grid
  int grid_points = 301;
  TimeSpec time;
  std::optional<double> reference_time;
  std::string out = ".";
  int threads = 1;
  std::string kind = "wigner";
  int samples = 3600;  // angular profiles
  int p = 2;
  int count = 4;
  bool fit_nbar = true;
  int max_evaluations = 4000;
  int max_restarts = 12;
  std::string ensemble;  // reference ensemble file; empty means fit

  /// Sorted key = value lines, numbers with 17 significant digits.
  std::string serialize() const;
  PhaseGrid grid() const;
  /// The single time required by one-shot commands.
  double single_time() const;
};

/// Parses "key = value" text.  Blank lines and lines starting with '#' are
/// skipped.  Throws ParseError carrying the line of the offending entry.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});
/// Applies one "key=value" command-line override (line number 0 in errors).
void apply_override(RunConfig& cfg, const std::string& assignment);
/// Re-checks physical domains; throws ParseError.
void validate_config(const RunConfig& cfg);

/// Raw key/value pairs of a flat file with their line numbers.
struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};
std::vector<KeyValue> parse_key_values(const std::string& text);

std::string format_number(double v);
double parse_number(const std::string& s, int line);
std::vector<double> parse_number_list(const std::string& s, int line);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace kitten
