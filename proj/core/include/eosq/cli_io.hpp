#pragma once

// Scenario configuration, presets, sweep orchestration and CSV emission.
//
// Config files are flat INI: `[section]` headers, `key = value` lines, `#` or
// `;` comments. Unknown sections or keys are errors. Every key can be
// overridden from the environment as EOSQ_<SECTION>_<KEY> (upper case).

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "eosq/detection_windows.hpp"
#include "eosq/model_core.hpp"
#include "eosq/moments.hpp"
#include "eosq/probe_optics.hpp"

namespace eosq {

inline constexpr const char* kEnvPrefix = "EOSQ_";

enum class ThzKind { vacuum, thermal };

struct ScenarioConfig {
  std::string preset;

  // [level] frequencies and linewidths in THz (converted with 2 pi), dipoles
  // in C m (SI) or arbitrary units (normalized).
  double nu_gprime_g_THz = 0.0;
  double nu_f_g_THz = 0.0;
  double gamma_gprime_g_THz = 0.0;
  double gamma_f_g_THz = 0.0;
  double gamma_f_gprime_THz = 0.0;
  double gamma_g_g_THz = 0.0;
  double gamma_gprime_gprime_THz = 0.0;
  double gamma_f_f_THz = 0.0;
  double mu_g_gprime = 0.0;
  double mu_g_f = 0.0;
  double mu_gprime_f = 0.0;
  double mu_g_g = 0.0;
  double mu_gprime_gprime = 0.0;
  double mu_f_f = 0.0;

  // [probe]
  SpectrumShape shape = SpectrumShape::rectangular;
  double nu_c_THz = 0.0;
  double delta_nu_THz = 0.0;
  double N_target = 1e8;

  // [geometry]
  double L_um = 10.0;
  double A_um2 = 100.0;

  // [mode]
  UnitMode mode = UnitMode::normalized;
  double max_correction_ratio = 0.2;
  double number_density_m3 = 1e28;
  CascadingModel cascading = CascadingModel::microscopic;

  // [thz]
  ThzKind thz = ThzKind::vacuum;
  double temperature_K = 300.0;

  // [sweep] angles in units of pi
  double theta_min_pi = 0.5;
  double theta_max_pi = 1.5;
  std::size_t theta_points = 201;
  std::size_t omega_tilde_points = 31;
  double distribution_theta_pi = 0.5;
  std::size_t s_points = 4001;
  double s_span = 8.0;
  double reconstruct_threshold = 0.05;
  std::size_t field_points = 4001;
  double chi2_nu2_min_THz = 1.0;
  double chi2_nu2_max_THz = 150.0;
  double chi2_nu1_THz = 255.0;
  std::size_t chi2_points = 150;

  // [tolerance]
  double rel_tol = 1e-8;
  double inner_rel_tol = 1e-10;

  // [output]
  bool write_windows = false;
  double windows_theta_pi = 0.5;
  std::size_t windows_points = 512;

  // Resolved key=value lines in schema order; the hash input.
  std::string canonical() const;
  // SHA-256 of canonical(), hex encoded.
  std::string hash() const;
};

// Parses and validates. `origin` names the source in error messages.
ScenarioConfig parse_config(const std::string& text,
                            const std::string& origin = "<string>",
                            bool use_environment = true);
ScenarioConfig load_config(const std::filesystem::path& path,
                           bool use_environment = true);

// Preset directory: $EOSQ_PRESET_DIR, else the installed or source tree copy.
std::filesystem::path preset_path(const std::string& name);
ScenarioConfig load_preset(const std::string& name, bool use_environment = true);

// Documented keys as "section.key", in schema order.
std::vector<std::string> config_keys();

PhysicalConstants make_constants(const ScenarioConfig& cfg);
LevelScheme make_scheme(const ScenarioConfig& cfg);
ProbeSpectrum make_probe(const ScenarioConfig& cfg);
MomentContext make_moment_context(const ScenarioConfig& cfg);
ThzState make_thz_state(const ScenarioConfig& cfg);
std::vector<double> theta_grid(const ScenarioConfig& cfg);
std::vector<double> omega_tilde_grid(const ScenarioConfig& cfg);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
};

// Each runner writes one or more CSV files into out_dir and returns the
// written paths.
std::vector<std::filesystem::path> run_sweep_theta(const ScenarioConfig& cfg,
                                                   const RunOptions& opt);
std::vector<std::filesystem::path> run_spectral_filter(const ScenarioConfig& cfg,
                                                       const RunOptions& opt);
std::vector<std::filesystem::path> run_distribution(const ScenarioConfig& cfg,
                                                    const RunOptions& opt);
std::vector<std::filesystem::path> run_contour(const ScenarioConfig& cfg,
                                               const RunOptions& opt);
std::vector<std::filesystem::path> run_reconstruct(const ScenarioConfig& cfg,
                                                   const RunOptions& opt);
std::vector<std::filesystem::path> run_chi2_table(const ScenarioConfig& cfg,
                                                  const RunOptions& opt);

// Fixed formatting: 17 significant digits, '.' decimal point.
std::string format_number(double v);

}  // namespace eosq
