#include "eosq/cli_io.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>

#include "eosq/errors.hpp"
#include "eosq/parallel.hpp"
#include "eosq/statistics.hpp"

namespace eosq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTHz = 2 * kPi * 1e12;  // rad/s per THz

// ---------------------------------------------------------------- schema --

struct Field {
  std::string section;
  std::string key;
  bool required;
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;

  std::string name() const { return section + "." + key; }
};

double parse_double(const std::string& v) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
    throw std::invalid_argument("expected a finite number, got '" + v + "'");
  }
  return out;
}

std::size_t parse_count(const std::string& v) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("expected a non-negative integer, got '" + v +
                                "'");
  }
  return out;
}

Field number(std::string section, std::string key, double ScenarioConfig::*m,
             bool required = false) {
  return {std::move(section), std::move(key), required,
          [m](ScenarioConfig& c, const std::string& v) { c.*m = parse_double(v); },
          [m](const ScenarioConfig& c) { return format_number(c.*m); }};
}

Field count(std::string section, std::string key,
            std::size_t ScenarioConfig::*m) {
  return {std::move(section), std::move(key), false,
          [m](ScenarioConfig& c, const std::string& v) { c.*m = parse_count(v); },
          [m](const ScenarioConfig& c) { return std::to_string(c.*m); }};
}

template <class E>
Field choice(std::string section, std::string key, E ScenarioConfig::*m,
             std::vector<std::pair<std::string, E>> options) {
  return {std::move(section), std::move(key), false,
          [m, options](ScenarioConfig& c, const std::string& v) {
            for (const auto& [name, value] : options) {
              if (name == v) {
                c.*m = value;
                return;
              }
            }
            std::string allowed;
            for (const auto& o : options) {
              allowed += (allowed.empty() ? "" : ", ") + o.first;
            }
            throw std::invalid_argument("expected one of {" + allowed +
                                        "}, got '" + v + "'");
          },
          [m, options](const ScenarioConfig& c) {
            for (const auto& [name, value] : options) {
              if (value == c.*m) return name;
            }
            return std::string("?");
          }};
}

const std::vector<Field>& schema() {
  using C = ScenarioConfig;
  static const std::vector<Field> fields = [] {
    std::vector<Field> f;
    f.push_back({"scenario", "preset", false,
                 [](C& c, const std::string& v) { c.preset = v; },
                 [](const C& c) { return c.preset; }});
    f.push_back(number("level", "nu_gprime_g_THz", &C::nu_gprime_g_THz, true));
    f.push_back(number("level", "nu_f_g_THz", &C::nu_f_g_THz, true));
    f.push_back(number("level", "gamma_gprime_g_THz", &C::gamma_gprime_g_THz, true));
    f.push_back(number("level", "gamma_f_g_THz", &C::gamma_f_g_THz, true));
    f.push_back(number("level", "gamma_f_gprime_THz", &C::gamma_f_gprime_THz, true));
    f.push_back(number("level", "gamma_g_g_THz", &C::gamma_g_g_THz));
    f.push_back(number("level", "gamma_gprime_gprime_THz", &C::gamma_gprime_gprime_THz));
    f.push_back(number("level", "gamma_f_f_THz", &C::gamma_f_f_THz));
    f.push_back(number("level", "mu_g_gprime", &C::mu_g_gprime, true));
    f.push_back(number("level", "mu_g_f", &C::mu_g_f, true));
    f.push_back(number("level", "mu_gprime_f", &C::mu_gprime_f, true));
    f.push_back(number("level", "mu_g_g", &C::mu_g_g));
    f.push_back(number("level", "mu_gprime_gprime", &C::mu_gprime_gprime));
    f.push_back(number("level", "mu_f_f", &C::mu_f_f));
    f.push_back(choice<SpectrumShape>("probe", "shape", &C::shape,
                                      {{"rectangular", SpectrumShape::rectangular},
                                       {"gaussian", SpectrumShape::gaussian}}));
    f.push_back(number("probe", "nu_c_THz", &C::nu_c_THz, true));
    f.push_back(number("probe", "delta_nu_THz", &C::delta_nu_THz, true));
    f.push_back(number("probe", "N_target", &C::N_target));
    f.push_back(number("geometry", "L_um", &C::L_um));
    f.push_back(number("geometry", "A_um2", &C::A_um2));
    f.push_back(choice<UnitMode>("mode", "mode", &C::mode,
                                 {{"normalized", UnitMode::normalized},
                                  {"si", UnitMode::si}}));
    f.push_back(number("mode", "max_correction_ratio", &C::max_correction_ratio));
    f.push_back(number("mode", "number_density_m3", &C::number_density_m3));
    f.push_back(choice<CascadingModel>(
        "mode", "cascading", &C::cascading,
        {{"microscopic", CascadingModel::microscopic},
         {"macroscopic", CascadingModel::macroscopic}}));
    f.push_back(choice<ThzKind>("thz", "state", &C::thz,
                                {{"vacuum", ThzKind::vacuum},
                                 {"thermal", ThzKind::thermal}}));
    f.push_back(number("thz", "temperature_K", &C::temperature_K));
    f.push_back(number("sweep", "theta_min_pi", &C::theta_min_pi));
    f.push_back(number("sweep", "theta_max_pi", &C::theta_max_pi));
    f.push_back(count("sweep", "theta_points", &C::theta_points));
    f.push_back(count("sweep", "omega_tilde_points", &C::omega_tilde_points));
    f.push_back(number("sweep", "distribution_theta_pi", &C::distribution_theta_pi));
    f.push_back(count("sweep", "s_points", &C::s_points));
    f.push_back(number("sweep", "s_span", &C::s_span));
    f.push_back(number("sweep", "reconstruct_threshold", &C::reconstruct_threshold));
    f.push_back(count("sweep", "field_points", &C::field_points));
    f.push_back(number("sweep", "chi2_nu2_min_THz", &C::chi2_nu2_min_THz));
    f.push_back(number("sweep", "chi2_nu2_max_THz", &C::chi2_nu2_max_THz));
    f.push_back(number("sweep", "chi2_nu1_THz", &C::chi2_nu1_THz));
    f.push_back(count("sweep", "chi2_points", &C::chi2_points));
    f.push_back(number("tolerance", "rel_tol", &C::rel_tol));
    f.push_back(number("tolerance", "inner_rel_tol", &C::inner_rel_tol));
    f.push_back({"output", "write_windows", false,
                 [](C& c, const std::string& v) {
                   if (v == "true") {
                     c.write_windows = true;
                   } else if (v == "false") {
                     c.write_windows = false;
                   } else {
                     throw std::invalid_argument("expected true or false, got '" +
                                                 v + "'");
                   }
                 },
                 [](const C& c) { return std::string(c.write_windows ? "true" : "false"); }});
    f.push_back(number("output", "windows_theta_pi", &C::windows_theta_pi));
    f.push_back(count("output", "windows_points", &C::windows_points));
    return f;
  }();
  return fields;
}

const Field* find_field(const std::string& section, const std::string& key) {
  for (const Field& f : schema()) {
    if (f.section == section && f.key == key) return &f;
  }
  return nullptr;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if ((line[i] == '#' || line[i] == ';') &&
        (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
      return line.substr(0, i);
    }
  }
  return line;
}

std::string env_name(const Field& f) {
  std::string n = std::string(kEnvPrefix) + f.section + "_" + f.key;
  std::transform(n.begin(), n.end(), n.begin(),
                 [](unsigned char ch) { return char(std::toupper(ch)); });
  return n;
}

void check_theta_pi(double v, const std::string& name,
                    std::vector<std::string>& out) {
  if (!(v >= 0.5 && v <= 1.5)) out.push_back(name + " must lie in [0.5, 1.5]");
}

std::vector<std::string> violations(const ScenarioConfig& c) {
  std::vector<std::string> v;
  auto positive = [&v](double x, const char* name) {
    if (!(x > 0.0)) v.push_back(std::string(name) + " must be positive");
  };
  positive(c.nu_gprime_g_THz, "level.nu_gprime_g_THz");
  if (!(c.nu_f_g_THz > c.nu_gprime_g_THz)) {
    v.push_back("level.nu_f_g_THz must exceed level.nu_gprime_g_THz");
  }
  positive(c.gamma_gprime_g_THz, "level.gamma_gprime_g_THz");
  positive(c.gamma_f_g_THz, "level.gamma_f_g_THz");
  positive(c.gamma_f_gprime_THz, "level.gamma_f_gprime_THz");
  positive(c.gamma_g_g_THz, "level.gamma_g_g_THz");
  positive(c.gamma_gprime_gprime_THz, "level.gamma_gprime_gprime_THz");
  positive(c.gamma_f_f_THz, "level.gamma_f_f_THz");
  positive(c.nu_c_THz, "probe.nu_c_THz");
  positive(c.delta_nu_THz, "probe.delta_nu_THz");
  if (c.delta_nu_THz > 0.0) {
    const double half = c.shape == SpectrumShape::rectangular
                            ? c.delta_nu_THz / 2
                            : 2 * c.delta_nu_THz * std::sqrt(std::log(1e8));
    if (!(c.nu_c_THz > half)) {
      v.push_back("probe support must lie at positive frequencies");
    }
  }
  positive(c.N_target, "probe.N_target");
  positive(c.L_um, "geometry.L_um");
  positive(c.A_um2, "geometry.A_um2");
  positive(c.number_density_m3, "mode.number_density_m3");
  if (!(c.max_correction_ratio > 0.0 && c.max_correction_ratio < 1.0)) {
    v.push_back("mode.max_correction_ratio must lie in (0, 1)");
  }
  if (!(c.temperature_K >= 0.0)) v.push_back("thz.temperature_K must be >= 0");
  check_theta_pi(c.theta_min_pi, "sweep.theta_min_pi", v);
  check_theta_pi(c.theta_max_pi, "sweep.theta_max_pi", v);
  if (c.theta_max_pi < c.theta_min_pi) {
    v.push_back("sweep.theta_max_pi must not be below sweep.theta_min_pi");
  }
  if (c.theta_points < 1) v.push_back("sweep.theta_points must be >= 1");
  if (c.omega_tilde_points < 1) v.push_back("sweep.omega_tilde_points must be >= 1");
  check_theta_pi(c.distribution_theta_pi, "sweep.distribution_theta_pi", v);
  if (c.s_points < 3) v.push_back("sweep.s_points must be >= 3");
  positive(c.s_span, "sweep.s_span");
  positive(c.reconstruct_threshold, "sweep.reconstruct_threshold");
  if (c.field_points < 3) v.push_back("sweep.field_points must be >= 3");
  if (!(c.chi2_nu2_max_THz >= c.chi2_nu2_min_THz)) {
    v.push_back("sweep.chi2_nu2_max_THz must not be below sweep.chi2_nu2_min_THz");
  }
  if (c.chi2_points < 1) v.push_back("sweep.chi2_points must be >= 1");
  if (!(c.rel_tol > 0.0 && c.rel_tol <= 1e-2)) {
    v.push_back("tolerance.rel_tol must lie in (0, 1e-2]");
  }
  if (!(c.inner_rel_tol > 0.0 && c.inner_rel_tol <= 1e-2)) {
    v.push_back("tolerance.inner_rel_tol must lie in (0, 1e-2]");
  }
  check_theta_pi(c.windows_theta_pi, "output.windows_theta_pi", v);
  if (c.windows_points < 1) v.push_back("output.windows_points must be >= 1");
  return v;
}

// ------------------------------------------------------------------- csv --

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& command,
            const ScenarioConfig& cfg, const std::vector<std::string>& notes,
            const std::vector<std::string>& columns)
      : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot open " + path.string() + " for writing");
    out_ << "# eosq " << command << '\n';
    out_ << "# preset=" << cfg.preset << '\n';
    out_ << "# config_sha256=" << cfg.hash() << '\n';
    out_ << "# tolerances rel_tol=" << format_number(cfg.rel_tol)
         << " inner_rel_tol=" << format_number(cfg.inner_rel_tol) << '\n';
    for (const auto& n : notes) out_ << "# " << n << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out_ << (i ? "," : "") << columns[i];
    }
    out_ << '\n';
  }

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      out_ << (i ? "," : "") << format_number(values[i]);
    }
    out_ << '\n';
  }

  std::filesystem::path finish() {
    out_.close();
    if (!out_) throw Error("failed writing " + path_.string());
    return path_;
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::filesystem::path output_file(const RunOptions& opt, const std::string& name) {
  std::filesystem::create_directories(opt.out_dir);
  return opt.out_dir / name;
}

std::vector<double> uniform(double a, double b, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = n > 1 ? a + (b - a) * double(i) / double(n - 1) : a;
  }
  return g;
}

}  // namespace

// ---------------------------------------------------------------- config --

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

std::string ScenarioConfig::canonical() const {
  std::string out;
  for (const Field& f : schema()) out += f.name() + "=" + f.get(*this) + "\n";
  return out;
}

std::string ScenarioConfig::hash() const {
  const std::string text = canonical();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const Field& f : schema()) out.push_back(f.name());
  return out;
}

ScenarioConfig parse_config(const std::string& text, const std::string& origin,
                            bool use_environment) {
  ScenarioConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError(origin + ":" + std::to_string(line_no) +
                             ": unterminated section header",
                         line_no, "");
      }
      section = trim(line.substr(1, line.size() - 2));
      const bool known = std::any_of(schema().begin(), schema().end(),
                                     [&](const Field& f) { return f.section == section; });
      if (!known) {
        throw ParseError(origin + ":" + std::to_string(line_no) +
                             ": unknown section [" + section + "]",
                         line_no, section);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(origin + ":" + std::to_string(line_no) +
                           ": expected 'key = value'",
                       line_no, "");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string full = section + "." + key;
    const Field* f = find_field(section, key);
    if (!f) {
      throw ParseError(origin + ":" + std::to_string(line_no) +
                           ": unknown key '" + full + "'",
                       line_no, full);
    }
    if (!seen.insert(full).second) {
      throw ParseError(origin + ":" + std::to_string(line_no) +
                           ": duplicate key '" + full + "'",
                       line_no, full);
    }
    try {
      f->set(cfg, value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": " + full +
                           ": " + e.what(),
                       line_no, full);
    }
  }

  if (use_environment) {
    for (const Field& f : schema()) {
      const char* env = std::getenv(env_name(f).c_str());
      if (!env) continue;
      try {
        f.set(cfg, trim(env));
      } catch (const std::invalid_argument& e) {
        throw ParseError(env_name(f) + ": " + e.what(), 0, f.name());
      }
      seen.insert(f.name());
    }
  }

  std::vector<std::string> missing;
  for (const Field& f : schema()) {
    if (f.required && !seen.count(f.name())) {
      missing.push_back("missing required key " + f.name());
    }
  }
  if (!missing.empty()) throw ValidationError(missing);

  // Diagonal linewidths default to the matching off-diagonal ones.
  if (!seen.count("level.gamma_g_g_THz")) cfg.gamma_g_g_THz = cfg.gamma_gprime_g_THz;
  if (!seen.count("level.gamma_gprime_gprime_THz")) {
    cfg.gamma_gprime_gprime_THz = cfg.gamma_gprime_g_THz;
  }
  if (!seen.count("level.gamma_f_f_THz")) cfg.gamma_f_f_THz = cfg.gamma_f_g_THz;

  const auto bad = violations(cfg);
  if (!bad.empty()) throw ValidationError(bad);
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path,
                           bool use_environment) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read config " + path.string(), 0, "");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string(), use_environment);
}

std::filesystem::path preset_path(const std::string& name) {
  std::vector<std::filesystem::path> dirs;
  if (const char* env = std::getenv("EOSQ_PRESET_DIR")) dirs.emplace_back(env);
  dirs.emplace_back(EOSQ_SOURCE_PRESET_DIR);
  dirs.emplace_back(EOSQ_INSTALLED_PRESET_DIR);
  for (const auto& d : dirs) {
    const auto p = d / (name + ".ini");
    if (std::filesystem::exists(p)) return p;
  }
  throw ParseError("unknown preset '" + name + "'", 0, name);
}

ScenarioConfig load_preset(const std::string& name, bool use_environment) {
  return load_config(preset_path(name), use_environment);
}

// ------------------------------------------------------------- factories --

PhysicalConstants make_constants(const ScenarioConfig& cfg) {
  PhysicalConstants c;
  c.beam_area = cfg.A_um2 * 1e-12;
  c.length = cfg.L_um * 1e-6;
  c.number_density = cfg.number_density_m3;
  c.mode = cfg.mode;
  return c;
}

LevelScheme make_scheme(const ScenarioConfig& cfg) {
  PairTable gamma;
  gamma.set(Level::gprime, Level::g, cfg.gamma_gprime_g_THz * kTHz);
  gamma.set(Level::f, Level::g, cfg.gamma_f_g_THz * kTHz);
  gamma.set(Level::f, Level::gprime, cfg.gamma_f_gprime_THz * kTHz);
  gamma.set(Level::g, Level::g, cfg.gamma_g_g_THz * kTHz);
  gamma.set(Level::gprime, Level::gprime, cfg.gamma_gprime_gprime_THz * kTHz);
  gamma.set(Level::f, Level::f, cfg.gamma_f_f_THz * kTHz);
  PairTable mu;
  mu.set(Level::g, Level::gprime, cfg.mu_g_gprime);
  mu.set(Level::g, Level::f, cfg.mu_g_f);
  mu.set(Level::gprime, Level::f, cfg.mu_gprime_f);
  mu.set(Level::g, Level::g, cfg.mu_g_g);
  mu.set(Level::gprime, Level::gprime, cfg.mu_gprime_gprime);
  mu.set(Level::f, Level::f, cfg.mu_f_f);
  return LevelScheme(cfg.nu_gprime_g_THz * kTHz, cfg.nu_f_g_THz * kTHz, gamma, mu);
}

ProbeSpectrum make_probe(const ScenarioConfig& cfg) {
  const ProbeSpectrum unit(cfg.shape, cfg.nu_c_THz * kTHz, cfg.delta_nu_THz * kTHz,
                           1.0, make_constants(cfg));
  return unit.with_photon_number(cfg.N_target);
}

MomentContext make_moment_context(const ScenarioConfig& cfg) {
  const PhysicalConstants consts = make_constants(cfg);
  MomentContext ctx{
      WindowContext{std::make_shared<ThreeLevelSusceptibility>(make_scheme(cfg), consts),
                    make_probe(cfg), cfg.inner_rel_tol, std::nullopt},
      cfg.rel_tol, cfg.max_correction_ratio, theta_grid(cfg), cfg.cascading};
  return ctx;
}

ThzState make_thz_state(const ScenarioConfig& cfg) {
  return cfg.thz == ThzKind::thermal ? ThzState::thermal(cfg.temperature_K)
                                     : ThzState::vacuum();
}

std::vector<double> theta_grid(const ScenarioConfig& cfg) {
  auto g = uniform(cfg.theta_min_pi, cfg.theta_max_pi, cfg.theta_points);
  for (double& t : g) t *= kPi;
  return g;
}

std::vector<double> omega_tilde_grid(const ScenarioConfig& cfg) {
  const double wc = cfg.nu_c_THz * kTHz;
  const double q = cfg.delta_nu_THz * kTHz / 4;
  if (cfg.omega_tilde_points == 1) return {wc};
  return uniform(wc - q, wc + q, cfg.omega_tilde_points);
}

// --------------------------------------------------------------- runners --

std::vector<std::filesystem::path> run_sweep_theta(const ScenarioConfig& cfg,
                                                   const RunOptions& opt) {
  const MomentContext ctx = make_moment_context(cfg);
  const MomentModel model(ctx, make_thz_state(cfg));
  std::vector<std::filesystem::path> written;

  CsvWriter csv(output_file(opt, "sweep_theta.csv"), "sweep-theta", cfg,
                {"shot_noise_N=" + format_number(ctx.windows.probe.photon_number()),
                 "prefactor=" + format_number(model.prefactor())},
                {"theta_rad", "gammaI", "gammaII", "gammaIII", "gamma_total",
                 "ratio_II", "gammaIII_im_term"});
  for (const MomentBreakdown& b : model.sweep(theta_grid(cfg))) {
    csv.row({b.theta, b.gamma_I, b.gamma_II, b.gamma_III, b.gamma_total,
             b.ratio_II(), b.gamma_III_im_term});
  }
  written.push_back(csv.finish());

  if (cfg.write_windows) {
    const double theta = cfg.windows_theta_pi * kPi;
    const auto table = tabulate_windows(
        theta, ctx.windows, default_window_grid(ctx.windows, cfg.windows_points),
        opt.threads);
    CsvWriter w(output_file(opt, "windows.csv"), "sweep-theta windows", cfg,
                {"theta_rad=" + format_number(theta)},
                {"Omega_THz", "ReD", "ImD", "ReDq", "ImDq", "ReDcasc", "ImDcasc"});
    for (std::size_t i = 0; i < table.omega_grid.size(); ++i) {
      w.row({table.omega_grid[i] / kTHz, table.D[i].real(), table.D[i].imag(),
             table.Dq[i].real(), table.Dq[i].imag(), table.Dcasc[i].real(),
             table.Dcasc[i].imag()});
    }
    written.push_back(w.finish());
  }
  return written;
}

std::vector<std::filesystem::path> run_spectral_filter(const ScenarioConfig& cfg,
                                                       const RunOptions& opt) {
  const MomentContext ctx = make_moment_context(cfg);
  const double K = MomentModel(ctx, ThzState::vacuum()).prefactor();
  const auto grid = omega_tilde_grid(cfg);
  std::vector<SpectralCutResult> results(grid.size());
  parallel_for(grid.size(), opt.threads, [&](std::size_t i) {
    results[i] = gamma_spectral_cut(grid[i], ctx, K);
  });
  CsvWriter csv(output_file(opt, "spectral_filter.csv"), "spectral-filter", cfg,
                {"theta_rad=" + format_number(kPi / 2), "prefactor=" + format_number(K)},
                {"omega_tilde_THz", "gamma_classical", "gamma_full", "deviation"});
  for (const auto& r : results) {
    csv.row({r.omega_tilde / kTHz, r.gamma_classical, r.gamma_full,
             r.gamma_full - r.gamma_classical});
  }
  return {csv.finish()};
}

std::vector<std::filesystem::path> run_distribution(const ScenarioConfig& cfg,
                                                    const RunOptions& opt) {
  const MomentContext ctx = make_moment_context(cfg);
  const MomentModel model(ctx, make_thz_state(cfg));
  const double theta = cfg.distribution_theta_pi * kPi;
  const MomentBreakdown b = model.at(theta);
  const DistributionCurve curve = distribution(
      b.shot_noise, b.gamma_total,
      default_signal_grid(b.shot_noise, cfg.s_points, cfg.s_span), theta);
  std::vector<std::string> notes{"theta_rad=" + format_number(theta),
                                 "N=" + format_number(b.shot_noise),
                                 "gamma=" + format_number(b.gamma_total)};
  for (ValidityWarning w : curve.warnings) {
    notes.push_back(w == ValidityWarning::negative_density
                        ? "warning: truncated series is negative on part of the grid"
                        : "warning: |gamma| >= N, correction is not perturbative");
  }
  CsvWriter csv(output_file(opt, "distribution.csv"), "distribution", cfg, notes,
                {"S", "density"});
  for (std::size_t i = 0; i < curve.s_grid.size(); ++i) {
    csv.row({curve.s_grid[i], curve.density[i]});
  }
  return {csv.finish()};
}

std::vector<std::filesystem::path> run_contour(const ScenarioConfig& cfg,
                                               const RunOptions& opt) {
  const MomentContext ctx = make_moment_context(cfg);
  const MomentModel model(ctx, make_thz_state(cfg));
  const auto contour = variance_contour(model.sweep(theta_grid(cfg)));
  CsvWriter csv(output_file(opt, "contour.csv"), "contour", cfg,
                {"N=" + format_number(ctx.windows.probe.photon_number())},
                {"phi_rad", "radius_full", "radius_classical", "radius_shot"});
  for (const auto& p : contour) {
    csv.row({p.phi, p.radius_full, p.radius_classical, p.radius_shot});
  }
  return {csv.finish()};
}

std::vector<std::filesystem::path> run_reconstruct(const ScenarioConfig& cfg,
                                                   const RunOptions& opt) {
  const MomentContext ctx = make_moment_context(cfg);
  const MomentModel model(ctx, make_thz_state(cfg));
  const MomentBreakdown b = model.at(kPi / 2);
  const DistributionCurve measured = distribution(
      b.shot_noise, b.gamma_total,
      default_signal_grid(b.shot_noise, cfg.s_points, cfg.s_span), kPi / 2);
  const double E_norm = field_normalization(*ctx.windows.chi, ctx.windows.probe);
  const ReconstructionResult r = reconstruct_thz(
      measured, b, E_norm, cfg.reconstruct_threshold, cfg.field_points);
  CsvWriter csv(output_file(opt, "reconstruct.csv"), "reconstruct", cfg,
                {"E_norm=" + format_number(r.E_norm),
                 "variance_signal_units=" + format_number(r.variance_signal_units),
                 "variance_field_units=" + format_number(r.variance_field_units)},
                {"E_over_Enorm", "density"});
  for (std::size_t i = 0; i < r.field_grid.size(); ++i) {
    csv.row({r.field_grid[i], r.density[i]});
  }
  return {csv.finish()};
}

std::vector<std::filesystem::path> run_chi2_table(const ScenarioConfig& cfg,
                                                  const RunOptions& opt) {
  const ThreeLevelSusceptibility chi(make_scheme(cfg), make_constants(cfg));
  const double nu1 = cfg.chi2_nu1_THz;
  CsvWriter csv(output_file(opt, "chi2_table.csv"), "chi2-table", cfg, {},
                {"nu2_THz", "nu1_THz", "Re_chi_mm", "Im_chi_mm", "Re_chi_pm",
                 "Im_chi_pm", "Re_chi_mp", "Im_chi_mp", "Re_chi_pp", "Im_chi_pp"});
  for (double nu2 : uniform(cfg.chi2_nu2_min_THz, cfg.chi2_nu2_max_THz,
                            cfg.chi2_points)) {
    const Chi2Patterns p = chi.patterns(nu2 * kTHz, nu1 * kTHz);
    csv.row({nu2, nu1, p.mm.real(), p.mm.imag(), p.pm.real(), p.pm.imag(),
             p.mp.real(), p.mp.imag(), p.pp.real(), p.pp.imag()});
  }
  return {csv.finish()};
}

}  // namespace eosq
