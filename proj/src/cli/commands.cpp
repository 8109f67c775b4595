#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "cohstate/cli/cli.hpp"
#include "cohstate/cli/verify.hpp"
#include "cohstate/dynamics.hpp"
#include "cohstate/errors.hpp"
#include "cohstate/moments.hpp"
#include "cohstate/observables.hpp"
#include "cohstate/state.hpp"

#ifndef COHSTATE_VERSION
#define COHSTATE_VERSION "0.0.0"
#endif

namespace cohstate::cli {

using nlohmann::json;

namespace {

LevelFormula::Family family_from(const std::string& name) {
  if (name == "power_law") return LevelFormula::Family::PowerLaw;
  if (name == "saturating") return LevelFormula::Family::Saturating;
  if (name == "affine") return LevelFormula::Family::Affine;
  throw ConfigError("unknown formula family '" + name + "' (power_law, saturating, affine)");
}

const char* family_to(LevelFormula::Family f) {
  switch (f) {
    case LevelFormula::Family::PowerLaw: return "power_law";
    case LevelFormula::Family::Saturating: return "saturating";
    case LevelFormula::Family::Affine: return "affine";
  }
  return "?";
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

template <class T>
T require(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing parameter '") + key + "'");
  return get_or<T>(j, key, T{});
}

struct Flags {
  std::string spec, config, out, family;
  double omega = 1.0, rel_tol = 1e-12, scale = 1.0, shape = 1.0;
  std::size_t n_cap = 1'000'000;
  std::vector<double> levels;

  std::size_t n_max = 10;
  double J = 0.0, gamma = 0.0, J_min = 0.0, J_max = 0.0, t_max = 0.0, gamma_window = 1e4;
  std::size_t points = 0, steps = 0;
  bool timing = false;
};

struct Context {
  json config;
  Spectrum spectrum = Spectrum::harmonic();
  TruncationPolicy policy;
  QuadraturePolicy quad;
  const json& params() const { return config.at("params"); }
};

void write_header(std::ostream& os, const std::string& command, const Context& ctx) {
  os << "# cohstate " << COHSTATE_VERSION << " " << command << "\n";
  os << "# config " << ctx.config.dump() << "\n";
}

int cmd_table(const Context& ctx, std::ostream& os) {
  const auto n_max = get_or<std::size_t>(ctx.params(), "n_max", 10);
  const MomentSequence seq = MomentSequence::build(ctx.spectrum, n_max);
  write_header(os, "table", ctx);
  os << "n,e_n,rho_n,log_rho_n\n";
  for (std::size_t n = 0; n <= n_max; ++n) {
    os << n << "," << format_number(ctx.spectrum.level(n)) << "," << format_number(seq.rho(n))
       << "," << format_number(seq.log_rho(n)) << "\n";
  }
  return kExitOk;
}

int cmd_state(const Context& ctx, std::ostream& os) {
  const double J = require<double>(ctx.params(), "J");
  const double gamma = get_or<double>(ctx.params(), "gamma", 0.0);
  const CoherentState s = coefficients(ctx.spectrum, J, gamma, ctx.policy);
  write_header(os, "state", ctx);
  os << "# J=" << format_number(J) << " gamma=" << format_number(gamma)
     << " N=" << s.last_index() << " tail_bound=" << format_number(s.tail_bound()) << "\n";
  os << "n,re_c,im_c,abs2_c\n";
  const auto c = s.coefficients();
  for (std::size_t n = 0; n < c.size(); ++n) {
    os << n << "," << format_number(c[n].real()) << "," << format_number(c[n].imag()) << ","
       << format_number(std::norm(c[n])) << "\n";
  }
  return kExitOk;
}

int cmd_scan(const Context& ctx, std::ostream& os) {
  const double lo = require<double>(ctx.params(), "J_min");
  const double hi = require<double>(ctx.params(), "J_max");
  const auto points = require<std::size_t>(ctx.params(), "points");
  if (points == 0 || hi < lo) throw ConfigError("scan needs points >= 1 and J_max >= J_min");

  const bool hydrogen = ctx.spectrum.kind() == SpectrumKind::Hydrogen1D;
  write_header(os, "scan", ctx);
  os << "J,mean_H,v,action_residual,one_form_residual,bound_margin\n";
  for (std::size_t k = 0; k < points; ++k) {
    const double J = points == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) /
                                                  static_cast<double>(points - 1);
    const ObservableReport r = observe(ctx.spectrum, J, ctx.policy);
    const double margin = hydrogen ? 6.0 * (1.0 - J) - r.v : std::nan("");
    os << format_number(J) << "," << format_number(r.mean_H) << "," << format_number(r.v) << ","
       << format_number(r.action_residual) << "," << format_number(r.one_form_residual) << ","
       << format_number(margin) << "\n";
  }
  return kExitOk;
}

int cmd_autocorr(const Context& ctx, std::ostream& os) {
  const double J = require<double>(ctx.params(), "J");
  const double t_max = require<double>(ctx.params(), "t_max");
  const auto steps = require<std::size_t>(ctx.params(), "steps");
  if (!(t_max > 0.0) || steps == 0) throw ConfigError("autocorr needs t_max > 0 and steps >= 1");
  const auto samples =
      autocorrelation(ctx.spectrum, J, TimeGrid::uniform(t_max, steps), ctx.policy);
  write_header(os, "autocorr", ctx);
  os << "t,P\n";
  for (const auto& s : samples) os << format_number(s.t) << "," << format_number(s.probability) << "\n";
  return kExitOk;
}

int cmd_verify(const Context& ctx, std::ostream& os, bool timing) {
  VerifyOptions opts;
  opts.n_max = get_or<std::size_t>(ctx.params(), "n_max", opts.n_max);
  opts.gamma_window = get_or<double>(ctx.params(), "gamma_window", opts.gamma_window);
  if (!(opts.gamma_window > 0.0)) throw ConfigError("gamma_window must be positive");

  const VerificationReport report = run_verification(ctx.spectrum, ctx.policy, ctx.quad, opts);
  write_header(os, "verify", ctx);
  os << "# reference_action=" << format_number(report.action_reference) << "\n";
  for (const auto& p : report.postulates) {
    os << p.name << " " << status_name(p.status);
    if (p.status != CheckStatus::Skipped) os << " worst_residual_over_tolerance=" << format_number(p.residual);
    if (timing) os << " runtime_s=" << format_number(p.runtime_seconds);
    if (!p.detail.empty()) os << " detail=\"" << p.detail << "\"";
    os << "\n";
  }
  os << "overall " << (report.pass() ? "PASS" : "FAIL") << "\n";
  os << "check,parameter,residual,tolerance,status\n";
  for (const auto& r : report.residuals) {
    os << r.check << "," << r.parameter << "," << format_number(r.residual) << ","
       << format_number(r.tolerance) << "," << (r.pass ? "PASS" : "FAIL") << "\n";
  }
  return report.pass() ? kExitOk : kExitFailure;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  // A bare spectrum block is accepted as shorthand.
  if (j.contains("kind")) j = json{{"spectrum", j}};
  return j;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x == 0.0 ? 0.0 : x);
  return buf;
}

Spectrum spectrum_from_json(const json& block, std::size_t n_validate) {
  if (!block.is_object()) throw ConfigError("spectrum block must be a JSON object");
  const auto kind = require<std::string>(block, "kind");
  const double omega = get_or<double>(block, "omega", 1.0);

  Spectrum spec = Spectrum::harmonic(omega);
  if (kind == "harmonic") {
    spec = Spectrum::harmonic(omega);
  } else if (kind == "hydrogen1d") {
    spec = Spectrum::hydrogen1d(omega);
  } else if (kind == "custom_table") {
    spec = Spectrum::table(require<std::vector<double>>(block, "levels"), omega);
  } else if (kind == "custom_formula") {
    LevelFormula f;
    f.family = family_from(require<std::string>(block, "family"));
    f.scale = get_or<double>(block, "scale", 1.0);
    f.shape = get_or<double>(block, "shape", 1.0);
    spec = Spectrum::formula(f, omega);
  } else {
    throw ConfigError("unknown spectrum kind '" + kind +
                      "' (harmonic, hydrogen1d, custom_table, custom_formula)");
  }
  const ValidationResult v = validate(spec, n_validate);
  if (!v.valid) throw ConfigError("invalid spectrum " + spec.name() + ": " + v.message);
  return spec;
}

json spectrum_to_json(const Spectrum& spec) {
  json j;
  j["omega"] = spec.omega();
  switch (spec.kind()) {
    case SpectrumKind::Harmonic: j["kind"] = "harmonic"; break;
    case SpectrumKind::Hydrogen1D: j["kind"] = "hydrogen1d"; break;
    case SpectrumKind::CustomTable:
      j["kind"] = "custom_table";
      j["levels"] = spec.levels();
      break;
    case SpectrumKind::CustomFormula:
      j["kind"] = "custom_formula";
      j["family"] = family_to(spec.level_formula()->family);
      j["scale"] = spec.level_formula()->scale;
      j["shape"] = spec.level_formula()->shape;
      break;
  }
  return j;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherent states for discrete spectra: construction, tables and postulate checks",
               "cohstate"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", COHSTATE_VERSION);

  Flags f;
  auto* o_spec = app.add_option("--spec", f.spec, "harmonic | hydrogen1d | custom_table | custom_formula");
  auto* o_omega = app.add_option("--omega", f.omega, "Frequency omega > 0");
  app.add_option("--config", f.config, "JSON config file; flags override it");
  auto* o_out = app.add_option("--out", f.out, "Write output to this path instead of stdout");
  auto* o_rel = app.add_option("--rel-tol", f.rel_tol, "Relative series tail tolerance");
  auto* o_cap = app.add_option("--n-cap", f.n_cap, "Maximum number of series terms");
  auto* o_levels = app.add_option("--levels", f.levels, "Levels for custom_table")->delimiter(',');
  auto* o_family = app.add_option("--family", f.family, "power_law | saturating | affine");
  auto* o_scale = app.add_option("--scale", f.scale, "Formula scale");
  auto* o_shape = app.add_option("--shape", f.shape, "Formula shape parameter");

  auto* table = app.add_subcommand("table", "CSV of n, e_n, rho_n, ln rho_n");
  auto* t_nmax = table->add_option("--n-max", f.n_max, "Last level index");

  auto* state = app.add_subcommand("state", "CSV of coherent-state coefficients");
  auto* s_J = state->add_option("--J", f.J, "Action label");
  auto* s_gamma = state->add_option("--gamma", f.gamma, "Angle label");

  auto* scan = app.add_subcommand("scan", "CSV of energy observables over a J grid");
  auto* c_min = scan->add_option("--J-min", f.J_min);
  auto* c_max = scan->add_option("--J-max", f.J_max);
  auto* c_pts = scan->add_option("--points", f.points);

  auto* autocorr = app.add_subcommand("autocorr", "CSV of the return probability P(t)");
  auto* a_J = autocorr->add_option("--J", f.J, "Action label");
  auto* a_tmax = autocorr->add_option("--t-max", f.t_max);
  auto* a_steps = autocorr->add_option("--steps", f.steps);

  auto* verify = app.add_subcommand("verify", "Check the four coherent-state postulates");
  auto* v_nmax = verify->add_option("--n-max", f.n_max, "Highest level in the unity check");
  auto* v_window = verify->add_option("--gamma-window", f.gamma_window, "Angle half-window");
  verify->add_flag("--timing", f.timing, "Append runtimes (output no longer reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  std::ofstream file;

  try {
    json cfg = f.config.empty() ? json::object() : load_config_file(f.config);
    json& sblock = cfg["spectrum"];
    if (sblock.is_null()) sblock = json::object();
    if (o_spec->count() && get_or<std::string>(sblock, "kind", "") != f.spec) {
      // A different kind drops kind-specific fields; omega carries over.
      json fresh{{"kind", f.spec}};
      if (sblock.contains("omega")) fresh["omega"] = sblock["omega"];
      sblock = std::move(fresh);
    }
    if (o_omega->count()) sblock["omega"] = f.omega;
    if (o_levels->count()) sblock["levels"] = f.levels;
    if (o_family->count()) sblock["family"] = f.family;
    if (o_scale->count()) sblock["scale"] = f.scale;
    if (o_shape->count()) sblock["shape"] = f.shape;
    if (!sblock.contains("kind")) throw ConfigError("no spectrum given (use --spec or --config)");

    json& trunc = cfg["truncation"];
    if (trunc.is_null()) trunc = json::object();
    if (o_rel->count()) trunc["rel_tol"] = f.rel_tol;
    if (o_cap->count()) trunc["n_cap"] = f.n_cap;

    json& params = cfg["params"];
    if (params.is_null()) params = json::object();
    auto set = [&](CLI::Option* o, const char* key, auto value) {
      if (o->count()) params[key] = value;
    };
    set(t_nmax, "n_max", f.n_max);
    set(s_J, "J", f.J);
    set(s_gamma, "gamma", f.gamma);
    set(c_min, "J_min", f.J_min);
    set(c_max, "J_max", f.J_max);
    set(c_pts, "points", f.points);
    set(a_J, "J", f.J);
    set(a_tmax, "t_max", f.t_max);
    set(a_steps, "steps", f.steps);
    set(v_nmax, "n_max", f.n_max);
    set(v_window, "gamma_window", f.gamma_window);

    Context ctx;
    ctx.spectrum = spectrum_from_json(sblock);
    ctx.policy.rel_tol = get_or<double>(trunc, "rel_tol", ctx.policy.rel_tol);
    ctx.policy.n_cap = get_or<std::size_t>(trunc, "n_cap", ctx.policy.n_cap);
    if (!(ctx.policy.rel_tol > 0.0) || ctx.policy.n_cap < 1) {
      throw ConfigError("truncation needs rel_tol > 0 and n_cap >= 1");
    }
    json& qblock = cfg["quadrature"];
    if (qblock.is_null()) qblock = json::object();
    ctx.quad.abs_tol = get_or<double>(qblock, "abs_tol", ctx.quad.abs_tol);
    ctx.quad.rel_tol = get_or<double>(qblock, "rel_tol", ctx.quad.rel_tol);
    if (!(ctx.quad.abs_tol > 0.0) || !(ctx.quad.rel_tol > 0.0)) {
      throw ConfigError("quadrature tolerances must be positive");
    }
    // Echo the fully resolved config, defaults included.
    sblock = spectrum_to_json(ctx.spectrum);
    trunc = json{{"rel_tol", ctx.policy.rel_tol}, {"n_cap", ctx.policy.n_cap}};
    qblock = json{{"abs_tol", ctx.quad.abs_tol}, {"rel_tol", ctx.quad.rel_tol}};
    ctx.config = std::move(cfg);

    std::string out_path = o_out->count() ? f.out : get_or<std::string>(ctx.config, "out", "");
    ctx.config.erase("out");
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw ConfigError("cannot open output file '" + out_path + "'");
    }
    std::ostream& os = out_path.empty() ? out : file;

    if (command == "table") return cmd_table(ctx, os);
    if (command == "state") return cmd_state(ctx, os);
    if (command == "scan") return cmd_scan(ctx, os);
    if (command == "autocorr") return cmd_autocorr(ctx, os);
    return cmd_verify(ctx, os, f.timing);
  } catch (const ConfigError& e) {
    err << "cohstate " << command << ": config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidSpectrum) {
      err << "cohstate " << command << ": config error: " << e.what() << "\n";
      return kExitUsage;
    }
    err << "cohstate " << command << ": " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "cohstate " << command << ": " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace cohstate::cli
