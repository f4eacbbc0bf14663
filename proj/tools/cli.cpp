#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "critjac/error.hpp"
#include "critjac/recurrence.hpp"
#include "critjac/solutions.hpp"
#include "critjac/spectral.hpp"

namespace critjac::cli {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kCommands = {"classify", "density", "jost", "poly", "eigs", "resolvent"};

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("cannot parse number '" + std::string(s) + "'");
  return v;
}

int exit_code_for(ErrorKind k) {
  if (is_regime_rejection(k)) return regime_rejected;
  if (k == ErrorKind::InvalidParameter) return bad_config;
  return numeric_failure;
}

SpectralPoint spectral_point(const RunConfig& cfg, const CriticalParams& cp) {
  const cplx z = cfg.z;
  if (cfg.side == "plus") return {z, Side::plus};
  if (cfg.side == "minus") return {z, Side::minus};
  if (cfg.side == "interior") return {z, Side::interior};
  if (z.imag() == 0.0 && cp.ac_set.closure_contains(z.real())) return {z, Side::plus};
  return {z, Side::interior};
}

JostOptions jost_options(const RunConfig& cfg) {
  JostOptions jo;
  jo.volterra.N = cfg.N;
  jo.volterra.tol = cfg.tol;
  return jo;
}

std::string side_name(Side s) {
  switch (s) {
    case Side::plus: return "plus";
    case Side::minus: return "minus";
    case Side::interior: return "interior";
  }
  return "interior";
}

json complex_json(cplx x) { return json::array({x.real(), x.imag()}); }

std::string spectrum_kind(SpectrumClass::Kind k) {
  switch (k) {
    case SpectrumClass::Kind::whole_line_ac: return "whole_line_ac";
    case SpectrumClass::Kind::all_discrete: return "all_discrete";
    case SpectrumClass::Kind::half_line_ac: return "half_line_ac";
  }
  return "";
}

std::string rational_string(const Rational& r) { return to_fraction_string(r); }

// Writes rows joined by commas.
struct CsvWriter {
  std::ostream& os;
  void row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) os << ',';
      os << c;
      first = false;
    }
    os << '\n';
  }
};

std::string fmt(double x) { return format_double(x); }
std::string fmt(long n) { return std::to_string(n); }

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const CriticalParams cp = classify(cfg.model.desc);
  const SpectrumClass sc = classify_spectrum(cp);
  json p = json::array();
  for (const auto& r : cp.p) p.push_back(rational_string(r));
  json j = {
      {"model", cfg.model.kind},
      {"gamma", cp.gamma},
      {"sigma", cp.sigma},
      {"alpha", cp.alpha},
      {"beta", cp.beta},
      {"tau", cp.tau},
      {"rho", cp.rho},
      {"nu", cp.nu},
      {"delta", cp.delta},
      {"varsigma", cp.varsigma},
      {"rho_exact", rational_string(cp.rho_exact)},
      {"varsigma_exact", rational_string(cp.varsigma_exact)},
      {"L", cp.L},
      {"p", p},
      {"log_phase", cp.log_phase},
      {"regime", to_string(cp.regime)},
      {"ac", sc.ac_interval},
      {"spectrum", spectrum_kind(sc.kind)},
      {"discrete_region", sc.discrete_region},
      {"spectrum_case", cp.spectrum_case},
      {"notes", cp.notes},
  };
  if (cfg.model.kind == "laguerre") j["p_laguerre"] = cfg.model.p;
  if (cfg.format == "json") {
    out << j.dump(2) << '\n';
  } else {
    CsvWriter w{out};
    w.row({"key", "value"});
    for (const auto& [k, v] : j.items()) w.row({k, v.is_string() ? v.get<std::string>() : v.dump()});
  }
  return ok;
}

struct DensityRow {
  double lambda = 0.0;
  std::optional<DensitySample> sample;
  std::string error;
  int code = ok;
};

int cmd_density(const RunConfig& cfg, const CoefficientModel& model, const CriticalParams& cp, std::ostream& out,
                std::ostream& err) {
  const std::vector<double> grid = lambda_grid(cfg);
  std::vector<DensityRow> rows(grid.size());
  SpectralOptions so;
  so.jost = jost_options(cfg);
  if (so.jost.n_start == 0) so.jost.n_start = common_n_start(grid, cp);
  auto work = [&](std::size_t i) {
    DensityRow& r = rows[i];
    r.lambda = grid[i];
    try {
      check_ac_point(r.lambda, cp, so.guard);
      r.sample = density(r.lambda, model, cp, so);
    } catch (const Error& e) {
      r.error = std::string(to_string(e.kind()));
      r.code = e.kind() == ErrorKind::InvalidParameter ? bad_config : numeric_failure;
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(cfg.threads), 1, grid.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < grid.size(); i += workers) work(i);
      });
    for (auto& t : pool) t.join();
  }
  // Continue eta along consecutive successful samples.
  const DensitySample* prev = nullptr;
  for (auto& r : rows) {
    if (!r.sample) continue;
    if (prev != nullptr) {
      const double two_pi = 2.0 * std::numbers::pi;
      r.sample->eta += two_pi * std::round((prev->eta - r.sample->eta) / two_pi);
    }
    prev = &*r.sample;
  }

  int code = ok;
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      code = std::max(code, r.code);
      err << "lambda=" << fmt(r.lambda) << ": " << r.error << '\n';
    }
  }
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      if (r.sample)
        arr.push_back({{"lambda", r.lambda},
                       {"xi", r.sample->xi},
                       {"kappa", r.sample->kappa},
                       {"eta", r.sample->eta},
                       {"w", r.sample->w}});
      else
        arr.push_back({{"lambda", r.lambda}, {"error", r.error}});
    }
    out << json({{"density", arr}}).dump(2) << '\n';
  } else {
    CsvWriter w{out};
    w.row({"lambda", "xi", "kappa", "eta", "w"});
    for (const auto& r : rows) {
      if (r.sample)
        w.row({fmt(r.lambda), fmt(r.sample->xi), fmt(r.sample->kappa), fmt(r.sample->eta), fmt(r.sample->w)});
      else
        w.row({fmt(r.lambda), "error:" + r.error, "", "", ""});
    }
  }
  return code;
}

int cmd_jost(const RunConfig& cfg, const CoefficientModel& model, const CriticalParams& cp, std::ostream& out) {
  const SpectralPoint zp = spectral_point(cfg, cp);
  const SolutionWindow f = jost(zp, cp, model, jost_options(cfg));
  const long lo = std::max(f.first, cfg.n0);
  const long stride = std::max(1L, cfg.stride);
  if (cfg.format == "json") {
    json rows = json::array();
    for (long n = lo; n <= f.last(); n += stride) {
      const LogComplex& v = f.at(n);
      rows.push_back({{"n", n}, {"re", v.value().real()}, {"im", v.value().imag()}, {"log_abs", v.log_abs()}});
    }
    out << json({{"z", complex_json(zp.z)},
                 {"side", side_name(zp.side)},
                 {"n_start", f.n_start},
                 {"N", f.N},
                 {"tail_bound", f.tail_bound},
                 {"omega", complex_json(omega(f))},
                 {"values", rows}})
               .dump(2)
        << '\n';
  } else {
    CsvWriter w{out};
    w.row({"n", "re", "im", "log_abs"});
    for (long n = lo; n <= f.last(); n += stride) {
      const LogComplex& v = f.at(n);
      w.row({fmt(n), fmt(v.value().real()), fmt(v.value().imag()), fmt(v.log_abs())});
    }
  }
  return ok;
}

int cmd_poly(const RunConfig& cfg, const CoefficientModel& model, const CriticalParams& cp, std::ostream& out) {
  const long lo = std::max(0L, cfg.n0);
  const long hi = cfg.N > 0 ? cfg.N : lo + 100;
  if (hi < lo) throw ConfigError("poly needs N >= n0");
  const PolynomialSequence P = poly_eval(model, cfg.z, hi);
  const bool on_ac = cfg.z.imag() == 0.0 && cp.ac_set.contains(cfg.z.real());
  const long stride = std::max(1L, cfg.stride);
  const JostOptions jo = jost_options(cfg);

  json rows = json::array();
  std::ostringstream csv;
  CsvWriter w{csv};
  if (on_ac) {
    SpectralOptions so;
    so.jost = jo;
    const double lambda = cfg.z.real();
    const AmplitudePhase ap = amplitude_phase(lambda, model, cp, so);
    const double wgt = wronskian_weight(lambda, cp);
    PhaseAccumulator phases(SpectralPoint::upper(lambda), cp, ap.n_start);
    w.row({"n", "recurrence", "asymptotic", "residual", "envelope"});
    for (long n = lo; n <= hi; n += stride) {
      const double rec = P.at(n).value().real();
      const bool in_range = n > ap.n_start;
      const double asym = in_range ? poly_asymptotic_ac(n, lambda, ap.kappa, ap.eta, cp, phases) : std::nan("");
      const double env = in_range ? ap.kappa / wgt * std::pow(static_cast<double>(n), -cp.rho) : std::nan("");
      const double res = std::abs(rec - asym);
      w.row({fmt(n), fmt(rec), fmt(asym), fmt(res), fmt(env)});
      rows.push_back({{"n", n}, {"recurrence", rec}, {"asymptotic", asym}, {"residual", res}, {"envelope", env}});
    }
  } else {
    const SpectralPoint zp = spectral_point(cfg, cp);
    const SolutionWindow f = jost(zp, cp, model, jo);
    const cplx Om = omega(f);
    PhaseAccumulator phases(zp, cp, f.n_start);
    w.row({"n", "re", "im", "asym_re", "asym_im", "rel_residual"});
    for (long n = lo; n <= hi; n += stride) {
      const LogComplex p = P.at(n);
      cplx asym(std::nan(""), std::nan(""));
      double res = std::nan("");
      if (n > f.n_start) {
        const LogComplex a = poly_asymptotic_regular(n, zp, Om, cp, phases);
        asym = a.value();
        res = std::abs((p / a).value() - 1.0);
      }
      w.row({fmt(n), fmt(p.value().real()), fmt(p.value().imag()), fmt(asym.real()), fmt(asym.imag()), fmt(res)});
      rows.push_back({{"n", n},
                      {"re", p.value().real()},
                      {"im", p.value().imag()},
                      {"asym_re", asym.real()},
                      {"asym_im", asym.imag()},
                      {"rel_residual", res}});
    }
  }
  if (cfg.format == "json")
    out << json({{"z", complex_json(cfg.z)}, {"values", rows}}).dump(2) << '\n';
  else
    out << csv.str();
  return ok;
}

int cmd_eigs(const RunConfig& cfg, const CoefficientModel& model, const CriticalParams& cp, std::ostream& out) {
  if (!cfg.lambda_min || !cfg.lambda_max) throw ConfigError("eigs needs --lambda-min and --lambda-max");
  DiscreteOptions opts;
  opts.jost = jost_options(cfg);
  const DiscreteSpectrum ds = discrete_eigenvalues(*cfg.lambda_min, *cfg.lambda_max, model, cp, opts);
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& e : ds.eigenvalues)
      arr.push_back(
          {{"omega_zero", e.omega_zero}, {"matrix", e.matrix}, {"deviation", e.deviation}, {"agrees", e.agrees}});
    out << json({{"interval", {*cfg.lambda_min, *cfg.lambda_max}},
                 {"matrix_N", ds.matrix_N},
                 {"jost_n_start", ds.jost_n_start},
                 {"jost_N", ds.jost_N},
                 {"eigenvalues", arr}})
               .dump(2)
        << '\n';
  } else {
    CsvWriter w{out};
    w.row({"omega_zero", "matrix", "deviation", "agrees"});
    for (const auto& e : ds.eigenvalues)
      w.row({fmt(e.omega_zero), fmt(e.matrix), fmt(e.deviation), e.agrees ? "1" : "0"});
  }
  return ok;
}

int cmd_resolvent(const RunConfig& cfg, const CoefficientModel& model, const CriticalParams& cp, std::ostream& out) {
  SpectralOptions so;
  so.jost = jost_options(cfg);
  const SpectralPoint zp = spectral_point(cfg, cp);
  const cplx r = resolvent_element(cfg.n, cfg.m, zp, model, cp, so);
  if (cfg.format == "json") {
    out << json({{"n", cfg.n}, {"m", cfg.m}, {"z", complex_json(zp.z)}, {"side", side_name(zp.side)},
                 {"value", complex_json(r)}})
               .dump(2)
        << '\n';
  } else {
    CsvWriter w{out};
    w.row({"n", "m", "re", "im"});
    w.row({fmt(cfg.n), fmt(cfg.m), fmt(r.real()), fmt(r.imag())});
  }
  return ok;
}

std::vector<double> json_array(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw ConfigError(std::string("table model needs array '") + key + "'");
  return j[key].get<std::vector<double>>();
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::complex<double> parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw ConfigError("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_number(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](std::string_view t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_number(t[0] == '+' ? t.substr(1) : t);
  };
  if (split == std::string::npos) return {0.0, imag_part(s)};
  const std::string_view sv(s);
  return {parse_number(sv.substr(0, split)), imag_part(sv.substr(split))};
}

ModelSpec model_from_json(const json& j) {
  ModelSpec m;
  if (j.is_string()) {
    m.kind = j.get<std::string>();
    return m;
  }
  if (!j.is_object()) throw ConfigError("model must be a string or an object");
  m.kind = j.value("kind", std::string("laguerre"));
  m.p = j.value("p", 0.0);
  m.desc.sigma = j.value("sigma", m.desc.sigma);
  m.desc.alpha = j.value("alpha", m.desc.alpha);
  m.desc.beta = j.value("beta", m.desc.beta);
  m.desc.gamma = j.value("gamma", m.desc.gamma);
  if (m.kind == "table") {
    m.a = json_array(j, "a");
    m.b = json_array(j, "b");
  }
  return m;
}

void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    if (j.contains("command")) cfg.command = j["command"].get<std::string>();
    if (j.contains("model")) {
      const ModelSpec m = model_from_json(j["model"]);
      cfg.model.kind = m.kind;
      if (j["model"].is_object()) cfg.model = m;
    }
    if (j.contains("p")) cfg.model.p = j["p"].get<double>();
    if (j.contains("sigma")) cfg.model.desc.sigma = j["sigma"].get<double>();
    if (j.contains("alpha")) cfg.model.desc.alpha = j["alpha"].get<double>();
    if (j.contains("beta")) cfg.model.desc.beta = j["beta"].get<double>();
    if (j.contains("gamma")) cfg.model.desc.gamma = j["gamma"].get<double>();
    if (j.contains("z")) {
      const json& z = j["z"];
      if (z.is_array() && z.size() == 2)
        cfg.z = {z[0].get<double>(), z[1].get<double>()};
      else if (z.is_number())
        cfg.z = {z.get<double>(), 0.0};
      else
        cfg.z = parse_complex(z.get<std::string>());
    }
    if (j.contains("side")) cfg.side = j["side"].get<std::string>();
    if (j.contains("lambda_min")) cfg.lambda_min = j["lambda_min"].get<double>();
    if (j.contains("lambda_max")) cfg.lambda_max = j["lambda_max"].get<double>();
    if (j.contains("lambda_step")) cfg.lambda_step = j["lambda_step"].get<double>();
    if (j.contains("n0")) cfg.n0 = j["n0"].get<long>();
    if (j.contains("N")) cfg.N = j["N"].get<long>();
    if (j.contains("n")) cfg.n = j["n"].get<long>();
    if (j.contains("m")) cfg.m = j["m"].get<long>();
    if (j.contains("stride")) cfg.stride = j["stride"].get<long>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

void validate(const RunConfig& cfg) {
  if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end())
    throw ConfigError("unknown command '" + cfg.command + "'");
  const auto& k = cfg.model.kind;
  if (k != "laguerre" && k != "power" && k != "table") throw ConfigError("unknown model kind '" + k + "'");
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("format must be csv or json");
  if (cfg.side != "auto" && cfg.side != "plus" && cfg.side != "minus" && cfg.side != "interior")
    throw ConfigError("side must be auto, plus, minus or interior");
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) throw ConfigError("tolerance must be positive");
  if (cfg.N < 0 || cfg.n0 < 0 || cfg.n < 0 || cfg.m < 0) throw ConfigError("indices must be non-negative");
  if (cfg.threads < 1) throw ConfigError("threads must be at least 1");
  if (!std::isfinite(cfg.z.real()) || !std::isfinite(cfg.z.imag())) throw ConfigError("z must be finite");
  for (const auto& v : {cfg.lambda_min, cfg.lambda_max})
    if (v && !std::isfinite(*v)) throw ConfigError("grid bounds must be finite");
  if (cfg.lambda_min && cfg.lambda_max && *cfg.lambda_max < *cfg.lambda_min)
    throw ConfigError("grid must be monotone: lambda-max < lambda-min");
  if (!(cfg.lambda_step > 0.0) || !std::isfinite(cfg.lambda_step)) throw ConfigError("lambda-step must be positive");
}

std::vector<double> lambda_grid(const RunConfig& cfg) {
  if (!cfg.lambda_min) throw ConfigError("grid needs --lambda-min");
  const double lo = *cfg.lambda_min;
  const double hi = cfg.lambda_max.value_or(lo);
  const double span = (hi - lo) / cfg.lambda_step;
  if (span > 1e6) throw ConfigError("grid has more than 10^6 points");
  const long count = static_cast<long>(std::floor(span + 1e-9)) + 1;
  std::vector<double> g(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo + static_cast<double>(i) * cfg.lambda_step;
  return g;
}

CoefficientModel build_model(const ModelSpec& spec) {
  if (spec.kind == "laguerre") return laguerre_model(spec.p);
  classify(spec.desc);
  if (spec.kind == "power") return power_model(spec.desc.sigma, spec.desc.alpha, spec.desc.beta, spec.desc.gamma);
  return table_model(spec.a, spec.b, spec.desc);
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    if (cfg.command == "classify") {
      RunConfig c = cfg;
      if (c.model.kind == "laguerre") c.model.desc = build_model(c.model).descriptor();
      else classify(c.model.desc);
      return cmd_classify(c, out);
    }
    const CoefficientModel model = build_model(cfg.model);
    const CriticalParams cp = classify(model);
    if (cfg.command == "density") return cmd_density(cfg, model, cp, out, err);
    if (cfg.command == "jost") return cmd_jost(cfg, model, cp, out);
    if (cfg.command == "poly") return cmd_poly(cfg, model, cp, out);
    if (cfg.command == "eigs") return cmd_eigs(cfg, model, cp, out);
    return cmd_resolvent(cfg, model, cp, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return bad_config;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jost solutions and spectral data for critical Jacobi matrices"};
  std::string command, config_path, model, z, side, out_path, format;
  double p = 0, sigma = 0, alpha = 0, beta = 0, gamma = 0, lmin = 0, lmax = 0, lstep = 0, tol = 0;
  long n0 = 0, N = 0, n = 0, m = 0, stride = 1;
  int threads = 1;
  app.add_option("command", command, "classify | density | jost | poly | eigs | resolvent")->required();
  auto* o_config = app.add_option("--config", config_path, "JSON run configuration; flags override it");
  auto* o_model = app.add_option("--model", model, "laguerre | power | table, or a JSON model file");
  auto* o_p = app.add_option("--p", p, "Laguerre parameter");
  auto* o_sigma = app.add_option("--sigma", sigma);
  auto* o_alpha = app.add_option("--alpha", alpha);
  auto* o_beta = app.add_option("--beta", beta);
  auto* o_gamma = app.add_option("--gamma", gamma);
  auto* o_z = app.add_option("--z", z, "spectral parameter, e.g. 1, 0.5+2i, -1-1e-3i");
  auto* o_side = app.add_option("--side", side, "auto | plus | minus | interior");
  auto* o_lmin = app.add_option("--lambda-min", lmin);
  auto* o_lmax = app.add_option("--lambda-max", lmax);
  auto* o_lstep = app.add_option("--lambda-step", lstep);
  auto* o_n0 = app.add_option("--n0", n0, "first index written (jost, poly)");
  auto* o_N = app.add_option("--N", N, "truncation index; 0 selects it from the tolerance");
  auto* o_n = app.add_option("--n", n, "row index (resolvent)");
  auto* o_m = app.add_option("--m", m, "column index (resolvent)");
  auto* o_stride = app.add_option("--stride", stride);
  auto* o_tol = app.add_option("--tol", tol);
  auto* o_out = app.add_option("--out", out_path);
  auto* o_format = app.add_option("--format", format, "csv | json");
  auto* o_threads = app.add_option("--threads", threads);

  std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return bad_config;
  }

  RunConfig cfg;
  try {
    if (o_config->count() > 0) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open " + config_path);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
      apply_json(cfg, j);
    }
    cfg.command = command;
    if (o_model->count() > 0) {
      if (model == "laguerre" || model == "power" || model == "table") {
        cfg.model.kind = model;
      } else {
        std::ifstream in(model);
        if (!in) throw ConfigError("unknown model '" + model + "'");
        try {
          cfg.model = model_from_json(json::parse(in));
        } catch (const json::exception& e) {
          throw ConfigError(std::string("model file: ") + e.what());
        }
      }
    }
    if (o_p->count() > 0) cfg.model.p = p;
    if (o_sigma->count() > 0) cfg.model.desc.sigma = sigma;
    if (o_alpha->count() > 0) cfg.model.desc.alpha = alpha;
    if (o_beta->count() > 0) cfg.model.desc.beta = beta;
    if (o_gamma->count() > 0) cfg.model.desc.gamma = gamma;
    if (o_z->count() > 0) cfg.z = parse_complex(z);
    if (o_side->count() > 0) cfg.side = side;
    if (o_lmin->count() > 0) cfg.lambda_min = lmin;
    if (o_lmax->count() > 0) cfg.lambda_max = lmax;
    if (o_lstep->count() > 0) cfg.lambda_step = lstep;
    if (o_n0->count() > 0) cfg.n0 = n0;
    if (o_N->count() > 0) cfg.N = N;
    if (o_n->count() > 0) cfg.n = n;
    if (o_m->count() > 0) cfg.m = m;
    if (o_stride->count() > 0) cfg.stride = stride;
    if (o_tol->count() > 0) cfg.tol = tol;
    if (o_out->count() > 0) cfg.out = out_path;
    if (o_format->count() > 0) cfg.format = format;
    if (o_threads->count() > 0) cfg.threads = threads;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return bad_config;
  }

  if (cfg.out.empty()) return execute(cfg, out, err);
  std::ostringstream buf;
  const int code = execute(cfg, buf, err);
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) {
    err << "config error: cannot write " << cfg.out << '\n';
    return bad_config;
  }
  file << buf.str();
  return code;
}

}  // namespace critjac::cli
