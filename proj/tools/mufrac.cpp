// mufrac command-line driver. Every run echoes its resolved configuration as
// one JSON line on stderr; `mufrac run --config <file>` replays a saved one.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "mufrac/mufrac.hpp"

using namespace mufrac;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kConfigError = 2;

// ---------------------------------------------------------------------------
// Parsing helpers

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

/// "a:b:step" as a uniform grid, otherwise a comma list.
std::vector<double> parse_grid(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() == 3) return uniform_grid(parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2]));
  if (s.find(':') != std::string::npos) throw InvalidArgument("range must look like a:b:step, got '" + s + "'");
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(parse_number(p));
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  const auto parts = split(s, ':');
  if (parts.size() == 2) {
    for (int v = std::stoi(parts[0]); v <= std::stoi(parts[1]); ++v) out.push_back(v);
    return out;
  }
  for (const auto& p : split(s, ',')) out.push_back(std::stoi(p));
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

/// "jmin:jmax"; "auto" or an empty bound falls back to the given defaults.
std::pair<int, int> parse_jrange(const std::string& s, int lo, int hi) {
  if (s == "auto") return {lo, hi};
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw InvalidArgument("scale range must look like jmin:jmax, got '" + s + "'");
  const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
  return {a.empty() ? lo : std::stoi(a), b.empty() ? hi : std::stoi(b)};
}

/// Points as "x0,x1;y0,y1" (semicolon between points).
std::vector<std::vector<double>> parse_points(const std::string& s, int d) {
  std::vector<std::vector<double>> out;
  for (const auto& p : split(s, ';')) {
    std::vector<double> x;
    for (const auto& c : split(p, ',')) x.push_back(parse_number(c));
    if (static_cast<int>(x.size()) != d) throw InvalidArgument("point '" + p + "' does not have d coordinates");
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<std::vector<double>> sample_points(const std::string& points, int grid, int d) {
  if (!points.empty()) return parse_points(points, d);
  return grid_points(d, grid);
}

Boundary parse_boundary(const std::string& s) { return s == "periodic" ? Boundary::periodic : Boundary::clipped; }
ExponentMethod parse_method(const std::string& s) { return s == "min" ? ExponentMethod::min : ExponentMethod::regression; }

std::vector<double> read_samples(const std::string& path) {
  std::istringstream in(detail::read_text(path));
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(parse_number(line));
  return out;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    detail::write_text(path, text);
  }
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

json witness_json(const std::optional<PropertyWitness>& w) {
  if (!w) return nullptr;
  json out = {{"first", {{"j", w->first.j}, {"k", w->first.k}}}, {"ratio", finite_or_null(w->ratio)}};
  if (w->second) out["second"] = {{"j", w->second->j}, {"k", w->second->k}};
  return out;
}

json report_json(const PropertyReport& r) {
  return {{"holds", r.holds},     {"C", finite_or_null(r.C)},         {"s1", r.s1},
          {"s2", r.s2},           {"c_mu", finite_or_null(r.c_mu)},   {"phi_c", finite_or_null(r.phi_c)},
          {"growth", finite_or_null(r.growth)}, {"witness", witness_json(r.witness)}, {"note", r.note}};
}

// ---------------------------------------------------------------------------
// Option state shared by all subcommands

struct Options {
  std::string out;
  std::uint64_t seed = 1;

  // environments
  std::string kind = "power_law";
  int d = 1;
  int J = 10;
  double alpha = 1.0;
  std::string weights = "0.3,0.7";
  double wmin = 0.2;
  double wmax = 0.8;
  std::string env;
  double theta = 0.5;

  // estimators
  std::string qgrid;
  std::string hgrid = "0:3:0.05";
  std::string jrange = "auto";
  std::string tau_method = "regression";
  double delta = 0.0;
  double smf_tol = -1.0;

  // fields
  std::string field;
  std::string other;
  std::string samples;
  std::string filter = "db4";
  std::string q = "inf";
  std::string p = "inf";
  std::string p_finite = "2";
  std::string field_kind = "saturating";
  double decay = 0.25;
  int d1 = 0;
  std::string boundary = "clipped";
  std::string method = "regression";
  std::string points;
  int grid = 64;

  // norms
  std::string norm_kind = "wavelet_besov";
  int n = 2;
  int jmax = -1;
  double eps = 0.0;
  double s1 = -1.0;
  int terms = 8;
  std::string eps_list;
  std::string resolutions = "9,10,11";
  double stability = 2.0;
  bool override_hypothesis = false;
  std::string t_exponents = "4:7";
  double max_spread = 4.0;

  // prevalence
  int betas = 50;
  double slack = 0.1;
  double min_fraction = 0.95;
  std::string config;
};

using Handler = std::function<int(Options&)>;

// ---------------------------------------------------------------------------
// Commands

int cmd_env_gen(Options& o) {
  CapacityTree mu = [&] {
    if (o.kind == "power_law") return power_law_env(o.d, o.J, o.alpha);
    if (o.kind == "cascade") {
      const auto w = parse_grid(o.weights);
      return cascade_env(o.d, o.J, w);
    }
    if (o.kind == "random") return bounded_random_env(o.d, o.J, o.wmin, o.wmax, o.seed);
    throw InvalidArgument("unknown environment kind '" + o.kind + "'");
  }();
  emit(o.out, to_json(mu).dump() + "\n");
  return kOk;
}

int cmd_env_check(Options& o) {
  const auto mu = load_capacity(o.env);
  const auto P = check_P(mu);
  const auto dbl = check_doubling(mu);
  const auto P2 = check_P2(mu);
  json ad = json::object();
  bool any_ad = false;
  for (auto [name, fam] : {std::pair{"constant", PhiFamily::constant}, std::pair{"log_log", PhiFamily::log_log},
                           std::pair{"log_power", PhiFamily::log_power}}) {
    const auto r = check_almost_doubling(mu, fam, o.theta);
    any_ad = any_ad || r.holds;
    ad[name] = report_json(r);
  }
  json rep = {{"P", report_json(P)}, {"doubling", report_json(dbl)}, {"almost_doubling", ad}, {"P2", report_json(P2)}};
  emit(o.out, rep.dump(2) + "\n");
  return P.holds && dbl.holds && any_ad && P2.holds ? kOk : kCheckFailed;
}

int cmd_tau(Options& o) {
  const auto mu = load_capacity(o.env);
  const auto q = parse_grid(o.qgrid.empty() ? "-5:5:0.25" : o.qgrid);
  const auto [jmin, jmax] = parse_jrange(o.jrange, 2, mu.depth());
  const auto t = tau(mu, q, jmin, jmax, o.tau_method == "per_level_min" ? TauMethod::per_level_min : TauMethod::regression);
  std::ostringstream os;
  write_tau_csv(os, t);
  emit(o.out, os.str());
  return kOk;
}

int cmd_legendre(Options& o) {
  const auto mu = load_capacity(o.env);
  const auto q = parse_grid(o.qgrid.empty() ? "-30:30:0.05" : o.qgrid);
  const auto [jmin, jmax] = parse_jrange(o.jrange, 2, mu.depth());
  const auto s = legendre(tau(mu, q, jmin, jmax), parse_grid(o.hgrid));
  std::ostringstream os;
  write_spectrum_csv(os, s);
  emit(o.out, os.str());
  return kOk;
}

int cmd_spectrum(Options& o) {
  const auto mu = load_capacity(o.env);
  const auto h = parse_grid(o.hgrid);
  const auto [jmin, jmax] = parse_jrange(o.jrange, 4, mu.depth());
  const double delta = o.delta > 0.0 ? o.delta : default_bin_half_width(h);
  std::ostringstream os;
  write_spectrum_csv(os, coarse_spectrum(mu, h, delta, jmin, jmax));
  emit(o.out, os.str());
  if (o.smf_tol < 0.0) return kOk;
  SmfParams params;
  params.hgrid = h;
  params.delta = delta;
  params.jmin = jmin;
  params.jmax = jmax;
  if (!o.qgrid.empty()) params.qgrid = parse_grid(o.qgrid);
  const auto smf = smf_check(mu, o.smf_tol, params);
  std::cerr << json{{"smf_distance", finite_or_null(smf.distance.distance)},
                    {"compared", smf.distance.compared},
                    {"holds", smf.holds}}.dump()
            << "\n";
  return smf.holds ? kOk : kCheckFailed;
}

int cmd_synth(Options& o) {
  const auto mu = load_capacity(o.env);
  const int J = o.J;
  WaveletField f = [&] {
    if (o.field_kind == "saturating") return saturating_field(mu, parse_number(o.q), J, o.filter);
    if (o.field_kind == "random") return random_bounded_field(mu, J, o.seed, parse_number(o.p), o.decay, o.filter);
    throw InvalidArgument("unknown field kind '" + o.field_kind + "' (saturating | random)");
  }();
  if (o.d1 > 0) {
    if (o.out.empty()) throw InvalidArgument("--split needs --out <directory>");
    save_split_family(split_family(f, o.d1), o.out);
    return kOk;
  }
  emit(o.out, to_json(f).dump() + "\n");
  return kOk;
}

int cmd_analyze(Options& o) {
  const auto s = read_samples(o.samples);
  auto f = analyze(s, o.d, filter(o.filter));
  emit(o.out, to_json(f).dump() + "\n");
  return kOk;
}

int cmd_synthesize(Options& o) {
  const auto f = load_field(o.field);
  std::ostringstream os;
  for (double v : synthesize(f, filter(f.filter_name.empty() ? o.filter : f.filter_name))) os << format_double(v) << '\n';
  emit(o.out, os.str());
  return kOk;
}

int cmd_leaders(Options& o) {
  const auto L = compute_leaders(load_field(o.field), parse_boundary(o.boundary));
  emit(o.out, to_json(L).dump() + "\n");
  return kOk;
}

int cmd_exponent(Options& o) {
  const auto f = load_field(o.field);
  const auto L = compute_leaders(f, parse_boundary(o.boundary));
  const auto [jmin, jmax] = parse_jrange(o.jrange, 4, f.J - 1);
  const auto method = parse_method(o.method);
  std::vector<ExponentRow> rows;
  for (auto& x : sample_points(o.points, o.grid, f.d))
    rows.push_back({x, pointwise_exponent(L, x, jmin, jmax, method), method, jmin, jmax});
  std::ostringstream os;
  write_exponent_csv(os, rows, f.d);
  emit(o.out, os.str());
  return kOk;
}

// Prints a note when the filter has too few vanishing moments for mu.
void warn_regularity(const WaveletField& f, const CapacityTree& mu, const Options& o, double p) {
  const auto& flt = filter(f.filter_name.empty() ? o.filter : f.filter_name);
  if (auto w = regularity_warning(flt, check_P(mu).s2, f.d, p)) std::cerr << "warning: " << *w << "\n";
}

std::vector<double> samples_of(const WaveletField& f, const Options& o) {
  return synthesize(f, filter(f.filter_name.empty() ? o.filter : f.filter_name));
}

int cmd_norms(Options& o) {
  const auto f = load_field(o.field);
  const auto mu0 = load_capacity(o.env);
  const auto mu = o.eps > 0.0 ? transform_shift(mu0, -o.eps) : mu0;
  const double p = parse_number(o.p), q = parse_number(o.q);
  if (o.norm_kind != "wavelet_besov") warn_regularity(f, mu0, o, p);
  json rep = {{"kind", o.norm_kind},
              {"params", {{"p", o.p}, {"q", o.q}, {"n", o.n}, {"eps", o.eps}, {"J", f.J}}},
              {"resolution_scan", json::array()},
              {"ratios", json::object()}};
  if (o.norm_kind == "wavelet_besov") {
    rep["value"] = finite_or_null(besov_wavelet_seminorm(f, mu, p, q).value);
    for (int J = std::max(2, f.J - 2); J <= f.J; ++J)
      rep["resolution_scan"].push_back({J, finite_or_null(besov_wavelet_seminorm(truncated(f, J), mu, p, q).value)});
  } else if (o.norm_kind == "btilde") {
    if (o.other.empty()) throw InvalidArgument("btilde needs --other <field>");
    const double s1 = o.s1 > 0.0 ? o.s1 : check_P(mu0).s1;
    const auto b = btilde_metric(f, load_field(o.other), mu0, p, q, s1, o.terms, filter(f.filter_name.empty() ? o.filter : f.filter_name));
    rep["value"] = b.value;
    rep["params"]["s1"] = s1;
    rep["params"]["terms"] = {b.n_first, b.n_last};
    rep["tail_bound"] = b.tail_bound;
  } else {
    auto value_at = [&](const WaveletField& g) {
      const auto s = samples_of(g, o);
      const int jmax = o.jmax > 0 ? std::min(o.jmax, g.J - 3) : g.J - 3;
      if (o.norm_kind == "lp") return lp_norm_samples(s, g.d, p).value;
      if (o.norm_kind == "modulus_besov") return besov_modulus_seminorm(s, g.d, mu, p, q, o.n, jmax).value;
      if (o.norm_kind == "sobolev") return sobolev_seminorm(s, g.d, mu, p, o.n, jmax).value;
      throw InvalidArgument("unknown norm kind '" + o.norm_kind + "'");
    };
    rep["value"] = finite_or_null(value_at(f));
    for (int J = std::max(4, f.J - 2); J <= f.J; ++J)
      rep["resolution_scan"].push_back({J, finite_or_null(value_at(truncated(f, J)))});
  }
  const auto& scan = rep["resolution_scan"];
  for (std::size_t i = 1; i < scan.size(); ++i) {
    if (!scan[i][1].is_number() || !scan[i - 1][1].is_number() || scan[i - 1][1].get<double>() == 0.0) continue;
    rep["ratios"][std::to_string(scan[i][0].get<int>()) + "/" + std::to_string(scan[i - 1][0].get<int>())] =
        scan[i][1].get<double>() / scan[i - 1][1].get<double>();
  }
  emit(o.out, rep.dump(2) + "\n");
  return kOk;
}

int cmd_embed(Options& o) {
  const auto f = load_field(o.field);
  const auto mu = load_capacity(o.env);
  warn_regularity(f, mu, o, parse_number(o.p_finite));
  const auto eps = o.eps_list.empty() ? default_eps_grid(check_P(mu).s1) : parse_grid(o.eps_list);
  const auto rep = embedding_report(f, mu, parse_number(o.p_finite), eps, parse_int_list(o.resolutions),
                                    filter(f.filter_name.empty() ? o.filter : f.filter_name), o.n, o.stability,
                                    o.override_hypothesis);
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"J", r.J},
                    {"besov", r.besov},
                    {"sobolev", r.sobolev},
                    {"besov_tilde", r.besov_tilde},
                    {"ratio_sobolev_besov", finite_or_null(r.ratio_sobolev_besov)}});
  json out = {{"eps", rep.eps},
              {"rows", rows},
              {"spread_sobolev_besov", finite_or_null(rep.spread_sobolev_besov)},
              {"spread_tilde_sobolev", rep.spread_tilde_sobolev},
              {"verdict", rep.verdict},
              {"hypothesis_violated", rep.hypothesis_violated}};
  emit(o.out, out.dump(2) + "\n");
  return rep.verdict == "stable" ? kOk : kCheckFailed;
}

int cmd_omega(Options& o) {
  const auto f = load_field(o.field);
  const auto mu = load_capacity(o.env);
  std::vector<double> ts;
  for (int k : parse_int_list(o.t_exponents)) ts.push_back(std::ldexp(1.0, -k));
  warn_regularity(f, mu, o, parse_number(o.p_finite));
  const auto s = samples_of(f, o);
  const auto rep = omega_bound_check(s, f.d, mu, o.n, parse_number(o.p_finite), o.eps > 0.0 ? o.eps : 0.1, ts);
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"t", r.t}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"C", finite_or_null(r.C)}});
  json out = {{"rows", rows}, {"spread", finite_or_null(rep.spread)}, {"degenerate", rep.degenerate}};
  emit(o.out, out.dump(2) + "\n");
  return !rep.degenerate && rep.spread <= o.max_spread ? kOk : kCheckFailed;
}

int cmd_prevalence(Options& o) {
  const auto mu = load_capacity(o.env);
  const auto f = o.field.empty() ? WaveletField::zeros(mu.dim(), o.J, o.filter) : load_field(o.field);
  TrialConfig cfg;
  cfg.q = parse_number(o.q);
  cfg.d1 = o.d1 > 0 ? o.d1 : 2 * f.d + 1;
  cfg.num_beta = o.betas;
  cfg.seed = o.seed;
  cfg.points = sample_points(o.points, o.grid, f.d);
  std::tie(cfg.jmin, cfg.jmax) = parse_jrange(o.jrange, 4, f.J - 1);
  cfg.slack = o.slack;
  cfg.method = parse_method(o.method);
  cfg.boundary = parse_boundary(o.boundary);
  const auto rep = prevalence_trial(f, mu, cfg);
  json out = {{"fraction", rep.fraction},
              {"num_beta", cfg.num_beta},
              {"pass", rep.pass},
              {"betas", rep.betas},
              {"upper_dims", rep.upper_dims},
              {"lower_dims", rep.lower_dims},
              {"note", rep.note}};
  emit(o.out, out.dump(2) + "\n");
  return rep.fraction >= o.min_fraction ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// Wiring

struct Command {
  CLI::App* app = nullptr;
  std::string path;
  Handler handler;
};

void add_out(CLI::App* s, Options& o, const std::string& what) {
  s->add_option("-o,--out", o.out, what + " (default: stdout)");
}

std::vector<Command> build(CLI::App& app, Options& o) {
  std::vector<Command> cmds;
  auto env = app.add_subcommand("env", "Environment generation and structural checks");
  env->require_subcommand(1);

  auto gen = env->add_subcommand("gen", "Generate a capacity tree");
  gen->add_option("--kind", o.kind, "power_law | cascade | random")->capture_default_str();
  gen->add_option("--d", o.d, "Dimension (1..3)")->capture_default_str();
  gen->add_option("--J", o.J, "Tree depth (scales 0..J)")->capture_default_str();
  gen->add_option("--alpha", o.alpha, "power_law: mass 2^(-alpha j) per cube")->capture_default_str();
  gen->add_option("--weights", o.weights, "cascade: 2^d comma-separated weights summing to 1")->capture_default_str();
  gen->add_option("--wmin", o.wmin, "random: lower bound of the split weights")->capture_default_str();
  gen->add_option("--wmax", o.wmax, "random: upper bound of the split weights")->capture_default_str();
  gen->add_option("--seed", o.seed, "random: seed")->capture_default_str();
  add_out(gen, o, "Capacity JSON path");
  cmds.push_back({gen, "env gen", cmd_env_gen});

  auto check = env->add_subcommand("check", "Check (P), doubling, almost doubling (three phi families) and (P2); exit 1 if any fails");
  check->add_option("--env", o.env, "Capacity JSON")->required();
  check->add_option("--theta", o.theta, "Exponent of the log_power phi family, in (0,1)")->capture_default_str();
  add_out(check, o, "Report JSON path");
  cmds.push_back({check, "env check", cmd_env_check});

  auto t = app.add_subcommand("tau", "Scaling function tau(q) as CSV q,tau,slope_residual");
  t->add_option("--env", o.env, "Capacity JSON")->required();
  t->add_option("--q", o.qgrid, "q grid, a:b:step or comma list (default -5:5:0.25)");
  t->add_option("--j", o.jrange, "Scale range jmin:jmax (default 2:depth)")->capture_default_str();
  t->add_option("--method", o.tau_method, "regression | per_level_min")->capture_default_str();
  add_out(t, o, "CSV path");
  cmds.push_back({t, "tau", cmd_tau});

  auto leg = app.add_subcommand("legendre", "Legendre spectrum of tau as CSV h,sigma");
  leg->add_option("--env", o.env, "Capacity JSON")->required();
  leg->add_option("--q", o.qgrid, "q grid (default -30:30:0.05; must span [-5,5])");
  leg->add_option("--hgrid", o.hgrid, "h grid, a:b:step")->capture_default_str();
  leg->add_option("--j", o.jrange, "tau scale range jmin:jmax (default 2:depth)")->capture_default_str();
  add_out(leg, o, "CSV path");
  cmds.push_back({leg, "legendre", cmd_legendre});

  auto sp = app.add_subcommand("spectrum", "Coarse-grained spectrum as CSV h,sigma; --smf-tol also compares with the Legendre spectrum");
  sp->add_option("--env", o.env, "Capacity JSON")->required();
  sp->add_option("--hgrid", o.hgrid, "h grid, a:b:step")->capture_default_str();
  sp->add_option("--delta", o.delta, "Bin half-width (0: 1.5 x grid spacing)")->capture_default_str();
  sp->add_option("--j", o.jrange, "Scale range jmin:jmax (default 4:depth)")->capture_default_str();
  sp->add_option("--q", o.qgrid, "q grid for the comparison (default -30:30:0.05)");
  sp->add_option("--smf-tol", o.smf_tol, "Sup-distance tolerance on interior bins (negative: no comparison)")->capture_default_str();
  add_out(sp, o, "CSV path");
  cmds.push_back({sp, "spectrum", cmd_spectrum});

  auto sy = app.add_subcommand("synth", "Synthesize a coefficient field over an environment");
  sy->add_option("--env", o.env, "Capacity JSON")->required();
  sy->add_option("--kind", o.field_kind, "saturating | random")->capture_default_str();
  sy->add_option("--J", o.J, "Number of coefficient scales (0..J-1)")->capture_default_str();
  sy->add_option("--q", o.q, "saturating: exponent q in [1, inf]")->capture_default_str();
  sy->add_option("--p", o.p, "random: integrability p in [1, inf]")->capture_default_str();
  sy->add_option("--decay", o.decay, "random: extra decay per scale (log2 units)")->capture_default_str();
  sy->add_option("--filter", o.filter, "Filter name recorded in the field")->capture_default_str();
  sy->add_option("--seed", o.seed, "random: seed")->capture_default_str();
  sy->add_option("--split", o.d1, "Write the split family of d1 members into --out (0: single field)")->capture_default_str();
  add_out(sy, o, "Field JSON path or split-family directory");
  cmds.push_back({sy, "synth", cmd_synth});

  auto an = app.add_subcommand("analyze", "Wavelet coefficients of 2^(Jd) samples (one value per line, row-major)");
  an->add_option("--samples", o.samples, "Sample file")->required();
  an->add_option("--d", o.d, "Dimension")->capture_default_str();
  an->add_option("--filter", o.filter, "Filter name")->capture_default_str();
  add_out(an, o, "Field JSON path");
  cmds.push_back({an, "analyze", cmd_analyze});

  auto sz = app.add_subcommand("synthesize", "Samples of a coefficient field, one value per line");
  sz->add_option("--field", o.field, "Field JSON")->required();
  sz->add_option("--filter", o.filter, "Filter used when the field records none")->capture_default_str();
  add_out(sz, o, "Sample file path");
  cmds.push_back({sz, "synthesize", cmd_synthesize});

  auto le = app.add_subcommand("leaders", "Wavelet leaders of a field as JSON");
  le->add_option("--field", o.field, "Field JSON")->required();
  le->add_option("--boundary", o.boundary, "clipped | periodic")->capture_default_str();
  add_out(le, o, "Leader JSON path");
  cmds.push_back({le, "leaders", cmd_leaders});

  auto ex = app.add_subcommand("exponent", "Pointwise exponents from leaders as CSV");
  ex->add_option("--field", o.field, "Field JSON")->required();
  ex->add_option("--points", o.points, "Points 'x0,x1;y0,y1' (default: grid)");
  ex->add_option("--grid", o.grid, "Cube-centre grid side when --points is absent")->capture_default_str();
  ex->add_option("--j", o.jrange, "Scale range jmin:jmax (default 4:J-1)")->capture_default_str();
  ex->add_option("--method", o.method, "regression | min")->capture_default_str();
  ex->add_option("--boundary", o.boundary, "clipped | periodic")->capture_default_str();
  add_out(ex, o, "CSV path");
  cmds.push_back({ex, "exponent", cmd_exponent});

  auto no = app.add_subcommand("norms", "One seminorm with a resolution scan, as JSON");
  no->add_option("--field", o.field, "Field JSON")->required();
  no->add_option("--env", o.env, "Capacity JSON")->required();
  no->add_option("--kind", o.norm_kind, "wavelet_besov | modulus_besov | sobolev | lp | btilde")->capture_default_str();
  no->add_option("--p", o.p, "p in [1, inf]")->capture_default_str();
  no->add_option("--q", o.q, "q in [1, inf]")->capture_default_str();
  no->add_option("--n", o.n, "Difference order")->capture_default_str();
  no->add_option("--jmax", o.jmax, "Finest modulus scale (-1: J-3)")->capture_default_str();
  no->add_option("--eps", o.eps, "Use mu^(-eps) in place of mu")->capture_default_str();
  no->add_option("--other", o.other, "btilde: second field");
  no->add_option("--s1", o.s1, "btilde: lower exponent (-1: fitted from the environment)")->capture_default_str();
  no->add_option("--terms", o.terms, "btilde: number of series terms (>= 8)")->capture_default_str();
  no->add_option("--filter", o.filter, "Filter used when the field records none")->capture_default_str();
  add_out(no, o, "Report JSON path");
  cmds.push_back({no, "norms", cmd_norms});

  auto em = app.add_subcommand("embed", "Besov / Sobolev / shifted Besov comparison; exit 1 unless stable");
  em->add_option("--field", o.field, "Field JSON")->required();
  em->add_option("--env", o.env, "Capacity JSON")->required();
  em->add_option("--p", o.p_finite, "p in [1, inf)")->capture_default_str();
  em->add_option("--eps", o.eps_list, "eps list (default: 0.4,0.2,0.1,0.05 below min(1, s1))");
  em->add_option("--resolutions", o.resolutions, "Sample resolutions J")->capture_default_str();
  em->add_option("--n", o.n, "Difference order")->capture_default_str();
  em->add_option("--stability", o.stability, "Largest accepted max/min ratio across resolutions")->capture_default_str();
  em->add_flag("--override", o.override_hypothesis, "Run even if the environment is not almost doubling");
  em->add_option("--filter", o.filter, "Filter used when the field records none")->capture_default_str();
  add_out(em, o, "Report JSON path");
  cmds.push_back({em, "embed", cmd_embed});

  auto om = app.add_subcommand("omega-check", "Fitted constants of the modulus bound across t = 2^-k; exit 1 if the spread exceeds --max-spread");
  om->add_option("--field", o.field, "Field JSON")->required();
  om->add_option("--env", o.env, "Capacity JSON")->required();
  om->add_option("--n", o.n, "Difference order")->capture_default_str();
  om->add_option("--p", o.p_finite, "p in [1, inf)")->capture_default_str();
  om->add_option("--eps", o.eps, "Shift exponent (0: 0.1)")->capture_default_str();
  om->add_option("--t", o.t_exponents, "Exponents k of t = 2^-k, a:b or comma list")->capture_default_str();
  om->add_option("--max-spread", o.max_spread, "Largest accepted max C / min C")->capture_default_str();
  om->add_option("--filter", o.filter, "Filter used when the field records none")->capture_default_str();
  add_out(om, o, "Report JSON path");
  cmds.push_back({om, "omega-check", cmd_omega});

  auto pv = app.add_subcommand("prevalence", "Perturbation trial over a split saturating family; exit 1 below --min-fraction");
  pv->add_option("--env", o.env, "Capacity JSON")->required();
  pv->add_option("--field", o.field, "Field to perturb (default: zero field)");
  pv->add_option("--J", o.J, "Scales of the zero field")->capture_default_str();
  pv->add_option("--q", o.q, "Saturating family exponent")->capture_default_str();
  pv->add_option("--d1", o.d1, "Family size (0: 2d+1)")->capture_default_str();
  pv->add_option("--betas", o.betas, "Number of beta samples")->capture_default_str();
  pv->add_option("--seed", o.seed, "Seed of the beta draws")->capture_default_str();
  pv->add_option("--points", o.points, "Points 'x0,x1;y0,y1' (default: grid)");
  pv->add_option("--grid", o.grid, "Cube-centre grid side when --points is absent")->capture_default_str();
  pv->add_option("--j", o.jrange, "Scale range jmin:jmax (default 4:J-1)")->capture_default_str();
  pv->add_option("--slack", o.slack, "Allowed excess over the upper local dimension")->capture_default_str();
  pv->add_option("--method", o.method, "regression | min")->capture_default_str();
  pv->add_option("--boundary", o.boundary, "clipped | periodic")->capture_default_str();
  pv->add_option("--min-fraction", o.min_fraction, "Required pass fraction")->capture_default_str();
  pv->add_option("--filter", o.filter, "Filter of the zero field")->capture_default_str();
  add_out(pv, o, "Report JSON path");
  cmds.push_back({pv, "prevalence", cmd_prevalence});

  auto run = app.add_subcommand("run", "Replay a saved run configuration");
  run->add_option("--config", o.config, "RunConfig JSON written by --save-config")->required()->check(CLI::ExistingFile);
  cmds.push_back({run, "run", nullptr});
  return cmds;
}

/// Resolved options of the selected command, defaults included.
json run_config(const Command& c) {
  json opts = json::object();
  for (const CLI::Option* opt : c.app->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (name == "help" || name == "save-config") continue;
    if (opt->get_expected_min() == 0) {
      opts[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      opts[name] = opt->results().back();
    } else if (!opt->get_default_str().empty()) {
      opts[name] = opt->get_default_str();
    }
  }
  return {{"format", "mufrac-run-config"}, {"version", 1}, {"command", c.path}, {"options", opts}};
}

std::vector<std::string> replay_args(const json& cfg) {
  if (!cfg.is_object() || cfg.value("format", "") != "mufrac-run-config")
    throw FormatError("expected a mufrac-run-config document");
  std::vector<std::string> args{"mufrac"};
  for (const auto& word : split(cfg.at("command").get<std::string>(), ' ')) args.push_back(word);
  for (const auto& [name, value] : cfg.at("options").items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + name);
    } else {
      args.push_back("--" + name);
      args.push_back(value.get<std::string>());
    }
  }
  return args;
}

int dispatch(std::vector<std::string> args, int depth) {
  CLI::App app{"mufrac: multifractal environments, wavelet fields and mu-adapted function spaces"};
  app.require_subcommand(1);
  Options o;
  auto cmds = build(app, o);
  std::string save;
  for (auto& c : cmds)
    if (c.handler) c.app->add_option("--save-config", save, "Also write the resolved RunConfig JSON here");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : kConfigError;
  }
  for (auto& c : cmds) {
    if (!c.app->parsed()) continue;
    if (!c.handler) {
      if (depth > 0) {
        std::cerr << "error: nested run configurations are not supported\n";
        return kConfigError;
      }
      try {
        return dispatch(replay_args(json::parse(detail::read_text(o.config))), depth + 1);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
      }
    }
    const auto cfg = run_config(c);
    std::cerr << cfg.dump() << "\n";
    try {
      if (!save.empty()) detail::write_text(save, cfg.dump(2) + "\n");
      return c.handler(o);
    } catch (const InvalidArgument& e) {
      std::cerr << "error: " << e.what() << "\n";
    } catch (const FormatError& e) {
      std::cerr << "error: " << e.what() << "\n";
    } catch (const HypothesisError& e) {
      std::cerr << "error: " << e.what() << "\n";
    } catch (const std::logic_error& e) {
      std::cerr << "error: " << e.what() << "\n";
    }
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace

int main(int argc, char** argv) { return dispatch(std::vector<std::string>(argv, argv + argc), 0); }
