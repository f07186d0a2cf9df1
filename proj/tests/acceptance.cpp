// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mufrac/mufrac.hpp"

using namespace mufrac;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::string digest;  // serialized numbers, compared across thread counts
};

std::string g(double v) { return format_double(v); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const double kW[] = {0.3, 0.7};
const double kLo = std::log2(1.0 / 0.3);
const double kHi = std::log2(1.0 / 0.7);

Outcome cascade_scaling_function() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto mu = cascade_env(1, 14, kW);
  const auto q = uniform_grid(-5.0, 5.0, 0.25);
  const auto reg = tau(mu, q, 2, 14, TauMethod::regression);
  const auto plm = tau(mu, q, 2, 14, TauMethod::per_level_min);
  double err = 0.0;
  std::string dig;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double exact = -std::log2(std::pow(0.3, q[i]) + std::pow(0.7, q[i]));
    err = std::max({err, std::abs(reg.tau[i] - exact), std::abs(plm.tau[i] - exact)});
    dig += g(reg.tau[i]) + "," + g(plm.tau[i]) + ";";
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << "max |tau - closed form| = " << err << ", " << secs << " s";
  return {err <= 1e-9 && secs < 2.0, os.str(), dig};
}

Outcome legendre_anchors() {
  const auto mu = cascade_env(1, 14, kW);
  const auto t = tau(mu, uniform_grid(-30.0, 30.0, 0.05), 2, 14);
  const double h1 = 0.5 * (kLo + kHi);
  const std::vector<double> h{h1, kHi};
  const auto s = legendre(t, h);
  const double e1 = std::abs(s.sigma[0] - 1.0);
  const double e2 = std::abs(s.sigma[1]);
  std::ostringstream os;
  os << "tau*(" << h1 << ") = " << s.sigma[0] << ", tau*(" << kHi << ") = " << s.sigma[1];
  return {e1 <= 1e-3 && e2 <= 5e-3, os.str(), g(s.sigma[0]) + "," + g(s.sigma[1])};
}

Outcome coarse_vs_legendre() {
  std::ostringstream os;
  std::string dig;
  bool ok = true;
  {
    const auto mu = cascade_env(1, 16, kW);
    SmfParams p;
    p.hgrid = uniform_grid(0.0, 3.0, 0.05);
    p.delta = 0.05;
    p.jmin = 4;
    const auto rep = smf_check(mu, 0.1, p);
    ok = ok && rep.holds;
    os << "cascade J=16: " << rep.distance.distance << " over " << rep.distance.compared << " bins";
    dig += g(rep.distance.distance) + ";";
  }
  for (int d : {1, 2})
    for (double alpha : {0.5, 1.0, 1.5}) {
      const auto mu = power_law_env(d, d == 1 ? 16 : 8, alpha);
      SmfParams p;
      p.hgrid = uniform_grid(0.0, 3.0, 0.1);
      p.delta = 0.05;
      p.jmin = 2;
      const auto rep = smf_check(mu, 0.02, p);
      ok = ok && rep.holds;
      os << "; power_law(d=" << d << ", " << alpha << "): " << rep.distance.distance;
      dig += g(rep.distance.distance) + ";";
    }
  return {ok, os.str(), dig};
}

Outcome doubling_discrimination() {
  std::ostringstream os;
  std::string dig;
  bool ok = true;
  for (double alpha : {0.5, 1.0, 1.7}) {
    const auto rep = check_doubling(power_law_env(1, 12, alpha));
    const bool this_ok = rep.holds && std::abs(rep.c_mu - std::exp2(alpha)) <= 1e-9;
    ok = ok && this_ok;
    os << "power_law(" << alpha << "): holds=" << rep.holds << " C=" << rep.c_mu << "; ";
    dig += g(rep.c_mu) + ";";
  }
  const auto mu = cascade_env(1, 12, kW);
  const auto rep = check_doubling(mu);
  bool at_half = false;
  if (rep.witness && rep.witness->second) {
    const auto& a = rep.witness->first;
    const auto& b = *rep.witness->second;
    const double ea = std::ldexp(static_cast<double>(a.k[0]), -a.j), eb = std::ldexp(static_cast<double>(b.k[0]), -b.j);
    const double fa = std::ldexp(static_cast<double>(a.k[0] + 1), -a.j), fb = std::ldexp(static_cast<double>(b.k[0] + 1), -b.j);
    at_half = a.j == b.j && ((fa == 0.5 && eb == 0.5) || (fb == 0.5 && ea == 0.5));
  }
  ok = ok && !rep.holds && at_half;
  os << "cascade: holds=" << rep.holds << " witness at 1/2=" << at_half;
  for (auto fam : {PhiFamily::constant, PhiFamily::log_log, PhiFamily::log_power}) {
    const auto ad = check_almost_doubling(mu, fam);
    ok = ok && !ad.holds;
    os << " almost(" << static_cast<int>(fam) << ")=" << ad.holds;
    dig += g(ad.phi_c) + ";";
  }
  return {ok, os.str(), dig};
}

Outcome doubling_implies_P2() {
  std::vector<std::pair<std::string, CapacityTree>> envs;
  for (double a : {0.3, 0.8, 1.0, 1.6}) envs.emplace_back("power_law(1," + g(a) + ")", power_law_env(1, 8, a));
  for (double a : {0.7, 1.2}) envs.emplace_back("power_law(2," + g(a) + ")", power_law_env(2, 5, a));
  const double uniform[] = {0.5, 0.5};
  envs.emplace_back("cascade(0.5,0.5)", cascade_env(1, 8, uniform));
  const double quarter[] = {0.25, 0.25, 0.25, 0.25};
  envs.emplace_back("cascade2d(uniform)", cascade_env(2, 5, quarter));
  envs.emplace_back("cascade(0.3,0.7)", cascade_env(1, 8, kW));
  const double w2[] = {0.1, 0.2, 0.3, 0.4};
  envs.emplace_back("cascade2d(0.1..0.4)", cascade_env(2, 5, w2));
  for (std::uint64_t s = 1; s <= 4; ++s)
    envs.emplace_back("bounded_random(" + std::to_string(s) + ")", bounded_random_env(1, 8, 0.3, 0.45, s));
  envs.emplace_back("power(cascade,2)", transform_power(cascade_env(1, 8, uniform), 2.0));
  int doubling = 0, violations = 0;
  std::string dig, bad;
  for (const auto& [name, mu] : envs) {
    const bool dbl = check_doubling(mu).holds;
    const bool p2 = check_P2(mu).holds;
    dig += std::string(dbl ? "1" : "0") + (p2 ? "1" : "0") + ";";
    if (dbl) {
      ++doubling;
      if (!p2) {
        ++violations;
        bad += name + " ";
      }
    }
  }
  std::ostringstream os;
  os << doubling << " doubling environments of " << envs.size() << ", " << violations << " without (P2) " << bad;
  return {doubling > 0 && violations == 0, os.str(), dig};
}

double brute_leader(const WaveletField& f, int j, std::int64_t k, Boundary b) {
  const std::int64_t n = dyadic::side(j);
  double m = 0.0;
  for (int jp = j; jp < f.J; ++jp)
    for (std::size_t c = 0; c < dyadic::cube_count(1, jp); ++c) {
      const auto anc = static_cast<std::int64_t>(c) >> (jp - j);
      bool inside = false;
      for (std::int64_t off = -1; off <= 1; ++off) {
        std::int64_t v = k + off;
        if (b == Boundary::periodic) v = ((v % n) + n) % n;
        if (v >= 0 && v < n && v == anc) inside = true;
      }
      if (inside) m = std::max(m, std::abs(f.at(jp, c, 1)));
    }
  return m;
}

Outcome wavelet_round_trip() {
  std::ostringstream os;
  std::string dig;
  bool ok = true;
  const auto& db4 = filter("db4");
  for (int d : {1, 2}) {
    const int J = d == 1 ? 12 : 6;
    std::vector<double> s(dyadic::cube_count(d, J));
    Rng rng(2024 + d);
    for (auto& v : s) v = rng.uniform(-1.0, 1.0);
    const auto back = synthesize(analyze(s, d, db4), db4);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      err = std::max(err, std::abs(back[i] - s[i]));
      scale = std::max(scale, std::abs(s[i]));
    }
    ok = ok && err / scale <= 1e-10;
    os << "d=" << d << " rel err " << err / scale << "; ";
    dig += g(err) + ";";
  }
  std::size_t mismatches = 0;
  for (int J = 3; J <= 8; ++J)
    for (auto b : {Boundary::clipped, Boundary::periodic}) {
      const auto mu = bounded_random_env(1, J, 0.3, 0.6, 77);
      const auto f = random_bounded_field(mu, J, 100 + static_cast<std::uint64_t>(J));
      const auto L = compute_leaders(f, b);
      for (int j = 0; j < J; ++j)
        for (std::int64_t k = 0; k < dyadic::side(j); ++k)
          if (L.at(j, static_cast<std::size_t>(k)) != brute_leader(f, j, k, b)) ++mismatches;
    }
  ok = ok && mismatches == 0;
  os << "leader mismatches vs brute force (d=1, J<=8): " << mismatches;
  return {ok, os.str(), dig};
}

Outcome saturating_exponents() {
  std::ostringstream os;
  std::string dig;
  bool ok = true;
  for (double alpha : {0.4, 1.0, 1.8}) {
    const int J = 12;
    const auto mu = power_law_env(1, J, alpha);
    const auto G = saturating_field(mu, kInfinity, J);
    const auto L = compute_leaders(G);
    double err = 0.0;
    for (const auto& x : grid_points(1, 1 << (J - 1)))
      err = std::max(err, std::abs(pointwise_exponent(L, x, 1, J - 1, ExponentMethod::min) - alpha));
    const double semi = besov_wavelet_seminorm(G, mu, kInfinity, kInfinity).value;
    ok = ok && err <= 1e-9 && semi == 1.0;
    os << "alpha=" << alpha << " max err " << err << " seminorm " << semi << "; ";
    dig += g(err) + ";";
  }
  const auto mu = cascade_env(1, 16, kW);
  const auto G = saturating_field(mu, kInfinity, 16);
  const std::vector<double> x0{0.0};
  const double h = pointwise_exponent(compute_leaders(G), x0, 6, 15, ExponentMethod::regression);
  ok = ok && std::abs(h - kLo) <= 0.05;
  os << "cascade x=0: " << h << " vs " << kLo;
  dig += g(h);
  return {ok, os.str(), dig};
}

Outcome lower_bound_sandwich() {
  std::ostringstream os;
  std::string dig;
  bool ok = true;
  const int J = 14;
  const auto pts = grid_points(1, 64);
  for (double alpha : {0.5, 1.0}) {
    const auto mu = power_law_env(1, J, alpha);
    std::vector<std::pair<std::string, WaveletField>> fields;
    fields.emplace_back("G_inf", saturating_field(mu, kInfinity, J));
    fields.emplace_back("G_2", saturating_field(mu, 2.0, J));
    for (std::uint64_t s = 0; s < 10; ++s) fields.emplace_back("random", random_bounded_field(mu, J, 500 + s));
    std::size_t viol = 0;
    for (const auto& [name, f] : fields) {
      const auto rep = lower_bound_check(f, mu, pts, 4, J - 1, 0.1, ExponentMethod::min);
      viol += rep.violations.size();
      dig += g(rep.min_exponent) + ";";
    }
    ok = ok && viol == 0;
    os << "alpha=" << alpha << ": " << viol << " violations over " << fields.size() << " fields; ";
  }
  return {ok, os.str(), dig};
}

Outcome embedding_stability() {
  std::ostringstream os;
  std::string dig;
  bool ok = true;
  const auto mu = power_law_env(1, 12, 1.0);
  const auto& db4 = filter("db4");
  double worst_spread = 0.0;
  bool chain = true;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = random_bounded_field(mu, 11, 900 + s, 2.0, 0.25, "db4");
    double lo = kInfinity, hi = 0.0;
    for (int J : {9, 10, 11}) {
      const auto samples = synthesize(truncated(f, J), db4);
      const double sob = sobolev_seminorm(samples, 1, mu, 2.0, 2, J - 3).value;
      const double bes = besov_modulus_seminorm(samples, 1, mu, 2.0, 2.0, 2, J - 3).value;
      const double r = sob / bes;
      if (!std::isfinite(r) || r <= 0.0) ok = false;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      dig += g(r) + ",";
    }
    worst_spread = std::max(worst_spread, hi / lo);
    double prev = kInfinity;
    for (double e : {0.05, 0.1, 0.2, 0.4}) {
      const double v = besov_wavelet_seminorm(f, transform_shift(mu, -e), 2.0, 2.0).value;
      chain = chain && v <= prev;
      prev = v;
    }
  }
  ok = ok && worst_spread <= 2.0 && chain;
  os << "worst max/min ratio across J in {9,10,11}: " << worst_spread << "; eps chain nonincreasing: " << chain;
  return {ok, os.str(), dig};
}

Outcome omega_constant_stability() {
  std::ostringstream os;
  std::string dig;
  const auto mu = power_law_env(1, 12, 1.0);
  const auto& db4 = filter("db4");
  const std::vector<double> ts{std::ldexp(1.0, -4), std::ldexp(1.0, -5), std::ldexp(1.0, -6), std::ldexp(1.0, -7)};
  double worst = 0.0;
  bool ok = true;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto f = random_bounded_field(mu, 12, 1300 + s, 2.0, 0.25, "db4");
    const auto rep = omega_bound_check(synthesize(f, db4), 1, mu, 2, 2.0, 0.1, ts);
    ok = ok && !rep.degenerate && std::isfinite(rep.spread);
    worst = std::max(worst, rep.spread);
    dig += g(rep.spread) + ";";
  }
  ok = ok && worst <= 4.0;
  os << "worst max/min C(t) over t in 2^-4..2^-7: " << worst;
  return {ok, os.str(), dig};
}

Outcome prevalence() {
  std::ostringstream os;
  std::string dig;
  bool ok = true;
  const int J = 14;
  for (double alpha : {0.5, 1.0}) {
    const auto mu = power_law_env(1, J, alpha);
    const auto G = saturating_field(mu, kInfinity, J);
    TrialConfig cfg;
    cfg.d1 = choose_d1(1, 1);
    cfg.num_beta = 50;
    cfg.seed = 42;
    cfg.points = grid_points(1, 64);
    cfg.jmin = 4;
    cfg.slack = 0.1;
    const auto rep = prevalence_trial(G, mu, cfg);
    const auto cmp = spectrum_compare(G, mu);
    ok = ok && rep.fraction >= 0.95 && cmp.compared > 0 && cmp.distance <= 0.05;
    os << "alpha=" << alpha << ": pass fraction " << rep.fraction << ", spectrum distance " << cmp.distance << "; ";
    dig += g(rep.fraction) + "," + g(cmp.distance) + ";";
    for (const auto& ex : rep.exponents)
      for (double e : ex) dig += g(e) + ",";
  }
  return {ok, os.str(), dig};
}

using Check = std::function<Outcome()>;

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> checks{
      {"cascade scaling function matches closed form", cascade_scaling_function},
      {"Legendre spectrum anchors", legendre_anchors},
      {"coarse spectrum agrees with Legendre transform", coarse_vs_legendre},
      {"doubling discrimination", doubling_discrimination},
      {"doubling implies (P2)", doubling_implies_P2},
      {"wavelet round trip and brute-force leaders", wavelet_round_trip},
      {"saturating-function exponents", saturating_exponents},
      {"lower-bound sandwich", lower_bound_sandwich},
      {"embedding ratio stability", embedding_stability},
      {"modulus constant stability", omega_constant_stability},
      {"prevalence trial and spectrum comparison", prevalence},
  };
  int failed = 0;
  std::vector<std::string> digests;
  set_thread_count(4);
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome o;
    try {
      o = checks[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), ""};
    }
    digests.push_back(o.digest);
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, checks[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  // Determinism: rerun everything single-threaded and again with 4 threads.
  std::size_t differing = 0;
  for (int threads : {1, 4}) {
    set_thread_count(threads);
    for (std::size_t i = 0; i < checks.size(); ++i) {
      std::string dig;
      try {
        dig = checks[i].second().digest;
      } catch (const std::exception&) {
      }
      if (dig != digests[i]) ++differing;
    }
  }
  const bool det = differing == 0;
  failed += det ? 0 : 1;
  std::printf("[%s] 12 determinism across runs and thread counts {1,4}: %zu differing outputs\n",
              det ? "PASS" : "FAIL", differing);
  return failed == 0 ? 0 : 1;
}
