// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "oracle/erlang.hpp"
#include "tandem/app/experiment.hpp"
#include "tandem/burke.hpp"
#include "tandem/chain.hpp"
#include "tandem/network.hpp"
#include "tandem/optimize.hpp"
#include "tandem/split.hpp"

using namespace tandem;
using app::ExperimentSpec;
using app::Mode;
using app::Row;
using app::Scenario;

namespace {

constexpr double kHorizon = 5e6;
constexpr std::uint64_t kSeed = 20240601;

int failures = 0;

void report(bool ok, const char* name, const std::string& detail) {
  std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<Row> sweep(Scenario sc, std::vector<int> ks, std::vector<double> rhos,
                       std::vector<double> ps = {0.0}) {
  ExperimentSpec spec;
  spec.mode = Mode::compare;
  spec.scenario = sc;
  spec.k_list = std::move(ks);
  spec.rho_grid = std::move(rhos);
  spec.p_list = std::move(ps);
  spec.horizon = kHorizon;
  spec.seed = kSeed;
  return app::run_experiment(spec).rows;
}

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (int i = 0; lo + i * step <= hi + 1e-9; ++i) g.push_back(std::round((lo + i * step) * 1e6) / 1e6);
  return g;
}

bool on(double x, std::initializer_list<double> set) {
  return std::any_of(set.begin(), set.end(), [&](double v) { return std::abs(x - v) < 1e-9; });
}

void k1_exactness() {
  const double a = chain::average_aoi(ChainParams(1, 1.0, 0.5));
  const double mm1 = chain::mm1_average_aoi(1.0, 0.5);
  const auto rows = sweep(Scenario::chain, {1}, {0.5});
  const double s = *rows.at(0).aoi_sim_system;
  const bool ok = rel(a, 3.5) <= 1e-10 && rel(mm1, 3.5) <= 1e-10 && rel(s, 3.5) <= 0.02;
  report(ok, "K=1 exactness",
         fmt("analytic=%.15g mm1=%.15g sim=%.5f (rel %.3f%%)", a, mm1, s, 100 * rel(s, 3.5)));
}

void rho_star() {
  std::vector<double> stars;
  for (int k = 1; k <= 10; ++k) stars.push_back(opt::minimize_aoi_chain(k, 1.0).rho_star);
  bool mono = true;
  for (std::size_t i = 1; i < stars.size(); ++i) mono = mono && stars[i] <= stars[i - 1];
  const bool ok = std::abs(stars[0] - 0.53) <= 0.01 && stars[9] < 0.30 && mono;
  std::string list;
  for (double s : stars) list += fmt("%.3f ", s);
  report(ok, "rho* anchors", fmt("K=1..10: %s", list.c_str()));
}

void network_delay(const std::vector<Row>& chain_rows) {
  double worst = 0.0;
  std::string where;
  bool ok = true;
  int checked = 0;
  for (const auto& r : chain_rows) {
    if (!on(r.hops, {1, 2, 5, 10}) || !on(r.rho, {0.1, 0.5, 0.9})) continue;
    const double e = rel(*r.delay_sim, *r.delay_analytic);
    ++checked;
    ok = ok && e <= 0.02;
    if (e > worst) {
      worst = e;
      where = fmt("K=%d rho=%.1f", r.hops, r.rho);
    }
  }
  const auto split_rows = sweep(Scenario::split, {2}, {0.1, 0.5, 0.9}, {0.0, 0.5, 1.0});
  double worst_split = 0.0;
  for (const auto& r : split_rows) {
    const double e = rel(*r.delay_sim, *r.delay_analytic);
    ++checked;
    ok = ok && e <= 0.02;
    worst_split = std::max(worst_split, e);
  }
  ok = ok && checked == 12 + 9;
  report(ok, "network delay",
         fmt("%d points; chain worst %.3f%% (%s), split worst %.3f%%", checked, 100 * worst,
             where.c_str(), 100 * worst_split));
}

void bound_tightness(const std::vector<Row>& chain_rows) {
  bool direction = true, tight = true;
  double worst_gap = 0.0;
  std::string where;
  for (const auto& r : chain_rows) {
    if (r.bound_violation.value_or(true)) direction = false;
    if (r.rho < 0.1 - 1e-9 || r.rho > 0.8 + 1e-9) continue;
    const double g = std::abs(*r.aoi_rel_gap);
    if (g > 0.05) tight = false;
    if (g > worst_gap) {
      worst_gap = g;
      where = fmt("K=%d rho=%.1f", r.hops, r.rho);
    }
  }

  double worst_quad = 0.0;
  for (int k : {1, 2, 3, 5, 10}) {
    for (double rho : {0.1, 0.5, 0.9}) {
      const ChainParams p(k, 1.0, rho);
      const double q = oracle::ewy_given_s(
          [&](double t) { return oracle::erlang_density(k, p.alpha(), t); }, rho, p.s_bar(),
          k / p.alpha());
      worst_quad = std::max(worst_quad, rel(chain::ewy_bound(p), q));
    }
  }
  for (double pp : {0.2, 0.5, 0.8}) {
    for (double rho : {0.1, 0.5, 0.9}) {
      const SplitParams sp(1.0, rho, pp);
      const double a1 = sp.alpha1(), a2 = sp.alpha2();
      const double q = oracle::ewy_given_s(
          [&](double t) { return oracle::hypoexp_density(a1, a2, t); }, rho, sp.s_bar(),
          1.0 / a1 + 1.0 / a2);
      worst_quad = std::max(worst_quad, rel(split::ewy_bound_2(sp), q));
    }
  }
  const bool quad = worst_quad <= 1e-6;
  report(direction && tight && quad && chain_rows.size() == 90, "bound tightness/direction",
         fmt("%zu points, violations=%s, worst gap %.3f%% (%s), closed form vs quadrature %.2e",
             chain_rows.size(), direction ? "none" : "YES", 100 * worst_gap, where.c_str(),
             worst_quad));
}

void split_deltas() {
  auto mix = [](double rho, double p) { return split::aoi_mixture(SplitParams(1.0, rho, p)); };
  const double r05 = 1.0 - mix(0.5, 0.8) / mix(0.5, 1.0);
  const double r09 = 1.0 - mix(0.9, 0.8) / mix(0.9, 1.0);
  const double gap = mix(0.05, 1.0) - mix(0.05, 0.0);
  const bool ok = std::abs(r05 - 0.10) <= 0.05 && std::abs(r09 - 0.35) <= 0.05 &&
                  std::abs(gap - 1.0) <= 0.1;
  report(ok, "split-traffic deltas",
         fmt("reduction %.2f%% at rho=0.5, %.2f%% at rho=0.9; AoI(p=1)-AoI(p=0) at rho=0.05 = %.4f",
             100 * r05, 100 * r09, gap));
}

void burke() {
  const auto rep = sim::validate_burke(NetworkSpec::chain(2, 1.0, 0.5), kSeed, kHorizon);
  const double e = rel(rep.mean_interdeparture, rep.expected_mean);
  const bool ok = rep.samples >= 100000 && e <= 0.02 && !rep.rejected;
  report(ok, "Burke interdepartures",
         fmt("n=%zu mean=%.5f (1/lambda=%.1f, rel %.3f%%) KS D=%.5f p=%.3f", rep.samples,
             rep.mean_interdeparture, rep.expected_mean, 100 * e, rep.ks.statistic,
             rep.ks.p_value));
}

void multi_ground() {
  const std::vector<int> ks{1, 2, 3, 5, 10};
  const auto rows = sweep(Scenario::multi_ground, ks, grid(0.05, 0.95, 0.05));
  std::map<int, std::vector<const Row*>> by_k;
  for (const auto& r : rows) by_k[r.hops].push_back(&r);

  // AoI grows with K at each rho; near saturation the comparison allows the CIs.
  bool grows = true;
  std::string broken;
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    const auto& lo = by_k[ks[i]];
    const auto& hi = by_k[ks[i + 1]];
    for (std::size_t j = 0; j < lo.size(); ++j) {
      const double a = *lo[j]->aoi_sim_system, b = *hi[j]->aoi_sim_system;
      const double slack =
          lo[j]->rho > 0.9 + 1e-9 ? *lo[j]->aoi_sim_system_ci95 + *hi[j]->aoi_sim_system_ci95 : 0.0;
      if (!(b > a - slack)) {
        grows = false;
        broken += fmt("K=%d->%d@%.2f ", ks[i], ks[i + 1], lo[j]->rho);
      }
    }
  }

  std::vector<double> stars;
  for (int k : ks) {
    const auto& v = by_k[k];
    const auto best = std::min_element(v.begin(), v.end(), [](const Row* x, const Row* y) {
      return *x->aoi_sim_system < *y->aoi_sim_system;
    });
    stars.push_back((*best)->rho);
  }
  bool falls = stars.back() < stars.front();
  for (std::size_t i = 1; i < stars.size(); ++i) falls = falls && stars[i] <= stars[i - 1];
  std::string list;
  for (std::size_t i = 0; i < ks.size(); ++i) list += fmt("K=%d:%.2f ", ks[i], stars[i]);
  report(grows && falls, "multi-ground K-sweep",
         fmt("AoI increasing in K: %s; argmin rho %s", grows ? "yes" : broken.c_str(),
             list.c_str()));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

void determinism() {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "tandem_aoi_acceptance";
  fs::create_directories(dir);
  const std::vector<std::string> cases{
      "simulate --scenario chain --k-list 1,3,5 --rho-grid 0.2:0.8:0.3 --horizon 2e5",
      "sweep --scenario split --p-list 0,0.5,1 --rho-grid 0.3,0.7 --horizon 2e5 --replications 2",
      "sweep --scenario multi-ground --k-list 2,4 --rho-grid 0.5 --horizon 2e5",
      "simulate --scenario chain --k-list 2 --rho-grid 0.5 --horizon 2e5 --threads 1"};
  bool ok = true;
  int n = 0;
  for (const auto& c : cases) {
    std::string runs[2];
    for (int i = 0; i < 2; ++i) {
      const auto out = dir / fmt("run%d_%d.csv", n, i);
      fs::remove(out);
      const std::string cmd = std::string(TANDEM_AOI_EXE) + " " + c + " --seed 77 --out " +
                              out.string() + " > /dev/null";
      ok = ok && std::system(cmd.c_str()) == 0;
      runs[i] = slurp(out);
    }
    ok = ok && !runs[0].empty() && runs[0] == runs[1];
    ++n;
  }
  report(ok, "determinism", fmt("%d simulate/sweep invocations byte-identical across two runs", n));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  k1_exactness();
  rho_star();
  const auto chain_rows =
      sweep(Scenario::chain, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, grid(0.1, 0.9, 0.1));
  network_delay(chain_rows);
  bound_tightness(chain_rows);
  split_deltas();
  burke();
  multi_ground();
  determinism();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s: %d failure(s), %.1f s\n", failures ? "FAILED" : "ALL PASSED", failures, secs);
  return failures ? 1 : 0;
}
