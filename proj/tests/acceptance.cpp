// Acceptance gate: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rotavg/kuramoto_flow.hpp"
#include "rotavg/means.hpp"
#include "rotavg/sampling.hpp"

using namespace rotavg;

namespace {

const UnitQuaternion kMu(0.5, 0.5, 0.5, 0.5);

struct Outcome {
  bool pass = true;
  std::string detail;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double orthogonality_error(const Matrix3& r) { return (r.transpose() * r - Matrix3::Identity()).norm(); }

Matrix3 mat(std::initializer_list<double> v) {
  Matrix3 m;
  auto it = v.begin();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = *it++;
  return m;
}

Outcome a1() {
  const Matrix3 projected = mat({0.948745, 0.307382, 0.0734808, 0.229426, -0.509944, -0.829048, -0.217364,
                                 0.803414, -0.554328});
  const Matrix3 geometric = mat({0.947201, 0.311427, 0.0763086, 0.227146, -0.48376, -0.845211, -0.226306,
                                 0.817918, -0.528957});
  const Matrix3 flow = mat({0.947206, 0.311415, 0.0762942, 0.227135, -0.483792, -0.845196, -0.226296, 0.817904,
                            -0.528984});
  try {
    const Rotation p = Rotation::from_matrix(projected, 1e-4);
    const Rotation g = Rotation::from_matrix(geometric, 1e-4);
    const Rotation k = Rotation::from_matrix(flow, 1e-4);
    const double gk = dist_geodesic(g, k), pg = dist_geodesic(p, g);
    return {gk < 1e-4 && pg > 1e-2, fmt("d(geo,kl)=%.3e d(proj,geo)=%.3e", gk, pg)};
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

Outcome a2() {
  const WeightedDataset data(sample_rotations(VmfParams{kMu, 2.0, 100, 2}));
  double worst_member = 0.0;
  for (const Rotation& r : data.rotations()) worst_member = std::max(worst_member, orthogonality_error(r.matrix()));
  double worst_drift = 0.0;
  FlowConfig cfg;
  cfg.delta = 0.01;
  const FlowResult res = run_flow(data, cfg, [&](const FlowState& s, const StepDiagnostics& d) {
    worst_drift = std::max(worst_drift, d.max_drift);
    for (const Rotation& r : s.rotations) worst_member = std::max(worst_member, orthogonality_error(r.matrix()));
  });
  return {worst_member <= 1e-9 && worst_drift <= 1e-8,
          fmt("steps=%d max||RtR-I||=%.2e max drift=%.2e", res.steps, worst_member, worst_drift)};
}

Outcome a3() {
  const int sizes[] = {10, 100};
  const double kappas[] = {0.5, 2.0, 10.0};
  double worst_increase = -1e300, worst_terminal = 0.0;
  int failures = 0;
  for (int i = 0; i < 20; ++i) {
    const int n = sizes[i % 2];
    const double kappa = kappas[(i / 2) % 3];
    const WeightedDataset data(sample_rotations(VmfParams{kMu, kappa, n, 300u + i}));
    const FlowResult res = run_flow(data);
    for (std::size_t k = 1; k < res.trace.size(); ++k) {
      worst_increase = std::max(worst_increase, res.trace[k].potential - res.trace[k - 1].potential);
    }
    const double terminal = std::abs(res.trace.back().potential + 1.5);
    worst_terminal = std::max(worst_terminal, terminal);
    if (res.status != FlowStatus::Converged || terminal > 1e-4) ++failures;
  }
  return {failures == 0 && worst_increase <= 1e-10,
          fmt("max dP=%.2e |P_T+3/2|max=%.2e unconverged/off=%d", worst_increase, worst_terminal, failures)};
}

struct VmfRuns {
  std::vector<double> t;  // termination times of converged runs
  int not_converged = 0;
};

Outcome a4(VmfRuns& runs) {
  std::vector<double> kl_geo, kl_proj;
  int failures = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const WeightedDataset data(sample_rotations(VmfParams{kMu, 0.5, 500, seed}));
    const FlowResult res = run_flow(data);
    if (res.status == FlowStatus::Converged) runs.t.push_back(res.termination_time);
    else ++runs.not_converged;
    try {
      kl_geo.push_back(dist_geodesic(res.average, geodesic_mean(data)));
      kl_proj.push_back(dist_geodesic(res.average, projected_mean(data)));
    } catch (const Error& e) {
      ++failures;
    }
  }
  if (kl_geo.empty()) return {false, "no trial produced all three averages"};
  const double worst = *std::max_element(kl_geo.begin(), kl_geo.end());
  const double mg = median(kl_geo), mp = median(kl_proj);
  return {failures == 0 && worst <= 0.05 && mg <= mp,
          fmt("max d(kl,geo)=%.4f median d(kl,geo)=%.4f median d(kl,proj)=%.4f errors=%d", worst, mg, mp,
              failures)};
}

Outcome a5(VmfRuns& runs) {
  double worst = 0.0, worst_scale = 0.0;
  int failures = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto rots = sample_rotations(VmfParams{kMu, 0.5, 300, seed});
    auto w = sample_weights(300, derive_seed(seed, 1));
    const WeightedDataset data(rots, w);
    const FlowResult res = run_flow(data);
    if (res.status == FlowStatus::Converged) runs.t.push_back(res.termination_time);
    else ++runs.not_converged;
    try {
      worst = std::max(worst, dist_geodesic(res.average, geodesic_mean(data)));
    } catch (const Error&) {
      ++failures;
    }
    const double c = seed % 2 ? 2.5 : 0.4;
    for (double& x : w) x *= c;
    worst_scale = std::max(worst_scale, dist_geodesic(res.average, run_flow(WeightedDataset(rots, w)).average));
  }
  return {failures == 0 && worst <= 0.1 && worst_scale <= 1e-6,
          fmt("max d(klw,wgeo)=%.4f max scaling change=%.2e errors=%d", worst, worst_scale, failures)};
}

Outcome a6(const VmfRuns& runs) {
  if (runs.t.empty()) return {false, "no converged runs"};
  const auto [lo, hi] = std::minmax_element(runs.t.begin(), runs.t.end());
  return {runs.not_converged == 0 && *lo >= 0.5 && *hi <= 50.0,
          fmt("runs=%zu T in [%.2f, %.2f] not converged=%d", runs.t.size() + runs.not_converged, *lo, *hi,
              runs.not_converged)};
}

Outcome a7() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> pair_angle(0.05, 2.8), spread(-1.2, 1.2);
  std::uniform_int_distribution<int> count(3, 9);
  double worst = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix3 base = oracle::random_rotation(rng);
    const Vector3 axis = oracle::random_unit(rng);
    std::vector<double> angles;
    if (trial < 25) {
      angles = {0.0, pair_angle(rng)};
    } else {
      angles.resize(count(rng));
      for (double& a : angles) a = spread(rng);
    }
    std::vector<Rotation> rots;
    for (double a : angles) rots.push_back(Rotation::unchecked(base * oracle::axis_angle(axis, a)));
    const WeightedDataset data(rots);
    const Matrix3 grid =
        base * oracle::axis_angle(axis, oracle::single_axis_geodesic_mean(angles, std::vector<double>(angles.size(), 1.0)));
    const FlowResult res = run_flow(data);
    if (res.status != FlowStatus::Converged) {
      ++failures;
      continue;
    }
    const Matrix3 g = geodesic_mean(data).matrix();
    worst = std::max({worst, oracle::quaternion_distance(res.average.matrix(), g),
                      oracle::quaternion_distance(res.average.matrix(), grid), oracle::quaternion_distance(g, grid)});
  }
  return {failures == 0 && worst <= 1e-4, fmt("max pairwise disagreement=%.2e unconverged=%d", worst, failures)};
}

Outcome a8() {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix3 center = oracle::random_rotation(rng);
    const int n = 10 + trial;
    std::vector<Rotation> rots, left, right;
    std::vector<double> w;
    const Rotation q = Rotation::unchecked(oracle::random_rotation(rng));
    for (int i = 0; i < n; ++i) {
      rots.push_back(Rotation::unchecked(oracle::random_near(rng, center, 1.0)));
      left.push_back(q * rots.back());
      right.push_back(rots.back() * q);
      w.push_back(weight(rng));
    }
    const std::vector<std::function<Rotation(const WeightedDataset&)>> methods = {
        [](const WeightedDataset& d) { return run_flow(d.unweighted()).average; },
        [](const WeightedDataset& d) { return run_flow(d).average; },
        [](const WeightedDataset& d) { return projected_mean(d); },
        [](const WeightedDataset& d) { return geodesic_mean(d); },
    };
    for (const auto& m : methods) {
      const Rotation base = m(WeightedDataset(rots, w));
      worst = std::max({worst, dist_geodesic(m(WeightedDataset(left, w)), q * base),
                        dist_geodesic(m(WeightedDataset(right, w)), base * q)});
    }
  }
  return {worst <= 1e-6, fmt("max translation mismatch=%.2e rad", worst)};
}

Outcome a9() {
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<int> size(1, 200);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial == 0 ? 200 : size(rng);
    std::vector<Matrix3> r(n);
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
      r[i] = oracle::random_rotation(rng);
      w[i] = weight(rng);
    }
    std::vector<Matrix3> fast(n);
    flow_rhs(r, w, fast);
    const auto slow = oracle::pairwise_rhs(r, w);
    for (int i = 0; i < n; ++i) worst = std::max(worst, (fast[i] - slow[i]).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-12, fmt("max entrywise difference=%.2e", worst)};
}

Outcome a10() {
  const WeightedDataset data(sample_rotations(VmfParams{kMu, 0.5, 500, 1}));
  FlowConfig cfg;
  cfg.record_trace = false;
  const FlowResult res = run_flow(data, cfg);
  return {res.status == FlowStatus::Converged,
          fmt("status=%s T=%.2f steps=%d", std::string(to_string(res.status)).c_str(), res.termination_time,
              res.steps)};
}

bool report(const char* id, double limit_s, const std::function<Outcome()>& f) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_s <= 0.0 || elapsed < limit_s;
  const bool pass = o.pass && in_time;
  std::string timing = fmt("%.2fs", elapsed);
  if (limit_s > 0.0) timing += fmt(" (limit %.0fs%s)", limit_s, in_time ? "" : ", TOO SLOW");
  std::printf("%s %s  %s  [%s]\n", id, pass ? "PASS" : "FAIL", o.detail.c_str(), timing.c_str());
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main() {
  VmfRuns runs;
  int failed = 0;
  failed += !report("A1", 1, a1);
  failed += !report("A2", 5, a2);
  failed += !report("A3", 30, a3);
  failed += !report("A4", 180, [&] { return a4(runs); });
  failed += !report("A5", 120, [&] { return a5(runs); });
  failed += !report("A6", 0, [&] { return a6(runs); });
  failed += !report("A7", 30, a7);
  failed += !report("A8", 0, a8);
  failed += !report("A9", 0, a9);
  failed += !report("A10", 10, a10);
  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
