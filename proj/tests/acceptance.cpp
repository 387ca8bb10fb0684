// Copyright 2026 The isingtopo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite. Usage: acceptance [criterion...]; with no arguments every
// criterion runs. Prints one PASS/FAIL line per check and exits non-zero if
// any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "isingtopo/ansatz.hpp"
#include "isingtopo/model.hpp"
#include "isingtopo/observables.hpp"
#include "isingtopo/qng.hpp"
#include "isingtopo/rng.hpp"
#include "isingtopo/shotproto.hpp"
#include "isingtopo/zne.hpp"
#include "oracle.hpp"

using namespace isingtopo;

namespace {

constexpr std::uint64_t kSeed = 1;
const double kSqrt2 = std::sqrt(2.0);

struct Check {
  std::string id;
  bool pass;
  std::string detail;
};

struct Outcome {
  std::vector<Check> checks;
  std::vector<double> fingerprint;  // every number the verdicts depend on
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string tag(int L, double v) { return "L" + std::to_string(L) + "_v" + fmt("%g", v); }

OptimizeResult optimize_instance(const ModelParams& m) {
  OptimizeOptions opts;
  opts.seed = derive_seed(kSeed, "init/" + tag(m.L, m.v));
  return optimize(default_ansatz(m), m, opts);
}

// Dense eigenvalues only; used as the reference energy at every size.
double dense_ground_energy(const ModelParams& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(build_hamiltonian(m).to_dense(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// 1. QNG reaches < 0.1% relative error against the dense oracle.
Outcome criterion1() {
  Outcome out;
  for (int L : {8, 10, 12}) {
    for (double v : {0.0, 4.0}) {
      for (int b : {0, 1}) {
        const ModelParams m = centred_params(L, b, v);
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = optimize_instance(m);
        const double wall = seconds_since(t0);
        const double e_dense = dense_ground_energy(m);
        const double rel = std::abs(r.state.energy - e_dense) / std::abs(e_dense);
        const bool pass = rel < 1e-3 && wall < 600.0;
        out.checks.push_back({fmt("1 L=%d v=%g b=%d", L, v, b), pass,
                              fmt("rel_error=%.3e (< 1e-3) vs dense E0=%.10f, iterations=%d, %s, wall=%.0fs (< 600s)",
                                  rel, e_dense, r.state.iteration, to_string(r.reason).c_str(), wall)});
        out.fingerprint.insert(out.fingerprint.end(), {r.state.energy, double(r.state.iteration), e_dense});
        out.fingerprint.insert(out.fingerprint.end(), r.state.params.begin(), r.state.params.end());
      }
    }
  }
  return out;
}

// 2. Loop eigenvalue sqrt(2); commutator with H.
Outcome criterion2() {
  Outcome out;
  for (int L : {8, 10, 12}) {
    const auto gs = exact_ground({L, 1, 0.0, 1});
    const double y = ybar_exact(gs.ground_state);
    const double err = std::abs(std::abs(y) - kSqrt2);
    out.checks.push_back(
        {fmt("2a L=%d", L), err < 1e-8, fmt("<Ybar>=%.12f, ||<Ybar>| - sqrt2|=%.2e (< 1e-8)", y, err)});
    out.fingerprint.push_back(y);
  }
  for (int L = 2; L <= 6; ++L) {
    const auto y = ybar_operator(L);
    const auto h = build_hamiltonian({L, 1, 0.0, 1});
    const double norm = commutator_norm(y, h);
    out.checks.push_back({fmt("2b L=%d", L), norm < 1e-10, fmt("commutator_norm(Ybar, H)=%.6g (< 1e-10)", norm)});
    out.fingerprint.push_back(norm);
  }
  // Informational: the commutator restricted to the prod X = +1 sector,
  // which holds the ground state.
  for (int L = 2; L <= 6; ++L) {
    const Eigen::MatrixXcd c = commutator(ybar_operator(L), build_hamiltonian({L, 1, 0.0, 1})).to_dense();
    const int dim = 1 << L;
    const Eigen::MatrixXcd px = PauliString::from_masks(L, dim - 1, 0).to_dense();
    const Eigen::MatrixXcd even = 0.5 * (Eigen::MatrixXcd::Identity(dim, dim) + px);
    const double res = (c * even).cwiseAbs().maxCoeff();
    std::printf("INFO  2b-even L=%d  max |[Ybar, H] P_even| = %.3g\n", L, res);
    out.fingerprint.push_back(res);
  }
  return out;
}

// 3. Correlator collapse across the defect at L = 12, j = 6.
Outcome criterion3() {
  Outcome out;
  const int L = 12;
  std::map<double, std::vector<CorrelatorPoint>> exact;
  for (double v : {0.0, 4.0}) {
    const ModelParams m{L, 0, v, 6};
    const auto gs = exact_ground(m);
    const double e_dense = dense_ground_energy(m);
    const bool same = std::abs(gs.ground_energy - e_dense) < 1e-10 && gs.residual < 1e-8 && !gs.degenerate;
    out.checks.push_back({fmt("3 oracle v=%g", v), same,
                          fmt("Lanczos E0=%.12f, dense E0=%.12f, residual=%.1e, gap=%.2e", gs.ground_energy, e_dense,
                              gs.residual, gs.gap)});
    exact[v] = correlator_profile(gs.ground_state);
    ShotPlan plan;
    plan.shots = 8192;
    plan.runs = 10;
    plan.seed = derive_seed(kSeed, "correlator/" + tag(L, v));
    const auto sampled = correlator_profile_sampled(gs.ground_state, plan);
    double worst = 0.0;
    int worst_r = 1;
    for (std::size_t k = 0; k < sampled.size(); ++k) {
      const double diff = std::abs(sampled[k].value - exact[v][k].value);
      // r = 1 is deterministic (Z1 Z1 = 1): zero error bar, rounding-level difference.
      const double z = diff <= 1e-12 ? 0.0 : (sampled[k].std_error > 0 ? diff / sampled[k].std_error : INFINITY);
      if (z > worst) {
        worst = z;
        worst_r = sampled[k].r;
      }
      out.fingerprint.insert(out.fingerprint.end(), {sampled[k].value, exact[v][k].value});
    }
    out.checks.push_back({fmt("3c v=%g", v), worst <= 3.0,
                          fmt("max |sampled - exact| / std_error = %.2f at r=%d (<= 3), 10 x 8192 shots", worst,
                              worst_r)});
  }
  double worst4 = 0.0;
  for (int r = 7; r <= L; ++r) worst4 = std::max(worst4, std::abs(exact[4.0][r - 1].value));
  out.checks.push_back({"3a v=4", worst4 < 0.05, fmt("max_{r>=7} |<Z1 Zr>| = %.3e (< 0.05)", worst4)});
  double min0 = INFINITY;
  int min_r = 1;
  std::string profile;
  for (int r = 1; r <= L; ++r) {
    const double c = std::abs(exact[0.0][r - 1].value);
    profile += fmt("%s%.4f", r == 1 ? "" : " ", c);
    if (c < min0) {
      min0 = c;
      min_r = r;
    }
  }
  out.checks.push_back(
      {"3b v=0", min0 > 0.1, fmt("min_{r<=12} |<Z1 Zr>| = %.4f at r=%d (> 0.1); profile %s", min0, min_r, profile.c_str())});
  return out;
}

std::vector<double> random_params(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  std::vector<double> p(n);
  for (auto& x : p) x = u(rng);
  return p;
}

// 4. Exact gradient and metric against finite-difference oracles.
Outcome criterion4() {
  Outcome out;
  double worst_g = 0.0, worst_m = 0.0, worst_sym = 0.0, min_eig = INFINITY;
  for (int L : {2, 3, 4}) {
    for (int b : {0, 1}) {
      for (double v : {0.0, 4.0}) {
        const ModelParams m = centred_params(L, b, v);
        const AnsatzSpec spec = default_ansatz(m);
        const int P = parameter_count(spec);
        const auto params = random_params(P, derive_seed(kSeed, "c4/" + tag(L, v) + "/b" + std::to_string(b)));
        const auto gens = oracle::ansatz_generators(L, spec.layers, b == 1);
        const oracle::Mat dh = oracle::hamiltonian(L, b, v, m.j);
        auto state = [&](const std::vector<double>& th) {
          oracle::Vec psi = oracle::plus_state(L);
          for (int k = 0; k < P; ++k) psi = oracle::expm_rotation(gens[k], th[k]) * psi;
          return psi;
        };
        const auto grad = gradient_exact(spec, params, build_hamiltonian(m));
        const double eps = 1e-5;
        for (int p = 0; p < P; ++p) {
          auto a = params, c = params;
          a[p] += eps;
          c[p] -= eps;
          const auto va = state(a), vc = state(c);
          const double fd = ((va.adjoint() * dh * va)(0).real() - (vc.adjoint() * dh * vc)(0).real()) / (2 * eps);
          worst_g = std::max(worst_g, std::abs(grad(p) - fd));
        }
        // |<psi(t)|psi(t + d)>|^2 = 1 - d^T g d + O(d^3)
        const auto g = metric_exact(spec, params);
        const auto psi0 = state(params);
        const double h = 1e-4;
        auto fid = [&](int p, double dp, int q, double dq) {
          auto th = params;
          th[p] += dp;
          th[q] += dq;
          return std::norm(psi0.dot(state(th)));
        };
        for (int p = 0; p < P; ++p) {
          for (int q = p; q < P; ++q) {
            const double d2 = (fid(p, h, q, h) - fid(p, h, q, -h) - fid(p, -h, q, h) + fid(p, -h, q, -h)) / (4 * h * h);
            worst_m = std::max(worst_m, std::abs(g(p, q) + 0.5 * d2));
          }
        }
        worst_sym = std::max(worst_sym, (g - g.transpose()).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
        out.fingerprint.insert(out.fingerprint.end(), grad.data(), grad.data() + grad.size());
        out.fingerprint.insert(out.fingerprint.end(), g.data(), g.data() + g.size());
      }
    }
  }
  out.checks.push_back({"4a gradient", worst_g < 1e-6,
                        fmt("max |grad - central FD(eps=1e-5)| = %.2e (< 1e-6), L in {2,3,4}", worst_g)});
  out.checks.push_back(
      {"4b metric", worst_m < 1e-6, fmt("max |g - fidelity Hessian| = %.2e (< 1e-6), L in {2,3,4}", worst_m)});
  out.checks.push_back({"4c symmetric PSD", worst_sym == 0.0 && min_eig >= -1e-10,
                        fmt("max |g - g^T| = %.1e, min eigenvalue = %.2e (>= -1e-10)", worst_sym, min_eig)});
  return out;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = int(x.size());
  double mx = 0, my = 0;
  for (int k = 0; k < n; ++k) {
    mx += std::log10(x[k]) / n;
    my += std::log10(y[k]) / n;
  }
  double sxy = 0, sxx = 0;
  for (int k = 0; k < n; ++k) {
    sxy += (std::log10(x[k]) - mx) * (std::log10(y[k]) - my);
    sxx += (std::log10(x[k]) - mx) * (std::log10(x[k]) - mx);
  }
  return sxy / sxx;
}

// 5. Ancilla circuits: analytic equivalence and shot-noise scaling.
Outcome criterion5() {
  Outcome out;
  ShotPlan analytic;
  analytic.analytic = true;
  double worst_g = 0.0, worst_m = 0.0;
  for (int L : {2, 3}) {
    for (int b : {0, 1}) {
      const ModelParams m = centred_params(L, b, 0.6);
      const AnsatzSpec spec{L, 2, m.boundary()};
      const auto c = ansatz_circuit(spec);
      const auto h = build_hamiltonian(m);
      const auto params = random_params(c.num_parameters(), derive_seed(kSeed, "c5/" + tag(L, 0.6)));
      worst_g = std::max(worst_g,
                         (gradient_shot(c, params, h, analytic) - gradient_exact(c, params, h)).cwiseAbs().maxCoeff());
      worst_m = std::max(worst_m, (metric_shot(c, params, analytic) - metric_exact(c, params)).cwiseAbs().maxCoeff());
    }
  }
  out.checks.push_back({"5a gradient_shot", worst_g < 1e-10, fmt("analytic max deviation = %.2e (< 1e-10)", worst_g)});
  out.checks.push_back({"5b metric_shot", worst_m < 1e-10, fmt("analytic max deviation = %.2e (< 1e-10)", worst_m)});
  out.fingerprint.insert(out.fingerprint.end(), {worst_g, worst_m});

  const ModelParams m = centred_params(2, 0, 0.0);
  const AnsatzSpec spec{2, 1, Boundary::kOpen};
  const auto c = ansatz_circuit(spec);
  const auto h = build_hamiltonian(m);
  const auto params = random_params(c.num_parameters(), derive_seed(kSeed, "c5/slope"));
  const auto g_exact = gradient_exact(c, params, h);
  const auto m_exact = metric_exact(c, params);
  const std::vector<double> shots = {1e2, 1e3, 1e4, 1e5};
  const int repeats = 40;
  std::vector<double> rms_g, rms_m;
  for (double s : shots) {
    double sg = 0.0, sm = 0.0;
    for (int rep = 0; rep < repeats; ++rep) {
      ShotPlan plan;
      plan.shots = std::int64_t(s);
      plan.seed = derive_seed(kSeed, fmt("c5/slope/%g/%d", s, rep));
      sg += (gradient_shot(c, params, h, plan) - g_exact).squaredNorm() / g_exact.size();
      const auto dm = (metric_shot(c, params, plan) - m_exact).eval();
      sm += dm.triangularView<Eigen::Upper>().toDenseMatrix().squaredNorm() / (dm.rows() * (dm.rows() + 1) / 2);
    }
    rms_g.push_back(std::sqrt(sg / repeats));
    rms_m.push_back(std::sqrt(sm / repeats));
  }
  const double kg = slope(shots, rms_g), km = slope(shots, rms_m);
  out.checks.push_back({"5c gradient shot scaling", std::abs(kg + 0.5) <= 0.1,
                        fmt("log-log slope = %.3f (-0.5 +- 0.1); rms %.2e %.2e %.2e %.2e", kg, rms_g[0], rms_g[1],
                            rms_g[2], rms_g[3])});
  out.checks.push_back({"5d metric shot scaling", std::abs(km + 0.5) <= 0.1,
                        fmt("log-log slope = %.3f (-0.5 +- 0.1); rms %.2e %.2e %.2e %.2e", km, rms_m[0], rms_m[1],
                            rms_m[2], rms_m[3])});
  out.fingerprint.insert(out.fingerprint.end(), rms_g.begin(), rms_g.end());
  out.fingerprint.insert(out.fingerprint.end(), rms_m.begin(), rms_m.end());
  return out;
}

// 6. Controlled-braid circuit for Ybar.
Outcome criterion6() {
  Outcome out;
  ShotPlan analytic;
  analytic.analytic = true;
  const ModelParams m = centred_params(8, 1, 0.0);
  const auto gs = exact_ground(m);
  const auto r = optimize_instance(m);
  const AnsatzSpec spec = default_ansatz(m);
  const auto opt_state = prepare_state(spec, r.state.params);
  const double d1 = std::abs(ybar_hadamard(gs.ground_state, analytic).value - ybar_exact(gs.ground_state));
  const double d2 = std::abs(ybar_hadamard(spec, r.state.params, analytic).value - ybar_exact(opt_state));
  out.checks.push_back({"6a analytic", std::max(d1, d2) < 1e-10,
                        fmt("|hadamard - exact| = %.2e (exact L=8 state), %.2e (optimized circuit) (< 1e-10)", d1, d2)});
  ShotPlan plan;
  plan.shots = 1024;
  plan.runs = 5;
  plan.seed = derive_seed(kSeed, "ybar/" + tag(8, 0.0));
  const auto est = ybar_hadamard(spec, r.state.params, plan);
  const double err = std::abs(std::abs(est.value) - kSqrt2);
  out.checks.push_back({"6b sampled", err < 0.1,
                        fmt("<Ybar> = %.4f +- %.4f on the optimized L=8 state (rel_error %.1e), ||<Ybar>| - sqrt2| = "
                            "%.4f (< 0.1)",
                            est.value, est.std_error, r.rel_error, err)});
  out.fingerprint.insert(out.fingerprint.end(), {d1, d2, est.value, est.std_error});
  return out;
}

// 7. ZNE halves the noise-induced energy bias.
Outcome criterion7() {
  Outcome out;
  const ModelParams m = centred_params(6, 0, 0.0);
  const auto r = optimize_instance(m);
  const auto gates = ansatz_circuit(default_ansatz(m)).bind(r.state.params);
  const auto h = build_hamiltonian(m);
  const auto rep = run_zne(plus_state(6), gates, h, {0.01, 0.0}, ZneSchedule{}, 10000,
                           derive_seed(kSeed, "zne/" + tag(6, 0.0)));
  const double raw = std::abs(rep.estimates.front().value - rep.noiseless_reference);
  const double mit = std::abs(rep.extrapolated - rep.noiseless_reference);
  out.checks.push_back({"7 ZNE", mit <= 0.5 * raw,
                        fmt("noiseless %.6f, factor-1 %.6f (bias %.4f), extrapolated %.6f (bias %.4f), ratio %.3f "
                            "(<= 0.5)",
                            rep.noiseless_reference, rep.estimates.front().value, raw, rep.extrapolated, mit,
                            mit / raw)});
  for (const auto& e : rep.estimates) out.fingerprint.push_back(e.value);
  out.fingerprint.push_back(rep.extrapolated);
  return out;
}

// 8. Parameter counts.
Outcome criterion8() {
  Outcome out;
  int bad = 0, total = 0;
  for (int L = 2; L <= 16; ++L) {
    for (int N = 1; N <= 8; ++N) {
      for (auto bc : {Boundary::kPeriodic, Boundary::kOpen}) {
        const AnsatzSpec spec{L, N, bc};
        const int expect = bc == Boundary::kPeriodic ? 3 * L * N : (3 * L - 1) * N;
        const int got = parameter_count(spec);
        bad += (got != expect) + (ansatz_circuit(spec).num_parameters() != expect);
        ++total;
        out.fingerprint.push_back(got);
      }
    }
  }
  out.checks.push_back({"8 parameter_count", bad == 0,
                        fmt("%d of %d (L, N, boundary) cases match 3LN / (3L-1)N", total - bad, total)});
  return out;
}

const std::map<int, std::function<Outcome()>>& criteria() {
  static const std::map<int, std::function<Outcome()>> c = {{1, criterion1}, {2, criterion2}, {3, criterion3},
                                                            {4, criterion4}, {5, criterion5}, {6, criterion6},
                                                            {7, criterion7}, {8, criterion8}};
  return c;
}

bool bit_identical(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

bool report(const Outcome& o) {
  bool ok = true;
  for (const auto& c : o.checks) {
    std::printf("%s  %s  %s\n", c.pass ? "PASS" : "FAIL", c.id.c_str(), c.detail.c_str());
    ok = ok && c.pass;
  }
  std::fflush(stdout);
  return ok;
}

// 9. Every criterion reruns bit-identically.
bool criterion9() {
  bool ok = true;
  for (const auto& [id, run] : criteria()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto a = run();
    const auto b = run();
    const bool same = bit_identical(a.fingerprint, b.fingerprint);
    std::printf("%s  9 rerun criterion %d  %zu values bit-identical: %s (%.0fs)\n", same ? "PASS" : "FAIL", id,
                a.fingerprint.size(), same ? "yes" : "no", seconds_since(t0));
    std::fflush(stdout);
    ok = ok && same;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int k = 1; k < argc; ++k) which.push_back(std::atoi(argv[k]));
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  bool ok = true;
  for (int id : which) {
    if (id == 9) {
      ok = criterion9() && ok;
    } else if (criteria().count(id)) {
      ok = report(criteria().at(id)()) && ok;
    } else {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
  }
  return ok ? 0 : 1;
}
