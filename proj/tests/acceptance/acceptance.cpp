// Acceptance checks 1-10. Prints one line per criterion and exits non-zero
// if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ltiframe/errors.hpp"
#include "ltiframe/frames.hpp"
#include "ltiframe/gramian.hpp"
#include "ltiframe/moq.hpp"
#include "ltiframe/system.hpp"
#include "random_systems.hpp"

namespace {

using namespace ltiframe;
using testing::uniform_int;
using testing::uniform_matrix;
using testing::uniform_vector;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures with their first few messages.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream os;
    os << summary << " [" << checks_ - failures_ << "/" << checks_ << " checks]";
    if (failures_ > 0) os << " first failures: " << first_;
    return {failures_ == 0, os.str()};
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::string first_;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

Matrix double_integrator_a() {
  Matrix a(2, 2);
  a << 0, 1, 0, 0;
  return a;
}

Matrix unit_b2() {
  Matrix b(2, 1);
  b << 0, 1;
  return b;
}

// 1. Double-integrator oracle.
Outcome double_integrator_oracle() {
  Checker c;
  const LtiSystem sys(double_integrator_a(), unit_b2());
  const Gramian g = finite_horizon_gramian(sys, 1.0);
  Matrix exact(2, 2);
  exact << 1.0 / 3.0, 0.5, 0.5, 1.0;
  const double frob = (g.matrix() - exact).norm();
  c.expect(frob <= 1e-10, "Gramian error " + fmt(frob));

  const double s13 = std::sqrt(13.0);
  const double ti = rel(trace_inverse_moq(g), 16.0);
  const double det = rel(det_moq(g), 1.0 / 12.0);
  const double mei = rel(min_eig_inverse_moq(g), 6.0 / (4.0 - s13));
  const double eta = rel(frame_theoretic_moq(g), 4.0 * std::sqrt(2.0) / std::sqrt(29.0));
  c.expect(ti <= 1e-9, "trace_inverse rel " + fmt(ti));
  c.expect(det <= 1e-9, "determinant rel " + fmt(det));
  c.expect(mei <= 1e-9, "min_eig_inverse rel " + fmt(mei));
  c.expect(eta <= 1e-9, "eta rel " + fmt(eta));
  return c.outcome("G err " + fmt(frob) + ", max MOQ rel err " +
                   fmt(std::max({ti, det, mei, eta})));
}

// 2. Tightness equality for A = 0, B = I and its loss under perturbation.
Outcome tightness_equality() {
  Checker c;
  double worst = 0.0;
  double smallest_drop = INFINITY;
  for (int n = 1; n <= 10; ++n) {
    Matrix b = Matrix::Identity(n, n);
    const LtiSystem sys(Matrix::Zero(n, n), b);
    const double eta = frame_theoretic_moq(finite_horizon_gramian(sys, 1.0));
    const double err = std::abs(eta - std::sqrt(n));
    worst = std::max(worst, err);
    c.expect(err <= 1e-12, "n=" + std::to_string(n) + " |eta-sqrt n| " + fmt(err));

    // With n = 1 every nonzero Gramian is tight, so the drop is only
    // meaningful for n >= 2.
    if (n == 1) continue;
    b.col(0) *= 1.1;
    const double perturbed =
        frame_theoretic_moq(finite_horizon_gramian(LtiSystem(Matrix::Zero(n, n), b), 1.0));
    const double drop = std::sqrt(n) - perturbed;
    smallest_drop = std::min(smallest_drop, drop);
    c.expect(drop >= 1e-4, "n=" + std::to_string(n) + " drop " + fmt(drop));
  }
  return c.outcome("max |eta-sqrt n| " + fmt(worst) + ", smallest drop (n>=2) " +
                   fmt(smallest_drop));
}

// 3. Frame operator of the generated frame against the Gramian.
Outcome gramian_frame_equivalence() {
  Checker c;
  std::mt19937_64 rng(1003);
  double worst_ratio = 0.0;
  double worst_tail = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform_int(rng, 1, 5);
    const int m = uniform_int(rng, 1, 2);
    const LtiSystem sys = testing::random_controllable(rng, n, m);
    const GeneratedFrame f = generate_frame(sys, 1.0, build_basis(1.0, m, 32));
    const Matrix g = finite_horizon_gramian(sys, 1.0).matrix();
    const double tail = f.tail_bound();
    const double bound = 2.0 * tail + 1e-10;
    const double err = (frame_operator(f) - g).norm();
    worst_ratio = std::max(worst_ratio, err / bound);
    worst_tail = std::max(worst_tail, tail / g.trace());
    c.expect(err <= bound, "trial " + std::to_string(trial) + " error " + fmt(err));
    c.expect(tail <= 1e-4 * g.trace(), "trial " + std::to_string(trial) + " tail " + fmt(tail));
  }
  return c.outcome("max error/(2 tail + 1e-10) " + fmt(worst_ratio) + ", max tail/trace " +
                   fmt(worst_tail));
}

// 4. Minimum-energy control: simulated endpoint and control energy.
//
// ⟨x, G⁻¹x⟩ carries a relative round-off of about eps·κ(G), so comparing two
// evaluations to 1e-8 needs κ(G) well below 1e8. Systems are drawn with
// κ(G) ≤ 1e6; the same check over every system the library accepts as
// controllable (κ ≤ 1e12) is printed for information.
struct MinEnergyStats {
  int failures = 0;
  double worst_endpoint = 0.0;
  double worst_energy = 0.0;
  double worst_condition = 0.0;
};

MinEnergyStats min_energy_population(std::uint64_t seed, double max_condition,
                                     Checker* c) {
  MinEnergyStats st;
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 1, 5);
    const int m = uniform_int(rng, 1, 2);
    const LtiSystem sys = testing::random_controllable(rng, n, m, 1.0, max_condition);
    const Vector ev = finite_horizon_gramian(sys, 1.0).spectrum();
    st.worst_condition = std::max(st.worst_condition, ev[0] / ev[n - 1]);
    const Vector x = uniform_vector(rng, n);
    const MinEnergyControl mec = min_energy_control(sys, 1.0, x, build_basis(1.0, m, 32));
    const Vector end = simulate(sys, mec.control, Vector::Zero(n), 2000).states.back();
    const double endpoint = (end - x).norm() / (1.0 + x.norm());
    const double energy = rel(mec.control.energy(), mec.cost);
    st.worst_endpoint = std::max(st.worst_endpoint, endpoint);
    st.worst_energy = std::max(st.worst_energy, energy);
    if (endpoint > 1e-6 || energy > 1e-8) ++st.failures;
    if (c) {
      c->expect(endpoint <= 1e-6,
                "trial " + std::to_string(trial) + " endpoint " + fmt(endpoint));
      c->expect(energy <= 1e-8,
                "trial " + std::to_string(trial) + " energy rel " + fmt(energy));
    }
  }
  return st;
}

Outcome min_energy_verification() {
  Checker c;
  const MinEnergyStats st = min_energy_population(1004, 1e6, &c);
  const MinEnergyStats wide = min_energy_population(1004, 1e12, nullptr);
  return c.outcome("kappa<=1e6: max endpoint/(1+|x|) " + fmt(st.worst_endpoint) +
                   ", max energy rel err " + fmt(st.worst_energy) +
                   "; info, kappa<=1e12 (max " + fmt(wide.worst_condition) + "): " +
                   std::to_string(wide.failures) + "/100 outside tolerance, max energy rel err " +
                   fmt(wide.worst_energy));
}

// Random α with at least n positive non-increasing entries and α₁ ≤ Σα/n.
Vector random_norm_sequence(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  while (true) {
    const int len = uniform_int(rng, n, 3 * n);
    Vector a(len);
    for (int i = 0; i < len; ++i) a[i] = u(rng);
    std::sort(a.begin(), a.end(), std::greater<>());
    if (a[0] <= a.sum() / n) return a;
  }
}

// 5. Classical MOQs over feasible spectra are optimized only by the flat one.
Outcome spectrum_optimality() {
  Checker c;
  std::mt19937_64 rng(1005);
  int near_flat = 0;
  double min_gap = INFINITY;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = uniform_int(rng, 2, 8);
    const Vector alpha = random_norm_sequence(rng, n);
    check_norm_sequence(alpha, n);
    const double mean = alpha.sum() / n;
    const double opt_ti = n / mean;
    const double opt_mei = 1.0 / mean;
    const double opt_det = std::pow(mean, n);

    const Vector flat = Vector::Constant(n, mean);
    c.expect(majorizes({flat, alpha}), "flat spectrum not feasible");
    c.expect(rel(flat.cwiseInverse().sum(), opt_ti) <= 1e-12, "flat misses trace optimum");
    c.expect(rel(1.0 / flat.minCoeff(), opt_mei) <= 1e-12, "flat misses min-eig optimum");
    c.expect(rel(flat.prod(), opt_det) <= 1e-12, "flat misses determinant optimum");

    for (int s = 0; s < 200; ++s) {
      const Vector l = sample_feasible_spectrum(alpha, n, rng);
      c.expect(majorizes({l, alpha}), "sample not feasible");
      const double ti = l.cwiseInverse().sum();
      const double mei = 1.0 / l.minCoeff();
      const double det = l.prod();
      c.expect(ti >= opt_ti - 1e-9, "trace_inverse below n/mean: " + fmt(ti - opt_ti));
      c.expect(mei >= opt_mei - 1e-12, "min_eig_inverse below 1/mean");
      c.expect(det <= opt_det * (1.0 + 1e-9), "determinant above mean^n");
      if ((l - flat).lpNorm<Eigen::Infinity>() > 1e-4) {
        const double gap = std::min({ti - opt_ti, mei - opt_mei, opt_det - det});
        min_gap = std::min(min_gap, gap);
        c.expect(gap > 1e-6, "n=" + std::to_string(n) + " sample at distance " +
                                 fmt((l - flat).lpNorm<Eigen::Infinity>()) +
                                 " from flat has trace gap " + fmt(ti - opt_ti) +
                                 ", det gap " + fmt(opt_det - det));
      } else {
        ++near_flat;
      }
    }
  }
  return c.outcome("4000 samples, smallest optimum gap among non-flat " + fmt(min_gap) +
                   ", near-flat samples " + std::to_string(near_flat));
}

// 6. NFP lower bound and its relation to η.
Outcome nfp_bound() {
  Checker c;
  std::mt19937_64 rng(1006);
  double worst_slack = INFINITY;
  double worst_rel = 0.0;
  int deficient = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = uniform_int(rng, 1, 8);
    const int r = trial % 2 == 0 ? n : uniform_int(rng, 1, n);
    const int count = uniform_int(rng, 1, 20);
    Matrix v = uniform_matrix(rng, n, r) * uniform_matrix(rng, r, count);
    if (trial % 7 == 0) v.col(0).setZero();
    if (v.norm() == 0.0) v(0, 0) = 1.0;
    const GeneratedFrame f = GeneratedFrame::from_vectors(v);
    const Matrix s = frame_operator(f);
    const int rank = numerical_rank(linalg::sym_eig(s).values);
    if (rank < n) ++deficient;
    const double p = nfp(f);
    const double eta = frame_theoretic_moq(s);
    worst_slack = std::min(worst_slack, p - 1.0 / rank);
    worst_rel = std::max(worst_rel, std::abs(p - 1.0 / (eta * eta)));
    c.expect(p >= 1.0 / rank - 1e-12, "trial " + std::to_string(trial) + " nfp below 1/rank");
    c.expect(std::abs(p - 1.0 / (eta * eta)) <= 1e-10,
             "trial " + std::to_string(trial) + " nfp vs 1/eta^2");
  }
  return c.outcome("min nfp-1/rank " + fmt(worst_slack) + ", max |nfp-1/eta^2| " +
                   fmt(worst_rel) + ", rank-deficient frames " + std::to_string(deficient));
}

// 7. The η rank bound never exceeds the numerical Gramian rank.
Outcome rank_implication() {
  Checker c;
  std::mt19937_64 rng(1007);
  int violations = 0;
  int uncontrollable = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = uniform_int(rng, 1, 8);
    const int m = uniform_int(rng, 1, 3);
    const LtiSystem sys =
        testing::random_system_maybe_uncontrollable(rng, n, m, trial % 2 == 1);
    const MoqReport r = full_report(sys, Horizon::finite(1.0));
    if (!r.controllable) ++uncontrollable;
    const bool ok = r.rank_lower_bound <= r.gramian_rank;
    if (!ok) ++violations;
    c.expect(ok, "trial " + std::to_string(trial) + " bound " +
                     std::to_string(r.rank_lower_bound) + " > rank " +
                     std::to_string(r.gramian_rank));
  }
  return c.outcome(std::to_string(violations) + " violations, " +
                   std::to_string(uncontrollable) + " uncontrollable systems");
}

// 8. Finite horizon converges to the Lyapunov solution; solver residuals.
Outcome infinite_horizon_consistency() {
  Checker c;
  std::mt19937_64 rng(1008);
  double worst_gap = 0.0;
  double worst_lyap = 0.0;
  double worst_stein = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform_int(rng, 1, 6);
    const int m = uniform_int(rng, 1, 2);
    const LtiSystem sys(testing::random_hurwitz(rng, n), uniform_matrix(rng, n, m));
    const Matrix ginf = infinite_horizon_gramian(sys).matrix();
    const double T = 20.0 / std::abs(linalg::rightmost_eigenvalue(sys.a()).real());
    const double gap = (finite_horizon_gramian(sys, T).matrix() - ginf).norm() / ginf.norm();
    worst_gap = std::max(worst_gap, gap);
    c.expect(gap <= 1e-6, "trial " + std::to_string(trial) + " gap " + fmt(gap));

    const Matrix q = sys.b() * sys.b().transpose();
    const double lyap =
        (sys.a() * ginf + ginf * sys.a().transpose() + q).norm() / q.norm();
    worst_lyap = std::max(worst_lyap, lyap);
    c.expect(lyap <= 1e-10, "trial " + std::to_string(trial) + " Lyapunov " + fmt(lyap));

    const LtiSystem dsys(testing::random_schur_stable(rng, n), uniform_matrix(rng, n, m),
                         TimeMode::discrete);
    const Matrix dq = dsys.b() * dsys.b().transpose();
    const Matrix x = infinite_horizon_gramian(dsys).matrix();
    const double stein = (x - dsys.a() * x * dsys.a().transpose() - dq).norm() / dq.norm();
    worst_stein = std::max(worst_stein, stein);
    c.expect(stein <= 1e-10, "trial " + std::to_string(trial) + " Stein " + fmt(stein));
  }
  return c.outcome("max rel gap " + fmt(worst_gap) + ", max Lyapunov residual " +
                   fmt(worst_lyap) + ", max Stein residual " + fmt(worst_stein) +
                   " (relative to |Q|)");
}

// 9. Discrete recursion and the shift-register example.
Outcome discrete_mirror() {
  Checker c;
  std::mt19937_64 rng(1009);
  int mismatched = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = uniform_int(rng, 1, 6);
    const LtiSystem sys(uniform_matrix(rng, n, n), uniform_matrix(rng, n, 2),
                        TimeMode::discrete);
    const Matrix& a = sys.a();
    const Matrix q = sys.b() * sys.b().transpose();
    for (int T = 1; T <= 10; ++T) {
      const Matrix gt = discrete_finite_gramian(sys, T).matrix();
      const Matrix next = discrete_finite_gramian(sys, T + 1).matrix();
      const bool exact = next == linalg::symmetrize(a * gt * a.transpose() + q);
      if (!exact) ++mismatched;
      c.expect(exact, "trial " + std::to_string(trial) + " T " + std::to_string(T));
    }
  }
  const LtiSystem shift(double_integrator_a(), unit_b2(), TimeMode::discrete);
  const Gramian g = discrete_finite_gramian(shift, 2);
  c.expect(g.matrix() == Matrix::Identity(2, 2), "T=2 Gramian is not I");
  const double eta = frame_theoretic_moq(g);
  c.expect(std::abs(eta - std::sqrt(2.0)) <= 1e-15, "eta " + fmt(eta));
  return c.outcome("recursion mismatches " + std::to_string(mismatched) +
                   " of 200, shift-register eta " + fmt(eta));
}

double best_subset_eta(const std::vector<Matrix>& single, int k) {
  const int count = static_cast<int>(single.size());
  double best = 0.0;
  std::vector<int> pick(k);
  std::function<void(int, int, Matrix)> recurse = [&](int start, int depth, Matrix acc) {
    if (depth == k) {
      if (acc.norm() > 0.0) best = std::max(best, frame_theoretic_moq(acc));
      return;
    }
    for (int j = start; j < count; ++j) recurse(j + 1, depth + 1, acc + single[j]);
  };
  recurse(0, 0, Matrix::Zero(single[0].rows(), single[0].cols()));
  return best;
}

// 10. Greedy against exhaustive search.
Outcome greedy_vs_exhaustive() {
  Checker c;
  std::mt19937_64 rng(1010);
  double worst = INFINITY;
  double sum = 0.0;
  int runs = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = uniform_int(rng, 2, 5);
    const int count = uniform_int(rng, 3, 6);
    const Matrix a = uniform_matrix(rng, n, n);
    std::vector<Vector> cands;
    std::vector<Matrix> single;
    for (int j = 0; j < count; ++j) {
      cands.push_back(uniform_vector(rng, n));
      single.push_back(
          finite_horizon_gramian(LtiSystem(a, Matrix(cands.back())), 1.0).matrix());
    }
    for (int k = 1; k <= 3; ++k) {
      const ActuatorSelection sel = select_actuators(a, cands, k, Horizon::finite(1.0));
      const double ratio = sel.eta.back() / best_subset_eta(single, k);
      worst = std::min(worst, ratio);
      sum += ratio;
      ++runs;
      c.expect(ratio <= 1.0 + 1e-12, "trial " + std::to_string(trial) + " k " +
                                         std::to_string(k) + " ratio " + fmt(ratio));
    }
  }
  std::ostringstream os;
  os << runs << " runs, greedy/exhaustive eta ratio min " << worst << " mean " << sum / runs;
  return c.outcome(os.str());
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"double-integrator oracle", double_integrator_oracle},
      {"tightness equality", tightness_equality},
      {"Gramian-frame equivalence", gramian_frame_equivalence},
      {"minimum-energy verification", min_energy_verification},
      {"spectrum optimality", spectrum_optimality},
      {"NFP bound", nfp_bound},
      {"rank implication", rank_implication},
      {"infinite-horizon consistency", infinite_horizon_consistency},
      {"discrete mirror", discrete_mirror},
      {"greedy vs exhaustive", greedy_vs_exhaustive},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& cr : criteria) {
    ++index;
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2d %-30s %s  %s\n", index, cr.name, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
