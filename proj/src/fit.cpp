#include "kitten/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "kitten/errors.hpp"
#include "kitten/parallel.hpp"

namespace kitten {

namespace {

constexpr int kAlignSamples = 7200;  // 0.05 degree

RVector resample_periodic(const RVector& v, int m) {
  if (v.size() == m) return v;
  const Eigen::Index n = v.size();
  RVector out(m);
  for (int j = 0; j < m; ++j) {
    const double pos = static_cast<double>(j) * n / m;
    const Eigen::Index i0 = static_cast<Eigen::Index>(std::floor(pos));
    const double w = pos - i0;
    out[j] = (1.0 - w) * v[i0 % n] + w * v[(i0 + 1) % n];
  }
  return out;
}

double sigmoid(double y) { return 1.0 / (1.0 + std::exp(-y)); }
double logit(double t) { return std::log(t / (1.0 - t)); }

}  // namespace

double align_theta(const RVector& target, const RVector& candidate, double period) {
  if (target.size() < 3 || candidate.size() != target.size()) {
    throw ShapeError("align_theta: profiles must share a sample count >= 3");
  }
  RVector a = resample_periodic(target, kAlignSamples);
  RVector b = resample_periodic(candidate, kAlignSamples);
  a.array() -= a.mean();
  b.array() -= b.mean();
  if (a.cwiseAbs().maxCoeff() < 1e-12 || b.cwiseAbs().maxCoeff() < 1e-12) {
    throw AlignmentError("align_theta: flat angular profile");
  }
  const int m = kAlignSamples;
  RVector corr(m);
  // corr(s) = sum_j a(j) b(j - s)
  parallel_rows(m, [&](int s) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += a[j] * b[(j - s + m) % m];
    corr[s] = acc;
  });
  Eigen::Index best = 0;
  corr.maxCoeff(&best);
  const double left = corr[(best - 1 + m) % m], mid = corr[best], right = corr[(best + 1) % m];
  const double curv = left - 2.0 * mid + right;
  const double offset = curv < 0.0 ? 0.5 * (left - right) / curv : 0.0;
  double theta = (static_cast<double>(best) + offset) * 2.0 * kPi / m;
  theta = std::fmod(theta, period);
  if (theta < 0.0) theta += period;
  return theta;
}

double align_theta(const RVector& target, const std::function<RVector(int)>& candidate_fn,
                   double period) {
  return align_theta(target, candidate_fn(static_cast<int>(target.size())), period);
}

namespace {

// Fock-trace objective with the p x p reduction K = V^dag V, R = V^dag rho V.
class PureObjective {
 public:
  explicit PureObjective(const OscillatorDM& rho)
      : rho_(rho.rho), purity_(rho.purity()), n_(rho.n_max()) {}

  double purity() const { return purity_; }

  double operator()(const KittenEnsemble& ens) const {
    CMatrix v = ens.ring().fock_vectors(n_);
    for (int k = 0; k < ens.p; ++k) v.col(k).normalize();
    const CMatrix kmat = v.adjoint() * v;
    const CMatrix rmat = v.adjoint() * rho_ * v;
    const CVector f = Eigen::Map<const CVector>(ens.f.data(), ens.p);
    const Eigen::Map<const RVector> g(ens.g.data(), ens.p);
    const double tau = ens.tau;
    double ref2 = 0.0, cross = 0.0;
    if (tau > 0.0) {
      const double norm = f.dot(kmat * f).real();
      if (!(norm > 0.0)) return std::numeric_limits<double>::infinity();
      ref2 += tau * tau;
      cross += tau * f.dot(rmat * f).real() / norm;
      if (tau < 1.0) {
        const double gsum = g.sum();
        if (!(gsum > 0.0)) return std::numeric_limits<double>::infinity();
        const RVector overlap = (kmat * f).cwiseAbs2();
        ref2 += 2.0 * tau * (1.0 - tau) * g.dot(overlap) / (gsum * norm);
      }
    }
    if (tau < 1.0) {
      const double gsum = g.sum();
      if (!(gsum > 0.0)) return std::numeric_limits<double>::infinity();
      const RVector w = g / gsum;
      ref2 += (1.0 - tau) * (1.0 - tau) * w.dot(kmat.cwiseAbs2() * w);
      cross += (1.0 - tau) * w.dot(rmat.diagonal().real());
    }
    return std::sqrt(std::max(0.0, purity_ + ref2 - 2.0 * cross));
  }

 private:
  const CMatrix& rho_;
  double purity_;
  int n_;
};

// Layout: theta, logit tau, |f_k| (k >= 1), arg f_k (k >= 1), y_k with g_k = y_k^2.
KittenEnsemble unpack_pure(const RVector& x, int p, Complex base_alpha, double r, double vartheta) {
  KittenEnsemble e;
  e.p = p;
  e.base_alpha = base_alpha;
  e.r = r;
  e.vartheta = vartheta;
  e.theta_tilde = x[0];
  e.tau = sigmoid(x[1]);
  e.f.assign(static_cast<std::size_t>(p), Complex(1.0));
  e.g.assign(static_cast<std::size_t>(p), 0.0);
  for (int k = 1; k < p; ++k) e.f[k] = std::polar(std::abs(x[1 + k]), x[p + k]);
  for (int k = 0; k < p; ++k) e.g[k] = x[2 * p + k] * x[2 * p + k];
  return e;
}

struct RestartOutcome {
  SimplexResult simplex;
  int index = 0;
};

template <typename Objective>
RestartOutcome run_restarts(const std::vector<RVector>& seeds, const RVector& step, Objective&& f,
                            const FitBudget& budget, int& evaluations) {
  std::vector<RestartOutcome> outcomes(seeds.size());
  SimplexOptions opts;
  opts.max_evaluations = budget.max_evaluations;
  opts.spread_tol = budget.spread_tol;
  parallel_rows(static_cast<int>(seeds.size()), [&](int i) {
    outcomes[static_cast<std::size_t>(i)] = {nelder_mead(f, seeds[static_cast<std::size_t>(i)], step, opts), i};
  }, budget.threads);
  evaluations = 0;
  for (const auto& o : outcomes) evaluations += o.simplex.evaluations;
  return *std::min_element(outcomes.begin(), outcomes.end(), [](const auto& a, const auto& b) {
    return std::tie(a.simplex.value, a.index) < std::tie(b.simplex.value, b.index);
  });
}

}  // namespace

double pure_objective(const OscillatorDM& rho, const KittenEnsemble& ens) {
  ens.validate();
  return PureObjective(rho)(ens);
}

PureFitResult reconstruct_pure_neighborhood(const OscillatorDM& rho, int p, Complex base_alpha,
                                            double r, double vartheta, const FitBudget& budget) {
  if (p < 1) throw DomainError("reconstruct_pure_neighborhood: p must be >= 1");
  if (budget.max_restarts < 1) throw DomainError("reconstruct_pure_neighborhood: no restarts");
  const double period = 2.0 * kPi / p;
  const RVector target = angular_distribution_from_dm(rho.rho, kAlignSamples);
  KittenEnsemble incoherent = KittenEnsemble::uniform(p, base_alpha, r, vartheta);
  incoherent.tau = 0.0;
  const RVector candidate =
      angular_distribution_from_dm(reference_fock_dm(incoherent, rho.n_max()).rho, kAlignSamples);
  const double theta0 = align_theta(target, candidate, period);

  std::vector<RVector> seeds;
  for (double tau : {0.8, 0.95, 0.999}) {
    for (int s = 0; s < p && static_cast<int>(seeds.size()) < budget.max_restarts; ++s) {
      RVector x(3 * p);
      x[0] = theta0;
      x[1] = logit(tau);
      for (int k = 1; k < p; ++k) {
        x[1 + k] = 1.0;
        x[p + k] = 2.0 * kPi * k * s / p;
      }
      for (int k = 0; k < p; ++k) x[2 * p + k] = 1.0;
      seeds.push_back(x);
    }
  }
  RVector step(3 * p);
  step[0] = 0.1;
  step[1] = 1.0;
  for (int k = 1; k < p; ++k) {
    step[1 + k] = 0.2;
    step[p + k] = 0.5;
  }
  for (int k = 0; k < p; ++k) step[2 * p + k] = 0.3;

  const PureObjective objective(rho);
  auto f = [&](const RVector& x) { return objective(unpack_pure(x, p, base_alpha, r, vartheta)); };
  int evaluations = 0;
  const RestartOutcome best = run_restarts(seeds, step, f, budget, evaluations);

  PureFitResult out;
  out.best_params = unpack_pure(best.simplex.x, p, base_alpha, r, vartheta);
  out.best_params.theta_tilde = std::fmod(out.best_params.theta_tilde, 2.0 * kPi);
  if (out.best_params.theta_tilde < 0.0) out.best_params.theta_tilde += 2.0 * kPi;
  // one component: pure and mixed parts coincide, tau is arbitrary
  if (p == 1) out.best_params.tau = 1.0;
  out.objective = objective(out.best_params);
  out.purity = objective.purity();
  out.ratio = out.objective / std::sqrt(out.purity);
  out.theta_seed = theta0;
  out.evaluations = evaluations;
  out.restarts_used = static_cast<int>(seeds.size());
  out.converged = best.simplex.converged;
  return out;
}

double moment_residual(const CovarianceSummary& a, const CovarianceSummary& b) {
  auto sq = [](double d, double s) { return (d / s) * (d / s); };
  return sq(a.mean_q - b.mean_q, 1e-2) + sq(a.mean_p - b.mean_p, 1e-2) +
         sq(a.sigma11 - b.sigma11, 5e-2) + sq(a.sigma12 - b.sigma12, 5e-2) +
         sq(a.sigma22 - b.sigma22, 5e-2);
}

ThermalComparison compare_thermal(const OscillatorDM& rho, const ThermalKittenMixture& mix,
                                  const PhaseGrid& wigner_grid, const PhaseGrid& husimi_grid) {
  ThermalComparison out;
  out.rho_moments = covariance_from_dm(rho.rho);
  out.mixture_moments = thermal_moments(mix);
  out.residual = moment_residual(out.rho_moments, out.mixture_moments);
  out.purity = rho.purity();
  const PhaseGrid w_rho = wigner_from_dm(rho.rho, wigner_grid);
  const PhaseGrid w_mix = thermal_wigner(mix, wigner_grid);
  out.d_hs = hs_distance_wigner(w_rho, w_mix);
  out.ratio = out.d_hs / std::sqrt(out.purity);
  out.d_hs_fock = hs_distance(rho, thermal_fock_dm(mix, rho.n_max()));
  const PhaseGrid q_rho = husimi_from_dm(rho.rho, husimi_grid);
  const PhaseGrid q_mix = thermal_husimi(mix, husimi_grid);
  out.kl = kl_divergence_q(q_rho, q_mix);
  return out;
}

namespace {

ThermalKittenMixture unpack_thermal(const RVector& x, int count, bool fit_nbar, Complex base_alpha,
                                    double r, double vartheta, double theta) {
  ThermalKittenMixture m = ThermalKittenMixture::uniform(count, base_alpha, r, vartheta, theta);
  for (int k = 0; k < count; ++k) m.g[k] = x[k] * x[k];
  m.nbar = fit_nbar ? x[count] * x[count] : 0.0;
  return m;
}

}  // namespace

ThermalFitResult fit_thermal_mixture(const OscillatorDM& rho, int count, Complex base_alpha,
                                     double r, double vartheta, const PhaseGrid& wigner_grid,
                                     const PhaseGrid& husimi_grid, const FitBudget& budget,
                                     bool fit_nbar) {
  if (count < 2 || count % 2 != 0) throw DomainError("fit_thermal_mixture: count must be even");
  if (budget.max_restarts < 1) throw DomainError("fit_thermal_mixture: no restarts");
  const double period = 2.0 * kPi / count;
  const RVector target = angular_distribution_from_dm(rho.rho, kAlignSamples);
  const ThermalKittenMixture base = ThermalKittenMixture::uniform(count, base_alpha, r, vartheta);
  const RVector candidate =
      angular_distribution_from_dm(thermal_fock_dm(base, rho.n_max()).rho, kAlignSamples);
  const double theta = align_theta(target, candidate, period);

  const CovarianceSummary target_moments = covariance_from_dm(rho.rho);
  const int dim = count + (fit_nbar ? 1 : 0);
  std::vector<RVector> seeds;
  const std::vector<double> nbar_seeds = fit_nbar ? std::vector<double>{0.1, 0.4} : std::vector<double>{0.0};
  for (double y : nbar_seeds) {
    if (static_cast<int>(seeds.size()) >= budget.max_restarts) break;
    RVector x = RVector::Ones(dim);
    if (fit_nbar) x[count] = y;
    seeds.push_back(x);
  }
  const RVector step = RVector::Constant(dim, 0.2);
  auto f = [&](const RVector& x) {
    const ThermalKittenMixture m = unpack_thermal(x, count, fit_nbar, base_alpha, r, vartheta, theta);
    double total = 0.0;
    for (double w : m.g) total += w;
    if (!(total > 0.0)) return std::numeric_limits<double>::infinity();
    return moment_residual(target_moments, thermal_moments(m));
  };
  int evaluations = 0;
  const RestartOutcome best = run_restarts(seeds, step, f, budget, evaluations);

  ThermalFitResult out;
  out.best_params = unpack_thermal(best.simplex.x, count, fit_nbar, base_alpha, r, vartheta, theta);
  out.objective = moment_residual(target_moments, thermal_moments(out.best_params));
  out.comparison = compare_thermal(rho, out.best_params, wigner_grid, husimi_grid);
  out.evaluations = evaluations;
  out.restarts_used = static_cast<int>(seeds.size());
  out.converged = best.simplex.converged;
  return out;
}

}  // namespace kitten
