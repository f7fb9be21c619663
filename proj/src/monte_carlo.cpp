// SPDX-License-Identifier: Apache-2.0
//
// stars-fd: spectral-efficiency evaluation and passive-beamforming optimization
// for full-duplex massive-MIMO systems assisted by a simultaneously transmitting
// and reflecting surface.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "stars/monte_carlo.hpp"

#include "json.hpp"

#include <functional>
#include <tuple>
#include <numbers>
#include <thread>

namespace stars {

ChannelFactors ChannelFactors::of(const CorrelationSet& corr) {
  return {hermitian_sqrt(corr.R_b), hermitian_sqrt(corr.R_bt), hermitian_sqrt(corr.R_s)};
}

Rng substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x6d63u};
  return Rng(seq);
}

namespace {

cmat cn(Eigen::Index rows, Eigen::Index cols, double var, Rng& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5 * var));
  cmat X(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = nd(rng);
      const double im = nd(rng);
      X(i, j) = cplx(re, im);
    }
  return X;
}

}  // namespace

ChannelRealization draw_channels(const Scenario& scn, const ChannelFactors& f, Rng& rng) {
  const auto& c = scn.cfg;
  const auto& g = scn.corr.gains;
  const int N = c.N(), K = scn.K();
  ChannelRealization r;
  r.G = std::sqrt(g.delta_g) * f.sqrt_Rs * cn(N, c.M_T, 1.0, rng) * f.sqrt_Rb;
  r.G_t = std::sqrt(g.delta_gt) * f.sqrt_Rbt * cn(c.M_R, N, 1.0, rng) * f.sqrt_Rs;
  r.h = cn(K, N, 1.0, rng) * f.sqrt_Rs;
  r.h_t = f.sqrt_Rs * cn(N, K, 1.0, rng);
  for (int k = 0; k < K; ++k) {
    r.h.row(k) *= std::sqrt(g.delta_h[k]);
    r.h_t.col(k) *= std::sqrt(g.delta_ht[k]);
  }
  r.G_b = f.sqrt_Rbt * cn(c.M_R, c.M_T, c.sigma2_L(), rng) * f.sqrt_Rb;
  r.H = cn(K, K, 1.0, rng);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < K; ++j) r.H(k, j) *= std::sqrt(scn.sigma_kj(k, j));
  return r;
}

cmat pilot_book(int tau, int K, double p_train) {
  if (tau < K) throw Error(ErrorKind::InvalidArgument, "pilot length must be at least the number of users");
  cmat X(tau, K);
  const double a = std::sqrt(p_train);
  for (int n = 0; n < tau; ++n)
    for (int k = 0; k < K; ++k) X(n, k) = std::polar(a, -2.0 * std::numbers::pi * n * k / tau);
  return X;
}

namespace {

// Receives sum_i u_i x_i^T + W and correlates with each pilot.
std::vector<cvec> despread(const cmat& U, const cmat& X, double sigma2, double p_train, Rng& rng, bool noise_free) {
  const Eigen::Index tau = X.rows();
  cmat Y = U * X.transpose();
  if (!noise_free) Y += cn(U.rows(), tau, sigma2, rng);
  const cmat R = Y * X.conjugate() / (static_cast<double>(tau) * p_train);
  std::vector<cvec> out;
  for (Eigen::Index k = 0; k < R.cols(); ++k) out.emplace_back(R.col(k));
  return out;
}

// Cascaded channels of every user as matrix columns: uplink M_R x K and the
// conjugate-transposed downlink M_T x K.
std::pair<cmat, cmat> cascaded(const ChannelRealization& real, const PBM& pbm, const Scenario& scn) {
  const int K = scn.K();
  const cmat U_ul = real.G_t * pbm.theta_r.asDiagonal() * real.h_t;
  const cmat GrH = (pbm.theta_r.asDiagonal() * real.G).adjoint();
  const cmat GtH = (pbm.theta_t.asDiagonal() * real.G).adjoint();
  cmat U_dl(scn.cfg.M_T, K);
  for (int k = 0; k < K; ++k)
    U_dl.col(k) = (scn.region(k) == Region::Reflection ? GrH : GtH) * real.h.row(k).adjoint();
  return {U_ul, U_dl};
}

void train(TrainingObservation& t, const cmat& U_ul, const cmat& U_dl, const Scenario& scn, Rng& rng, bool noise_free) {
  const auto& c = scn.cfg;
  const int K = scn.K();
  if (!(c.p_train() > 0.0)) throw Error(ErrorKind::InvalidArgument, "training needs positive pilot power");
  t.r_ul = despread(U_ul, pilot_book(c.tau_up, K, c.p_train()), c.sigma2(), c.p_train(), rng, noise_free);
  t.r_dl = despread(U_dl, pilot_book(c.tau_dp, K, c.p_train()), c.sigma2(), c.p_train(), rng, noise_free);
  t.u_ul.clear();
  t.u_dl.clear();
  for (int k = 0; k < K; ++k) {
    t.u_ul.emplace_back(U_ul.col(k));
    t.u_dl.emplace_back(U_dl.col(k));
  }
}

}  // namespace

TrainingObservation simulate_training(const ChannelRealization& real, const PBM& pbm, const Scenario& scn, Rng& rng,
                                      bool noise_free) {
  const auto [U_ul, U_dl] = cascaded(real, pbm, scn);
  TrainingObservation t;
  train(t, U_ul, U_dl, scn, rng, noise_free);
  return t;
}

std::string_view to_string(ChannelModel m) {
  return m == ChannelModel::Physical ? "physical" : "gaussian_surrogate";
}

namespace {

// Everything one realization contributes to the data phase.
struct LinkDraw {
  cmat U_ul, U_dl;  // cascaded channels, one column per user
  cmat Z_si;        // M_R x M_T BS -> surface -> BS channel
  cmat G_b;
  cmat surf;        // (k, j): leakage of user j's uplink into user k's downlink
  cmat H;
};

// Per-user sample columns, followed by one shared column for tr(F F^H).
enum Var : int {
  ZuRe, ZuIm, Au1, AuMui, AuSi, AuLi, AuNoise,
  ZdRe, ZdIm, Bd1, BdMui, BdIui, BdSurf,
  kVarsPerUser
};

struct Sampler {
  const Scenario& scn;
  const PBM& pbm;
  const StatisticalState& st;
  Mode mode;
  ChannelModel model;
  ChannelFactors f;
  std::vector<cmat> W_ul, W_dl;  // R Q of each user
  bool trained;

  LinkDraw physical(Rng& rng) const {
    const ChannelRealization real = draw_channels(scn, f, rng);
    LinkDraw d;
    std::tie(d.U_ul, d.U_dl) = cascaded(real, pbm, scn);
    d.Z_si = real.G_t * pbm.theta_r.asDiagonal() * real.G;
    d.G_b = real.G_b;
    const cmat Sr = real.h * pbm.theta_r.asDiagonal() * real.h_t;
    const cmat St = real.h * pbm.theta_t.asDiagonal() * real.h_t;
    d.surf.resize(scn.K(), scn.K());
    for (int k = 0; k < scn.K(); ++k) d.surf.row(k) = scn.region(k) == Region::Reflection ? Sr.row(k) : St.row(k);
    d.H = real.H;
    return d;
  }

  LinkDraw surrogate(Rng& rng) const {
    const auto& c = scn.cfg;
    const auto& g = scn.corr.gains;
    const int K = scn.K();
    LinkDraw d;
    d.U_ul = f.sqrt_Rbt * cn(c.M_R, K, 1.0, rng);
    d.U_dl = f.sqrt_Rb * cn(c.M_T, K, 1.0, rng);
    for (int k = 0; k < K; ++k) {
      d.U_ul.col(k) *= std::sqrt(st.a_ul(k));
      d.U_dl.col(k) *= std::sqrt(st.a_dl(k));
    }
    d.Z_si = std::sqrt(g.delta_g * g.delta_gt * st.t_r) * f.sqrt_Rbt * cn(c.M_R, c.M_T, 1.0, rng) * f.sqrt_Rb;
    d.G_b = f.sqrt_Rbt * cn(c.M_R, c.M_T, c.sigma2_L(), rng) * f.sqrt_Rb;
    d.surf = cn(K, K, 1.0, rng);
    d.H = cn(K, K, 1.0, rng);
    for (int k = 0; k < K; ++k)
      for (int j = 0; j < K; ++j) {
        d.surf(k, j) *= std::sqrt(g.delta_h[k] * g.delta_ht[j] * st.t_of(scn.region(k)));
        d.H(k, j) *= std::sqrt(scn.sigma_kj(k, j));
      }
    return d;
  }

  void fill(Rng& rng, Eigen::Ref<rvec> row) const {
    const auto& c = scn.cfg;
    const int K = scn.K();
    const LinkDraw d = model == ChannelModel::Physical ? physical(rng) : surrogate(rng);
    cmat V = cmat::Zero(c.M_R, K), F = cmat::Zero(c.M_T, K);
    if (trained) {
      TrainingObservation t;
      train(t, d.U_ul, d.U_dl, scn, rng, false);
      for (int k = 0; k < K; ++k) {
        V.col(k) = W_ul[k] * t.r_ul[k];
        F.col(k) = W_dl[k] * t.r_dl[k];
      }
    }
    const cmat VH = V.adjoint();
    const cmat Zu = VH * d.U_ul;       // v_k^H u~_i
    const cmat Zsi = VH * d.Z_si * F;  // v_k^H G~ Theta_r G f_j
    const cmat Zli = VH * d.G_b * F;   // v_k^H G_b f_j
    const cmat Zd = d.U_dl.adjoint() * F;  // u_k f_j

    for (int k = 0; k < K; ++k) {
      const int b = k * kVarsPerUser;
      row(b + ZuRe) = Zu(k, k).real();
      row(b + ZuIm) = Zu(k, k).imag();
      row(b + Au1) = std::norm(Zu(k, k));
      double mui = 0.0, iui = 0.0, surf = 0.0, dmui = 0.0;
      for (int i = 0; i < K; ++i) {
        if (i != k) mui += scn.p_u(i) * std::norm(Zu(k, i));
        if (i != k) dmui += std::norm(Zd(k, i));
        if (!(mode == Mode::HdStars && i == k)) iui += scn.p_u(i) * std::norm(d.H(k, i));
        if (surface_leak_active(scn, mode, k, i)) surf += scn.p_u(i) * std::norm(d.surf(k, i));
      }
      row(b + AuMui) = mui;
      row(b + AuSi) = mode == Mode::HdStars ? 0.0 : Zsi.row(k).squaredNorm();
      row(b + AuLi) = mode == Mode::HdStars ? 0.0 : Zli.row(k).squaredNorm();
      row(b + AuNoise) = V.col(k).squaredNorm();
      row(b + ZdRe) = Zd(k, k).real();
      row(b + ZdIm) = Zd(k, k).imag();
      row(b + Bd1) = std::norm(Zd(k, k));
      row(b + BdMui) = dmui;
      row(b + BdIui) = iui;
      row(b + BdSurf) = surf;
    }
    row(K * kVarsPerUser) = F.squaredNorm();
  }
};

// First-order (delta-method) standard error of fn(mean).
Estimate delta_estimate(const std::function<double(const rvec&)>& fn, const rvec& mean, const rmat& cov, int n) {
  Estimate e;
  e.mean = fn(mean);
  rvec grad = rvec::Zero(mean.size());
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    const double scale = std::max(std::abs(mean(i)), std::sqrt(std::max(cov(i, i), 0.0)));
    if (!(scale > 0.0)) continue;
    const double h = 1e-6 * scale;
    rvec lo = mean, hi = mean;
    lo(i) -= h;
    hi(i) += h;
    grad(i) = (fn(hi) - fn(lo)) / (2.0 * h);
  }
  e.se = std::sqrt(std::max(0.0, grad.dot(cov * grad) / n));
  return e;
}

double safe_div(double a, double b) { return b > 0.0 ? a / b : 0.0; }

}  // namespace

McReport mc_uatf_terms(const Scenario& scn, const PBM& pbm, int n, std::uint64_t seed, Mode mode, int jobs,
                       ChannelModel model) {
  if (n < 100) throw Error(ErrorKind::InvalidArgument, "at least 100 realizations are required");
  if (pbm.size() != scn.cfg.N()) throw Error(ErrorKind::InvalidArgument, "PBM length differs from the element count");
  const auto& c = scn.cfg;
  const int K = scn.K();
  const StatisticalState st = build_state(scn, pbm);
  Sampler s{scn, pbm, st, mode, model, ChannelFactors::of(scn.corr), {}, {}, c.p_train() > 0.0};
  for (int k = 0; k < K; ++k) {
    s.W_ul.push_back(st.R_ul[k] * st.est.Q_ul[k]);
    s.W_dl.push_back(st.R_dl[k] * st.est.Q_dl[k]);
  }

  const int p = K * kVarsPerUser + 1;
  rmat X(n, p);
  jobs = std::clamp(jobs, 1, n);
  auto work = [&](int w) {
    for (int i = w; i < n; i += jobs) {
      Rng rng = substream(seed, static_cast<std::uint64_t>(i));
      rvec row(p);
      s.fill(rng, row);
      X.row(i) = row.transpose();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w);
  }

  const rvec mean = X.colwise().mean().transpose();
  const rmat centred = X.rowwise() - mean.transpose();
  const rmat cov = centred.transpose() * centred / (n - 1.0);
  const int y = K * kVarsPerUser;
  const double p_b = c.p_b(), s2 = c.sigma2();

  auto at = [](const rvec& m, int k, int v) { return m(k * kVarsPerUser + v); };
  auto S_u = [&](int k) { return [&, k](const rvec& m) { return scn.p_u(k) * (std::pow(at(m, k, ZuRe), 2) + std::pow(at(m, k, ZuIm), 2)); }; };
  auto var_u = [&](int k) {
    return [&, k](const rvec& m) {
      return scn.p_u(k) * (at(m, k, Au1) - std::pow(at(m, k, ZuRe), 2) - std::pow(at(m, k, ZuIm), 2));
    };
  };
  auto si_u = [&](int k) { return [&, k](const rvec& m) { return p_b * safe_div(at(m, k, AuSi), m(y)); }; };
  auto li_u = [&](int k) { return [&, k](const rvec& m) { return p_b * safe_div(at(m, k, AuLi), m(y)); }; };
  auto I_u = [&](int k) {
    return [&, k](const rvec& m) {
      return var_u(k)(m) + at(m, k, AuMui) + si_u(k)(m) + li_u(k)(m) + s2 * at(m, k, AuNoise);
    };
  };
  auto zd2 = [&](const rvec& m, int k) { return std::pow(at(m, k, ZdRe), 2) + std::pow(at(m, k, ZdIm), 2); };
  auto S_d = [&](int k) { return [&, k](const rvec& m) { return p_b * safe_div(zd2(m, k), m(y)); }; };
  auto var_d = [&](int k) { return [&, k](const rvec& m) { return p_b * safe_div(at(m, k, Bd1) - zd2(m, k), m(y)); }; };
  auto mui_d = [&](int k) { return [&, k](const rvec& m) { return p_b * safe_div(at(m, k, BdMui), m(y)); }; };
  auto I_d = [&](int k) {
    return [&, k](const rvec& m) {
      const double bs = m(y) > 0.0 ? var_d(k)(m) + mui_d(k)(m) : 0.0;
      return bs + at(m, k, BdIui) + at(m, k, BdSurf) + s2;
    };
  };
  auto gamma_u = [&](int k) { return [&, k](const rvec& m) { return safe_div(S_u(k)(m), I_u(k)(m)); }; };
  auto gamma_d = [&](int k) { return [&, k](const rvec& m) { return safe_div(S_d(k)(m), I_d(k)(m)); }; };
  const double pre = mode == Mode::HdStars ? 0.5 * c.zeta() : c.zeta();
  auto sum = [&](const rvec& m) {
    double acc = 0.0;
    for (int k = 0; k < K; ++k) acc += std::log2(1.0 + gamma_u(k)(m)) + std::log2(1.0 + gamma_d(k)(m));
    return pre * acc;
  };
  auto plain = [&](int k, int v) { return [k, v, &at](const rvec& m) { return at(m, k, v); }; };

  McReport r;
  r.n = n;
  for (int k = 0; k < K; ++k) {
    McUserTerms u;
    u.S_u = delta_estimate(S_u(k), mean, cov, n);
    u.I_u = delta_estimate(I_u(k), mean, cov, n);
    u.var_u = delta_estimate(var_u(k), mean, cov, n);
    u.mui_u = delta_estimate(plain(k, AuMui), mean, cov, n);
    u.si_u = delta_estimate(si_u(k), mean, cov, n);
    u.li_u = delta_estimate(li_u(k), mean, cov, n);
    u.noise_u = delta_estimate([&, k](const rvec& m) { return s2 * at(m, k, AuNoise); }, mean, cov, n);
    u.S_d = delta_estimate(S_d(k), mean, cov, n);
    u.I_d = delta_estimate(I_d(k), mean, cov, n);
    u.var_d = delta_estimate(var_d(k), mean, cov, n);
    u.mui_d = delta_estimate(mui_d(k), mean, cov, n);
    u.iui_d = delta_estimate(plain(k, BdIui), mean, cov, n);
    u.surface_d = delta_estimate(plain(k, BdSurf), mean, cov, n);
    u.noise_d = s2;
    u.gamma_u = delta_estimate(gamma_u(k), mean, cov, n);
    u.gamma_d = delta_estimate(gamma_d(k), mean, cov, n);
    r.users.push_back(u);
  }
  r.beta = delta_estimate([&](const rvec& m) { return safe_div(K, m(y)); }, mean, cov, n);
  r.sum_se = delta_estimate(sum, mean, cov, n);
  return r;
}

ValidationReport validate_closed_form(const Scenario& scn, const PBM& pbm, int n, double tolerance, std::uint64_t seed,
                                      Mode mode, int jobs, const std::string& corrupt_term, ChannelModel model) {
  if (!(tolerance >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be nonnegative");
  const StatisticalState st = build_state(scn, pbm);
  const SEReport cf = sum_se(scn, st, mode);
  const McReport mc = mc_uatf_terms(scn, pbm, n, seed, mode, jobs, model);
  const double phys = st.T > 0.0 ? scn.cfg.p_b() / st.T : 0.0;

  ValidationReport rep;
  rep.n = n;
  rep.tolerance = tolerance;
  rep.model = model;
  auto add = [&](const std::string& term, int user, double closed, const Estimate& e, bool gating, bool se_only = false) {
    if (term == corrupt_term) closed *= 2.0;
    ValidationEntry v{term, user, closed, e.mean, e.se, false, gating};
    const double diff = std::abs(closed - e.mean);
    v.pass = diff <= 3.0 * e.se || (!se_only && diff <= tolerance * std::abs(closed));
    rep.entries.push_back(v);
  };
  for (int k = 0; k < scn.K(); ++k) {
    const UserTerms& u = cf.users[k];
    const McUserTerms& m = mc.users[k];
    const double own_u = scn.p_u(k) * st.est.Psi_ul[k].cwiseProduct(st.R_ul[k].transpose()).sum().real();
    const double own_d = st.est.Psi_dl[k].cwiseProduct(st.R_dl[k].transpose()).sum().real();
    add("S_u", k, u.S_u, m.S_u, true);
    add("I_u", k, u.I_u, m.I_u, true);
    add("S_d", k, phys * u.S_d, m.S_d, true);
    add("I_d", k, phys > 0.0 ? phys * u.I_d : scn.cfg.sigma2(), m.I_d, true);
    add("gamma_u", k, u.gamma_u, m.gamma_u, false);
    add("gamma_d", k, u.gamma_d, m.gamma_d, false);
    add("var_u", k, own_u - u.I_u_self, m.var_u, false);
    add("mui_u", k, u.I_u_mix - own_u, m.mui_u, false);
    add("si_u", k, u.I_u_si, m.si_u, false);
    add("li_u", k, u.I_u_li, m.li_u, false);
    add("noise_u", k, u.I_u_noise, m.noise_u, false);
    add("var_d", k, phys * (own_d - u.I_d_self), m.var_d, false);
    add("mui_d", k, phys * (u.I_d_mix - own_d), m.mui_d, false);
    add("iui_d", k, phys * u.I_d_iui, m.iui_d, false);
    add("surface_d", k, phys * u.I_d_surface, m.surface_d, false);
  }
  add("beta", -1, cf.beta, mc.beta, true, true);
  add("sum_se", -1, cf.sum_se, mc.sum_se, true);
  rep.pass = true;
  for (const auto& e : rep.entries)
    if (e.gating && !e.pass) rep.pass = false;
  return rep;
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json j;
  j["n_realizations"] = n;
  j["tolerance"] = tolerance;
  j["channel_model"] = to_string(model);
  j["pass"] = pass;
  auto& terms = j["terms"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json t;
    t["term"] = e.term;
    if (e.user >= 0) t["user"] = e.user + 1;
    t["closed"] = e.closed;
    t["mc_mean"] = e.mc_mean;
    t["mc_se"] = e.mc_se;
    t["pass"] = e.pass;
    t["gating"] = e.gating;
    terms.push_back(t);
  }
  return j.dump(2);
}

}  // namespace stars
