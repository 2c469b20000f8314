#include "openxxz/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <stdexcept>

namespace openxxz {

namespace {

cplx sh(cplx z) { return std::sinh(z); }
cplx ch(cplx z) { return std::cosh(z); }

cplx boundary_factor(const BoundaryTriple& b, int ephi, int epsi, cplx lam, cplx eta,
                     double psi_sign) {
  const cplx f = double(ephi) * b.phi;
  const cplx s = double(epsi) * b.psi;
  return sh(lam - eta / 2.0 + f) * ch(lam - eta / 2.0 + psi_sign * s) / (sh(f) * ch(s));
}

}  // namespace

cplx small_a_eps(const ModelParams& p, cplx lam) {
  if (p.bplus.z_limit) {
    if (p.eps_phi_minus() != p.eps_psi_minus())
      throw std::invalid_argument("small_a_eps: z-limit needs eps_phi- = eps_psi-");
    return boundary_factor(p.bminus, p.eps_phi_minus(), p.eps_psi_minus(), lam, p.eta, -1.0);
  }
  if (!p.bplus.has_phi_psi || !p.bminus.has_phi_psi)
    throw std::invalid_argument("small_a_eps: boundary lacks the (phi, psi) pair");
  return boundary_factor(p.bplus, p.eps_phi_plus(), p.eps_psi_plus(), lam, p.eta, +1.0) *
         boundary_factor(p.bminus, p.eps_phi_minus(), p.eps_psi_minus(), lam, p.eta, -1.0);
}

cplx big_A_eps(const ModelParams& p, cplx lam) {
  const double sgn = (p.N % 2 == 0) ? 1.0 : -1.0;
  return sgn * sh(2.0 * lam + p.eta) / sh(2.0 * lam) * small_a_eps(p, lam) * a_of(p, lam) *
         d_of(p, -lam);
}

cplx g_coeff(const ModelParams& p, int r) {
  if (!p.bplus.has_phi_psi || !p.bminus.has_phi_psi)
    throw std::invalid_argument("g_coeff: boundary lacks the (phi, psi) pair");
  const cplx arg = double(p.eps_phi_plus()) * p.bplus.phi +
                   double(p.eps_phi_minus()) * p.bminus.phi +
                   double(p.eps_psi_plus()) * p.bplus.psi -
                   double(p.eps_psi_minus()) * p.bminus.psi + double(p.N - 1 - 2 * r) * p.eta;
  return ch(p.bplus.tau - p.bminus.tau) -
         double(p.eps_phi_plus() * p.eps_phi_minus()) * ch(arg);
}

cplx f_coeff(const ModelParams& p, int r) {
  if (p.bplus.z_limit || p.bminus.z_limit) return 0.0;
  if (p.bplus.kappa == 0.0 || p.bminus.kappa == 0.0) return 0.0;
  return 2.0 * p.bplus.kappa * p.bminus.kappa / (sh(p.bplus.varsigma) * sh(p.bminus.varsigma)) *
         g_coeff(p, r);
}

cplx inhom_F(const ModelParams& p, cplx lam) {
  const cplx f = f_coeff(p, p.N);
  if (f == 0.0) return 0.0;
  const cplx c = ch(2.0 * lam);
  return f * a_of(p, lam) * a_of(p, -lam) * d_of(p, lam) * d_of(p, -lam) *
         (c * c - ch(p.eta) * ch(p.eta));
}

cplx xi_shifted(const ModelParams& p, int n, int h) {
  return p.xi[n] + p.eta / 2.0 - double(h) * p.eta;
}

cplx u_node(const ModelParams& p, int n) {
  const cplx x = p.xi[n];
  return sh(2.0 * x - p.eta) / sh(2.0 * x + p.eta) * a_of(p, x + p.eta / 2.0) *
         d_of(p, -x - p.eta / 2.0) / (a_of(p, -x + p.eta / 2.0) * d_of(p, x - p.eta / 2.0));
}

cplx u_node_product(const ModelParams& p, int n) {
  cplx prod = -1.0;
  for (int j = 0; j < p.N; ++j) {
    if (j == n) continue;
    const cplx dm = p.xi[n] - p.xi[j], dp = p.xi[n] + p.xi[j];
    prod *= sh(dm + p.eta) * sh(dp + p.eta) / (sh(dp - p.eta) * sh(dm - p.eta));
  }
  return prod;
}

cplx v_node(const ModelParams& p, int n) {
  return small_a_eps(p, p.xi[n] + p.eta / 2.0) / small_a_eps(p, -p.xi[n] + p.eta / 2.0);
}

cplx QPolynomial::eval(cplx lam) const {
  cplx q = 1.0;
  const cplx s = sh(lam);
  for (const cplx& r : roots) {
    const cplx sr = sh(r);
    q *= s * s - sr * sr;
  }
  return q;
}

bool q_admissible(const ModelParams& p, const QPolynomial& q, double tol) {
  for (const cplx& r : q.roots) {
    const cplx cr = ch(2.0 * r);
    for (int n = 0; n < p.N; ++n)
      for (int h = 0; h < 2; ++h)
        if (std::abs(cr - ch(2.0 * xi_shifted(p, n, h))) < tol) return false;
  }
  return true;
}

cplx tau_from_Q(const ModelParams& p, const QPolynomial& q, cplx lam) {
  return (big_A_eps(p, lam) * q.eval(lam - p.eta) + big_A_eps(p, -lam) * q.eval(lam + p.eta) +
          inhom_F(p, lam)) /
         q.eval(lam);
}

cplx tq_residual(const ModelParams& p, const QPolynomial& q, cplx tau, cplx lam) {
  return tau * q.eval(lam) - big_A_eps(p, lam) * q.eval(lam - p.eta) -
         big_A_eps(p, -lam) * q.eval(lam + p.eta) - inhom_F(p, lam);
}

OracleResult oracle_diagonalize(const ModelParams& p, cplx lambda0) {
  p.check();
  const Mat t0 = transfer(p, lambda0);
  const int d = static_cast<int>(t0.rows());
  Eigen::ComplexEigenSolver<Mat> right(t0);
  Eigen::ComplexEigenSolver<Mat> left(t0.transpose());
  if (right.info() != Eigen::Success || left.info() != Eigen::Success)
    throw std::runtime_error("oracle_diagonalize: eigensolver failed");

  OracleResult out;
  out.lambda0 = lambda0;
  std::vector<int> unused(d);
  for (int i = 0; i < d; ++i) unused[i] = i;
  for (int i = 0; i < d; ++i) {
    EigenPair ep;
    ep.tau0 = right.eigenvalues()(i);
    ep.right = right.eigenvectors().col(i);
    int best = 0;
    double gap = 1e300;
    for (int k = 0; k < static_cast<int>(unused.size()); ++k) {
      const double g = std::abs(left.eigenvalues()(unused[k]) - ep.tau0);
      if (g < gap) {
        gap = g;
        best = k;
      }
    }
    ep.left = left.eigenvectors().col(unused[best]);
    unused.erase(unused.begin() + best);
    const cplx overlap = (ep.left.array() * ep.right.array()).sum();
    if (std::abs(overlap) < 1e-13)
      throw std::runtime_error("oracle_diagonalize: defective left/right pairing");
    ep.left /= overlap;
    out.pairs.push_back(std::move(ep));
  }

  out.min_gap = 1e300;
  out.biorthogonality = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      out.min_gap = std::min(out.min_gap, std::abs(out.pairs[i].tau0 - out.pairs[j].tau0));
      const cplx ov = (out.pairs[i].left.array() * out.pairs[j].right.array()).sum();
      out.biorthogonality =
          std::max(out.biorthogonality, std::abs(ov) / out.pairs[j].right.norm());
    }
  return out;
}

cplx tau_of(const ModelParams& p, const EigenPair& ep, cplx mu) {
  const Vec tv = transfer(p, mu) * ep.right;
  return (ep.left.array() * tv.array()).sum();
}

QExtraction extract_Q(const ModelParams& p, const EigenPair& ep, double tol) {
  QExtraction out;
  for (int M = 0; M <= p.N; ++M) {
    const int rows = 2 * (M + 2), cols = M + 1;
    Mat sys(rows, cols);
    Eigen::MatrixXd mag(rows, cols);  // per-entry scale of the three combined terms
    for (int s = 0; s < rows; ++s) {
      const cplx lam = cplx(0.23, 0.17) + double(s) * cplx(0.149, -0.083);
      const cplx tau = tau_of(p, ep, lam);
      const cplx c0 = ch(2.0 * lam), cm = ch(2.0 * (lam - p.eta)), cp = ch(2.0 * (lam + p.eta));
      const cplx am = big_A_eps(p, lam), ap = big_A_eps(p, -lam);
      cplx p0 = 1.0, pm = 1.0, pp = 1.0;
      for (int k = 0; k < cols; ++k) {
        sys(s, k) = tau * p0 - am * pm - ap * pp;
        mag(s, k) = std::abs(tau * p0) + std::abs(am * pm) + std::abs(ap * pp);
        p0 *= c0;
        pm *= cm;
        pp *= cp;
      }
    }
    Eigen::JacobiSVD<Mat> svd(sys, Eigen::ComputeThinV);
    const auto& sig = svd.singularValues();
    Vec coeffs = (cols >= 2) ? Vec(svd.matrixV().col(cols - 1)) : Vec(Vec::Ones(1));
    // defect of the candidate null vector against the natural term-size scale
    double resid = 0;
    for (int s = 0; s < rows; ++s) {
      cplx lhs = 0;
      double scale = 1e-300;
      for (int k = 0; k < cols; ++k) {
        lhs += sys(s, k) * coeffs(k);
        scale += mag(s, k) * std::abs(coeffs(k));
      }
      resid = std::max(resid, std::abs(lhs) / scale);
    }
    const bool leading_ok = M == 0 || std::abs(coeffs(M)) > 1e-10 * coeffs.norm();
    if (resid < tol && leading_ok) {
      out.M = M;
      out.residual = resid;
      out.margin = (cols >= 2) ? sig(cols - 2) / std::max(sig(cols - 1), 1e-300) : 1e300;
      out.coeffs.assign(coeffs.data(), coeffs.data() + cols);
      if (M > 0) {
        // roots of sum_k q_k t^k in t = cosh(2 lam) via the companion matrix
        Mat comp = Mat::Zero(M, M);
        for (int k = 0; k < M - 1; ++k) comp(k + 1, k) = 1.0;
        for (int k = 0; k < M; ++k) comp(k, M - 1) = -coeffs(k) / coeffs(M);
        Eigen::ComplexEigenSolver<Mat> es(comp);
        for (int k = 0; k < M; ++k) out.q.roots.push_back(0.5 * std::acosh(es.eigenvalues()(k)));
      }
      return out;
    }
    if (resid < out.residual) out.residual = resid;  // best rejected value, for reporting
  }
  throw std::runtime_error("extract_Q: no polynomial Q found up to degree N");
}

std::vector<double> bethe_residuals(const ModelParams& p, const QPolynomial& q) {
  std::vector<double> out;
  for (const cplx& r : q.roots) {
    const cplx t1 = big_A_eps(p, r) * q.eval(r - p.eta);
    const cplx t2 = big_A_eps(p, -r) * q.eval(r + p.eta);
    const cplx t3 = inhom_F(p, r);
    const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3) + 1e-300;
    out.push_back(std::abs(t1 + t2 + t3) / scale);
  }
  return out;
}

QPolynomial newton_polish(const ModelParams& p, QPolynomial q, int max_iter, double tol) {
  const int M = q.degree();
  if (M == 0) return q;
  const auto F = [&](const QPolynomial& qq) -> Vec {
    Vec f(M);
    for (int j = 0; j < M; ++j) {
      const cplx r = qq.roots[j];
      f(j) = big_A_eps(p, r) * qq.eval(r - p.eta) + big_A_eps(p, -r) * qq.eval(r + p.eta) +
             inhom_F(p, r);
    }
    return f;
  };
  for (int it = 0; it < max_iter; ++it) {
    const Vec f0 = F(q);
    // equilibrate: defect terms can span many orders of magnitude across roots
    Vec rowscale(M);
    double worst = 0;
    for (int j = 0; j < M; ++j) {
      const cplx r = q.roots[j];
      rowscale(j) = std::abs(big_A_eps(p, r) * q.eval(r - p.eta)) +
                    std::abs(big_A_eps(p, -r) * q.eval(r + p.eta)) +
                    std::abs(inhom_F(p, r)) + 1e-300;
      worst = std::max(worst, std::abs(f0(j)) / std::abs(rowscale(j)));
    }
    if (worst < tol) return q;
    Mat jac(M, M);
    for (int k = 0; k < M; ++k) {
      const double h = 1e-6 * std::max(1.0, std::abs(q.roots[k]));
      QPolynomial qp = q, qm = q;
      qp.roots[k] += h;
      qm.roots[k] -= h;
      jac.col(k) = (F(qp) - F(qm)) / (2.0 * h);
    }
    const Vec fs = f0.array() / rowscale.array();
    const Mat js = rowscale.cwiseInverse().asDiagonal() * jac;
    Vec step = js.partialPivLu().solve(fs);
    if (step.norm() > 0.25) step *= 0.25 / step.norm();
    QPolynomial trial = q;
    for (int cut = 0; cut < 30; ++cut) {
      for (int k = 0; k < M; ++k) trial.roots[k] = q.roots[k] - step(k);
      double w = 0;
      for (double v : bethe_residuals(p, trial)) w = std::max(w, v);
      if (w < worst) break;
      step *= 0.5;
    }
    q = trial;
  }
  return q;
}

cplx vandermonde_sinh2(const std::vector<cplx>& xs) {
  cplx prod = 1.0;
  const int n = static_cast<int>(xs.size());
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const cplx sj = sh(xs[j]), sk = sh(xs[k]);
      prod *= sk * sk - sj * sj;
    }
  return prod;
}

cplx sov_norm_constant(const ModelParams& p) {
  std::vector<cplx> x0(p.N), x1(p.N);
  for (int n = 0; n < p.N; ++n) {
    x0[n] = xi_shifted(p, n, 0);
    x1[n] = xi_shifted(p, n, 1);
  }
  return vandermonde_sinh2(p.xi) * vandermonde_sinh2(x0) / vandermonde_sinh2(x1);
}

SovBasis sov_basis(const ModelParams& p, std::uint64_t seed) {
  p.check();
  const int d = 1 << p.N;
  Rng rng(seed);
  Vec s(d);
  for (int i = 0; i < d; ++i) s(i) = rng.normal();
  s /= s.norm();

  std::vector<Mat> tl(p.N), tr(p.N);
  for (int n = 0; n < p.N; ++n) {
    const cplx av = big_A_eps(p, -p.xi[n] + p.eta / 2.0);
    const cplx kn = sh(2.0 * p.xi[n] + p.eta) / sh(2.0 * p.xi[n] - p.eta);
    tl[n] = transfer(p, p.xi[n] - p.eta / 2.0) / av;
    tr[n] = transfer(p, p.xi[n] + p.eta / 2.0) / (kn * av);
  }

  SovBasis b;
  b.left.assign(d, Vec());
  b.left[d - 1] = s;  // h = (1,...,1): empty product
  for (int idx = d - 2; idx >= 0; --idx) {
    int n = 0;
    while (idx & (1 << n)) ++n;  // lowest cleared bit: factor tl[n] applies
    b.left[idx] = tl[n].transpose() * b.left[idx | (1 << n)];
  }

  Mat lmat(d, d);
  for (int idx = 0; idx < d; ++idx) lmat.row(idx) = b.left[idx].transpose();
  Eigen::JacobiSVD<Mat> svd(lmat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  b.cond = svd.singularValues()(0) / svd.singularValues()(d - 1);

  std::vector<cplx> x1(p.N);
  for (int n = 0; n < p.N; ++n) x1[n] = xi_shifted(p, n, 1);
  Vec rhs = Vec::Zero(d);
  rhs(0) = vandermonde_sinh2(p.xi) / vandermonde_sinh2(x1);
  const Vec r0 = svd.solve(rhs);

  b.right.assign(d, Vec());
  b.right[0] = r0;
  for (int idx = 1; idx < d; ++idx) {
    int n = 0;
    while (!(idx & (1 << n))) ++n;  // lowest set bit: factor tr[n] applies
    b.right[idx] = tr[n] * b.right[idx & ~(1 << n)];
  }
  return b;
}

cplx sov_node_gain(const ModelParams& p, int n) {
  const auto sh = [](cplx z) { return std::sinh(z); };
  const cplx x2 = 2.0 * p.xi[n];
  return sh(x2 + 2.0 * p.eta) * sh(x2 - p.eta) /
         (sh(x2 + p.eta) * sh(x2 - 2.0 * p.eta));
}

namespace {

// per-h weight in the separate-state sums; the wave function in the dual
// basis is prod_n [Q(xi_n^(1))/Q(xi_n^(0))]^{h_n}, so the expansion weight
// is that divided by the basis norm at h.
cplx sov_weight(const ModelParams& p, const QPolynomial& q, int idx, bool left) {
  cplx w = 1.0;
  std::vector<cplx> xh(p.N);
  for (int n = 0; n < p.N; ++n) {
    const int h = (idx >> n) & 1;
    xh[n] = xi_shifted(p, n, h);
    w *= q.eval(xh[n]) / q.eval(xi_shifted(p, n, 0));
    if (h) w *= left ? u_node(p, n) * v_node(p, n) : 1.0 / sov_node_gain(p, n);
  }
  return w * vandermonde_sinh2(xh);
}

}  // namespace

Vec sov_state_right(const ModelParams& p, const SovBasis& b, const QPolynomial& q) {
  const int d = 1 << p.N;
  Vec state = Vec::Zero(d);
  for (int idx = 0; idx < d; ++idx)
    state += sov_weight(p, q, idx, false) * b.right[idx];
  return state;
}

Vec sov_state_left(const ModelParams& p, const SovBasis& b, const QPolynomial& q) {
  const int d = 1 << p.N;
  Vec state = Vec::Zero(d);
  for (int idx = 0; idx < d; ++idx)
    state += sov_weight(p, q, idx, true) * b.left[idx];
  return state;
}

std::vector<cplx> transfer_spectrum(const ModelParams& p, cplx lambda0) {
  Eigen::ComplexEigenSolver<Mat> es(transfer(p, lambda0), false);
  std::vector<cplx> vals(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return vals;
}

double hausdorff_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const auto one_sided = [](const std::vector<cplx>& x, const std::vector<cplx>& y) {
    double worst = 0;
    for (const cplx& u : x) {
      double best = 1e300;
      for (const cplx& v : y) best = std::min(best, std::abs(u - v));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

ModelParams diagonal_chain(const ModelParams& p) {
  const DiagonalImage di = diagonal_image(p);
  ModelParams q = p;
  q.bplus = make_boundary(di.plus, 0.0, 0.0);
  q.bminus = make_boundary(di.minus, 0.0, 0.0);
  return q;
}

}  // namespace openxxz
