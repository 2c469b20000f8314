#include "openxxz/lax.hpp"

#include <limits>

namespace openxxz {

namespace {
using std::cosh;
using std::exp;
using std::sinh;

void solve_phi_psi(BoundaryTriple& b) {
  const cplx u = sinh(b.varsigma) / (2.0 * b.kappa);
  const cplx v = cosh(b.varsigma) / (2.0 * b.kappa);
  // sinh(phi+psi) = u+v, sinh(phi-psi) = u-v
  cplx p = std::asinh(u + v);
  cplx q = std::asinh(u - v);
  cplx phi = (p + q) / 2.0;
  cplx psi = (p - q) / 2.0;
  if (phi.real() < 0) {
    // the other solution branch, (phi, psi) -> (i pi - phi, -psi)
    phi = cplx(0, pi) - phi;
    psi = -psi;
  }
  const double r1 = std::abs(sinh(phi) * cosh(psi) - u);
  const double r2 = std::abs(cosh(phi) * sinh(psi) - v);
  if (r1 + r2 > 1e-10 * std::max(1.0, std::abs(u) + std::abs(v)))
    throw std::runtime_error("boundary reparametrization failed");
  b.phi = phi;
  b.psi = psi;
  b.has_phi_psi = true;
}
}  // namespace

BoundaryTriple make_boundary(cplx varsigma, cplx kappa, cplx tau) {
  BoundaryTriple b;
  b.varsigma = varsigma;
  b.kappa = kappa;
  b.tau = tau;
  if (kappa != cplx(0.0)) solve_phi_psi(b);
  return b;
}

BoundaryTriple make_boundary_z_limit(cplx kappa, cplx tau) {
  BoundaryTriple b;
  b.varsigma = cplx(-std::numeric_limits<double>::infinity(), 0.0);
  b.kappa = kappa;
  b.tau = tau;
  b.z_limit = true;
  b.z_sign = -1;
  return b;
}

BoundaryTriple bar_triple(const BoundaryTriple& b) {
  if (b.z_limit) {
    BoundaryTriple out = b;
    out.z_sign = -b.z_sign;
    out.varsigma = -b.varsigma;
    return out;
  }
  return make_boundary(-b.varsigma, b.kappa, b.tau);
}

Mat r6v(cplx lam, cplx eta) {
  Mat m = Mat::Zero(4, 4);
  const cplx sl = sinh(lam), se = sinh(eta), sle = sinh(lam + eta);
  m(0, 0) = sle;
  m(1, 1) = sl;
  m(1, 2) = se;
  m(2, 1) = se;
  m(2, 2) = sl;
  m(3, 3) = sle;
  return m;
}

Mat rbar(cplx lam, cplx eta) { return r6v(lam, -eta); }

Mat rsos(cplx lam, cplx beta, cplx eta) {
  Mat m = Mat::Zero(4, 4);
  const cplx sb = sinh(eta * beta);
  if (std::abs(sb) < 1e-14) throw std::runtime_error("rsos: singular dynamical parameter");
  m(0, 0) = sinh(lam + eta);
  m(1, 1) = sinh(eta * (beta + 1.0)) / sb * sinh(lam);
  m(1, 2) = sinh(lam + eta * beta) / sb * sinh(eta);
  m(2, 1) = sinh(eta * beta - lam) / sb * sinh(eta);
  m(2, 2) = sinh(eta * (beta - 1.0)) / sb * sinh(lam);
  m(3, 3) = sinh(lam + eta);
  return m;
}

Mat rsos_bar(cplx lam, cplx beta, cplx eta) { return rsos(lam, beta, -eta); }

Mat k_scalar(cplx lam, cplx eta, const BoundaryTriple& b) {
  Mat m = Mat::Zero(2, 2);
  if (b.z_limit) {
    const double s = b.z_sign;
    m(0, 0) = exp(s * (lam - eta / 2.0));
    m(1, 1) = exp(s * (eta / 2.0 - lam));
    return m;
  }
  const cplx ss = sinh(b.varsigma);
  m(0, 0) = sinh(lam - eta / 2.0 + b.varsigma) / ss;
  m(0, 1) = b.kappa * exp(b.tau) * sinh(2.0 * lam - eta) / ss;
  m(1, 0) = b.kappa * exp(-b.tau) * sinh(2.0 * lam - eta) / ss;
  m(1, 1) = sinh(b.varsigma - lam + eta / 2.0) / ss;
  return m;
}

Mat kbar_scalar(cplx lam, cplx eta, const BoundaryTriple& b) {
  Mat m = Mat::Zero(2, 2);
  if (b.z_limit) {
    const double s = b.z_sign;
    m(0, 0) = exp(s * (lam + eta / 2.0));
    m(1, 1) = exp(s * (-lam - eta / 2.0));
    return m;
  }
  const cplx ss = sinh(b.varsigma);
  m(0, 0) = sinh(lam + eta / 2.0 + b.varsigma) / ss;
  m(0, 1) = b.kappa * exp(b.tau) * sinh(2.0 * lam + eta) / ss;
  m(1, 0) = b.kappa * exp(-b.tau) * sinh(2.0 * lam + eta) / ss;
  m(1, 1) = sinh(b.varsigma - lam - eta / 2.0) / ss;
  return m;
}

Mat s_gauge(cplx lam, cplx eta, cplx alpha, cplx beta) {
  Mat m(2, 2);
  m(0, 0) = exp(lam - eta * (beta + alpha));
  m(0, 1) = exp(lam + eta * (beta - alpha));
  m(1, 0) = 1.0;
  m(1, 1) = 1.0;
  return m;
}

cplx s_gauge_det(cplx lam, cplx eta, cplx alpha, cplx beta) {
  return -2.0 * exp(lam - eta * alpha) * sinh(eta * beta);
}

Mat s_gauge_inv(cplx lam, cplx eta, cplx alpha, cplx beta) {
  const cplx det = s_gauge_det(lam, eta, alpha, beta);
  if (std::abs(det) < 1e-14) throw std::runtime_error("s_gauge_inv: singular gauge");
  Mat m(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = -exp(lam + eta * (beta - alpha));
  m(1, 0) = -1.0;
  m(1, 1) = exp(lam - eta * (beta + alpha));
  return m / det;
}

// (sinh^2 lam - sinh^2 phi)(sinh^2 lam + cosh^2 psi) / (sinh^2 phi cosh^2 psi)
// rewritten through (varsigma, kappa); tends to -1 in the z-limit
cplx detq_core(cplx lam, const BoundaryTriple& b) {
  if (b.z_limit) return cplx(-1.0);
  const cplx s2 = sinh(lam) * sinh(lam);
  const cplx k2 = 4.0 * b.kappa * b.kappa;
  const cplx ss2 = sinh(b.varsigma) * sinh(b.varsigma);
  return (k2 * s2 * s2 + (k2 + 1.0) * s2 - ss2) / ss2;
}

cplx detq_k_minus(cplx lam, cplx eta, const BoundaryTriple& plus_triple) {
  return -sinh(2.0 * lam - 2.0 * eta) * detq_core(lam, plus_triple);
}

cplx detq_k_plus(cplx lam, cplx eta, const BoundaryTriple& minus_triple) {
  return sinh(2.0 * lam + 2.0 * eta) * detq_core(lam, minus_triple);
}

}  // namespace openxxz
