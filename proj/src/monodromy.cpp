#include "openxxz/monodromy.hpp"

#include <algorithm>
#include <cmath>

namespace openxxz {

using std::cosh;
using std::exp;
using std::sinh;

void ModelParams::check() const {
  if (N < 1) throw std::invalid_argument("ModelParams: N");
  if (static_cast<int>(xi.size()) != N) throw std::invalid_argument("ModelParams: xi size");
  if (eps[0] * eps[1] * eps[2] * eps[3] != 1)
    throw std::invalid_argument("ModelParams: eps product must be +1");
  for (int e : eps)
    if (e != 1 && e != -1) throw std::invalid_argument("ModelParams: eps entries");
}

SpaceDescriptor chain_space(const ModelParams& p) { return {p.N, false}; }
SpaceDescriptor dressed_space(const ModelParams& p) { return {p.N, true}; }

double dist_mod_ipi(cplx w) {
  const double k = std::round(w.imag() / pi);
  return std::hypot(w.real(), w.imag() - k * pi);
}

bool xi_generic(const ModelParams& p, double tol) {
  auto bad = [&](cplx x) {
    return dist_mod_ipi(x) < tol || dist_mod_ipi(x - p.eta) < tol ||
           dist_mod_ipi(x + p.eta) < tol;
  };
  for (int j = 0; j < p.N; ++j) {
    if (bad(p.xi[j])) return false;
    for (int k = j; k < p.N; ++k) {
      if (k > j && bad(p.xi[j] - p.xi[k])) return false;
      if (bad(p.xi[j] + p.xi[k])) return false;
    }
  }
  return true;
}

ModelParams eta_flip(const ModelParams& p) {
  ModelParams q = p;
  q.eta = -p.eta;
  q.bminus = bar_triple(p.bminus);
  q.bplus = bar_triple(p.bplus);
  return q;
}

ModelParams mirror(const ModelParams& p) {
  ModelParams q = p;
  std::reverse(q.xi.begin(), q.xi.end());
  std::swap(q.bminus, q.bplus);
  return q;
}

DiagonalImage diagonal_image(const ModelParams& p) {
  if (!p.bminus.has_phi_psi) throw std::runtime_error("diagonal_image: kappa_- = 0");
  const double e = p.eps_phi_minus();
  DiagonalImage d;
  if (e > 0) {
    d.plus = p.bminus.phi;
    d.minus = -p.bminus.psi + iu * pi / 2.0;
  } else {
    d.minus = -p.bminus.phi;
    d.plus = p.bminus.psi + iu * pi / 2.0;
  }
  return d;
}

Mat k_minus(const ModelParams& p, cplx lam) { return k_scalar(lam, p.eta, p.bplus); }
Mat k_plus(const ModelParams& p, cplx lam) { return k_scalar(lam + p.eta, p.eta, p.bminus); }

Mat kbar_minus(const ModelParams& p, cplx lam) {
  return kbar_scalar(lam, p.eta, bar_triple(p.bminus));
}
Mat kbar_plus(const ModelParams& p, cplx lam) {
  return kbar_scalar(lam - p.eta, p.eta, bar_triple(p.bplus));
}

namespace {
// ordered product of R(lam - s_n xi_n + shift) over sites, aux slot 0;
// factors listed leftmost-first are applied last
Mat aux_chain_product(const ModelParams& p, cplx lam, cplx shift, int xi_sign,
                      bool bar, bool ascending_applied_first) {
  const SpaceDescriptor sp = dressed_space(p);
  Mat acc = Mat::Identity(sp.dim(), sp.dim());
  auto factor = [&](int n) {
    const cplx arg = lam + double(xi_sign) * p.xi[n - 1] + shift;
    return bar ? rbar(arg, p.eta) : r6v(arg, p.eta);
  };
  if (ascending_applied_first) {
    for (int n = 1; n <= p.N; ++n)
      acc = apply_two_slot_mat(factor(n), 0, sp.site_slot(n), sp.slots(), acc);
  } else {
    for (int n = p.N; n >= 1; --n)
      acc = apply_two_slot_mat(factor(n), 0, sp.site_slot(n), sp.slots(), acc);
  }
  return acc;
}
}  // namespace

Mat bulk_T(const ModelParams& p, cplx lam) {
  // R_{01}...R_{0N}: rightmost factor R_{0N} applied first
  return aux_chain_product(p, lam, -p.eta / 2.0, -1, false, false);
}

Mat bulk_That(const ModelParams& p, cplx lam) {
  // R_{0N}...R_{01}
  return aux_chain_product(p, lam, -p.eta / 2.0, +1, false, true);
}

Mat bulk_M(const ModelParams& p, cplx lam) {
  // Rbar_{0N}...Rbar_{01}
  return aux_chain_product(p, lam, p.eta / 2.0, -1, true, true);
}

Mat bulk_Mhat(const ModelParams& p, cplx lam) {
  // Rbar_{01}...Rbar_{0N}
  return aux_chain_product(p, lam, p.eta / 2.0, +1, true, false);
}

Mat boundary_U_minus(const ModelParams& p, cplx lam) {
  const SpaceDescriptor sp = dressed_space(p);
  const Mat km = embed_local(sp, k_minus(p, lam), 0);
  return bulk_T(p, lam) * km * bulk_That(p, lam);
}

Mat boundary_U_minus_bulkform(const ModelParams& p, cplx lam) {
  const SpaceDescriptor sp = dressed_space(p);
  const Mat km = embed_local(sp, k_minus(p, lam), 0);
  return bulk_Mhat(p, -lam) * km * bulk_M(p, -lam);
}

Mat transfer(const ModelParams& p, cplx lam) {
  const SpaceDescriptor sp = dressed_space(p);
  const Mat kp = embed_local(sp, k_plus(p, lam), 0);
  return partial_trace_aux(sp, kp * boundary_U_minus(p, lam));
}

Mat hamiltonian_pauli(const ModelParams& p) {
  const SpaceDescriptor sp = chain_space(p);
  const Eigen::Index dim = sp.dim();
  Mat h = Mat::Zero(dim, dim);
  const Mat sx = pauli_x(), sy = pauli_y(), sz = pauli_z();
  Mat two = kron(sx, sx) + kron(sy, sy) + cosh(p.eta) * kron(sz, sz);
  for (int n = 1; n < p.N; ++n)
    h += embed_slots(two, {sp.site_slot(n), sp.site_slot(n + 1)}, sp.slots());
  auto edge = [&](const BoundaryTriple& b, int site) {
    if (b.z_limit) {
      h += double(b.z_sign) * sinh(p.eta) * embed_local(sp, sz, sp.site_slot(site));
      return;
    }
    Mat f = cosh(b.varsigma) * sz +
            2.0 * b.kappa * (cosh(b.tau) * sx + iu * sinh(b.tau) * sy);
    h += sinh(p.eta) / sinh(b.varsigma) * embed_local(sp, f, sp.site_slot(site));
  };
  edge(p.bminus, 1);
  edge(p.bplus, p.N);
  return h;
}

Mat hamiltonian_from_transfer(const ModelParams& p) {
  for (cplx x : p.xi)
    if (std::abs(x) > 0) throw std::invalid_argument("hamiltonian_from_transfer: xi must vanish");
  const cplx trkp = k_plus(p, p.eta / 2.0).trace();
  const cplx trkm = k_minus(p, p.eta / 2.0).trace();
  if (std::abs(trkp) < 1e-12 || std::abs(trkm) < 1e-12)
    throw std::runtime_error("hamiltonian_from_transfer: vanishing K-trace at eta/2");
  auto deriv = [&](double h) -> Mat {
    return (transfer(p, p.eta / 2.0 + h) - transfer(p, p.eta / 2.0 - h)) / (2.0 * h);
  };
  const Mat d1 = deriv(1e-4);
  const Mat d2 = deriv(5e-5);
  const Mat dT = (4.0 * d2 - d1) / 3.0;
  const cplx c = 2.0 * std::pow(sinh(p.eta), cplx(1 - 2 * p.N)) / (trkp * trkm);
  return c * dT;
}

cplx a_of(const ModelParams& p, cplx lam) {
  cplx v = 1.0;
  for (cplx x : p.xi) v *= sinh(lam - x + p.eta / 2.0);
  return v;
}

cplx d_of(const ModelParams& p, cplx lam) {
  cplx v = 1.0;
  for (cplx x : p.xi) v *= sinh(lam - x - p.eta / 2.0);
  return v;
}

cplx detq_T(const ModelParams& p, cplx lam) {
  return a_of(p, lam + p.eta / 2.0) * d_of(p, lam - p.eta / 2.0);
}

cplx detq_k_minus(const ModelParams& p, cplx lam) {
  return detq_k_minus(lam, p.eta, p.bplus);
}
cplx detq_k_plus(const ModelParams& p, cplx lam) {
  return detq_k_plus(lam, p.eta, p.bminus);
}

cplx detq_U_minus(const ModelParams& p, cplx lam) {
  return detq_T(p, lam) * detq_T(p, -lam) * detq_k_minus(p, lam);
}

cplx detq_U_minus_elements(const ModelParams& p, cplx lam) {
  const SpaceDescriptor sp = dressed_space(p);
  const Blocks up = aux_blocks(sp, boundary_U_minus(p, p.eta / 2.0 + lam));
  const Blocks um = aux_blocks(sp, boundary_U_minus(p, p.eta / 2.0 - lam));
  const Mat prod = up.A * um.A + up.B * um.C;
  const cplx val = prod.trace() / double(prod.rows());
  return val * sinh(2.0 * lam - 2.0 * p.eta);
}

Blocks aux_blocks(const SpaceDescriptor& sp, const Mat& dressed) {
  if (!sp.aux) throw std::invalid_argument("aux_blocks: no aux slot");
  const Eigen::Index d = Eigen::Index(1) << sp.sites;
  Blocks b;
  b.A = dressed.topLeftCorner(d, d);
  b.B = dressed.topRightCorner(d, d);
  b.C = dressed.bottomLeftCorner(d, d);
  b.D = dressed.bottomRightCorner(d, d);
  return b;
}

Mat gauged_U_minus(const ModelParams& p, cplx lam, GaugePair g) {
  const SpaceDescriptor sp = dressed_space(p);
  const Mat sl = embed_local(sp, s_gauge_inv(p.eta / 2.0 - lam, p.eta, g.alpha, g.beta), 0);
  const Mat sr = embed_local(sp, s_gauge(lam - p.eta / 2.0, p.eta, g.alpha, g.beta), 0);
  return sl * boundary_U_minus(p, lam) * sr;
}

Mat bhat_minus(const ModelParams& p, cplx lam, GaugePair g) {
  const SpaceDescriptor sp = dressed_space(p);
  const Blocks b = aux_blocks(sp, gauged_U_minus(p, lam, g));
  return sinh(p.eta * g.beta) * exp(-p.eta * g.beta) * exp(-(lam - p.eta / 2.0)) * b.B;
}

Mat chat_minus(const ModelParams& p, cplx lam, GaugePair g) {
  const SpaceDescriptor sp = dressed_space(p);
  const Blocks b = aux_blocks(sp, gauged_U_minus(p, lam, g));
  return sinh(p.eta * g.beta) * exp(p.eta * g.beta) * exp(-(lam - p.eta / 2.0)) * b.C;
}

Mat gauged_M(const ModelParams& p, cplx lam, GaugePair gl, GaugePair gr) {
  const SpaceDescriptor sp = dressed_space(p);
  const Mat sl = embed_local(sp, s_gauge_inv(-p.eta / 2.0 - lam, p.eta, gl.alpha, gl.beta), 0);
  const Mat sr = embed_local(sp, s_gauge(-p.eta / 2.0 - lam, p.eta, gr.alpha, gr.beta), 0);
  return sl * bulk_M(p, lam) * sr;
}

Mat gauged_Mhat(const ModelParams& p, cplx lam, GaugePair g1, GaugePair g2) {
  const SpaceDescriptor sp = dressed_space(p);
  const Mat sl = embed_local(sp, s_gauge_inv(lam + p.eta / 2.0, p.eta, g2.alpha, g2.beta), 0);
  const Mat sr = embed_local(sp, s_gauge(lam + p.eta / 2.0, p.eta, g1.alpha, g1.beta), 0);
  return sl * bulk_Mhat(p, lam) * sr;
}

Mat gauged_M_reduced(const ModelParams& p, cplx lam, GaugePair gl, GaugePair gr) {
  return 2.0 * sinh(p.eta * gl.beta) * exp(-p.eta * (gl.alpha + 0.5)) *
         gauged_M(p, lam, gl, gr);
}

Mat gauged_K_minus(const ModelParams& p, cplx lam, GaugePair g, GaugePair gp) {
  return s_gauge_inv(p.eta / 2.0 - lam, p.eta, g.alpha, g.beta) * k_minus(p, lam) *
         s_gauge(lam - p.eta / 2.0, p.eta, gp.alpha, gp.beta);
}

GaugePair transfer_gauge(const ModelParams& p, int eps_m, int eps_mp) {
  if (!p.bminus.has_phi_psi) throw std::runtime_error("transfer_gauge: kappa_- = 0");
  if (eps_m != eps_mp)
    throw std::invalid_argument(
        "transfer_gauge: mixed sign choices give a singular gauge (sinh(eta*beta) = 0)");
  const cplx phim = p.bminus.phi, psim = p.bminus.psi;
  const cplx ea = -p.bminus.tau + 0.5 * double(eps_mp - eps_m) * (phim - psim) -
                  0.25 * double(eps_m + eps_mp) * iu * pi;
  const cplx eb = 0.5 * double(eps_m + eps_mp) * (phim - psim) +
                  0.25 * double(2 + eps_m - eps_mp) * iu * pi;
  // The gauge matrix is unchanged only under *simultaneous* i*pi shifts of
  // eta*alpha and eta*beta, so the two reductions must have matched parity.
  long ka = std::lround(ea.imag() / pi);
  long kb = std::lround(eb.imag() / pi);
  if (((ka + kb) % 2 + 2) % 2 == 1) {
    const double frac = eb.imag() / pi - double(kb);
    kb += (frac >= 0) ? 1 : -1;
  }
  return {(ea - iu * (double(ka) * pi)) / p.eta, (eb - iu * (double(kb) * pi)) / p.eta};
}

cplx abar_plus(const ModelParams& p, cplx lam, int eps_m) {
  const cplx phim = p.bminus.phi, psim = p.bminus.psi;
  const double e = eps_m;
  return e * exp(-lam + p.eta / 2.0) * sinh(lam - p.eta / 2.0 + e * phim) *
         cosh(lam - p.eta / 2.0 - e * psim) / (sinh(phim) * cosh(psim));
}

cplx dbar_plus(const ModelParams& p, cplx lam, int eps_m) {
  const cplx phim = p.bminus.phi, psim = p.bminus.psi;
  const double e = eps_m;
  return -e * exp(-lam + p.eta / 2.0) * sinh(lam - p.eta / 2.0 - e * phim) *
         cosh(lam - p.eta / 2.0 + e * psim) / (sinh(phim) * cosh(psim));
}

double transfer_decomposition_residual(const ModelParams& p, GaugePair g, cplx lam,
                                       char form, int eps_m) {
  const SpaceDescriptor sp = dressed_space(p);
  const cplx s2 = sinh(2.0 * lam);
  Mat combo;
  if (form == 'A') {
    GaugePair gm{g.alpha, g.beta - 1.0};
    const Mat ap = aux_blocks(sp, gauged_U_minus(p, lam, gm)).A;
    const Mat am = aux_blocks(sp, gauged_U_minus(p, -lam, gm)).A;
    combo = abar_plus(p, lam, eps_m) * sinh(2.0 * lam + p.eta) / s2 * ap +
            abar_plus(p, -lam, eps_m) * sinh(2.0 * lam - p.eta) / s2 * am;
  } else {
    GaugePair gp{g.alpha, g.beta + 1.0};
    const Mat dp = aux_blocks(sp, gauged_U_minus(p, lam, gp)).D;
    const Mat dm = aux_blocks(sp, gauged_U_minus(p, -lam, gp)).D;
    combo = dbar_plus(p, lam, eps_m) * sinh(2.0 * lam + p.eta) / s2 * dp +
            dbar_plus(p, -lam, eps_m) * sinh(2.0 * lam - p.eta) / s2 * dm;
  }
  return rel_err(transfer(p, lam), combo);
}

}  // namespace openxxz
