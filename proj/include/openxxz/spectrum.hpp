#pragma once

#include <cstdint>

#include "openxxz/monodromy.hpp"

namespace openxxz {

// TQ coefficients. a_eps takes the reduced two-factor form when the site-N
// field is the z-oriented limit (then eps_phi- = eps_psi- is required), the
// full four-factor form otherwise.
cplx small_a_eps(const ModelParams& p, cplx lam);
// A(lam) = (-1)^N [sinh(2 lam + eta)/sinh(2 lam)] a_eps(lam) a(lam) d(-lam)
cplx big_A_eps(const ModelParams& p, cplx lam);

// boundary constraint functions; f^{(r)} vanishes when either kappa is zero
// or a boundary sits in the z-oriented limit
cplx g_coeff(const ModelParams& p, int r);
cplx f_coeff(const ModelParams& p, int r);
// inhomogeneous TQ term F(lam) = f^{(N)} a(lam) a(-lam) d(lam) d(-lam)
//                                 [cosh^2(2 lam) - cosh^2 eta]
cplx inhom_F(const ModelParams& p, cplx lam);

// SoV node data
cplx xi_shifted(const ModelParams& p, int n, int h);  // xi_n + eta/2 - h eta, n 0-based
cplx u_node(const ModelParams& p, int n);             // ratio of a, d values
cplx u_node_product(const ModelParams& p, int n);     // pair-product form
cplx v_node(const ModelParams& p, int n);             // a_eps(xi_n+eta/2)/a_eps(-xi_n+eta/2)

// Norm gained by exciting node n in the separate basis:
// A(xi_n+eta/2) / (k_n A(-xi_n+eta/2) u_n v_n), reduced to inhomogeneity data.
cplx sov_node_gain(const ModelParams& p, int n);

// Q(lam) = prod_j (sinh^2 lam - sinh^2 lam_j), a polynomial in cosh(2 lam)
struct QPolynomial {
  std::vector<cplx> roots;
  int degree() const { return static_cast<int>(roots.size()); }
  cplx eval(cplx lam) const;
};
// roots stay away from the shifted inhomogeneities cosh(2 xi_n^{(h)})
bool q_admissible(const ModelParams& p, const QPolynomial& q, double tol = 1e-8);

cplx tau_from_Q(const ModelParams& p, const QPolynomial& q, cplx lam);
// tau(lam) Q(lam) - A(lam) Q(lam-eta) - A(-lam) Q(lam+eta) - F(lam)
cplx tq_residual(const ModelParams& p, const QPolynomial& q, cplx tau, cplx lam);

// dense transfer-matrix oracle
struct EigenPair {
  cplx tau0;
  Vec right;  // T r = tau0 r, unit norm
  Vec left;   // l^T T = tau0 l^T, scaled so l^T r = 1
};
struct OracleResult {
  std::vector<EigenPair> pairs;
  cplx lambda0;
  double min_gap = 0;          // min |tau_i - tau_j|, i != j
  double biorthogonality = 0;  // max |l_i^T r_j|, i != j
};
OracleResult oracle_diagonalize(const ModelParams& p, cplx lambda0 = cplx(0.37, 0.11));
cplx tau_of(const ModelParams& p, const EigenPair& ep, cplx mu);

// fit of the Q polynomial to an oracle eigenpair; tries degrees M = 0..N and
// keeps the smallest M whose sampled TQ system has a null vector
struct QExtraction {
  QPolynomial q;
  std::vector<cplx> coeffs;  // in powers of cosh(2 lam), unit norm
  int M = -1;
  double residual = 1e300;  // smallest singular value over the matrix norm
  double margin = 0;        // next singular value over the smallest one
};
QExtraction extract_Q(const ModelParams& p, const EigenPair& ep, double tol = 1e-8);

// normalized defects of A(lam_j) Q(lam_j - eta) + A(-lam_j) Q(lam_j + eta)
// + F(lam_j) = 0 at the roots
std::vector<double> bethe_residuals(const ModelParams& p, const QPolynomial& q);
QPolynomial newton_polish(const ModelParams& p, QPolynomial q, int max_iter = 60,
                          double tol = 1e-13);

// det_{ij} sinh^{2(j-1)} x_i = prod_{j<k} (sinh^2 x_k - sinh^2 x_j)
cplx vandermonde_sinh2(const std::vector<cplx>& xs);
cplx sov_norm_constant(const ModelParams& p);  // N({xi})

// left/right SoV bases generated from a seeded covector; index bit n-1 = h_n
struct SovBasis {
  std::vector<Vec> left;
  std::vector<Vec> right;
  double cond = 0;  // condition number of the stacked left basis
};
SovBasis sov_basis(const ModelParams& p, std::uint64_t seed = 7);

Vec sov_state_right(const ModelParams& p, const SovBasis& b, const QPolynomial& q);
Vec sov_state_left(const ModelParams& p, const SovBasis& b, const QPolynomial& q);

// spectra as value sets of T(lambda0); symmetric Hausdorff gap between sets
std::vector<cplx> transfer_spectrum(const ModelParams& p, cplx lambda0);
double hausdorff_gap(const std::vector<cplx>& a, const std::vector<cplx>& b);
// kappa = 0 chain carrying the isospectral boundary parameters
ModelParams diagonal_chain(const ModelParams& p);

}  // namespace openxxz
