#pragma once

#include "openxxz/algebra_core.hpp"

namespace openxxz {

// One boundary field: (varsigma, kappa, tau), plus the derived (phi, psi) from
//   sinh(phi) cosh(psi) = sinh(varsigma)/(2 kappa)
//   cosh(phi) sinh(psi) = cosh(varsigma)/(2 kappa)
// (absent when kappa = 0). z_limit marks varsigma -> z_sign * infinity along
// the real axis with kappa, tau fixed; the reflection matrix then degenerates
// to a pure z-field diagonal.
struct BoundaryTriple {
  cplx varsigma{};
  cplx kappa{};
  cplx tau{};
  bool z_limit = false;
  int z_sign = -1;
  bool has_phi_psi = false;
  cplx phi{};
  cplx psi{};
};

BoundaryTriple make_boundary(cplx varsigma, cplx kappa, cplx tau);
BoundaryTriple make_boundary_z_limit(cplx kappa, cplx tau);  // varsigma -> -infinity
// varsigma -> -varsigma, kappa and tau unchanged
BoundaryTriple bar_triple(const BoundaryTriple& b);

// 6-vertex R-matrix on C^2 (x) C^2
Mat r6v(cplx lam, cplx eta);
// companion solution: rbar(lam) = -r6v(-lam) (same matrix with eta -> -eta)
Mat rbar(cplx lam, cplx eta);
// dynamical (SOS) R-matrix and its eta -> -eta companion
Mat rsos(cplx lam, cplx beta, cplx eta);
Mat rsos_bar(cplx lam, cplx beta, cplx eta);

// scalar reflection matrix K(lam; varsigma, kappa, tau)
Mat k_scalar(cplx lam, cplx eta, const BoundaryTriple& b);
// companion with eta -> -eta (takes the triple's values as given)
Mat kbar_scalar(cplx lam, cplx eta, const BoundaryTriple& b);

// gauge (vertex-IRF) matrix, its determinant and closed-form inverse
Mat s_gauge(cplx lam, cplx eta, cplx alpha, cplx beta);
cplx s_gauge_det(cplx lam, cplx eta, cplx alpha, cplx beta);
Mat s_gauge_inv(cplx lam, cplx eta, cplx alpha, cplx beta);

// quantum determinants of the dressed boundary matrices
//   K_-(lam) = k_scalar(lam; plus triple), K_+(lam) = k_scalar(lam+eta; minus triple)
// in closed form (valid for kappa = 0 and in the z-limit)
cplx detq_core(cplx lam, const BoundaryTriple& b);
cplx detq_k_minus(cplx lam, cplx eta, const BoundaryTriple& plus_triple);
cplx detq_k_plus(cplx lam, cplx eta, const BoundaryTriple& minus_triple);

}  // namespace openxxz
