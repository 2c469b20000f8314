#pragma once

#include <array>

#include "openxxz/lax.hpp"

namespace openxxz {

// Chain data: anisotropy eta, N sites, inhomogeneities xi, boundary fields at
// site 1 (bminus) and site N (bplus), and the four reparametrization sign
// choices eps = {eps_phi+, eps_psi+, eps_phi-, eps_psi-} (product +1).
struct ModelParams {
  cplx eta{};
  int N = 0;
  std::vector<cplx> xi;
  BoundaryTriple bminus, bplus;
  std::array<int, 4> eps{+1, +1, +1, +1};

  int eps_phi_plus() const { return eps[0]; }
  int eps_psi_plus() const { return eps[1]; }
  int eps_phi_minus() const { return eps[2]; }
  int eps_psi_minus() const { return eps[3]; }
  void check() const;
};

SpaceDescriptor chain_space(const ModelParams& p);
SpaceDescriptor dressed_space(const ModelParams& p);

// distance of w to the lattice i pi Z
double dist_mod_ipi(cplx w);
// xi_j and xi_j +- xi_k stay away from {0, +-eta} mod i pi
bool xi_generic(const ModelParams& p, double tol = 1e-3);

// symmetry images
ModelParams eta_flip(const ModelParams& p);  // {eta, varsigma+-} -> {-eta, -varsigma+-}
ModelParams mirror(const ModelParams& p);    // site reversal and +- boundary swap

// diagonal-image boundary parameters (z-limit chains): varsigma_+-^{(D)}
struct DiagonalImage {
  cplx plus, minus;
};
DiagonalImage diagonal_image(const ModelParams& p);

// boundary matrices dressing the chain: K_-(lam) carries the site-N (plus)
// field, K_+(lam) carries the site-1 (minus) field at shifted argument
Mat k_minus(const ModelParams& p, cplx lam);
Mat k_plus(const ModelParams& p, cplx lam);
Mat kbar_minus(const ModelParams& p, cplx lam);
Mat kbar_plus(const ModelParams& p, cplx lam);

// bulk monodromies on aux (x) H
Mat bulk_T(const ModelParams& p, cplx lam);
Mat bulk_That(const ModelParams& p, cplx lam);
Mat bulk_M(const ModelParams& p, cplx lam);
Mat bulk_Mhat(const ModelParams& p, cplx lam);

// two-sided boundary monodromy U_-(lam) = T K_- That, and its bulk form
// Mhat(-lam) K_- M(-lam)
Mat boundary_U_minus(const ModelParams& p, cplx lam);
Mat boundary_U_minus_bulkform(const ModelParams& p, cplx lam);

Mat transfer(const ModelParams& p, cplx lam);

Mat hamiltonian_pauli(const ModelParams& p);
// derivative of the transfer matrix at eta/2 (homogeneous chain), central
// differences at h = 1e-4 and 5e-5 with Richardson extrapolation
Mat hamiltonian_from_transfer(const ModelParams& p);

cplx a_of(const ModelParams& p, cplx lam);
cplx d_of(const ModelParams& p, cplx lam);
cplx detq_T(const ModelParams& p, cplx lam);
cplx detq_k_minus(const ModelParams& p, cplx lam);
cplx detq_k_plus(const ModelParams& p, cplx lam);
cplx detq_U_minus(const ModelParams& p, cplx lam);  // product form
// from the elements of U_- (independent cross-check)
cplx detq_U_minus_elements(const ModelParams& p, cplx lam);

struct GaugePair {
  cplx alpha{}, beta{};
};

struct Blocks {
  Mat A, B, C, D;
};
Blocks aux_blocks(const SpaceDescriptor& sp, const Mat& dressed);

// S^{-1}(eta/2-lam|g) U_-(lam) S(lam-eta/2|g)
Mat gauged_U_minus(const ModelParams& p, cplx lam, GaugePair g);
// normalized off-diagonal elements; depend on alpha-beta resp. alpha+beta only
Mat bhat_minus(const ModelParams& p, cplx lam, GaugePair g);
Mat chat_minus(const ModelParams& p, cplx lam, GaugePair g);

// S^{-1}(-eta/2-lam|gl) M(lam) S(-eta/2-lam|gr)
Mat gauged_M(const ModelParams& p, cplx lam, GaugePair gl, GaugePair gr);
// S^{-1}(lam+eta/2|g2) Mhat(lam) S(lam+eta/2|g1)
Mat gauged_Mhat(const ModelParams& p, cplx lam, GaugePair g1, GaugePair g2);
// gauged_M x 2 sinh(eta beta_l) e^{-eta(alpha_l+1/2)}; entries depend on the
// gauge only through alpha_l -+ beta_l and gamma_r +- delta_r
Mat gauged_M_reduced(const ModelParams& p, cplx lam, GaugePair gl, GaugePair gr);
// S^{-1}(eta/2-lam|g) K_-(lam) S(lam-eta/2|gp)
Mat gauged_K_minus(const ModelParams& p, cplx lam, GaugePair g, GaugePair gp);

// gauge pair turning the transfer matrix into a two-term diagonal-element
// combination; principal representatives of the mod-i-pi freedom
GaugePair transfer_gauge(const ModelParams& p, int eps_m, int eps_mp);
cplx abar_plus(const ModelParams& p, cplx lam, int eps_m);
cplx dbar_plus(const ModelParams& p, cplx lam, int eps_m);
// residual of the decomposition at one spectral point; form 'A' or 'D'
double transfer_decomposition_residual(const ModelParams& p, GaugePair g, cplx lam,
                                       char form, int eps_m);

}  // namespace openxxz
