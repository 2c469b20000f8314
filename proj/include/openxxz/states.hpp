#pragma once

#include "openxxz/monodromy.hpp"

namespace openxxz {

// Local product states attached to a complex gauge argument x:
//   |eta,x>  = (x)_n (e^{-(n-N+x)eta - xi_n}, 1)^t      (site 1 most significant)
//   <x,eta|  = (x)_n (-1, e^{-(N-n+x)eta - xi_n})
// The bra is returned as a plain vector; pair it with kets via transpose-free
// bilinear sums, no conjugation.
Vec reference_ket(const ModelParams& p, cplx x);
Vec reference_bra(const ModelParams& p, cplx x);

// 2^N e^{-alpha N eta} prod_n sinh(eta(n - N + beta)); normalizes the bra's
// one-site S-inverse product representation
cplx ref_bra_norm(const ModelParams& p, GaugePair g);

// Single generator of the gauged bulk Yang-Baxter algebra:
//   Theta(lam|x,y) = B(lam) + A(lam) e^{-lam-eta/2-eta y}
//                  - C(lam) e^{-2lam-eta-eta(y+x)} - D(lam) e^{-lam-eta/2-eta x}
// with A,B,C,D the auxiliary blocks of the bulk monodromy M(lam).
Mat theta_op(const ModelParams& p, cplx lam, cplx x, cplx y);

// Normalized two-argument gauged monodromy entries. All four reduce to
// +-e^lam Theta(lam|x,y); the names track which gauge combinations (alpha-+beta,
// gamma+-delta) are meant to be plugged in.
Mat bulk_op_A(const ModelParams& p, cplx lam, cplx x, cplx y);
Mat bulk_op_B(const ModelParams& p, cplx lam, cplx x, cplx y);
Mat bulk_op_C(const ModelParams& p, cplx lam, cplx x, cplx y);
Mat bulk_op_D(const ModelParams& p, cplx lam, cplx x, cplx y);

// prod_{j=1->M} Theta(lam_j | x-j, y+j); the two-shift exchange relation makes
// this independent of the root order
Mat theta_product(const ModelParams& p, const std::vector<cplx>& roots, cplx x, cplx y);

// Normalized gauged boundary creation operator B-hat_-(lam|z); depends on the
// gauge pair only through alpha - beta = z (a fixed generic beta is used
// internally)
Mat bhat_op(const ModelParams& p, cplx lam, cplx z);

// prod_{j=1->M} B-hat_-(lam_j | z+2j-1) |eta,y>
struct BoundaryBetheState {
  std::vector<cplx> roots;
  cplx z{};
  cplx y{};
};

// prod_{j=1->M} B(mu_j | x-j, z+j-1) |eta,y>, signs folded into the roots
struct BulkBetheState {
  std::vector<cplx> roots;
  cplx x{}, z{}, y{};
};

// descriptor of the transfer eigenstate with Bethe roots {lam_j} at gauge g:
// z = alpha - beta, y = alpha + beta + N - 2M - 1
BoundaryBetheState eigenstate_descriptor(const ModelParams& p,
                                         const std::vector<cplx>& roots, GaugePair g);

Vec boundary_bethe_state(const ModelParams& p, const BoundaryBetheState& d);
Vec bulk_bethe_state(const ModelParams& p, const BulkBetheState& d);

// sign-sum coefficient H_sigma of the boundary-to-bulk expansion
cplx bulk_expansion_H(const ModelParams& p, const std::vector<cplx>& roots,
                      const std::vector<int>& sigma);
// overall constant h_M(x, z, y) of the expansion at free gauge x
cplx bulk_expansion_h(const ModelParams& p, int M, cplx x, cplx z, cplx y);

struct BulkTerm {
  cplx weight;  // h_M x H_sigma
  BulkBetheState state;
};

// Expansion of a boundary Bethe state over the 2^M sign choices of its roots,
// at free gauge x. Requires the special z-oriented field at site N (the gauged
// boundary matrix is then scalar). The weighted sum of bulk_bethe_state over
// the returned terms reproduces boundary_bethe_state.
std::vector<BulkTerm> boundary_bulk_decompose(const ModelParams& p,
                                              const BoundaryBetheState& d, cplx x);

}  // namespace openxxz
