#include "openxxz/states.hpp"

namespace openxxz {

using std::exp;
using std::sinh;

Vec reference_ket(const ModelParams& p, cplx x) {
  Vec v = Vec::Ones(1);
  for (int n = 1; n <= p.N; ++n) {
    Vec site(2);
    site(0) = exp(-(double(n - p.N) + x) * p.eta - p.xi[n - 1]);
    site(1) = 1.0;
    Vec next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * site(0);
      next(2 * i + 1) = v(i) * site(1);
    }
    v.swap(next);
  }
  return v;
}

Vec reference_bra(const ModelParams& p, cplx x) {
  Vec v = Vec::Ones(1);
  for (int n = 1; n <= p.N; ++n) {
    Vec site(2);
    site(0) = -1.0;
    site(1) = exp(-(double(p.N - n) + x) * p.eta - p.xi[n - 1]);
    Vec next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * site(0);
      next(2 * i + 1) = v(i) * site(1);
    }
    v.swap(next);
  }
  return v;
}

cplx ref_bra_norm(const ModelParams& p, GaugePair g) {
  cplx c = std::pow(2.0, p.N) * exp(-g.alpha * double(p.N) * p.eta);
  for (int n = 1; n <= p.N; ++n) c *= sinh(p.eta * (double(n - p.N) + g.beta));
  return c;
}

Mat theta_op(const ModelParams& p, cplx lam, cplx x, cplx y) {
  const SpaceDescriptor sp = dressed_space(p);
  const Blocks b = aux_blocks(sp, bulk_M(p, lam));
  const cplx e = p.eta;
  return b.B + b.A * exp(-lam - e / 2.0 - e * y) - b.C * exp(-2.0 * lam - e - e * (y + x)) -
         b.D * exp(-lam - e / 2.0 - e * x);
}

Mat bulk_op_A(const ModelParams& p, cplx lam, cplx x, cplx y) {
  return -exp(lam) * theta_op(p, lam, x, y);
}
Mat bulk_op_B(const ModelParams& p, cplx lam, cplx x, cplx y) {
  return -exp(lam) * theta_op(p, lam, x, y);
}
Mat bulk_op_C(const ModelParams& p, cplx lam, cplx x, cplx y) {
  return exp(lam) * theta_op(p, lam, x, y);
}
Mat bulk_op_D(const ModelParams& p, cplx lam, cplx x, cplx y) {
  return exp(lam) * theta_op(p, lam, x, y);
}

Mat theta_product(const ModelParams& p, const std::vector<cplx>& roots, cplx x, cplx y) {
  const SpaceDescriptor sp = chain_space(p);
  Mat acc = Mat::Identity(sp.dim(), sp.dim());
  for (int j = 1; j <= static_cast<int>(roots.size()); ++j)
    acc = acc * theta_op(p, roots[j - 1], x - double(j), y + double(j));
  return acc;
}

Mat bhat_op(const ModelParams& p, cplx lam, cplx z) {
  const GaugePair g{z + cplx(0.37, 0.21), cplx(0.37, 0.21)};
  return bhat_minus(p, lam, g);
}

BoundaryBetheState eigenstate_descriptor(const ModelParams& p,
                                         const std::vector<cplx>& roots, GaugePair g) {
  BoundaryBetheState d;
  d.roots = roots;
  d.z = g.alpha - g.beta;
  d.y = g.alpha + g.beta + double(p.N - 2 * static_cast<int>(roots.size()) - 1);
  return d;
}

Vec boundary_bethe_state(const ModelParams& p, const BoundaryBetheState& d) {
  Vec v = reference_ket(p, d.y);
  for (int j = static_cast<int>(d.roots.size()); j >= 1; --j)
    v = bhat_op(p, d.roots[j - 1], d.z + double(2 * j - 1)) * v;
  return v;
}

Vec bulk_bethe_state(const ModelParams& p, const BulkBetheState& d) {
  Vec v = reference_ket(p, d.y);
  for (int j = static_cast<int>(d.roots.size()); j >= 1; --j)
    v = bulk_op_B(p, d.roots[j - 1], d.x - double(j), d.z + double(j - 1)) * v;
  return v;
}

cplx bulk_expansion_H(const ModelParams& p, const std::vector<cplx>& roots,
                      const std::vector<int>& sigma) {
  const int M = static_cast<int>(roots.size());
  if (static_cast<int>(sigma.size()) != M)
    throw std::invalid_argument("bulk_expansion_H: sigma size");
  cplx h = 1.0;
  for (int j = 0; j < M; ++j) {
    const cplx lj = double(sigma[j]) * roots[j];
    h *= double(sigma[j]) * a_of(p, -lj) * sinh(2.0 * roots[j] - p.eta) /
         sinh(2.0 * roots[j]);
  }
  for (int i = 0; i < M; ++i)
    for (int j = i + 1; j < M; ++j) {
      const cplx s = double(sigma[i]) * roots[i] + double(sigma[j]) * roots[j];
      h *= sinh(s + p.eta) / sinh(s);
    }
  return h;
}

cplx bulk_expansion_h(const ModelParams& p, int M, cplx x, cplx z, cplx y) {
  cplx h = (M * p.N % 2 ? -1.0 : 1.0) * exp(double(M) * p.eta * (x + z + double(p.N)) / 2.0);
  for (int j = 1; j <= M; ++j)
    h *= sinh(p.eta * (z - y + double(2 * j + p.N - 1)) / 2.0) /
         (2.0 * sinh(p.eta * (y - x + double(2 * j)) / 2.0));
  return h;
}

std::vector<BulkTerm> boundary_bulk_decompose(const ModelParams& p,
                                              const BoundaryBetheState& d, cplx x) {
  if (!p.bplus.z_limit)
    throw std::runtime_error("boundary_bulk_decompose: needs the z-oriented site-N field");
  const int M = static_cast<int>(d.roots.size());
  const cplx pre = bulk_expansion_h(p, M, x, d.z, d.y);
  std::vector<BulkTerm> out;
  out.reserve(std::size_t(1) << M);
  std::vector<int> sigma(M, +1);
  for (int mask = 0; mask < (1 << M); ++mask) {
    for (int j = 0; j < M; ++j) sigma[j] = (mask >> j) & 1 ? -1 : +1;
    BulkTerm t;
    t.weight = pre * bulk_expansion_H(p, d.roots, sigma);
    t.state.roots.resize(M);
    for (int j = 0; j < M; ++j) t.state.roots[j] = double(sigma[j]) * d.roots[j];
    t.state.x = x;
    t.state.z = d.z;
    t.state.y = d.y + double(M);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace openxxz
