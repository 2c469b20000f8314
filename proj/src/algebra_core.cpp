#include "openxxz/algebra_core.hpp"

namespace openxxz {

Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat pauli_y() {
  Mat m(2, 2);
  m << 0, -iu, iu, 0;
  return m;
}

Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Mat id2() { return Mat::Identity(2, 2); }

Mat unit22(int i, int j) {
  if (i < 1 || i > 2 || j < 1 || j > 2) throw std::out_of_range("unit22");
  Mat m = Mat::Zero(2, 2);
  m(i - 1, j - 1) = 1.0;
  return m;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double rel_err(const Mat& a, const Mat& b) {
  double scale = std::max({1.0, a.norm(), b.norm()});
  return (a - b).norm() / scale;
}

double rel_err(cplx a, cplx b) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) / scale;
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

cplx Rng::box(double re_lo, double re_hi, double im_lo, double im_hi) {
  double re = uniform(re_lo, re_hi);
  double im = uniform(im_lo, im_hi);
  return {re, im};
}

cplx Rng::generic(double scale) {
  double re = uniform(0.2, 1.0) * (uniform(0, 1) < 0.5 ? -1 : 1);
  double im = uniform(0.05, 0.5) * (uniform(0, 1) < 0.5 ? -1 : 1);
  return cplx{re, im} * scale;
}

cplx Rng::normal() {
  std::normal_distribution<double> dist(0.0, 1.0);
  return cplx{dist(gen), dist(gen)};
}

Mat embed_slots(const Mat& op, const std::vector<int>& where, int total_slots) {
  const int k = static_cast<int>(where.size());
  const Eigen::Index dop = Eigen::Index(1) << k;
  if (op.rows() != dop || op.cols() != dop) throw std::invalid_argument("embed_slots: size");
  for (int s : where)
    if (s < 0 || s >= total_slots) throw std::out_of_range("embed_slots: slot");
  const Eigen::Index dim = Eigen::Index(1) << total_slots;
  Mat out = Mat::Zero(dim, dim);
  // bit position of slot s (slot 0 most significant)
  auto bitpos = [&](int s) { return total_slots - 1 - s; };
  for (Eigen::Index c = 0; c < dim; ++c) {
    Eigen::Index cop = 0;
    Eigen::Index base = c;
    for (int t = 0; t < k; ++t) {
      const Eigen::Index mask = Eigen::Index(1) << bitpos(where[t]);
      cop = (cop << 1) | ((c & mask) ? 1 : 0);
      base &= ~mask;
    }
    for (Eigen::Index rop = 0; rop < dop; ++rop) {
      if (op(rop, cop) == cplx(0.0)) continue;
      Eigen::Index r = base;
      for (int t = 0; t < k; ++t)
        if (rop & (Eigen::Index(1) << (k - 1 - t))) r |= Eigen::Index(1) << bitpos(where[t]);
      out(r, c) += op(rop, cop);
    }
  }
  return out;
}

void apply_two_slot(const Mat& op4, int sa, int sb, int total_slots,
                    const Vec& x, Vec& y) {
  if (op4.rows() != 4 || op4.cols() != 4) throw std::invalid_argument("apply_two_slot: op");
  if (sa == sb) throw std::invalid_argument("apply_two_slot: slots equal");
  const Eigen::Index dim = Eigen::Index(1) << total_slots;
  if (x.size() != dim) throw std::invalid_argument("apply_two_slot: vec");
  y.setZero(dim);
  const Eigen::Index ma = Eigen::Index(1) << (total_slots - 1 - sa);
  const Eigen::Index mb = Eigen::Index(1) << (total_slots - 1 - sb);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const int a = (c & ma) ? 1 : 0;
    const int b = (c & mb) ? 1 : 0;
    const int cin = (a << 1) | b;
    const Eigen::Index base = c & ~(ma | mb);
    const cplx xc = x(c);
    if (xc == cplx(0.0)) continue;
    for (int rout = 0; rout < 4; ++rout) {
      const cplx w = op4(rout, cin);
      if (w == cplx(0.0)) continue;
      Eigen::Index r = base;
      if (rout & 2) r |= ma;
      if (rout & 1) r |= mb;
      y(r) += w * xc;
    }
  }
}

Vec apply_two_slot(const Mat& op4, int sa, int sb, int total_slots, const Vec& x) {
  Vec y;
  apply_two_slot(op4, sa, sb, total_slots, x, y);
  return y;
}

Mat apply_two_slot_mat(const Mat& op4, int sa, int sb, int total_slots, const Mat& m) {
  Mat out(m.rows(), m.cols());
  Vec y;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Vec x = m.col(j);
    apply_two_slot(op4, sa, sb, total_slots, x, y);
    out.col(j) = y;
  }
  return out;
}

Mat partial_trace_aux(const SpaceDescriptor& sp, const Mat& big) {
  if (!sp.aux) throw std::invalid_argument("partial_trace_aux: no aux slot");
  const Eigen::Index d = Eigen::Index(1) << sp.sites;
  if (big.rows() != 2 * d || big.cols() != 2 * d) throw std::invalid_argument("partial_trace_aux: size");
  return big.topLeftCorner(d, d) + big.bottomRightCorner(d, d);
}

}  // namespace openxxz
