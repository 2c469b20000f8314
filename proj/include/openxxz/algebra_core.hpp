#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace openxxz {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr cplx iu{0.0, 1.0};
inline constexpr double pi = 3.14159265358979323846;

Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat id2();
// elementary 2x2 matrix E^{ij} = |i><j|, indices in {1,2}, 1 = spin up
Mat unit22(int i, int j);

Mat kron(const Mat& a, const Mat& b);

// Frobenius distance scaled by max(1, |a|, |b|)
double rel_err(const Mat& a, const Mat& b);
double rel_err(cplx a, cplx b);

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi);
  // complex with both parts uniform in the given boxes
  cplx box(double re_lo, double re_hi, double im_lo, double im_hi);
  // complex bounded away from zero: |Re| in [0.2,1]*scale, |Im| in [0.05,0.5]*scale
  cplx generic(double scale = 1.0);
  // complex with independent standard-normal parts
  cplx normal();
};

// Tensor-product space of 2-dimensional slots. Slot 0 is the most significant
// bit of the basis index (slowest varying). When an auxiliary slot is present
// it sits at slot 0 and physical site n (1-based) occupies slot n; otherwise
// site n occupies slot n-1.
struct SpaceDescriptor {
  int sites = 0;
  bool aux = false;

  int slots() const { return sites + (aux ? 1 : 0); }
  Eigen::Index dim() const { return Eigen::Index(1) << slots(); }
  int site_slot(int n) const {
    if (n < 1 || n > sites) throw std::out_of_range("site index");
    return aux ? n : n - 1;
  }
};

// Embed an operator on k slots into the full space. `where` lists the global
// slots in the operator's own significance order (where[0] = most significant).
Mat embed_slots(const Mat& op, const std::vector<int>& where, int total_slots);

inline Mat embed_local(const SpaceDescriptor& sp, const Mat& op2, int slot) {
  return embed_slots(op2, {slot}, sp.slots());
}

// y <- (op4 acting on slots sa (x) sb) x, without forming the big matrix
void apply_two_slot(const Mat& op4, int sa, int sb, int total_slots,
                    const Vec& x, Vec& y);
Vec apply_two_slot(const Mat& op4, int sa, int sb, int total_slots, const Vec& x);
// applies column by column; used to accumulate ordered products densely
Mat apply_two_slot_mat(const Mat& op4, int sa, int sb, int total_slots, const Mat& m);

// trace over the auxiliary slot of an operator on aux (x) H
Mat partial_trace_aux(const SpaceDescriptor& sp, const Mat& big);

}  // namespace openxxz
