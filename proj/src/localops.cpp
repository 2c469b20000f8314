#include "openxxz/localops.hpp"

#include "openxxz/spectrum.hpp"

#include <algorithm>
#include <functional>

namespace openxxz {

namespace {

cplx sh(cplx z) { return std::sinh(z); }

int pow4(int m) { return 1 << (2 * m); }

void require_word_site_range(const ModelParams& p, const EpsilonWord& w) {
  if (w.m() > p.N) throw std::invalid_argument("word longer than the chain");
}

}  // namespace

int EpsilonWord::s() const {
  int c = 0;
  for (int e : eps) c += (e == 2);
  return c;
}

int EpsilonWord::sp() const {
  int c = 0;
  for (int e : epsp) c += (e == 1);
  return c;
}

int EpsilonWord::mtilde(int n) const {
  int v = 0;
  for (int r = n; r <= m(); ++r) v += epsp[r - 1] - eps[r - 1];
  return v;
}

std::vector<int> EpsilonWord::i_set() const {
  std::vector<int> out;
  for (int j = 1; j <= m(); ++j)
    if (eps[j - 1] == 2) out.push_back(j);
  for (int j = m(); j >= 1; --j)
    if (epsp[j - 1] == 1) out.push_back(j);
  return out;
}

void EpsilonWord::check() const {
  if (eps.size() != epsp.size()) throw std::invalid_argument("word index lists differ in length");
  for (std::size_t k = 0; k < eps.size(); ++k)
    if ((eps[k] != 1 && eps[k] != 2) || (epsp[k] != 1 && epsp[k] != 2))
      throw std::invalid_argument("word indices must be 1 or 2");
}

EpsilonWord word_from_index(int m, int idx) {
  EpsilonWord w;
  w.eps.resize(m);
  w.epsp.resize(m);
  for (int n = m; n >= 1; --n) {
    int code = idx & 3;
    idx >>= 2;
    w.eps[n - 1] = 1 + (code >> 1);
    w.epsp[n - 1] = 1 + (code & 1);
  }
  return w;
}

cplx word_b(const EpsilonWord& w, cplx beta, int n) {
  cplx v = beta;
  for (int r = 1; r <= n; ++r) v -= (w.eps[r - 1] == 1) ? -1.0 : 1.0;
  return v;
}

cplx word_bbar(const EpsilonWord& w, cplx beta, int n) {
  return word_b(w, beta, n) + 2.0 * double(w.mtilde(n + 1));
}

Mat gauged_E(const ModelParams& p, int n, int i, int j, GaugePair ga, GaugePair gd) {
  Mat e2 = Mat::Zero(2, 2);
  e2(i - 1, j - 1) = 1.0;
  cplx lam = -p.xi[n - 1];
  Mat loc = s_gauge(lam, p.eta, gd.alpha, gd.beta) * e2 *
            s_gauge_inv(lam, p.eta, ga.alpha, ga.beta);
  auto sp = chain_space(p);
  return embed_local(sp, loc, sp.site_slot(n));
}

Mat bulk_transfer(const ModelParams& p, cplx lam) {
  return partial_trace_aux(dressed_space(p), bulk_M(p, lam));
}

cplx detq_M(const ModelParams& p, cplx lam) { return detq_T(p, lam); }

namespace {

// entry (row, col) of the auxiliary 2x2 block structure of the gauged bulk
// monodromy, as an operator on the chain
Mat gauged_M_entry(const ModelParams& p, cplx lam, GaugePair gl, GaugePair gr, int row, int col) {
  Blocks b = aux_blocks(dressed_space(p), gauged_M(p, lam, gl, gr));
  if (row == 1) return col == 1 ? b.A : b.B;
  return col == 1 ? b.C : b.D;
}

}  // namespace

Mat reconstruct_single(const ModelParams& p, int n, int i, int j, GaugePair ga, GaugePair gd,
                       int form) {
  if (n < 1 || n > p.N) throw std::out_of_range("site index");
  cplx eta = p.eta;
  auto t_at = [&](cplx lam) { return bulk_transfer(p, lam); };
  auto t_inv = [&](int k) {
    return Mat(t_at(p.xi[k - 1] + eta / 2.0) / detq_M(p, p.xi[k - 1]));
  };
  Eigen::Index dim = chain_space(p).dim();
  Mat acc = Mat::Identity(dim, dim);
  if (form == 1) {
    for (int k = 1; k < n; ++k) acc = acc * t_at(p.xi[k - 1] - eta / 2.0);
    acc = acc * gauged_M_entry(p, p.xi[n - 1] - eta / 2.0, ga, gd, j, i);
    for (int k = 1; k <= n; ++k) acc = acc * t_inv(k);
    return acc;
  }
  if (form != 2) throw std::invalid_argument("form must be 1 or 2");
  cplx pref = ((i - j) % 2 == 0 ? 1.0 : -1.0) *
              s_gauge_det(-p.xi[n - 1], eta, gd.alpha, gd.beta) /
              s_gauge_det(-p.xi[n - 1], eta, ga.alpha, ga.beta);
  for (int k = 1; k <= n; ++k) acc = acc * t_at(p.xi[k - 1] - eta / 2.0);
  acc = acc * gauged_M_entry(p, p.xi[n - 1] + eta / 2.0, {gd.alpha - 1.0, gd.beta},
                             {ga.alpha - 1.0, ga.beta}, 3 - i, 3 - j);
  acc = acc / detq_M(p, p.xi[n - 1]);
  for (int k = 1; k < n; ++k) acc = acc * t_inv(k);
  return pref * acc;
}

Mat reconstruct_word(const ModelParams& p, const EpsilonWord& w, GaugePair g, cplx x, int M) {
  w.check();
  require_word_site_range(p, w);
  const int m = w.m();
  const cplx eta = p.eta;
  const cplx apb = g.alpha + g.beta + double(p.N - 1);
  const cplx c_gauge = (x + apb) / 2.0 - double(M);
  auto d_gauge = [&](int n) { return (-x + apb) / 2.0 - double(M) - (g.beta - word_b(w, g.beta, n)); };

  Eigen::Index dim = chain_space(p).dim();
  Mat acc = Mat::Identity(dim, dim);
  cplx scal = 1.0;
  for (int n = 1; n <= m; ++n) {
    scal *= s_gauge_det(-p.xi[n - 1], eta, c_gauge, d_gauge(n)) /
            s_gauge_det(-p.xi[n - 1], eta, g.alpha + 1.0, word_b(w, g.beta, n));
  }
  for (int i = 1; i <= m; ++i) {
    acc = acc * gauged_M_entry(p, p.xi[i - 1] - eta / 2.0, {c_gauge, d_gauge(i)},
                               {g.alpha - 1.0, word_bbar(w, g.beta, i)}, w.eps[i - 1],
                               w.epsp[i - 1]);
  }
  for (int i = m; i >= 1; --i) {
    int r = 3 - w.eps[i - 1];
    acc = acc * gauged_M_entry(p, p.xi[i - 1] + eta / 2.0, {c_gauge - 1.0, d_gauge(i)},
                               {g.alpha, word_b(w, g.beta, i)}, r, r);
    acc = acc / detq_M(p, p.xi[i - 1]);
  }
  return scal * acc;
}

cplx default_word_x(const ModelParams& p, GaugePair g, int M) {
  return g.alpha + g.beta + double(p.N - 1 - 2 * M) + cplx(0.31, 0.17);
}

Mat word_operator(const ModelParams& p, const EpsilonWord& w, GaugePair g) {
  w.check();
  require_word_site_range(p, w);
  Eigen::Index dim = chain_space(p).dim();
  Mat acc = Mat::Identity(dim, dim);
  for (int n = 1; n <= w.m(); ++n) {
    GaugePair ga{g.alpha + 1.0, word_b(w, g.beta, n)};
    GaugePair gd{g.alpha - 1.0, word_bbar(w, g.beta, n)};
    acc = acc * gauged_E(p, n, w.epsp[n - 1], w.eps[n - 1], ga, gd);
  }
  return acc;
}

Mat word_basis_matrix(const ModelParams& p, int m, GaugePair g) {
  if (m > p.N) throw std::invalid_argument("word longer than the chain");
  SpaceDescriptor spm{m, false};
  Eigen::Index dim = spm.dim();
  Mat basis = Mat::Zero(dim * dim, pow4(m));
  for (int idx = 0; idx < pow4(m); ++idx) {
    EpsilonWord w = word_from_index(m, idx);
    Mat acc = Mat::Identity(dim, dim);
    for (int n = 1; n <= m; ++n) {
      Mat e2 = Mat::Zero(2, 2);
      e2(w.epsp[n - 1] - 1, w.eps[n - 1] - 1) = 1.0;
      cplx lam = -p.xi[n - 1];
      Mat loc = s_gauge(lam, p.eta, g.alpha - 1.0, word_bbar(w, g.beta, n)) * e2 *
                s_gauge_inv(lam, p.eta, g.alpha + 1.0, word_b(w, g.beta, n));
      acc = acc * embed_local(spm, loc, n - 1);
    }
    basis.col(idx) = Eigen::Map<const Vec>(acc.data(), dim * dim);
  }
  return basis;
}

double basis_check(const ModelParams& p, int m, GaugePair g) {
  Eigen::JacobiSVD<Mat> svd(word_basis_matrix(p, m, g));
  const auto& sv = svd.singularValues();
  return sv(0) / sv(sv.size() - 1);
}

namespace {

// indices 1..M label the state's roots, M+1..M+m the shifted inhomogeneities
// xi^{(1)}_{m+1-j}; everything below works with this extended list
struct ExtendedRoots {
  std::vector<cplx> ext;  // 1-based via ext[q-1]
  int M = 0, m = 0;

  cplx at(int q) const { return ext[q - 1]; }
};

ExtendedRoots extend_roots(const ModelParams& p, const std::vector<cplx>& mu, int m) {
  ExtendedRoots e;
  e.M = static_cast<int>(mu.size());
  e.m = m;
  e.ext = mu;
  for (int q = e.M + 1; q <= e.M + m; ++q) e.ext.push_back(xi_shifted(p, e.M + m - q, 1));
  return e;
}

// ordered selections (b_1..b_{s+s'}): b_p <= M for p <= s, b_p <= M+m+1-i_p
// afterwards, all distinct
std::vector<std::vector<int>> enumerate_b_sets(int M, int m, int s, int ssp,
                                               const std::vector<int>& i_set) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<char> used(M + m + 1, 0);
  std::function<void(int)> dfs = [&](int pidx) {
    if (pidx == ssp) {
      out.push_back(cur);
      return;
    }
    int hi = (pidx < s) ? M : M + m + 1 - i_set[pidx];
    for (int b = 1; b <= hi; ++b) {
      if (used[b]) continue;
      used[b] = 1;
      cur.push_back(b);
      dfs(pidx + 1);
      cur.pop_back();
      used[b] = 0;
    }
  };
  dfs(0);
  return out;
}

std::vector<int> complement_of(const std::vector<int>& b_set, int total) {
  std::vector<char> in(total + 1, 0);
  for (int b : b_set) in[b] = 1;
  std::vector<int> out;
  for (int q = 1; q <= total; ++q)
    if (!in[q]) out.push_back(q);
  return out;
}

// three-case gauge constant of the word action at net spin transfer mtilde
cplx f_word(const ModelParams& p, const EpsilonWord& w, GaugePair g, cplx x, int M) {
  const cplx eta = p.eta;
  const cplx apb = g.alpha + g.beta + double(p.N);
  const int mt = w.mtilde();
  cplx v = 1.0;
  if (mt > 0) {
    for (int k = 1; k <= mt; ++k) {
      v *= exp(((x + apb) / 2.0 - double(M)) * eta) * sh(eta * (g.beta + double(k - M - 1))) /
           (2.0 * sh(eta * ((-x + apb - 1.0) / 2.0 + double(k))));
    }
  } else if (mt < 0) {
    for (int k = 1; k <= -mt; ++k) {
      v *= 2.0 * sh(eta * ((-x + apb - 1.0) / 2.0 - double(k - 1))) /
           (exp(((x + apb) / 2.0 - double(M)) * eta) * sh(eta * (g.beta - double(k + M))));
    }
  }
  return v;
}

cplx word_gauge_prefactor(const ModelParams& p, const EpsilonWord& w, GaugePair g) {
  cplx v = 1.0;
  for (int n = 1; n <= w.m(); ++n) v *= exp(p.eta) / sh(p.eta * word_b(w, g.beta, n));
  return v;
}

// consumption brackets shared by the bulk and boundary actions; mu_b is the
// (possibly sign-flipped) root selected at slot p
cplx raising_bracket(const ModelParams& p, const EpsilonWord& w, GaugePair g,
                     const ExtendedRoots& er, int ip, cplx mu_b) {
  const cplx eta = p.eta;
  cplx v = sh(xi_shifted(p, ip - 1, 1) - mu_b + eta * (1.0 + word_b(w, g.beta, ip)));
  for (int k = ip + 1; k <= er.m; ++k) v *= sh(mu_b - xi_shifted(p, k - 1, 1) - eta);
  for (int k = ip; k <= er.m; ++k) v /= sh(mu_b - xi_shifted(p, k - 1, 1));
  return v;
}

cplx lowering_bracket(const ModelParams& p, const EpsilonWord& w, GaugePair g,
                      const ExtendedRoots& er, int ip, int b, cplx mu_b) {
  const cplx eta = p.eta;
  cplx v = sh(xi_shifted(p, ip - 1, 1) - mu_b - eta * (1.0 - word_bbar(w, g.beta, ip)));
  for (int k = ip + 1; k <= er.m; ++k) v *= sh(xi_shifted(p, k - 1, 1) - mu_b - eta);
  for (int k = ip; k <= er.m; ++k) {
    if (k == er.M + er.m + 1 - b) continue;
    v /= sh(xi_shifted(p, k - 1, 1) - mu_b);
  }
  return v;
}

}  // namespace

std::vector<WordActionTerm> act_on_bulk(const ModelParams& p, const EpsilonWord& w,
                                        const std::vector<cplx>& mu, GaugePair g, cplx x) {
  w.check();
  require_word_site_range(p, w);
  const int m = w.m(), s = w.s(), ssp = w.s() + w.sp();
  const int M = static_cast<int>(mu.size());
  const int mt = w.mtilde();
  const cplx eta = p.eta;
  const auto i_set = w.i_set();
  const ExtendedRoots er = extend_roots(p, mu, m);

  cplx pref = f_word(p, w, g, x, M) * word_gauge_prefactor(p, w, g);
  for (int j = 1; j <= m; ++j) {
    cplx xj = xi_shifted(p, j - 1, 1);
    pref /= d_of(p, xj);
    for (int k = 1; k <= M; ++k) pref *= sh(mu[k - 1] - xj) / sh(mu[k - 1] - xj - eta);
  }

  std::vector<WordActionTerm> out;
  for (const auto& B : enumerate_b_sets(M, m, s, ssp, i_set)) {
    cplx F = pref;
    for (int j = 0; j < ssp; ++j) {
      int b = B[j];
      cplx mub = er.at(b);
      F *= d_of(p, mub);
      for (int k = 1; k <= M; ++k) {
        F *= sh(mu[k - 1] - mub - eta);
        if (k != b) F /= sh(mu[k - 1] - mub);
      }
    }
    for (int i = 0; i < ssp; ++i)
      for (int j = i + 1; j < ssp; ++j) {
        cplx dif = er.at(B[i]) - er.at(B[j]);
        F *= sh(dif) / sh(dif - eta);
      }
    for (int pidx = 0; pidx < ssp; ++pidx) {
      int b = B[pidx];
      F *= (pidx < s) ? raising_bracket(p, w, g, er, i_set[pidx], er.at(b))
                      : lowering_bracket(p, w, g, er, i_set[pidx], b, er.at(b));
    }
    WordActionTerm t;
    t.coef = F;
    for (int q : complement_of(B, M + m)) t.state.roots.push_back(er.at(q));
    t.state.x = x;
    t.state.z = g.alpha - g.beta - 2.0 * double(mt);
    t.state.y = g.alpha + g.beta + double(p.N - M - 1 + mt);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<BoundaryWordTerm> act_on_boundary(const ModelParams& p, const EpsilonWord& w,
                                              const std::vector<cplx>& mu, GaugePair g) {
  w.check();
  require_word_site_range(p, w);
  if (!p.bplus.z_limit)
    throw std::runtime_error("act_on_boundary: needs the z-oriented site-N field");
  const int m = w.m(), s = w.s(), ssp = w.s() + w.sp();
  const int M = static_cast<int>(mu.size());
  const int mt = w.mtilde();
  const cplx eta = p.eta;
  const auto i_set = w.i_set();
  const ExtendedRoots er = extend_roots(p, mu, m);

  cplx denom_d = 1.0;
  for (int j = 1; j <= m; ++j) denom_d *= d_of(p, xi_shifted(p, j - 1, 1));
  cplx pref = double((((p.N + 1) * mt) % 2 == 0) ? 1 : -1) *
              exp(eta * double(mt) * (g.beta + double(mt))) * word_gauge_prefactor(p, w, g);

  std::vector<BoundaryWordTerm> out;
  for (const auto& B : enumerate_b_sets(M, m, s, ssp, i_set)) {
    std::vector<int> alpha_plus, gamma_minus;
    for (int b : B) (b <= M ? alpha_plus : gamma_minus).push_back(b > M ? M + m + 1 - b : b);
    std::sort(alpha_plus.begin(), alpha_plus.end());
    std::vector<int> alpha_minus = complement_of(alpha_plus, M);
    std::vector<char> in_gm(m + 1, 0);
    for (int j : gamma_minus) in_gm[j] = 1;
    std::vector<int> gamma_plus;
    for (int j = 1; j <= m; ++j)
      if (!in_gm[j]) gamma_plus.push_back(j);

    std::vector<cplx> xi_gp;
    for (int j : gamma_plus) xi_gp.push_back(xi_shifted(p, j - 1, 1));
    cplx H1 = bulk_expansion_H(p, xi_gp, std::vector<int>(xi_gp.size(), 1));

    const int na = static_cast<int>(alpha_plus.size());
    cplx fB = 0.0;
    for (int mask = 0; mask < (1 << na); ++mask) {
      std::vector<int> sigma(na);
      std::vector<cplx> mu_ap(na);
      std::vector<cplx> sgn_ext = er.ext;
      for (int t = 0; t < na; ++t) {
        sigma[t] = (mask >> t) & 1 ? -1 : 1;
        mu_ap[t] = mu[alpha_plus[t] - 1];
        sgn_ext[alpha_plus[t] - 1] *= double(sigma[t]);
      }
      auto sat = [&](int q) { return sgn_ext[q - 1]; };

      cplx c = bulk_expansion_H(p, mu_ap, sigma) / H1 / denom_d;
      for (int b : B) c *= d_of(p, sat(b));
      for (int i : alpha_minus) {
        for (double e : {1.0, -1.0}) {
          cplx emu = e * mu[i - 1];
          for (int t = 0; t < na; ++t) {
            cplx ms = double(sigma[t]) * mu_ap[t];
            c *= sh(ms + emu + eta) / sh(ms + emu);
          }
          for (int j : gamma_plus)
            c *= sh(xi_shifted(p, j - 1, 1) + emu) / sh(xi_shifted(p, j - 1, 0) + emu);
        }
      }
      for (int t = 0; t < na; ++t) {
        cplx ms_i = double(sigma[t]) * mu_ap[t];
        for (int j : gamma_plus)
          c *= sh(xi_shifted(p, j - 1, 1) - ms_i) / sh(xi_shifted(p, j - 1, 0) - ms_i);
        for (int u = 0; u < na; ++u) {
          cplx ms_j = double(sigma[u]) * mu_ap[u];
          c *= sh(ms_j - ms_i - eta);
          if (u != t) c /= sh(ms_j - ms_i);
        }
      }
      for (int i = 0; i < ssp; ++i)
        for (int j = i + 1; j < ssp; ++j) {
          cplx dif = sat(B[i]) - sat(B[j]);
          c *= sh(dif) / sh(dif - eta);
        }
      for (int pidx = 0; pidx < ssp; ++pidx) {
        int b = B[pidx];
        c *= (pidx < s) ? raising_bracket(p, w, g, er, i_set[pidx], sat(b))
                        : lowering_bracket(p, w, g, er, i_set[pidx], b, sat(b));
      }
      fB += c;
    }

    BoundaryWordTerm t;
    t.coef = pref * fB;
    for (int q : complement_of(B, M + m)) t.state.roots.push_back(er.at(q));
    t.state.z = g.alpha - g.beta - 2.0 * double(mt);
    t.state.y = g.alpha + g.beta + double(p.N - 1 - 2 * M);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace openxxz
