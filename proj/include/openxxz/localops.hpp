#pragma once

#include "openxxz/states.hpp"

namespace openxxz {

// word of elementary operators E^{eps'_n, eps_n} on sites 1..m, entries in {1,2}
struct EpsilonWord {
  std::vector<int> eps, epsp;

  int m() const { return static_cast<int>(eps.size()); }
  int s() const;   // sites with eps == 2
  int sp() const;  // sites with epsp == 1
  // net spin transfer sum_{r=n..m} (epsp_r - eps_r); whole word for n = 1
  int mtilde(int n = 1) const;
  // consumption sites i_p: ascending over eps == 2, then descending over epsp == 1
  std::vector<int> i_set() const;
  void check() const;
};

// word with index idx in 0..4^m-1; per-site code 2(eps_n - 1) + (epsp_n - 1),
// site 1 most significant
EpsilonWord word_from_index(int m, int idx);

// gauge shift sequences attached to a word, 1-based site n (n = 0 gives the seed)
cplx word_b(const EpsilonWord& w, cplx beta, int n);
cplx word_bbar(const EpsilonWord& w, cplx beta, int n);

// S_n(-xi_n|gd) E^{i,j} S_n^{-1}(-xi_n|ga) embedded on the chain
Mat gauged_E(const ModelParams& p, int n, int i, int j, GaugePair ga, GaugePair gd);

Mat bulk_transfer(const ModelParams& p, cplx lam);
cplx detq_M(const ModelParams& p, cplx lam);

// single-site operator through the gauged bulk monodromy; form 1 dresses the
// entry at xi_n - eta/2, form 2 the conjugate entry at xi_n + eta/2
Mat reconstruct_single(const ModelParams& p, int n, int i, int j, GaugePair ga, GaugePair gd,
                       int form);

// full word as an ordered double product of gauged monodromy entries; the
// internal gauges depend on the free parameter x and the root count M of the
// state the word is meant to act on, the assembled operator on neither
Mat reconstruct_word(const ModelParams& p, const EpsilonWord& w, GaugePair g, cplx x, int M);
cplx default_word_x(const ModelParams& p, GaugePair g, int M);

// the word as a plain product of single-site gauged operators with the
// word's own gauge sequence; reconstruct_word must reproduce this
Mat word_operator(const ModelParams& p, const EpsilonWord& w, GaugePair g);

// 4^m x 4^m matrix whose column idx is the vectorized restriction of the word
// word_from_index(m, idx) to the first m sites
Mat word_basis_matrix(const ModelParams& p, int m, GaugePair g);
// condition number of word_basis_matrix; finite iff the gauged words span
// every operator supported on the first m sites
double basis_check(const ModelParams& p, int m, GaugePair g);

struct WordActionTerm {
  cplx coef;
  BulkBetheState state;
};
std::vector<WordActionTerm> act_on_bulk(const ModelParams& p, const EpsilonWord& w,
                                        const std::vector<cplx>& mu, GaugePair g, cplx x);

struct BoundaryWordTerm {
  cplx coef;
  BoundaryBetheState state;
};
std::vector<BoundaryWordTerm> act_on_boundary(const ModelParams& p, const EpsilonWord& w,
                                              const std::vector<cplx>& mu, GaugePair g);

}  // namespace openxxz
