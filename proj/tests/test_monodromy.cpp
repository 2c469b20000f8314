#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "openxxz/algebra_core.hpp"
#include "openxxz/lax.hpp"
#include "openxxz/monodromy.hpp"

using namespace openxxz;

namespace {

ModelParams make_params(Rng& rng, int n, bool z_limit_plus = false) {
    ModelParams p;
    p.eta = rng.generic();
    p.N = n;
    p.xi.resize(n);
    for (int k = 0; k < n; ++k) p.xi[k] = cplx(0.23 * (k + 1) - 0.31, 0.0) + rng.box(-0.04, 0.04, -0.03, 0.03);
    p.bminus = make_boundary(rng.generic(), rng.generic(), rng.generic(0.5));
    p.bplus = z_limit_plus ? make_boundary_z_limit(rng.generic(), rng.generic(0.5))
                           : make_boundary(rng.generic(), rng.generic(), rng.generic(0.5));
    p.check();
    REQUIRE(xi_generic(p));
    return p;
}

// embeds an (aux x chain) operator into a space with two auxiliary slots in
// front of the chain, putting its own auxiliary slot at global slot `a`
Mat embed_double_aux(const Mat& op, int a, int n) {
    std::vector<int> where(1 + n);
    where[0] = a;
    for (int k = 1; k <= n; ++k) where[k] = 1 + k;
    return embed_slots(op, where, n + 2);
}

Mat proj_on(int spin_index, int slot, int total) {
    return embed_slots(unit22(spin_index, spin_index), {slot}, total);
}

// U_-(lam | alpha, beta + sigma^z_c) acting with auxiliary slot `a`
Mat dyn_gauged_u(const ModelParams& p, cplx lam, cplx alpha, cplx beta, int a, int c) {
    const Mat up = embed_double_aux(gauged_U_minus(p, lam, {alpha, beta + 1.0}), a, p.N);
    const Mat dn = embed_double_aux(gauged_U_minus(p, lam, {alpha, beta - 1.0}), a, p.N);
    const int total = p.N + 2;
    return up * proj_on(1, c, total) + dn * proj_on(2, c, total);
}

Mat pt_aux(const Mat& big) {
    const int d = int(big.rows()) / 2;
    Mat out(2 * d, 2 * d);
    out.block(0, 0, d, d) = big.block(0, 0, d, d);
    out.block(0, d, d, d) = big.block(d, 0, d, d);
    out.block(d, 0, d, d) = big.block(0, d, d, d);
    out.block(d, d, d, d) = big.block(d, d, d, d);
    return out;
}

Mat assemble_aux(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
    const int n = int(a.rows());
    Mat out(2 * n, 2 * n);
    out.block(0, 0, n, n) = a;
    out.block(0, n, n, n) = b;
    out.block(n, 0, n, n) = c;
    out.block(n, n, n, n) = d;
    return out;
}

cplx coth(cplx z) { return std::cosh(z) / std::sinh(z); }

cplx coth_varsigma(const BoundaryTriple& b) {
    return b.z_limit ? cplx(double(b.z_sign)) : coth(b.varsigma);
}

}  // namespace

TEST_CASE("inhomogeneity genericity guard") {
    Rng rng(31);
    ModelParams p = make_params(rng, 3);
    CHECK(xi_generic(p));
    ModelParams bad = p;
    bad.xi[1] = bad.xi[0];
    CHECK(!xi_generic(bad));
    bad = p;
    bad.xi[1] = -bad.xi[0] + bad.eta;
    CHECK(!xi_generic(bad));
}

TEST_CASE("bulk monodromy transposition identities") {
    Rng rng(32);
    const ModelParams p = make_params(rng, 3);
    const double sgn = (p.N % 2 == 0) ? 1.0 : -1.0;
    for (int rep = 0; rep < 3; ++rep) {
        const cplx lam = rng.generic();
        CHECK(rel_err(bulk_M(p, -lam), Mat(sgn * bulk_That(p, lam))) < 1e-12);
        CHECK(rel_err(bulk_Mhat(p, -lam), Mat(sgn * bulk_T(p, lam))) < 1e-12);
    }
}

TEST_CASE("boundary monodromy from bulk operators") {
    Rng rng(33);
    for (int n : {2, 3}) {
        const ModelParams p = make_params(rng, n, n == 3);
        const cplx lam = rng.generic();
        CHECK(rel_err(boundary_U_minus(p, lam), boundary_U_minus_bulkform(p, lam)) < 1e-12);
    }
}

TEST_CASE("reflection equation for the boundary monodromy") {
    Rng rng(34);
    for (int rep = 0; rep < 3; ++rep) {
        const ModelParams p = make_params(rng, 2, rep == 2);
        const cplx lam = rng.generic();
        const cplx mu = rng.generic();
        const int total = p.N + 2;
        const Mat u1 = embed_double_aux(boundary_U_minus(p, lam), 0, p.N);
        const Mat u2 = embed_double_aux(boundary_U_minus(p, mu), 1, p.N);
        const Mat r_m = embed_slots(r6v(lam - mu, p.eta), {0, 1}, total);
        const Mat r_p = embed_slots(r6v(lam + mu - p.eta, p.eta), {0, 1}, total);
        CHECK(rel_err(r_m * u1 * r_p * u2, u2 * r_p * u1 * r_m) < 1e-11);
    }
}

TEST_CASE("scalar boundary matrices under conjugation transpose") {
    Rng rng(35);
    for (int rep = 0; rep < 4; ++rep) {
        const ModelParams p = make_params(rng, 2, rep >= 2);
        const cplx lam = rng.generic();
        const Mat sy = pauli_y();
        CHECK(rel_err(k_minus(p, lam), Mat(sy * kbar_plus(p, lam).transpose() * sy)) < 1e-12);
        CHECK(rel_err(k_plus(p, lam), Mat(sy * kbar_minus(p, lam).transpose() * sy)) < 1e-12);

        const Mat m = bulk_M(p, lam);
        const Mat mhat = bulk_Mhat(p, lam);
        const SpaceDescriptor sp = dressed_space(p);
        const Mat kb = embed_local(sp, kbar_plus(p, lam).transpose(), 0);
        const Mat ubar_plus_t0 = pt_aux(m) * kb * pt_aux(mhat);
        const Mat sy_aux = embed_local(sp, pauli_y(), 0);
        CHECK(rel_err(boundary_U_minus(p, lam), Mat(sy_aux * ubar_plus_t0 * sy_aux)) < 1e-11);
    }
}

TEST_CASE("boundary monodromy block relations") {
    Rng rng(36);
    const ModelParams p = make_params(rng, 3);
    const SpaceDescriptor sp = dressed_space(p);
    for (int rep = 0; rep < 20; ++rep) {
        const cplx lam = rng.generic();
        const cplx e = p.eta;
        const Blocks up = aux_blocks(sp, boundary_U_minus(p, lam));
        const Blocks um = aux_blocks(sp, boundary_U_minus(p, -lam));
        const cplx s2 = std::sinh(2.0 * lam);
        Mat rhs = (std::sinh(e) / s2) * up.D + (std::sinh(2.0 * lam - e) / s2) * um.D;
        CHECK(rel_err(up.A, rhs) < 1e-10);
        rhs = (std::sinh(e) / s2) * up.A + (std::sinh(2.0 * lam - e) / s2) * um.A;
        CHECK(rel_err(up.D, rhs) < 1e-10);
        const cplx par = -std::sinh(2.0 * lam + e) / std::sinh(2.0 * lam - e);
        CHECK(rel_err(um.B, Mat(par * up.B)) < 1e-10);
        CHECK(rel_err(um.C, Mat(par * up.C)) < 1e-10);
    }
}

TEST_CASE("inversion relation and quantum determinant") {
    Rng rng(37);
    for (int rep = 0; rep < 4; ++rep) {
        const ModelParams p = make_params(rng, 2, rep >= 2);
        const SpaceDescriptor sp = dressed_space(p);
        const cplx lam = rng.generic();
        const cplx e = p.eta;
        const Mat dim_id = Mat::Identity(sp.dim(), sp.dim());

        const cplx scal = detq_U_minus(p, lam) / std::sinh(2.0 * lam - 2.0 * e);
        const Mat prod = boundary_U_minus(p, lam + e / 2.0) * boundary_U_minus(p, -lam + e / 2.0);
        CHECK(rel_err(prod, Mat(scal * dim_id)) < 1e-10);

        CHECK(rel_err(detq_U_minus_elements(p, lam), detq_U_minus(p, lam)) < 1e-12);

        const Mat chain_id = Mat::Identity(1 << p.N, 1 << p.N);
        const Blocks bp = aux_blocks(sp, boundary_U_minus(p, e / 2.0 + lam));
        const Blocks bm = aux_blocks(sp, boundary_U_minus(p, e / 2.0 - lam));
        CHECK(rel_err(Mat(bp.A * bm.A + bp.B * bm.C), Mat(scal * chain_id)) < 1e-10);
        CHECK(rel_err(Mat(bp.D * bm.D + bp.C * bm.B), Mat(scal * chain_id)) < 1e-10);
        CHECK(rel_err(Mat(bm.A * bp.A + bm.B * bp.C), Mat(scal * chain_id)) < 1e-10);
        CHECK(rel_err(Mat(bm.D * bp.D + bm.C * bp.B), Mat(scal * chain_id)) < 1e-10);
    }
}

TEST_CASE("commuting transfer matrix family") {
    Rng rng(38);
    int pairs = 0;
    for (int n = 2; n <= 5; ++n) {
        const ModelParams p = make_params(rng, n, n % 2 == 0);
        for (int rep = 0; rep < 5; ++rep, ++pairs) {
            const Mat ta = transfer(p, rng.generic());
            const Mat tb = transfer(p, rng.generic());
            CHECK(rel_err(Mat(ta * tb), Mat(tb * ta)) < 1e-10);
        }
    }
    CHECK(pairs == 20);
}

TEST_CASE("transfer matrix special values") {
    Rng rng(39);
    for (int rep = 0; rep < 4; ++rep) {
        const ModelParams p = make_params(rng, 3, rep >= 2);
        const cplx e = p.eta;
        const double sgn = (p.N % 2 == 0) ? 1.0 : -1.0;
        const Mat chain_id = Mat::Identity(1 << p.N, 1 << p.N);

        const cplx v1 = 2.0 * sgn * std::cosh(e) * detq_T(p, cplx(0));
        CHECK(rel_err(transfer(p, e / 2.0), Mat(v1 * chain_id)) < 1e-10);

        const cplx v2 = -2.0 * std::cosh(e) * coth_varsigma(p.bplus) * coth_varsigma(p.bminus) *
                        detq_T(p, iu * pi / 2.0);
        CHECK(rel_err(transfer(p, e / 2.0 + iu * pi / 2.0), Mat(v2 * chain_id)) < 1e-10);
    }
}

TEST_CASE("transfer matrix asymptotics") {
    Rng rng(40);
    const ModelParams p = make_params(rng, 3);
    const cplx coeff = p.bplus.kappa * p.bminus.kappa * std::cosh(p.bplus.tau - p.bminus.tau) /
                       (std::pow(2.0, 2 * p.N + 1) * std::sinh(p.bplus.varsigma) * std::sinh(p.bminus.varsigma));
    const Mat chain_id = Mat::Identity(1 << p.N, 1 << p.N);
    for (const cplx lam : {cplx(12.0, 0.37), cplx(-12.0, 0.71)}) {
        const cplx lead = coeff * std::exp(2.0 * double(p.N + 2) * (lam.real() > 0 ? lam : -lam));
        CHECK(rel_err(transfer(p, lam), Mat(lead * chain_id)) < 1e-8);
    }
}

TEST_CASE("transfer quantum determinant identity at the inhomogeneities") {
    Rng rng(41);
    for (int rep = 0; rep < 2; ++rep) {
        const ModelParams p = make_params(rng, 3, rep == 1);
        const Mat chain_id = Mat::Identity(1 << p.N, 1 << p.N);
        for (int n = 0; n < p.N; ++n) {
            const cplx xin = p.xi[n];
            const cplx rhs = -detq_k_plus(p, xin) * detq_U_minus(p, xin) /
                             (std::sinh(2.0 * xin + p.eta) * std::sinh(2.0 * xin - p.eta));
            const Mat prod = transfer(p, xin + p.eta / 2.0) * transfer(p, xin - p.eta / 2.0);
            CHECK(rel_err(prod, Mat(rhs * chain_id)) < 1e-10);
        }
    }
}

TEST_CASE("Hamiltonian from the transfer matrix derivative") {
    Rng rng(42);
    for (int rep = 0; rep < 5; ++rep) {
        ModelParams p = make_params(rng, 3, rep >= 3);
        std::fill(p.xi.begin(), p.xi.end(), cplx(0));
        const Mat h_fd = hamiltonian_from_transfer(p);
        const Mat h_ref = hamiltonian_pauli(p);
        const int d = 1 << p.N;
        const Mat id = Mat::Identity(d, d);
        const Mat a = h_fd - (h_fd.trace() / double(d)) * id;
        const Mat b = h_ref - (h_ref.trace() / double(d)) * id;
        CHECK(rel_err(a, b) < 1e-8);
    }
}

TEST_CASE("Hamiltonian symmetry maps") {
    Rng rng(43);
    ModelParams p = make_params(rng, 3);
    std::fill(p.xi.begin(), p.xi.end(), cplx(0));
    const Mat h = hamiltonian_pauli(p);

    CHECK(rel_err(h, hamiltonian_pauli(eta_flip(p))) < 1e-10);

    const ModelParams q = mirror(p);
    const int d = 1 << p.N;
    Mat perm(d, d);
    perm.setZero();
    for (int s = 0; s < d; ++s) {
        int r = 0;
        for (int b = 0; b < p.N; ++b)
            if (s & (1 << b)) r |= 1 << (p.N - 1 - b);
        perm(r, s) = 1.0;
    }
    CHECK(rel_err(Mat(perm * h * perm.transpose()), hamiltonian_pauli(q)) < 1e-10);
}

TEST_CASE("gauged boundary monodromy entry relations") {
    Rng rng(44);
    const ModelParams p = make_params(rng, 2);
    const SpaceDescriptor sp = dressed_space(p);
    const cplx e = p.eta;
    for (int rep = 0; rep < 5; ++rep) {
        const cplx lam = rng.generic();
        const cplx alpha = rng.generic(2.0);
        const cplx beta = rng.generic(2.0);
        const cplx t = rng.generic();

        const Blocks g = aux_blocks(sp, gauged_U_minus(p, lam, {alpha, beta}));
        const Blocks gflip = aux_blocks(sp, gauged_U_minus(p, lam, {alpha, -beta}));
        CHECK(rel_err(g.B, gflip.C) < 1e-12);

        CHECK(rel_err(bhat_minus(p, lam, {alpha, beta}), bhat_minus(p, lam, {alpha + t, beta + t})) < 1e-11);
        CHECK(rel_err(chat_minus(p, lam, {alpha, beta}), chat_minus(p, lam, {alpha + t, beta - t})) < 1e-11);

        const Blocks gm = aux_blocks(sp, gauged_U_minus(p, -lam, {alpha, beta}));
        const cplx par = -std::exp(-2.0 * lam) * std::sinh(2.0 * lam + e) / std::sinh(2.0 * lam - e);
        CHECK(rel_err(gm.B, Mat(par * g.B)) < 1e-10);
        CHECK(rel_err(gm.C, Mat(par * g.C)) < 1e-10);

        const Blocks am = aux_blocks(sp, gauged_U_minus(p, lam, {alpha, beta - 1.0}));
        const Blocks am_neg = aux_blocks(sp, gauged_U_minus(p, -lam, {alpha, beta - 1.0}));
        const Blocks dp = aux_blocks(sp, gauged_U_minus(p, lam, {alpha, beta + 1.0}));
        const Blocks dp_neg = aux_blocks(sp, gauged_U_minus(p, -lam, {alpha, beta + 1.0}));
        const cplx s2 = std::sinh(2.0 * lam);
        Mat rhs = (std::sinh(e) * std::sinh(2.0 * lam + e * beta) / (std::sinh(e * (beta + 1.0)) * s2)) * am.A +
                  std::exp(2.0 * lam) *
                      (std::sinh(e * beta) * std::sinh(2.0 * lam - e) / (std::sinh(e * (beta + 1.0)) * s2)) *
                      am_neg.A;
        CHECK(rel_err(dp.D, rhs) < 1e-10);
        rhs = -(std::sinh(e) * std::sinh(2.0 * lam - e * beta) / (std::sinh(e * (beta - 1.0)) * s2)) * dp.D +
              std::exp(2.0 * lam) *
                  (std::sinh(e * beta) * std::sinh(2.0 * lam - e) / (std::sinh(e * (beta - 1.0)) * s2)) *
                  dp_neg.D;
        CHECK(rel_err(am.A, rhs) < 1e-10);

        const cplx scal = detq_U_minus(p, lam) / std::sinh(2.0 * lam - 2.0 * e);
        const Mat chain_id = Mat::Identity(1 << p.N, 1 << p.N);
        const Blocks hp = aux_blocks(sp, gauged_U_minus(p, e / 2.0 + lam, {alpha, beta}));
        const Blocks hm = aux_blocks(sp, gauged_U_minus(p, e / 2.0 - lam, {alpha, beta}));
        CHECK(rel_err(Mat(hp.A * hm.A + hp.B * hm.C), Mat(scal * chain_id)) < 1e-10);
        CHECK(rel_err(Mat(hp.D * hm.D + hp.C * hm.B), Mat(scal * chain_id)) < 1e-10);
    }
}

TEST_CASE("dynamical reflection equation for the gauged boundary monodromy") {
    Rng rng(45);
    for (int rep = 0; rep < 3; ++rep) {
        const ModelParams p = make_params(rng, 2, rep == 2);
        const cplx lam = rng.generic();
        const cplx mu = rng.generic();
        const cplx alpha = rng.generic(2.0);
        const cplx beta = rng.generic(2.0);
        const int total = p.N + 2;

        const Mat u1 = dyn_gauged_u(p, lam, alpha, beta, 0, 1);
        const Mat u2 = dyn_gauged_u(p, mu, alpha, beta, 1, 0);
        const Mat r21_m = embed_slots(rsos(lam - mu, beta, p.eta), {1, 0}, total);
        const Mat r12_m = embed_slots(rsos(lam - mu, beta, p.eta), {0, 1}, total);
        const Mat r21_p = embed_slots(rsos(lam + mu - p.eta, beta, p.eta), {1, 0}, total);
        const Mat r12_p = embed_slots(rsos(lam + mu - p.eta, beta, p.eta), {0, 1}, total);
        CHECK(rel_err(r21_m * u1 * r12_p * u2, u2 * r21_p * u1 * r12_m) < 1e-10);
    }
}

TEST_CASE("gauged bulk monodromy reduced entries") {
    Rng rng(46);
    const ModelParams p = make_params(rng, 2);
    const SpaceDescriptor sp = dressed_space(p);
    const cplx lam = rng.generic();
    const cplx al = rng.generic(2.0), be = rng.generic(2.0);
    const cplx ga = rng.generic(2.0), de = rng.generic(2.0);
    const cplx t = rng.generic(), s = rng.generic();

    const Blocks base = aux_blocks(sp, gauged_M_reduced(p, lam, {al, be}, {ga, de}));
    const Blocks sa = aux_blocks(sp, gauged_M_reduced(p, lam, {al + t, be + t}, {ga + s, de - s}));
    CHECK(rel_err(base.A, sa.A) < 1e-11);
    const Blocks sb = aux_blocks(sp, gauged_M_reduced(p, lam, {al + t, be + t}, {ga + s, de + s}));
    CHECK(rel_err(base.B, sb.B) < 1e-11);
    const Blocks sc = aux_blocks(sp, gauged_M_reduced(p, lam, {al + t, be - t}, {ga + s, de - s}));
    CHECK(rel_err(base.C, sc.C) < 1e-11);
    const Blocks sd = aux_blocks(sp, gauged_M_reduced(p, lam, {al + t, be - t}, {ga + s, de + s}));
    CHECK(rel_err(base.D, sd.D) < 1e-11);
}

TEST_CASE("gauged bulk monodromy composition identity") {
    Rng rng(47);
    const ModelParams p = make_params(rng, 2);
    const SpaceDescriptor sp = dressed_space(p);
    for (int rep = 0; rep < 3; ++rep) {
        const cplx lam = rng.generic();
        const cplx al = rng.generic(2.0), be = rng.generic(2.0);
        const cplx ga = rng.generic(2.0), de = rng.generic(2.0);
        const Mat lhs = gauged_Mhat(p, lam, {al, be}, {ga, de});
        const Blocks m = aux_blocks(sp, gauged_M(p, -lam, {al - 1.0, be}, {ga - 1.0, de}));
        const double sgn = (p.N % 2 == 0) ? 1.0 : -1.0;
        const cplx pref = sgn * std::exp(-p.eta * (al - ga)) * std::sinh(p.eta * be) / std::sinh(p.eta * de);
        const Mat rhs = pref * assemble_aux(m.D, Mat(-m.B), Mat(-m.C), m.A);
        CHECK(rel_err(lhs, rhs) < 1e-11);
    }
}

TEST_CASE("boundary monodromy from gauged bulk operators with free internal gauges") {
    Rng rng(48);
    for (int rep = 0; rep < 3; ++rep) {
        const ModelParams p = make_params(rng, 2, rep == 2);
        const cplx lam = rng.generic();
        const cplx al = rng.generic(2.0), be = rng.generic(2.0);
        const cplx ga = rng.generic(2.0), de = rng.generic(2.0);
        const cplx gp = rng.generic(2.0), dp = rng.generic(2.0);
        const Mat lhs = gauged_U_minus(p, lam, {al, be});
        const Mat kg = gauged_K_minus(p, lam, {ga, de}, {gp, dp});
        const Mat rhs = gauged_Mhat(p, -lam, {ga, de}, {al, be}) *
                        embed_local(dressed_space(p), kg, 0) *
                        gauged_M(p, -lam, {gp, dp}, {al, be});
        CHECK(rel_err(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("diagonal gauge decomposition of the transfer matrix") {
    Rng rng(49);
    const ModelParams p = make_params(rng, 3);
    for (int em : {+1, -1}) {
        const GaugePair g = transfer_gauge(p, em, em);
        double worst_a = 0, worst_d = 0;
        for (int rep = 0; rep < 20; ++rep) {
            const cplx lam = rng.generic();
            worst_a = std::max(worst_a, transfer_decomposition_residual(p, g, lam, 'A', em));
            worst_d = std::max(worst_d, transfer_decomposition_residual(p, g, lam, 'D', em));
        }
        CHECK(worst_a < 1e-10);
        CHECK(worst_d < 1e-10);

        const GaugePair off{g.alpha + 0.1, g.beta};
        CHECK(transfer_decomposition_residual(p, off, rng.generic(), 'A', em) > 1e-3);

        const GaugePair both_up{g.alpha + iu * pi / p.eta, g.beta + iu * pi / p.eta};
        CHECK(transfer_decomposition_residual(p, both_up, rng.generic(), 'A', em) < 1e-10);
        const GaugePair opposed{g.alpha + iu * pi / p.eta, g.beta - iu * pi / p.eta};
        CHECK(transfer_decomposition_residual(p, opposed, rng.generic(), 'D', em) < 1e-10);
        const GaugePair alpha_only{g.alpha + iu * pi / p.eta, g.beta};
        CHECK(transfer_decomposition_residual(p, alpha_only, rng.generic(), 'A', em) > 1e-3);
    }
    CHECK_THROWS(transfer_gauge(p, +1, -1));
}
