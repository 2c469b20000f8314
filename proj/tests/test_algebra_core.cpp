#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "openxxz/algebra_core.hpp"

using namespace openxxz;

namespace {

Mat random_mat(Rng& rng, int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.box(-1, 1, -1, 1);
    return m;
}

Vec random_vec(Rng& rng, int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.box(-1, 1, -1, 1);
    return v;
}

}  // namespace

TEST_CASE("space descriptor slot layout") {
    SpaceDescriptor chain{4, false};
    CHECK(chain.slots() == 4);
    CHECK(chain.dim() == 16);
    CHECK(chain.site_slot(1) == 0);
    CHECK(chain.site_slot(4) == 3);

    SpaceDescriptor dressed{4, true};
    CHECK(dressed.slots() == 5);
    CHECK(dressed.dim() == 32);
    CHECK(dressed.site_slot(1) == 1);
    CHECK(dressed.site_slot(4) == 4);
}

TEST_CASE("embed_local matches explicit kron chains") {
    Rng rng(11);
    const Mat a = random_mat(rng, 2);
    const Mat i2 = Mat::Identity(2, 2);

    SpaceDescriptor sp{3, false};
    CHECK(rel_err(embed_local(sp, a, 0), kron(a, kron(i2, i2))) < 1e-15);
    CHECK(rel_err(embed_local(sp, a, 1), kron(i2, kron(a, i2))) < 1e-15);
    CHECK(rel_err(embed_local(sp, a, 2), kron(i2, kron(i2, a))) < 1e-15);
}

TEST_CASE("embed_slots places factors by significance") {
    Rng rng(12);
    const Mat a = random_mat(rng, 2);
    const Mat b = random_mat(rng, 2);
    const Mat i2 = Mat::Identity(2, 2);

    CHECK(rel_err(embed_slots(kron(a, b), {0, 2}, 3), kron(a, kron(i2, b))) < 1e-14);
    CHECK(rel_err(embed_slots(kron(a, b), {2, 0}, 3), kron(b, kron(i2, a))) < 1e-14);
    CHECK(rel_err(embed_slots(kron(a, b), {1, 2}, 3), kron(i2, kron(a, b))) < 1e-14);
}

TEST_CASE("apply_two_slot equals dense embedding on random vectors") {
    Rng rng(13);
    for (int n = 2; n <= 10; n += 2) {
        const int dim = 1 << n;
        const Mat op4 = random_mat(rng, 4);
        for (int rep = 0; rep < 4; ++rep) {
            int sa = int(rng.uniform(0, n - 1e-9));
            int sb = int(rng.uniform(0, n - 1e-9));
            if (sa == sb) sb = (sa + 1) % n;
            const Vec x = random_vec(rng, dim);
            const Vec fast = apply_two_slot(op4, sa, sb, n, x);
            const Vec slow = embed_slots(op4, {sa, sb}, n) * x;
            CHECK(rel_err(fast, slow) < 1e-13);
        }
    }
}

TEST_CASE("apply_two_slot_mat reproduces embedding on identity") {
    Rng rng(14);
    const Mat op4 = random_mat(rng, 4);
    const int n = 5;
    const Mat dense = embed_slots(op4, {3, 1}, n);
    const Mat fast = apply_two_slot_mat(op4, 3, 1, n, Mat::Identity(1 << n, 1 << n));
    CHECK(rel_err(fast, dense) < 1e-13);
}

TEST_CASE("partial_trace_aux contracts the auxiliary slot") {
    Rng rng(15);
    SpaceDescriptor sp{3, true};
    const Mat w = random_mat(rng, 2);
    const Mat b = random_mat(rng, 8);
    const Mat big = kron(w, b);
    CHECK(rel_err(partial_trace_aux(sp, big), cplx(w.trace()) * b) < 1e-14);

    const Mat any = random_mat(rng, 16);
    CHECK(std::abs(partial_trace_aux(sp, any).trace() - any.trace()) < 1e-13);
}

TEST_CASE("pauli algebra and unit matrices") {
    CHECK(rel_err(pauli_x() * pauli_y() - pauli_y() * pauli_x(), 2.0 * iu * pauli_z()) < 1e-15);
    CHECK(rel_err(unit22(1, 2) * unit22(2, 1), unit22(1, 1)) < 1e-15);
    Mat sum = unit22(1, 1) + unit22(2, 2);
    CHECK(rel_err(sum, id2()) < 1e-15);
}
