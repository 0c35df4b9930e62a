/* test_kernels.cpp
 *
 * Checks the SIMD kernel layer: hand-computed oracles for every entry
 * point, agreement between the scalar lane and any vector lane that is
 * available on this machine (including remainder tails of every length),
 * and the dispatch controls (force_lane, lane_table, lane_name).
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mimogames/kernels.hpp"
#include "mimogames/rng.hpp"

using mimogames::Rng;
namespace kernels = mimogames::kernels;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    return v;
}

// Mixed absolute/relative closeness; vector lanes reassociate sums, so
// exact bit equality with the scalar lane is not required.
bool close(double a, double b, double scale) {
    return std::fabs(a - b) <= 1e-12 * (1.0 + std::fabs(scale));
}

}  // namespace

TEST_CASE("dot, axpy, scal match hand-computed values") {
    const double x[] = {1.0, 2.0, 3.0};
    const double y[] = {4.0, 5.0, 6.0};
    CHECK(kernels::dot(x, y, 3) == doctest::Approx(32.0).epsilon(1e-15));
    CHECK(kernels::dot(x, y, 0) == 0.0);

    double acc[] = {10.0, 20.0, 30.0};
    kernels::axpy(2.0, x, acc, 3);
    CHECK(acc[0] == doctest::Approx(12.0));
    CHECK(acc[1] == doctest::Approx(24.0));
    CHECK(acc[2] == doctest::Approx(36.0));

    double s[] = {2.0, 4.0, 8.0};
    kernels::scal(0.5, s, 3);
    CHECK(s[0] == doctest::Approx(1.0));
    CHECK(s[1] == doctest::Approx(2.0));
    CHECK(s[2] == doctest::Approx(4.0));
}

TEST_CASE("matvec matches a hand-computed product") {
    // A is 3x2 row-major, x = (1, 1): y_i is the row sum.
    const double a[] = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
    const double x[] = {1.0, 1.0};
    double y[3] = {0.0, 0.0, 0.0};
    kernels::matvec(a, 3, 2, x, y);
    CHECK(y[0] == doctest::Approx(3.0));
    CHECK(y[1] == doctest::Approx(7.0));
    CHECK(y[2] == doctest::Approx(11.0));
}

TEST_CASE("syr adds alpha x x^T to the full matrix") {
    double a[] = {1.0, 0.0, 0.0, 1.0};  // I2
    const double x[] = {1.0, 2.0};
    kernels::syr(2.0, x, 2, a);
    CHECK(a[0] == doctest::Approx(3.0));
    CHECK(a[1] == doctest::Approx(4.0));
    CHECK(a[2] == doctest::Approx(4.0));
    CHECK(a[3] == doctest::Approx(9.0));
}

TEST_CASE("matmul matches a hand-computed product") {
    const double a[] = {1.0, 2.0, 3.0, 4.0};
    const double b[] = {5.0, 6.0, 7.0, 8.0};
    double c[4] = {0.0, 0.0, 0.0, 0.0};
    kernels::matmul(a, b, c, 2, 2, 2);
    CHECK(c[0] == doctest::Approx(19.0));
    CHECK(c[1] == doctest::Approx(22.0));
    CHECK(c[2] == doctest::Approx(43.0));
    CHECK(c[3] == doctest::Approx(50.0));
}

TEST_CASE("scalar lane is always present and dispatch controls work") {
    REQUIRE(kernels::lane_available(kernels::Lane::scalar));
    REQUIRE(kernels::lane_table(kernels::Lane::scalar) != nullptr);
    CHECK(std::string(kernels::lane_name(kernels::Lane::scalar)) == "scalar");
    CHECK(std::string(kernels::lane_name(kernels::Lane::avx2)) == "avx2");

    const kernels::Lane before = kernels::active_lane();
    kernels::force_lane(kernels::Lane::scalar);
    CHECK(kernels::active_lane() == kernels::Lane::scalar);

    if (kernels::lane_available(kernels::Lane::avx2)) {
        CHECK(kernels::lane_table(kernels::Lane::avx2) != nullptr);
        kernels::force_lane(kernels::Lane::avx2);
        CHECK(kernels::active_lane() == kernels::Lane::avx2);
    } else {
        CHECK(kernels::lane_table(kernels::Lane::avx2) == nullptr);
        CHECK_THROWS_AS(kernels::force_lane(kernels::Lane::avx2), std::runtime_error);
    }
    kernels::force_lane(before);
    CHECK(kernels::active_lane() == before);
}

TEST_CASE("free functions route through the forced lane") {
    const kernels::Lane before = kernels::active_lane();
    const kernels::KernelTable* scalar = kernels::lane_table(kernels::Lane::scalar);
    REQUIRE(scalar != nullptr);

    Rng rng(99, 0);
    const auto x = random_vec(rng, 37);
    const auto y = random_vec(rng, 37);

    kernels::force_lane(kernels::Lane::scalar);
    const double via_free = kernels::dot(x.data(), y.data(), x.size());
    const double via_table = scalar->dot(x.data(), y.data(), x.size());
    CHECK(via_free == via_table);  // same code path, so bitwise equal

    kernels::force_lane(before);
}

TEST_CASE("vector lane agrees with the scalar lane on every tail length") {
    if (!kernels::lane_available(kernels::Lane::avx2)) {
        MESSAGE("avx2 lane unavailable on this CPU; equivalence skipped");
        return;
    }
    const kernels::KernelTable* s = kernels::lane_table(kernels::Lane::scalar);
    const kernels::KernelTable* v = kernels::lane_table(kernels::Lane::avx2);
    REQUIRE(s != nullptr);
    REQUIRE(v != nullptr);

    Rng rng(7, 1);
    // Lengths straddle the vector width so every remainder path runs.
    const std::size_t sizes[] = {1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 100};

    for (std::size_t n : sizes) {
        CAPTURE(n);
        const auto x = random_vec(rng, n);
        const auto y = random_vec(rng, n);
        const double alpha = rng.uniform(-2.0, 2.0);

        const double ds = s->dot(x.data(), y.data(), n);
        const double dv = v->dot(x.data(), y.data(), n);
        CHECK(close(ds, dv, static_cast<double>(n)));

        auto ys = y;
        auto yv = y;
        s->axpy(alpha, x.data(), ys.data(), n);
        v->axpy(alpha, x.data(), yv.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(ys[i], yv[i], 4.0));

        auto xs = x;
        auto xv = x;
        s->scal(alpha, xs.data(), n);
        v->scal(alpha, xv.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(xs[i], xv[i], 4.0));
    }
}

TEST_CASE("vector matvec, syr, matmul agree with scalar versions") {
    if (!kernels::lane_available(kernels::Lane::avx2)) {
        MESSAGE("avx2 lane unavailable on this CPU; equivalence skipped");
        return;
    }
    const kernels::KernelTable* s = kernels::lane_table(kernels::Lane::scalar);
    const kernels::KernelTable* v = kernels::lane_table(kernels::Lane::avx2);

    Rng rng(7, 2);
    const std::size_t dims[][3] = {
        {1, 1, 1}, {2, 3, 4}, {3, 2, 5}, {4, 4, 4},
        {5, 7, 3}, {8, 8, 8}, {3, 17, 2}, {9, 5, 9},
    };
    for (const auto& d : dims) {
        const std::size_t m = d[0], k = d[1], n = d[2];
        CAPTURE(m);
        CAPTURE(k);
        CAPTURE(n);

        const auto a = random_vec(rng, m * k);
        const auto b = random_vec(rng, k * n);
        const auto x = random_vec(rng, k);

        std::vector<double> ys(m), yv(m);
        s->matvec(a.data(), m, k, x.data(), ys.data());
        v->matvec(a.data(), m, k, x.data(), yv.data());
        for (std::size_t i = 0; i < m; ++i)
            CHECK(close(ys[i], yv[i], static_cast<double>(k)));

        std::vector<double> cs(m * n), cv(m * n);
        s->matmul(a.data(), b.data(), cs.data(), m, k, n);
        v->matmul(a.data(), b.data(), cv.data(), m, k, n);
        for (std::size_t i = 0; i < m * n; ++i)
            CHECK(close(cs[i], cv[i], static_cast<double>(k)));

        const double alpha = rng.uniform(-2.0, 2.0);
        const auto z = random_vec(rng, m);
        auto as = random_vec(rng, m * m);
        auto av = as;
        s->syr(alpha, z.data(), m, as.data());
        v->syr(alpha, z.data(), m, av.data());
        for (std::size_t i = 0; i < m * m; ++i) CHECK(close(as[i], av[i], 4.0));
    }
}
