#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "qtoeplitz/caratheodory.hpp"
#include "qtoeplitz/kernels.hpp"
#include "qtoeplitz/toeplitz.hpp"

using namespace qtoeplitz;

namespace {

const TheoremId kAll[] = {TheoremId::T22, TheoremId::T23, TheoremId::T32,
                          TheoremId::T31, TheoremId::AuxA, TheoremId::AuxB};

// Independent reference: straight std::complex arithmetic.
double reference_value(TheoremId id, const BracketSet& br, complexd p1, complexd x,
                       complexd z) {
    const complexd p1sq = p1 * p1;
    const complexd paux = 4.0 - p1sq;
    const complexd p2 = 0.5 * (p1sq + x * paux);
    const complexd p3 = 0.25 * (p1sq * p1 + 2.0 * paux * p1 * x - p1 * paux * x * x +
                                2.0 * paux * (1.0 - std::norm(x)) * z);
    const complexd a2 = p1 * br.inv_b2;
    const complexd a3 = p2 * br.inv_b3;
    const complexd a4 = p3 * br.inv_b4;
    switch (id) {
        case TheoremId::T22: return std::abs(t22(a2, a3));
        case TheoremId::T23: return std::abs(t23(a3, a4));
        case TheoremId::T32: return std::abs(t32(a2, a3, a4));
        case TheoremId::T31: return std::abs(t31(a2, a3));
        case TheoremId::AuxA: return std::abs(a2 - a4);
        case TheoremId::AuxB: return std::abs(a2 * a2 - 2.0 * a3 * a3 + a2 * a4);
    }
    return 0.0;
}

PointBatch random_batch(std::mt19937_64& rng, size_t n, bool real_p) {
    std::uniform_real_distribution<double> pd(0.0, 2.0);
    std::uniform_real_distribution<double> rd(0.0, 1.0);
    std::uniform_real_distribution<double> ad(0.0, 6.283185307179586);
    PointBatch b;
    b.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        const complexd p1 = real_p ? complexd(pd(rng), 0.0) : std::polar(pd(rng), ad(rng));
        const complexd x = std::polar(rd(rng), ad(rng));
        const complexd z = std::polar(rd(rng), ad(rng));
        b.push(p1.real(), p1.imag(), x.real(), x.imag(), z.real(), z.imag());
    }
    return b;
}

}  // namespace

TEST_CASE("PointBatch bookkeeping") {
    PointBatch b;
    CHECK(b.size() == 0);
    b.push(1, 0, 0.5, 0.5, 0, 0);
    b.push(2, 0, 0, 0, 1, 0);
    CHECK(b.size() == 2);
    CHECK(b.pr[1] == 2.0);
    CHECK(b.xi[0] == 0.5);
    b.clear();
    CHECK(b.size() == 0);
}

TEST_CASE("scalar kernel matches the complex-arithmetic reference") {
    std::mt19937_64 rng(8086);
    const BracketSet br(QParam(0.5));
    for (bool real_p : {true, false}) {
        const PointBatch batch = random_batch(rng, 257, real_p);
        std::vector<double> out(batch.size());
        for (TheoremId id : kAll) {
            eval_points_scalar(id, br, batch, 0, batch.size(), out.data());
            for (size_t i = 0; i < batch.size(); ++i) {
                const complexd p1(batch.pr[i], batch.pi[i]);
                const complexd x(batch.xr[i], batch.xi[i]);
                const complexd z(batch.zr[i], batch.zi[i]);
                CHECK(out[i] == doctest::Approx(reference_value(id, br, p1, x, z))
                                    .epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("scalar kernel at pinned points") {
    const QParam qp(0.5);
    const BracketSet br(qp);
    PointBatch b;
    // Koebe-kernel point: a = (4/3, 8/7, 16/15).
    b.push(2, 0, 0, 0, 0, 0);
    // p = 0, x = 1: a = (0, 8/7, 0).
    b.push(0, 0, 1, 0, 0, 0);
    std::vector<double> out(b.size());

    eval_points_scalar(TheoremId::T22, br, b, 0, b.size(), out.data());
    CHECK(out[0] == doctest::Approx(std::abs(16.0 / 9.0 - 64.0 / 49.0)).epsilon(1e-13));
    CHECK(out[1] == doctest::Approx(64.0 / 49.0).epsilon(1e-13));

    eval_points_scalar(TheoremId::T31, br, b, 0, b.size(), out.data());
    CHECK(out[1] == doctest::Approx(std::abs(1.0 - 64.0 / 49.0)).epsilon(1e-13));

    eval_points_scalar(TheoremId::AuxA, br, b, 0, b.size(), out.data());
    CHECK(out[0] == doctest::Approx(std::abs(4.0 / 3.0 - 16.0 / 15.0)).epsilon(1e-13));

    eval_points_scalar(TheoremId::AuxB, br, b, 0, b.size(), out.data());
    CHECK(out[1] == doctest::Approx(2.0 * 64.0 / 49.0).epsilon(1e-13));
}

TEST_CASE("sub-range evaluation only touches [lo, hi)") {
    std::mt19937_64 rng(99);
    const BracketSet br(QParam(0.7));
    const PointBatch batch = random_batch(rng, 64, true);
    std::vector<double> full(batch.size());
    eval_points_scalar(TheoremId::T32, br, batch, 0, batch.size(), full.data());
    std::vector<double> part(batch.size(), -1.0);
    eval_points_scalar(TheoremId::T32, br, batch, 10, 20, part.data());
    for (size_t i = 0; i < batch.size(); ++i) {
        if (i >= 10 && i < 20) {
            CHECK(part[i] == full[i]);
        } else {
            CHECK(part[i] == -1.0);
        }
    }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("AVX2 kernel is bitwise-close to scalar on random batches") {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) {
        MESSAGE("AVX2/FMA not available; skipping");
        return;
    }
    std::mt19937_64 rng(20220101);
    for (double q : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        const BracketSet br((QParam(q)));
        for (size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 63u, 64u, 1000u}) {
            for (bool real_p : {true, false}) {
                const PointBatch batch = random_batch(rng, n, real_p);
                std::vector<double> scalar_out(n), simd_out(n);
                for (TheoremId id : kAll) {
                    eval_points_scalar(id, br, batch, 0, n, scalar_out.data());
                    eval_points_avx2(id, br, batch, 0, n, simd_out.data());
                    for (size_t i = 0; i < n; ++i) {
                        // FMA contraction reorders roundoff; values stay within
                        // a few ulps of the scalar reference.
                        CHECK(simd_out[i] ==
                              doctest::Approx(scalar_out[i]).epsilon(1e-13));
                    }
                }
            }
        }
    }
}

TEST_CASE("AVX2 kernel honors unaligned sub-ranges") {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) {
        MESSAGE("AVX2/FMA not available; skipping");
        return;
    }
    std::mt19937_64 rng(5);
    const BracketSet br((QParam(0.5)));
    const PointBatch batch = random_batch(rng, 41, true);
    std::vector<double> scalar_out(41), simd_out(41, -1.0);
    eval_points_scalar(TheoremId::T23, br, batch, 0, 41, scalar_out.data());
    eval_points_avx2(TheoremId::T23, br, batch, 3, 38, simd_out.data());
    for (size_t i = 3; i < 38; ++i) {
        CHECK(simd_out[i] == doctest::Approx(scalar_out[i]).epsilon(1e-13));
    }
    CHECK(simd_out[0] == -1.0);
    CHECK(simd_out[40] == -1.0);
}
#endif

TEST_CASE("kernel dispatch") {
    const KernelFn fn = select_kernel();
    REQUIRE(fn != nullptr);
    const std::string name = active_kernel_name();
    CHECK((name == "scalar" || name == "avx2"));

    std::mt19937_64 rng(12);
    const BracketSet br((QParam(0.5)));
    const PointBatch batch = random_batch(rng, 100, true);
    std::vector<double> got(100), want(100);
    for (TheoremId id : kAll) {
        fn(id, br, batch, 0, 100, got.data());
        eval_points_scalar(id, br, batch, 0, 100, want.data());
        for (size_t i = 0; i < 100; ++i) {
            CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-13));
        }
    }
}
