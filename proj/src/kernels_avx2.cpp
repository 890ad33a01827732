#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "qtoeplitz/kernels.hpp"

namespace qtoeplitz {

namespace {

struct V {
    __m256d re, im;
};

inline V vmul(V a, V b) {
    return {_mm256_fmsub_pd(a.re, b.re, _mm256_mul_pd(a.im, b.im)),
            _mm256_fmadd_pd(a.re, b.im, _mm256_mul_pd(a.im, b.re))};
}
inline V vadd(V a, V b) { return {_mm256_add_pd(a.re, b.re), _mm256_add_pd(a.im, b.im)}; }
inline V vsub(V a, V b) { return {_mm256_sub_pd(a.re, b.re), _mm256_sub_pd(a.im, b.im)}; }
inline V vscale(__m256d s, V a) { return {_mm256_mul_pd(s, a.re), _mm256_mul_pd(s, a.im)}; }
inline __m256d vabs(V a) {
    return _mm256_sqrt_pd(_mm256_fmadd_pd(a.re, a.re, _mm256_mul_pd(a.im, a.im)));
}

template <TheoremId ID>
void loop(const BracketSet& br, const PointBatch& b, size_t lo, size_t hi, double* out) {
    const __m256d four = _mm256_set1_pd(4.0);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d quarter = _mm256_set1_pd(0.25);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d ib2 = _mm256_set1_pd(br.inv_b2);
    const __m256d ib3 = _mm256_set1_pd(br.inv_b3);
    const __m256d ib4 = _mm256_set1_pd(br.inv_b4);
    const V vone{one, _mm256_setzero_pd()};

    size_t i = lo;
    for (; i + 4 <= hi; i += 4) {
        const V p1{_mm256_loadu_pd(&b.pr[i]), _mm256_loadu_pd(&b.pi[i])};
        const V x{_mm256_loadu_pd(&b.xr[i]), _mm256_loadu_pd(&b.xi[i])};
        const V z{_mm256_loadu_pd(&b.zr[i]), _mm256_loadu_pd(&b.zi[i])};

        const V p1sq = vmul(p1, p1);
        const V paux = vsub(V{four, _mm256_setzero_pd()}, p1sq);
        const V p2 = vscale(half, vadd(p1sq, vmul(x, paux)));
        const V xx = vmul(x, x);
        const __m256d xnorm =
            _mm256_fmadd_pd(x.re, x.re, _mm256_mul_pd(x.im, x.im));
        const V p1cu = vmul(p1sq, p1);
        const V pp = vmul(paux, p1);
        const __m256d res = _mm256_mul_pd(two, _mm256_sub_pd(one, xnorm));
        const V p3 = vscale(quarter, vadd(vsub(vadd(p1cu, vscale(two, vmul(pp, x))),
                                               vmul(pp, xx)),
                                          vscale(res, vmul(paux, z))));

        const V a2 = vscale(ib2, p1);
        const V a3 = vscale(ib3, p2);
        const V a4 = vscale(ib4, p3);

        __m256d v;
        if constexpr (ID == TheoremId::T22) {
            v = vabs(vsub(vmul(a2, a2), vmul(a3, a3)));
        } else if constexpr (ID == TheoremId::T23) {
            v = vabs(vsub(vmul(a3, a3), vmul(a4, a4)));
        } else if constexpr (ID == TheoremId::T32) {
            const V f1 = vsub(a2, a4);
            const V f2 = vsub(vadd(vmul(a2, a2), vmul(a2, a4)), vscale(two, vmul(a3, a3)));
            v = vabs(vmul(f1, f2));
        } else if constexpr (ID == TheoremId::T31) {
            const V a2sq = vmul(a2, a2);
            const V t = vadd(vone, vsub(vscale(two, vmul(a2sq, vsub(a3, vone))),
                                        vmul(a3, a3)));
            v = vabs(t);
        } else if constexpr (ID == TheoremId::AuxA) {
            v = vabs(vsub(a2, a4));
        } else {  // AuxB
            v = vabs(vsub(vadd(vmul(a2, a2), vmul(a2, a4)), vscale(two, vmul(a3, a3))));
        }
        _mm256_storeu_pd(&out[i], v);
    }
    if (i < hi) {
        eval_points_scalar(ID, br, b, i, hi, out);
    }
}

}  // namespace

void eval_points_avx2(TheoremId id, const BracketSet& br, const PointBatch& batch,
                      size_t lo, size_t hi, double* out) {
    switch (id) {
        case TheoremId::T22: loop<TheoremId::T22>(br, batch, lo, hi, out); break;
        case TheoremId::T23: loop<TheoremId::T23>(br, batch, lo, hi, out); break;
        case TheoremId::T32: loop<TheoremId::T32>(br, batch, lo, hi, out); break;
        case TheoremId::T31: loop<TheoremId::T31>(br, batch, lo, hi, out); break;
        case TheoremId::AuxA: loop<TheoremId::AuxA>(br, batch, lo, hi, out); break;
        case TheoremId::AuxB: loop<TheoremId::AuxB>(br, batch, lo, hi, out); break;
    }
}

}  // namespace qtoeplitz

#endif
