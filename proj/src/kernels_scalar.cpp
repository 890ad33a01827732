#include <cmath>

#include "qtoeplitz/kernels.hpp"

namespace qtoeplitz {

void PointBatch::clear() {
    pr.clear(); pi.clear();
    xr.clear(); xi.clear();
    zr.clear(); zi.clear();
}

void PointBatch::reserve(size_t n) {
    pr.reserve(n); pi.reserve(n);
    xr.reserve(n); xi.reserve(n);
    zr.reserve(n); zi.reserve(n);
}

void PointBatch::push(double pre, double pim, double xre, double xim, double zre,
                      double zim) {
    pr.push_back(pre); pi.push_back(pim);
    xr.push_back(xre); xi.push_back(xim);
    zr.push_back(zre); zi.push_back(zim);
}

namespace {

struct C {
    double re, im;
};

inline C cmul(C a, C b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline C cadd(C a, C b) { return {a.re + b.re, a.im + b.im}; }
inline C csub(C a, C b) { return {a.re - b.re, a.im - b.im}; }
inline C cscale(double s, C a) { return {s * a.re, s * a.im}; }
inline double cabs(C a) { return std::sqrt(a.re * a.re + a.im * a.im); }

template <TheoremId ID>
void loop(const BracketSet& br, const PointBatch& b, size_t lo, size_t hi, double* out) {
    for (size_t i = lo; i < hi; ++i) {
        const C p1{b.pr[i], b.pi[i]};
        const C x{b.xr[i], b.xi[i]};
        const C z{b.zr[i], b.zi[i]};

        const C p1sq = cmul(p1, p1);
        const C paux = csub(C{4.0, 0.0}, p1sq);
        const C p2 = cscale(0.5, cadd(p1sq, cmul(x, paux)));
        const C xx = cmul(x, x);
        const double xnorm = x.re * x.re + x.im * x.im;
        const C p1cu = cmul(p1sq, p1);
        const C pp = cmul(paux, p1);
        const C p3 = cscale(0.25, cadd(csub(cadd(p1cu, cscale(2.0, cmul(pp, x))),
                                            cmul(pp, xx)),
                                       cscale(2.0 * (1.0 - xnorm), cmul(paux, z))));

        const C a2 = cscale(br.inv_b2, p1);
        const C a3 = cscale(br.inv_b3, p2);
        const C a4 = cscale(br.inv_b4, p3);

        double v = 0.0;
        if constexpr (ID == TheoremId::T22) {
            v = cabs(csub(cmul(a2, a2), cmul(a3, a3)));
        } else if constexpr (ID == TheoremId::T23) {
            v = cabs(csub(cmul(a3, a3), cmul(a4, a4)));
        } else if constexpr (ID == TheoremId::T32) {
            const C f1 = csub(a2, a4);
            const C f2 = csub(cadd(cmul(a2, a2), cmul(a2, a4)), cscale(2.0, cmul(a3, a3)));
            v = cabs(cmul(f1, f2));
        } else if constexpr (ID == TheoremId::T31) {
            const C a2sq = cmul(a2, a2);
            const C t = cadd(C{1.0, 0.0},
                             csub(cscale(2.0, cmul(a2sq, csub(a3, C{1.0, 0.0}))),
                                  cmul(a3, a3)));
            v = cabs(t);
        } else if constexpr (ID == TheoremId::AuxA) {
            v = cabs(csub(a2, a4));
        } else {  // AuxB
            v = cabs(csub(cadd(cmul(a2, a2), cmul(a2, a4)), cscale(2.0, cmul(a3, a3))));
        }
        out[i] = v;
    }
}

}  // namespace

void eval_points_scalar(TheoremId id, const BracketSet& br, const PointBatch& batch,
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
