#include "qtoeplitz/toeplitz.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qtoeplitz {

ToeplitzSpec::ToeplitzSpec(int m_in, int n_in) : m(m_in), n(n_in) {
    if (m < 1 || n < 1) {
        throw std::invalid_argument("ToeplitzSpec: m and n must be >= 1");
    }
}

namespace {

// LU with partial pivoting on the m x m matrix, determinant as the
// product of pivots with the permutation sign.
complexd lu_det(std::vector<complexd>& a, int m) {
    complexd det(1.0, 0.0);
    for (int k = 0; k < m; ++k) {
        int piv = k;
        double best = std::abs(a[static_cast<size_t>(k) * m + k]);
        for (int i = k + 1; i < m; ++i) {
            const double v = std::abs(a[static_cast<size_t>(i) * m + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) {
            return complexd(0.0, 0.0);
        }
        if (piv != k) {
            for (int j = 0; j < m; ++j) {
                std::swap(a[static_cast<size_t>(k) * m + j], a[static_cast<size_t>(piv) * m + j]);
            }
            det = -det;
        }
        const complexd pivot = a[static_cast<size_t>(k) * m + k];
        det *= pivot;
        for (int i = k + 1; i < m; ++i) {
            const complexd f = a[static_cast<size_t>(i) * m + k] / pivot;
            for (int j = k + 1; j < m; ++j) {
                a[static_cast<size_t>(i) * m + j] -= f * a[static_cast<size_t>(k) * m + j];
            }
        }
    }
    return det;
}

}  // namespace

complexd toeplitz_det(const ToeplitzSpec& spec, std::span<const complexd> coeffs) {
    const int need = spec.n + spec.m - 1;
    if (static_cast<int>(coeffs.size()) < need) {
        throw std::invalid_argument("toeplitz_det: missing coefficients");
    }
    if (std::abs(coeffs[0] - complexd(1.0, 0.0)) > 0.0) {
        throw std::invalid_argument("toeplitz_det: a_1 = 1 is required by convention");
    }
    auto a = [&](int idx) { return coeffs[static_cast<size_t>(idx) - 1]; };
    const int n = spec.n;
    switch (spec.m) {
        case 1:
            return a(n);
        case 2:
            return a(n) * a(n) - a(n + 1) * a(n + 1);
        case 3: {
            const complexd c0 = a(n), c1 = a(n + 1), c2 = a(n + 2);
            return c0 * (c0 * c0 - c1 * c1) - c1 * (c1 * c0 - c1 * c2) + c2 * (c1 * c1 - c0 * c2);
        }
        default: {
            std::vector<complexd> mat(static_cast<size_t>(spec.m) * spec.m);
            for (int i = 0; i < spec.m; ++i) {
                for (int j = 0; j < spec.m; ++j) {
                    mat[static_cast<size_t>(i) * spec.m + j] = a(n + std::abs(i - j));
                }
            }
            return lu_det(mat, spec.m);
        }
    }
}

complexd t22(complexd a2, complexd a3) { return a2 * a2 - a3 * a3; }

complexd t23(complexd a3, complexd a4) { return a3 * a3 - a4 * a4; }

complexd t31(complexd a2, complexd a3) {
    return 1.0 + 2.0 * a2 * a2 * (a3 - 1.0) - a3 * a3;
}

complexd t32(complexd a2, complexd a3, complexd a4) {
    const complexd expanded =
        a2 * a2 * a2 - 2.0 * a2 * a3 * a3 - a2 * a4 * a4 + 2.0 * a3 * a3 * a4;
    const complexd factored = (a2 - a4) * (a2 * a2 + a2 * a4 - 2.0 * a3 * a3);
    if (std::abs(expanded - factored) > 1e-12) {
        throw std::logic_error("t32: expanded and factored forms disagree");
    }
    return expanded;
}

}  // namespace qtoeplitz
