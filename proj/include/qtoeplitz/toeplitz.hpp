#ifndef QTOEPLITZ_TOEPLITZ_HPP
#define QTOEPLITZ_TOEPLITZ_HPP

#include <span>

#include "qtoeplitz/qcore.hpp"

namespace qtoeplitz {

/// Symmetric Toeplitz determinant of size m starting at coefficient a_n:
/// entry (i,j) is a_{n+|i-j|}. The size index is called m here; the
/// deformation parameter keeps the name q.
struct ToeplitzSpec {
    ToeplitzSpec(int m_in, int n_in);
    int m;
    int n;
};

/// coeffs[k] = a_{k+1}, so coeffs[0] = a_1 = 1 (checked when used).
/// Closed forms for m <= 3, LU with partial pivoting above.
complexd toeplitz_det(const ToeplitzSpec& spec, std::span<const complexd> coeffs);

/// Specialized forms used by the bound proofs; signed determinants,
/// absolute values are taken downstream.
complexd t22(complexd a2, complexd a3);                // a_2^2 - a_3^2
complexd t23(complexd a3, complexd a4);                // a_3^2 - a_4^2
complexd t31(complexd a2, complexd a3);                // 1 + 2 a_2^2 (a_3 - 1) - a_3^2
complexd t32(complexd a2, complexd a3, complexd a4);   // (a_2 - a_4)(a_2^2 + a_2 a_4 - 2 a_3^2)

}  // namespace qtoeplitz

#endif
