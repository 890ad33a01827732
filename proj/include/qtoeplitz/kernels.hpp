#ifndef QTOEPLITZ_KERNELS_HPP
#define QTOEPLITZ_KERNELS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "qtoeplitz/bounds.hpp"
#include "qtoeplitz/qcore.hpp"

namespace qtoeplitz {

struct BracketSet {
    explicit BracketSet(const QParam& qp)
        : inv_b2(1.0 / qp.bracket(2)), inv_b3(1.0 / qp.bracket(3)),
          inv_b4(1.0 / qp.bracket(4)) {}
    double inv_b2;
    double inv_b3;
    double inv_b4;
};

/// Batch of Lemma-2 parameter points, structure-of-arrays.
/// p1 is complex so the unrestricted (rotated) search reuses the same path;
/// the restricted search sets pi = 0.
struct PointBatch {
    std::vector<double> pr, pi, xr, xi, zr, zi;

    size_t size() const { return pr.size(); }
    void clear();
    void reserve(size_t n);
    void push(double pre, double pim, double xre, double xim, double zre, double zim);
};

/// Evaluate the theorem functional |T| at points [lo, hi) of the batch:
/// Lemma-2 coefficients -> a_2..a_4 -> |t22| / |t23| / |t32| / |t31| /
/// |a_2 - a_4| / |a_2^2 - 2 a_3^2 + a_2 a_4|.
using KernelFn = void (*)(TheoremId id, const BracketSet& br, const PointBatch& batch,
                          size_t lo, size_t hi, double* out);

/// Reference implementation, plain scalar loops.
void eval_points_scalar(TheoremId id, const BracketSet& br, const PointBatch& batch,
                        size_t lo, size_t hi, double* out);

#if defined(__x86_64__) || defined(_M_X64)
/// AVX2+FMA variant, 4 points per iteration.
void eval_points_avx2(TheoremId id, const BracketSet& br, const PointBatch& batch,
                      size_t lo, size_t hi, double* out);
#endif

/// Best kernel the running CPU supports.
KernelFn select_kernel();
std::string active_kernel_name();

}  // namespace qtoeplitz

#endif
