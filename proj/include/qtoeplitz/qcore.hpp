#ifndef QTOEPLITZ_QCORE_HPP
#define QTOEPLITZ_QCORE_HPP

#include <complex>
#include <vector>

#include "json.hpp"

namespace qtoeplitz {

using complexd = std::complex<double>;

/// Deformation parameter q, valid strictly inside (0,1).
class QParam {
  public:
    explicit QParam(double q);

    double value() const { return q_; }

    /// q-bracket [n]_q = 1 + q + ... + q^(n-1).
    /// Computed by summation of powers; the quotient (1-q^n)/(1-q)
    /// cancels catastrophically as q -> 1.
    double bracket(int n) const;

  private:
    double q_;
};

/// Truncated Taylor series a_0 + a_1 z + ... + a_N z^N.
class PowerSeries {
  public:
    /// coeffs[k] is the coefficient of z^k; requires at least two entries.
    explicit PowerSeries(std::vector<complexd> coeffs);

    /// Normalized series z + a_2 z^2 + ... + a_order z^order.
    /// tail holds a_2.. and may be shorter than order-1 (zero padded).
    static PowerSeries normalized(const std::vector<complexd>& tail, int order = 8);

    int truncation_order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<complexd>& coeffs() const { return coeffs_; }

    /// a_0 = 0 and a_1 = 1.
    bool is_normalized(double tol = 0.0) const;

    /// Horner evaluation; requires |z| <= 1 - margin.
    complexd evaluate(complexd z, double margin = 1e-3) const;

    nlohmann::json to_json() const;
    static PowerSeries from_json(const nlohmann::json& j);

  private:
    std::vector<complexd> coeffs_;
};

/// Series form of the Jackson derivative of a normalized f:
/// 1 + sum_{n>=2} [n]_q a_n z^(n-1), truncated at order N-1.
PowerSeries q_derivative_series(const PowerSeries& f, const QParam& qp);

/// Difference-quotient form (f(z) - f(qz)) / ((1-q) z); a_1 at z = 0.
/// Requires |z| < 1.
complexd q_derivative_pointwise(const PowerSeries& f, const QParam& qp, complexd z);

}  // namespace qtoeplitz

#endif
