#ifndef QTOEPLITZ_RQCLASS_HPP
#define QTOEPLITZ_RQCLASS_HPP

#include <span>
#include <vector>

#include "json.hpp"
#include "qtoeplitz/qcore.hpp"

namespace qtoeplitz {

/// Member of the class of functions whose Jackson derivative has positive
/// real part: a_n = p_{n-1} / [n]_q for a Caratheodory coefficient
/// sequence p_1, p_2, ...
class RqFunction {
  public:
    /// order >= 4; p_coeffs must supply at least order-1 values.
    static RqFunction from_p_coefficients(std::span<const complexd> p_coeffs,
                                          const QParam& qp, int order = 8);

    const PowerSeries& series() const { return series_; }
    const QParam& qparam() const { return qp_; }
    const std::vector<complexd>& source_p() const { return source_p_; }

    nlohmann::json to_json() const;

  private:
    RqFunction(PowerSeries series, QParam qp, std::vector<complexd> source);

    PowerSeries series_;
    QParam qp_;
    std::vector<complexd> source_p_;
};

struct MembershipReport {
    bool member = false;
    double min_re = 0.0;
    complexd worst_point;
};

/// Samples Re(D_q f) on a polar grid with radii up to max_radius.
/// Necessary-condition check for a truncated series, not a proof.
/// Accepts when every sample exceeds -1e-9.
MembershipReport membership_check(const RqFunction& f, int grid_radii, int grid_angles,
                                  double max_radius = 0.999);

struct QLimitRow {
    double q = 0.0;
    std::vector<complexd> a;  // a_2, a_3, ...
};

struct QLimitReport {
    std::vector<QLimitRow> rows;
    /// |a_n(q_last) - p_{n-1}/n| per coefficient: deviation from the
    /// classical-limit relation [n]_q -> n.
    std::vector<double> limit_deviation;
};

/// q_sequence must be strictly increasing toward 1 (all inside (0,1)).
QLimitReport q_limit_coefficients(std::span<const complexd> p_coeffs,
                                  std::span<const double> q_sequence, int order = 8);

}  // namespace qtoeplitz

#endif
