#include "qtoeplitz/rqclass.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qtoeplitz {

RqFunction::RqFunction(PowerSeries series, QParam qp, std::vector<complexd> source)
    : series_(std::move(series)), qp_(qp), source_p_(std::move(source)) {}

RqFunction RqFunction::from_p_coefficients(std::span<const complexd> p_coeffs,
                                           const QParam& qp, int order) {
    if (order < 4) {
        throw std::invalid_argument("RqFunction: order must be >= 4");
    }
    if (static_cast<int>(p_coeffs.size()) < order - 1) {
        throw std::invalid_argument("RqFunction: insufficient p coefficients for order");
    }
    std::vector<complexd> tail(static_cast<size_t>(order) - 1);
    for (int n = 2; n <= order; ++n) {
        tail[static_cast<size_t>(n) - 2] = p_coeffs[static_cast<size_t>(n) - 2] / qp.bracket(n);
    }
    std::vector<complexd> src(p_coeffs.begin(), p_coeffs.begin() + (order - 1));
    return RqFunction(PowerSeries::normalized(tail, order), qp, std::move(src));
}

nlohmann::json RqFunction::to_json() const {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : series_.coeffs()) {
        coeffs.push_back({c.real(), c.imag()});
    }
    nlohmann::json src = nlohmann::json::array();
    for (const auto& c : source_p_) {
        src.push_back({c.real(), c.imag()});
    }
    return nlohmann::json{{"q", qp_.value()}, {"coeffs", coeffs}, {"source_p", src}};
}

MembershipReport membership_check(const RqFunction& f, int grid_radii, int grid_angles,
                                  double max_radius) {
    if (grid_radii < 8 || grid_angles < 8) {
        throw std::invalid_argument("membership_check: grid sizes must be >= 8");
    }
    const PowerSeries dq = q_derivative_series(f.series(), f.qparam());
    MembershipReport rep;
    rep.min_re = std::numeric_limits<double>::infinity();
    for (int ir = 1; ir <= grid_radii; ++ir) {
        const double r = max_radius * static_cast<double>(ir) / grid_radii;
        for (int ia = 0; ia < grid_angles; ++ia) {
            const double t = 2.0 * std::numbers::pi * ia / grid_angles;
            const complexd z = std::polar(r, t);
            const double re = dq.evaluate(z, 0.0).real();
            if (re < rep.min_re) {
                rep.min_re = re;
                rep.worst_point = z;
            }
        }
    }
    rep.member = rep.min_re > -1e-9;
    return rep;
}

QLimitReport q_limit_coefficients(std::span<const complexd> p_coeffs,
                                  std::span<const double> q_sequence, int order) {
    if (q_sequence.empty()) {
        throw std::invalid_argument("q_limit_coefficients: empty q sequence");
    }
    for (size_t i = 0; i < q_sequence.size(); ++i) {
        if (!(q_sequence[i] > 0.0) || !(q_sequence[i] < 1.0)) {
            throw std::invalid_argument("q_limit_coefficients: q values must lie in (0,1)");
        }
        if (i > 0 && !(q_sequence[i] > q_sequence[i - 1])) {
            throw std::invalid_argument("q_limit_coefficients: q sequence must increase");
        }
    }
    QLimitReport rep;
    for (double q : q_sequence) {
        const QParam qp(q);
        QLimitRow row;
        row.q = q;
        for (int n = 2; n <= order && static_cast<size_t>(n - 2) < p_coeffs.size(); ++n) {
            row.a.push_back(p_coeffs[static_cast<size_t>(n) - 2] / qp.bracket(n));
        }
        rep.rows.push_back(std::move(row));
    }
    const QLimitRow& last = rep.rows.back();
    for (size_t k = 0; k < last.a.size(); ++k) {
        const double n = static_cast<double>(k) + 2.0;
        rep.limit_deviation.push_back(std::abs(last.a[k] - p_coeffs[k] / n));
    }
    return rep;
}

}  // namespace qtoeplitz
