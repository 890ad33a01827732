#include "qtoeplitz/qcore.hpp"

#include <cmath>
#include <stdexcept>

namespace qtoeplitz {

QParam::QParam(double q) : q_(q) {
    if (!(q > 0.0) || !(q < 1.0)) {
        throw std::invalid_argument("QParam: q must lie strictly inside (0,1)");
    }
}

double QParam::bracket(int n) const {
    if (n < 1) {
        throw std::invalid_argument("QParam::bracket: n must be >= 1");
    }
    double sum = 0.0;
    double pow_q = 1.0;
    for (int k = 0; k < n; ++k) {
        sum += pow_q;
        pow_q *= q_;
    }
    return sum;
}

PowerSeries::PowerSeries(std::vector<complexd> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) {
        throw std::invalid_argument("PowerSeries: need at least coefficients a_0, a_1");
    }
}

PowerSeries PowerSeries::normalized(const std::vector<complexd>& tail, int order) {
    if (order < 1) {
        throw std::invalid_argument("PowerSeries::normalized: order must be >= 1");
    }
    if (static_cast<int>(tail.size()) > order - 1) {
        throw std::invalid_argument("PowerSeries::normalized: tail longer than order allows");
    }
    std::vector<complexd> c(static_cast<size_t>(order) + 1, complexd(0.0, 0.0));
    c[1] = complexd(1.0, 0.0);
    for (size_t k = 0; k < tail.size(); ++k) {
        c[k + 2] = tail[k];
    }
    return PowerSeries(std::move(c));
}

bool PowerSeries::is_normalized(double tol) const {
    return std::abs(coeffs_[0]) <= tol && std::abs(coeffs_[1] - complexd(1.0, 0.0)) <= tol;
}

complexd PowerSeries::evaluate(complexd z, double margin) const {
    if (std::abs(z) > 1.0 - margin) {
        throw std::domain_error("PowerSeries::evaluate: point outside the safe disk");
    }
    complexd acc(0.0, 0.0);
    for (size_t k = coeffs_.size(); k-- > 0;) {
        acc = acc * z + coeffs_[k];
    }
    return acc;
}

nlohmann::json PowerSeries::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : coeffs_) {
        arr.push_back({c.real(), c.imag()});
    }
    return arr;
}

PowerSeries PowerSeries::from_json(const nlohmann::json& j) {
    std::vector<complexd> c;
    c.reserve(j.size());
    for (const auto& e : j) {
        c.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    }
    return PowerSeries(std::move(c));
}

PowerSeries q_derivative_series(const PowerSeries& f, const QParam& qp) {
    if (!f.is_normalized()) {
        throw std::invalid_argument("q_derivative_series: series must be normalized");
    }
    const auto& a = f.coeffs();
    const int n = f.truncation_order();
    std::vector<complexd> out(static_cast<size_t>(n), complexd(0.0, 0.0));
    out[0] = complexd(1.0, 0.0);
    for (int k = 1; k < n; ++k) {
        out[k] = qp.bracket(k + 1) * a[static_cast<size_t>(k) + 1];
    }
    return PowerSeries(std::move(out));
}

complexd q_derivative_pointwise(const PowerSeries& f, const QParam& qp, complexd z) {
    if (std::abs(z) >= 1.0) {
        throw std::domain_error("q_derivative_pointwise: |z| must be < 1");
    }
    if (z == complexd(0.0, 0.0)) {
        return f.coeffs()[1];
    }
    const double q = qp.value();
    const complexd num = f.evaluate(z, 0.0) - f.evaluate(q * z, 0.0);
    return num / ((1.0 - q) * z);
}

}  // namespace qtoeplitz
