#include "qtoeplitz/caratheodory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qtoeplitz {

namespace {
constexpr double kWeightSumTol = 1e-12;
}

MoebiusMix::MoebiusMix(std::vector<MoebiusAtom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) {
        throw std::invalid_argument("MoebiusMix: at least one atom required");
    }
    double sum = 0.0;
    for (const auto& a : atoms_) {
        if (a.weight < 0.0) {
            throw std::invalid_argument("MoebiusMix: weights must be nonnegative");
        }
        sum += a.weight;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol) {
        throw std::invalid_argument("MoebiusMix: weights must sum to 1");
    }
}

complexd MoebiusMix::evaluate(complexd z) const {
    complexd acc(0.0, 0.0);
    for (const auto& a : atoms_) {
        const complexd u = std::polar(1.0, a.angle) * z;
        acc += a.weight * (1.0 + u) / (1.0 - u);
    }
    return acc;
}

std::vector<complexd> MoebiusMix::coefficients(int count) const {
    if (count < 1) {
        throw std::invalid_argument("MoebiusMix::coefficients: count must be >= 1");
    }
    std::vector<complexd> out(static_cast<size_t>(count));
    for (int n = 1; n <= count; ++n) {
        complexd s(0.0, 0.0);
        for (const auto& a : atoms_) {
            s += a.weight * std::polar(1.0, n * a.angle);
        }
        out[static_cast<size_t>(n) - 1] = 2.0 * s;
    }
    return out;
}

MoebiusMix MoebiusMix::random(std::mt19937_64& rng, int max_atoms) {
    std::uniform_int_distribution<int> kdist(1, max_atoms);
    const int k = kdist(rng);
    // Dirichlet(1,...,1) via normalized exponentials.
    std::exponential_distribution<double> edist(1.0);
    std::uniform_real_distribution<double> adist(0.0, 2.0 * std::numbers::pi);
    std::vector<MoebiusAtom> atoms(static_cast<size_t>(k));
    double sum = 0.0;
    for (auto& a : atoms) {
        a.weight = edist(rng);
        a.angle = adist(rng);
        sum += a.weight;
    }
    for (auto& a : atoms) {
        a.weight /= sum;
    }
    // Exact unit sum after rounding.
    double resum = 0.0;
    for (size_t i = 0; i + 1 < atoms.size(); ++i) resum += atoms[i].weight;
    atoms.back().weight = 1.0 - resum;
    return MoebiusMix(std::move(atoms));
}

nlohmann::json MoebiusMix::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& a : atoms_) {
        arr.push_back({{"weight", a.weight}, {"angle", a.angle}});
    }
    return nlohmann::json{{"atoms", arr}};
}

MoebiusMix MoebiusMix::from_json(const nlohmann::json& j) {
    std::vector<MoebiusAtom> atoms;
    for (const auto& e : j.at("atoms")) {
        atoms.push_back({e.at("weight").get<double>(), e.at("angle").get<double>()});
    }
    return MoebiusMix(std::move(atoms));
}

Lemma2Triple::Lemma2Triple(double p_in, complexd x_in, complexd z_in)
    : p(p_in), x(x_in), z(z_in) {
    if (!(p >= 0.0) || !(p <= 2.0)) {
        throw std::invalid_argument("Lemma2Triple: p must lie in [0,2]");
    }
    if (std::abs(x) > 1.0 + 1e-15 || std::abs(z) > 1.0 + 1e-15) {
        throw std::invalid_argument("Lemma2Triple: |x| and |z| must be <= 1");
    }
}

std::array<complexd, 3> lemma2_coefficients(const Lemma2Triple& t) {
    const double p = t.p;
    const double paux = t.p_aux();
    const complexd x = t.x;
    const complexd p2 = (p * p + x * paux) / 2.0;
    const complexd p3 = (p * p * p + 2.0 * paux * p * x - p * paux * x * x +
                         2.0 * paux * (1.0 - std::norm(x)) * t.z) /
                        4.0;
    return {complexd(p, 0.0), p2, p3};
}

Lemma2Recovery recover_lemma2(double p1, complexd p2, complexd p3) {
    if (!(p1 >= 0.0) || !(p1 <= 2.0)) {
        throw std::invalid_argument("recover_lemma2: p1 must lie in [0,2]");
    }
    Lemma2Recovery rec;
    const double paux = 4.0 - p1 * p1;
    if (paux <= 0.0) {
        rec.x_degenerate = true;
        rec.z_degenerate = true;
        return rec;
    }
    const complexd x = (2.0 * p2 - p1 * p1) / paux;
    rec.x = x;
    const double xres = 1.0 - std::norm(x);
    if (xres <= 0.0) {
        rec.z_degenerate = true;
        return rec;
    }
    rec.z = (4.0 * p3 - p1 * p1 * p1 - 2.0 * paux * p1 * x + p1 * paux * x * x) /
            (2.0 * paux * xres);
    return rec;
}

Lemma1Report check_lemma1(std::span<const complexd> coeffs, double tol) {
    if (coeffs.empty()) {
        throw std::invalid_argument("check_lemma1: at least p_1 required");
    }
    Lemma1Report rep;
    rep.ok = true;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        Lemma1Check c;
        c.index = static_cast<int>(i) + 1;
        c.lhs = std::abs(coeffs[i]);
        c.rhs = 2.0;
        c.ok = c.lhs <= c.rhs + tol;
        rep.ok = rep.ok && c.ok;
        rep.checks.push_back(c);
    }
    if (coeffs.size() >= 2) {
        Lemma1Check c;
        c.index = 0;
        c.lhs = std::abs(coeffs[1] - coeffs[0] * coeffs[0] / 2.0);
        c.rhs = 2.0 - std::norm(coeffs[0]) / 2.0;
        c.ok = c.lhs <= c.rhs + tol;
        rep.ok = rep.ok && c.ok;
        rep.checks.push_back(c);
    }
    return rep;
}

}  // namespace qtoeplitz
