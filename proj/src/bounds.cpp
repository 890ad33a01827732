#include "qtoeplitz/bounds.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace qtoeplitz {

std::string to_string(TheoremId id) {
    switch (id) {
        case TheoremId::T22: return "T22";
        case TheoremId::T23: return "T23";
        case TheoremId::T32: return "T32";
        case TheoremId::T31: return "T31";
        case TheoremId::AuxA: return "AuxA";
        case TheoremId::AuxB: return "AuxB";
    }
    throw std::invalid_argument("to_string: bad TheoremId");
}

TheoremId parse_theorem(const std::string& name) {
    std::string s;
    for (char c : name) s.push_back(static_cast<char>(std::tolower(c)));
    if (s == "t22") return TheoremId::T22;
    if (s == "t23") return TheoremId::T23;
    if (s == "t32") return TheoremId::T32;
    if (s == "t31") return TheoremId::T31;
    if (s == "auxa") return TheoremId::AuxA;
    if (s == "auxb") return TheoremId::AuxB;
    throw std::invalid_argument("parse_theorem: unknown theorem '" + name + "'");
}

double bound(TheoremId id, const QParam& qp) {
    const double q = qp.value();
    switch (id) {
        case TheoremId::T22:
            return 4.0 * q * q * (q * q + 2.0 * q + 2.0) /
                   std::pow(1.0 + 2.0 * q + 2.0 * q * q + q * q * q, 2);
        case TheoremId::T23:
        case TheoremId::T32:
            return 16.0 * q * q /
                   ((1.0 + q + q * q + q * q * q) * std::pow(1.0 + q + q * q, 2));
        case TheoremId::T31:
            return 1.0 + 4.0 / std::pow(1.0 + q + q * q, 2);
        case TheoremId::AuxA:
            return 2.0 * q * q / (1.0 + q + q * q + q * q * q);
        case TheoremId::AuxB:
            return 8.0 / std::pow(1.0 + q + q * q, 2);
    }
    throw std::invalid_argument("bound: bad TheoremId");
}

double bound_bracket_form(TheoremId id, const QParam& qp) {
    const double q = qp.value();
    const double b2 = qp.bracket(2);
    const double b3 = qp.bracket(3);
    const double b4 = qp.bracket(4);
    switch (id) {
        case TheoremId::T22:
            return 4.0 / (b2 * b2) - 4.0 / (b3 * b3);
        case TheoremId::T23:
        case TheoremId::T32:
            return (2.0 * q * q / b4) * (8.0 / (b3 * b3));
        case TheoremId::T31:
            return 1.0 + 4.0 / (b3 * b3);
        case TheoremId::AuxA:
            return 2.0 * q * q / b4;
        case TheoremId::AuxB:
            return 8.0 / (b3 * b3);
    }
    throw std::invalid_argument("bound_bracket_form: bad TheoremId");
}

double bound_classical_limit(TheoremId id) {
    switch (id) {
        case TheoremId::T22: return 5.0 / 9.0;
        case TheoremId::T23:
        case TheoremId::T32: return 4.0 / 9.0;
        case TheoremId::T31: return 13.0 / 9.0;
        case TheoremId::AuxA: return 0.5;
        case TheoremId::AuxB: return 8.0 / 9.0;
    }
    throw std::invalid_argument("bound_classical_limit: bad TheoremId");
}

double proof_bound_t23(const QParam& qp) {
    const double b3 = qp.bracket(3);
    return 4.0 / (b3 * b3);
}

double objective_f(double p, double t, const QParam& qp) {
    const double b2 = qp.bracket(2);
    const double b3 = qp.bracket(3);
    const double paux = 4.0 - p * p;
    return std::abs(p * p * p * p / (4.0 * b3 * b3) - p * p / (b2 * b2)) +
           t * p * p * paux / (2.0 * b3 * b3) + t * t * paux * paux / (4.0 * b3 * b3);
}

double objective_g(double p, double t, const QParam& qp) {
    const double b3sq = std::pow(qp.bracket(3), 2);
    const double b4sq = std::pow(qp.bracket(4), 2);
    const double P = 4.0 - p * p;
    const double P2 = P * P;
    const double p2 = p * p;
    const double p3 = p2 * p;
    const double p4 = p3 * p;
    const double p6 = p4 * p2;

    const double c4 = p2 * P2 / (4.0 * b4sq) + P2 / b4sq - p * P2 / b4sq;
    const double c3 = p2 * P2 / b4sq - 2.0 * p * P2 / b4sq;
    const double c2 = p2 * P2 / b4sq - 2.0 * P2 / b4sq + P2 / b3sq + p4 * P / (2.0 * b4sq) -
                      p3 * P / b4sq + p * P2 / b4sq;
    const double c1 = p4 * P / b4sq + 2.0 * p * P2 / b4sq + 2.0 * p2 * P / b3sq;
    const double c0 =
        P2 / b4sq + p3 * P / b4sq + std::abs(p6 / (4.0 * b4sq) - p4 / b3sq);

    return 0.25 * (((c4 * t + c3) * t + c2) * t * t + c1 * t + c0);
}

}  // namespace qtoeplitz
