#ifndef QTOEPLITZ_BOUNDS_HPP
#define QTOEPLITZ_BOUNDS_HPP

#include <string>

#include "qtoeplitz/qcore.hpp"

namespace qtoeplitz {

enum class TheoremId { T22, T23, T32, T31, AuxA, AuxB };

std::string to_string(TheoremId id);
TheoremId parse_theorem(const std::string& name);  // accepts t22, T22, ...

/// Closed-form bound as printed in the theorem statements:
///   T22:  4q^2(q^2+2q+2) / (1+2q+2q^2+q^3)^2
///   T23:  16q^2 / ((1+q+q^2+q^3)(1+q+q^2)^2)   (statement form)
///   T32:  same as T23
///   T31:  1 + 4/(1+q+q^2)^2
///   AuxA: 2q^2 / (1+q+q^2+q^3)
///   AuxB: 8 / (1+q+q^2)^2
double bound(TheoremId id, const QParam& qp);

/// Same bounds written in q-bracket arithmetic; agreement with bound()
/// is a standing self-check.
double bound_bracket_form(TheoremId id, const QParam& qp);

/// Bound value in the classical limit q -> 1.
double bound_classical_limit(TheoremId id);

/// 4/[3]_q^2 -- what the T23 proof actually concludes. Kept separate from
/// the statement form because the two disagree for q < 1.
double proof_bound_t23(const QParam& qp);

/// F(|x|) from the T22 proof: with P = 4 - p^2,
/// |p^4/(4[3]^2) - p^2/[2]^2| + t p^2 P/(2[3]^2) + t^2 P^2/(4[3]^2).
double objective_f(double p, double t, const QParam& qp);

/// G(p,|x|) from the T23 proof, transcribed verbatim from its display
/// (a quartic in t = |x| with coefficients in P = 4 - p^2).
double objective_g(double p, double t, const QParam& qp);

}  // namespace qtoeplitz

#endif
