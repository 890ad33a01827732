#ifndef QTOEPLITZ_CARATHEODORY_HPP
#define QTOEPLITZ_CARATHEODORY_HPP

#include <array>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "json.hpp"
#include "qtoeplitz/qcore.hpp"

namespace qtoeplitz {

struct MoebiusAtom {
    double weight = 0.0;
    double angle = 0.0;
};

/// Convex combination of Moebius kernels
///   p(z) = sum_k w_k (1 + e^{i t_k} z) / (1 - e^{i t_k} z).
/// By the Herglotz representation p(0) = 1 and Re p > 0 on the disk.
class MoebiusMix {
  public:
    explicit MoebiusMix(std::vector<MoebiusAtom> atoms);

    const std::vector<MoebiusAtom>& atoms() const { return atoms_; }

    complexd evaluate(complexd z) const;

    /// Coefficients p_1..p_count; p_n = 2 sum_k w_k e^{i n t_k}.
    std::vector<complexd> coefficients(int count) const;

    /// K uniform in {1..max_atoms}, Dirichlet(1,..,1) weights, uniform angles.
    static MoebiusMix random(std::mt19937_64& rng, int max_atoms = 5);

    nlohmann::json to_json() const;
    static MoebiusMix from_json(const nlohmann::json& j);

  private:
    std::vector<MoebiusAtom> atoms_;
};

/// (p, x, z) parametrization of admissible (p_1, p_2, p_3):
/// p in [0,2], |x| <= 1, |z| <= 1.
struct Lemma2Triple {
    Lemma2Triple(double p_in, complexd x_in, complexd z_in);

    double p;
    complexd x;
    complexd z;

    double p_aux() const { return 4.0 - p * p; }
    complexd r_aux() const { return (1.0 - std::norm(x)) * z; }
};

/// p_1 = p, 2 p_2 = p^2 + x (4 - p^2),
/// 4 p_3 = p^3 + 2(4-p^2) p x - p (4-p^2) x^2 + 2(4-p^2)(1-|x|^2) z.
std::array<complexd, 3> lemma2_coefficients(const Lemma2Triple& t);

/// Inverse of lemma2_coefficients. Degenerate strata (p = 2, |x| = 1)
/// are reported, not errors: extremal functions live exactly there.
struct Lemma2Recovery {
    std::optional<complexd> x;
    std::optional<complexd> z;
    bool x_degenerate = false;
    bool z_degenerate = false;
};

Lemma2Recovery recover_lemma2(double p1, complexd p2, complexd p3);

struct Lemma1Check {
    int index = 0;     // coefficient index n, or 0 for the p_2 - p_1^2/2 inequality
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
};

struct Lemma1Report {
    bool ok = false;
    std::vector<Lemma1Check> checks;
};

/// |p_n| <= 2 for each supplied n, and when p_2 is present
/// |p_2 - p_1^2/2| <= 2 - |p_1|^2/2, all up to tol.
Lemma1Report check_lemma1(std::span<const complexd> coeffs, double tol = 1e-9);

}  // namespace qtoeplitz

#endif
