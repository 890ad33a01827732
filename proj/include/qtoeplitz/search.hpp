#ifndef QTOEPLITZ_SEARCH_HPP
#define QTOEPLITZ_SEARCH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "json.hpp"
#include "qtoeplitz/bounds.hpp"
#include "qtoeplitz/caratheodory.hpp"
#include "qtoeplitz/qcore.hpp"

namespace qtoeplitz {

enum class Verdict { SHARP, HOLDS_NOT_SHARP, VIOLATED };

std::string to_string(Verdict v);

struct SearchConfig {
    enum class Mode { lemma2, mix };

    Mode mode = Mode::lemma2;
    int grid = 48;            // points per real dimension
    int refine_iters = 400;   // local refinement budget
    std::uint64_t seed = 1;   // drives mix-mode sampling only
    double tol = 1e-8;        // refinement step threshold
    bool restrict_p_real = true;
    int threads = 0;          // 0 = hardware concurrency

    void validate() const;
    nlohmann::json to_json() const;
};

struct Lemma2Point {
    double p = 0.0;        // |p_1|
    double p_phase = 0.0;  // arg p_1, zero under restrict_p_real
    complexd x;
    complexd z;
};

struct VerificationReport {
    TheoremId theorem = TheoremId::T22;
    double q = 0.0;
    double max_found = 0.0;
    std::optional<Lemma2Point> argmax_lemma2;
    std::optional<MoebiusMix> argmax_mix;
    double closed_bound = 0.0;
    std::optional<double> proof_bound;  // set for T23
    double gap = 0.0;                   // closed_bound - max_found
    Verdict verdict = Verdict::HOLDS_NOT_SHARP;
    std::optional<Verdict> proof_verdict;
    bool converged = false;
    SearchConfig config;

    nlohmann::json to_json() const;
};

/// Theorem functional at an admissible Caratheodory triple; rejects
/// triples that fail the Lemma-1 inequalities.
double functional_value(TheoremId id, const std::array<complexd, 3>& triple,
                        const QParam& qp);

/// Coarse grid over the parametrization followed by derivative-free
/// compass refinement from the top 16 grid points. Deterministic given
/// the config; grid evaluation fans out across threads with an
/// order-independent max-reduction (ties broken on the lowest linear
/// grid index, i.e. lexicographically on (p, |x|, arg x, |z|, arg z)).
VerificationReport maximize(TheoremId id, const QParam& qp, const SearchConfig& cfg);

struct NoKnownWitnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Closed-form extremal candidate and the functional value it attains.
/// Throws NoKnownWitnessError for T32: its bound is a product of two
/// separately attained maxima with no single attaining function.
std::pair<MoebiusMix, double> sharpness_witness(TheoremId id, const QParam& qp);

}  // namespace qtoeplitz

#endif
