#include "qtoeplitz/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include "qtoeplitz/kernels.hpp"
#include "qtoeplitz/version.hpp"

namespace qtoeplitz {

namespace {

constexpr double kVerdictTol = 1e-6;
constexpr int kTopK = 16;
constexpr size_t kBatchCap = 4096;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double functional_from_p(TheoremId id, complexd p1, complexd p2, complexd p3,
                         const BracketSet& br) {
    const complexd a2 = p1 * br.inv_b2;
    const complexd a3 = p2 * br.inv_b3;
    const complexd a4 = p3 * br.inv_b4;
    switch (id) {
        case TheoremId::T22: return std::abs(a2 * a2 - a3 * a3);
        case TheoremId::T23: return std::abs(a3 * a3 - a4 * a4);
        case TheoremId::T32:
            return std::abs((a2 - a4) * (a2 * a2 + a2 * a4 - 2.0 * a3 * a3));
        case TheoremId::T31:
            return std::abs(1.0 + 2.0 * a2 * a2 * (a3 - 1.0) - a3 * a3);
        case TheoremId::AuxA: return std::abs(a2 - a4);
        case TheoremId::AuxB: return std::abs(a2 * a2 + a2 * a4 - 2.0 * a3 * a3);
    }
    throw std::invalid_argument("functional_from_p: bad TheoremId");
}

bool theorem_uses_p3(TheoremId id) {
    switch (id) {
        case TheoremId::T22:
        case TheoremId::T31:
            return false;
        default:
            return true;
    }
}

struct ScoredIndex {
    double value = -std::numeric_limits<double>::infinity();
    std::uint64_t index = 0;
};

// Fixed-size best-K list; on equal values the lower linear index wins,
// which keeps parallel and serial runs bit-identical.
struct TopK {
    std::vector<ScoredIndex> items;

    void insert(double value, std::uint64_t index) {
        if (static_cast<int>(items.size()) == kTopK && !better(value, index, items.back())) {
            return;
        }
        ScoredIndex s{value, index};
        auto pos = std::lower_bound(items.begin(), items.end(), s,
                                    [](const ScoredIndex& a, const ScoredIndex& b) {
                                        return better(a.value, a.index, b);
                                    });
        items.insert(pos, s);
        if (static_cast<int>(items.size()) > kTopK) {
            items.pop_back();
        }
    }

    static bool better(double value, std::uint64_t index, const ScoredIndex& other) {
        if (value != other.value) return value > other.value;
        return index < other.index;
    }
};

TopK merge_topk(const std::vector<TopK>& parts) {
    TopK out;
    for (const auto& part : parts) {
        for (const auto& s : part.items) {
            out.insert(s.value, s.index);
        }
    }
    return out;
}

// Continuous parameter vector: [ |p1|, arg p1, |x|, arg x, |z|, arg z ].
using Params = std::array<double, 6>;

struct DimSpec {
    int slot;      // index into Params
    double lo;     // ignored when wrap
    double hi;
    bool wrap;     // angular dimension, period 2*pi
    double step0;  // initial refinement step (one grid spacing)
};

struct Lemma2Grid {
    int g = 0;
    bool use_phase = false;
    bool use_z = false;
    std::vector<double> p_vals;    // [0,2]
    std::vector<double> r_vals;    // [0,1]
    std::vector<double> ang_cos;
    std::vector<double> ang_sin;
    std::vector<double> ang_vals;

    std::array<std::uint64_t, 6> counts{};  // per enumeration level
    std::uint64_t total = 0;
    std::uint64_t inner = 0;  // points per p-chunk

    Lemma2Grid(int grid, bool phase, bool z) : g(grid), use_phase(phase), use_z(z) {
        p_vals.resize(static_cast<size_t>(g));
        r_vals.resize(static_cast<size_t>(g));
        ang_cos.resize(static_cast<size_t>(g));
        ang_sin.resize(static_cast<size_t>(g));
        ang_vals.resize(static_cast<size_t>(g));
        for (int i = 0; i < g; ++i) {
            p_vals[static_cast<size_t>(i)] = 2.0 * i / (g - 1);
            r_vals[static_cast<size_t>(i)] = static_cast<double>(i) / (g - 1);
            const double a = kTwoPi * i / g;
            ang_vals[static_cast<size_t>(i)] = a;
            ang_cos[static_cast<size_t>(i)] = std::cos(a);
            ang_sin[static_cast<size_t>(i)] = std::sin(a);
        }
        const auto ug = static_cast<std::uint64_t>(g);
        counts = {ug, use_phase ? ug : 1, ug, ug, use_z ? ug : 1, use_z ? ug : 1};
        total = 1;
        for (auto c : counts) total *= c;
        inner = total / ug;
    }

    // Enumeration order (slow to fast): p, arg p, |x|, arg x, |z|, arg z.
    Params decode(std::uint64_t index) const {
        std::array<std::uint64_t, 6> idx{};
        for (int d = 5; d >= 0; --d) {
            idx[static_cast<size_t>(d)] = index % counts[static_cast<size_t>(d)];
            index /= counts[static_cast<size_t>(d)];
        }
        Params pr{};
        pr[0] = p_vals[idx[0]];
        pr[1] = use_phase ? ang_vals[idx[1]] : 0.0;
        pr[2] = r_vals[idx[2]];
        pr[3] = ang_vals[idx[3]];
        pr[4] = use_z ? r_vals[idx[4]] : 0.0;
        pr[5] = use_z ? ang_vals[idx[5]] : 0.0;
        return pr;
    }

    std::vector<DimSpec> dims() const {
        std::vector<DimSpec> out;
        out.push_back({0, 0.0, 2.0, false, 2.0 / (g - 1)});
        if (use_phase) out.push_back({1, 0.0, 0.0, true, kTwoPi / g});
        out.push_back({2, 0.0, 1.0, false, 1.0 / (g - 1)});
        out.push_back({3, 0.0, 0.0, true, kTwoPi / g});
        if (use_z) {
            out.push_back({4, 0.0, 1.0, false, 1.0 / (g - 1)});
            out.push_back({5, 0.0, 0.0, true, kTwoPi / g});
        }
        return out;
    }
};

void push_params(PointBatch& batch, const Params& pr) {
    const double p = pr[0];
    const double pre = (pr[1] == 0.0) ? p : p * std::cos(pr[1]);
    const double pim = (pr[1] == 0.0) ? 0.0 : p * std::sin(pr[1]);
    batch.push(pre, pim, pr[2] * std::cos(pr[3]), pr[2] * std::sin(pr[3]),
               pr[4] * std::cos(pr[5]), pr[4] * std::sin(pr[5]));
}

// Evaluates one p-chunk of the grid, filling batches in linear-index order.
void scan_chunk(TheoremId id, const BracketSet& br, KernelFn kernel,
                const Lemma2Grid& grid, int ip, TopK& top) {
    PointBatch batch;
    batch.reserve(kBatchCap);
    std::vector<double> out(kBatchCap);
    std::uint64_t base = static_cast<std::uint64_t>(ip) * grid.inner;
    std::uint64_t batch_start = base;

    auto flush = [&]() {
        const size_t n = batch.size();
        if (n == 0) return;
        kernel(id, br, batch, 0, n, out.data());
        for (size_t i = 0; i < n; ++i) {
            top.insert(out[i], batch_start + i);
        }
        batch_start += n;
        batch.clear();
    };

    const double p = grid.p_vals[static_cast<size_t>(ip)];
    const int nphase = grid.use_phase ? grid.g : 1;
    const int nz = grid.use_z ? grid.g : 1;
    for (int iph = 0; iph < nphase; ++iph) {
        const double pre = grid.use_phase ? p * grid.ang_cos[static_cast<size_t>(iph)] : p;
        const double pim = grid.use_phase ? p * grid.ang_sin[static_cast<size_t>(iph)] : 0.0;
        for (int irx = 0; irx < grid.g; ++irx) {
            const double rx = grid.r_vals[static_cast<size_t>(irx)];
            for (int iax = 0; iax < grid.g; ++iax) {
                const double xre = rx * grid.ang_cos[static_cast<size_t>(iax)];
                const double xim = rx * grid.ang_sin[static_cast<size_t>(iax)];
                for (int irz = 0; irz < nz; ++irz) {
                    const double rz = grid.use_z ? grid.r_vals[static_cast<size_t>(irz)] : 0.0;
                    for (int iaz = 0; iaz < nz; ++iaz) {
                        const double zre =
                            grid.use_z ? rz * grid.ang_cos[static_cast<size_t>(iaz)] : 0.0;
                        const double zim =
                            grid.use_z ? rz * grid.ang_sin[static_cast<size_t>(iaz)] : 0.0;
                        batch.push(pre, pim, xre, xim, zre, zim);
                        if (batch.size() == kBatchCap) flush();
                    }
                }
            }
        }
    }
    flush();
}

struct RefineResult {
    double value = -std::numeric_limits<double>::infinity();
    bool converged = false;
};

// Compass search with step halving over the given dimensions. The
// evaluator maps a Params vector to the functional value.
template <typename Eval>
RefineResult compass_refine(Params& params, const std::vector<DimSpec>& dims,
                            const SearchConfig& cfg, const Eval& eval) {
    RefineResult res;
    res.value = eval(params);
    std::vector<double> steps;
    steps.reserve(dims.size());
    for (const auto& d : dims) steps.push_back(d.step0);

    for (int iter = 0; iter < cfg.refine_iters; ++iter) {
        Params best = params;
        double best_value = res.value;
        bool improved = false;
        for (size_t k = 0; k < dims.size(); ++k) {
            const DimSpec& d = dims[k];
            for (double sign : {1.0, -1.0}) {
                Params cand = params;
                double v = cand[static_cast<size_t>(d.slot)] + sign * steps[k];
                if (d.wrap) {
                    v = std::fmod(v, kTwoPi);
                    if (v < 0.0) v += kTwoPi;
                } else {
                    v = std::clamp(v, d.lo, d.hi);
                }
                cand[static_cast<size_t>(d.slot)] = v;
                const double fv = eval(cand);
                if (fv > best_value) {
                    best_value = fv;
                    best = cand;
                    improved = true;
                }
            }
        }
        if (improved) {
            params = best;
            res.value = best_value;
        } else {
            double max_step = 0.0;
            for (auto& s : steps) {
                s *= 0.5;
                max_step = std::max(max_step, s);
            }
            if (max_step < cfg.tol) {
                res.converged = true;
                break;
            }
        }
    }
    return res;
}

VerificationReport finalize_report(TheoremId id, const QParam& qp, const SearchConfig& cfg,
                                   double max_found, bool converged) {
    VerificationReport rep;
    rep.theorem = id;
    rep.q = qp.value();
    rep.max_found = max_found;
    rep.closed_bound = bound(id, qp);
    rep.gap = rep.closed_bound - max_found;
    rep.converged = converged;
    rep.config = cfg;

    auto classify = [](double found, double b) {
        if (found > b + kVerdictTol) return Verdict::VIOLATED;
        if (std::abs(b - found) <= kVerdictTol) return Verdict::SHARP;
        return Verdict::HOLDS_NOT_SHARP;
    };
    rep.verdict = classify(max_found, rep.closed_bound);
    if (id == TheoremId::T23) {
        rep.proof_bound = proof_bound_t23(qp);
        rep.proof_verdict = classify(max_found, *rep.proof_bound);
    }
    return rep;
}

VerificationReport maximize_lemma2(TheoremId id, const QParam& qp, const SearchConfig& cfg) {
    const BracketSet br(qp);
    const KernelFn kernel = select_kernel();
    const Lemma2Grid grid(cfg.grid, !cfg.restrict_p_real, theorem_uses_p3(id));

    // Grid phase: one chunk per p value, workers pull chunks from a
    // shared counter; per-chunk results merge in chunk order.
    std::vector<TopK> chunk_tops(static_cast<size_t>(grid.g));
    std::atomic<int> next_chunk{0};
    auto worker = [&]() {
        for (;;) {
            const int ip = next_chunk.fetch_add(1);
            if (ip >= grid.g) break;
            scan_chunk(id, br, kernel, grid, ip, chunk_tops[static_cast<size_t>(ip)]);
        }
    };
    unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                         : std::thread::hardware_concurrency();
    n_threads = std::max(1u, std::min(n_threads, static_cast<unsigned>(grid.g)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    const TopK top = merge_topk(chunk_tops);

    // Refinement phase from the surviving grid points.
    const auto dims = grid.dims();
    auto eval = [&](const Params& p) {
        PointBatch b;
        push_params(b, p);
        double v = 0.0;
        kernel(id, br, b, 0, 1, &v);
        return v;
    };

    double best_value = -std::numeric_limits<double>::infinity();
    Params best_params{};
    bool best_converged = false;
    for (const auto& s : top.items) {
        Params p = grid.decode(s.index);
        const RefineResult r = compass_refine(p, dims, cfg, eval);
        if (r.value > best_value) {
            best_value = r.value;
            best_params = p;
            best_converged = r.converged;
        }
    }

    VerificationReport rep = finalize_report(id, qp, cfg, best_value, best_converged);
    Lemma2Point pt;
    pt.p = best_params[0];
    pt.p_phase = best_params[1];
    pt.x = std::polar(best_params[2], best_params[3]);
    pt.z = std::polar(best_params[4], best_params[5]);
    rep.argmax_lemma2 = pt;
    return rep;
}

// Mix-mode candidate: raw weights (renormalized at evaluation) + angles.
struct MixParams {
    std::vector<double> w;
    std::vector<double> theta;
};

double eval_mix(TheoremId id, const BracketSet& br, const MixParams& m) {
    double sum = 0.0;
    for (double w : m.w) sum += w;
    if (sum <= 1e-12) return -std::numeric_limits<double>::infinity();
    complexd p1(0.0, 0.0), p2(0.0, 0.0), p3(0.0, 0.0);
    for (size_t k = 0; k < m.w.size(); ++k) {
        const double lam = m.w[k] / sum;
        const complexd e1 = std::polar(1.0, m.theta[k]);
        const complexd e2 = e1 * e1;
        p1 += lam * e1;
        p2 += lam * e2;
        p3 += lam * e2 * e1;
    }
    return functional_from_p(id, 2.0 * p1, 2.0 * p2, 2.0 * p3, br);
}

MoebiusMix mix_from_params(const MixParams& m) {
    double sum = 0.0;
    for (double w : m.w) sum += w;
    std::vector<MoebiusAtom> atoms;
    for (size_t k = 0; k < m.w.size(); ++k) {
        atoms.push_back({m.w[k] / sum, m.theta[k]});
    }
    double resum = 0.0;
    for (size_t i = 0; i + 1 < atoms.size(); ++i) resum += atoms[i].weight;
    atoms.back().weight = 1.0 - resum;
    return MoebiusMix(std::move(atoms));
}

VerificationReport maximize_mix(TheoremId id, const QParam& qp, const SearchConfig& cfg) {
    const BracketSet br(qp);
    const int g = cfg.grid;

    std::vector<MixParams> starts;
    // Single atoms over the angle grid.
    for (int k = 0; k < g; ++k) {
        starts.push_back({{1.0}, {kTwoPi * k / g}});
    }
    // Equal-weight conjugate pairs (theta, -theta): real p_1 stratum.
    for (int k = 0; k <= g / 2; ++k) {
        const double t = kTwoPi * k / g;
        starts.push_back({{0.5, 0.5}, {t, kTwoPi - t}});
    }
    // Equal-weight pairs over a coarse angle x angle grid.
    const int stride = std::max(1, g / 24);
    for (int j = 0; j < g; j += stride) {
        for (int k = j + 1; k < g; k += stride) {
            starts.push_back({{0.5, 0.5}, {kTwoPi * j / g, kTwoPi * k / g}});
        }
    }
    // Seeded random mixes, K <= 5 atoms.
    std::mt19937_64 rng(cfg.seed);
    for (int s = 0; s < g * g; ++s) {
        const MoebiusMix mix = MoebiusMix::random(rng);
        MixParams mp;
        for (const auto& a : mix.atoms()) {
            mp.w.push_back(a.weight);
            mp.theta.push_back(a.angle);
        }
        starts.push_back(std::move(mp));
    }

    // Best-16 starts; the candidate ordinal breaks ties.
    TopK top;
    for (size_t i = 0; i < starts.size(); ++i) {
        top.insert(eval_mix(id, br, starts[i]), i);
    }

    double best_value = -std::numeric_limits<double>::infinity();
    MixParams best_params;
    bool best_converged = false;
    for (const auto& s : top.items) {
        MixParams m = starts[static_cast<size_t>(s.index)];
        const size_t K = m.w.size();
        // Pack into the generic compass machinery: weights then angles.
        std::vector<DimSpec> dims;
        for (size_t k = 0; k < K; ++k) {
            dims.push_back({static_cast<int>(k), 0.0, 1.0, false, 1.0 / (g - 1)});
        }
        for (size_t k = 0; k < K; ++k) {
            dims.push_back({static_cast<int>(K + k), 0.0, 0.0, true, kTwoPi / g});
        }
        std::vector<double> vec(2 * K);
        std::copy(m.w.begin(), m.w.end(), vec.begin());
        std::copy(m.theta.begin(), m.theta.end(), vec.begin() + static_cast<long>(K));

        auto eval_vec = [&](const std::vector<double>& v) {
            MixParams mm;
            mm.w.assign(v.begin(), v.begin() + static_cast<long>(K));
            mm.theta.assign(v.begin() + static_cast<long>(K), v.end());
            return eval_mix(id, br, mm);
        };

        // Same compass loop as lemma2 mode, over a dynamic-length vector.
        double value = eval_vec(vec);
        std::vector<double> steps;
        for (const auto& d : dims) steps.push_back(d.step0);
        bool converged = false;
        for (int iter = 0; iter < cfg.refine_iters; ++iter) {
            std::vector<double> best = vec;
            double best_v = value;
            bool improved = false;
            for (size_t k = 0; k < dims.size(); ++k) {
                const DimSpec& d = dims[k];
                for (double sign : {1.0, -1.0}) {
                    std::vector<double> cand = vec;
                    double x = cand[static_cast<size_t>(d.slot)] + sign * steps[k];
                    if (d.wrap) {
                        x = std::fmod(x, kTwoPi);
                        if (x < 0.0) x += kTwoPi;
                    } else {
                        x = std::clamp(x, d.lo, d.hi);
                    }
                    cand[static_cast<size_t>(d.slot)] = x;
                    const double fv = eval_vec(cand);
                    if (fv > best_v) {
                        best_v = fv;
                        best = cand;
                        improved = true;
                    }
                }
            }
            if (improved) {
                vec = best;
                value = best_v;
            } else {
                double max_step = 0.0;
                for (auto& st : steps) {
                    st *= 0.5;
                    max_step = std::max(max_step, st);
                }
                if (max_step < cfg.tol) {
                    converged = true;
                    break;
                }
            }
        }

        if (value > best_value) {
            best_value = value;
            best_params.w.assign(vec.begin(), vec.begin() + static_cast<long>(K));
            best_params.theta.assign(vec.begin() + static_cast<long>(K), vec.end());
            best_converged = converged;
        }
    }

    VerificationReport rep = finalize_report(id, qp, cfg, best_value, best_converged);
    rep.argmax_mix = mix_from_params(best_params);
    return rep;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::SHARP: return "SHARP";
        case Verdict::HOLDS_NOT_SHARP: return "HOLDS_NOT_SHARP";
        case Verdict::VIOLATED: return "VIOLATED";
    }
    throw std::invalid_argument("to_string: bad Verdict");
}

void SearchConfig::validate() const {
    if (grid < 8) throw std::invalid_argument("SearchConfig: grid must be >= 8");
    if (refine_iters < 0) throw std::invalid_argument("SearchConfig: refine_iters must be >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("SearchConfig: tol must be positive");
}

nlohmann::json SearchConfig::to_json() const {
    return nlohmann::json{
        {"mode", mode == Mode::lemma2 ? "lemma2" : "mix"},
        {"grid", grid},
        {"refine_iters", refine_iters},
        {"seed", seed},
        {"tol", tol},
        {"restrict_p_real", restrict_p_real},
        {"threads", threads},
    };
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j;
    j["toolkit_version"] = kVersion;
    j["theorem"] = to_string(theorem);
    j["q"] = q;
    j["max_found"] = max_found;
    if (argmax_lemma2) {
        j["argmax"] = {
            {"mode", "lemma2"},
            {"p", argmax_lemma2->p},
            {"p_phase", argmax_lemma2->p_phase},
            {"x", {argmax_lemma2->x.real(), argmax_lemma2->x.imag()}},
            {"z", {argmax_lemma2->z.real(), argmax_lemma2->z.imag()}},
        };
    } else if (argmax_mix) {
        j["argmax"] = {{"mode", "mix"}, {"mix", argmax_mix->to_json()}};
    }
    j["closed_bound"] = closed_bound;
    if (proof_bound) j["proof_bound"] = *proof_bound;
    j["gap"] = gap;
    j["verdict"] = to_string(verdict);
    if (proof_verdict) j["proof_verdict"] = to_string(*proof_verdict);
    j["converged"] = converged;
    j["config"] = config.to_json();
    return j;
}

double functional_value(TheoremId id, const std::array<complexd, 3>& triple,
                        const QParam& qp) {
    const Lemma1Report rep = check_lemma1(std::span<const complexd>(triple));
    if (!rep.ok) {
        throw std::invalid_argument("functional_value: triple fails the Lemma-1 inequalities");
    }
    return functional_from_p(id, triple[0], triple[1], triple[2], BracketSet(qp));
}

VerificationReport maximize(TheoremId id, const QParam& qp, const SearchConfig& cfg) {
    cfg.validate();
    if (cfg.mode == SearchConfig::Mode::lemma2) {
        return maximize_lemma2(id, qp, cfg);
    }
    return maximize_mix(id, qp, cfg);
}

std::pair<MoebiusMix, double> sharpness_witness(TheoremId id, const QParam& qp) {
    const double pi = std::numbers::pi;
    std::optional<MoebiusMix> mix;
    switch (id) {
        case TheoremId::T22:
        case TheoremId::AuxA:
            mix = MoebiusMix({{1.0, 0.0}});
            break;
        case TheoremId::T23:
        case TheoremId::AuxB:
            mix = MoebiusMix({{0.5, 0.0}, {0.5, pi}});
            break;
        case TheoremId::T31:
            // Two atoms at pi/4 and 5pi/4: p_1 = 0, p_2 = 2i.
            mix = MoebiusMix({{0.5, pi / 4.0}, {0.5, 5.0 * pi / 4.0}});
            break;
        case TheoremId::T32:
            throw NoKnownWitnessError(
                "sharpness_witness: T32's product bound has no known attaining function");
    }
    const auto p = mix->coefficients(3);
    const double value =
        functional_from_p(id, p[0], p[1], p[2], BracketSet(qp));
    return {std::move(*mix), value};
}

}  // namespace qtoeplitz
