#include <array>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtoeplitz/bounds.hpp"
#include "qtoeplitz/rqclass.hpp"
#include "qtoeplitz/search.hpp"
#include "qtoeplitz/version.hpp"

namespace {

using nlohmann::json;
using namespace qtoeplitz;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitViolated = 3;
constexpr int kExitNoWitness = 4;

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << content;
}

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.7f", v);
    return buf;
}

int cmd_bounds(double q_min, double q_max, int steps, const std::string& format,
               const std::string& out_path) {
    if (!(q_min > 0.0) || !(q_min <= q_max) || !(q_max < 1.0) || steps < 1) {
        std::cerr << "bounds: require 0 < q-min <= q-max < 1 and steps >= 1\n";
        return kExitUsage;
    }
    const std::array<TheoremId, 6> cols = {TheoremId::T22, TheoremId::T23, TheoremId::T32,
                                           TheoremId::T31, TheoremId::AuxA, TheoremId::AuxB};
    std::ostringstream os;
    json rows = json::array();
    if (format == "csv") {
        os << "q,T22,T23_stated,T23_proof,T32,T31,AuxA,AuxB\n";
    }
    for (int i = 0; i < steps; ++i) {
        const double q = steps == 1 ? q_min : q_min + (q_max - q_min) * i / (steps - 1);
        const QParam qp(q);
        if (format == "csv") {
            os << format_fixed(q) << ',' << format_fixed(bound(cols[0], qp)) << ','
               << format_fixed(bound(cols[1], qp)) << ',' << format_fixed(proof_bound_t23(qp))
               << ',' << format_fixed(bound(cols[2], qp)) << ','
               << format_fixed(bound(cols[3], qp)) << ',' << format_fixed(bound(cols[4], qp))
               << ',' << format_fixed(bound(cols[5], qp)) << '\n';
        } else {
            rows.push_back({{"q", q},
                            {"T22", bound(TheoremId::T22, qp)},
                            {"T23_stated", bound(TheoremId::T23, qp)},
                            {"T23_proof", proof_bound_t23(qp)},
                            {"T32", bound(TheoremId::T32, qp)},
                            {"T31", bound(TheoremId::T31, qp)},
                            {"AuxA", bound(TheoremId::AuxA, qp)},
                            {"AuxB", bound(TheoremId::AuxB, qp)}});
        }
    }
    write_output(out_path, format == "csv" ? os.str() : rows.dump(2) + "\n");
    return kExitOk;
}

int cmd_verify(const std::string& theorem, double q, const SearchConfig& cfg,
               const std::string& out_path) {
    const TheoremId id = parse_theorem(theorem);
    const QParam qp(q);
    const VerificationReport rep = maximize(id, qp, cfg);
    json j = rep.to_json();
    j["generated_at"] = iso_timestamp();
    write_output(out_path, j.dump(2) + "\n");
    return rep.verdict == Verdict::VIOLATED ? kExitViolated : kExitOk;
}

int cmd_extremal(const std::string& theorem, double q, const std::string& out_path) {
    const TheoremId id = parse_theorem(theorem);
    const QParam qp(q);
    const std::pair<MoebiusMix, double> witness = sharpness_witness(id, qp);
    const auto p = witness.first.coefficients(3);
    const RqFunction f = RqFunction::from_p_coefficients(p, qp, 4);
    json a = json::array();
    for (int n = 2; n <= 4; ++n) {
        const complexd c = f.series().coeffs()[static_cast<size_t>(n)];
        a.push_back({c.real(), c.imag()});
    }
    json j = {
        {"toolkit_version", kVersion},
        {"theorem", to_string(id)},
        {"q", q},
        {"mix", witness.first.to_json()},
        {"a", a},
        {"value", witness.second},
    };
    write_output(out_path, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_qlimit(const std::string& theorem, double eps) {
    if (!(eps > 0.0) || !(eps < 0.1)) {
        std::cerr << "qlimit: require 0 < eps < 0.1\n";
        return kExitUsage;
    }
    const TheoremId id = parse_theorem(theorem);
    const double limit = bound_classical_limit(id);
    const bool is_t23 = id == TheoremId::T23;
    std::printf("# %s, classical limit %.10f\n", to_string(id).c_str(), limit);
    if (is_t23) {
        std::printf("%-4s %-14s %-16s %-16s %-12s\n", "k", "q", "stated", "proof",
                    "deviation");
    } else {
        std::printf("%-4s %-14s %-16s %-12s\n", "k", "q", "bound", "deviation");
    }
    for (int k = 0; k <= 4; ++k) {
        const double q = 1.0 - eps * std::pow(10.0, -k);
        const QParam qp(q);
        const double b = bound(id, qp);
        if (is_t23) {
            std::printf("%-4d %-14.10f %-16.10f %-16.10f %-12.3e\n", k, q, b,
                        proof_bound_t23(qp), std::abs(b - limit));
        } else {
            std::printf("%-4d %-14.10f %-16.10f %-12.3e\n", k, q, b, std::abs(b - limit));
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toeplitz-determinant bound verification for the q-derivative class"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "tabulate the closed-form bounds over q");
    double q_min = 0.0, q_max = 0.0;
    int steps = 1;
    std::string format = "csv";
    std::string out_path;
    bounds_cmd->add_option("--q-min", q_min, "lower end of the q grid")->required();
    bounds_cmd->add_option("--q-max", q_max, "upper end of the q grid")->required();
    bounds_cmd->add_option("--steps", steps, "number of grid points");
    bounds_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    bounds_cmd->add_option("--out", out_path, "output file (stdout when omitted)");

    // verify
    auto* verify_cmd =
        app.add_subcommand("verify", "maximize a theorem functional and compare to its bound");
    std::string theorem;
    double q = 0.5;
    SearchConfig cfg;
    std::string mode = "lemma2";
    verify_cmd->add_option("--theorem", theorem, "t22|t23|t32|t31|auxa|auxb")->required();
    verify_cmd->add_option("--q", q, "deformation parameter in (0,1)")->required();
    verify_cmd->add_option("--grid", cfg.grid, "grid points per real dimension");
    verify_cmd->add_option("--refine", cfg.refine_iters, "local refinement iterations");
    verify_cmd->add_option("--seed", cfg.seed, "RNG seed for mix-mode sampling");
    verify_cmd->add_option("--tol", cfg.tol, "refinement convergence tolerance");
    verify_cmd->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    verify_cmd->add_option("--mode", mode, "lemma2 or mix")
        ->check(CLI::IsMember({"lemma2", "mix"}));
    verify_cmd->add_option("--restrict-p-real", cfg.restrict_p_real,
                           "restrict p_1 to the real segment [0,2]");
    verify_cmd->add_option("--out", out_path, "output file (stdout when omitted)");

    // extremal
    auto* extremal_cmd =
        app.add_subcommand("extremal", "emit the analytic extremal candidate for a theorem");
    extremal_cmd->add_option("--theorem", theorem, "theorem with a known witness")->required();
    extremal_cmd->add_option("--q", q, "deformation parameter in (0,1)")->required();
    extremal_cmd->add_option("--out", out_path, "output file (stdout when omitted)");

    // qlimit
    auto* qlimit_cmd =
        app.add_subcommand("qlimit", "print bound values along q -> 1 with the classical limit");
    double eps = 1e-2;
    qlimit_cmd->add_option("--theorem", theorem, "t22|t23|t32|t31|auxa|auxb")->required();
    qlimit_cmd->add_option("--eps", eps, "base offset; q = 1 - eps*10^-k, k = 0..4");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (bounds_cmd->parsed()) {
            return cmd_bounds(q_min, q_max, steps, format, out_path);
        }
        if (verify_cmd->parsed()) {
            cfg.mode = mode == "mix" ? SearchConfig::Mode::mix : SearchConfig::Mode::lemma2;
            return cmd_verify(theorem, q, cfg, out_path);
        }
        if (extremal_cmd->parsed()) {
            return cmd_extremal(theorem, q, out_path);
        }
        if (qlimit_cmd->parsed()) {
            return cmd_qlimit(theorem, eps);
        }
    } catch (const NoKnownWitnessError& e) {
        std::cerr << e.what() << '\n';
        return kExitNoWitness;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return kExitUsage;
}
