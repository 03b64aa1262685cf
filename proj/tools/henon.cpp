// henon: solve / verify / curve / eigs / constants
//
// exit codes: 0 ok, 1 other error, 2 no convergence, 3 bad flags, 4 verification failed

#include "henon/constants.hpp"
#include "henon/galerkin.hpp"
#include "henon/nk_verifier.hpp"
#include "henon/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

using namespace henon;

namespace {

constexpr int kNoConvergence = 2;
constexpr int kBadFlags = 3;
constexpr int kNotProven = 4;

struct BadFlag : Error {
    explicit BadFlag(const std::string& msg) : Error("bad-flag", msg) {}
};

std::vector<double> split_numbers(const std::string& s, char sep)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size())
                throw BadFlag("bad number '" + tok + "'");
        } catch (const std::logic_error&) {
            throw BadFlag("bad number '" + tok + "'");
        }
    }
    return out;
}

// preset:NAME or peaks:x[,y];x[,y];...
std::vector<SeedPeak> parse_seed(const std::string& s, int N)
{
    if (s.rfind("preset:", 0) == 0) {
        try {
            return seed_preset(s.substr(7), N);
        } catch (const Error& e) {
            throw BadFlag(e.what());
        }
    }
    if (s.rfind("peaks:", 0) == 0) {
        std::vector<SeedPeak> peaks;
        std::stringstream ss(s.substr(6));
        std::string tok;
        while (std::getline(ss, tok, ';')) {
            auto c = split_numbers(tok, ',');
            if (static_cast<int>(c.size()) != N)
                throw BadFlag("peak '" + tok + "' needs " + std::to_string(N) + " coordinates");
            for (double v : c)
                if (!(v > 0 && v < 1))
                    throw BadFlag("peak coordinates must lie in (0,1)");
            peaks.push_back({c, 0.0, 0.0});
        }
        if (peaks.empty())
            throw BadFlag("empty peak list");
        return peaks;
    }
    throw BadFlag("seed must be preset:NAME or peaks:x[,y];...");
}

SpaceTag space_flag(const std::string& s)
{
    try {
        return parse_space(s);
    } catch (const Error& e) {
        throw BadFlag(e.what());
    }
}

GalerkinSolution load_or_flag(const std::string& path)
{
    try {
        return load_solution(path);
    } catch (const Error& e) {
        throw BadFlag(e.what());
    }
}

void print_summary(const GalerkinSolution& u)
{
    std::printf("converged=%s iterations=%d gradient=%.3e peak=%.9g h10_norm=%.9g space=%s M=%d dim=%zu\n",
                u.converged ? "yes" : "no", u.iterations, u.gradient_norm, approx_peak(u), approx_h10_norm(u),
                to_string(u.space.tag).c_str(), u.space.M, u.coeffs.size());
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Galerkin solutions and computer-assisted existence proofs for -Lap u = |x-x0|^l |u|^{p-1} u on (0,1)^N"};
    app.require_subcommand(1);
    int jobs = 1;
    auto* jobs_opt = app.add_option("--jobs", jobs, "worker threads (default: HENON_JOBS or 1)")->check(CLI::PositiveNumber);

    // solve
    auto* solve = app.add_subcommand("solve", "Newton solve from a seed and write a solution file");
    int sN = 1, sM = 40, s_iters = 60;
    double sl = 0, sp = 3, s_tol = 1e-13;
    std::string s_space = "Full", s_seed = "preset:center", s_out, s_branch;
    solve->add_option("--N", sN)->check(CLI::IsMember({1, 2}));
    solve->add_option("--l", sl);
    solve->add_option("--p", sp);
    solve->add_option("--space", s_space);
    solve->add_option("--M", sM)->check(CLI::PositiveNumber);
    solve->add_option("--seed", s_seed, "preset:NAME or peaks:x[,y];...");
    solve->add_option("--out", s_out);
    solve->add_option("--branch-id", s_branch);
    solve->add_option("--tol", s_tol);
    solve->add_option("--max-iters", s_iters);

    // verify
    auto* verify = app.add_subcommand("verify", "Run the verification pipeline on a solution file");
    std::string v_path, v_space, v_report;
    int v_Meig = 0;
    std::optional<double> v_tau;
    verify->add_option("solution", v_path)->required();
    verify->add_option("--Meig", v_Meig, "pencil truncation (default: solution M)");
    verify->add_option("--eig-space", v_space, "space of the pencil (default: solution space)");
    verify->add_option("--tau", v_tau);
    verify->add_option("--report", v_report, "also write the report to this file");

    // curve
    auto* curve = app.add_subcommand("curve", "Continuation in l from a solution file");
    std::string c_from, c_out, c_svg, c_metric = "peak";
    std::optional<double> c_start;
    double c_end = 0, c_step = 0.01;
    bool c_any_gain = false;
    curve->add_option("--from", c_from)->required();
    curve->add_option("--l-start", c_start);
    curve->add_option("--l-end", c_end)->required();
    curve->add_option("--l-step", c_step);
    curve->add_option("--out", c_out, "CSV file (default stdout)");
    curve->add_option("--svg", c_svg);
    curve->add_option("--metric", c_metric)->check(CLI::IsMember({"peak", "norm"}));
    curve->add_flag("--stop-on-any-gain", c_any_gain, "end the branch on any symmetry gain");

    // eigs
    auto* eigs = app.add_subcommand("eigs", "Approximate linearized eigenvalues mu");
    std::string e_path, e_space = "Full";
    int e_k = 5, e_Mdiag = 0, e_Meig = 0;
    bool e_verified = false;
    std::optional<double> e_tau;
    eigs->add_option("solution", e_path)->required();
    eigs->add_option("--k", e_k)->check(CLI::PositiveNumber);
    eigs->add_option("--Mdiag", e_Mdiag, "default 40 (N=1), 30 (N=2)");
    eigs->add_option("--eig-space", e_space);
    eigs->add_flag("--verified", e_verified, "also print verified lambda enclosures");
    eigs->add_option("--Meig", e_Meig, "pencil truncation for --verified (default: solution M)");
    eigs->add_option("--tau", e_tau);

    // constants
    auto* consts = app.add_subcommand("constants", "Print the constants bundle");
    std::string k_path;
    int kN = 1, kM = 40;
    double kl = 0, kp = 3;
    std::optional<double> k_tau;
    consts->add_option("solution", k_path, "solution file (adds the sup bound)");
    consts->add_option("--N", kN)->check(CLI::IsMember({1, 2}));
    consts->add_option("--l", kl);
    consts->add_option("--p", kp);
    consts->add_option("--M", kM)->check(CLI::PositiveNumber);
    consts->add_option("--tau", k_tau);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadFlags;
    }
    if (jobs_opt->count() == 0) {
        if (const char* env = std::getenv("HENON_JOBS"); env && *env) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            jobs = *end == '\0' && v > 0 && v < 100000 ? static_cast<int>(v) : 0;
        }
    }
    if (jobs < 1) {
        std::fprintf(stderr, "error: --jobs / HENON_JOBS must be a positive integer\n");
        return kBadFlags;
    }

    try {
        if (*solve) {
            const ProblemSpec spec{sN, sl, sp};
            const SymmetrySpace space{space_flag(s_space), sN, sM};
            try {
                spec.validate();
                space.validate();
            } catch (const Error& e) {
                throw BadFlag(e.what());
            }
            const auto peaks = parse_seed(s_seed, sN);
            GalerkinSolution u = solve_from_peaks(spec, space, peaks, s_tol, s_iters);
            u.branch_id = s_branch;
            print_summary(u);
            if (!u.converged) {
                std::fprintf(stderr, "newton did not converge: %s\n", u.status.c_str());
                return kNoConvergence;
            }
            if (!s_out.empty())
                save_solution(s_out, u);
            return 0;
        }

        if (*verify) {
            const GalerkinSolution u = load_or_flag(v_path);
            VerifyOptions opt;
            opt.M_eig = v_Meig > 0 ? v_Meig : u.space.M;
            if (!v_space.empty())
                opt.eig_space = space_flag(v_space);
            opt.tau = v_tau;
            opt.jobs = jobs;
            try {
                choose_tau(v_tau);
                if (!u.spec.verified_eligible())
                    throw BadFlag("verification needs even integer l and odd integer p");
                SymmetrySpace{opt.eig_space.value_or(u.space.tag), u.spec.N, opt.M_eig}.validate();
            } catch (const Error& e) {
                throw BadFlag(e.what());
            }
            const auto rep = verify_solution(u, opt);
            const std::string text = certificate_report(u, rep);
            std::fputs(text.c_str(), stdout);
            if (!v_report.empty())
                write_file_atomic(v_report, text);
            return rep.nk.proven ? 0 : kNotProven;
        }

        if (*curve) {
            if (!(c_step > 0))
                throw BadFlag("--l-step must be positive");
            GalerkinSolution seed = load_or_flag(c_from);
            if (c_start && *c_start != seed.spec.l) {
                if (*c_start < 0)
                    throw BadFlag("--l-start must be nonnegative");
                seed.spec.l = *c_start;
                seed = newton_solve(seed);
                if (!seed.converged) {
                    std::fprintf(stderr, "newton did not converge at l-start: %s\n", seed.status.c_str());
                    return kNoConvergence;
                }
            }
            if (c_end < 0)
                throw BadFlag("--l-end must be nonnegative");
            if (seed.branch_id.empty())
                seed.branch_id = "branch";
            const auto res = trace_curve(seed, c_end, c_step, c_any_gain);
            const std::string csv = curve_csv(res.points);
            if (c_out.empty())
                std::fputs(csv.c_str(), stdout);
            else
                write_file_atomic(c_out, csv);
            if (!c_svg.empty())
                write_file_atomic(c_svg, curve_svg(res.points, c_metric == "peak" ? CurveMetric::Peak : CurveMetric::Norm));
            std::fprintf(stderr, "points=%zu stop=%s\n", res.points.size(), res.stop_reason.empty() ? "reached-end" : res.stop_reason.c_str());
            return 0;
        }

        if (*eigs) {
            const GalerkinSolution u = load_or_flag(e_path);
            const int Md = e_Mdiag > 0 ? e_Mdiag : (u.spec.N == 1 ? 40 : 30);
            const SpaceTag es = space_flag(e_space);
            double tau = choose_tau().hi();
            try {
                if (e_tau)
                    tau = choose_tau(e_tau).hi();
                SymmetrySpace{es, u.spec.N, Md}.validate();
            } catch (const Error& e) {
                throw BadFlag(e.what());
            }
            const auto mu = approx_eigs(u, e_k, Md, tau, es);
            int neg = 0;
            for (std::size_t i = 0; i < mu.size(); ++i) {
                std::printf("mu_%zu = %.9g  approx\n", i + 1, mu[i]);
                neg += mu[i] < 0;
            }
            std::printf("negative = %d  approx\n", neg);
            if (e_verified) {
                if (!u.spec.verified_eligible())
                    throw BadFlag("--verified needs even integer l and odd integer p");
                const Interval t = choose_tau(e_tau);
                const SymmetrySpace ps{es, u.spec.N, e_Meig > 0 ? e_Meig : u.space.M};
                const auto E = enclose_generalized_eigs(assemble_pencil(u.spec, u.space, u.coeffs, ps, t, jobs));
                const auto k = compute_constants(u.spec, u.space, u.coeffs, ps.M, t);
                const auto C = apply_lower_bound_correction(E, k.CMtau, k.Wsup);
                for (std::size_t i = 0; i < std::min<std::size_t>(static_cast<std::size_t>(e_k), C.lambda.size()); ++i)
                    std::printf("lambda_%zu = %s  discrete %s\n", i + 1, to_string(C.lambda[i], 9).c_str(), to_string(E.lambda[i], 9).c_str());
                std::printf("lambda_tail_lower = %s\n", format_down(C.tail_lower.lo(), 9).c_str());
            }
            return 0;
        }

        if (*consts) {
            Interval tau;
            try {
                tau = choose_tau(k_tau);
            } catch (const Error& e) {
                throw BadFlag(e.what());
            }
            ProblemSpec spec{kN, kl, kp};
            std::optional<GalerkinSolution> u;
            if (!k_path.empty()) {
                u = load_or_flag(k_path);
                spec = u->spec;
            }
            try {
                spec.validate();
            } catch (const Error& e) {
                throw BadFlag(e.what());
            }
            auto line = [](const char* k, const Interval& v) { std::printf("%s = %s\n", k, to_string(v, 9).c_str()); };
            line("tau", tau);
            line("C2", embed_C2(spec.N, tau));
            line("Cp1", embed_Cp(spec.N, spec.p + 1, tau));
            line("CM", proj_CM(kM));
            line("CMtau", proj_CMtau(kM, tau));
            line("d", weight_d(spec));
            if (u) {
                if (!spec.verified_eligible())
                    throw BadFlag("sup bound needs even integer l and odd integer p");
                const auto w = wsup_bound(spec, u->space, u->coeffs, tau);
                line("Wsup", w.value);
            }
            return 0;
        }
    } catch (const BadFlag& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadFlags;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.code() == "invalid-tau" || e.code() == "unsupported-space" || e.code() == "bad-problem" ? kBadFlags : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
