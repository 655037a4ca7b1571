// magicineq: certified checks for the modular-form inequalities behind the
// E8 sphere-packing magic function. Subcommands run the exact identity and
// sign suites, the interval-certified constant comparisons, and pointwise
// sign certificates for A(t) < 0, B(t) > 0 on the imaginary axis.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "magicineq/evaluator.hpp"
#include "magicineq/forms.hpp"
#include "magicineq/report.hpp"
#include "magicineq/verifier.hpp"
#include "magicineq/version.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

using magicineq::Certificate;
using magicineq::FormCache;
using magicineq::FormId;
using magicineq::FormRegistry;
using magicineq::Mutation;
using magicineq::Rational;
using magicineq::Report;
using magicineq::RunConfig;

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::vector<Mutation> fixture_mutations(bool corrupt_theta3) {
    std::vector<Mutation> muts;
    if (corrupt_theta3) muts.push_back(Mutation{FormId::Theta3, 1, Rational(1)});
    return muts;
}

int write_report(const Report& report) {
    std::string body = report.config.format == "tsv" ? report.to_tsv() : report.to_json_string();
    if (report.config.output.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(report.config.output, std::ios::binary);
        if (!out) {
            std::cerr << "magicineq: cannot open output file '" << report.config.output << "'\n";
            return kExitIo;
        }
        out << body;
        if (!out) {
            std::cerr << "magicineq: write failed for '" << report.config.output << "'\n";
            return kExitIo;
        }
    }
    std::cerr << "magicineq " << report.config.suite << ": " << report.passes() << " pass, "
              << report.failures() << " fail, " << report.inconclusives() << " inconclusive\n";
    return report.exit_code();
}

void print_series_table(const FormRegistry& reg) {
    auto print_q_series = [&](const char* label, FormId id, long max_terms) {
        const auto& s = reg.get(id);
        std::cout << label << " = ";
        long shown = 0;
        bool first = true;
        for (const auto& [n, c] : s.coeffs()) {
            if (shown >= max_terms) break;
            std::string cs = c.str_z_convention();
            bool wrap = cs.find(' ') != std::string::npos;
            if (!first) {
                if (!wrap && cs.rfind('-', 0) == 0) {
                    std::cout << " - ";
                    cs = cs.substr(1);
                } else {
                    std::cout << " + ";
                }
            }
            first = false;
            if (wrap) std::cout << "(" << cs << ")";
            else std::cout << cs;
            if (n != 0) std::cout << " q^" << n;
            ++shown;
        }
        std::cout << " + O(q^" << s.order() << ")\n";
    };
    print_q_series("f     ", FormId::FSmall, 4);
    print_q_series("g     ", FormId::GSmall, 4);
    print_q_series("ftilde", FormId::FTilde, 5);
    print_q_series("gtilde", FormId::GTilde, 7);
}

struct Options {
    long order = -1; // resolved per suite
    long precision = 128;
    std::string format = "json";
    std::string output;
    bool timings = false;
    bool corrupt_theta3 = false;
    // eval
    std::string which;
    std::string t_str;
    // scan
    std::string t_min = "1/8";
    std::string t_max = "8";
    int steps = 129;
};

long resolved_order(const Options& opt, const std::string& suite) {
    if (opt.order > 0) return opt.order;
    return suite == "identities" ? 200 : 128;
}

RunConfig make_config(const Options& opt, const std::string& suite) {
    RunConfig cfg;
    cfg.suite = suite;
    cfg.order = resolved_order(opt, suite);
    cfg.precision = static_cast<mpfr_prec_t>(opt.precision);
    cfg.format = opt.format;
    cfg.output = opt.output;
    cfg.timings = opt.timings;
    if (cfg.order < 16) throw magicineq::Error("order must be >= 16");
    if (cfg.precision < 64) throw magicineq::Error("precision must be >= 64");
    return cfg;
}

template <class F>
void timed(Report& report, const std::string& name, F&& f) {
    Stopwatch sw;
    f();
    report.wall_ms.emplace_back(name, sw.ms());
}

int run_suite(const Options& opt, const std::string& suite) {
    Report report;
    report.config = make_config(opt, suite);
    std::vector<Mutation> muts = fixture_mutations(opt.corrupt_theta3);

    if (suite == "identities" || suite == "signs" || suite == "cancellations" ||
        suite == "derivative" || suite == "typo") {
        FormRegistry reg(report.config.order, muts);
        if (suite == "identities") {
            timed(report, "identities", [&] {
                auto certs = magicineq::check_identities(reg);
                report.certificates.insert(report.certificates.end(), certs.begin(), certs.end());
            });
        } else if (suite == "signs") {
            timed(report, "signs", [&] {
                auto certs = magicineq::check_signs(reg);
                report.certificates.insert(report.certificates.end(), certs.begin(), certs.end());
            });
        } else if (suite == "cancellations") {
            timed(report, "cancellations",
                  [&] { report.certificates.push_back(magicineq::check_cancellations(reg)); });
        } else if (suite == "derivative") {
            timed(report, "f1-derivative",
                  [&] { report.certificates.push_back(magicineq::check_F1_derivative(reg)); });
            timed(report, "quadratic-positivity", [&] {
                report.certificates.push_back(
                    magicineq::check_quadratic_positivity(report.config.precision));
            });
            timed(report, "f2-monotonicity", [&] {
                report.certificates.push_back(
                    magicineq::check_F2_monotonicity(reg, report.config.precision));
            });
        } else {
            timed(report, "typo",
                  [&] { report.certificates.push_back(magicineq::check_H_typo(reg)); });
        }
    } else if (suite == "lemmas") {
        timed(report, "lemmas", [&] {
            auto certs = magicineq::check_lemma_constants(report.config.precision);
            report.certificates.insert(report.certificates.end(), certs.begin(), certs.end());
        });
    } else if (suite == "special-values") {
        FormCache cache(muts);
        timed(report, "special-values", [&] {
            auto certs = magicineq::check_special_values(cache, report.config.order,
                                                         report.config.precision);
            report.certificates.insert(report.certificates.end(), certs.begin(), certs.end());
        });
    } else {
        throw magicineq::Error("unknown suite " + suite);
    }
    return write_report(report);
}

int run_eval(const Options& opt) {
    Report report;
    report.config = make_config(opt, "eval");
    report.config.which = opt.which;
    report.config.t = opt.t_str;

    Rational t = Rational::parse(opt.t_str);
    if (t.sign() <= 0) throw magicineq::Error("t must be a positive fraction p/q");

    FormCache cache(fixture_mutations(opt.corrupt_theta3));
    magicineq::EvalParams params;
    params.order = report.config.order;
    params.precision = report.config.precision;

    timed(report, "eval", [&] {
        if (opt.which == "A")
            report.sign_certificates.push_back(magicineq::certify_A_negative(cache, t, params));
        else
            report.sign_certificates.push_back(magicineq::certify_B_positive(cache, t, params));
    });
    return write_report(report);
}

int run_scan(const Options& opt) {
    Report report;
    report.config = make_config(opt, "scan");
    report.config.t_min = opt.t_min;
    report.config.t_max = opt.t_max;
    report.config.steps = opt.steps;

    Rational t_min = Rational::parse(opt.t_min);
    Rational t_max = Rational::parse(opt.t_max);

    FormCache cache(fixture_mutations(opt.corrupt_theta3));
    magicineq::EvalParams params;
    params.order = report.config.order;
    params.precision = report.config.precision;

    timed(report, "scan", [&] {
        auto grid = magicineq::scan(cache, t_min, t_max, opt.steps, params);
        report.grid = std::move(grid.rows);
    });
    return write_report(report);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified checks for the E8 magic-function modular inequalities"};
    app.set_version_flag("--version", MAGICINEQ_VERSION);

    Options opt;
    bool paper_table = false;

    app.add_option("--order", opt.order, "truncation order N (default 128; identities 200)");
    app.add_option("--precision", opt.precision, "working precision in bits (>= 64)")
        ->envname("MAGICINEQ_PRECISION")
        ->default_val(128);
    app.add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"json", "tsv"}))
        ->default_val("json");
    app.add_option("--output", opt.output, "write the report to this file instead of stdout");
    app.add_flag("--timings", opt.timings,
                 "include wall times in the report (off by default to keep bytes deterministic)");
    app.add_flag("--paper-table", paper_table,
                 "print the golden coefficient tables of f, g, ftilde, gtilde and exit");
    app.add_flag("--inject-theta3-defect", opt.corrupt_theta3,
                 "test fixture: corrupt one theta3 coefficient so suites must fail")
        ->group("");

    app.fallthrough();
    app.require_subcommand(0, 1);

    CLI::App* c_ident = app.add_subcommand("identities", "exact residual-zero identity suite");
    CLI::App* c_signs = app.add_subcommand("signs", "finite-order coefficient sign lemmas");
    CLI::App* c_cancel = app.add_subcommand("cancellations", "exact cancellation bookkeeping of the F2/F3 split");
    CLI::App* c_deriv = app.add_subcommand("derivative", "F1 axis derivative, quadratic positivity, F2 monotonicity");
    CLI::App* c_lemmas = app.add_subcommand("lemmas", "certified closed-form constant comparisons");
    CLI::App* c_special = app.add_subcommand("special-values", "series vs closed forms at z = i");
    CLI::App* c_typo = app.add_subcommand("typo", "settle the q^3 coefficient of H empirically");
    CLI::App* c_eval = app.add_subcommand("eval", "single-point sign certificate");
    c_eval->add_option("--which", opt.which, "target inequality")
        ->check(CLI::IsMember({"A", "B"}))
        ->required();
    c_eval->add_option("--t", opt.t_str, "evaluation point as an exact fraction p/q")->required();
    CLI::App* c_scan = app.add_subcommand("scan", "certificate grid over a t range");
    c_scan->add_option("--min", opt.t_min, "grid minimum as p/q")->default_val("1/8");
    c_scan->add_option("--max", opt.t_max, "grid maximum as p/q")->default_val("8");
    c_scan->add_option("--steps", opt.steps, "number of grid points")->default_val(129);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (paper_table) {
            FormRegistry reg(16, fixture_mutations(opt.corrupt_theta3));
            print_series_table(reg);
            return 0;
        }
        if (c_ident->parsed()) return run_suite(opt, "identities");
        if (c_signs->parsed()) return run_suite(opt, "signs");
        if (c_cancel->parsed()) return run_suite(opt, "cancellations");
        if (c_deriv->parsed()) return run_suite(opt, "derivative");
        if (c_lemmas->parsed()) return run_suite(opt, "lemmas");
        if (c_special->parsed()) return run_suite(opt, "special-values");
        if (c_typo->parsed()) return run_suite(opt, "typo");
        if (c_eval->parsed()) return run_eval(opt);
        if (c_scan->parsed()) return run_scan(opt);
        std::cerr << app.help();
        return kExitUsage;
    } catch (const magicineq::Error& e) {
        std::cerr << "magicineq: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "magicineq: internal error: " << e.what() << "\n";
        return 70;
    }
}
