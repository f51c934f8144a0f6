// kbip - constructions, structural analysis and independent verification of
// acyclic edge colorings of complete bipartite graphs K_{n,n}.
//
// Exit codes: 0 success, 1 mathematical failure (invalid factorization,
// verification violation, failed case check), 2 invalid arguments or
// malformed input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kbip/analysis.hpp"
#include "kbip/coloring.hpp"
#include "kbip/factorization.hpp"
#include "kbip/field.hpp"
#include "kbip/json_io.hpp"
#include "kbip/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out << contents;
    if (!out)
        throw std::runtime_error("failed writing " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string join_lengths(const std::vector<int>& lengths) {
    std::string out;
    for (std::size_t k = 0; k < lengths.size(); ++k)
        out += (k ? " " : "") + std::to_string(lengths[k]);
    return out;
}

struct Options {
    std::string family;
    std::string target;
    int n = 0;
    int p = 0;
    std::optional<int> generator;
    bool allow_p3 = false;
    bool fast = false;
    int colors = 0;
    int a = -1;
    int b = -1;
    bool all_cases = false;
    int threads = 0;
    std::string cert_path;
    std::string out_path;
    std::string report_path;
};

kbip::FieldContext context_from(const Options& opt) {
    return kbip::make_context(opt.p, opt.generator);
}

int run_factorize(const Options& opt) {
    kbip::Factorization f;
    if (opt.family == "cyclic") {
        f = kbip::cyclic_factorization(opt.n);
    } else {
        f = kbip::p_squared_factorization(context_from(opt));
    }
    const kbip::P1FReport report = kbip::validate_p1f(f, opt.fast, opt.threads);
    if (!opt.out_path.empty())
        write_file(opt.out_path, kbip::factorization_to_json(f).dump() + "\n");
    if (!opt.report_path.empty())
        write_file(opt.report_path, kbip::p1f_report_to_json(report).dump() + "\n");

    std::cout << to_string(f.kind) << " factorization of K_{" << f.n << "," << f.n << "}: ";
    if (report.ok) {
        std::cout << "perfect 1-factorization confirmed (" << report.pairs_checked
                  << " pairs checked)\n";
        return kExitOk;
    }
    std::cout << "NOT a perfect 1-factorization (" << report.failing_pairs.size() << " of "
              << report.pairs_checked << " checked pairs fail)\n";
    for (const auto& failure : report.failing_pairs)
        std::cout << "  pair (" << failure.i << "," << failure.j << "): cycle lengths ["
                  << join_lengths(failure.cycle_lengths) << "]\n";
    return kExitMathFailure;
}

int run_color(const Options& opt) {
    const kbip::FieldContext ctx = context_from(opt);
    const kbip::EdgeColoring coloring =
        opt.target == "kpp" ? kbip::color_kpp(ctx) : kbip::color_kp2(ctx, opt.allow_p3);
    write_file(opt.out_path, kbip::certificate_to_string(coloring));
    std::cout << "wrote certificate: n=" << coloring.n << " colors=" << coloring.num_colors
              << " edges=" << coloring.n * coloring.n << " -> " << opt.out_path << "\n";
    return kExitOk;
}

int run_verify(const Options& opt) {
    const kbip::EdgeColoring coloring = kbip::parse_certificate(read_file(opt.cert_path));
    kbip::VerificationReport report = kbip::check_proper(coloring);
    if (report.proper)
        report = kbip::check_acyclic(coloring, opt.threads);
    if (!opt.out_path.empty())
        write_file(opt.out_path, kbip::verification_report_to_json(report).dump() + "\n");

    if (!report.proper) {
        std::cout << "IMPROPER: " << report.proper_violations.size()
                  << " vertex/color clashes (first at "
                  << (report.proper_violations[0].top_side ? "top" : "bottom") << " vertex "
                  << report.proper_violations[0].vertex << ", color "
                  << report.proper_violations[0].color << ")\n";
        return kExitMathFailure;
    }
    if (!report.acyclic) {
        const auto& w = *report.bichromatic_witness;
        std::cout << "NOT ACYCLIC: bichromatic cycle of length " << w.cycle.size()
                  << " using colors " << w.color_a << " and " << w.color_b << "\n";
        return kExitMathFailure;
    }
    std::cout << "proper and acyclic: n=" << coloring.n << " colors=" << coloring.num_colors
              << ", " << report.pairs_checked << " color pairs checked\n";
    return kExitOk;
}

int run_analyze(const Options& opt) {
    const kbip::FieldContext ctx = context_from(opt);
    std::vector<kbip::CaseReport> reports;
    if (opt.all_cases) {
        reports = kbip::survey(ctx, opt.threads);
    } else {
        if (opt.a < 0 || opt.b < 0 || opt.a >= ctx.p || opt.b >= ctx.p)
            throw CLI::ValidationError("analyze", "--a/--b must lie in 0..p-1 (or pass --all)");
        reports.push_back(kbip::case_report(ctx, opt.a, opt.b));
    }
    if (!opt.out_path.empty())
        write_file(opt.out_path, kbip::case_reports_to_json(reports, ctx.p).dump() + "\n");

    int failures = 0;
    for (const kbip::CaseReport& report : reports) {
        if (report.ok)
            continue;
        ++failures;
        std::cout << "case (" << report.a << "," << report.b << ") FAILED:\n";
        for (const std::string& line : report.diagnostics)
            std::cout << "  " << line << "\n";
    }
    std::cout << reports.size() - failures << "/" << reports.size()
              << " case reports pass for p=" << ctx.p << ", x=" << ctx.x << "\n";
    return failures == 0 ? kExitOk : kExitMathFailure;
}

int run_lowerbound(const Options& opt) {
    const kbip::LowerBoundResult result = kbip::exhaustive_lower_bound(opt.n, opt.colors);
    if (result.exists) {
        std::cout << "acyclic proper coloring exists: n=" << opt.n << ", colors=" << opt.colors
                  << "\n";
        if (!opt.out_path.empty())
            write_file(opt.out_path, kbip::certificate_to_string(*result.witness));
    } else {
        std::cout << "no acyclic proper coloring exists (n=" << opt.n
                  << ", colors=" << opt.colors << ", exhaustive search)\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acyclic edge colorings of K_{n,n} from perfect 1-factorizations"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* factorize = app.add_subcommand("factorize", "build a matching family and check the "
                                                          "Hamiltonian-union property");
    factorize->add_option("--family", opt.family, "cyclic or p2")
        ->required()
        ->check(CLI::IsMember({"cyclic", "p2"}));
    factorize->add_option("--n", opt.n, "side size for the cyclic family (odd)");
    factorize->add_option("--p", opt.p, "odd prime for the p2 family");
    factorize->add_option("--x", opt.generator, "generator override");
    factorize->add_flag("--fast", opt.fast, "stop at the first failing pair");
    factorize->add_option("--out", opt.out_path, "factorization JSON path");
    factorize->add_option("--report", opt.report_path, "validation report JSON path");
    factorize->add_option("--threads", opt.threads, "worker threads (default: KBIP_THREADS or all)");

    CLI::App* color = app.add_subcommand("color", "emit a coloring certificate");
    color->add_option("--target", opt.target, "kpp or kp2")
        ->required()
        ->check(CLI::IsMember({"kpp", "kp2"}));
    color->add_option("--p", opt.p, "odd prime")->required();
    color->add_option("--x", opt.generator, "generator override");
    color->add_flag("--allow-p3", opt.allow_p3,
                    "build the kp2 instance at p=3 (fails verification by design)");
    color->add_option("--out", opt.out_path, "certificate path")->required();

    CLI::App* verify = app.add_subcommand("verify", "check a certificate for properness and "
                                                    "acyclicity");
    verify->add_option("--cert", opt.cert_path, "certificate path")->required();
    verify->add_option("--out", opt.out_path, "verification report JSON path");
    verify->add_option("--threads", opt.threads, "worker threads (default: KBIP_THREADS or all)");

    CLI::App* analyze = app.add_subcommand("analyze", "machine-check the cycle structure of the "
                                                      "p2 family");
    analyze->add_option("--p", opt.p, "odd prime")->required();
    analyze->add_option("--x", opt.generator, "generator override");
    analyze->add_flag("--all", opt.all_cases, "report on all p^2 factors");
    analyze->add_option("--a", opt.a, "first factor coordinate");
    analyze->add_option("--b", opt.b, "second factor coordinate");
    analyze->add_option("--out", opt.out_path, "case report list JSON path");
    analyze->add_option("--threads", opt.threads, "worker threads (default: KBIP_THREADS or all)");

    CLI::App* lowerbound = app.add_subcommand("lowerbound", "exhaustive search for a small "
                                                            "acyclic proper coloring");
    lowerbound->add_option("--n", opt.n, "side size (odd, at most 3)")->required();
    lowerbound->add_option("--colors", opt.colors, "number of colors allowed")->required();
    lowerbound->add_option("--out", opt.out_path, "witness certificate path (when one exists)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (factorize->parsed()) {
            if (opt.family == "cyclic" && opt.n <= 0)
                throw CLI::ValidationError("factorize", "--n is required for the cyclic family");
            if (opt.family == "p2" && opt.p <= 0)
                throw CLI::ValidationError("factorize", "--p is required for the p2 family");
            return run_factorize(opt);
        }
        if (color->parsed())
            return run_color(opt);
        if (verify->parsed())
            return run_verify(opt);
        if (analyze->parsed())
            return run_analyze(opt);
        if (lowerbound->parsed())
            return run_lowerbound(opt);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
