#include "grk/errors.hpp"
#include "grk/experiments.hpp"
#include "grk/gr_engine.hpp"
#include "grk/module_io.hpp"
#include "grk/scan.hpp"
#include "grk/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace grk;

namespace {

enum Exit { kOk = 0, kFailed = 1, kInput = 2, kCap = 3, kPrecondition = 4 };

void emit_module(const KroneckerModule& m, const std::string& out) {
    if (out.empty())
        std::cout << module_to_json(m) << '\n';
    else
        write_module_file(out, m);
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty())
        return std::cout;
    file.open(path);
    if (!file)
        throw InputError("cannot write " + path);
    return file;
}

std::string rows_of(const Subspace& u) {
    std::string out = "[";
    for (std::size_t r = 0; r < u.dim(); ++r) {
        out += r ? " " : "";
        for (auto x : u.basis().row(r))
            out += std::to_string(x);
    }
    return out + "]";
}

// Length, dimension vector and the canonical bases of U1 and U2.
std::string describe(const SubmodulePair& s) {
    return std::to_string(s.length()) + " " + to_string(s.dim()) + " U1=" + rows_of(s.u1) + " U2=" + rows_of(s.u2);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gabriel-Roiter measures of n-Kronecker modules over F_q"};
    app.require_subcommand(1);
    app.fallthrough();

    Caps caps;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "random seed");
    app.add_option("--cap-subspace", caps.subspace, "bound on q^d for subspace enumeration");
    app.add_option("--cap-submodule-length", caps.submodule_length, "longest module whose lattice is enumerated");
    app.add_option("--cap-idempotent", caps.idempotent, "bound on q^dim End for the idempotent search");
    app.add_option("--cap-hom-scan", caps.hom_scan, "bound on q^dim Hom for the isomorphism scan");
    app.add_option("--cap-tuples", caps.tuples, "bound on q^(n d1 d2) for literal tuple enumeration");
    app.add_option("--cap-extension", caps.extension_candidates, "extension candidates per dimension vector");
    app.add_option("--cap-oracle-length", caps.oracle_length, "longest module accepted by the oracle");

    // measure
    auto* measure = app.add_subcommand("measure", "print the GR measure of a module file");
    std::string measure_file;
    bool chain = false, gr_subs = false, oracle = false;
    measure->add_option("file", measure_file, "module JSON")->required();
    measure->add_flag("--chain", chain, "print a chain realizing the measure");
    measure->add_flag("--gr-submodules", gr_subs, "print the GR submodules");
    measure->add_flag("--oracle", oracle, "cross-check with the brute-force oracle");

    // make
    auto* make = app.add_subcommand("make", "construct a named module");
    std::string kind, make_out;
    std::vector<std::string> params;
    unsigned n = 3, q = 2;
    make->add_option("kind", kind, "simple | p | q | regular2k | regular2k_inf | preproj2k | preinj2k")->required();
    make->add_option("params", params, "integer parameters (lambda may be 'inf')");
    make->add_option("--n", n, "number of arrows");
    make->add_option("--q", q, "prime field size");
    make->add_option("--out", make_out, "output file (default: stdout)");

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "compare two measures in the GR order");
    std::string lhs, rhs;
    compare_cmd->add_option("I", lhs)->required();
    compare_cmd->add_option("J", rhs)->required();

    // tau
    auto* tau = app.add_subcommand("tau", "Auslander-Reiten translate of a module file");
    std::string tau_file, tau_out;
    bool inverse = false;
    tau->add_option("file", tau_file)->required();
    tau->add_flag("--inverse", inverse, "apply the inverse translate");
    tau->add_option("--out", tau_out, "output file (default: stdout)");

    // hom
    auto* hom = app.add_subcommand("hom", "dim Hom and dim Ext^1 with the Euler form check");
    std::string hom_x, hom_y;
    hom->add_option("X", hom_x)->required();
    hom->add_option("Y", hom_y)->required();

    // scan
    auto* scan = app.add_subcommand("scan", "catalog of realized measures as CSV");
    ScanOptions sopt;
    std::string mode = "exhaustive", scan_out, upper;
    scan->add_option("--n", sopt.n);
    scan->add_option("--q", sopt.q);
    scan->add_option("--max-length", sopt.max_length);
    scan->add_option("--mode", mode, "exhaustive | sampled | families");
    scan->add_option("--samples", sopt.samples, "random tuples in sampled mode");
    scan->add_option("--upper", upper, "exhaustive mode: keep only measures <= this");
    scan->add_option("--out", scan_out, "output file (default: stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite, report_out;
    VerifyParams vp;
    bool json = false;
    std::string suite_help = "one of:";
    for (const auto& s : verify_suite_names())
        suite_help += " " + s;
    verify->add_option("suite", suite, suite_help)->required();
    verify->add_option("--n", vp.n);
    verify->add_option("--q", vp.q);
    verify->add_option("--m", vp.m);
    verify->add_option("--depth", vp.depth);
    verify->add_option("--max-length", vp.max_length);
    verify->add_option("--families-length", vp.families_length);
    verify->add_option("--samples", vp.samples);
    verify->add_flag("--json", json, "print the machine-readable summary");
    verify->add_option("--report", report_out, "write the suite's report payload (JSON) to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    try {
        if (*measure) {
            const auto m = read_module_file(measure_file);
            const auto mu = gr_measure(m, caps);
            std::cout << format_measure(mu) << '\n';
            if (chain) {
                std::cout << "chain:\n";
                for (const auto& s : witness_chain(m, caps))
                    std::cout << "  " << describe(s) << '\n';
            }
            if (gr_subs) {
                const auto subs = gr_submodules(m, caps);
                std::cout << "gr-submodules: " << subs.size() << '\n';
                for (const auto& s : subs)
                    std::cout << "  " << describe(s) << '\n';
            }
            if (oracle) {
                const auto o = gr_measure_oracle(m, caps);
                if (o != mu) {
                    std::cout << "oracle " << format_measure(o) << " DISAGREES\n";
                    return kFailed;
                }
                std::cout << "oracle " << format_measure(o) << " agrees\n";
            }
        } else if (*make) {
            emit_module(construct_family(kind, params, n, q), make_out);
        } else if (*compare_cmd) {
            const auto c = compare(parse_measure(lhs), parse_measure(rhs));
            std::cout << (c < 0 ? "<" : c > 0 ? ">" : "=") << '\n';
        } else if (*tau) {
            const auto m = read_module_file(tau_file);
            emit_module(inverse ? tau_inverse_module(m, caps) : tau_module(m, caps), tau_out);
        } else if (*hom) {
            const auto x = read_module_file(hom_x);
            const auto y = read_module_file(hom_y);
            if (x.n() != y.n() || x.q() != y.q())
                throw InputError("modules over different (n, q)");
            const auto he = hom_ext(x, y);
            const auto h = static_cast<std::int64_t>(he.hom_basis.size());
            const auto e = static_cast<std::int64_t>(he.ext_dim);
            const auto euler = euler_form(x.dim(), y.dim(), x.n());
            std::cout << "hom=" << h << " ext=" << e << " euler=" << euler << (h - e == euler ? " OK" : " MISMATCH")
                      << '\n';
            if (h - e != euler)
                return kFailed;
        } else if (*scan) {
            sopt.mode = parse_scan_mode(mode);
            sopt.seed = seed;
            sopt.threads = threads;
            sopt.caps = caps;
            if (!upper.empty())
                sopt.upper = parse_measure(upper);
            const auto result = scan_realized(sopt);
            std::ofstream file;
            write_catalog_csv(open_out(scan_out, file), result);
            if (!result.skipped.empty())
                std::cerr << result.skipped.size() << " dimension vector(s) skipped at the caps\n";
        } else if (*verify) {
            vp.seed = seed;
            vp.threads = threads;
            vp.caps = caps;
            const auto r = run_verify_suite(suite, vp);
            if (json) {
                std::cout << verify_result_json(r) << '\n';
            } else {
                std::cout << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.cases << " cases, "
                          << r.failures << " failures, " << r.seconds << " s)\n";
                for (const auto& d : r.details)
                    std::cout << "  " << d << '\n';
            }
            if (!report_out.empty()) {
                std::ofstream file;
                open_out(report_out, file) << (r.payload.empty() ? "{}" : r.payload) << '\n';
            }
            return r.pass ? kOk : kFailed;
        }
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << '\n';
        return kPrecondition;
    } catch (const CapExceeded& e) {
        std::cerr << "cap: " << e.what() << '\n';
        return kCap;
    } catch (const InputError& e) {
        std::cerr << "input: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kOk;
}
