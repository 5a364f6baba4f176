// Command-line driver: loads signature/geometry/Hamiltonian/potential files,
// runs the requested checks and prints deterministic reports.
//
// Exit codes: 0 all checks hold, 1 a check fails (first failing defect is
// printed canonically), 2 usage error, 3 parse/validation error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sftweyl/dmodule.hpp"
#include "sftweyl/errors.hpp"
#include "sftweyl/homology.hpp"
#include "sftweyl/identities.hpp"
#include "sftweyl/io.hpp"
#include "sftweyl/selftest.hpp"

using namespace sftweyl;

namespace {

constexpr const char* kDefaultWindowSpec = "hbar=-3..1,pq=5,t=3,z=3";

struct Options {
    std::string sig_path, geo_path, ham_path, ham_plus_path, ham_minus_path, potential_path;
    std::string series_path;
    std::string window_spec = kDefaultWindowSpec;
    std::string check_window_spec;
    std::string src_window_spec;
    std::string ham_window_spec;
    std::string format = "text";
    std::string tvar;
    std::string cov_op = "t";
    std::string probe_end = "-";
    std::string alpha, beta;
    std::vector<std::string> probes;
    bool certificates = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Inputs {
    SignaturePtr sig;
    GeometryData geo;
    TruncationWindow window;
    TruncationWindow check_window;
};

Inputs load_inputs(const Options& opt) {
    Inputs in;
    SignatureFile sf = parse_signature_file(read_file(opt.sig_path));
    in.sig = sf.signature;
    in.geo = std::move(sf.geometry);
    if (!opt.geo_path.empty()) in.geo = parse_geometry(read_file(opt.geo_path), *in.sig);
    in.window = TruncationWindow::parse(opt.window_spec);
    in.check_window =
        opt.check_window_spec.empty() ? in.window : TruncationWindow::parse(opt.check_window_spec);
    return in;
}

Series load_series(const std::string& path, const Inputs& in) {
    return parse_series(read_file(path), in.sig, in.window);
}

// Potentials live in the cobordism space: p and q letters belong to opposite
// ends and never contract.
Series load_potential(const std::string& path, const Inputs& in) {
    return make_potential(parse_series(read_file(path), in.sig, in.window, ProductKind::Super));
}

void parse_tvar(const std::string& spec, const AlgebraSignature& sig, int& form, int& level) {
    auto comma = spec.find(',');
    if (comma == std::string::npos)
        throw ValidationError("expected '<form-id>,<level>' but got '" + spec + "'");
    std::string id = spec.substr(0, comma);
    auto idx = sig.find_form(id);
    if (!idx) throw ValidationError("unknown form id '" + id + "'");
    form = *idx;
    try {
        level = std::stoi(spec.substr(comma + 1));
    } catch (...) {
        throw ValidationError("bad descendant level in '" + spec + "'");
    }
    if (level < 0) throw ValidationError("descendant level must be nonnegative");
}

class Reporter {
public:
    Reporter(bool kv, std::ostream& out) : kv_(kv), out_(out) {}

    void report(const CheckReport& rep) {
        if (kv_) {
            out_ << "check=" << rep.label << "\n";
            out_ << "status=" << status_string(rep.status) << "\n";
            out_ << "defect=" << print_canonical(rep.defect) << "\n";
            if (rep.certificate)
                out_ << "certificate=" << print_canonical(*rep.certificate) << "\n";
            out_ << "window=" << rep.window.str() << "\n";
        } else {
            out_ << rep.label << ": " << status_string(rep.status);
            if (!rep.defect.is_zero()) out_ << " (defect = " << print_canonical(rep.defect) << ")";
            if (rep.certificate)
                out_ << " (certificate = " << print_canonical(*rep.certificate) << ")";
            out_ << " [window " << rep.window.str() << "]\n";
        }
        ok_ = ok_ && rep.holds();
    }

    bool all_hold() const { return ok_; }

private:
    bool kv_;
    std::ostream& out_;
    bool ok_ = true;
};

int run_command(const std::string& command, const Options& opt) {
    Reporter reporter(opt.format == "kv", std::cout);
    CertificateSearch certs{opt.certificates};

    if (command == "print") {
        Inputs in = load_inputs(opt);
        Series f = parse_series(read_file(opt.series_path), in.sig, in.window);
        std::cout << print_canonical(f) << "\n";
        return 0;
    }
    if (command == "selftest") {
        uint64_t seed = 1;
        if (const char* env = std::getenv("SFTWEYL_SEED")) seed = std::strtoull(env, nullptr, 10);
        bool ok = true;
        for (const PropertyResult& r : run_property_suite(seed)) {
            std::cout << (r.ok ? "pass" : "FAIL") << ": " << r.name;
            if (!r.ok) std::cout << " -- " << r.detail;
            std::cout << "\n";
            ok = ok && r.ok;
        }
        return ok ? 0 : 1;
    }
    if (command == "homology") {
        Inputs in = load_inputs(opt);
        TruncationWindow dst = in.check_window;
        TruncationWindow src;
        if (!opt.src_window_spec.empty()) {
            src = TruncationWindow::parse(opt.src_window_spec);
        } else {
            src = dst;
            src.max_pq_letters += 1;
            src.hbar_min -= 1;
        }
        // the Hamiltonian is operator data, not slice data: parse it in a
        // window of its own, defaulting to the basis windows joined with the
        // standard default
        TruncationWindow hamw =
            opt.ham_window_spec.empty()
                ? join_window(TruncationWindow::parse(kDefaultWindowSpec),
                              join_window(src, dst))
                : TruncationWindow::parse(opt.ham_window_spec);
        Series H = parse_series(read_file(opt.ham_path), in.sig, hamw);
        HomologyResult res = homology_basis(H, src, dst);
        if (opt.format == "kv") {
            std::cout << "rank_kernel=" << res.rank_kernel << "\n";
            std::cout << "rank_image=" << res.rank_image << "\n";
            std::cout << "representatives=" << res.representatives.size() << "\n";
            for (const Series& r : res.representatives)
                std::cout << "representative=" << print_canonical(r) << "\n";
        } else {
            std::cout << "rank ker = " << res.rank_kernel << ", rank im = " << res.rank_image
                      << ", homology representatives = " << res.representatives.size() << "\n";
            for (const Series& r : res.representatives)
                std::cout << "  " << print_canonical(r) << "\n";
        }
        return 0;
    }

    if (command == "master") {
        Inputs in = load_inputs(opt);
        Series H = load_series(opt.ham_path, in);
        reporter.report(check_master(H, in.check_window));
    } else if (command == "commute") {
        Inputs in = load_inputs(opt);
        Series H = load_series(opt.ham_path, in);
        int fa, la, fb, lb;
        parse_tvar(opt.alpha, *in.sig, fa, la);
        parse_tvar(opt.beta, *in.sig, fb, lb);
        auto [r1, r2] = check_descendant_commutation(H, fa, la, fb, lb, in.check_window);
        reporter.report(r1);
        reporter.report(r2);
    } else if (command == "string") {
        Inputs in = load_inputs(opt);
        Series H = load_series(opt.ham_path, in);
        reporter.report(string_defect(H, in.geo, in.check_window, certs));
    } else if (command == "dilaton") {
        Inputs in = load_inputs(opt);
        Series H = load_series(opt.ham_path, in);
        reporter.report(dilaton_defect(H, in.check_window, certs));
    } else if (command == "divisor") {
        Inputs in = load_inputs(opt);
        Series H = load_series(opt.ham_path, in);
        reporter.report(divisor_defect(H, in.geo, in.check_window, certs));
    } else if (command == "t0") {
        Inputs in = load_inputs(opt);
        Series H = load_series(opt.ham_path, in);
        T0Reports reps = check_t0_specializations(H, in.geo, in.check_window, certs);
        reporter.report(reps.divisor);
        reporter.report(reps.dilaton);
        reporter.report(reps.string);
    } else if (command == "dsquared") {
        Inputs in = load_inputs(opt);
        Series H = load_series(opt.ham_path, in);
        TruncationWindow w = in.check_window;
        if (!w.max_t_level) w.max_t_level = max_descendant_level(H);
        reporter.report(check_dsquared(H, w, w, w));
    } else if (command == "fundamental" || command == "chainmap" || command == "covariance") {
        Inputs in = load_inputs(opt);
        Series Hp = load_series(opt.ham_plus_path, in);
        Series Hm = load_series(opt.ham_minus_path, in);
        Series F = load_potential(opt.potential_path, in);
        if (command == "fundamental") {
            reporter.report(check_fundamental(F, Hp, Hm, in.check_window));
        } else if (command == "chainmap") {
            End end = opt.probe_end == "+" ? End::Plus : End::Minus;
            std::vector<std::pair<Series, End>> probes;
            for (const std::string& text : opt.probes)
                probes.emplace_back(parse_series(text, in.sig, in.window), end);
            reporter.report(check_chain_map(F, Hp, Hm, probes, in.check_window));
        } else {
            if (opt.cov_op == "divisor") {
                int max_level = std::max(max_descendant_level(Hp),
                                         std::max(max_descendant_level(Hm),
                                                  max_descendant_level(F)));
                FirstOrderOp op = divisor_operator(*in.sig, in.geo, max_level);
                reporter.report(check_covariance(F, Hp, Hm, op, in.check_window));
            } else {
                int form, level;
                parse_tvar(opt.tvar, *in.sig, form, level);
                reporter.report(check_covariance(F, Hp, Hm, form, level, in.check_window));
            }
        }
    } else {
        std::cerr << "unknown check '" << command << "'\n";
        return 2;
    }
    return reporter.all_hold() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact identity checker for graded Weyl/Poisson algebras of "
                 "symplectic field theory with gravitational descendants"};
    app.require_subcommand(1);

    Options opt;
    std::string check_name;

    auto add_common = [&](CLI::App* cmd, bool ham, bool geo, bool cobordism) {
        cmd->add_option("--sig", opt.sig_path, "signature file")->required();
        cmd->add_option("--window", opt.window_spec, "truncation window");
        cmd->add_option("--check-window", opt.check_window_spec,
                        "window the defect is reported in (defaults to --window)");
        cmd->add_option("--format", opt.format, "report format")
            ->check(CLI::IsMember({"text", "kv"}));
        if (geo) cmd->add_option("--geo", opt.geo_path, "geometry file");
        if (ham) cmd->add_option("--ham", opt.ham_path, "Hamiltonian file")->required();
        if (cobordism) {
            cmd->add_option("--ham-plus", opt.ham_plus_path, "positive-end Hamiltonian")
                ->required();
            cmd->add_option("--ham-minus", opt.ham_minus_path, "negative-end Hamiltonian")
                ->required();
            cmd->add_option("--potential", opt.potential_path, "cobordism potential")->required();
        }
    };

    CLI::App* check = app.add_subcommand("check", "run an identity check");
    check->require_subcommand(1);
    struct Spec {
        const char* name;
        bool ham, geo, cobordism;
    };
    const Spec specs[] = {
        {"master", true, false, false},   {"commute", true, false, false},
        {"string", true, true, false},    {"dilaton", true, false, false},
        {"divisor", true, true, false},   {"t0", true, true, false},
        {"dsquared", true, false, false}, {"fundamental", false, false, true},
        {"chainmap", false, false, true}, {"covariance", false, true, true},
    };
    for (const Spec& s : specs) {
        CLI::App* cmd = check->add_subcommand(s.name);
        add_common(cmd, s.ham, s.geo, s.cobordism);
        if (std::string(s.name) == "commute") {
            cmd->add_option("--alpha", opt.alpha, "first t variable, '<form>,<level>'")->required();
            cmd->add_option("--beta", opt.beta, "second t variable, '<form>,<level>'")->required();
        }
        if (std::string(s.name) == "chainmap") {
            cmd->add_option("--probe", opt.probes, "probe expression (repeatable)")->required();
            cmd->add_option("--end", opt.probe_end, "probe end")->check(CLI::IsMember({"+", "-"}));
        }
        if (std::string(s.name) == "covariance") {
            cmd->add_option("--op", opt.cov_op, "operator: t or divisor")
                ->check(CLI::IsMember({"t", "divisor"}));
            cmd->add_option("--tvar", opt.tvar, "t variable for --op t, '<form>,<level>'");
        }
        if (std::string(s.name) == "string" || std::string(s.name) == "dilaton" ||
            std::string(s.name) == "divisor" || std::string(s.name) == "t0") {
            cmd->add_flag("--certificates", opt.certificates,
                          "search for exactness certificates on failure");
        }
        cmd->callback([&, name = std::string(s.name)] { check_name = name; });
    }

    CLI::App* homology = app.add_subcommand("homology", "kernel/image ranks and representatives");
    add_common(homology, true, false, false);
    homology->add_option("--src-window", opt.src_window_spec,
                         "source window (defaults to the check window enlarged by one pq letter "
                         "and one hbar step)");
    homology->add_option("--ham-window", opt.ham_window_spec,
                         "window the Hamiltonian is parsed in (defaults to the basis windows "
                         "joined with the standard default window)");
    homology->callback([&] { check_name = "homology"; });

    CLI::App* print_cmd = app.add_subcommand("print", "canonicalize a series file");
    print_cmd->add_option("--sig", opt.sig_path, "signature file")->required();
    print_cmd->add_option("--series", opt.series_path, "series file")->required();
    print_cmd->add_option("--window", opt.window_spec, "truncation window");
    print_cmd->callback([&] { check_name = "print"; });

    CLI::App* selftest = app.add_subcommand("selftest", "randomized property battery");
    selftest->callback([&] { check_name = "selftest"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return run_command(check_name, opt);
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NoDivisorForm& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
