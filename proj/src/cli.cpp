#include "factorcert/cli.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "factorcert/constructions.hpp"
#include "factorcert/io.hpp"
#include "factorcert/kernels.hpp"
#include "factorcert/linalg.hpp"

namespace factorcert {

namespace {

struct CliOptions {
    double tol = 1e-9;
    Limits lim;
    unsigned long long seed = 0;
};

std::string read_input(const std::string& path, std::istream& in) {
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
    } else {
        std::ifstream file(path, std::ios::binary);
        if (!file) throw Error("cannot open input file '" + path + "'");
        buf << file.rdbuf();
    }
    return buf.str();
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open output file '" + path + "'");
    file << content;
}

template <typename T>
T load(const std::string& path, const char* kind, const CliOptions& opt, std::istream& in) {
    DocumentEnvelope doc = parse_document(read_input(path, in), opt.lim);
    if (!std::holds_alternative<T>(doc.payload)) {
        throw ParseError("expected a " + std::string(kind) + " document, got '" + doc.kind + "'");
    }
    return std::get<T>(std::move(doc.payload));
}

void print_report(std::ostream& out, Report r) {
    out << emit_document(make_document(std::move(r)));
}

int cmd_verify_channel(const std::string& file, const CliOptions& opt, std::istream& in,
                       std::ostream& out, std::ostream& err) {
    const QuantumChannel t = load<QuantumChannel>(file, "channel", opt, in);
    const bool ok = is_cptp_unital(t, opt.tol);
    Report r;
    r.add("command", std::string("verify-channel"))
        .add("verdict", ok)
        .add("dim", static_cast<long long>(t.dim))
        .add("kraus_count", static_cast<long long>(t.kraus.size()))
        .add("tol", opt.tol);
    print_report(out, std::move(r));
    if (!ok) {
        err << "verify-channel: refuted, not a unital CPTP map at tolerance " << opt.tol << "\n";
        return 1;
    }
    return 0;
}

int cmd_verify_mixture(const std::string& file, const CliOptions& opt, std::istream& in,
                       std::ostream& out, std::ostream& err) {
    const RationalMixtureCert cert = load<RationalMixtureCert>(file, "mixture-cert", opt, in);
    const MixtureVerification mv = verify_mixture_cert(cert, opt.tol);
    Report r;
    r.add("command", std::string("verify-mixture"))
        .add("verdict", mv.verdict)
        .add("n", static_cast<long long>(cert.n))
        .add("k", static_cast<long long>(cert.k))
        .add("terms", static_cast<long long>(cert.terms.size()))
        .add("choi_error", mv.choi_error)
        .add("tol", opt.tol);
    if (!mv.verdict) {
        r.add("failure", std::string("hypothesis: mixture is not of the form T (x) S_k"));
    }
    print_report(out, std::move(r));
    if (!mv.verdict) {
        err << "verify-mixture: refuted, mixture does not tensor-factor (Choi distance "
            << mv.choi_error << ")\n";
        return 1;
    }
    return 0;
}

int cmd_verify_factorization(const std::string& channel_file, const std::string& cert_file,
                             const CliOptions& opt, std::istream& in, std::ostream& out,
                             std::ostream& err) {
    const QuantumChannel t = load<QuantumChannel>(channel_file, "channel", opt, in);
    const MatrixFactorizationCert cert =
        load<MatrixFactorizationCert>(cert_file, "matrix-cert", opt, in);
    const FactorizationReport rep = verify_matrix_factorization(cert, t, opt.tol);
    Report r;
    r.add("command", std::string("verify-factorization"))
        .add("verdict", rep.verdict)
        .add("unitary", rep.unitary)
        .add("max_error", rep.max_error)
        .add("failing_row", static_cast<long long>(rep.failing_row))
        .add("failing_col", static_cast<long long>(rep.failing_col))
        .add("tol", opt.tol);
    print_report(out, std::move(r));
    if (!rep.unitary) {
        err << "verify-factorization: certificate unitary data fails unitarity at tolerance "
            << opt.tol << "\n";
        return 2;
    }
    if (!rep.verdict) {
        err << "verify-factorization: refuted, max matrix-unit error " << rep.max_error << "\n";
        return 1;
    }
    return 0;
}

int cmd_verify_direct_sum(const std::string& channel_file, const std::string& cert_file,
                          const CliOptions& opt, std::istream& in, std::ostream& out,
                          std::ostream& err) {
    const QuantumChannel t = load<QuantumChannel>(channel_file, "channel", opt, in);
    const DirectSumFactorizationCert cert =
        load<DirectSumFactorizationCert>(cert_file, "direct-sum-cert", opt, in);
    const DirectSumReport rep = verify_direct_sum_factorization(cert, t, opt.tol);
    Report r;
    r.add("command", std::string("verify-direct-sum"))
        .add("verdict", rep.verdict)
        .add("unitary", rep.unitary)
        .add("choi_error", rep.choi_error)
        .add("tol", opt.tol);
    print_report(out, std::move(r));
    if (!rep.unitary) {
        err << "verify-direct-sum: a certificate block fails unitarity at tolerance " << opt.tol
            << "\n";
        return 2;
    }
    if (!rep.verdict) {
        err << "verify-direct-sum: refuted, Choi distance " << rep.choi_error << "\n";
        return 1;
    }
    return 0;
}

int cmd_lift(const std::string& file, const std::string& out_path, const CliOptions& opt,
             std::istream& in, std::ostream& out) {
    const RationalMixtureCert cert = load<RationalMixtureCert>(file, "mixture-cert", opt, in);
    MatrixFactorizationCert lifted = lift_rational_mixture(cert, opt.tol, opt.lim);
    write_output(out_path, emit_document(make_document(std::move(lifted))), out);
    return 0;
}

int cmd_collapse(const std::string& file, const std::string& out_path, const CliOptions& opt,
                 std::istream& in, std::ostream& out) {
    const DirectSumFactorizationCert cert =
        load<DirectSumFactorizationCert>(file, "direct-sum-cert", opt, in);
    MatrixFactorizationCert collapsed = collapse_direct_sum(cert, opt.tol, opt.lim);
    write_output(out_path, emit_document(make_document(std::move(collapsed))), out);
    return 0;
}

int cmd_fg_check(const std::string& channel_file, const std::string& witness_file,
                 const CliOptions& opt, std::istream& in, std::ostream& out, std::ostream& err) {
    const QuantumChannel t = load<QuantumChannel>(channel_file, "channel", opt, in);
    const FreeGroupWitness w = load<FreeGroupWitness>(witness_file, "fg-witness", opt, in);
    const SymbolicCheckReport rep = symbolic_factorization_check(w.coeffs, w.words, t, opt.tol);
    Report r;
    r.add("command", std::string("fg-check"))
        .add("verdict", rep.verified())
        .add("unitary", rep.unitary)
        .add("factorizes", rep.factorizes)
        .add("unitarity_error", rep.unitarity_error)
        .add("choi_error", rep.choi_error)
        .add("offending_word", rep.offending_word)
        .add("tol", opt.tol);
    print_report(out, std::move(r));
    if (!rep.verified()) {
        err << "fg-check: refuted ("
            << (rep.unitary ? "induced channel deviates" : "u*u, uu* fail off the identity word")
            << ")\n";
        return 1;
    }
    return 0;
}

int cmd_zoo_emit(const std::string& name, const std::string& part, const std::string& out_path,
                 const CliOptions& opt, std::ostream& out) {
    const ZooBundle bundle = zoo(name, opt.lim);
    std::string content;
    if (part == "channel") {
        content = emit_document(make_document(bundle.channel));
    } else if (part == "mixture") {
        if (!bundle.mixture) throw ParseError("zoo: '" + name + "' has no mixture certificate");
        content = emit_document(make_document(*bundle.mixture));
    } else if (part == "lift") {
        if (!bundle.lift) throw ParseError("zoo: '" + name + "' has no lifted certificate");
        content = emit_document(make_document(*bundle.lift));
    } else if (part == "spin") {
        if (!bundle.spin) throw ParseError("zoo: '" + name + "' has no spin certificate");
        content = emit_document(make_document(*bundle.spin));
    } else if (part == "fg-witness") {
        if (!bundle.fg_witness) throw ParseError("zoo: '" + name + "' has no free-group witness");
        content = emit_document(make_document(*bundle.fg_witness));
    } else {
        throw ParseError("zoo: unknown part '" + part +
                         "'; known: channel, mixture, lift, spin, fg-witness");
    }
    write_output(out_path, content, out);
    return 0;
}

int cmd_self_test(const CliOptions& opt, std::ostream& out, std::ostream& err) {
    std::mt19937_64 rng(opt.seed);
    long long cases = 0;
    std::string first_failure;
    const auto check = [&](bool ok, const std::string& name) {
        ++cases;
        if (!ok) {
            if (first_failure.empty()) first_failure = name;
            err << "self-test: FAIL " << name << "\n";
        }
    };

    {
        const std::size_t n = 24, k = 3;
        const ComplexMatrix a = random_matrix(n, n, rng);
        const ComplexMatrix b = random_matrix(n, n, rng);
        ComplexMatrix want(n, n), got(n, n);
        kernels::matmul(a.data(), b.data(), got.data(), n, n, n);
        reference::matmul(a.data(), b.data(), want.data(), n, n, n);
        check(got == want, "kernel matmul agreement");
        const ComplexMatrix big = random_matrix(n * k, n * k, rng);
        ComplexMatrix pw(n, n), pg(n, n);
        kernels::partial_trace_right(big.data(), n, k, pg.data());
        reference::partial_trace_right(big.data(), n, k, pw.data());
        check(pg == pw, "kernel partial-trace agreement");
    }

    for (int it = 0; it < 3; ++it) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 2);
        const std::size_t k = 2;
        const std::size_t d = 2 + static_cast<std::size_t>(rng() % 2);
        std::vector<long long> parts(d);
        long long total = 0;
        for (auto& p : parts) {
            p = 1 + static_cast<long long>(rng() % 5);
            total += p;
        }
        auto [wc, wu] = weyl_mixture(k);
        RationalMixtureCert cert;
        cert.n = n;
        cert.k = k;
        for (std::size_t i = 0; i < d; ++i) {
            const ComplexMatrix v = random_unitary(n, rng);
            for (std::size_t j = 0; j < wu.size(); ++j) {
                cert.terms.push_back({Rational(parts[i], total) * wc[j], kron(v, wu[j], opt.lim)});
            }
        }
        const MixtureVerification mv = verify_mixture_cert(cert, opt.tol);
        check(mv.verdict, "mixture tensor-factor hypothesis");
        const MatrixFactorizationCert lifted = lift_rational_mixture(cert, opt.tol, opt.lim);
        check(verify_matrix_factorization(lifted, mv.recovered, opt.tol).verdict,
              "lift round-trip");
    }

    for (int it = 0; it < 3; ++it) {
        DirectSumFactorizationCert cert;
        cert.n = 2;
        cert.space.sizes = {1 + static_cast<std::size_t>(rng() % 3),
                            1 + static_cast<std::size_t>(rng() % 3)};
        cert.space.weights = {Rational(1, 3), Rational(2, 3)};
        for (std::size_t sz : cert.space.sizes) {
            cert.blocks.push_back(random_unitary(cert.n * sz, rng));
        }
        const QuantumChannel t = induced_channel_direct_sum(cert, opt.tol);
        const MatrixFactorizationCert m = collapse_direct_sum(cert, opt.tol, opt.lim);
        check(verify_matrix_factorization(m, t, opt.tol).verdict, "collapse round-trip");
    }

    {
        const ZooBundle bundle = zoo("dephasing(3)", opt.lim);
        const std::string emitted = emit_document(make_document(*bundle.mixture));
        check(emitted == emit_document(parse_document(emitted, opt.lim)),
              "serialization round-trip");
        const SymbolicCheckReport rep = symbolic_factorization_check(
            bundle.fg_witness->coeffs, bundle.fg_witness->words, bundle.channel, opt.tol);
        check(rep.verified(), "free-group witness");
    }

    Report r;
    r.add("command", std::string("self-test"))
        .add("verdict", first_failure.empty())
        .add("cases", cases)
        .add("seed", static_cast<long long>(opt.seed));
    if (!first_failure.empty()) r.add("first_failure", first_failure);
    print_report(out, std::move(r));
    return first_failure.empty() ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"certificate toolkit for factorizable quantum channels"};
    app.require_subcommand(1);
    CliOptions opt;
    app.add_option("--tol", opt.tol, "verification tolerance")->capture_default_str();
    app.add_option("--max-dim", opt.lim.max_dim, "largest dense matrix dimension")
        ->capture_default_str();
    app.add_option("--max-lcm", opt.lim.max_lcm, "largest common-denominator expansion")
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "seed for randomized self tests")->capture_default_str();

    std::string file, channel_file, cert_file, witness_file, zoo_name;
    std::string out_path = "-";
    std::string part = "channel";

    CLI::App* verify_channel = app.add_subcommand("verify-channel", "check a channel is CPTP and unital");
    verify_channel->add_option("file", file, "channel document, '-' for stdin")->required();

    CLI::App* verify_mixture =
        app.add_subcommand("verify-mixture", "check a mixture certificate tensor-factors");
    verify_mixture->add_option("file", file, "mixture-cert document")->required();

    CLI::App* verify_fact = app.add_subcommand(
        "verify-factorization", "check a matrix-algebra factorization certificate");
    verify_fact->add_option("--channel", channel_file, "channel document")->required();
    verify_fact->add_option("--cert", cert_file, "matrix-cert document")->required();

    CLI::App* verify_ds =
        app.add_subcommand("verify-direct-sum", "check a direct-sum factorization certificate");
    verify_ds->add_option("--channel", channel_file, "channel document")->required();
    verify_ds->add_option("--cert", cert_file, "direct-sum-cert document")->required();

    CLI::App* lift_cmd =
        app.add_subcommand("lift", "turn a verified mixture into a factorization certificate");
    lift_cmd->add_option("file", file, "mixture-cert document")->required();
    lift_cmd->add_option("-o,--output", out_path, "output path, '-' for stdout");

    CLI::App* collapse_cmd = app.add_subcommand(
        "collapse", "turn a direct-sum certificate into a single-algebra certificate");
    collapse_cmd->add_option("file", file, "direct-sum-cert document")->required();
    collapse_cmd->add_option("-o,--output", out_path, "output path, '-' for stdout");

    CLI::App* fg_cmd =
        app.add_subcommand("fg-check", "verify a free-group witness symbolically");
    fg_cmd->add_option("--channel", channel_file, "channel document")->required();
    fg_cmd->add_option("--witness", witness_file, "fg-witness document")->required();

    CLI::App* zoo_cmd = app.add_subcommand("zoo", "example channels and their certificates");
    zoo_cmd->require_subcommand(1);
    CLI::App* zoo_list = zoo_cmd->add_subcommand("list", "list known names");
    CLI::App* zoo_emit = zoo_cmd->add_subcommand("emit", "emit a named example document");
    zoo_emit->add_option("name", zoo_name, "dephasing(d), depolarizing(k), paper-m2-example")
        ->required();
    zoo_emit->add_option("--part", part, "channel|mixture|lift|spin|fg-witness")
        ->capture_default_str();
    zoo_emit->add_option("-o,--output", out_path, "output path, '-' for stdout");

    CLI::App* self_test = app.add_subcommand("self-test", "seeded end-to-end smoke battery");

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
    zoo_list->fallthrough();
    zoo_emit->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (verify_channel->parsed()) return cmd_verify_channel(file, opt, in, out, err);
        if (verify_mixture->parsed()) return cmd_verify_mixture(file, opt, in, out, err);
        if (verify_fact->parsed())
            return cmd_verify_factorization(channel_file, cert_file, opt, in, out, err);
        if (verify_ds->parsed())
            return cmd_verify_direct_sum(channel_file, cert_file, opt, in, out, err);
        if (lift_cmd->parsed()) return cmd_lift(file, out_path, opt, in, out);
        if (collapse_cmd->parsed()) return cmd_collapse(file, out_path, opt, in, out);
        if (fg_cmd->parsed()) return cmd_fg_check(channel_file, witness_file, opt, in, out, err);
        if (zoo_cmd->parsed()) {
            if (zoo_list->parsed()) {
                for (const std::string& name : zoo_names()) out << name << "\n";
                return 0;
            }
            return cmd_zoo_emit(zoo_name, part, out_path, opt, out);
        }
        if (self_test->parsed()) return cmd_self_test(opt, out, err);
        err << "error: no subcommand given\n";
        return 2;
    } catch (const HypothesisError& e) {
        err << "refuted: " << e.what() << "\n";
        return 1;
    } catch (const LimitError& e) {
        err << "limit exceeded: " << e.what() << "\n";
        return 3;
    } catch (const OverflowError& e) {
        err << "limit exceeded: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace factorcert
