// pschur: inertia, solvability classification, moment extension and
// colligation-based interpolation on finite data in the unit disk.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pschur/classifier.hpp"
#include "pschur/extension.hpp"
#include "pschur/inertia.hpp"
#include "pschur/interpolation.hpp"
#include "pschur/io.hpp"
#include "pschur/kernels.hpp"
#include "pschur/toeplitz.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace pschur;

// Exit codes are part of the public contract.
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitBackend = 4;
constexpr int kExitNotSolvable = 5;
constexpr int kExitDefect = 6;
constexpr int kExitNotStabilized = 7;

struct CliError {
    int code;
    std::string message;
};

struct Options {
    std::string file;
    std::string backend; // optional guard: must match the file when given
    double tol = kDefaultEpsRel;
    std::uint64_t seed = 0;
    bool table = false;
    std::string record_path;

    std::optional<int> nu;
    std::optional<int> pi;
    std::size_t horizon = 8;
    unsigned variant = 0;
    std::string method = "rectangular";
    std::size_t grid = 256;
    std::string suite = "identities";
    std::size_t trials = 0;
    std::size_t rmax = 12;
    std::size_t window = 3;
    std::string points_csv = "0,0.5";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{kExitParse, "cannot open '" + path + "'"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

InstanceFile load_checked(const Options& opt) {
    InstanceFile file = parse_instance(read_file(opt.file));
    if (!opt.backend.empty()) {
        const Backend want = opt.backend == "exact" ? Backend::Exact : Backend::Float;
        if (file.backend != want)
            throw CliError{kExitBackend, "file backend does not match --backend " + opt.backend};
    }
    return file;
}

Json inertia_json(const Inertia& in) {
    return Json{{"nu", in.nu}, {"zeta", in.zeta}, {"pi", in.pi}};
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

// ---------------------------------------------------------------- inertia --

Json cmd_inertia(const Options& opt) {
    const InstanceFile file = load_checked(opt);
    if (file.kind != InstanceKind::Matrix && file.kind != InstanceKind::KernelSample)
        throw CliError{kExitParse, "inertia expects a 'matrix' or 'kernel_sample' instance"};
    Json out;
    try {
        if (file.backend == Backend::Exact) {
            const ExactHermitian h = file.kind == InstanceKind::Matrix
                                         ? ExactHermitian(file.exact_matrix)
                                         : gram_KS(file.exact_points, file.exact_values);
            const Inertia in = inertia(h);
            const auto [rank, det] = rank_det(h);
            out = inertia_json(in);
            out["sigma"] = in.signature();
            out["rank"] = rank;
            out["det"] = det.get_str();
        } else {
            const FloatHermitian h = file.kind == InstanceKind::Matrix
                                         ? FloatHermitian(file.float_matrix)
                                         : gram_KS(file.float_points, file.float_values);
            const Inertia in = inertia(h, opt.tol);
            const auto [rank, det] = rank_det(h, opt.tol);
            out = inertia_json(in);
            out["sigma"] = in.signature();
            out["rank"] = rank;
            out["det"] = fmt_double(det);
        }
    } catch (const InvariantViolation& e) {
        throw CliError{kExitInvariant, e.what()};
    } catch (const DegenerateTolerance& e) {
        throw CliError{kExitBackend, e.what()};
    }
    return out;
}

// --------------------------------------------------------------- classify --

Json classification_json(const Classification& cls) {
    Json out;
    out["governing"] = cls.governing == Governing::MomentSide ? "moment_side" : "coeff_side";
    out["label"] = to_string(cls.label);
    out["base_nu"] = cls.base_nu;
    out["base_pi"] = cls.base_pi;
    out["kernel_dim"] = cls.kernel_dim;
    out["threshold_nu"] = cls.threshold_nu;
    out["threshold_pi"] = cls.threshold_pi;
    out["rank"] = cls.rank;
    out["head_det_nonzero"] = cls.head_det_nonzero;
    out["sub_det_nonzero"] = cls.sub_det_nonzero;
    return out;
}

Json query_json(const Classification& cls, int nu, PiTarget pi) {
    Json q;
    q["nu"] = nu;
    if (pi)
        q["pi"] = *pi;
    else
        q["pi"] = "any";
    q["verdict"] = to_string(resolve_class_query(cls, nu, pi));
    const auto part = applied_part(cls, nu, pi);
    q["part"] = part ? to_string(*part) : "monotonicity_preface";
    return q;
}

template <class S>
Json classify_any(const std::vector<S>& seq, bool coeff_side, const Options& opt) {
    Json out;
    try {
        if (coeff_side) {
            const Classification cls = classify_cf(seq);
            out["classification"] = classification_json(cls);
            if (opt.nu) out["query"] = query_json(cls, *opt.nu, opt.pi);
            const Classification tr = classify_trig(coeffs_to_moments(seq));
            out["moment_side_cross_check"] = classification_json(tr);
            out["equiv_check"] = equiv_check(seq);
        } else {
            const Classification cls = classify_trig(seq);
            out["classification"] = classification_json(cls);
            if (opt.nu) out["query"] = query_json(cls, *opt.nu, opt.pi);
        }
    } catch (const InexactDegenerate& e) {
        throw CliError{kExitBackend, e.what()};
    } catch (const InvariantViolation& e) {
        throw CliError{kExitInvariant, e.what()};
    }
    return out;
}

Json cmd_classify(const Options& opt) {
    if (opt.pi && !opt.nu) throw CliError{kExitParse, "--pi requires --nu"};
    const InstanceFile file = load_checked(opt);
    if (file.kind != InstanceKind::Coeffs && file.kind != InstanceKind::Moments)
        throw CliError{kExitParse, "classify expects a 'coeffs' or 'moments' instance"};
    const bool coeff_side = file.kind == InstanceKind::Coeffs;
    if (file.backend == Backend::Exact) return classify_any(file.exact_seq, coeff_side, opt);
    return classify_any(file.float_seq, coeff_side, opt);
}

// ----------------------------------------------------------------- extend --

Json cmd_extend(const Options& opt) {
    const InstanceFile file = load_checked(opt);
    if (file.kind != InstanceKind::Moments)
        throw CliError{kExitParse, "extend expects a 'moments' instance"};
    if (file.backend != Backend::Exact)
        throw CliError{kExitBackend, "extend requires the exact backend"};
    if (!opt.nu || !opt.pi) throw CliError{kExitParse, "extend requires --nu and --pi"};

    Json out;
    try {
        const auto terms = extend_to_class(file.exact_seq, *opt.nu, *opt.pi, opt.horizon, opt.variant);
        ExactMomentSeq work = file.exact_seq;
        Json trace = Json::array();
        trace.push_back(inertia_json(inertia(moment_matrix(work, work.size() - 1))));
        Json term_array = Json::array();
        for (const auto& t : terms) {
            work.push_back(t);
            term_array.push_back(t.str());
            trace.push_back(inertia_json(inertia(moment_matrix(work, work.size() - 1))));
        }
        out["terms"] = term_array;
        out["inertia_trace"] = trace;
        out["variant"] = opt.variant;
    } catch (const NotSolvable& e) {
        throw CliError{kExitNotSolvable, e.what()};
    } catch (const HorizonTooSmall& e) {
        throw CliError{kExitNotSolvable, e.what()};
    } catch (const InexactDegenerate& e) {
        throw CliError{kExitBackend, e.what()};
    }
    return out;
}

// ------------------------------------------------------------ interpolate --

Json matrix_json(const FloatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_cdouble(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json cmd_interpolate(const Options& opt) {
    const InstanceFile file = load_checked(opt);
    if (file.kind != InstanceKind::Interpolation)
        throw CliError{kExitParse, "interpolate expects an 'interpolation' instance"};

    Json out;
    try {
        TransferFunction tf;
        int kappa = 0;
        if (opt.method == "two-kernel") {
            tf = two_kernel_solve(file.interpolation);
            kappa = tf.colligation.metric.rows() > 0
                        ? inertia(FloatHermitian(tf.colligation.metric), opt.tol).nu
                        : 0;
        } else if (opt.method == "rectangular") {
            MobiusTransform record;
            const InterpolationInstance normalized = mobius_normalize(file.interpolation, record);
            const KernelSpaceRep ksp = kernel_space(normalized);
            kappa = ksp.gram_inertia.nu;
            const RelationGenerators rel = build_relation(normalized, ksp);
            const DefectReport defects = defect_subspaces(ksp, rel);
            const Colligation col = complete_colligation(normalized, ksp, rel, defects);
            tf = TransferFunction{col, record};
        } else {
            throw CliError{kExitParse, "unknown --method '" + opt.method + "'"};
        }

        out["method"] = opt.method;
        out["kappa"] = kappa;
        out["dim"] = tf.colligation.dim;
        Json blocks;
        blocks["T"] = matrix_json(tf.colligation.T);
        blocks["F"] = matrix_json(tf.colligation.F);
        blocks["G"] = matrix_json(tf.colligation.G);
        blocks["H"] = format_cdouble(tf.colligation.H);
        out["blocks"] = blocks;
        Json exc = Json::array();
        for (const auto& e : tf.exceptional_points()) exc.push_back(format_cdouble(e));
        out["exceptional_points"] = exc;

        const FactorCheckResult fc = factor_check(file.interpolation, tf);
        Json failures = Json::array();
        for (auto i : fc.failure_indices) failures.push_back(i);
        out["failures"] = failures;
        out["max_residual"] = fmt_double(fc.max_residual);

        const CertifyReport cert = certify_schur_class(tf, opt.grid, kappa);
        out["kappa_prime"] = cert.kappa_prime;
        out["nu_per_level"] = cert.nu_per_level;
        out["kappa_prime_within_bound"] = cert.within_bound;
    } catch (const DefectNotPositive& e) {
        throw CliError{kExitDefect, e.what()};
    } catch (const KernelMismatch& e) {
        throw CliError{kExitDefect, e.what()};
    } catch (const InvariantViolation& e) {
        throw CliError{kExitInvariant, e.what()};
    }
    return out;
}

// ----------------------------------------------------------------- verify --

ExactMomentSeq random_rational_coeffs(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> num(-2, 2);
    std::uniform_int_distribution<int> den(1, 3);
    ExactMomentSeq a;
    a.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        a.emplace_back(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    return a;
}

Json cmd_verify(const Options& opt) {
    const InstanceFile file = load_checked(opt);
    if (file.kind != InstanceKind::Coeffs)
        throw CliError{kExitParse, "verify expects a 'coeffs' instance"};
    if (file.backend != Backend::Exact)
        throw CliError{kExitBackend, "verify requires the exact backend"};
    const auto& a = file.exact_seq;

    Json out;
    out["suite"] = opt.suite;
    if (opt.suite == "identities") {
        const IdentityReport report = verify_identities(a);
        bool all_pass = report.all_pass;
        std::size_t extra = 0;
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<std::size_t> len(1, 8);
        for (std::size_t t = 0; t < opt.trials; ++t) {
            const auto trial = random_rational_coeffs(rng, len(rng));
            all_pass = all_pass && verify_identities(trial).all_pass;
            ++extra;
        }
        out["file_checks"] = report.checks.size();
        out["random_trials"] = extra;
        out["all_pass"] = all_pass;
        out["exact"] = report.exact;
        if (!all_pass) throw CliError{kExitInternal, "identity suite failed (implementation bug)"};
    } else if (opt.suite == "corollaries") {
        bool ok = true;
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<std::size_t> len(1, 8);
        auto check_one = [&ok](const ExactMomentSeq& coeffs) {
            const std::size_t n = coeffs.size();
            Inertia prev_left{}, prev_block{};
            for (std::size_t r = 1; r <= n; ++r) {
                const Inertia left = inertia(schur_gram(coeffs, r, GramSide::Left));
                const Inertia right = inertia(schur_gram(coeffs, r, GramSide::Right));
                const Inertia cleft = inertia(schur_gram(coeffs, r, GramSide::ConjLeft));
                const Inertia cright = inertia(schur_gram(coeffs, r, GramSide::ConjRight));
                ok = ok && left.nu == right.nu && left.nu == cleft.nu && left.nu == cright.nu;
                ok = ok && left.pi == right.pi && left.pi == cleft.pi && left.pi == cright.pi;
                if (r > 1) ok = ok && left.nu >= prev_left.nu && left.pi >= prev_left.pi;
                prev_left = left;
                if (2 * r <= n) {
                    const Inertia blk = inertia(d_block(coeffs, r));
                    if (r > 1) ok = ok && blk.nu >= prev_block.nu && blk.pi >= prev_block.pi;
                    prev_block = blk;
                }
            }
        };
        check_one(a);
        for (std::size_t t = 0; t < opt.trials; ++t) check_one(random_rational_coeffs(rng, len(rng)));
        out["random_trials"] = opt.trials;
        out["all_pass"] = ok;
        if (!ok) throw CliError{kExitInternal, "corollary suite failed (implementation bug)"};
    } else if (opt.suite == "negsq") {
        if (a.size() < opt.rmax)
            throw CliError{kExitParse, "negsq needs at least --rmax coefficients"};
        const NegSqReport report = negsq_from_coeffs(a, opt.rmax, opt.window);
        out["nu_trace"] = report.nu_trace;
        out["kappa_estimate"] = report.kappa_estimate;
        out["stabilized"] = report.stabilized;
        if (!report.stabilized)
            throw CliError{kExitNotStabilized, "negative-squares sequence did not stabilize"};
    } else {
        throw CliError{kExitParse, "unknown --suite '" + opt.suite + "'"};
    }
    return out;
}

// ---------------------------------------------------------- demo-blaschke --

Json cmd_demo_blaschke(const Options& opt) {
    std::vector<cdouble> points;
    std::stringstream ss(opt.points_csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) points.push_back(parse_cdouble(tok));
    if (points.size() < 2)
        throw CliError{kExitParse, "demo-blaschke needs w0 and at least one other point"};

    const BlaschkeCaseStudy study = blaschke_case_study(points, 0);
    Json out;
    Json pts = Json::array();
    for (const auto& p : points) pts.push_back(format_cdouble(p));
    out["points"] = pts;
    out["w0"] = format_cdouble(points[0]);
    out["gram"] = matrix_json(study.gram.matrix());
    out["gram_inertia"] = inertia_json(study.gram_inertia);
    out["witness"] = matrix_json(study.witness);
    out["witness_det"] = fmt_double(study.witness_det);
    out["blaschke_prefix_sum"] = fmt_double(blaschke_sum(points));
    return out;
}

// ------------------------------------------------------------------ table --

void print_table(const Json& j, std::ostream& os, int indent = 0) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            os << pad << key << ":\n";
            print_table(value, os, indent + 2);
        } else {
            os << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
               << "\n";
        }
    }
}

// ------------------------------------------------------------------- main --

int run_command(const std::vector<std::string>& args, std::string& output);

int cmd_replay(const std::string& record_path, std::string& output) {
    const RunRecord record = parse_run_record(read_file(record_path));
    std::vector<std::string> args;
    std::stringstream ss(record.command);
    std::string tok;
    while (ss >> tok) args.push_back(tok);

    std::string replayed;
    const int code = run_command(args, replayed);
    if (code != kExitOk) {
        output = "replay: command exited with code " + std::to_string(code) + "\n";
        return code;
    }
    if (replayed != record.outputs) {
        output = "replay: output differs from the recorded bytes\n";
        return kExitInternal;
    }
    output = replayed;
    return kExitOk;
}

int run_command(const std::vector<std::string>& args, std::string& output) {
    CLI::App app{"interpolation and moment machinery for generalized Schur classes"};
    app.require_subcommand(1);

    Options opt;
    std::string replay_path;

    auto add_common = [&opt](CLI::App* cmd, bool with_file) {
        if (with_file) cmd->add_option("file", opt.file, "instance JSON file")->required();
        cmd->add_option("--backend", opt.backend, "require a backend: exact|float")
            ->check(CLI::IsMember({"exact", "float"}));
        cmd->add_option("--tol", opt.tol, "float zero threshold (relative)");
        cmd->add_option("--seed", opt.seed, "seed for randomized suites");
        cmd->add_flag("--table", opt.table, "human-readable output");
        cmd->add_flag("--json", [](std::int64_t) {}, "JSON output (default)");
        cmd->add_option("--record", opt.record_path, "write a run record to this path");
    };

    CLI::App* inertia_cmd = app.add_subcommand("inertia", "sign counts, rank and determinant");
    add_common(inertia_cmd, true);

    CLI::App* classify_cmd = app.add_subcommand("classify", "solvability classification");
    add_common(classify_cmd, true);
    classify_cmd->add_option("--nu", opt.nu, "query class index nu");
    classify_cmd->add_option("--pi", opt.pi, "query class index pi");

    CLI::App* extend_cmd = app.add_subcommand("extend", "constructive moment extension");
    add_common(extend_cmd, true);
    extend_cmd->add_option("--nu", opt.nu, "target nu")->required();
    extend_cmd->add_option("--pi", opt.pi, "target pi")->required();
    extend_cmd->add_option("--horizon", opt.horizon, "number of terms to produce");
    extend_cmd->add_option("--variant", opt.variant, "deterministic construction variant");

    CLI::App* interp_cmd = app.add_subcommand("interpolate", "colligation interpolation solver");
    add_common(interp_cmd, true);
    interp_cmd->add_option("--method", opt.method, "rectangular|two-kernel")
        ->check(CLI::IsMember({"rectangular", "two-kernel"}));
    interp_cmd->add_option("--grid", opt.grid, "certification grid size");

    CLI::App* verify_cmd = app.add_subcommand("verify", "identity and stabilization suites");
    add_common(verify_cmd, true);
    verify_cmd->add_option("--suite", opt.suite, "identities|corollaries|negsq")
        ->check(CLI::IsMember({"identities", "corollaries", "negsq"}));
    verify_cmd->add_option("--trials", opt.trials, "extra random trials");
    verify_cmd->add_option("--rmax", opt.rmax, "negsq: largest order");
    verify_cmd->add_option("--window", opt.window, "negsq: stability window");

    CLI::App* demo_cmd = app.add_subcommand("demo-blaschke", "one-negative-square case study");
    add_common(demo_cmd, false);
    demo_cmd->add_option("--points", opt.points_csv, "comma-separated disk points; first is w0");

    CLI::App* replay_cmd = app.add_subcommand("replay", "re-run a recorded command");
    replay_cmd->add_option("record", replay_path, "run record JSON")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        if (e.get_exit_code() == 0) { // --help
            msg << app.help();
            output = msg.str();
            return kExitOk;
        }
        output = std::string("error: ") + e.what() + "\n";
        return kExitParse;
    }

    const auto started = std::chrono::steady_clock::now();
    Json result;
    try {
        if (inertia_cmd->parsed()) result = cmd_inertia(opt);
        else if (classify_cmd->parsed()) result = cmd_classify(opt);
        else if (extend_cmd->parsed()) result = cmd_extend(opt);
        else if (interp_cmd->parsed()) result = cmd_interpolate(opt);
        else if (verify_cmd->parsed()) result = cmd_verify(opt);
        else if (demo_cmd->parsed()) result = cmd_demo_blaschke(opt);
        else if (replay_cmd->parsed()) return cmd_replay(replay_path, output);
    } catch (const CliError& e) {
        output = "error: " + e.message + "\n";
        return e.code;
    } catch (const ParseError& e) {
        output = std::string("error: ") + e.what() + "\n";
        return kExitParse;
    } catch (const InvariantViolation& e) {
        output = std::string("error: ") + e.what() + "\n";
        return kExitInvariant;
    } catch (const Error& e) {
        output = std::string("error: ") + e.what() + "\n";
        return kExitInternal;
    }

    std::ostringstream os;
    if (opt.table)
        print_table(result, os);
    else
        os << result.dump(2) << "\n";
    output = os.str();

    if (!opt.record_path.empty()) {
        RunRecord record;
        std::ostringstream cmd;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--record") { ++i; continue; } // strip so replay is side-effect free
            if (i) cmd << ' ';
            cmd << args[i];
        }
        record.command = cmd.str();
        record.input_digest = digest_hex(opt.file.empty() ? opt.points_csv : read_file(opt.file));
        record.version = kVersion;
        record.seed = opt.seed;
        record.outputs = output;
        record.timing_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - started)
                               .count();
        std::ofstream rec(opt.record_path);
        if (!rec) {
            output = "error: cannot write record to '" + opt.record_path + "'\n";
            return kExitParse;
        }
        rec << serialize_run_record(record);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string output;
    const int code = run_command(args, output);
    if (code == kExitOk)
        std::cout << output;
    else
        std::cerr << output;
    return code;
}
