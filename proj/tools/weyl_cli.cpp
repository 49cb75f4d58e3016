// Command-line front end: star / poisson / bracket / apply / factor /
// random-instance / selftest. Data goes to stdout (or --out), the human
// summary to stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "weyl/weyl.hpp"

namespace
{

// Documented in README.md; keep in sync.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kContext = 3,
    kFormat = 4,
    kIo = 5,
    kPrecondition = 6,
    kImageNotInX1 = 10,
    kLinearPartSingular = 11,
    kLinearPartNotSymplectic = 12,
    kHbarScaleNotOne = 13,
    kNotMorphism = 14,
    kClosednessFailure = 15,
    kResidualMismatch = 16,
    kSelftestFailed = 20,
    kInternal = 70,
};

int exit_code(weyl::FactorErrorCode c)
{
    using weyl::FactorErrorCode;
    switch (c) {
        case FactorErrorCode::ImageNotInX1:
            return kImageNotInX1;
        case FactorErrorCode::LinearPartSingular:
            return kLinearPartSingular;
        case FactorErrorCode::LinearPartNotSymplectic:
            return kLinearPartNotSymplectic;
        case FactorErrorCode::HbarScaleNotOne:
            return kHbarScaleNotOne;
        case FactorErrorCode::NotMorphism:
            return kNotMorphism;
        case FactorErrorCode::ClosednessFailure:
            return kClosednessFailure;
        case FactorErrorCode::ResidualMismatch:
            return kResidualMismatch;
    }
    return kInternal;
}

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string &text, const std::string &out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << text)) {
        throw IoError("cannot write " + out_path);
    }
}

int default_trunc()
{
    if (const char *env = std::getenv("WEYL_MAX_GRADE"); env != nullptr && *env != '\0') {
        try {
            return std::stoi(env);
        } catch (const std::exception &) {
            throw weyl::ContextError(std::string("WEYL_MAX_GRADE is not an integer: ") + env);
        }
    }
    return 8;
}

struct Options {
    int dim = 1;
    int max_grade = -1;
    std::uint64_t seed = 0;
    int steps = 4;
    int s_terms = 5;
    int cases = 25;
    int check_grade = 2;
    bool complex = false;
    std::string a, b, file, out, answer;
};

weyl::Context context_of(const Options &o) { return weyl::Context(o.dim, o.max_grade >= 0 ? o.max_grade : default_trunc()); }

int run_binary(const Options &o, const std::string &op)
{
    const weyl::Context ctx = context_of(o);
    const weyl::WeylElement a = weyl::parse(o.a, ctx);
    const weyl::WeylElement b = weyl::parse(o.b, ctx);
    weyl::WeylElement r(ctx);
    if (op == "star") {
        r = weyl::moyal(a, b);
    } else if (op == "poisson") {
        r = weyl::poisson(a, b);
    } else {
        r = weyl::scaled_bracket(a, b);
    }
    emit(weyl::print(r) + "\n", o.out);
    return kOk;
}

int run_apply(const Options &o)
{
    const weyl::AutomorphismData phi = weyl::automorphism_from_record(weyl::load_json(read_file(o.file)));
    const weyl::WeylElement a = weyl::parse(o.a, phi.context());
    emit(weyl::print(weyl::apply(phi, a)) + "\n", o.out);
    return kOk;
}

std::string matrix_summary(const weyl::SympMatrix &m)
{
    std::string s;
    const int n = 2 * m.dim();
    for (int r = 0; r < n; ++r) {
        s += "  [";
        for (int c = 0; c < n; ++c) {
            s += (c ? ", " : "") + m(r, c).to_string();
        }
        s += "]\n";
    }
    return s;
}

int run_factor(const Options &o)
{
    const weyl::AutomorphismData phi = weyl::automorphism_from_record(weyl::load_json(read_file(o.file)));
    weyl::FactorOptions fo;
    fo.morphism_check_grade = o.check_grade;
    const weyl::FactorizationResult r = weyl::factor(phi, fo);
    // factor() already re-verified; the record is written only after that passed
    emit(weyl::dump(weyl::factorization_record(r, phi.context())), o.out);
    std::cerr << "factored " << o.file << " (dim " << phi.context().dim() << ", trunc " << phi.context().trunc() << ")\n"
              << "linear part:\n"
              << matrix_summary(r.matrix) << "generator S = " << weyl::print(r.generator) << "\n"
              << "residual: " << (r.residual.pass ? "pass" : "FAIL") << "\n";
    return kOk;
}

struct Instance {
    weyl::SympMatrix m;
    weyl::WeylElement s;
    weyl::AutomorphismData phi;
};

Instance make_instance(weyl::Rng &rng, const weyl::Context &ctx, int steps, int s_terms, bool complex)
{
    weyl::SympMatrix m = weyl::random_symplectic(ctx.dim(), rng.next(), steps, complex);
    weyl::WeylElement s = weyl::random_generator(rng, ctx, s_terms, complex);
    weyl::AutomorphismData phi =
        weyl::compose(weyl::pullback_automorphism(m, ctx), weyl::inner_automorphism(s, ctx));
    return {std::move(m), std::move(s), std::move(phi)};
}

int run_random_instance(const Options &o)
{
    const weyl::Context ctx = context_of(o);
    weyl::Rng rng(o.seed);
    Instance inst = make_instance(rng, ctx, o.steps, o.s_terms, o.complex);
    emit(weyl::dump(weyl::automorphism_record(inst.phi)), o.out);
    if (!o.answer.empty()) {
        weyl::ResidualReport rep = weyl::verify_factorization(inst.phi, inst.m, inst.s);
        weyl::FactorizationResult answer{inst.m, inst.s, std::move(rep)};
        emit(weyl::dump(weyl::factorization_record(answer, ctx)), o.answer);
    }
    std::cerr << "random instance: dim " << ctx.dim() << ", trunc " << ctx.trunc() << ", seed " << o.seed << "\n";
    return kOk;
}

int run_selftest(const Options &o)
{
    const weyl::Context ctx = context_of(o);
    weyl::Rng rng(o.seed);
    int exact = 0;
    for (int c = 0; c < o.cases; ++c) {
        const int steps = rng.range(0, 8);
        const int terms = rng.range(0, 10);
        Instance inst = make_instance(rng, ctx, steps, terms, o.complex);
        try {
            const weyl::FactorizationResult r = weyl::factor(inst.phi);
            if (r.matrix == inst.m && r.generator == inst.s) {
                ++exact;
            } else {
                std::cerr << "case " << c << ": recovered factors differ\n";
            }
        } catch (const weyl::FactorError &e) {
            std::cerr << "case " << c << ": " << e.what() << "\n";
        }
    }
    emit(std::to_string(exact) + "/" + std::to_string(o.cases) + " round-trips exact\n", o.out);
    return exact == o.cases ? kOk : kSelftestFailed;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact semi-classical Weyl algebra engine"};
    app.require_subcommand(1);
    Options o;

    auto context_flags = [&](CLI::App *cmd) {
        cmd->add_option("--dim", o.dim, "degrees of freedom d (variables x1..xd, p1..pd)");
        cmd->add_option("--max-grade", o.max_grade, "truncation order N (default: $WEYL_MAX_GRADE or 8)");
    };

    std::string op;
    for (const char *name : {"star", "poisson", "bracket"}) {
        auto *cmd = app.add_subcommand(name, std::string(name) == "star"      ? "Moyal star product a * b"
                                             : std::string(name) == "poisson" ? "Poisson bracket {a, b}"
                                                                              : "scaled bracket (i/h)[a, b]");
        cmd->add_option("a", o.a)->required();
        cmd->add_option("b", o.b)->required();
        context_flags(cmd);
        cmd->add_option("--out", o.out, "write result to a file");
        cmd->callback([&op, name] { op = name; });
    }

    auto *apply_cmd = app.add_subcommand("apply", "apply an automorphism file to an expression");
    apply_cmd->add_option("file", o.file)->required();
    apply_cmd->add_option("expr", o.a)->required();
    apply_cmd->add_option("--out", o.out);
    apply_cmd->callback([&] { op = "apply"; });

    auto *factor_cmd = app.add_subcommand("factor", "split an automorphism as pullback(M) o inner(S)");
    factor_cmd->add_option("file", o.file)->required();
    factor_cmd->add_option("--out", o.out, "write the factorization record to a file");
    factor_cmd->add_option("--check-grade", o.check_grade, "grade bound of the morphism check");
    factor_cmd->callback([&] { op = "factor"; });

    auto *rnd = app.add_subcommand("random-instance", "emit pullback(M) o inner(S) for random M, S");
    context_flags(rnd);
    rnd->add_option("--seed", o.seed);
    rnd->add_option("--steps", o.steps, "elementary symplectic factors in M");
    rnd->add_option("--s-terms", o.s_terms, "terms in S");
    rnd->add_flag("--complex", o.complex, "allow Gaussian-rational parameters");
    rnd->add_option("--out", o.out, "automorphism file (default stdout)");
    rnd->add_option("--answer", o.answer, "write the hidden (M, S) as a factorization record");
    rnd->callback([&] { op = "random-instance"; });

    auto *st = app.add_subcommand("selftest", "factor random instances and check exact recovery");
    context_flags(st);
    st->add_option("--cases", o.cases);
    st->add_option("--seed", o.seed);
    st->add_flag("--complex", o.complex);
    st->add_option("--out", o.out);
    st->callback([&] { op = "selftest"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (op == "star" || op == "poisson" || op == "bracket") {
            return run_binary(o, op);
        }
        if (op == "apply") {
            return run_apply(o);
        }
        if (op == "factor") {
            return run_factor(o);
        }
        if (op == "random-instance") {
            return run_random_instance(o);
        }
        return run_selftest(o);
    } catch (const weyl::ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const weyl::ContextError &e) {
        std::cerr << "context error: " << e.what() << "\n";
        return kContext;
    } catch (const weyl::FormatError &e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kFormat;
    } catch (const IoError &e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIo;
    } catch (const weyl::FactorError &e) {
        std::cerr << "factor failed: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const weyl::PreconditionError &e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kPrecondition;
    } catch (const weyl::SingularMatrixError &e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kPrecondition;
    } catch (const weyl::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
}
