#include "commands.hpp"

#include <CLI11.hpp>

namespace {

void add_common(CLI::App* cmd, cli::Options& o) {
    cmd->add_option("--field", o.field, "Override the field: f64, c64, rational or gfp:<p>");
    cmd->add_flag("--nonunital", o.nonunital, "Use the non-unital algebra");
    cmd->add_option("--tol", o.tol, "Rank tolerance for floating-point fields");
    cmd->add_flag("--no-rescale", o.no_rescale, "Do not rescale the generators into the unit ball");
    cmd->add_option("--power", o.power_k, "Use the power form with exponent k (default from the matrix size)")
        ->expected(0, 1);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dimension, membership, basis and intersection of matrix algebras"};
    app.require_subcommand(1);
    cli::Options o;
    std::string path, other;
    std::optional<std::string> bench_path;

    auto* dim = app.add_subcommand("dim", "Dimension of the algebra generated by an instance");
    dim->add_option("instance", path, "Instance file")->required();
    add_common(dim, o);

    auto* member = app.add_subcommand("member", "Decide whether a matrix lies in the algebra");
    member->add_option("instance", path, "Instance file")->required();
    member->add_option("candidate", other, "Candidate matrix file")->required();
    member->add_flag("--certificate", o.certificate, "Express the candidate as a combination of words");
    member->add_option("--member-tol", o.member_tol, "Relative residual tolerance for floating-point fields");
    add_common(member, o);

    auto* basis = app.add_subcommand("basis", "Basis of the algebra");
    basis->add_option("instance", path, "Instance file")->required();
    add_common(basis, o);

    auto* inter = app.add_subcommand("intersect", "Intersection of two algebras");
    inter->add_option("first", path, "Instance file")->required();
    inter->add_option("second", other, "Instance file")->required();
    add_common(inter, o);

    auto* modp = app.add_subcommand("modp-dim", "Dimension of an integer instance modulo random primes");
    modp->add_option("instance", path, "Instance file")->required();
    modp->add_option("--trials", o.trials, "Number of non-singular primes")->check(CLI::PositiveNumber);
    modp->add_option("--seed", o.seed, "Random seed");
    modp->add_option("--prime", o.prime, "Prime to use for the first attempt");
    modp->add_flag("--nonunital", o.nonunital, "Use the non-unital algebra");
    modp->add_option("--field", o.field, "Override the field");

    auto* bench = app.add_subcommand("bench", "Compare the generating-matrix method with the word-span baseline");
    bench->add_option("instance", bench_path, "Instance file");
    bench->add_option("--random", o.random, "Random instances: n d count")->expected(3);
    bench->add_option("--seed", o.seed, "Random seed");
    bench->add_option("--csv", o.csv, "Write a CSV table to this path");
    add_common(bench, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kOk : cli::kParse;
    }
    for (auto* cmd : {dim, member, basis, inter, bench}) {
        if (cmd->parsed() && cmd->get_option("--power")->count() > 0) o.power = true;
    }

    try {
        if (dim->parsed()) return cli::cmd_dim(path, o);
        if (member->parsed()) return cli::cmd_member(path, other, o);
        if (basis->parsed()) return cli::cmd_basis(path, o);
        if (inter->parsed()) return cli::cmd_intersect(path, other, o);
        if (modp->parsed()) return cli::cmd_modp_dim(path, o);
        if (bench->parsed()) return cli::cmd_bench(bench_path, o);
    } catch (const cli::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kParse;
    } catch (const algebragen::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kParse;
    } catch (const algebragen::ShapeMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kParse;
    } catch (const algebragen::KindMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kParse;
    } catch (const algebragen::NormBoundViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kNormBound;
    } catch (const algebragen::OutOfRange& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kOutOfRange;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kNumeric;
    }
    return cli::kParse;
}
