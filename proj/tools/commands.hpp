// Subcommands of the algebragen tool. Each returns the process exit code and prints a JSON report
// on stdout and a one-line summary on stderr.
#pragma once

#include "instance.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <thread>

namespace cli {

namespace ag = algebragen;

enum ExitCode : int {
    kOk = 0,
    kNonMember = 1,
    kParse = 2,
    kNormBound = 3,
    kNumeric = 4,
    kOutOfRange = 5,
    kDisagreement = 6,
};

struct Options {
    std::optional<std::string> field;
    bool nonunital = false;
    std::optional<double> tol;
    double member_tol = ag::kDefaultMemberTol;
    bool no_rescale = false;
    bool power = false;
    std::uint64_t power_k = 0;  ///< 0: default exponent for the instance size
    bool certificate = false;
    std::size_t trials = 2;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> prime;
    std::vector<std::size_t> random;  ///< n d count
    std::string csv;
};

class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline ScalarKind resolve_field(const RawInstance& raw, const Options& o) {
    if (o.field) return parse_field(*o.field);
    if (raw.field) return parse_field(*raw.field);
    return parse_field(infer_field(raw.generators));
}

inline std::uint64_t resolve_seed(const Options& o) {
    if (o.seed) return *o.seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32U) | rd();
}

inline std::size_t thread_budget() {
    if (const char* env = std::getenv("ALGEBRAGEN_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

inline json options_json(const Options& o) {
    json j{{"nonunital", o.nonunital}, {"no_rescale", o.no_rescale}};
    if (o.field) j["field"] = *o.field;
    if (o.tol) j["tol"] = *o.tol;
    if (o.power) j["power"] = o.power_k;
    return j;
}

template <ag::Scalar T>
ag::AlgebraOptions algebra_options(const Options& o, std::size_t n) {
    ag::AlgebraOptions a;
    a.scale = o.no_rescale ? ag::Scale::none() : ag::Scale::automatic();
    a.rank_tol = o.tol;
    a.member_tol = o.member_tol;
    if (o.power) {
        if constexpr (!ag::uses_p_method<T>) {
            throw ag::InvalidArgument("the power form is only available over f64, c64 and rational fields");
        }
        a.variant = ag::GenFunVariant::power_form(o.power_k ? o.power_k : ag::default_power_exponent(n));
    }
    return a;
}

template <ag::Scalar T>
json p_report_json(const ag::PReport<T>& rep) {
    json j{{"method", "pmethod"},
           {"variant", rep.variant.name()},
           {"scale", rep.scale.get_str()},
           {"rank", rep.rank}};
    if (rep.variant.resolvent()) {
        j["norm_check"] = {{"passed", rep.norm_check.passed}, {"norm", rep.norm_check.norm}, {"value", rep.norm_check.value}};
    }
    if constexpr (ag::ScalarTraits<T>::exact) {
        j["rank_tolerance"] = nullptr;
        j["conditioning_flag"] = false;
    } else {
        j["rank_tolerance"] = rep.tol;
        j["conditioning_flag"] = rep.conditioning_flag;
        j["closure_defect"] = rep.closure_defect;
        j["closure_tolerance"] = ag::kClosureTol;
        j["singular_values"] = rep.spectrum;
    }
    return j;
}

template <ag::Scalar T>
json word_basis_json(const ag::WordBasis<T>& wb) {
    return {{"method", "oracle"}, {"degree_reached", wb.degree_reached}, {"saturated", wb.saturated}};
}

inline json word_json(const ag::Word& w) {
    json j = json::array();
    for (auto g : w) j.push_back(g + 1);
    return j;
}

inline json header(const std::string& name, const RawInstance& raw, const ScalarKind& kind, bool unital, const Options& o) {
    return {{"command", {{"name", name}, {"instance", raw.path}, {"options", options_json(o)}}},
            {"field", kind.name()},
            {"n", raw.n},
            {"d", raw.generators.size()},
            {"unital", unital}};
}

inline void emit(const json& report) { std::cout << report.dump(2) << '\n'; }

inline int cmd_dim(const std::string& path, const Options& o) {
    const RawInstance raw = load_instance(path);
    const ScalarKind kind = resolve_field(raw, o);
    const bool unital = raw.unital && !o.nonunital;
    json report = header("dim", raw, kind, unital, o);
    Stopwatch sw;
    with_field(kind, [&]<class T>(std::type_identity<T>) {
        const auto gs = to_set<T>(raw, kind, unital);
        const auto opts = algebra_options<T>(o, raw.n);
        if constexpr (ag::uses_p_method<T>) {
            const auto rep = ag::generating_matrix(gs, opts);
            report["dimension"] = rep.rank;
            report["details"] = p_report_json(rep);
        } else {
            const auto wb = ag::word_span(gs);
            if (!wb.saturated) throw ag::Error("word span did not saturate");
            report["dimension"] = wb.size();
            report["details"] = word_basis_json(wb);
        }
    });
    report["seconds"] = sw.seconds();
    emit(report);
    std::cerr << "dimension " << report["dimension"].get<std::size_t>() << " (" << kind.name() << ", "
              << report["details"].value("variant", "word span") << ")";
    if (report["details"].value("conditioning_flag", false)) std::cerr << " [ill-conditioned rank]";
    std::cerr << '\n';
    return kOk;
}

template <ag::Scalar T>
bool certificate_matches(const ag::GeneratorSet<T>& gs, const ag::Certificate<T>& cert, const Mat<T>& z, double tol) {
    const Mat<T> back = ag::evaluate(gs, cert);
    if constexpr (ag::ScalarTraits<T>::exact) {
        return back == z;
    } else {
        return ag::numeric::norm2(Mat<T>(back - z)) <= tol * std::max(1.0, ag::numeric::norm2(z));
    }
}

inline int cmd_member(const std::string& gens_path, const std::string& cand_path, const Options& o) {
    const RawInstance raw = load_instance(gens_path);
    const Grid cand = load_candidate(cand_path);
    const ScalarKind kind = resolve_field(raw, o);
    const bool unital = raw.unital && !o.nonunital;
    check_square(cand, raw.n, cand_path);
    json report = header("member", raw, kind, unital, o);
    report["command"]["candidate"] = cand_path;
    Stopwatch sw;
    bool member = false;
    with_field(kind, [&]<class T>(std::type_identity<T>) {
        const auto gs = to_set<T>(raw, kind, unital);
        const Mat<T> z = to_matrix<T>(cand, kind);
        const auto opts = algebra_options<T>(o, raw.n);
        const auto r = ag::membership(gs, z, o.certificate, opts);
        member = r.member;
        report["member"] = r.member;
        if constexpr (ag::ScalarTraits<T>::exact) {
            report["residual"] = format_scalar(r.residual);
            report["residual_kind"] = std::is_same_v<T, Rational> ? "squared distance to the range" : "indicator";
        } else {
            report["residual"] = r.residual;
            report["residual_kind"] = "distance to the range";
            report["member_tolerance"] = r.tol;
            report["member_rule"] = "residual <= member_tolerance * max(1, ||vec Z||)";
        }
        if constexpr (ag::uses_p_method<T>) {
            report["details"] = p_report_json(ag::generating_matrix(gs, opts));
        } else {
            report["details"] = {{"method", "oracle"}};
        }
        if (o.certificate) {
            if (r.certificate) {
                json terms = json::array();
                for (const auto& t : *r.certificate) terms.push_back({{"word", word_json(t.word)}, {"coeff", format_scalar(t.coeff)}});
                report["certificate"] = std::move(terms);
                report["certificate_verified"] = certificate_matches(gs, *r.certificate, z, opts.member_tol);
            } else {
                report["certificate"] = nullptr;
                if (!r.certificate_error.empty()) report["certificate_error"] = r.certificate_error;
            }
        }
    });
    report["seconds"] = sw.seconds();
    emit(report);
    std::cerr << (member ? "member" : "not a member") << " (" << kind.name() << ")\n";
    return member ? kOk : kNonMember;
}

inline int cmd_basis(const std::string& path, const Options& o) {
    const RawInstance raw = load_instance(path);
    const ScalarKind kind = resolve_field(raw, o);
    const bool unital = raw.unital && !o.nonunital;
    json report = header("basis", raw, kind, unital, o);
    Stopwatch sw;
    with_field(kind, [&]<class T>(std::type_identity<T>) {
        const auto gs = to_set<T>(raw, kind, unital);
        const auto b = ag::basis(gs, algebra_options<T>(o, raw.n));
        report["dimension"] = b.dim;
        report["source"] = b.source == ag::BasisSource::PMethod ? "pmethod" : "oracle";
        report["basis"] = instance_json(raw.n, kind, unital, b.basis);
    });
    report["seconds"] = sw.seconds();
    emit(report);
    std::cerr << "basis of dimension " << report["dimension"].get<std::size_t>() << " (" << kind.name() << ")\n";
    return kOk;
}

inline int cmd_intersect(const std::string& path_a, const std::string& path_b, const Options& o) {
    const RawInstance a = load_instance(path_a);
    const RawInstance b = load_instance(path_b);
    const ScalarKind kind = resolve_field(a, o);
    const ScalarKind kind_b = resolve_field(b, o);
    if (!(kind == kind_b)) throw ParseError("fields differ: " + kind.name() + " vs " + kind_b.name());
    if (a.n != b.n) throw ParseError("sides differ: " + std::to_string(a.n) + " vs " + std::to_string(b.n));
    const bool unital_a = a.unital && !o.nonunital, unital_b = b.unital && !o.nonunital;
    json report = header("intersect", a, kind, unital_a, o);
    report["command"]["other"] = path_b;
    Stopwatch sw;
    with_field(kind, [&]<class T>(std::type_identity<T>) {
        const auto opts = algebra_options<T>(o, a.n);
        const auto r = ag::intersect(to_set<T>(a, kind, unital_a), to_set<T>(b, kind, unital_b), opts);
        report["dimension"] = r.dim;
        report["source"] = r.source == ag::BasisSource::PMethod ? "pmethod" : "oracle";
        report["basis"] = instance_json(a.n, kind, unital_a, r.basis);
    });
    report["seconds"] = sw.seconds();
    emit(report);
    std::cerr << "intersection of dimension " << report["dimension"].get<std::size_t>() << '\n';
    return kOk;
}

inline int cmd_modp_dim(const std::string& path, const Options& o) {
    const RawInstance raw = load_instance(path);
    const ScalarKind kind = resolve_field(raw, o);
    if (kind.tag != ScalarTag::ExactRational) {
        throw ParseError("modp-dim needs rational or integer data, got field " + kind.name());
    }
    const bool unital = raw.unital && !o.nonunital;
    const auto gs = ag::clear_denominators(to_set<Rational>(raw, kind, unital));
    const std::uint64_t seed = resolve_seed(o);
    ag::CertifyOptions copts;
    copts.threads = thread_budget();
    copts.first_prime = o.prime;
    json report = header("modp-dim", raw, kind, unital, o);
    report["seed"] = seed;
    report["trials"] = o.trials;
    Stopwatch sw;
    const auto c = ag::certified_dimension(gs, o.trials, seed, copts);
    report["dimension"] = c.dim;
    json tried = json::array();
    for (const auto& p : c.plan.primes_tried) {
        json e{{"prime", p.prime}, {"outcome", p.singular_skip ? "singular_skip" : "rank"}};
        if (!p.singular_skip) e["rank"] = p.rank;
        tried.push_back(std::move(e));
    }
    report["plan"] = {{"B", c.plan.B.get_str()},
                      {"bad_prime_bound", c.plan.bad_prime_bound},
                      {"ceiling_N", c.plan.ceiling_N},
                      {"primes_tried", std::move(tried)},
                      {"per_prime_failure", c.plan.per_prime_failure},
                      {"failure_probability_bound", c.plan.failure_probability_bound}};
    report["seconds"] = sw.seconds();
    emit(report);
    std::cerr << "dimension " << c.dim << " modulo " << o.trials << " random prime(s), failure probability <= "
              << c.plan.failure_probability_bound << " (seed " << seed << ")\n";
    return kOk;
}

template <ag::Scalar T>
Mat<T> random_generator(std::mt19937_64& rng, std::size_t n, const ScalarKind& kind) {
    Mat<T> m(n, n, kind);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<long> small(-3, 3);
    for (auto& x : m.data()) {
        if constexpr (std::is_same_v<T, double>) {
            x = gauss(rng);
        } else if constexpr (std::is_same_v<T, Complex>) {
            x = Complex(gauss(rng), gauss(rng));
        } else if constexpr (std::is_same_v<T, Rational>) {
            x = small(rng);
        } else {
            x = Zp::from_raw(rng() % kind.modulus, kind.modulus);
        }
    }
    return m;
}

struct BenchRow {
    std::size_t n = 0, d = 0, pm_dim = 0, oracle_dim = 0;
    double pm_seconds = 0, oracle_seconds = 0;
    bool conditioning_flag = false;
    bool agrees() const { return pm_dim == oracle_dim; }
};

inline int cmd_bench(const std::optional<std::string>& path, const Options& o) {
    std::vector<RawInstance> raws;
    ScalarKind kind = ScalarKind::approx_real();
    json report;
    std::optional<std::uint64_t> seed;
    if (path) {
        raws.push_back(load_instance(*path));
        kind = resolve_field(raws.front(), o);
        report = header("bench", raws.front(), kind, raws.front().unital && !o.nonunital, o);
    } else {
        if (o.random.size() != 3 || o.random[0] == 0 || o.random[2] == 0) {
            throw ParseError("bench needs an instance file or --random n d count");
        }
        kind = o.field ? parse_field(*o.field) : ScalarKind::approx_real();
        seed = resolve_seed(o);
        report = {{"command", {{"name", "bench"}, {"random", o.random}, {"options", options_json(o)}}},
                  {"field", kind.name()},
                  {"seed", *seed}};
    }
    if (kind.tag == ScalarTag::PrimeField) throw ParseError("bench compares against the generating matrix, which needs f64, c64 or rational");

    std::vector<BenchRow> rows;
    with_field(kind, [&]<class T>(std::type_identity<T>) {
        if constexpr (ag::uses_p_method<T>) {
            std::vector<ag::GeneratorSet<T>> sets;
            if (path) {
                sets.push_back(to_set<T>(raws.front(), kind, raws.front().unital && !o.nonunital));
            } else {
                std::mt19937_64 rng(*seed);
                for (std::size_t k = 0; k < o.random[2]; ++k) {
                    std::vector<Mat<T>> gens;
                    for (std::size_t g = 0; g < o.random[1]; ++g) gens.push_back(random_generator<T>(rng, o.random[0], kind));
                    sets.emplace_back(o.random[0], std::move(gens), !o.nonunital, kind);
                }
            }
            for (const auto& gs : sets) {
                BenchRow row;
                row.n = gs.n;
                row.d = gs.d();
                Stopwatch pm;
                const auto rep = ag::generating_matrix(gs, algebra_options<T>(o, gs.n));
                row.pm_seconds = pm.seconds();
                row.pm_dim = rep.rank;
                row.conditioning_flag = rep.conditioning_flag;
                Stopwatch orc;
                row.oracle_dim = ag::oracle_dimension(gs);
                row.oracle_seconds = orc.seconds();
                rows.push_back(row);
            }
        }
    });

    bool all_agree = true;
    json jrows = json::array();
    for (const auto& r : rows) {
        all_agree = all_agree && r.agrees();
        jrows.push_back({{"n", r.n},
                         {"d", r.d},
                         {"pmethod_dim", r.pm_dim},
                         {"oracle_dim", r.oracle_dim},
                         {"pmethod_seconds", r.pm_seconds},
                         {"oracle_seconds", r.oracle_seconds},
                         {"agrees", r.agrees()},
                         {"conditioning_flag", r.conditioning_flag}});
    }
    report["rows"] = std::move(jrows);
    report["all_agree"] = all_agree;

    if (!o.csv.empty()) {
        std::ofstream out(o.csv);
        if (!out) throw ParseError("cannot write " + o.csv);
        out << "n,d,method,dim,seconds,agrees\n";
        for (const auto& r : rows) {
            const char* agree = r.agrees() ? "true" : "false";
            out << r.n << ',' << r.d << ",pmethod," << r.pm_dim << ',' << format_double(r.pm_seconds) << ',' << agree << '\n';
            out << r.n << ',' << r.d << ",oracle," << r.oracle_dim << ',' << format_double(r.oracle_seconds) << ',' << agree << '\n';
        }
        report["csv"] = o.csv;
    }
    emit(report);
    std::cerr << rows.size() << " instance(s), " << (all_agree ? "all methods agree" : "METHODS DISAGREE") << '\n';
    if (!all_agree && kind.exact()) return kDisagreement;
    return kOk;
}

}  // namespace cli
