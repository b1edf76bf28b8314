// Instance files, entry parsing and JSON encoding for the command-line tool.
#pragma once

#include <algebragen/algebragen.hpp>

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace cli {

using algebragen::Complex;
using algebragen::GeneratorSet;
using algebragen::Integer;
using algebragen::Mat;
using algebragen::Rational;
using algebragen::ScalarKind;
using algebragen::ScalarTag;
using algebragen::Zp;
using json = nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Grid = std::vector<std::vector<std::string>>;

/// Generators as entry strings, before a field is chosen.
struct RawInstance {
    std::size_t n = 0;
    std::optional<std::string> field;
    bool unital = true;
    std::vector<Grid> generators;
    std::string path;
};

inline std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

inline std::optional<Rational> parse_rational(const std::string& text) {
    static const std::regex re(R"(([+-]?)(\d+)(?:/(\d+))?)");
    const std::string s = strip_spaces(text);
    std::smatch m;
    if (!std::regex_match(s, m, re)) return std::nullopt;
    Integer num(m[2].str());
    if (m[1].str() == "-") num = -num;
    const Integer den(m[3].matched ? m[3].str() : std::string("1"));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Decimal literal or exact fraction, as a double.
inline std::optional<double> parse_real(const std::string& text) {
    const std::string s = strip_spaces(text);
    if (s.empty()) return std::nullopt;
    if (auto q = parse_rational(s)) return q->get_d();
    double v = 0.0;
    const char* first = s.data() + (s.front() == '+' ? 1 : 0);
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

/// "re", "im i", "re+im i", "re-im i"; a bare "i" has magnitude one.
inline std::optional<Complex> parse_complex(const std::string& text) {
    const std::string s = strip_spaces(text);
    if (s.empty()) return std::nullopt;
    if (s.back() != 'i') {
        auto re = parse_real(s);
        if (!re) return std::nullopt;
        return Complex(*re, 0.0);
    }
    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
    std::string im_part = split == std::string::npos ? body : body.substr(split);
    if (im_part.empty() || im_part == "+" || im_part == "-") im_part += "1";
    const auto im = parse_real(im_part);
    const auto re = re_part.empty() ? std::optional<double>(0.0) : parse_real(re_part);
    if (!im || !re) return std::nullopt;
    return Complex(*re, *im);
}

inline ScalarKind parse_field(const std::string& name) {
    if (name == "f64") return ScalarKind::approx_real();
    if (name == "c64") return ScalarKind::approx_complex();
    if (name == "rational") return ScalarKind::exact_rational();
    if (name.rfind("gfp:", 0) == 0) {
        std::uint64_t p = 0;
        const std::string digits = name.substr(4);
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec != std::errc() || ptr != digits.data() + digits.size()) throw ParseError("bad field '" + name + "'");
        try {
            return ScalarKind::prime_field(p);
        } catch (const algebragen::InvalidArgument& e) {
            throw ParseError(e.what());
        }
    }
    throw ParseError("unknown field '" + name + "' (expected f64, c64, rational or gfp:<p>)");
}

template <algebragen::Scalar T>
T parse_entry(const std::string& s, const ScalarKind& kind) {
    auto fail = [&]() -> T { throw ParseError("entry '" + s + "' is not valid in field " + kind.name()); };
    if constexpr (std::is_same_v<T, Rational>) {
        auto q = parse_rational(s);
        return q ? *q : fail();
    } else if constexpr (std::is_same_v<T, double>) {
        auto v = parse_real(s);
        return v ? *v : fail();
    } else if constexpr (std::is_same_v<T, Complex>) {
        auto v = parse_complex(s);
        return v ? *v : fail();
    } else {
        auto q = parse_rational(s);
        if (!q) return fail();
        const std::uint64_t p = kind.modulus;
        const Zp den = Zp::from_integer(q->get_den(), p);
        if (den.value() == 0) throw ParseError("denominator of '" + s + "' vanishes modulo " + std::to_string(p));
        return Zp::from_integer(q->get_num(), p) * den.inverse();
    }
}

inline Grid grid_from_json(const json& g, const std::string& where) {
    if (!g.is_array()) throw ParseError(where + ": matrix must be an array of rows");
    Grid out;
    for (const auto& row : g) {
        if (!row.is_array()) throw ParseError(where + ": row must be an array");
        std::vector<std::string> r;
        for (const auto& x : row) {
            if (x.is_string()) {
                r.push_back(x.get<std::string>());
            } else if (x.is_number_integer()) {
                r.push_back(std::to_string(x.get<long long>()));
            } else if (x.is_number()) {
                r.push_back(x.dump());
            } else {
                throw ParseError(where + ": entries must be strings or numbers");
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline void check_square(const Grid& g, std::size_t n, const std::string& where) {
    if (g.size() != n) throw ParseError(where + ": expected " + std::to_string(n) + " rows, found " + std::to_string(g.size()));
    for (const auto& row : g) {
        if (row.size() != n) {
            throw ParseError(where + ": expected " + std::to_string(n) + " columns, found " + std::to_string(row.size()));
        }
    }
}

inline json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline RawInstance instance_from_json(const json& doc, const std::string& path) {
    if (!doc.is_object()) throw ParseError(path + ": instance must be a JSON object");
    RawInstance raw;
    raw.path = path;
    if (!doc.contains("n") || !doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() == 0) {
        throw ParseError(path + ": 'n' must be a positive integer");
    }
    raw.n = doc["n"].get<std::size_t>();
    if (doc.contains("field")) {
        if (!doc["field"].is_string()) throw ParseError(path + ": 'field' must be a string");
        raw.field = doc["field"].get<std::string>();
    }
    if (doc.contains("unital")) {
        if (!doc["unital"].is_boolean()) throw ParseError(path + ": 'unital' must be a boolean");
        raw.unital = doc["unital"].get<bool>();
    }
    if (!doc.contains("generators") || !doc["generators"].is_array()) {
        throw ParseError(path + ": 'generators' must be an array of matrices");
    }
    std::size_t k = 0;
    for (const auto& g : doc["generators"]) {
        const std::string where = path + ": generator " + std::to_string(++k);
        raw.generators.push_back(grid_from_json(g, where));
        check_square(raw.generators.back(), raw.n, where);
    }
    return raw;
}

inline RawInstance load_instance(const std::string& path) { return instance_from_json(read_json(path), path); }

/// A candidate is {"matrix": grid} or an instance holding exactly one generator.
inline Grid load_candidate(const std::string& path) {
    const json doc = read_json(path);
    if (doc.is_object() && doc.contains("matrix")) return grid_from_json(doc["matrix"], path);
    const RawInstance raw = instance_from_json(doc, path);
    if (raw.generators.size() != 1) throw ParseError(path + ": candidate instance must hold exactly one matrix");
    return raw.generators.front();
}

/// rational if every entry is an exact fraction, otherwise c64 if any entry mentions i, otherwise f64.
inline std::string infer_field(const std::vector<Grid>& grids) {
    bool all_rational = true, any_imaginary = false;
    for (const auto& g : grids)
        for (const auto& row : g)
            for (const auto& s : row) {
                if (!parse_rational(s)) all_rational = false;
                if (s.find('i') != std::string::npos) any_imaginary = true;
            }
    if (all_rational) return "rational";
    return any_imaginary ? "c64" : "f64";
}

template <algebragen::Scalar T>
Mat<T> to_matrix(const Grid& g, const ScalarKind& kind) {
    const std::size_t rows = g.size(), cols = rows ? g.front().size() : 0;
    Mat<T> m(rows, cols, kind);
    for (std::size_t i = 0; i < rows; ++i) {
        if (g[i].size() != cols) throw ParseError("ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_entry<T>(g[i][j], kind);
    }
    return m;
}

template <algebragen::Scalar T>
GeneratorSet<T> to_set(const RawInstance& raw, const ScalarKind& kind, bool unital) {
    std::vector<Mat<T>> gens;
    for (const auto& g : raw.generators) gens.push_back(to_matrix<T>(g, kind));
    return GeneratorSet<T>(raw.n, std::move(gens), unital, kind);
}

/// Calls f(std::type_identity<T>{}) for the scalar type matching the field.
template <class F>
decltype(auto) with_field(const ScalarKind& kind, F&& f) {
    switch (kind.tag) {
        case ScalarTag::ApproxReal: return f(std::type_identity<double>{});
        case ScalarTag::ApproxComplex: return f(std::type_identity<Complex>{});
        case ScalarTag::ExactRational: return f(std::type_identity<Rational>{});
        case ScalarTag::PrimeField: return f(std::type_identity<Zp>{});
    }
    throw ParseError("unsupported field");
}

inline std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc() ? std::string(buf, ptr) : std::to_string(x);
}

inline std::string format_scalar(const Rational& q) { return q.get_str(); }
inline std::string format_scalar(double x) { return format_double(x); }
inline std::string format_scalar(const Zp& x) { return std::to_string(x.value()); }
inline std::string format_scalar(const Complex& z) {
    if (z.imag() == 0.0) return format_double(z.real());
    const std::string im = format_double(std::abs(z.imag())) + "i";
    if (z.real() == 0.0) return (z.imag() < 0 ? "-" : "") + im;
    return format_double(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + im;
}

template <algebragen::Scalar T>
json grid_json(const Mat<T>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_scalar(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// An instance document, re-readable by load_instance.
template <algebragen::Scalar T>
json instance_json(std::size_t n, const ScalarKind& kind, bool unital, const std::vector<Mat<T>>& mats) {
    json gens = json::array();
    for (const auto& m : mats) gens.push_back(grid_json(m));
    return json{{"n", n}, {"field", kind.name()}, {"unital", unital}, {"generators", std::move(gens)}};
}

}  // namespace cli
