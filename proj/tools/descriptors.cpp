#include "cli.hpp"

#include "lpconj/error.hpp"
#include "lpconj/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

namespace lpconj::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view text, std::string_view what) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Compact {
    std::string kind;
    std::vector<std::string_view> args;
    std::optional<std::string_view> tail;
    std::optional<std::string_view> bound;
};

std::optional<Compact> split_compact(std::string_view spec) {
    auto colon = spec.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    std::string kind(trim(spec.substr(0, colon)));
    if (kind != "constant" && kind != "list" && kind != "harmonic") return std::nullopt;
    Compact c{kind, {}, {}, {}};
    for (auto part : split(spec.substr(colon + 1), ',')) {
        if (part.substr(0, 5) == "tail=") {
            c.tail = part.substr(5);
        } else if (part.substr(0, 6) == "bound=") {
            c.bound = part.substr(6);
        } else {
            c.args.push_back(part);
        }
    }
    return c;
}

void expect_args(const Compact& c, std::size_t n, const char* shape) {
    if (c.args.size() != n) {
        throw ParseError(c.kind + " expects " + shape);
    }
}

nlohmann::json json_spec(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') return io::parse(spec);
    return io::parse(read_file(spec));
}

} // namespace

Complex parse_complex(const std::string& text) {
    std::string_view s = trim(text);
    if (s.empty()) throw ParseError("empty complex literal");
    if (s.back() != 'i') return {parse_real(s, "number"), 0.0};
    s.remove_suffix(1);
    std::size_t split_at = std::string_view::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split_at = k;
            break;
        }
    }
    auto imag = [&](std::string_view t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t, "imaginary part");
    };
    if (split_at == std::string_view::npos) return {0.0, imag(s)};
    return {parse_real(s.substr(0, split_at), "real part"), imag(s.substr(split_at))};
}

WeightSeq parse_weights(const std::string& spec) {
    auto c = split_compact(spec);
    if (!c) return io::weights_from_json(json_spec(spec));
    if (c->bound) throw ParseError("bound= applies to exponent sequences only");
    if (c->kind == "constant") {
        expect_args(*c, 1, "one value");
        if (c->tail) throw ParseError("constant takes no tail");
        return WeightSeq::constant(parse_complex(std::string(c->args[0])));
    }
    if (c->kind == "harmonic") {
        expect_args(*c, 2, "c,a");
        if (c->tail) throw ParseError("harmonic takes no tail");
        return WeightSeq::harmonic(parse_complex(std::string(c->args[0])),
                                   parse_complex(std::string(c->args[1])));
    }
    if (!c->tail) throw ParseError("list expects tail=<value>");
    std::vector<Complex> values;
    for (auto a : c->args) values.push_back(parse_complex(std::string(a)));
    return WeightSeq::list(std::move(values), parse_complex(std::string(*c->tail)));
}

ExponentSeq parse_exponents(const std::string& spec) {
    auto c = split_compact(spec);
    if (!c) return io::exponents_from_json(json_spec(spec));
    std::optional<double> bound;
    if (c->bound) bound = parse_real(*c->bound, "bound");
    if (c->kind == "constant") {
        expect_args(*c, 1, "one value");
        if (c->tail) throw ParseError("constant takes no tail");
        return ExponentSeq(ExponentSeq::Constant{parse_real(c->args[0], "exponent")}, bound);
    }
    if (c->kind == "harmonic") {
        expect_args(*c, 2, "c,a");
        if (c->tail) throw ParseError("harmonic takes no tail");
        return ExponentSeq(
            ExponentSeq::Harmonic{parse_real(c->args[0], "c"), parse_real(c->args[1], "a")}, bound);
    }
    if (!c->tail) throw ParseError("list expects tail=<value>");
    std::vector<double> values;
    for (auto a : c->args) values.push_back(parse_real(a, "exponent"));
    return ExponentSeq(ExponentSeq::List{std::move(values), parse_real(*c->tail, "tail")}, bound);
}

std::vector<Index> parse_indices(const std::string& text) {
    std::vector<Index> out;
    for (auto part : split(text, ',')) {
        Index v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
            throw ParseError("cannot parse index '" + std::string(part) + "'");
        }
        out.push_back(v);
    }
    return out;
}

} // namespace lpconj::cli
