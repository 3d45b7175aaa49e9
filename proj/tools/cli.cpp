#include "cli.hpp"

#include "lpconj/conjugacy.hpp"
#include "lpconj/io.hpp"
#include "lpconj/probe.hpp"
#include "lpconj/rotation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace lpconj::cli {

namespace {

using nlohmann::json;

struct Report {
    json body;
    std::string csv;
    int code = kOk;
};

FinSeq read_input(const RunConfig& cfg) {
    std::string text;
    if (!cfg.input.empty() && cfg.input.front() == '{') {
        text = cfg.input;
    } else if (cfg.input.empty() || cfg.input == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(cfg.input);
        if (!in) throw IoError("cannot open '" + cfg.input + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json j = io::parse(text);
    if (j.is_object() && !j.contains("p")) j["p"] = cfg.p;
    FinSeq x = io::finseq_from_json(j);
    require_same_exponent(cfg.p, x.p(), "input vector");
    return x;
}

ConjugacyMap build_map(const RunConfig& cfg, const WeightSeq& w) {
    if (cfg.mode == "doubling") return build_conjugacy_to_doubling(w, cfg.p);
    if (cfg.mode == "halving") return build_conjugacy_to_halving(w, cfg.p);
    if (w.inf_modulus() > 1.0) return build_conjugacy_to_doubling(w, cfg.p);
    if (w.sup_modulus() < 1.0 && w.inf_modulus() > 0.0) return build_conjugacy_to_halving(w, cfg.p);
    throw HypothesisError(
        "no conjugacy available: need inf |w_n| > 1 (to 2I) or 0 < inf |w_n|, sup |w_n| < 1 (to I/2)");
}

Report cmd_warp(const RunConfig& cfg, bool inverse) {
    WarpMap h(parse_exponents(cfg.exponents), checked_exponent(cfg.p));
    FinSeq x = read_input(cfg);
    FinSeq y = inverse ? h.inverse(x) : h.forward(x);
    Report r;
    r.body = {{"command", inverse ? "unwarp" : "warp"},
              {"p", cfg.p},
              {"exponents", io::to_json(h.exponents())},
              {"input", io::to_json(x)},
              {"output", io::to_json(y)},
              {"radicands", io::to_json(radicand_diagnostics(h, inverse ? y : x))}};
    r.csv = io::finseq_csv(y);
    return r;
}

Report cmd_rotate(const RunConfig& cfg) {
    WeightSeq w = parse_weights(cfg.weights);
    checked_exponent(cfg.p);
    FinSeq x = read_input(cfg);
    FinSeq y = cfg.inverse ? rotation_inverse(w, x) : rotation_forward(w, x);
    Report r;
    r.body = {{"command", "rotate"},       {"p", cfg.p},
              {"weights", io::to_json(w)}, {"inverse", cfg.inverse},
              {"input", io::to_json(x)},   {"output", io::to_json(y)}};
    r.csv = io::finseq_csv(y);
    return r;
}

Report cmd_build(const RunConfig& cfg) {
    WeightSeq w = parse_weights(cfg.weights);
    ConjugacyMap m = build_map(cfg, w);
    Report r;
    r.body = {{"command", "build"}, {"map", io::to_json(m)}};
    if (!cfg.input.empty()) {
        FinSeq x = read_input(cfg);
        FinSeq y = evaluate(m, x, cfg.inverse ? Direction::inverse : Direction::forward);
        r.body["input"] = io::to_json(x);
        r.body["output"] = io::to_json(y);
        r.csv = io::finseq_csv(y);
    } else {
        r.csv = "stage,type,inverse\n";
        for (std::size_t k = 0; k < m.stages().size(); ++k) {
            const auto& st = m.stages()[k];
            bool inv = std::visit([](const auto& s) { return s.inverse; }, st);
            r.csv += std::to_string(k) + "," + describe(st) + "," + (inv ? "1" : "0") + "\n";
        }
    }
    return r;
}

Report cmd_verify(const RunConfig& cfg) {
    WeightSeq w = parse_weights(cfg.weights);
    ConjugacyMap m = build_map(cfg, w);
    DefectReport d = conjugacy_defect(m, cfg.samples, cfg.seed);
    double tolerance = cfg.tolerance.value_or(1e-8);
    bool passed = d.max_defect <= tolerance;
    Report r;
    r.body = {{"command", "verify"}, {"map", io::to_json(m)},          {"seed", cfg.seed},
              {"report", io::to_json(d)}, {"tolerance", tolerance}, {"passed", passed}};
    r.csv = "samples,max_defect,mean_defect,max_abs_defect,tolerance,passed\n" +
            std::to_string(d.samples) + "," + io::format_double(d.max_defect) + "," +
            io::format_double(d.mean_defect) + "," + io::format_double(d.max_abs_defect) + "," +
            io::format_double(tolerance) + "," + (passed ? "1" : "0") + "\n";
    r.code = passed ? kOk : kVerificationFailed;
    return r;
}

Report cmd_probe(const RunConfig& cfg) {
    WeightSeq w = parse_weights(cfg.weights);
    EscapeProfile e = escape_profile(w, checked_exponent(cfg.p), cfg.epsilon, parse_indices(cfg.indices),
                                     cfg.radius_factor, cfg.cap);
    Report r;
    r.body = io::to_json(e);
    r.body["command"] = "probe";
    r.csv = io::escape_profile_csv(e);
    return r;
}

Report cmd_selftest(const RunConfig& cfg, std::ostream& err) {
    Report r;
    r.body = selftest(cfg.seed, cfg.samples, cfg.tolerance, err);
    r.code = r.body.at("passed").get<bool>() ? kOk : kVerificationFailed;
    r.csv = "property,passed,worst,limit\n";
    for (const auto& prop : r.body.at("properties")) {
        r.csv += prop.at("name").get<std::string>() + "," + (prop.at("passed").get<bool>() ? "1" : "0") +
                 "," + prop.at("worst").dump() + "," + prop.at("limit").dump() + "\n";
    }
    return r;
}

json error_body(const char* kind, int code, const std::string& message) {
    return {{"error", {{"kind", kind}, {"code", code}, {"message", message}}}};
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw IoError("cannot write '" + cfg.out + "'");
    f << text;
    if (!f) throw IoError("write to '" + cfg.out + "' failed");
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--p", cfg.p, "exponent of l^p, 1 <= p < inf")->capture_default_str();
    sub->add_option("--out", cfg.out, "write the report to this file");
    sub->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

void add_input(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--input", cfg.input, "vector as inline JSON, a file path, or - for stdin");
}

void add_weights(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--weights", cfg.weights, "constant:Z | list:Z1,...,tail=Z | harmonic:C,A | JSON")
        ->required();
}

void add_mode(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--mode", cfg.mode, "auto, doubling or halving")
        ->check(CLI::IsMember({"auto", "doubling", "halving"}))
        ->capture_default_str();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Conjugacies between diagonal operators on l^p", "lpconj"};
    app.require_subcommand(1);

    auto* warp = app.add_subcommand("warp", "apply the tail-sum warp h^S");
    auto* unwarp = app.add_subcommand("unwarp", "apply the inverse warp");
    for (auto* sub : {warp, unwarp}) {
        sub->add_option("--exponents", cfg.exponents, "constant:S | list:S1,...,tail=S[,bound=R] | harmonic:C,A | JSON")
            ->required();
        add_input(sub, cfg);
        add_common(sub, cfg);
    }

    auto* rotate = app.add_subcommand("rotate", "apply the coordinatewise phase warp F_W");
    add_weights(rotate, cfg);
    rotate->add_flag("--inverse", cfg.inverse, "apply F_W^{-1}");
    add_input(rotate, cfg);
    add_common(rotate, cfg);

    auto* build = app.add_subcommand("build", "construct the conjugacy for D_W");
    add_weights(build, cfg);
    add_mode(build, cfg);
    build->add_flag("--inverse", cfg.inverse, "evaluate the inverse map on --input");
    add_input(build, cfg);
    add_common(build, cfg);

    auto* verify = app.add_subcommand("verify", "measure the conjugacy defect on random vectors");
    add_weights(verify, cfg);
    add_mode(verify, cfg);
    verify->add_option("--samples", cfg.samples)->capture_default_str();
    verify->add_option("--seed", cfg.seed)->capture_default_str();
    verify->add_option("--tolerance", cfg.tolerance, "pass threshold for the relative defect (default 1e-8)");
    add_common(verify, cfg);

    auto* probe = app.add_subcommand("probe", "escape times of eps*e_n under D_W");
    add_weights(probe, cfg);
    probe->add_option("--epsilon", cfg.epsilon)->capture_default_str();
    probe->add_option("--radius-factor", cfg.radius_factor)->capture_default_str();
    probe->add_option("--indices", cfg.indices, "comma-separated coordinate indices")->capture_default_str();
    probe->add_option("--cap", cfg.cap, "iteration cap")->capture_default_str();
    add_common(probe, cfg);

    auto* self = app.add_subcommand("selftest", "run the invariant suite");
    self->add_option("--seed", cfg.seed)->capture_default_str();
    self->add_option("--samples", cfg.samples, "samples per randomized property")->capture_default_str();
    self->add_option("--tolerance", cfg.tolerance, "conjugacy defect threshold (default 1e-8)");
    self->add_option("--out", cfg.out, "write the report to this file");
    self->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    std::vector<std::string> owned;
    owned.reserve(args.size() + 1);
    owned.push_back("lpconj");
    owned.insert(owned.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : owned) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kOk;
        }
        out << error_body("usage", kUsage, e.what()).dump(2) << "\n";
        err << "lpconj: " << e.what() << "\n";
        return kUsage;
    }

    auto fail = [&](const char* kind, int code, const std::string& message) {
        out << error_body(kind, code, message).dump(2) << "\n";
        err << "lpconj: " << message << "\n";
        return code;
    };

    try {
        Report r;
        if (warp->parsed()) r = cmd_warp(cfg, false);
        else if (unwarp->parsed()) r = cmd_warp(cfg, true);
        else if (rotate->parsed()) r = cmd_rotate(cfg);
        else if (build->parsed()) r = cmd_build(cfg);
        else if (verify->parsed()) r = cmd_verify(cfg);
        else if (probe->parsed()) r = cmd_probe(cfg);
        else r = cmd_selftest(cfg, err);
        emit(cfg, cfg.format == "csv" ? r.csv : r.body.dump(2) + "\n", out);
        return r.code;
    } catch (const ParseError& e) {
        return fail("parse", kUsage, e.what());
    } catch (const HypothesisError& e) {
        return fail("hypothesis", kHypothesis, e.what());
    } catch (const DomainError& e) {
        return fail("domain", kDomain, e.what());
    } catch (const IoError& e) {
        return fail("io", kIo, e.what());
    } catch (const std::exception& e) {
        return fail("internal", kInternal, e.what());
    }
}

} // namespace lpconj::cli
