// gpd: command-line front end for modules over kQ and kQ[eps].

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <gpd/gpd.hpp>
#include <gpd/io.hpp>
#include <gpd/oracle.hpp>
#include <gpd/version.hpp>

using namespace gpd;
using gpd::io::json;

namespace {

enum Exit { ok = 0, not_gp = 1, invalid = 2, parse_error = 3, budget = 4, oracle_mismatch = 5, failure = 6 };

struct OracleDiscrepancy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    std::string algebra_path;
    std::vector<std::string> module_paths;
    std::string seed_text = "0xDEC0DE";
    std::uint64_t seed = 0xDEC0DE;
    std::string json_path;
    bool oracle = false;
    std::optional<std::uint64_t> field_p;
    std::uint64_t budget = 1'000'000;
};

struct Outcome {
    json result;
    int exit_code = ok;
};

std::uint64_t parse_seed(const std::string& s) {
    int base = 10;
    std::string digits = s;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        base = 16;
        digits = s.substr(2);
    }
    if (digits.empty() || digits[0] == '-' || digits[0] == '+')
        fail(Errc::parse, "bad seed '" + s + "': expected decimal or 0x hex");
    try {
        std::size_t used = 0;
        auto v = std::stoull(digits, &used, base);
        if (used != digits.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(Errc::parse, "bad seed '" + s + "': expected decimal or 0x hex");
    }
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        fail(Errc::internal_inconsistency, "sha256 failed");
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(md[i]);
    return os.str();
}

std::string field_name(const PrimeField& f) { return "F_" + std::to_string(f.characteristic()); }
std::string field_name(const RationalField&) { return "Q"; }

template <Field F>
ModuleRep<F> load_checked(const AlgebraPtr<F>& alg, const std::string& path) {
    auto v = io::load_module(alg, path);
    check_module(v);
    return v;
}

std::string module_id(const std::string& path) { return std::filesystem::path(path).stem().string(); }

// Tolerates a budget overrun inside the cross-check: the check is skipped, not failed.
template <class Fn>
json oracle_check(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        if (e.code() != Errc::budget_exceeded) throw;
        return json{{"status", "skipped: budget exceeded"}};
    }
}

json agreement(const json& main, const json& oracle, const std::string& what) {
    if (main != oracle)
        throw OracleDiscrepancy("oracle discrepancy in " + what + ": main " + main.dump() + ", oracle " + oracle.dump());
    return json{{"status", "agrees"}, {what, oracle}};
}

// --- commands -----------------------------------------------------------------

template <Field F>
Outcome cmd_validate(const AlgebraPtr<F>& alg, const Options&) {
    validate(*alg);
    std::cout << "field " << field_name(alg->field) << "\n";
    std::cout << "dim " << alg->dim() << "\n";
    std::cout << "basis size " << alg->basis.size() << "\n";
    std::cout << "generators " << alg->num_generators() << "\n";
    std::cout << "relations " << alg->relations.size() << "\n";
    std::cout << "ok\n";
    return {json{{"dim", alg->dim()},
                 {"basis", alg->basis},
                 {"generators", alg->generator_names},
                 {"relations", alg->relations.size()},
                 {"dual_numbers", alg->dual_extended}}};
}

template <Field F>
Outcome cmd_module_check(const AlgebraPtr<F>& alg, const Options& o) {
    auto v = load_checked(alg, o.module_paths.at(0));
    json dims = json::object();
    auto vd = v.vertex_dims();
    for (std::size_t i = 0; i < vd.size(); ++i) dims[alg->quiver.vertices()[i]] = vd[i];
    json result{{"dim", v.dim()}, {"vertex_dims", dims}, {"valid", true}};
    std::cout << result.dump(2) << "\n";
    return {result};
}

template <Field F>
Outcome cmd_hom(const AlgebraPtr<F>& alg, const Options& o) {
    auto v = load_checked(alg, o.module_paths.at(0));
    auto w = load_checked(alg, o.module_paths.at(1));
    auto hom = hom_basis(v, w);
    json result{{"dim", hom.dim()}, {"basis", io::maps_to_json(hom.basis)}};
    if (o.oracle) {
        if constexpr (FiniteField<F>)
            result["oracle"] = agreement(hom.dim(), oracle::oracle_hom_dim(v, w), "dim");
        else
            result["oracle"] = {{"status", "skipped: infinite field"}};
    }
    std::cout << result.dump(2) << "\n";
    return {result};
}

template <Field F>
Outcome cmd_ext1(const AlgebraPtr<F>& alg, const Options& o) {
    auto v = load_checked(alg, o.module_paths.at(0));
    auto w = load_checked(alg, o.module_paths.at(1));
    auto pres = projective_cover(v);
    auto e = ext1_from_presentation(pres, w);
    json result = io::quotient_space_to_json(e);
    if (o.oracle) {
        if constexpr (FiniteField<F>) {
            // long exact sequence of Hom(-, W) with independently solved Hom dimensions
            std::size_t expected = 0;
            if (pres.syzygy.dim() > 0)
                expected = oracle::oracle_hom_dim(pres.syzygy, w) + oracle::oracle_hom_dim(v, w) -
                           oracle::oracle_hom_dim(pres.cover, w);
            result["oracle"] = agreement(e.dim, expected, "dim");
        } else {
            result["oracle"] = {{"status", "skipped: infinite field"}};
        }
    }
    std::cout << result.dump(2) << "\n";
    return {result};
}

template <Field F>
Outcome cmd_syzygy(const AlgebraPtr<F>& alg, const Options& o) {
    auto v = load_checked(alg, o.module_paths.at(0));
    auto pres = projective_cover(v);
    json result{{"dim", pres.syzygy.dim()},
                {"cover_dim", pres.cover.dim()},
                {"projective", pres.syzygy.dim() == 0},
                {"syzygy", io::module_to_json(pres.syzygy)}};
    std::cout << result.dump(2) << "\n";
    std::cout << "projective: " << (pres.syzygy.dim() == 0 ? "true" : "false") << "\n";
    return {result};
}

template <Field F>
Outcome cmd_stable_end(const AlgebraPtr<F>& alg, const Options& o) {
    auto v = load_checked(alg, o.module_paths.at(0));
    auto s = stable_hom(v, v);
    json result = io::quotient_space_to_json(s);
    result["is_k"] = s.dim == 1;
    std::cout << result.dump(2) << "\n";
    return {result};
}

template <Field F>
Outcome cmd_gp_check(const AlgebraPtr<F>& alg, const Options& o) {
    auto v = load_checked(alg, o.module_paths.at(0));
    auto verdict = is_gorenstein_projective(v);
    json result = io::verdict_to_json(verdict);
    if (o.oracle) {
        if constexpr (FiniteField<F>)
            result["oracle"] = oracle_check([&] {
                return agreement(verdict.is_gp, oracle::oracle_torsionless(v, {o.budget}), "torsionless");
            });
        else
            result["oracle"] = {{"status", "skipped: infinite field"}};
    }
    std::cout << result.dump(2) << "\n";
    std::cout << (verdict.is_gp ? "Gorenstein-projective" : "not Gorenstein-projective") << "\n";
    return {result, verdict.is_gp ? ok : not_gp};
}

template <Field F>
Outcome cmd_deform(const AlgebraPtr<F>& alg, const Options& o) {
    const auto& path = o.module_paths.at(0);
    auto v = load_checked(alg, path);
    auto report = deformation_report(v, o.seed, module_id(path));
    json result = io::report_to_json(report);
    result["module_id"] = report.module_id;
    if (o.oracle) {
        if constexpr (FiniteField<F>) {
            json checks = json::object();
            checks["torsionless"] = oracle_check(
                [&] { return agreement(report.is_gp, oracle::oracle_torsionless(v, {o.budget}), "torsionless"); });
            checks["lift_classes"] = oracle_check([&] {
                std::uint64_t expected = 1;
                for (std::size_t i = 0; i < report.ext1_dim; ++i) {
                    expected *= *alg->field.order();
                    if (expected > o.budget) fail(Errc::budget_exceeded, "budget exceeded");
                }
                return agreement(expected, oracle::oracle_enumerate_lifts(v, {o.budget}), "classes");
            });
            result["oracle"] = checks;
        } else {
            result["oracle"] = {{"status", "skipped: infinite field"}};
        }
    }
    std::cout << "module " << report.module_id << " (dim " << v.dim() << ")\n";
    std::cout << "is_gp: " << (report.is_gp ? "true" : "false") << "\n";
    std::cout << "stable_end_dim: " << report.stable_end_dim << "\n";
    std::cout << "ext1_dim: " << report.ext1_dim << "\n";
    if (report.witness)
        std::cout << "witness: " << to_string(report.witness->kind) << ", dim P = " << report.witness->projective.dim()
                  << "\n";
    std::cout << "universal_lift_split: " << (report.universal_lift_split ? "true" : "false") << "\n";
    std::cout << "third_order_extension: " << to_string(report.third_order_extension) << "\n";
    switch (report.conclusion) {
        case Conclusion::R_is_dual_numbers: std::cout << "R(Λ,V) ≅ k[t]/(t^2)\n"; break;
        case Conclusion::R_is_k: std::cout << "R(Λ,V) ≅ k\n"; break;
        default: std::cout << "out of theorem scope: " << report.reason << "\n";
    }
    return {result};
}

template <Field F>
Outcome cmd_enumerate_lifts(const AlgebraPtr<F>& alg, const Options& o) {
    auto v = load_checked(alg, o.module_paths.at(0));
    if constexpr (FiniteField<F>) {
        auto classes = enumerate_dual_number_deformations(v, o.budget);
        json result{{"classes", classes}, {"q", *alg->field.order()}, {"ext1_dim", tangent_dimension(v)}};
        if (o.oracle)
            result["oracle"] = oracle_check([&] {
                return agreement(classes, oracle::oracle_enumerate_lifts(v, {o.budget}), "classes");
            });
        std::cout << result.dump(2) << "\n";
        return {result};
    } else {
        fail(Errc::not_applicable, "enumeration needs a finite field");
    }
}

template <Field F>
Outcome dispatch(const AlgebraPtr<F>& alg, const Options& o) {
    if (o.command == "validate") return cmd_validate(alg, o);
    if (o.command == "module-check") return cmd_module_check(alg, o);
    if (o.command == "hom") return cmd_hom(alg, o);
    if (o.command == "ext1") return cmd_ext1(alg, o);
    if (o.command == "syzygy") return cmd_syzygy(alg, o);
    if (o.command == "stable-end") return cmd_stable_end(alg, o);
    if (o.command == "gp-check") return cmd_gp_check(alg, o);
    if (o.command == "deform") return cmd_deform(alg, o);
    if (o.command == "enumerate-lifts") return cmd_enumerate_lifts(alg, o);
    fail(Errc::contract_violation, "unknown command " + o.command);
}

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::parse: return parse_error;
        case Errc::validation:
        case Errc::not_applicable: return invalid;
        case Errc::budget_exceeded: return budget;
        default: return failure;
    }
}

int run(Options o) {
    auto start = std::chrono::steady_clock::now();
    o.seed = parse_seed(o.seed_text);
    auto algebra_text = io::read_file(o.algebra_path);
    auto file = io::algebra_file_from_json(io::parse_json(algebra_text, o.algebra_path), o.algebra_path);
    if (o.field_p) file.field = PrimeField(*o.field_p);

    json inputs = json::array();
    inputs.push_back({{"path", o.algebra_path}, {"sha256", sha256_hex(algebra_text)}});
    for (const auto& p : o.module_paths) inputs.push_back({{"path", p}, {"sha256", sha256_hex(io::read_file(p))}});

    std::string fname;
    Outcome outcome = std::visit(
        [&](const auto& field) {
            fname = field_name(field);
            return dispatch(io::build_algebra(file, field), o);
        },
        file.field);

    if (!o.json_path.empty()) {
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json doc{{"tool_version", gpd::version}, {"command", o.command}, {"inputs", inputs},
                 {"seed", o.seed},               {"field", fname},        {"result", outcome.result},
                 {"timing", {{"seconds", seconds}}}};
        std::ofstream out(o.json_path, std::ios::binary);
        if (!out) fail(Errc::parse, "cannot write '" + o.json_path + "'");
        out << doc.dump(2) << "\n";
    }
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gorenstein-projective modules and their deformations over kQ[eps]"};
    app.require_subcommand(1);
    app.set_version_flag("--version", gpd::version);
    Options o;

    struct Spec {
        const char* name;
        const char* help;
        int modules;
    };
    const Spec specs[] = {
        {"validate", "build and validate an algebra", 0},
        {"module-check", "check a module against the algebra relations", 1},
        {"hom", "basis of Hom(V, W)", 2},
        {"ext1", "Ext^1(V, W) with cocycle representatives", 2},
        {"syzygy", "syzygy of V from its projective cover", 1},
        {"stable-end", "stable endomorphism space of V", 1},
        {"gp-check", "Gorenstein-projectivity of V (exit 0 yes, 1 no)", 1},
        {"deform", "deformation report for V", 1},
        {"enumerate-lifts", "count deformations over the dual numbers", 1},
    };
    std::vector<std::string> module_slots[2];
    for (const auto& s : specs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("algebra", o.algebra_path, "algebra file")->required();
        if (s.modules >= 1) sub->add_option("module", o.module_paths, "module file(s)")->required()->expected(s.modules);
        sub->add_option("--seed", o.seed_text, "random seed, decimal or 0x hex");
        sub->add_option("--json", o.json_path, "write a report document to PATH");
        sub->add_flag("--oracle", o.oracle, "cross-check against brute-force oracles")->group("");
        sub->add_option("--field-p", o.field_p, "override the field with F_p");
        sub->add_option("--budget", o.budget, "search budget for enumerations");
        sub->callback([&o, name = std::string(s.name)] { o.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : parse_error;
    }

    try {
        return run(o);
    } catch (const OracleDiscrepancy& e) {
        std::cerr << "gpd: " << e.what() << "\n";
        return oracle_mismatch;
    } catch (const Error& e) {
        std::cerr << "gpd: error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "gpd: error: " << e.what() << "\n";
        return failure;
    }
}
