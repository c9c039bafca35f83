#pragma once

#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gpd/deformation.hpp"

namespace gpd::io {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::parse, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(Errc::parse, origin + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

template <class T>
T get_field(const json& j, const char* key, const std::string& origin) {
    if (!j.is_object() || !j.contains(key)) fail(Errc::parse, origin + ": missing key '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(Errc::parse, origin + ": bad value for '" + key + "': " + e.what());
    }
}

// --- field elements and matrices -------------------------------------------

inline json element_to_json(const PrimeField&, PrimeField::value_type v) { return v; }
inline json element_to_json(const RationalField& f, const RationalField::value_type& v) { return f.to_string(v); }

inline PrimeField::value_type element_from_json(const PrimeField& f, const json& j) {
    if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return f.from_int(std::stoll(j.get<std::string>()));
        } catch (const std::exception&) {
        }
    }
    fail(Errc::parse, "expected an integer matrix entry, got " + j.dump());
}

inline RationalField::value_type element_from_json(const RationalField& f, const json& j) {
    if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
    if (j.is_string()) return f.parse(j.get<std::string>());
    fail(Errc::parse, "expected a rational matrix entry, got " + j.dump());
}

/// JSON array of rows.
template <Field F>
json matrix_to_json(const Matrix<F>& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(element_to_json(m.field(), m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <Field F>
Matrix<F> matrix_from_json(const F& f, const json& j, std::size_t rows, std::size_t cols, const std::string& what) {
    Matrix<F> m(f, rows, cols);
    if (!j.is_array()) fail(Errc::parse, what + ": expected an array of rows");
    // a block with zero columns may be written [] or [[],[],...]
    if (cols == 0 && j.empty()) return m;
    if (j.size() != rows)
        fail(Errc::parse, what + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            fail(Errc::parse, what + ": row " + std::to_string(r) + " should have " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = element_from_json(f, j[r][c]);
    }
    return m;
}

template <Field F>
json maps_to_json(const std::vector<ModuleMap<F>>& maps) {
    json out = json::array();
    for (const auto& m : maps) out.push_back(matrix_to_json(m.matrix));
    return out;
}

// --- algebra files -----------------------------------------------------------

struct AlgebraFile {
    FieldSpec field;
    Quiver quiver;
    bool dual_numbers;
};

/// Validation failures of the quiver surface as Errc::validation; malformed
/// documents as Errc::parse.
inline AlgebraFile algebra_file_from_json(const json& j, const std::string& origin) {
    auto field_json = get_field<json>(j, "field", origin);
    auto type = get_field<std::string>(field_json, "type", origin);
    FieldSpec field = RationalField{};
    if (type == "prime")
        field = PrimeField(get_field<std::uint64_t>(field_json, "p", origin));
    else if (type != "rational")
        fail(Errc::parse, origin + ": unknown field type '" + type + "'");

    auto quiver_json = get_field<json>(j, "quiver", origin);
    auto vertices = get_field<std::vector<std::string>>(quiver_json, "vertices", origin);
    std::vector<std::array<std::string, 3>> arrows;
    if (quiver_json.contains("arrows"))
        for (const auto& a : get_field<json>(quiver_json, "arrows", origin))
            arrows.push_back({get_field<std::string>(a, "name", origin), get_field<std::string>(a, "from", origin),
                              get_field<std::string>(a, "to", origin)});
    bool dual = j.contains("dual_numbers") ? get_field<bool>(j, "dual_numbers", origin) : false;
    return {field, Quiver::from_labels(std::move(vertices), arrows), dual};
}

inline AlgebraFile load_algebra_file(const std::string& path) {
    return algebra_file_from_json(parse_json(read_file(path), path), path);
}

/// path_algebra, then dual_number_extension when requested.
template <Field F>
AlgebraPtr<F> build_algebra(const AlgebraFile& file, const F& field) {
    auto alg = path_algebra(file.quiver, field);
    if (file.dual_numbers) alg = dual_number_extension(alg);
    return share(std::move(alg));
}

// --- module files --------------------------------------------------------------

/// Basis of the total space is the vertex blocks in declaration order.
template <Field F>
ModuleRep<F> module_from_json(const AlgebraPtr<F>& alg, const json& j, const std::string& origin) {
    const auto& f = alg->field;
    const auto& q = alg->quiver;
    const std::size_t n = q.num_vertices();
    std::vector<std::size_t> dims(n, 0), offset(n, 0);
    auto dims_json = get_field<json>(j, "dims", origin);
    if (!dims_json.is_object()) fail(Errc::parse, origin + ": 'dims' must be an object");
    for (const auto& [label, value] : dims_json.items()) {
        auto v = q.vertex_index(label);
        if (!v) fail(Errc::parse, origin + ": unknown vertex '" + label + "' in dims");
        if (!value.is_number_unsigned()) fail(Errc::parse, origin + ": dimension of '" + label + "' must be a non-negative integer");
        dims[*v] = value.template get<std::size_t>();
    }
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) offset[i] = total, total += dims[i];

    std::vector<Matrix<F>> action;
    for (std::size_t i = 0; i < n; ++i) {
        Matrix<F> e(f, total, total);
        for (std::size_t k = 0; k < dims[i]; ++k) e(offset[i] + k, offset[i] + k) = f.one();
        action.push_back(std::move(e));
    }
    json arrows = j.contains("arrows") ? j.at("arrows") : json::object();
    if (!arrows.is_object()) fail(Errc::parse, origin + ": 'arrows' must be an object");
    for (const auto& [name, _] : arrows.items()) {
        bool known = std::any_of(q.arrows().begin(), q.arrows().end(), [&](const Arrow& a) { return a.name == name; });
        if (!known) fail(Errc::parse, origin + ": unknown arrow '" + name + "'");
    }
    for (const auto& a : q.arrows()) {
        Matrix<F> m(f, total, total);
        if (arrows.contains(a.name))
            m.set_block(offset[a.target], offset[a.source],
                        matrix_from_json(f, arrows.at(a.name), dims[a.target], dims[a.source],
                                         origin + ": arrow '" + a.name + "'"));
        action.push_back(std::move(m));
    }
    if (alg->dual_extended) {
        Matrix<F> eps(f, total, total);
        json blocks = j.contains("epsilon") ? j.at("epsilon") : json::object();
        if (!blocks.is_object()) fail(Errc::parse, origin + ": 'epsilon' must be an object");
        for (const auto& [label, value] : blocks.items()) {
            auto v = q.vertex_index(label);
            if (!v) fail(Errc::parse, origin + ": unknown vertex '" + label + "' in epsilon");
            eps.set_block(offset[*v], offset[*v],
                          matrix_from_json(f, value, dims[*v], dims[*v], origin + ": epsilon block '" + label + "'"));
        }
        action.push_back(std::move(eps));
    } else if (j.contains("epsilon")) {
        fail(Errc::parse, origin + ": 'epsilon' given but the algebra has no dual numbers");
    }
    return ModuleRep<F>(alg, total, std::move(action));
}

template <Field F>
ModuleRep<F> load_module(const AlgebraPtr<F>& alg, const std::string& path) {
    return module_from_json(alg, parse_json(read_file(path), path), path);
}

/// Module-file body (dims, arrows, epsilon) in a vertex-ordered basis.
template <Field F>
json module_to_json(const ModuleRep<F>& v) {
    const auto& alg = v.algebra();
    const auto& q = alg.quiver;
    auto h = homogeneous_form(v);
    // stable sort of the homogeneous basis by vertex
    std::vector<std::size_t> order(v.dim());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return h.labels[a] < h.labels[b]; });
    std::vector<std::size_t> dims(q.num_vertices(), 0), offset(q.num_vertices(), 0);
    for (auto l : h.labels) ++dims[l];
    for (std::size_t i = 1; i < dims.size(); ++i) offset[i] = offset[i - 1] + dims[i - 1];
    auto permuted = [&](const Matrix<F>& m) {
        Matrix<F> out(v.field(), m.rows(), m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(order[r], order[c]);
        return out;
    };

    json out;
    json dj = json::object();
    for (std::size_t i = 0; i < dims.size(); ++i) dj[q.vertices()[i]] = dims[i];
    out["dims"] = dj;
    json arrows = json::object();
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const auto& ar = q.arrows()[a];
        auto m = permuted(h.module.action(alg.arrow_generator(a)));
        arrows[ar.name] = matrix_to_json(m.block(offset[ar.target], offset[ar.source], dims[ar.target], dims[ar.source]));
    }
    out["arrows"] = arrows;
    if (auto e = alg.epsilon_generator()) {
        auto m = permuted(h.module.action(*e));
        json eps = json::object();
        for (std::size_t i = 0; i < dims.size(); ++i)
            eps[q.vertices()[i]] = matrix_to_json(m.block(offset[i], offset[i], dims[i], dims[i]));
        out["epsilon"] = eps;
    }
    return out;
}

// --- results ---------------------------------------------------------------------

template <Field F>
json quotient_space_to_json(const QuotientSpace<F>& s) {
    return {{"dim", s.dim}, {"basis", maps_to_json(s.basis)}};
}

template <Field F>
json verdict_to_json(const GPVerdict<F>& v) {
    json out;
    out["is_gp"] = v.is_gp;
    out["ext1_to_lambda"] = v.ext1_to_lambda_dim;
    out["torsionless_embedding"] = v.torsionless_embedding ? matrix_to_json(v.torsionless_embedding->matrix) : json();
    return out;
}

template <Field F>
json witness_to_json(const StrongGPWitness<F>& w) {
    json out;
    out["kind"] = to_string(w.kind);
    out["P_dim"] = w.projective.dim();
    out["P"] = module_to_json(w.projective);
    out["iota"] = matrix_to_json(w.iota.matrix);
    out["pi"] = matrix_to_json(w.pi.matrix);
    return out;
}

template <Field F>
json lift_to_json(const Lift<F>& l) {
    json out;
    out["order"] = l.order;
    json blocks = json::object();
    const auto& alg = l.module.algebra();
    for (std::size_t g = 0; g < l.blocks.size(); ++g) {
        json per = json::array();
        for (const auto& b : l.blocks[g]) per.push_back(matrix_to_json(b));
        blocks[alg.generator_names[g]] = per;
    }
    out["blocks"] = blocks;
    out["phi"] = matrix_to_json(l.phi);
    return out;
}

template <Field F>
json report_to_json(const DeformationReport<F>& r) {
    json out;
    out["is_gp"] = r.is_gp;
    out["stable_end_dim"] = r.stable_end_dim;
    out["ext1_dim"] = r.ext1_dim;
    out["witness"] = r.witness ? witness_to_json(*r.witness) : json();
    out["universal_lift"] = r.universal_lift ? lift_to_json(*r.universal_lift) : json();
    out["universal_lift_split"] = r.universal_lift_split;
    out["third_order_extension"] = to_string(r.third_order_extension);
    out["conclusion"] = to_string(r.conclusion);
    out["reason"] = r.reason;
    return out;
}

}  // namespace gpd::io
