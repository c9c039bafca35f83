#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpd/homology.hpp"

namespace gpd {

/// Outcome of the two Gorenstein-projectivity criteria over kQ[eps]:
/// Ext^1(V, Lambda) = 0, and V embedding into a free module.
template <Field F>
struct GPVerdict {
    bool is_gp = false;
    std::size_t ext1_to_lambda_dim = 0;
    std::optional<ModuleMap<F>> torsionless_embedding;  // V -> sum_i (Lambda e_i)^{h_i}
};

template <Field F>
GPVerdict<F> is_gorenstein_projective(const ModuleRep<F>& v) {
    const auto& alg_ptr = v.algebra_ptr();
    if (!alg_ptr->dual_extended)
        fail(Errc::not_applicable, "criterion not applicable: algebra is not a dual-number extension");
    const auto& f = v.field();

    GPVerdict<F> verdict;
    auto pres = projective_cover(v);
    std::vector<Matrix<F>> maps;
    for (std::size_t i = 0; i < alg_ptr->num_vertices(); ++i) {
        auto proj = indecomposable_projective(alg_ptr, i);
        verdict.ext1_to_lambda_dim += ext1_from_presentation(pres, proj).dim;
        for (auto& h : hom_basis(v, proj).basis) maps.push_back(std::move(h.matrix));
    }
    // torsionless iff the maps into the indecomposable projectives jointly separate points
    auto stacked = vstack(f, v.dim(), maps);
    bool torsionless = kernel_basis(stacked).empty();
    if (torsionless) verdict.torsionless_embedding = ModuleMap<F>{std::move(stacked)};

    bool ext_vanishes = verdict.ext1_to_lambda_dim == 0;
    if (ext_vanishes != torsionless)
        fail(Errc::internal_inconsistency, "internal inconsistency: Ext^1(V, Lambda) and torsionlessness disagree");
    verdict.is_gp = torsionless;
    return verdict;
}

enum class WitnessKind { minimal_syzygy, projective_canonical, syzygy_plus_projective };

inline const char* to_string(WitnessKind k) {
    switch (k) {
        case WitnessKind::minimal_syzygy: return "minimal_syzygy";
        case WitnessKind::projective_canonical: return "projective_canonical";
        default: return "syzygy_plus_projective";
    }
}

/// 0 -> V --iota--> P --pi--> V -> 0 with P projective.
template <Field F>
struct StrongGPWitness {
    ModuleRep<F> module;
    ModuleRep<F> projective;
    ModuleMap<F> iota;
    ModuleMap<F> pi;
    WitnessKind kind;
};

/// Projective V: V -> V + V -> V. Otherwise the minimal cover, provided
/// Omega V is isomorphic to V. Failing that, V may be Omega V + Q with Q
/// projective (Omega kills Q); then 0 -> V -> P0 + Q -> V -> 0 sends Q identically.
template <Field F>
StrongGPWitness<F> strong_gp_witness(const ModuleRep<F>& v, std::uint64_t seed) {
    if (!is_gorenstein_projective(v).is_gp)
        fail(Errc::contract_violation, "strong_gp_witness needs a Gorenstein-projective module");
    const auto& f = v.field();
    const std::size_t n = v.dim();
    auto pres = projective_cover(v);
    if (pres.syzygy.dim() == 0) {
        auto iota = vstack(f, n, {Matrix<F>::identity(f, n), Matrix<F>(f, n, n)});
        auto pi = hstack(f, n, {Matrix<F>(f, n, n), Matrix<F>::identity(f, n)});
        return {v, direct_sum(v, v), {iota}, {pi}, WitnessKind::projective_canonical};
    }
    if (auto iso = is_isomorphic(v, pres.syzygy, seed))
        return {v, std::move(pres.cover), {pres.inclusion.matrix * iso->matrix}, std::move(pres.epi),
                WitnessKind::minimal_syzygy};

    // multiplicities of Q: top V minus top Omega V, vertex by vertex
    const auto& alg = v.algebra_ptr();
    std::vector<std::ptrdiff_t> excess(alg->num_vertices(), 0);
    for (auto i : pres.summands) ++excess[i];
    for (auto i : projective_cover(pres.syzygy).summands) --excess[i];
    std::vector<ModuleRep<F>> parts;
    for (std::size_t i = 0; i < excess.size(); ++i) {
        if (excess[i] < 0) fail(Errc::witness_not_found, "witness not found: the syzygy is not a summand of the module");
        for (std::ptrdiff_t k = 0; k < excess[i]; ++k) parts.push_back(indecomposable_projective(alg, i));
    }
    auto q = direct_sum(alg, parts);
    std::optional<ModuleMap<F>> iso;
    if (!parts.empty()) iso = is_isomorphic(v, direct_sum(pres.syzygy, q), seed);
    if (!iso) fail(Errc::witness_not_found, "witness not found: the syzygy is not isomorphic to the module");

    const std::size_t s = pres.syzygy.dim(), m = q.dim(), c = pres.cover.dim();
    Matrix<F> embed(f, c + m, s + m);  // Omega V + Q -> P0 + Q
    embed.set_block(0, 0, pres.inclusion.matrix);
    embed.set_block(c, s, Matrix<F>::identity(f, m));
    auto pi = hstack(f, n, {pres.epi.matrix, Matrix<F>(f, n, m)});
    return {v, direct_sum(pres.cover, q), {embed * iso->matrix}, {pi}, WitnessKind::syzygy_plus_projective};
}

/// Throws Errc::validation naming the first failed check.
template <Field F>
void verify_strong_gp(const StrongGPWitness<F>& w) {
    const auto& v = w.module;
    const auto& p = w.projective;
    const std::size_t n = v.dim();
    if (p.dim() != 2 * n) fail(Errc::validation, "dim P is not 2 dim V");
    if (w.iota.matrix.rows() != p.dim() || w.iota.matrix.cols() != n || w.pi.matrix.rows() != n ||
        w.pi.matrix.cols() != p.dim())
        fail(Errc::validation, "witness maps have the wrong shape");
    if (!is_intertwiner(w.iota.matrix, v, p)) fail(Errc::validation, "iota is not a module map");
    if (!is_intertwiner(w.pi.matrix, p, v)) fail(Errc::validation, "pi is not a module map");
    if (rank(w.iota.matrix) != n) fail(Errc::validation, "exactness failure: iota is not injective");
    if (rank(w.pi.matrix) != n) fail(Errc::validation, "exactness failure: pi is not surjective");
    if (!(w.pi.matrix * w.iota.matrix).is_zero()) fail(Errc::validation, "exactness failure: pi * iota != 0");
    auto pres = projective_cover(v);
    for (std::size_t i = 0; i < v.algebra().num_vertices(); ++i) {
        auto proj = indecomposable_projective(v.algebra_ptr(), i);
        if (ext1_from_presentation(pres, proj).dim != 0)
            fail(Errc::validation, "Ext^1(V, Lambda e" + v.algebra().quiver.vertices()[i] + ") != 0");
    }
    if (!is_projective(p)) fail(Errc::validation, "P is not projective");
}

/// Submodule of Lambda^m (m <= 2) generated by up to three random homogeneous
/// elements; torsionless, hence Gorenstein-projective over kQ[eps]. Never zero.
template <Field F>
ModuleRep<F> random_torsionless_module(const AlgebraPtr<F>& alg, Rng& rng) {
    const auto& f = alg->field;
    auto regular = regular_module(alg);
    while (true) {
        std::size_t m = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
        std::size_t r = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        auto ambient = direct_sum(alg, std::vector<ModuleRep<F>>(m, regular));
        Matrix<F> gens(f, ambient.dim(), r);
        for (std::size_t j = 0; j < r; ++j) {
            std::size_t vertex = std::uniform_int_distribution<std::size_t>(0, alg->num_vertices() - 1)(rng);
            Matrix<F> x(f, ambient.dim(), 1);
            for (std::size_t i = 0; i < ambient.dim(); ++i)
                if (rng() & 1) x(i, 0) = f.random(rng);
            gens.set_block(0, j, ambient.action(alg->vertex_generator(vertex)) * x);
        }
        auto sub = submodule(ambient, gens);
        if (sub.module.dim() > 0) return std::move(sub.module);
    }
}

}  // namespace gpd
