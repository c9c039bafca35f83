#pragma once

#include <cstddef>
#include <vector>

#include "gpd/module.hpp"

namespace gpd {

/// 0 -> Omega V -> P0 -> V -> 0 with P0 the projective cover.
template <Field F>
struct ProjectivePresentation {
    ModuleRep<F> cover;
    ModuleMap<F> epi;
    ModuleRep<F> syzygy;
    ModuleMap<F> inclusion;
    std::vector<std::size_t> summands;  // vertex i of each Lambda e_i in P0, in order
};

/// Builds P0 = sum of Lambda e_i over a basis of top V, mapping the generator
/// of each summand to a homogeneous preimage of the top basis vector.
template <Field F>
ProjectivePresentation<F> projective_cover(const ModuleRep<F>& v) {
    const auto& alg_ptr = v.algebra_ptr();
    const auto& alg = *alg_ptr;
    const auto& f = v.field();
    auto t = top(v);
    auto labels = t.quotient.vertex_labels();
    if (!labels) fail(Errc::internal_inconsistency, "top basis is not homogeneous");

    std::vector<ModuleRep<F>> parts;
    std::vector<Matrix<F>> columns;
    for (std::size_t j = 0; j < t.section.cols(); ++j) {
        auto vertex = (*labels)[j];
        auto generator = t.section.col(j);
        auto support = projective_support(alg, vertex);
        Matrix<F> block(f, v.dim(), support.size());
        for (std::size_t s = 0; s < support.size(); ++s)
            block.set_block(0, s, v.act_word(alg.basis_words[support[s]]) * generator);
        columns.push_back(std::move(block));
        parts.push_back(indecomposable_projective(alg_ptr, vertex));
    }
    auto cover = direct_sum(alg_ptr, parts);
    auto epi = hstack(f, v.dim(), columns);
    auto kernel = submodule(cover, kernel_matrix(epi));
    return {std::move(cover), {std::move(epi)}, std::move(kernel.module), std::move(kernel.inclusion), *labels};
}

template <Field F>
ModuleRep<F> syzygy(const ModuleRep<F>& v) {
    return projective_cover(v).syzygy;
}

template <Field F>
bool is_projective(const ModuleRep<F>& v) {
    return syzygy(v).dim() == 0;
}

/// A space of maps modulo a subspace, with canonical coset representatives.
template <Field F>
struct QuotientSpace {
    std::size_t dim = 0;
    std::vector<ModuleMap<F>> basis;
};

namespace detail {

/// span(ambient) / span(sub), where sub lies inside span(ambient). The
/// representatives are the ambient combinations along the coordinate
/// directions missing from the reduced echelon form of sub.
template <Field F>
QuotientSpace<F> quotient_of_maps(const F& f, const std::vector<ModuleMap<F>>& ambient,
                                  const std::vector<Matrix<F>>& sub) {
    QuotientSpace<F> out;
    if (ambient.empty()) return out;
    const auto rows = ambient.front().matrix.rows(), cols = ambient.front().matrix.cols();
    std::vector<Matrix<F>> vecs;
    for (const auto& a : ambient) vecs.push_back(a.matrix.vectorized());
    auto coords_of = hstack(f, rows * cols, vecs);
    EchelonBasis<F> image(f, ambient.size());
    if (!sub.empty()) {
        std::vector<Matrix<F>> subvecs;
        for (const auto& s : sub) subvecs.push_back(s.vectorized());
        auto coords = solve(coords_of, hstack(f, rows * cols, subvecs));
        if (!coords) fail(Errc::internal_inconsistency, "subspace of maps is not contained in the ambient space");
        for (std::size_t j = 0; j < coords->cols(); ++j) image.insert_column(*coords, j);
    }
    for (std::size_t k = 0; k < ambient.size(); ++k) {
        std::vector<typename F::value_type> unit(ambient.size(), f.zero());
        unit[k] = f.one();
        if (image.insert(unit)) out.basis.push_back(ambient[k]);
    }
    out.dim = out.basis.size();
    return out;
}

}  // namespace detail

/// Ext^1(V, W) from a presentation, as Hom(Omega V, W) modulo maps restricted
/// from Hom(P0, W). Cocycles are maps Omega V -> W.
template <Field F>
QuotientSpace<F> ext1_from_presentation(const ProjectivePresentation<F>& pres, const ModuleRep<F>& w) {
    if (pres.syzygy.dim() == 0) return {};
    auto cocycles = hom_basis(pres.syzygy, w);
    std::vector<Matrix<F>> restricted;
    for (const auto& h : hom_basis(pres.cover, w).basis) restricted.push_back(h.matrix * pres.inclusion.matrix);
    return detail::quotient_of_maps(w.field(), cocycles.basis, restricted);
}

template <Field F>
QuotientSpace<F> ext1(const ModuleRep<F>& v, const ModuleRep<F>& w) {
    require_same_algebra(v, w);
    return ext1_from_presentation(projective_cover(v), w);
}

/// Hom(V, W) modulo maps factoring through a projective, which are exactly the
/// maps factoring through the cover P(W) -> W.
template <Field F>
QuotientSpace<F> stable_hom(const ModuleRep<F>& v, const ModuleRep<F>& w) {
    require_same_algebra(v, w);
    auto maps = hom_basis(v, w);
    if (maps.dim() == 0) return {};
    auto cover = projective_cover(w);
    std::vector<Matrix<F>> factoring;
    for (const auto& h : hom_basis(v, cover.cover).basis) factoring.push_back(cover.epi.matrix * h.matrix);
    return detail::quotient_of_maps(v.field(), maps.basis, factoring);
}

template <Field F>
bool stable_end_is_k(const ModuleRep<F>& v) {
    return stable_hom(v, v).dim == 1;
}

}  // namespace gpd
