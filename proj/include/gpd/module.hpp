#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpd/algebra.hpp"
#include "gpd/error.hpp"
#include "gpd/matrix.hpp"

namespace gpd {

/// Finite-dimensional left module, stored as one action matrix per generator.
template <Field F>
class ModuleRep {
  public:
    using value_type = typename F::value_type;

    ModuleRep(AlgebraPtr<F> algebra, std::size_t dim, std::vector<Matrix<F>> action)
        : algebra_(std::move(algebra)), dim_(dim), action_(std::move(action)) {
        require(algebra_ != nullptr, "module without an algebra");
        require(action_.size() == algebra_->num_generators(), "module needs one action matrix per generator");
        for (const auto& m : action_) require(m.rows() == dim_ && m.cols() == dim_, "action matrix has the wrong size");
    }

    static ModuleRep zero(AlgebraPtr<F> algebra) {
        std::vector<Matrix<F>> action(algebra->num_generators(), Matrix<F>(algebra->field, 0, 0));
        return ModuleRep(algebra, 0, std::move(action));
    }

    const AlgebraPresentation<F>& algebra() const { return *algebra_; }
    const AlgebraPtr<F>& algebra_ptr() const { return algebra_; }
    const F& field() const { return algebra_->field; }
    std::size_t dim() const { return dim_; }

    const Matrix<F>& action(std::size_t generator) const { return action_.at(generator); }
    const std::vector<Matrix<F>>& actions() const { return action_; }

    /// Action of a generator word, read left to right; the empty word acts as 1.
    Matrix<F> act_word(const std::vector<std::size_t>& word) const {
        auto m = Matrix<F>::identity(field(), dim_);
        for (auto g : word) m = m * action_.at(g);
        return m;
    }

    /// Action of an arbitrary algebra element.
    Matrix<F> act(const typename AlgebraPresentation<F>::Element& x) const {
        Matrix<F> m(field(), dim_, dim_);
        for (std::size_t b = 0; b < x.size(); ++b)
            if (!field().is_zero(x[b])) m = m + act_word(algebra_->basis_words[b]).scaled(x[b]);
        return m;
    }

    /// dim e_i V for each vertex.
    std::vector<std::size_t> vertex_dims() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < algebra_->num_vertices(); ++i) out.push_back(rank(action_[i]));
        return out;
    }

    /// When every basis vector lies in a single e_i V, the vertex of each basis
    /// vector; nothing otherwise.
    std::optional<std::vector<std::size_t>> vertex_labels() const {
        const auto& f = field();
        std::vector<std::size_t> labels(dim_, algebra_->num_vertices());
        for (std::size_t i = 0; i < algebra_->num_vertices(); ++i) {
            const auto& e = action_[i];
            for (std::size_t r = 0; r < dim_; ++r)
                for (std::size_t c = 0; c < dim_; ++c) {
                    const auto& v = e(r, c);
                    if (r != c) {
                        if (!f.is_zero(v)) return std::nullopt;
                    } else if (v == f.one()) {
                        if (labels[r] != algebra_->num_vertices()) return std::nullopt;
                        labels[r] = i;
                    } else if (!f.is_zero(v)) {
                        return std::nullopt;
                    }
                }
        }
        for (auto l : labels)
            if (l == algebra_->num_vertices()) return std::nullopt;
        return labels;
    }

  private:
    AlgebraPtr<F> algebra_;
    std::size_t dim_;
    std::vector<Matrix<F>> action_;
};

/// A Lambda-linear map; matrix is codomain.dim x domain.dim.
template <Field F>
struct ModuleMap {
    Matrix<F> matrix;
};

template <Field F>
struct HomSpace {
    std::vector<ModuleMap<F>> basis;
    std::size_t dim() const { return basis.size(); }
};

template <Field F>
void require_same_algebra(const ModuleRep<F>& v, const ModuleRep<F>& w) {
    if (v.algebra_ptr() != w.algebra_ptr()) fail(Errc::contract_violation, "modules over different algebras");
}

/// Throws Errc::validation naming the first relation the actions violate.
template <Field F>
void check_module(const ModuleRep<F>& v) {
    const auto& alg = v.algebra();
    const auto& f = v.field();
    for (const auto& rel : alg.relations) {
        Matrix<F> sum(f, v.dim(), v.dim());
        for (const auto& term : rel.terms) sum = sum + v.act_word(term.word).scaled(f.from_int(term.coeff));
        if (!sum.is_zero()) fail(Errc::validation, "relation violated: " + rel.name);
    }
}

template <Field F>
bool is_intertwiner(const Matrix<F>& map, const ModuleRep<F>& v, const ModuleRep<F>& w) {
    if (map.rows() != w.dim() || map.cols() != v.dim()) return false;
    for (std::size_t g = 0; g < v.algebra().num_generators(); ++g)
        if (!(map * v.action(g) == w.action(g) * map)) return false;
    return true;
}

template <Field F>
ModuleRep<F> regular_module(const AlgebraPtr<F>& alg) {
    std::vector<Matrix<F>> action;
    for (const auto& g : alg->generator_elements) action.push_back(alg->left_multiplication(g));
    return ModuleRep<F>(alg, alg->dim(), std::move(action));
}

/// Basis elements b with b * e_i = b; they span Lambda e_i.
template <Field F>
std::vector<std::size_t> projective_support(const AlgebraPresentation<F>& alg, std::size_t vertex) {
    if (vertex >= alg.num_vertices()) fail(Errc::contract_violation, "unknown vertex " + std::to_string(vertex));
    const auto& e = alg.generator_elements[alg.vertex_generator(vertex)];
    std::vector<std::size_t> support;
    for (std::size_t b = 0; b < alg.dim(); ++b)
        if (alg.multiply(alg.basis_element(b), e) == alg.basis_element(b)) support.push_back(b);
    return support;
}

/// Lambda e_i with the action by left multiplication.
template <Field F>
ModuleRep<F> indecomposable_projective(const AlgebraPtr<F>& alg, std::size_t vertex) {
    auto support = projective_support(*alg, vertex);
    std::vector<Matrix<F>> action;
    for (const auto& g : alg->generator_elements) {
        auto full = alg->left_multiplication(g);
        Matrix<F> m(alg->field, support.size(), support.size());
        for (std::size_t r = 0; r < support.size(); ++r)
            for (std::size_t c = 0; c < support.size(); ++c) m(r, c) = full(support[r], support[c]);
        action.push_back(std::move(m));
    }
    return ModuleRep<F>(alg, support.size(), std::move(action));
}

/// Simple module at a vertex.
template <Field F>
ModuleRep<F> simple_module(const AlgebraPtr<F>& alg, std::size_t vertex) {
    if (vertex >= alg->num_vertices()) fail(Errc::contract_violation, "unknown vertex " + std::to_string(vertex));
    std::vector<Matrix<F>> action(alg->num_generators(), Matrix<F>(alg->field, 1, 1));
    action[alg->vertex_generator(vertex)](0, 0) = alg->field.one();
    return ModuleRep<F>(alg, 1, std::move(action));
}

template <Field F>
ModuleRep<F> direct_sum(const AlgebraPtr<F>& alg, const std::vector<ModuleRep<F>>& parts) {
    std::size_t dim = 0;
    for (const auto& p : parts) {
        if (p.algebra_ptr() != alg) fail(Errc::contract_violation, "modules over different algebras");
        dim += p.dim();
    }
    std::vector<Matrix<F>> action;
    for (std::size_t g = 0; g < alg->num_generators(); ++g) {
        std::vector<Matrix<F>> blocks;
        for (const auto& p : parts) blocks.push_back(p.action(g));
        action.push_back(block_diagonal(alg->field, blocks));
    }
    return ModuleRep<F>(alg, dim, std::move(action));
}

template <Field F>
ModuleRep<F> direct_sum(const ModuleRep<F>& v, const ModuleRep<F>& w) {
    require_same_algebra(v, w);
    return direct_sum(v.algebra_ptr(), {v, w});
}

/// Module with the same structure in a basis where every vector lies in one
/// e_i V. basis holds the new basis vectors as columns in old coordinates.
template <Field F>
struct HomogeneousForm {
    ModuleRep<F> module;
    Matrix<F> basis;
    Matrix<F> basis_inverse;
    std::vector<std::size_t> labels;
};

template <Field F>
HomogeneousForm<F> homogeneous_form(const ModuleRep<F>& v) {
    const auto& f = v.field();
    if (auto labels = v.vertex_labels()) {
        auto id = Matrix<F>::identity(f, v.dim());
        return {v, id, id, *labels};
    }
    std::vector<Matrix<F>> parts;
    std::vector<std::size_t> labels;
    for (std::size_t i = 0; i < v.algebra().num_vertices(); ++i) {
        auto cs = column_space(v.action(v.algebra().vertex_generator(i)));
        labels.insert(labels.end(), cs.cols(), i);
        parts.push_back(std::move(cs));
    }
    auto basis = hstack(f, v.dim(), parts);
    auto inverse = invert(basis);
    if (!basis.is_square() || !inverse)
        fail(Errc::validation, "idempotent actions do not decompose the module");
    std::vector<Matrix<F>> action;
    for (const auto& m : v.actions()) action.push_back(*inverse * m * basis);
    return {ModuleRep<F>(v.algebra_ptr(), v.dim(), std::move(action)), basis, *inverse, labels};
}

/// Basis of Hom_Lambda(V, W). The commutation system is solved on
/// vertex-preserving matrices in homogeneous bases, then transported back.
template <Field F>
HomSpace<F> hom_basis(const ModuleRep<F>& v, const ModuleRep<F>& w) {
    require_same_algebra(v, w);
    const auto& f = v.field();
    const auto& alg = v.algebra();
    auto hv = homogeneous_form(v);
    auto hw = homogeneous_form(w);
    const std::size_t nv = v.dim(), nw = w.dim();

    std::vector<std::pair<std::size_t, std::size_t>> unknowns;
    std::vector<std::size_t> position(nw * nv, SIZE_MAX);
    for (std::size_t r = 0; r < nw; ++r)
        for (std::size_t c = 0; c < nv; ++c)
            if (hw.labels[r] == hv.labels[c]) {
                position[r * nv + c] = unknowns.size();
                unknowns.emplace_back(r, c);
            }

    const auto gens = alg.radical_generators();
    Matrix<F> system(f, gens.size() * nw * nv, unknowns.size());
    std::size_t row = 0;
    for (auto g : gens) {
        const auto& a = hv.module.action(g);
        const auto& b = hw.module.action(g);
        // (X a - b X)[r][c] = sum_k X[r][k] a[k][c] - sum_k b[r][k] X[k][c]
        for (std::size_t r = 0; r < nw; ++r)
            for (std::size_t c = 0; c < nv; ++c, ++row) {
                for (std::size_t k = 0; k < nv; ++k) {
                    auto p = position[r * nv + k];
                    if (p != SIZE_MAX && !f.is_zero(a(k, c))) system(row, p) = f.add(system(row, p), a(k, c));
                }
                for (std::size_t k = 0; k < nw; ++k) {
                    auto p = position[k * nv + c];
                    if (p != SIZE_MAX && !f.is_zero(b(r, k))) system(row, p) = f.sub(system(row, p), b(r, k));
                }
            }
    }

    HomSpace<F> out;
    for (const auto& kv : kernel_basis(system)) {
        Matrix<F> x(f, nw, nv);
        for (std::size_t u = 0; u < unknowns.size(); ++u) x(unknowns[u].first, unknowns[u].second) = kv(u, 0);
        out.basis.push_back({hw.basis * x * hv.basis_inverse});
    }
    return out;
}

/// Search for an isomorphism V -> W. Returns nothing only when none exists;
/// throws Errc::inconclusive when the search space is too large to exhaust.
template <Field F>
std::optional<ModuleMap<F>> is_isomorphic(const ModuleRep<F>& v, const ModuleRep<F>& w, std::uint64_t seed) {
    require_same_algebra(v, w);
    const auto& f = v.field();
    const std::size_t n = v.dim();
    if (n != w.dim() || v.vertex_dims() != w.vertex_dims()) return std::nullopt;
    if (n == 0) return ModuleMap<F>{Matrix<F>(f, 0, 0)};

    auto hom = hom_basis(v, w);
    if (hom.dim() == 0) return std::nullopt;
    auto end_dim = hom_basis(v, v).dim();
    if (hom.dim() != end_dim || hom_basis(w, v).dim() != end_dim) return std::nullopt;

    auto invertible = [&](const Matrix<F>& m) { return rank(m) == n; };
    const auto& basis = hom.basis;
    for (const auto& b : basis)
        if (invertible(b.matrix)) return b;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            auto m = basis[i].matrix + basis[j].matrix;
            if (invertible(m)) return ModuleMap<F>{m};
        }
    Rng rng(seed);
    for (int draw = 0; draw < 128; ++draw) {
        Matrix<F> m(f, n, n);
        for (const auto& b : basis) m = m + b.matrix.scaled(f.random(rng));
        if (invertible(m)) return ModuleMap<F>{m};
    }

    constexpr std::uint64_t limit = 1'000'000;
    auto q = f.order();
    std::uint64_t space = 1;
    bool feasible = q.has_value();
    for (std::size_t i = 0; feasible && i < basis.size(); ++i) {
        space *= *q;
        if (space > limit) feasible = false;
    }
    if (!feasible) fail(Errc::inconclusive, "inconclusive iso: search space exceeds 10^6");
    if constexpr (FiniteField<F>) {
        for (std::uint64_t code = 1; code < space; ++code) {
            Matrix<F> m(f, n, n);
            std::uint64_t rest = code;
            for (const auto& b : basis) {
                auto digit = rest % *q;
                rest /= *q;
                if (digit) m = m + b.matrix.scaled(f.element(digit));
            }
            if (invertible(m)) return ModuleMap<F>{m};
        }
    }
    return std::nullopt;
}

template <Field F>
struct Submodule {
    ModuleRep<F> module;
    ModuleMap<F> inclusion;
};

/// Submodule generated by the columns of spanning. Its basis is canonical
/// and homogeneous: per vertex, the reduced echelon basis of e_i U.
template <Field F>
Submodule<F> submodule(const ModuleRep<F>& v, const Matrix<F>& spanning) {
    require(spanning.rows() == v.dim(), "spanning vectors have the wrong length");
    const auto& f = v.field();
    const auto& alg = v.algebra();
    EchelonBasis<F> closure(f, v.dim());
    std::vector<Matrix<F>> pending;
    for (std::size_t j = 0; j < spanning.cols(); ++j)
        if (closure.insert_column(spanning, j)) pending.push_back(spanning.col(j));
    while (!pending.empty()) {
        auto x = std::move(pending.back());
        pending.pop_back();
        for (std::size_t g = 0; g < alg.num_generators(); ++g) {
            auto y = v.action(g) * x;
            if (closure.insert_column(y, 0)) pending.push_back(std::move(y));
        }
    }
    auto span = closure.as_columns();
    std::vector<Matrix<F>> parts;
    for (std::size_t i = 0; i < alg.num_vertices(); ++i)
        parts.push_back(column_space(v.action(alg.vertex_generator(i)) * span));
    auto basis = hstack(f, v.dim(), parts);
    std::vector<Matrix<F>> action;
    for (const auto& m : v.actions()) {
        auto induced = solve(basis, m * basis);
        if (!induced) fail(Errc::internal_inconsistency, "submodule closure is not stable");
        action.push_back(std::move(*induced));
    }
    return {ModuleRep<F>(v.algebra_ptr(), basis.cols(), std::move(action)), {basis}};
}

template <Field F>
struct Quotient {
    ModuleRep<F> module;
    ModuleMap<F> projection;
    Matrix<F> section;  // chosen homogeneous preimages of the quotient basis
};

/// V / U for the submodule U spanned by the columns of sub.
template <Field F>
Quotient<F> quotient(const ModuleRep<F>& v, const Matrix<F>& sub) {
    require(sub.rows() == v.dim(), "submodule vectors have the wrong length");
    const auto& f = v.field();
    const auto& alg = v.algebra();
    EchelonBasis<F> span(f, v.dim());
    for (std::size_t j = 0; j < sub.cols(); ++j) span.insert_column(sub, j);
    auto sub_basis = span.as_columns();
    std::vector<Matrix<F>> chosen;
    for (std::size_t i = 0; i < alg.num_vertices(); ++i) {
        auto candidates = column_space(v.action(alg.vertex_generator(i)));
        for (std::size_t j = 0; j < candidates.cols(); ++j)
            if (span.insert_column(candidates, j)) chosen.push_back(candidates.col(j));
    }
    auto section = hstack(f, v.dim(), chosen);
    const std::size_t m = section.cols();
    auto change = invert(hstack(f, v.dim(), {section, sub_basis}));
    if (!change) fail(Errc::internal_inconsistency, "quotient complement is not a complement");
    auto projection = change->block(0, 0, m, v.dim());
    std::vector<Matrix<F>> action;
    for (const auto& a : v.actions()) action.push_back(projection * a * section);
    return {ModuleRep<F>(v.algebra_ptr(), m, std::move(action)), {projection}, section};
}

/// rad V = (rad Lambda) V, generated by the images of the arrows and eps.
template <Field F>
Submodule<F> radical(const ModuleRep<F>& v) {
    std::vector<Matrix<F>> images;
    for (auto g : v.algebra().radical_generators()) images.push_back(v.action(g));
    return submodule(v, hstack(v.field(), v.dim(), images));
}

template <Field F>
struct Top {
    ModuleRep<F> quotient;
    ModuleMap<F> projection;
    Matrix<F> section;
    std::vector<std::size_t> multiplicities;
};

template <Field F>
Top<F> top(const ModuleRep<F>& v) {
    auto rad = radical(v);
    auto q = quotient(v, rad.inclusion.matrix);
    auto mult = q.module.vertex_dims();
    return {std::move(q.module), std::move(q.projection), std::move(q.section), std::move(mult)};
}

}  // namespace gpd
