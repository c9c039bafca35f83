#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gpd/gorenstein.hpp"

namespace gpd {

/// Lift of V over k[t]/(t^n), n <= 3. The generator g acts on
/// M = (k[t]/(t^n))^{dim V} by the block lower-triangular Toeplitz matrix with
/// rho_k(g) on the k-th subdiagonal; the t-adic blocks make M free by shape.
/// phi: k (x) M -> V.
template <Field F>
struct Lift {
    ModuleRep<F> module;
    std::size_t order;
    std::vector<std::vector<Matrix<F>>> blocks;  // blocks[g][k] = rho_k(g)
    Matrix<F> phi;

    std::size_t base_dim() const { return module.dim(); }
    const Matrix<F>& block(std::size_t g, std::size_t k) const { return blocks.at(g).at(k); }

    Matrix<F> full_action(std::size_t g) const {
        const std::size_t d = base_dim();
        Matrix<F> m(module.field(), order * d, order * d);
        for (std::size_t r = 0; r < order; ++r)
            for (std::size_t c = 0; c <= r; ++c) m.set_block(r * d, c * d, blocks[g][r - c]);
        return m;
    }

    /// Multiplication by t: identity blocks on the first subdiagonal.
    Matrix<F> t_action() const {
        const std::size_t d = base_dim();
        const auto& f = module.field();
        Matrix<F> m(f, order * d, order * d);
        for (std::size_t r = 1; r < order; ++r) m.set_block(r * d, (r - 1) * d, Matrix<F>::identity(f, d));
        return m;
    }

    /// M as a Lambda-module.
    ModuleRep<F> as_module() const {
        std::vector<Matrix<F>> action;
        for (std::size_t g = 0; g < blocks.size(); ++g) action.push_back(full_action(g));
        return ModuleRep<F>(module.algebra_ptr(), order * base_dim(), std::move(action));
    }
};

/// Throws Errc::validation when a lift invariant fails.
template <Field F>
void check_lift(const Lift<F>& l) {
    const auto& alg = l.module.algebra();
    const std::size_t d = l.base_dim();
    if (l.order < 1 || l.order > 3) fail(Errc::validation, "lift order must be 1, 2 or 3");
    if (l.blocks.size() != alg.num_generators()) fail(Errc::validation, "lift needs blocks for every generator");
    for (const auto& per_gen : l.blocks) {
        if (per_gen.size() != l.order) fail(Errc::validation, "lift has the wrong number of blocks");
        for (const auto& b : per_gen)
            if (b.rows() != d || b.cols() != d) fail(Errc::validation, "lift block has the wrong size");
    }
    if (l.phi.rows() != d || l.phi.cols() != d || rank(l.phi) != d)
        fail(Errc::validation, "phi is not an isomorphism");
    for (std::size_t g = 0; g < alg.num_generators(); ++g)
        if (!(l.phi * l.block(g, 0) == l.module.action(g) * l.phi))
            fail(Errc::validation, "reduction of the lift does not match V through phi");
    check_module(l.as_module());
}

template <Field F>
Lift<F> trivial_lift(const ModuleRep<F>& v, std::size_t order) {
    require(order >= 1 && order <= 3, "lift order must be 1, 2 or 3");
    const auto& f = v.field();
    std::vector<std::vector<Matrix<F>>> blocks;
    for (const auto& a : v.actions()) {
        std::vector<Matrix<F>> per_gen{a};
        for (std::size_t k = 1; k < order; ++k) per_gen.emplace_back(f, v.dim(), v.dim());
        blocks.push_back(std::move(per_gen));
    }
    return {v, order, std::move(blocks), Matrix<F>::identity(f, v.dim())};
}

/// Same deformation with phi = identity (blocks conjugated through phi).
template <Field F>
Lift<F> normalized(const Lift<F>& l) {
    auto inverse = invert(l.phi);
    if (!inverse) fail(Errc::validation, "phi is not an isomorphism");
    auto out = l;
    for (auto& per_gen : out.blocks)
        for (auto& b : per_gen) b = l.phi * b * *inverse;
    out.phi = Matrix<F>::identity(l.module.field(), l.base_dim());
    return out;
}

/// Order-2 lift carried by an exact sequence 0 -> V -> E -> V -> 0 with
/// t = iota * pi. Basis of E: a section of pi, then the image of iota.
template <Field F>
Lift<F> lift_from_exact_sequence(const ModuleRep<F>& v, const ModuleRep<F>& e, const Matrix<F>& iota,
                                 const Matrix<F>& pi) {
    const auto& f = v.field();
    const std::size_t d = v.dim();
    require(e.dim() == 2 * d, "extension module must have twice the dimension");
    auto section = solve(pi, Matrix<F>::identity(f, d));
    if (!section) fail(Errc::internal_inconsistency, "basis splitting failed: pi is not surjective");
    auto basis = hstack(f, e.dim(), {*section, iota});
    auto inverse = invert(basis);
    if (!inverse) fail(Errc::internal_inconsistency, "basis splitting failed: sequence is not exact");
    std::vector<std::vector<Matrix<F>>> blocks;
    for (std::size_t g = 0; g < v.algebra().num_generators(); ++g) {
        auto a = *inverse * e.action(g) * basis;
        auto rho0 = a.block(0, 0, d, d);
        if (!a.block(0, d, d, d).is_zero() || !(a.block(d, d, d, d) == rho0))
            fail(Errc::internal_inconsistency, "basis splitting failed: action is not t-linear");
        blocks.push_back({rho0, a.block(d, 0, d, d)});
    }
    return {v, 2, std::move(blocks), pi * *section};
}

/// The dual-number lift P of V with t acting as iota * pi.
template <Field F>
Lift<F> universal_lift_from_witness(const StrongGPWitness<F>& w) {
    return lift_from_exact_sequence(w.module, w.projective, w.iota.matrix, w.pi.matrix);
}

namespace detail {

/// Rows of the linear map X -> (X a_g - a_g X)_g on row-major vec(X).
template <Field F>
Matrix<F> commutator_system(const F& f, const std::vector<Matrix<F>>& a) {
    const std::size_t d = a.empty() ? 0 : a.front().rows();
    Matrix<F> s(f, a.size() * d * d, d * d);
    std::size_t row = 0;
    for (const auto& m : a)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c, ++row)
                for (std::size_t k = 0; k < d; ++k) {
                    s(row, r * d + k) = f.add(s(row, r * d + k), m(k, c));
                    s(row, k * d + c) = f.sub(s(row, k * d + c), m(r, k));
                }
    return s;
}

template <Field F>
Matrix<F> stack_blocks(const F& f, const std::vector<Matrix<F>>& blocks) {
    std::vector<Matrix<F>> vecs;
    for (const auto& b : blocks) vecs.push_back(b.vectorized());
    return vstack(f, 1, vecs);
}

/// Whether X rho0(g) - rho0(g) X = rhs(g) is solvable for all g.
template <Field F>
bool commutator_solvable(const F& f, const std::vector<Matrix<F>>& rho0, const std::vector<Matrix<F>>& rhs) {
    return solve(commutator_system(f, rho0), stack_blocks(f, rhs)).has_value();
}

/// The t^k coefficient of every relation, for unknown rho_k(g) (all g) and
/// known lower blocks: returns (system, rhs) with system * vec(rho_k) = rhs.
/// Unknown layout: generator-major, then row-major d x d.
template <Field F>
std::pair<Matrix<F>, Matrix<F>> coefficient_system(const AlgebraPresentation<F>& alg,
                                                   const std::vector<std::vector<Matrix<F>>>& known, std::size_t d,
                                                   std::size_t k) {
    const auto& f = alg.field;
    const std::size_t gens = alg.num_generators(), dd = d * d;
    Matrix<F> system(f, alg.relations.size() * dd, gens * dd);
    Matrix<F> rhs(f, alg.relations.size() * dd, 1);
    auto id = Matrix<F>::identity(f, d);

    for (std::size_t ri = 0; ri < alg.relations.size(); ++ri) {
        const std::size_t base = ri * dd;
        for (const auto& term : alg.relations[ri].terms) {
            const auto& word = term.word;
            const auto coeff = f.from_int(term.coeff);
            if (word.empty()) continue;
            // linear part: one factor of degree k, the rest rho_0
            for (std::size_t pos = 0; pos < word.size(); ++pos) {
                auto prefix = id, suffix = id;
                for (std::size_t i = 0; i < pos; ++i) prefix = prefix * known[word[i]][0];
                for (std::size_t i = pos + 1; i < word.size(); ++i) suffix = suffix * known[word[i]][0];
                const std::size_t offset = word[pos] * dd;
                // (prefix X suffix)[r][c] = sum_{p,q} prefix[r][p] X[p][q] suffix[q][c]
                for (std::size_t r = 0; r < d; ++r)
                    for (std::size_t p = 0; p < d; ++p) {
                        auto lp = f.mul(coeff, prefix(r, p));
                        if (f.is_zero(lp)) continue;
                        for (std::size_t q = 0; q < d; ++q)
                            for (std::size_t c = 0; c < d; ++c) {
                                if (f.is_zero(suffix(q, c))) continue;
                                auto& slot = system(base + r * d + c, offset + p * d + q);
                                slot = f.add(slot, f.mul(lp, suffix(q, c)));
                            }
                    }
            }
            // constant part: degrees below k on every factor, summing to k
            std::vector<std::size_t> degrees(word.size(), 0);
            auto accumulate = [&](auto&& self, std::size_t pos, std::size_t remaining) -> void {
                if (pos == word.size()) {
                    if (remaining != 0) return;
                    auto prod = id;
                    for (std::size_t i = 0; i < word.size(); ++i) prod = prod * known[word[i]][degrees[i]];
                    for (std::size_t r = 0; r < d; ++r)
                        for (std::size_t c = 0; c < d; ++c)
                            rhs(base + r * d + c, 0) = f.sub(rhs(base + r * d + c, 0), f.mul(coeff, prod(r, c)));
                    return;
                }
                for (std::size_t deg = 0; deg < k && deg <= remaining; ++deg) {
                    degrees[pos] = deg;
                    self(self, pos + 1, remaining - deg);
                }
                degrees[pos] = 0;
            };
            if (k > 0) accumulate(accumulate, 0, k);
        }
    }
    return {std::move(system), std::move(rhs)};
}

}  // namespace detail

/// A dual-number lift is split iff some Lambda-map s: V -> M satisfies
/// (projection) * s = id, i.e. X rho0(g) - rho0(g) X = rho1(g) is solvable.
template <Field F>
bool is_lift_split(const Lift<F>& l) {
    if (l.order != 2) fail(Errc::contract_violation, "wrong order: is_lift_split needs a lift over k[t]/(t^2)");
    std::vector<Matrix<F>> rho0, rho1;
    for (const auto& per_gen : l.blocks) {
        rho0.push_back(per_gen[0]);
        rho1.push_back(per_gen[1]);
    }
    return detail::commutator_solvable(l.module.field(), rho0, rho1);
}

/// Two order-2 lifts of the same V are isomorphic as lifts iff an intertwiner
/// [[1,0],[X,1]] exists after normalizing phi to the identity.
template <Field F>
bool lifts_isomorphic(const Lift<F>& a, const Lift<F>& b) {
    if (a.order != 2 || b.order != 2) fail(Errc::contract_violation, "wrong order: lift comparison needs order 2");
    require_same_algebra(a.module, b.module);
    if (a.base_dim() != b.base_dim()) return false;
    auto na = normalized(a), nb = normalized(b);
    std::vector<Matrix<F>> rho0, diff;
    for (std::size_t g = 0; g < na.blocks.size(); ++g) {
        if (!(na.block(g, 0) == nb.block(g, 0))) return false;
        rho0.push_back(na.block(g, 0));
        diff.push_back(nb.block(g, 1) - na.block(g, 1));
    }
    return detail::commutator_solvable(a.module.field(), rho0, diff);
}

/// Solves the t^2 coefficient of every relation for the unknown rho_2 blocks
/// with rho_0, rho_1 fixed. Nothing when the system is inconsistent.
template <Field F>
std::optional<Lift<F>> extend_to_third_order(const Lift<F>& l) {
    if (l.order != 2) fail(Errc::contract_violation, "wrong order: extend_to_third_order needs a lift over k[t]/(t^2)");
    const auto& alg = l.module.algebra();
    const std::size_t d = l.base_dim(), dd = d * d;
    auto [system, rhs] = detail::coefficient_system(alg, l.blocks, d, 2);
    auto solution = solve(system, rhs);
    if (!solution) return std::nullopt;
    auto out = l;
    out.order = 3;
    for (std::size_t g = 0; g < alg.num_generators(); ++g)
        out.blocks[g].push_back(Matrix<F>::from_vectorized(solution->block(g * dd, 0, dd, 1), d, d));
    return out;
}

template <Field F>
std::size_t tangent_dimension(const ModuleRep<F>& v) {
    return ext1(v, v).dim;
}

/// Dual-number lift of the extension class of a cocycle c: Omega V -> V,
/// built as the pushout of the minimal presentation along c.
template <Field F>
Lift<F> lift_from_ext(const ModuleRep<F>& v, const ModuleMap<F>& cocycle) {
    auto pres = projective_cover(v);
    const auto& c = cocycle.matrix;
    if (c.rows() != v.dim() || c.cols() != pres.syzygy.dim() || !is_intertwiner(c, pres.syzygy, v))
        fail(Errc::contract_violation, "not a valid cocycle: expected a module map Omega V -> V");
    if (c.is_zero()) return trivial_lift(v, 2);
    const auto& f = v.field();
    const std::size_t d = v.dim(), p = pres.cover.dim();
    auto ambient = direct_sum(v, pres.cover);
    auto relations = vstack(f, pres.syzygy.dim(), {c, pres.inclusion.matrix.scaled(f.neg(f.one()))});
    auto pushout = quotient(ambient, relations);
    auto iota = pushout.projection.matrix * vstack(f, d, {Matrix<F>::identity(f, d), Matrix<F>(f, p, d)});
    auto pi = hstack(f, d, {Matrix<F>(f, d, d), pres.epi.matrix}) * pushout.section;
    return normalized(lift_from_exact_sequence(v, pushout.module, iota, pi));
}

/// Counts deformations of V over the dual numbers by exhausting the solution
/// space of the first-order relations and reducing each point modulo the
/// trivial (commutator) deformations.
template <FiniteField F>
std::size_t enumerate_dual_number_deformations(const ModuleRep<F>& v, std::uint64_t budget = 1'000'000) {
    const auto& f = v.field();
    auto q = f.order();
    const auto& alg = v.algebra();
    const std::size_t d = v.dim(), dd = d * d, gens = alg.num_generators();

    std::vector<std::vector<Matrix<F>>> known;
    for (const auto& a : v.actions()) known.push_back({a});
    auto [system, rhs] = detail::coefficient_system(alg, known, d, 1);
    auto cocycles = kernel_basis(system);

    std::uint64_t space = 1;
    for (std::size_t i = 0; i < cocycles.size(); ++i) {
        space *= *q;
        if (space > budget) fail(Errc::budget_exceeded, "search space too large");
    }

    auto trivial = detail::commutator_system(f, v.actions());
    EchelonBasis<F> coboundaries(f, gens * dd);
    for (std::size_t j = 0; j < trivial.cols(); ++j) coboundaries.insert_column(trivial, j);

    std::set<std::vector<typename F::value_type>> classes;
    for (std::uint64_t code = 0; code < space; ++code) {
        std::vector<typename F::value_type> point(gens * dd, f.zero());
        std::uint64_t rest = code;
        for (const auto& z : cocycles) {
            auto digit = f.element(rest % *q);
            rest /= *q;
            if (f.is_zero(digit)) continue;
            for (std::size_t i = 0; i < point.size(); ++i) point[i] = f.add(point[i], f.mul(digit, z(i, 0)));
        }
        coboundaries.reduce(point);
        classes.insert(std::move(point));
    }
    return classes.size();
}

enum class ThirdOrder { none_exists, exists, not_attempted };
enum class Conclusion { R_is_dual_numbers, R_is_k, out_of_theorem_scope };

inline const char* to_string(ThirdOrder t) {
    switch (t) {
        case ThirdOrder::none_exists: return "none_exists";
        case ThirdOrder::exists: return "exists";
        default: return "not_attempted";
    }
}

inline const char* to_string(Conclusion c) {
    switch (c) {
        case Conclusion::R_is_dual_numbers: return "k[t]/(t^2)";
        case Conclusion::R_is_k: return "k";
        default: return "out_of_theorem_scope";
    }
}

template <Field F>
struct DeformationReport {
    std::string module_id;
    bool is_gp = false;
    std::size_t stable_end_dim = 0;
    std::size_t ext1_dim = 0;
    std::optional<StrongGPWitness<F>> witness;
    std::optional<Lift<F>> universal_lift;
    bool universal_lift_split = false;
    ThirdOrder third_order_extension = ThirdOrder::not_attempted;
    Conclusion conclusion = Conclusion::out_of_theorem_scope;
    std::string reason;
};

/// Runs the whole chain: GP test, stable End, tangent space, strong-GP witness,
/// universal lift, splitting and the second-order obstruction.
template <Field F>
DeformationReport<F> deformation_report(const ModuleRep<F>& v, std::uint64_t seed, std::string module_id = {}) {
    if (!v.algebra().dual_extended)
        fail(Errc::not_applicable, "criterion not applicable: algebra is not a dual-number extension");
    check_module(v);
    DeformationReport<F> report;
    report.module_id = std::move(module_id);
    report.is_gp = is_gorenstein_projective(v).is_gp;
    report.stable_end_dim = stable_hom(v, v).dim;
    report.ext1_dim = tangent_dimension(v);

    if (report.ext1_dim == 0) {
        report.conclusion = Conclusion::R_is_k;
        report.reason = "Ext^1(V,V) = 0: V is rigid";
        return report;
    }
    if (!report.is_gp) {
        report.reason = "not Gorenstein-projective";
        return report;
    }

    std::string witness_failure;
    try {
        report.witness = strong_gp_witness(v, seed);
    } catch (const Error& e) {
        if (e.code() == Errc::witness_not_found)
            witness_failure = "witness not found";
        else if (e.code() == Errc::inconclusive)
            witness_failure = "inconclusive iso";
        else
            throw;
    }
    if (report.witness) {
        verify_strong_gp(*report.witness);
        report.universal_lift = universal_lift_from_witness(*report.witness);
        report.universal_lift_split = is_lift_split(*report.universal_lift);
        report.third_order_extension =
            extend_to_third_order(*report.universal_lift) ? ThirdOrder::exists : ThirdOrder::none_exists;
    }

    if (report.stable_end_dim != 1)
        report.reason = "stable endomorphism ring has dimension " + std::to_string(report.stable_end_dim);
    else if (!report.witness)
        report.reason = witness_failure;
    else if (report.ext1_dim != 1)
        report.reason = "tangent space has dimension " + std::to_string(report.ext1_dim);
    else if (report.universal_lift_split)
        report.reason = "universal lift splits";
    else if (report.third_order_extension != ThirdOrder::none_exists)
        report.reason = "universal lift extends to third order";
    else {
        report.conclusion = Conclusion::R_is_dual_numbers;
        report.reason = "strongly Gorenstein-projective with stable End = k; no lift over k[t]/(t^3)";
    }
    return report;
}

}  // namespace gpd
