#pragma once

// Slow exhaustive cross-checks for tiny instances. Nothing here calls into the
// homology, gorenstein or deformation layers.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gpd/module.hpp"

namespace gpd::oracle {

struct OracleBudget {
    std::uint64_t max_candidates = 1'000'000;
};

namespace detail {

template <FiniteField F>
std::uint64_t checked_space(const F& f, std::size_t exponent, const OracleBudget& budget) {
    const std::uint64_t q = *f.order();
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        space *= q;
        if (space > budget.max_candidates) fail(Errc::budget_exceeded, "budget exceeded");
    }
    return space;
}

/// Full constraint matrix of f rho_V(g) = rho_W(g) f over every generator,
/// idempotents included, on unknowns f[r][c] in row-major order.
template <FiniteField F>
Matrix<F> full_hom_constraints(const ModuleRep<F>& v, const ModuleRep<F>& w) {
    const auto& f = v.field();
    const std::size_t nv = v.dim(), nw = w.dim();
    const std::size_t gens = v.algebra().num_generators();
    Matrix<F> sys(f, gens * nw * nv, nw * nv);
    for (std::size_t g = 0; g < gens; ++g) {
        const auto& a = v.action(g);
        const auto& b = w.action(g);
        for (std::size_t r = 0; r < nw; ++r)
            for (std::size_t c = 0; c < nv; ++c) {
                std::size_t row = (g * nw + r) * nv + c;
                for (std::size_t k = 0; k < nv; ++k) sys(row, r * nv + k) = f.add(sys(row, r * nv + k), a(k, c));
                for (std::size_t k = 0; k < nw; ++k) sys(row, k * nv + c) = f.sub(sys(row, k * nv + c), b(r, k));
            }
    }
    return sys;
}

/// Writes the base-q digits of code as field elements.
template <FiniteField F>
std::vector<typename F::value_type> digits(const F& f, std::uint64_t code, std::size_t count) {
    std::vector<typename F::value_type> out(count);
    auto q = *f.order();
    for (auto& x : out) {
        x = f.element(code % q);
        code /= q;
    }
    return out;
}

}  // namespace detail

/// dim Hom(V, W) as the nullity of the unreduced constraint matrix.
template <FiniteField F>
std::size_t oracle_hom_dim(const ModuleRep<F>& v, const ModuleRep<F>& w) {
    require_same_algebra(v, w);
    return v.dim() * w.dim() - rank(detail::full_hom_constraints(v, w));
}

/// Intersects the kernels of every map V -> Lambda (all q^dim Hom of them);
/// V is torsionless iff the intersection is zero.
template <FiniteField F>
bool oracle_torsionless(const ModuleRep<F>& v, const OracleBudget& budget = {}) {
    const auto& f = v.field();
    if (v.dim() == 0) return true;
    ModuleRep<F> lambda(v.algebra_ptr(), v.algebra().dim(), [&] {
        std::vector<Matrix<F>> action;
        for (const auto& g : v.algebra().generator_elements) action.push_back(v.algebra().left_multiplication(g));
        return action;
    }());
    auto basis = kernel_basis(detail::full_hom_constraints(v, lambda));
    auto space = detail::checked_space(f, basis.size(), budget);

    auto joint = Matrix<F>::identity(f, v.dim());  // columns span the joint kernel so far
    for (std::uint64_t code = 1; code < space && joint.cols() > 0; ++code) {
        auto coeffs = detail::digits(f, code, basis.size());
        Matrix<F> vec(f, lambda.dim() * v.dim(), 1);
        for (std::size_t i = 0; i < basis.size(); ++i) vec = vec + basis[i].scaled(coeffs[i]);
        auto map = Matrix<F>::from_vectorized(vec, lambda.dim(), v.dim());
        auto restricted_kernel = kernel_basis(map * joint);
        std::vector<Matrix<F>> cols;
        for (const auto& k : restricted_kernel) cols.push_back(joint * k);
        joint = hstack(f, v.dim(), cols);
    }
    return joint.cols() == 0;
}

/// Counts order-2 lifts of V up to isomorphism by brute force: every rho_1
/// assignment, filtered through the relations evaluated on the full 2d x 2d
/// matrices, then partitioned by pairwise unitriangular intertwiner solves.
template <FiniteField F>
std::size_t oracle_enumerate_lifts(const ModuleRep<F>& v, const OracleBudget& budget = {}) {
    const auto& f = v.field();
    const auto& alg = v.algebra();
    const std::size_t d = v.dim(), gens = alg.num_generators();
    auto space = detail::checked_space(f, gens * d * d, budget);

    auto full = [&](const Matrix<F>& rho0, const Matrix<F>& rho1) {
        Matrix<F> m(f, 2 * d, 2 * d);
        m.set_block(0, 0, rho0);
        m.set_block(d, d, rho0);
        m.set_block(d, 0, rho1);
        return m;
    };

    std::vector<std::vector<Matrix<F>>> valid;  // rho_1 per generator
    for (std::uint64_t code = 0; code < space; ++code) {
        auto entries = detail::digits(f, code, gens * d * d);
        std::vector<Matrix<F>> rho1, act;
        for (std::size_t g = 0; g < gens; ++g) {
            Matrix<F> m(f, d, d);
            for (std::size_t i = 0; i < d * d; ++i) m(i / d, i % d) = entries[g * d * d + i];
            act.push_back(full(v.action(g), m));
            rho1.push_back(std::move(m));
        }
        bool ok = true;
        for (const auto& rel : alg.relations) {
            Matrix<F> sum(f, 2 * d, 2 * d);
            for (const auto& term : rel.terms) {
                auto prod = Matrix<F>::identity(f, 2 * d);
                for (auto g : term.word) prod = prod * act[g];
                sum = sum + prod.scaled(f.from_int(term.coeff));
            }
            if (!sum.is_zero()) {
                ok = false;
                break;
            }
        }
        if (ok) valid.push_back(std::move(rho1));
    }

    // [[1,0],[X,1]] * M_g = M'_g * [[1,0],[X,1]] reads X rho0 + rho1 = rho1' + rho0 X
    auto isomorphic = [&](const std::vector<Matrix<F>>& a, const std::vector<Matrix<F>>& b) {
        Matrix<F> sys(f, gens * d * d, d * d), rhs(f, gens * d * d, 1);
        for (std::size_t g = 0; g < gens; ++g) {
            const auto& rho0 = v.action(g);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) {
                    std::size_t row = g * d * d + r * d + c;
                    for (std::size_t k = 0; k < d; ++k) {
                        sys(row, r * d + k) = f.add(sys(row, r * d + k), rho0(k, c));
                        sys(row, k * d + c) = f.sub(sys(row, k * d + c), rho0(r, k));
                    }
                    rhs(row, 0) = f.sub(b[g](r, c), a[g](r, c));
                }
        }
        return solve(sys, rhs).has_value();
    };

    std::vector<const std::vector<Matrix<F>>*> representatives;
    for (const auto& cand : valid) {
        bool seen = false;
        for (const auto* rep : representatives)
            if (isomorphic(*rep, cand)) {
                seen = true;
                break;
            }
        if (!seen) representatives.push_back(&cand);
    }
    return representatives.size();
}

}  // namespace gpd::oracle
