#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gpd/error.hpp"
#include "gpd/field.hpp"
#include "gpd/matrix.hpp"

namespace gpd {

struct Arrow {
    std::string name;
    std::size_t source;
    std::size_t target;
};

/// Finite acyclic quiver. Construction rejects duplicate labels, dangling
/// arrows and directed cycles.
class Quiver {
  public:
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
        : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            for (std::size_t j = i + 1; j < vertices_.size(); ++j)
                if (vertices_[i] == vertices_[j]) fail(Errc::validation, "duplicate vertex label '" + vertices_[i] + "'");
        for (std::size_t i = 0; i < arrows_.size(); ++i) {
            if (arrows_[i].source >= vertices_.size() || arrows_[i].target >= vertices_.size())
                fail(Errc::validation, "arrow '" + arrows_[i].name + "' has an endpoint that is not a vertex");
            for (std::size_t j = i + 1; j < arrows_.size(); ++j)
                if (arrows_[i].name == arrows_[j].name) fail(Errc::validation, "duplicate arrow name '" + arrows_[i].name + "'");
        }
        // Kahn's algorithm
        std::vector<std::size_t> indegree(vertices_.size(), 0);
        for (const auto& a : arrows_) ++indegree[a.target];
        std::vector<std::size_t> ready;
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (indegree[v] == 0) ready.push_back(v);
        std::size_t seen = 0;
        while (!ready.empty()) {
            auto v = ready.back();
            ready.pop_back();
            ++seen;
            for (const auto& a : arrows_)
                if (a.source == v && --indegree[a.target] == 0) ready.push_back(a.target);
        }
        if (seen != vertices_.size()) fail(Errc::validation, "quiver has a directed cycle");
    }

    /// Arrows given by endpoint labels: {name, from, to}.
    static Quiver from_labels(std::vector<std::string> vertices,
                              const std::vector<std::array<std::string, 3>>& arrows) {
        std::vector<Arrow> out;
        for (const auto& [name, from, to] : arrows) {
            auto find = [&](const std::string& label) {
                auto it = std::find(vertices.begin(), vertices.end(), label);
                if (it == vertices.end())
                    fail(Errc::validation, "arrow '" + name + "' has an endpoint that is not a vertex");
                return static_cast<std::size_t>(it - vertices.begin());
            };
            out.push_back({name, find(from), find(to)});
        }
        return Quiver(std::move(vertices), std::move(out));
    }

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_arrows() const { return arrows_.size(); }

    std::optional<std::size_t> vertex_index(const std::string& label) const {
        auto it = std::find(vertices_.begin(), vertices_.end(), label);
        if (it == vertices_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - vertices_.begin());
    }

  private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
};

/// sum_k coeff_k * word_k = 0, where a word is a product of generators read
/// left to right and the empty word is 1.
struct Relation {
    struct Term {
        std::int64_t coeff;
        std::vector<std::size_t> word;
    };
    std::string name;
    std::vector<Term> terms;
};

/// A finite-dimensional algebra by basis and structure constants, together with
/// its generators-and-relations presentation. Generators are ordered as
/// e_1..e_n, the arrows, then eps when dual-extended.
template <Field F>
struct AlgebraPresentation {
    using value_type = typename F::value_type;
    using Element = std::vector<value_type>;
    using Combination = std::vector<std::pair<std::size_t, value_type>>;

    F field;
    Quiver quiver;
    std::vector<std::string> basis;
    std::vector<std::vector<std::size_t>> basis_words;
    std::vector<std::vector<Combination>> products;  // products[i][j] = b_i * b_j
    Element unit;
    std::vector<std::size_t> idempotents;  // basis index of each trivial path
    std::vector<std::string> generator_names;
    std::vector<Element> generator_elements;
    std::vector<Relation> relations;
    bool dual_extended = false;

    std::size_t dim() const { return basis.size(); }
    std::size_t num_vertices() const { return quiver.num_vertices(); }
    std::size_t num_generators() const { return generator_names.size(); }
    std::size_t vertex_generator(std::size_t i) const { return i; }
    std::size_t arrow_generator(std::size_t a) const { return num_vertices() + a; }
    std::optional<std::size_t> epsilon_generator() const {
        if (!dual_extended) return std::nullopt;
        return num_vertices() + quiver.num_arrows();
    }
    /// Generators spanning the radical as an ideal: arrows and eps.
    std::vector<std::size_t> radical_generators() const {
        std::vector<std::size_t> out;
        for (std::size_t a = 0; a < quiver.num_arrows(); ++a) out.push_back(arrow_generator(a));
        if (auto e = epsilon_generator()) out.push_back(*e);
        return out;
    }

    Element zero_element() const { return Element(dim(), field.zero()); }
    Element basis_element(std::size_t i) const {
        auto e = zero_element();
        e[i] = field.one();
        return e;
    }

    Element multiply(const Element& x, const Element& y) const {
        auto out = zero_element();
        for (std::size_t i = 0; i < dim(); ++i) {
            if (field.is_zero(x[i])) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (field.is_zero(y[j])) continue;
                auto c = field.mul(x[i], y[j]);
                for (const auto& [k, s] : products[i][j]) out[k] = field.add(out[k], field.mul(c, s));
            }
        }
        return out;
    }

    /// Matrix of y -> x*y on the basis.
    Matrix<F> left_multiplication(const Element& x) const {
        Matrix<F> m(field, dim(), dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            auto col = multiply(x, basis_element(j));
            for (std::size_t k = 0; k < dim(); ++k) m(k, j) = col[k];
        }
        return m;
    }
};

namespace detail {

inline std::vector<Relation> quiver_relations(const Quiver& q) {
    const std::size_t n = q.num_vertices();
    const auto& vs = q.vertices();
    std::vector<Relation> rels;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                rels.push_back({"e" + vs[i] + "^2 = e" + vs[i], {{1, {i, i}}, {-1, {i}}}});
            else
                rels.push_back({"e" + vs[i] + "*e" + vs[j] + " = 0", {{1, {i, j}}}});
        }
    Relation sum{"sum of idempotents = 1", {}};
    for (std::size_t i = 0; i < n; ++i) sum.terms.push_back({1, {i}});
    sum.terms.push_back({-1, {}});
    rels.push_back(sum);
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const auto& ar = q.arrows()[a];
        std::size_t g = n + a;
        rels.push_back({"idempotent compatibility e" + vs[ar.target] + "*" + ar.name + " = " + ar.name,
                        {{1, {ar.target, g}}, {-1, {g}}}});
        rels.push_back({"idempotent compatibility " + ar.name + "*e" + vs[ar.source] + " = " + ar.name,
                        {{1, {g, ar.source}}, {-1, {g}}}});
    }
    // b*a vanishes unless a ends where b starts
    for (std::size_t b = 0; b < q.num_arrows(); ++b)
        for (std::size_t a = 0; a < q.num_arrows(); ++a)
            if (q.arrows()[a].target != q.arrows()[b].source)
                rels.push_back({"arrow composition " + q.arrows()[b].name + "*" + q.arrows()[a].name + " = 0",
                                {{1, {n + b, n + a}}}});
    return rels;
}

inline std::string path_label(const Quiver& q, const std::vector<std::size_t>& arrows) {
    bool short_names = std::all_of(q.arrows().begin(), q.arrows().end(),
                                   [](const Arrow& a) { return a.name.size() == 1; });
    std::string label;
    for (auto it = arrows.rbegin(); it != arrows.rend(); ++it) {
        if (!label.empty() && !short_names) label += '*';
        label += q.arrows()[*it].name;
    }
    return label;
}

}  // namespace detail

/// Path algebra kQ. Basis: trivial paths, then paths by length and
/// lexicographically by arrow index in traversal order. The product x*y is
/// "y followed by x".
template <Field F>
AlgebraPresentation<F> path_algebra(const Quiver& q, const F& field) {
    using Alg = AlgebraPresentation<F>;
    const std::size_t n = q.num_vertices();

    // paths[k] = arrow sequence in traversal order; trivial paths carry a vertex
    struct Path {
        std::vector<std::size_t> arrows;
        std::size_t source, target;
    };
    std::vector<Path> paths;
    for (std::size_t v = 0; v < n; ++v) paths.push_back({{}, v, v});
    std::vector<Path> frontier;
    for (std::size_t a = 0; a < q.num_arrows(); ++a)
        frontier.push_back({{a}, q.arrows()[a].source, q.arrows()[a].target});
    while (!frontier.empty()) {
        std::vector<Path> next;
        for (const auto& p : frontier) {
            paths.push_back(p);
            for (std::size_t a = 0; a < q.num_arrows(); ++a)
                if (q.arrows()[a].source == p.target) {
                    auto ext = p;
                    ext.arrows.push_back(a);
                    ext.target = q.arrows()[a].target;
                    next.push_back(std::move(ext));
                }
        }
        frontier = std::move(next);
    }

    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t k = n; k < paths.size(); ++k) index[paths[k].arrows] = k;

    Alg alg{field, q, {}, {}, {}, {}, {}, {}, {}, {}, false};
    const std::size_t dim = paths.size();
    for (std::size_t k = 0; k < dim; ++k) {
        const auto& p = paths[k];
        if (k < n) {
            alg.basis.push_back("e" + q.vertices()[k]);
            alg.basis_words.push_back({k});
        } else {
            alg.basis.push_back(detail::path_label(q, p.arrows));
            std::vector<std::size_t> word;
            for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) word.push_back(n + *it);
            alg.basis_words.push_back(std::move(word));
        }
    }
    alg.products.assign(dim, std::vector<typename Alg::Combination>(dim));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const auto& x = paths[i];
            const auto& y = paths[j];
            if (y.target != x.source) continue;
            std::size_t k;
            if (i < n)
                k = j;
            else if (j < n)
                k = i;
            else {
                auto seq = y.arrows;
                seq.insert(seq.end(), x.arrows.begin(), x.arrows.end());
                k = index.at(seq);
            }
            alg.products[i][j] = {{k, field.one()}};
        }
    alg.unit = alg.zero_element();
    for (std::size_t v = 0; v < n; ++v) {
        alg.unit[v] = field.one();
        alg.idempotents.push_back(v);
        alg.generator_names.push_back("e" + q.vertices()[v]);
        alg.generator_elements.push_back(alg.basis_element(v));
    }
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        alg.generator_names.push_back(q.arrows()[a].name);
        alg.generator_elements.push_back(alg.basis_element(index.at({a})));
    }
    alg.relations = detail::quiver_relations(q);
    return alg;
}

/// kQ[eps] = kQ (x) k[eps]: basis {b} followed by {eps*b}; eps central, eps^2 = 0.
template <Field F>
AlgebraPresentation<F> dual_number_extension(const AlgebraPresentation<F>& a) {
    if (a.dual_extended) fail(Errc::validation, "already extended");
    using Alg = AlgebraPresentation<F>;
    const std::size_t d = a.dim();
    const F& f = a.field;
    Alg out{f, a.quiver, {}, {}, {}, {}, a.idempotents, {}, {}, a.relations, true};
    out.basis = a.basis;
    out.basis_words = a.basis_words;
    const std::size_t eps = a.num_generators();
    for (std::size_t i = 0; i < d; ++i) {
        out.basis.push_back("eps*" + a.basis[i]);
        auto w = a.basis_words[i];
        w.insert(w.begin(), eps);
        out.basis_words.push_back(std::move(w));
    }
    out.products.assign(2 * d, std::vector<typename Alg::Combination>(2 * d));
    for (std::size_t i = 0; i < 2 * d; ++i)
        for (std::size_t j = 0; j < 2 * d; ++j) {
            std::size_t degree = (i >= d) + (j >= d);
            if (degree > 1) continue;
            for (const auto& [k, c] : a.products[i % d][j % d]) out.products[i][j].push_back({k + degree * d, c});
        }
    auto extend = [&](const typename Alg::Element& x) {
        auto y = x;
        y.resize(2 * d, f.zero());
        return y;
    };
    out.unit = extend(a.unit);
    out.generator_names = a.generator_names;
    for (const auto& g : a.generator_elements) out.generator_elements.push_back(extend(g));
    out.generator_names.push_back("eps");
    auto eps_elem = out.zero_element();
    for (std::size_t k = 0; k < d; ++k) eps_elem[k + d] = a.unit[k];
    out.generator_elements.push_back(eps_elem);

    out.relations.push_back({"eps^2 = 0", {{1, {eps, eps}}}});
    for (std::size_t g = 0; g < eps; ++g)
        out.relations.push_back({"eps*" + a.generator_names[g] + " = " + a.generator_names[g] + "*eps",
                                 {{1, {eps, g}}, {-1, {g, eps}}}});
    return out;
}

/// Throws Errc::validation naming the first violated invariant.
template <Field F>
void validate(const AlgebraPresentation<F>& a) {
    const std::size_t d = a.dim();
    const F& f = a.field;
    if (a.products.size() != d || a.basis_words.size() != d || a.unit.size() != d)
        fail(Errc::validation, "structure constant table has the wrong shape");
    for (const auto& row : a.products) {
        if (row.size() != d) fail(Errc::validation, "structure constant table has the wrong shape");
        for (const auto& comb : row)
            for (const auto& [k, c] : comb)
                if (k >= d) fail(Errc::validation, "structure constant refers to a basis index out of range");
    }
    using Sparse = std::map<std::size_t, typename F::value_type>;
    auto accumulate = [&](Sparse& acc, const typename AlgebraPresentation<F>::Combination& comb,
                          const typename F::value_type& scale) {
        for (const auto& [k, c] : comb) {
            auto& slot = acc.try_emplace(k, f.zero()).first->second;
            slot = f.add(slot, f.mul(scale, c));
            if (f.is_zero(slot)) acc.erase(k);
        }
    };
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                Sparse lhs, rhs;
                for (const auto& [m, c] : a.products[i][j]) accumulate(lhs, a.products[m][k], c);
                for (const auto& [m, c] : a.products[j][k]) accumulate(rhs, a.products[i][m], c);
                if (lhs != rhs)
                    fail(Errc::validation, "associativity fails at (" + std::to_string(i) + "," + std::to_string(j) +
                                               "," + std::to_string(k) + ")");
            }
    for (std::size_t i = 0; i < d; ++i) {
        auto b = a.basis_element(i);
        if (a.multiply(a.unit, b) != b || a.multiply(b, a.unit) != b)
            fail(Errc::validation, "unit law fails at basis element " + a.basis[i]);
    }
    auto sum = a.zero_element();
    for (auto e : a.idempotents) sum[e] = f.add(sum[e], f.one());
    if (sum != a.unit) fail(Errc::validation, "idempotents do not sum to 1");
    if (a.dual_extended) {
        auto eps = a.generator_elements.at(*a.epsilon_generator());
        if (a.multiply(eps, eps) != a.zero_element()) fail(Errc::validation, "epsilon squared is not zero");
        for (std::size_t i = 0; i < d; ++i) {
            auto b = a.basis_element(i);
            if (a.multiply(eps, b) != a.multiply(b, eps)) fail(Errc::validation, "epsilon not central");
        }
    }
}

/// Algebra shared between the modules built over it.
template <Field F>
using AlgebraPtr = std::shared_ptr<const AlgebraPresentation<F>>;

template <Field F>
AlgebraPtr<F> share(AlgebraPresentation<F> a) {
    return std::make_shared<const AlgebraPresentation<F>>(std::move(a));
}

}  // namespace gpd
