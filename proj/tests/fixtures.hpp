#pragma once

#include <gpd/gpd.hpp>

namespace gpd::testing {

inline Quiver quiver_a1() { return Quiver({"1"}, {}); }
inline Quiver quiver_a2() { return Quiver::from_labels({"1", "2"}, {{"a", "1", "2"}}); }
inline Quiver quiver_a3() { return Quiver::from_labels({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}}); }
inline Quiver quiver_kronecker() { return Quiver::from_labels({"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}}); }

template <Field F>
AlgebraPtr<F> dual(const Quiver& q, const F& f) {
    return share(dual_number_extension(path_algebra(q, f)));
}

inline AlgebraPtr<PrimeField> a1_dual(std::uint32_t p = 101) { return dual(quiver_a1(), PrimeField(p)); }
inline AlgebraPtr<PrimeField> a2_dual(std::uint32_t p = 101) { return dual(quiver_a2(), PrimeField(p)); }
inline AlgebraPtr<PrimeField> a3_dual(std::uint32_t p = 101) { return dual(quiver_a3(), PrimeField(p)); }
inline AlgebraPtr<PrimeField> kronecker_dual(std::uint32_t p = 101) { return dual(quiver_kronecker(), PrimeField(p)); }

using PMatrix = Matrix<PrimeField>;
using PModule = ModuleRep<PrimeField>;

}  // namespace gpd::testing
