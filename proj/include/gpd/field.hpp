#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "gpd/error.hpp"

namespace gpd {

using Rng = std::mt19937_64;

/// The prime field F_p, 2 <= p < 2^31. Elements are canonical residues 0..p-1.
class PrimeField {
  public:
    using value_type = std::uint32_t;

    explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
        if (p < 2 || p >= (std::uint64_t{1} << 31)) fail(Errc::validation, "field characteristic out of range");
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) fail(Errc::validation, "field characteristic " + std::to_string(p) + " is not prime");
    }

    std::uint32_t characteristic() const { return p_; }
    /// Number of elements; finite fields allow exhaustive searches.
    std::optional<std::uint64_t> order() const { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<value_type>(r);
    }

    bool is_zero(value_type a) const { return a == 0; }
    value_type add(value_type a, value_type b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
    }
    value_type inv(value_type a) const {
        if (a == 0) fail(Errc::contract_violation, "division by zero");
        // Fermat: a^(p-2)
        std::uint64_t result = 1, base = a, e = p_ - 2;
        while (e) {
            if (e & 1) result = result * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return static_cast<value_type>(result);
    }

    value_type random(Rng& rng) const { return std::uniform_int_distribution<std::uint32_t>(0, p_ - 1)(rng); }
    /// The k-th element in enumeration order (0..p-1).
    value_type element(std::uint64_t k) const { return static_cast<value_type>(k % p_); }

    std::string to_string(value_type a) const { return std::to_string(a); }

    bool operator==(const PrimeField&) const = default;

  private:
    std::uint32_t p_;
};

/// The rationals, exact arbitrary-precision fractions in lowest terms.
class RationalField {
  public:
    using value_type = boost::multiprecision::cpp_rational;

    std::optional<std::uint64_t> order() const { return std::nullopt; }
    std::uint32_t characteristic() const { return 0; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(std::int64_t v) const { return v; }

    bool is_zero(const value_type& a) const { return a == 0; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const {
        if (a == 0) fail(Errc::contract_violation, "division by zero");
        return 1 / a;
    }

    /// Small integers; enough to make random combinations generic.
    value_type random(Rng& rng) const { return std::uniform_int_distribution<int>(-5, 5)(rng); }

    std::string to_string(const value_type& a) const {
        std::ostringstream os;
        os << boost::multiprecision::numerator(a);
        if (boost::multiprecision::denominator(a) != 1) os << '/' << boost::multiprecision::denominator(a);
        return os.str();
    }
    /// Parses "n" or "n/d".
    value_type parse(const std::string& s) const {
        using boost::multiprecision::cpp_int;
        try {
            auto slash = s.find('/');
            if (slash == std::string::npos) return value_type(cpp_int(s));
            cpp_int den(s.substr(slash + 1));
            if (den == 0) fail(Errc::parse, "zero denominator in '" + s + "'");
            return value_type(cpp_int(s.substr(0, slash))) / value_type(den);
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const Error*>(&e)) throw;
            fail(Errc::parse, "bad rational '" + s + "'");
        }
    }

    bool operator==(const RationalField&) const = default;
};

/// Runtime choice of ground field, as read from an algebra file.
using FieldSpec = std::variant<PrimeField, RationalField>;

template <class F>
concept Field = requires(const F f, const typename F::value_type& a, Rng& rng) {
    { f.zero() } -> std::convertible_to<typename F::value_type>;
    { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.inv(a) } -> std::convertible_to<typename F::value_type>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.random(rng) } -> std::convertible_to<typename F::value_type>;
    { f.order() } -> std::convertible_to<std::optional<std::uint64_t>>;
};

/// Fields whose elements can be enumerated, as exhaustive searches need.
template <class F>
concept FiniteField = Field<F> && requires(const F f, std::uint64_t k) {
    { f.element(k) } -> std::convertible_to<typename F::value_type>;
};

}  // namespace gpd
