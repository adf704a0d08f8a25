#pragma once

#include <complex>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace polyperiod {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline const Complex kTwoPiI{0.0, 2.0 * kPi};

/// Encodes a rational as "num/den" (den always present, den > 0).
inline std::string to_string(const Rational& q)
{
	return boost::multiprecision::numerator(q).str() + "/" +
	       boost::multiprecision::denominator(q).str();
}

/// Accepts "a/b", "a" or "-a/b".
inline Rational parse_rational(std::string_view text)
{
	auto slash = text.find('/');
	try
	{
		if (slash == std::string_view::npos)
			return Rational(Integer(std::string(text)));
		Integer num(std::string(text.substr(0, slash)));
		Integer den(std::string(text.substr(slash + 1)));
		if (den == 0)
			throw std::invalid_argument("zero denominator");
		return Rational(num, den);
	}
	catch (const std::runtime_error&)
	{
		throw std::invalid_argument("malformed rational: " + std::string(text));
	}
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Complex to_complex(const Rational& q) { return {to_double(q), 0.0}; }

/// Zero tests shared by exact and floating code paths.
inline bool is_zero(const Rational& x, double /*tol*/ = 0.0) { return x == 0; }
inline bool is_zero(const Complex& x, double tol = 1e-10) { return std::abs(x) <= tol; }
inline bool is_zero(std::int64_t x, double /*tol*/ = 0.0) { return x == 0; }

inline double magnitude(const Rational& x) { return std::abs(to_double(x)); }
inline double magnitude(const Complex& x) { return std::abs(x); }
inline double magnitude(std::int64_t x) { return static_cast<double>(x < 0 ? -x : x); }

template <class T>
concept ExactScalar = std::same_as<T, Rational> || std::same_as<T, std::int64_t>;

} // namespace polyperiod
