#pragma once

// Reference values computed independently of the library: quadrature of the
// integral representation of l_n, brute-force zeta sums, and constants frozen
// from a 30-digit evaluation.

#include <cmath>
#include <complex>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace oracle {

using Complex = std::complex<double>;
inline constexpr double pi = 3.141592653589793238462643383279502884;

inline constexpr double li2_half = 0.58224052646501250590;
inline constexpr double li3_minus_one = -0.901542677369695714;
inline constexpr double zeta2 = 1.64493406684822643647;
inline constexpr double zeta3 = 1.20205690315959428540;
inline constexpr double zeta10 = 1.00099457512781808534;
inline constexpr double li2_03 = 0.326129510075476069530;
inline constexpr double li3_03 = 0.312400177892892620757;
inline const Complex li2_half_half{0.453985269150295583, 0.643767332889268749};

/// l_n(z) = z / Gamma(n) * int_0^inf t^{n-1} e^{-t} / (1 - z e^{-t}) dt,
/// principal branch for z off [1, inf).
inline Complex polylog_quad(int n, Complex z)
{
	boost::math::quadrature::exp_sinh<double> integrator;
	auto f = [&](double t, bool imag) {
		double e = std::exp(-t);
		if (e == 0.0 || !std::isfinite(t))
			return 0.0;
		Complex v = std::pow(t, n - 1) * e / (1.0 - z * e);
		return imag ? v.imag() : v.real();
	};
	double re = integrator.integrate([&](double t) { return f(t, false); }, 1e-14);
	double im = integrator.integrate([&](double t) { return f(t, true); }, 1e-14);
	return z * Complex(re, im) / boost::math::tgamma(n);
}

/// Direct partial sum for |z| < 1 with many terms.
inline Complex polylog_sum(int n, Complex z, int terms = 200000)
{
	Complex sum = 0.0, zk = 1.0;
	for (int k = 1; k <= terms; ++k)
	{
		zk *= z;
		if (std::abs(zk) < 1e-300)
			break;
		sum += zk / std::pow(static_cast<double>(k), n);
	}
	return sum;
}

/// Partial sum to K = 10^6 plus the integral tail int_K^inf dt/t^n and the
/// trapezoid correction -K^{-n}/2.
inline double zeta_series(int n)
{
	const long K = 1000000;
	double sum = 0.0;
	for (long k = K; k >= 1; --k)
		sum += std::pow(static_cast<double>(k), -n);
	const double Kd = static_cast<double>(K);
	return sum + std::pow(Kd, 1 - n) / (n - 1) - 0.5 * std::pow(Kd, -n);
}

} // namespace oracle
