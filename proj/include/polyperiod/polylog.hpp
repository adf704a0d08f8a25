#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyperiod/ode.hpp"
#include "polyperiod/path.hpp"
#include "polyperiod/rational.hpp"

namespace polyperiod {

/// l_n at the end of a continuation path. `branch_offset` counts signed
/// crossings of [1,inf) (anticlockwise around 1 is +1); `winding0` does the
/// same for the negative real axis. Neither is used to pick a branch, they
/// only record which sheet the value lives on.
struct PolylogValue
{
	int order = 1;
	Complex point;
	Complex value;
	int branch_offset = 0;
	int winding0 = 0;
};

inline constexpr double kSeriesRadius = 0.9;

/// Truncated power series sum_{k<=K} z^k / k^n with K the first index whose
/// tail bound |z|^{K+1} / ((K+1)^n (1-|z|)) drops below tol.
inline Complex polylog_series(int n, Complex z, double tol = 1e-15, double radius = kSeriesRadius)
{
	if (n < 1)
		throw std::invalid_argument("polylog order must be >= 1");
	if (!(tol > 0.0))
		throw std::invalid_argument("polylog tolerance must be positive");
	if (!(radius > 0.0 && radius < 1.0))
		throw std::invalid_argument("series radius must lie in (0,1)");
	const double r = std::abs(z);
	if (r > radius)
		throw std::domain_error("|z| = " + std::to_string(r) + " exceeds the series radius " + std::to_string(radius));
	if (r == 0.0)
		return 0.0;

	// sum smallest terms last is not needed here: terms decay geometrically
	Complex sum = 0.0, zk = 1.0;
	double rk = 1.0;
	for (int k = 1;; ++k)
	{
		zk *= z;
		rk *= r;
		sum += zk / std::pow(static_cast<double>(k), n);
		double tail = rk * r / (std::pow(static_cast<double>(k + 1), n) * (1.0 - r));
		if (tail < tol)
			break;
	}
	return sum;
}

/// All orders l_1..l_n at once from the series.
inline std::vector<Complex> polylog_series_all(int n, Complex z, double tol = 1e-15, double radius = kSeriesRadius)
{
	std::vector<Complex> out(static_cast<std::size_t>(n));
	for (int k = 1; k <= n; ++k)
		out[static_cast<std::size_t>(k - 1)] = polylog_series(k, z, tol, radius);
	return out;
}

namespace detail {

/// First point of the path where |z| exceeds r, returned as the path from
/// that point on. Empty if the path stays inside the disk.
inline PathSpec leave_disk(const PathSpec& path, double r)
{
	constexpr int samples = 1024;
	PathSpec rest;
	for (std::size_t i = 0; i < path.segments.size(); ++i)
	{
		const Segment& seg = path.segments[i];
		double prev = 0.0;
		for (int j = 1; j <= samples; ++j)
		{
			double s = static_cast<double>(j) / samples;
			if (std::abs(seg.point(s)) > r)
			{
				double lo = prev, hi = s;
				for (int it = 0; it < 60; ++it)
				{
					double mid = 0.5 * (lo + hi);
					(std::abs(seg.point(mid)) > r ? hi : lo) = mid;
				}
				rest.segments.push_back(seg.sub(lo, 1.0));
				for (std::size_t k = i + 1; k < path.segments.size(); ++k)
					rest.segments.push_back(path.segments[k]);
				return rest;
			}
			prev = s;
		}
	}
	return rest;
}

} // namespace detail

/// Analytic continuation of l_n along `path`, which must start at 0 or inside
/// the series disk. The initial stretch inside |z| <= 1/2 is evaluated by the
/// series; from the exit point on, the system l_1' = 1/(1-t), l_k' = l_{k-1}/t
/// is integrated. `c` is added to the top-order value.
inline PolylogValue polylog_continue(int n, const PathSpec& path, double tol = 1e-12, Complex c = 0.0)
{
	if (n < 1)
		throw std::invalid_argument("polylog order must be >= 1");
	if (!(tol > 0.0))
		throw std::invalid_argument("polylog tolerance must be positive");
	path.validate();
	if (std::abs(path.start()) > kSeriesRadius)
		throw std::domain_error("continuation must start at 0 or inside the series disk");
	for (std::size_t i = 0; i < path.segments.size(); ++i)
		if (path.segments[i].distance_to(1.0) < 1e-6)
			throw std::domain_error("continuation path segment " + std::to_string(i) + " touches the puncture 1");

	constexpr double exit_radius = 0.5;
	const double series_tol = std::min(tol, 1e-15);
	PolylogValue out;
	out.order = n;
	out.point = path.end();
	auto cuts = path.cut_crossings();
	out.branch_offset = cuts.around1;
	out.winding0 = cuts.around0;

	PathSpec rest = detail::leave_disk(path, exit_radius);
	if (rest.empty())
	{
		out.value = polylog_series(n, path.end(), series_tol) + c;
		return out;
	}
	for (std::size_t i = 0; i < rest.segments.size(); ++i)
		if (rest.segments[i].distance_to(0.0) < 1e-6)
			throw std::domain_error("continuation leaves the series disk and then touches the puncture 0");

	std::vector<Complex> y = polylog_series_all(n, rest.start(), series_tol);
	auto rhs = [n](Complex t, const std::vector<Complex>& s, std::vector<Complex>& d) {
		d[0] = 1.0 / (1.0 - t);
		for (int k = 1; k < n; ++k)
			d[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k - 1)] / t;
	};
	integrate_path(rest, y, rhs, tol * 1e-2);
	out.value = y.back() + c;
	return out;
}

/// Principal branch of l_n on C minus [1,inf), continued along the segment
/// from 0. Points on the cut raise a domain error.
inline Complex polylog(int n, Complex z, double tol = 1e-13)
{
	if (z.imag() == 0.0 && z.real() >= 1.0)
		throw std::domain_error("l_n is evaluated on its cut [1,inf); supply a continuation path");
	if (std::abs(z) <= kSeriesRadius)
		return polylog_series(n, z, std::min(tol, 1e-15));
	return polylog_continue(n, PathSpec::line(0.0, z), tol).value;
}

/// zeta(n) by Euler-Maclaurin summation with cutoff 20.
inline double zeta_ref(int n)
{
	if (n < 2)
		throw std::invalid_argument("zeta_ref needs n >= 2");
	constexpr int cutoff = 20;
	const double N = cutoff;
	// B_2j / (2j)!
	static constexpr double bern[] = {1.0 / 12,          -1.0 / 720,         1.0 / 30240,       -1.0 / 1209600,
	                                  1.0 / 47900160,    -691.0 / 1307674368000.0, 1.0 / 74724249600.0};
	double tail = std::pow(N, 1 - n) / (n - 1) + 0.5 * std::pow(N, -n);
	double rising = n; // n (n+1) ... (n+2j-2)
	for (int j = 1; j <= 7; ++j)
	{
		tail += bern[j - 1] * rising * std::pow(N, -n - 2 * j + 1);
		rising *= (n + 2 * j - 1) * (n + 2 * j);
	}
	double head = 0.0;
	for (int k = cutoff - 1; k >= 1; --k)
		head += std::pow(static_cast<double>(k), -n);
	return head + tail;
}

} // namespace polyperiod
