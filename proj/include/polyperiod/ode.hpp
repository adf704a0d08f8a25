#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "polyperiod/errors.hpp"
#include "polyperiod/path.hpp"

namespace polyperiod {

struct IntegrationStats
{
	std::size_t accepted = 0;
	std::size_t rejected = 0;
	double est_error = 0.0; // sum of accepted local error estimates
};

/// Dormand-Prince 5(4) along one segment of a path, integrating
/// dy/dz = f(z, y) in the segment parameter s in [0,1]. The local error of a
/// step of arc length L*h is held below tol * (1 + |y|) componentwise.
///
/// `rhs(z, y, dydz)` writes the z-derivative; the chain rule factor z'(s) is
/// applied here.
template <class Rhs>
void integrate_segment(const Segment& seg, std::vector<Complex>& y, Rhs&& rhs, double tol, std::size_t seg_index,
                       IntegrationStats& stats)
{
	// Butcher tableau
	constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
	constexpr double a21 = 1.0 / 5;
	constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
	constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
	constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
	constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
	                 a65 = -5103.0 / 18656;
	constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
	// b - b* (fifth minus fourth order weights)
	constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
	                 e6 = 22.0 / 525, e7 = -1.0 / 40;

	const std::size_t m = y.size();
	if (m == 0 || seg.length() == 0.0)
		return;

	auto f = [&](double s, const std::vector<Complex>& state, std::vector<Complex>& out) {
		rhs(seg.point(s), state, out);
		const Complex dz = seg.derivative(s);
		for (auto& v : out)
			v *= dz;
	};

	std::array<std::vector<Complex>, 7> k;
	for (auto& v : k)
		v.resize(m);
	std::vector<Complex> tmp(m), ynew(m);

	const double hmax = 0.125;
	const double hmin = 1e-14;
	double s = 0.0, h = 1.0 / 64;
	f(s, y, k[0]);

	while (s < 1.0)
	{
		h = std::min(h, 1.0 - s);
		if (h < hmin && 1.0 - s > hmin)
			throw convergence_error("step size underflow on path segment " + std::to_string(seg_index) +
			                        " near s = " + std::to_string(s));

		auto stage = [&](std::initializer_list<std::pair<int, double>> terms) {
			for (std::size_t i = 0; i < m; ++i)
			{
				Complex acc = y[i];
				for (auto [idx, a] : terms)
					acc += h * a * k[idx][i];
				tmp[i] = acc;
			}
		};
		stage({{0, a21}});
		f(s + c2 * h, tmp, k[1]);
		stage({{0, a31}, {1, a32}});
		f(s + c3 * h, tmp, k[2]);
		stage({{0, a41}, {1, a42}, {2, a43}});
		f(s + c4 * h, tmp, k[3]);
		stage({{0, a51}, {1, a52}, {2, a53}, {3, a54}});
		f(s + c5 * h, tmp, k[4]);
		stage({{0, a61}, {1, a62}, {2, a63}, {3, a64}, {4, a65}});
		f(s + h, tmp, k[5]);
		for (std::size_t i = 0; i < m; ++i)
			ynew[i] = y[i] + h * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] + b5 * k[4][i] + b6 * k[5][i]);
		f(s + h, ynew, k[6]);

		double err = 0.0, err_abs = 0.0;
		bool finite = true;
		for (std::size_t i = 0; i < m; ++i)
		{
			Complex e = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] +
			                 e7 * k[6][i]);
			double ae = std::abs(e), an = std::abs(ynew[i]);
			// std::max drops NaN, so non-finite values are caught here
			finite = finite && std::isfinite(ae) && std::isfinite(an);
			err_abs = std::max(err_abs, ae);
			err = std::max(err, ae / (tol * (1.0 + std::max(std::abs(y[i]), an))));
		}
		if (!finite || !std::isfinite(err))
			throw convergence_error("non-finite state on path segment " + std::to_string(seg_index));

		if (err <= 1.0)
		{
			s = (1.0 - s - h <= 1e-15) ? 1.0 : s + h;
			y.swap(ynew);
			std::swap(k[0], k[6]); // first-same-as-last
			++stats.accepted;
			stats.est_error += err_abs;
		}
		else
			++stats.rejected;

		double factor = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
		h *= std::clamp(factor, 0.2, 5.0);
		h = std::min(h, hmax);
	}
}

template <class Rhs>
IntegrationStats integrate_path(const PathSpec& path, std::vector<Complex>& y, Rhs&& rhs, double tol)
{
	IntegrationStats stats;
	for (std::size_t i = 0; i < path.segments.size(); ++i)
		integrate_segment(path.segments[i], y, rhs, tol, i, stats);
	return stats;
}

} // namespace polyperiod
