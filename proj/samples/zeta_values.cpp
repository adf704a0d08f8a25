// Reads zeta(2), ..., zeta(n) off the transport between the tangential base
// points (0, 1) and (1, -1) along the unit interval, and off the limit at p1.

#include <cstdio>
#include <cstdlib>

#include "polyperiod/polyperiod.hpp"

using namespace polyperiod;

int main(int argc, char** argv)
{
	const int n = argc > 1 ? std::atoi(argv[1]) : 5;
	if (n < 2 || n > 12)
	{
		std::fprintf(stderr, "usage: zeta_values [n in 2..12]\n");
		return 1;
	}
	const Complex k = kappa(Normalization::paper);

	PathSpec route = PathSpec::line(0.0, 1.0);
	route.start_anchor = TangentialAnchor{0, 1.0};
	route.end_anchor = TangentialAnchor{1, -1.0};
	auto t = tangential_transport(ConnectionForm::make(n, Chart::x, Normalization::paper), route);

	auto orbit = boundary_limit(BoundaryTag::p1, n);

	std::printf("%3s  %-20s %-20s %-20s\n", "k", "transport", "boundary limit", "reference");
	for (int j = 2; j <= n; ++j)
	{
		Complex kj = std::pow(k, j);
		double from_transport = (-t.matrix.a(n + 1 - j, n + 1) / kj).real();
		double from_limit = (-orbit.limit.a(n + 1 - j, n + 1) / kj).real();
		std::printf("%3d  %-20.15f %-20.15f %-20.15f\n", j, from_transport, from_limit, zeta_ref(j));
	}
}
