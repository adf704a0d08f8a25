// One line per acceptance criterion: PASS/FAIL, the measured quantity
// against its limit, and the wall time against its budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polyperiod/polyperiod.hpp"

using namespace polyperiod;

namespace {

struct Outcome
{
	bool pass = false;
	std::string detail;
};

struct Criterion
{
	int id;
	const char* name;
	double budget_s;
	std::function<Outcome()> body;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
	char buf[256];
	std::snprintf(buf, sizeof buf, f, a, b, c);
	return buf;
}

const Complex kPaper = kappa(Normalization::paper);

/// Route from the tangential base point at 0 into the upper or lower half
/// plane without touching the real axis away from [0, 0.1].
PathSpec side_route(Complex z, bool upper)
{
	PathSpec p = PathSpec::line(0.0, 0.1);
	p.line_to({0.1, upper ? 0.1 : -0.1}).line_to(z);
	p.start_anchor = TangentialAnchor{0, 1.0};
	return p;
}

Outcome power_identity()
{
	int failures = 0;
	for (int n = 1; n <= 8; ++n)
		failures += power_identity_check(n) ? 0 : 1;
	return {failures == 0, fmt("exact equality for n = 1..8, %.0f failing levels", failures)};
}

Outcome transversality_equivalence()
{
	long mismatches = 0, samples = 0;
	for (int n = 2; n <= 5; ++n)
		for (GeneratorTag tag : {GeneratorTag::N0, GeneratorTag::N1, GeneratorTag::Ninf})
		{
			std::mt19937_64 rng(1000 + 10 * n + static_cast<int>(tag));
			const auto gens = build_generators(n);
			const auto& gen = gens[tag];
			for (int i = 0; i < 1000; ++i)
			{
				auto a = random_transversality_sample(tag, n, rng, i % 2 == 0);
				if (transversality_conditions(tag, a) != griffiths_check(gen, a))
					++mismatches;
				++samples;
			}
		}
	return {mismatches == 0, fmt("%.0f mismatches in %.0f samples (limit 0)", static_cast<double>(mismatches),
	                             static_cast<double>(samples))};
}

Outcome solution_table()
{
	double worst = 0.0;
	const Complex pts[] = {0.3, std::polar(0.5, kPi / 4), -0.7, 0.9};
	for (int n = 2; n <= 4; ++n)
	{
		auto form = ConnectionForm::make(n, Chart::x, Normalization::paper);
		for (Complex z : pts)
		{
			auto t = regularized_transport(form, TangentialAnchor{0, 1.0}, side_route(z, z.imag() >= 0.0));
			worst = std::max(worst, max_abs_diff(t.matrix, closed_form_period(n, z)));
		}
	}
	return {worst < 1e-9, fmt("max entry error %.3e (limit 1e-9)", worst)};
}

Outcome zeta_recovery()
{
	const double z2 = oracle::zeta_series(2), z3 = oracle::zeta_series(3);
	double worst = 0.0;
	for (int n = 2; n <= 5; ++n)
	{
		auto o = boundary_limit(BoundaryTag::p1, n);
		auto read = [&](int k) { return (-o.limit.a(n + 1 - k, n + 1) / std::pow(kPaper, k)).real(); };
		worst = std::max(worst, std::abs(read(2) - z2) / z2);
		if (n >= 3)
			worst = std::max(worst, std::abs(read(3) - z3) / z3);
	}
	return {worst < 1e-6, fmt("max relative error of zeta(2), zeta(3) %.3e (limit 1e-6)", worst)};
}

Outcome monodromy_presentation()
{
	double gen_err = 0.0, comm_err = 0.0;
	bool exact = true;
	for (int n = 1; n <= 5; ++n)
	{
		auto form = ConnectionForm::make(n, Chart::x, Normalization::paper);
		auto g0 = monodromy(form, 0, TangentialAnchor{0, 1.0}).matrix;
		auto g1 = monodromy(form, 1, TangentialAnchor{0, 1.0}).matrix;
		auto g = build_generators(n);
		gen_err = std::max(gen_err, max_abs_diff(g0, unipotent_exp(g.N0.matrix).cast<Complex>()));
		gen_err = std::max(gen_err, max_abs_diff(g1, unipotent_exp(g.N1.matrix).cast<Complex>()));
		std::vector<UnipotentMatrix<Complex>> conj;
		auto pw = UnipotentMatrix<Complex>::identity(n);
		for (int k = 0; k < n; ++k)
		{
			conj.push_back(pw * g1 * pw.inverse());
			pw = pw * g0;
		}
		for (std::size_t i = 0; i < conj.size(); ++i)
			for (std::size_t j = i + 1; j < conj.size(); ++j)
				comm_err = std::max(comm_err, max_abs_diff(conj[i] * conj[j], conj[j] * conj[i]));
	}
	for (int n = 1; n <= 6; ++n)
		exact = exact && nilpotent_quotient_check(n);
	bool ok = gen_err < 1e-8 && comm_err < 1e-8 && exact;
	return {ok, fmt("generator error %.3e, conjugate commutator %.3e (limits 1e-8), exact (n+1)-fold commutators: ",
	                gen_err, comm_err) +
	                (exact ? "identity" : "NOT identity")};
}

Outcome xi_chart_consistency()
{
	const Complex pts[] = {0.3, {0.2, 0.4}, {-0.5, 0.1}, {0.6, -0.3}, {1.3, 0.8},
	                       {0.05, 0.02}, {-0.2, -0.6}, 0.7, {0.9, 0.9}, {-1.2, 0.3}};
	double xi_err = 0.0, chart_err = 0.0;
	for (int n = 2; n <= 4; ++n)
	{
		auto fx = ConnectionForm::make(n, Chart::x, Normalization::paper);
		auto fxi = ConnectionForm::make(n, Chart::xi, Normalization::paper);
		for (Complex xi : pts)
		{
			auto t = regularized_transport(fxi, TangentialAnchor{0, 1.0}, side_route(xi, xi.imag() >= 0.0));
			xi_err = std::max(xi_err, max_abs_diff(t.matrix, closed_form_period_xi(n, xi)));
		}
		// P_x(x) = P_xi(1/x) C with C constant on the upper half plane
		auto pair = [&](Complex x) {
			auto px = regularized_transport(fx, TangentialAnchor{0, 1.0}, side_route(x, true)).matrix;
			auto pxi = regularized_transport(fxi, TangentialAnchor{0, 1.0}, side_route(1.0 / x, false)).matrix;
			return pxi.inverse() * px;
		};
		auto c = pair({0.5, 3.0});
		for (Complex x : {Complex(2.5, 0.2), Complex(-3.0, 1.0), Complex(0.0, 5.0), Complex(8.0, 0.5)})
			chart_err = std::max(chart_err, max_abs_diff(pair(x), c));
	}
	return {xi_err < 1e-9 && chart_err < 1e-8,
	        fmt("xi transport vs closed form %.3e (limit 1e-9), chart change %.3e (limit 1e-8)", xi_err, chart_err)};
}

Outcome tate_lie_algebra()
{
	bool lattice = true, brackets = true, round_trip = true;
	for (int N = 1; N <= 8; ++N)
		lattice = lattice && tate_lattice_check(N).pass;
	for (int n = 1; n <= 6; ++n)
		brackets = brackets && rep_hom_preserves_brackets(n);
	std::mt19937_64 rng(7);
	std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
	for (int trial = 0; trial < 50; ++trial)
		for (int n = 2; n <= 6; ++n)
		{
			UnipotentCoordinates<Rational> c{Rational(num(rng), den(rng)), {}};
			for (int m = 0; m < n; ++m)
				c.v.push_back(Rational(num(rng), den(rng)));
			auto back = coordinates_from_unipotent(unipotent_from_coordinates(n, c, Rational(1)), Rational(1));
			round_trip = round_trip && back.u == c.u && back.v == c.v;
		}
	double cross = 0.0;
	const int n = 5;
	auto form = ConnectionForm::make(n, Chart::x, Normalization::deligne);
	for (Complex z : {Complex(0.3), Complex(0.5), Complex(-0.4)})
	{
		auto t = regularized_transport(form, TangentialAnchor{0, z}, PathSpec::line(0.0, z));
		auto c = coordinates_from_unipotent(t.matrix, Complex(1.0));
		cross = std::max(cross, std::abs(c.u));
		for (int m = 1; m <= n; ++m)
			cross = std::max(cross, std::abs(c.v[static_cast<std::size_t>(m - 1)] + polylog(m, z)));
	}
	bool ok = lattice && brackets && round_trip && cross < 1e-9;
	std::string flags = std::string("lattice N<=8 ") + (lattice ? "ok" : "FAILED") + ", brackets n<=6 " +
	                    (brackets ? "ok" : "FAILED") + ", exact round trip " + (round_trip ? "ok" : "FAILED");
	return {ok, flags + fmt(", u/v_n vs polylog %.3e (limit 1e-9)", cross)};
}

Outcome boundary_coherence()
{
	constexpr double kRoundoffFloor = 1e-10;
	bool membership = true, griffiths = true, monotone = true;
	double last_gap = 0.0;
	const char* worst_tag = "";
	std::vector<double> radii{1e-2, 1e-3, 1e-4, 1e-5};
	for (auto tag : {BoundaryTag::p0, BoundaryTag::p1, BoundaryTag::pinf})
		for (int n = 1; n <= 5; ++n)
		{
			auto o = boundary_limit(tag, n);
			membership = membership && chart_membership(orbit_chart_point(o), 1e-8);
			griffiths = griffiths && griffiths_check(build_generators(n)[o.cone_tag], o.limit, 1e-8);
			std::vector<Complex> pts;
			for (double r : radii)
				pts.push_back(tag == BoundaryTag::p1 ? Complex(1.0 - r) : Complex(r));
			auto gap = asymptotic_gap(tag, n, pts);
			// p1 at n = 1 is its own orbit: that gap is roundoff of a zero sequence
			for (std::size_t i = 1; i < gap.size(); ++i)
				monotone = monotone && (gap[i] < gap[i - 1] || std::max(gap[i], gap[i - 1]) < kRoundoffFloor);
			if (gap.back() > last_gap)
			{
				last_gap = gap.back();
				worst_tag = to_string(tag);
			}
		}
	bool ok = membership && griffiths && monotone && last_gap < 1e-6;
	std::string flags = std::string("membership ") + (membership ? "ok" : "FAILED") + ", griffiths " +
	                    (griffiths ? "ok" : "FAILED") + ", gaps decreasing " + (monotone ? "ok" : "FAILED");
	return {ok, flags + fmt(", largest gap at radius 1e-5 %.3e (limit 1e-6) at ", last_gap) + worst_tag};
}

} // namespace

int main()
{
	const std::vector<Criterion> criteria{
	    {1, "power identity", 1.0, power_identity},
	    {2, "transversality equivalence", 30.0, transversality_equivalence},
	    {3, "solution table", 60.0, solution_table},
	    {4, "zeta recovery", 60.0, zeta_recovery},
	    {5, "monodromy presentation", 60.0, monodromy_presentation},
	    {6, "xi chart consistency", 60.0, xi_chart_consistency},
	    {7, "tate lie algebra", 10.0, tate_lie_algebra},
	    {8, "boundary chart coherence", 60.0, boundary_coherence},
	};
	int failed = 0;
	for (const auto& c : criteria)
	{
		Outcome out;
		auto t0 = std::chrono::steady_clock::now();
		try
		{
			out = c.body();
		}
		catch (const std::exception& e)
		{
			out = {false, std::string("threw: ") + e.what()};
		}
		double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
		bool in_time = secs < c.budget_s;
		bool pass = out.pass && in_time;
		failed += pass ? 0 : 1;
		std::printf("%s %d %s: %s; %.2f s (budget %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(),
		            secs, c.budget_s);
		std::fflush(stdout);
	}
	std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
	return failed == 0 ? 0 : 1;
}
