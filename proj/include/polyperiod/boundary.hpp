#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyperiod/errors.hpp"
#include "polyperiod/hodge_linear.hpp"
#include "polyperiod/polylog.hpp"
#include "polyperiod/transport.hpp"

namespace polyperiod {

enum class BoundaryTag { p0, p1, pinf };

inline const char* to_string(BoundaryTag t)
{
	switch (t)
	{
	case BoundaryTag::p0: return "p0";
	case BoundaryTag::p1: return "p1";
	default: return "pinf";
	}
}

inline BoundaryTag parse_boundary_tag(const std::string& s)
{
	if (s == "p0")
		return BoundaryTag::p0;
	if (s == "p1")
		return BoundaryTag::p1;
	if (s == "pinf")
		return BoundaryTag::pinf;
	throw std::invalid_argument("unknown boundary chart: " + s);
}

/// Which chart, puncture and cone generator belong to a boundary point. p_inf
/// lives on the xi chart at xi = 0.
struct BoundaryChart
{
	BoundaryTag tag = BoundaryTag::p0;
	int level = 1;

	Chart chart() const { return tag == BoundaryTag::pinf ? Chart::xi : Chart::x; }
	int puncture() const { return tag == BoundaryTag::p1 ? 1 : 0; }
	GeneratorTag cone() const
	{
		return tag == BoundaryTag::p0 ? GeneratorTag::N0 : tag == BoundaryTag::p1 ? GeneratorTag::N1 : GeneratorTag::Ninf;
	}
	/// Position of q among the coordinates.
	std::size_t q_index() const { return tag == BoundaryTag::p1 ? 1 : 0; }

	std::string constraint() const
	{
		switch (tag)
		{
		case BoundaryTag::p0: return "q = 0 => beta = lambda_2 = ... = lambda_{n-1} = 0";
		case BoundaryTag::p1: return "q = 0 => alpha = 0";
		default: return "q' = 0 => beta' = -alpha', lambda'_k = (-alpha')^k / k! (2 <= k <= n-1)";
		}
	}
};

inline const char* cone_name(GeneratorTag t)
{
	return t == GeneratorTag::N0 ? "sigma0" : t == GeneratorTag::N1 ? "sigma1" : "sigmainf";
}

/// Coordinates on the chart Y near a boundary point, always n+1 of them:
///   p0:   (q, beta, lambda_2, ..., lambda_n)
///   p1:   (alpha, q, lambda_2, ..., lambda_n)
///   pinf: (q', beta', lambda'_2, ..., lambda'_n)
template <class T> struct ChartPoint
{
	BoundaryChart chart;
	std::vector<T> coords;

	const T& q() const { return coords.at(chart.q_index()); }
};

template <class T> bool chart_membership(const ChartPoint<T>& p, double tol = 1e-10)
{
	const int n = p.chart.level;
	if (static_cast<int>(p.coords.size()) != n + 1)
		throw std::invalid_argument("chart point needs n+1 coordinates");
	auto zero = [tol](const T& x) { return is_zero(x, tol); };
	if (!zero(p.q()))
		return true;
	switch (p.chart.tag)
	{
	case BoundaryTag::p0:
		for (int i = 1; i <= n - 1; ++i)
			if (!zero(p.coords[static_cast<std::size_t>(i)]))
				return false;
		return true;
	case BoundaryTag::p1: return zero(p.coords[0]);
	default:
	{
		// alpha' itself is not a coordinate; beta' = -alpha' eliminates it
		const T& b = p.coords[1];
		T pw = b, fact(1);
		for (int k = 2; k <= n - 1; ++k)
		{
			pw *= b;
			fact *= T(static_cast<long>(k));
			if (!zero(T(p.coords[static_cast<std::size_t>(k)] - pw / fact)))
				return false;
		}
		return true;
	}
	}
}

/// Reads chart coordinates off a period matrix at the local parameter z
/// (x for p0 and p1, xi for pinf). q comes from the period: exp(alpha/kappa)
/// at p0, exp(beta/kappa) at p1, exp(-a_{12}/kappa) at pinf; with kappa =
/// 1/(2 pi i) this is q = e^{2 pi i alpha}. It equals z, 1 - z and xi on the
/// principal branch. For n = 1 there is no alpha entry and z supplies q.
inline ChartPoint<Complex> chart_coordinates(BoundaryTag tag, const UnipotentMatrix<Complex>& period,
                                             std::optional<Complex> z = std::nullopt,
                                             Normalization norm = Normalization::paper)
{
	const int n = period.level();
	BoundaryChart chart{tag, n};
	if (z)
	{
		double r = tag == BoundaryTag::p1 ? std::abs(1.0 - *z) : std::abs(*z);
		if (!(r > 0.0 && r < 1.0))
			throw std::domain_error(std::string("point lies outside the punctured chart disk of ") + to_string(tag));
	}
	const Complex k = kappa(norm);
	auto from_z = [&](Complex local) {
		if (!z)
			throw std::invalid_argument("level 1 chart coordinates need the local parameter");
		return local;
	};
	ChartPoint<Complex> p{chart, std::vector<Complex>(static_cast<std::size_t>(n + 1))};
	const Complex a12 = n >= 2 ? period.a(1, 2) : Complex(0.0);
	const Complex beta = period.a(n, n + 1);
	for (int j = 2; j <= n; ++j)
		p.coords[static_cast<std::size_t>(j)] = period.a(n + 1 - j, n + 1);
	switch (tag)
	{
	case BoundaryTag::p0:
		p.coords[0] = n >= 2 ? std::exp(a12 / k) : from_z(z.value_or(0.0));
		p.coords[1] = beta;
		break;
	case BoundaryTag::p1:
		p.coords[0] = a12;
		p.coords[1] = std::exp(beta / k);
		break;
	case BoundaryTag::pinf:
		p.coords[0] = n >= 2 ? std::exp(-a12 / k) : from_z(z.value_or(0.0));
		p.coords[1] = beta;
		break;
	}
	return p;
}

struct NilpotentOrbitClass
{
	BoundaryTag tag = BoundaryTag::p0;
	GeneratorTag cone_tag = GeneratorTag::N0;
	FiltrationParams<Complex> limit_params;
	UnipotentMatrix<Complex> limit;  // extrapolated matrix
	std::vector<double> residuals;   // differences of successive extrapolants
	double est_error = 0.0;

	UnipotentMatrix<Complex> flag() const { return filtration_matrix(limit.level(), limit_params); }
};

/// The limit as a point of its chart with q = 0.
inline ChartPoint<Complex> orbit_chart_point(const NilpotentOrbitClass& o)
{
	const int n = o.limit.level();
	ChartPoint<Complex> p{{o.tag, n}, std::vector<Complex>(static_cast<std::size_t>(n + 1))};
	const auto& lp = o.limit_params;
	for (int j = 2; j <= n; ++j)
		p.coords[static_cast<std::size_t>(j)] = lp.lambda[static_cast<std::size_t>(j - 2)];
	if (o.tag == BoundaryTag::p1)
	{
		p.coords[0] = lp.alpha;
		p.coords[1] = 0.0;
	}
	else
	{
		p.coords[0] = 0.0;
		p.coords[1] = lp.beta;
	}
	return p;
}

struct BoundaryOptions
{
	Normalization norm = Normalization::paper;
	Complex c = 0.0;
	/// Route from the anchor puncture to the first approach point, written in
	/// the chart of the boundary point. Default: the tangent ray (real axis
	/// from 0 for p0 and pinf, real axis from 0 over to 1 for p1). Later
	/// approach points lie on the segment from the first one to the puncture.
	std::optional<PathSpec> route;
	double tol = 1e-9;     // acceptance of successive extrapolants
	double ode_tol = 1e-12;
	/// Number of log powers removed by the extrapolation; 0 picks 2 at p1
	/// and n at p0 and pinf.
	int order = 0;
};

/// Geometric radii 4^{-k}. At p1 the approach runs through the ODE and stays
/// outside the 1e-6 puncture guard; at p0 and pinf the points sit on the
/// tangent ray and are evaluated by the local series.
inline std::vector<double> default_approach(BoundaryTag tag)
{
	std::vector<double> r;
	const int lo = tag == BoundaryTag::p1 ? 3 : 6, hi = tag == BoundaryTag::p1 ? 9 : 18;
	for (int k = lo; k <= hi; ++k)
		r.push_back(std::ldexp(1.0, -2 * k));
	return r;
}

namespace detail {

/// Right factor carrying the integration constant: l_n -> l_n + c.
inline UnipotentMatrix<Complex> constant_factor(const BoundaryChart& chart, Normalization norm, Complex c)
{
	const int n = chart.level;
	UnipotentMatrix<Complex> m(n);
	const Complex k = kappa(norm);
	m.a(1, n + 1) = chart.chart() == Chart::x ? -std::pow(k, n) * c : std::pow(-k, n) * c;
	return m;
}

inline Matrix<Complex> cone_matrix(const BoundaryChart& chart)
{
	return build_generators(chart.level)[chart.cone()].matrix.cast<Complex>();
}

} // namespace detail

/// Extrapolates exp(-log(t) kappa R) F(z) as z tends to the puncture along
/// the approach (t the local coordinate, R the residue there, F the period
/// regularized at the base point of the chart). Near the puncture the
/// difference to the limit is t times a polynomial in log t, so for
/// geometric radii with ratio rho the sequence is annihilated by
/// (S - rho)^K with S the shift; K = 2 suffices at p1, p0 and pinf need
/// K = n. Convergence is declared when successive extrapolants differ by
/// less than opts.tol.
inline NilpotentOrbitClass boundary_limit(BoundaryTag tag, int n, const std::vector<double>& approach,
                                          const BoundaryOptions& opts = {})
{
	if (n < 1)
		throw std::invalid_argument("boundary_limit: n must be >= 1");
	const int order = opts.order > 0 ? opts.order : (tag == BoundaryTag::p1 ? 2 : n);
	if (approach.size() < static_cast<std::size_t>(order) + 3)
		throw std::invalid_argument("boundary_limit: need at least " + std::to_string(order + 3) +
		                            " approach radii for extrapolation order " + std::to_string(order));
	for (std::size_t i = 0; i < approach.size(); ++i)
	{
		if (!(approach[i] > 0.0 && approach[i] < 1.0))
			throw std::invalid_argument("boundary_limit: radii must lie in (0,1)");
		if (i > 0 && !(approach[i] < approach[i - 1]))
			throw std::invalid_argument("boundary_limit: radii must be strictly decreasing");
	}
	const double rho = approach[1] / approach[0];
	for (std::size_t i = 2; i < approach.size(); ++i)
		if (std::abs(approach[i] / approach[i - 1] - rho) > 1e-9 * rho)
			throw std::invalid_argument("boundary_limit: radii must form a geometric sequence");

	BoundaryChart chart{tag, n};
	auto form = ConnectionForm::make(n, chart.chart(), opts.norm);
	const Complex punct(chart.puncture(), 0.0);
	const TangentialAnchor anchor{0, 1.0};
	const auto cfac = detail::constant_factor(chart, opts.norm, opts.c);
	const Matrix<Complex> R = detail::cone_matrix(chart);
	const Complex k = kappa(opts.norm);

	// period at every approach point, with windings of the route
	std::vector<TransportResult> periods;
	Complex dir = 1.0;
	if (!opts.route && tag != BoundaryTag::p1)
	{
		auto loc = local_expansion(form, anchor);
		for (double r : approach)
		{
			if (r <= 0.25)
			{
				TransportResult tr;
				tr.matrix = frobenius_solution(loc, r, std::log(r), &tr.est_error);
				periods.push_back(tr);
			}
			else
				periods.push_back(regularized_transport(form, anchor, PathSpec::line(0.0, r), opts.ode_tol));
		}
	}
	else
	{
		PathSpec route;
		Complex first;
		if (opts.route)
		{
			route = *opts.route;
			first = route.end();
			if (std::abs(std::abs(first - punct) - approach[0]) > 1e-9)
				throw std::invalid_argument("boundary_limit: route must end at distance approach[0] from the puncture");
		}
		else
		{
			first = Complex(1.0 - approach[0]);
			route = PathSpec::line(0.0, first);
		}
		const std::size_t head = route.segments.size();
		dir = (first - punct) / approach[0];
		for (std::size_t i = 1; i < approach.size(); ++i)
			route.line_to(punct + approach[i] * dir);
		auto trace = regularized_transport_trace(form, anchor, route, opts.ode_tol);
		for (std::size_t i = 0; i < approach.size(); ++i)
			periods.push_back(trace[head - 1 + i]);
	}

	std::vector<Matrix<Complex>> g;
	double est = 0.0;
	for (std::size_t i = 0; i < approach.size(); ++i)
	{
		const TransportResult& tr = periods[i];
		est = std::max(est, tr.est_error);
		Complex z = punct + approach[i] * dir;
		// continued log of the local coordinate along the route
		Complex log_t = tag == BoundaryTag::p1 ? std::log(1.0 - z) + kTwoPiI * Complex(tr.winding1)
		                                       : std::log(z) + kTwoPiI * Complex(tr.winding0);
		// residue of omega in t: kappa N0, -kappa N1, kappa Ninf
		Complex s = tag == BoundaryTag::p1 ? k * log_t : -k * log_t;
		auto strip = unipotent_exp(Matrix<Complex>(R * s));
		g.push_back(strip.to_matrix() * (tr.matrix * cfac).to_matrix());
	}

	// (S - rho)^K = sum_j binom(K,j) (-rho)^{K-j} S^j, normalized by (1-rho)^K
	std::vector<double> coef(static_cast<std::size_t>(order) + 1);
	{
		double binom = 1.0;
		for (int j = 0; j <= order; ++j)
		{
			coef[static_cast<std::size_t>(j)] = binom * std::pow(-rho, order - j) / std::pow(1.0 - rho, order);
			binom = binom * (order - j) / (j + 1);
		}
	}
	std::vector<Matrix<Complex>> ext;
	for (std::size_t i = 0; i + static_cast<std::size_t>(order) < g.size(); ++i)
	{
		Matrix<Complex> e(g[i].rows());
		for (int j = 0; j <= order; ++j)
			e += g[i + static_cast<std::size_t>(j)] * Complex(coef[static_cast<std::size_t>(j)]);
		ext.push_back(e);
	}
	NilpotentOrbitClass out;
	out.tag = tag;
	out.cone_tag = chart.cone();
	for (std::size_t i = 0; i + 1 < ext.size(); ++i)
		out.residuals.push_back(max_abs_diff(ext[i + 1], ext[i]));
	if (!(out.residuals.back() < opts.tol))
	{
		std::ostringstream msg;
		msg << "boundary_limit at " << to_string(tag) << " did not converge; residuals:";
		for (double r : out.residuals)
			msg << ' ' << r;
		throw convergence_error(msg.str());
	}
	// extrapolation leaves roundoff below the diagonal and on it
	Matrix<Complex> lim = ext.back();
	for (std::size_t i = 0; i < lim.rows(); ++i)
		for (std::size_t j = 0; j <= i; ++j)
			lim(i, j) = i == j ? 1.0 : 0.0;
	out.limit = UnipotentMatrix<Complex>::from_matrix(lim);
	out.limit_params = filtration_params(out.limit);
	out.est_error = est + out.residuals.back();
	return out;
}

inline NilpotentOrbitClass boundary_limit(BoundaryTag tag, int n, const BoundaryOptions& opts = {})
{
	return boundary_limit(tag, n, default_approach(tag), opts);
}

/// The limits stated in closed form: F(0, ..., 0, lambda_n^0) at p0 and pinf,
/// F(0, 0, -kappa^2 zeta(2), ..., -kappa^n (c + zeta(n))) at p1.
inline UnipotentMatrix<Complex> expected_limit(BoundaryTag tag, int n, Normalization norm = Normalization::paper,
                                               Complex c = 0.0)
{
	BoundaryChart chart{tag, n};
	auto m = detail::constant_factor(chart, norm, c);
	if (tag == BoundaryTag::p1)
	{
		const Complex k = kappa(norm);
		for (int j = 2; j <= n; ++j)
			m.a(n + 1 - j, n + 1) += -std::pow(k, j) * zeta_ref(j);
	}
	return m;
}

/// Entrywise distance between the nilpotent orbit exp(log(t) kappa R) L and
/// the given period matrices, one per point (x for p0 and p1, xi for pinf).
inline std::vector<double> asymptotic_gap(BoundaryTag tag, int n, const std::vector<Complex>& points,
                                          const std::vector<UnipotentMatrix<Complex>>& periods,
                                          Normalization norm = Normalization::paper, Complex c = 0.0)
{
	if (points.size() != periods.size())
		throw std::invalid_argument("asymptotic_gap: one period per point");
	BoundaryChart chart{tag, n};
	const Matrix<Complex> R = detail::cone_matrix(chart);
	const Matrix<Complex> limit = expected_limit(tag, n, norm, c).to_matrix();
	const Complex k = kappa(norm);
	std::vector<double> out;
	for (std::size_t i = 0; i < points.size(); ++i)
	{
		Complex z = points[i];
		Complex log_t = tag == BoundaryTag::p1 ? std::log(1.0 - z) : std::log(z);
		Complex s = tag == BoundaryTag::p1 ? -k * log_t : k * log_t;
		Matrix<Complex> naive = unipotent_exp(Matrix<Complex>(R * s)).to_matrix() * limit;
		out.push_back(max_abs_diff(naive, periods[i].to_matrix()));
	}
	return out;
}

/// Same, against the closed-form periods on the principal branch.
inline std::vector<double> asymptotic_gap(BoundaryTag tag, int n, const std::vector<Complex>& points,
                                          Normalization norm = Normalization::paper, Complex c = 0.0)
{
	std::vector<UnipotentMatrix<Complex>> periods;
	for (Complex z : points)
		periods.push_back(tag == BoundaryTag::pinf ? closed_form_period_xi(n, z, norm, {}, c)
		                                           : closed_form_period(n, z, norm, {}, c));
	return asymptotic_gap(tag, n, points, periods, norm, c);
}

} // namespace polyperiod
