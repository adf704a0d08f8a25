#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyperiod/errors.hpp"
#include "polyperiod/hodge_linear.hpp"
#include "polyperiod/matrix.hpp"
#include "polyperiod/ode.hpp"
#include "polyperiod/path.hpp"
#include "polyperiod/polylog.hpp"

namespace polyperiod {

/// kappa = 1/(2 pi i) ("paper") or kappa = 1 ("deligne").
enum class Normalization { paper, deligne };

inline const char* to_string(Normalization n) { return n == Normalization::paper ? "paper" : "deligne"; }

inline Normalization parse_normalization(const std::string& s)
{
	if (s == "paper")
		return Normalization::paper;
	if (s == "deligne")
		return Normalization::deligne;
	throw std::invalid_argument("unknown normalization: " + s);
}

inline Complex kappa(Normalization n) { return n == Normalization::paper ? 1.0 / kTwoPiI : Complex(1.0, 0.0); }

/// omega = kappa (R0 dz/z + R1 dz/(1-z)) in the active chart: R0 = N0 on the
/// x chart and R0 = Ninf = -N0 + N1 on the xi chart; R1 = N1 on both.
struct ConnectionForm
{
	int level = 1;
	Chart chart = Chart::x;
	Complex scale{1.0, 0.0};
	Matrix<Rational> residue_at_0;
	Matrix<Rational> residue_at_1;

	static ConnectionForm make(int n, Chart chart, Normalization norm) { return make(n, chart, kappa(norm)); }

	static ConnectionForm make(int n, Chart chart, Complex scale)
	{
		auto g = build_generators(n);
		ConnectionForm f;
		f.level = n;
		f.chart = chart;
		f.scale = scale;
		f.residue_at_0 = chart == Chart::x ? g.N0.matrix : g.Ninf.matrix;
		f.residue_at_1 = g.N1.matrix;
		return f;
	}

	Matrix<Complex> r0() const { return residue_at_0.cast<Complex>(); }
	Matrix<Complex> r1() const { return residue_at_1.cast<Complex>(); }

	/// Coefficient matrix of dz.
	Matrix<Complex> omega(Complex z) const { return scale * (r0() * (1.0 / z) + r1() * (1.0 / (1.0 - z))); }

	/// Monodromy of a solution around an anticlockwise loop at puncture p,
	/// acting by right multiplication.
	Matrix<Complex> local_monodromy_log(int p) const
	{
		return p == 0 ? kTwoPiI * scale * r0() : -kTwoPiI * scale * r1();
	}
};

struct TransportResult
{
	UnipotentMatrix<Complex> matrix;
	int winding0 = 0;
	int winding1 = 0;
	double est_error = 0.0;
};

namespace detail {

/// Triangular system for the strictly upper entries of dF/dz = Omega(z) F.
struct TriangularRhs
{
	const ConnectionForm* form;
	Matrix<Complex> r0, r1;
	int dim;

	explicit TriangularRhs(const ConnectionForm& f) : form(&f), r0(f.r0()), r1(f.r1()), dim(f.level + 1) {}

	void operator()(Complex z, const std::vector<Complex>& y, std::vector<Complex>& dy) const
	{
		const Complex c0 = form->scale / z, c1 = form->scale / (1.0 - z);
		auto om = [&](int j, int m) { return c0 * r0(j - 1, m - 1) + c1 * r1(j - 1, m - 1); };
		// storage index of a(j,k) matches UnipotentMatrix
		auto idx = [](int j, int k) { return static_cast<std::size_t>((k - 1) * (k - 2) / 2 + (j - 1)); };
		for (int k = 2; k <= dim; ++k)
			for (int j = 1; j < k; ++j)
			{
				Complex s = om(j, k);
				for (int m = j + 1; m < k; ++m)
				{
					Complex w = om(j, m);
					if (w != 0.0)
						s += w * y[idx(m, k)];
				}
				dy[idx(j, k)] = s;
			}
	}
};

inline void guard_punctures(const PathSpec& path, const char* what)
{
	for (std::size_t i = 0; i < path.segments.size(); ++i)
		for (double p : {0.0, 1.0})
			if (path.segments[i].distance_to(p) < 1e-6)
				throw std::domain_error(std::string(what) + ": path segment " + std::to_string(i) +
				                        " passes within 1e-6 of the puncture " + std::to_string(static_cast<int>(p)));
}

} // namespace detail

/// Fundamental solution of dF = omega F along `path`, normalized to the
/// identity at the start: any solution P satisfies P(end) = T P(start).
inline TransportResult transport(const ConnectionForm& form, const PathSpec& path, double tol = 1e-12)
{
	if (!(tol > 0.0))
		throw std::invalid_argument("transport tolerance must be positive");
	path.validate();
	if (path.start_anchor || path.end_anchor)
		throw std::invalid_argument("transport needs interior endpoints; use regularized_transport for anchors");
	detail::guard_punctures(path, "transport");
	TransportResult out;
	out.matrix = UnipotentMatrix<Complex>(form.level);
	auto cuts = path.cut_crossings();
	out.winding0 = cuts.around0;
	out.winding1 = cuts.around1;
	auto stats = integrate_path(path, out.matrix.entries(), detail::TriangularRhs(form), tol);
	out.est_error = stats.est_error;
	return out;
}

/// Local data at a puncture in the coordinate t (t = z at 0, t = 1 - z at 1),
/// where omega = (A/t + B sum_m t^m) dt.
struct LocalExpansion
{
	Matrix<Complex> A, B;
	Complex tangent_t;
};

inline LocalExpansion local_expansion(const ConnectionForm& form, const TangentialAnchor& anchor)
{
	anchor.validate();
	if (anchor.puncture == 0)
		return {form.scale * form.r0(), form.scale * form.r1(), anchor.tangent};
	return {-form.scale * form.r1(), -form.scale * form.r0(), -anchor.tangent};
}

/// Solution regularized at a tangential anchor, evaluated at t with |t| < 1:
/// F(t) = H(t) exp(A log(t/tau)), H(0) = I. The coefficients satisfy
/// (m - ad A) H_m = B (H_0 + ... + H_{m-1}); ad A is nilpotent so the inverse
/// is a finite Neumann sum. `log_ratio` is the chosen value of log(t/tau).
inline UnipotentMatrix<Complex> frobenius_solution(const LocalExpansion& loc, Complex t, Complex log_ratio,
                                                   double* truncation = nullptr)
{
	const std::size_t d = loc.A.rows();
	if (std::abs(t) >= 0.5)
		throw std::domain_error("frobenius_solution: |t| must be below 1/2");
	Matrix<Complex> partial = Matrix<Complex>::identity(d); // H_0 + ... + H_{m-1}
	Matrix<Complex> value = partial;                        // H(t)
	Complex tm = 1.0;
	double last = 0.0;
	for (int m = 1; m <= 400; ++m)
	{
		Matrix<Complex> x = loc.B * partial;
		Matrix<Complex> hm(d), term = x;
		double inv = 1.0 / m;
		for (std::size_t p = 0; p <= 2 * d && !term.is_zero_matrix(); ++p)
		{
			hm += term * Complex(std::pow(inv, static_cast<double>(p + 1)), 0.0);
			term = commutator(loc.A, term);
		}
		partial += hm;
		tm *= t;
		Matrix<Complex> contrib = hm * tm;
		value += contrib;
		last = max_abs(contrib);
		if (m > 4 && last < 1e-18 * std::max(1.0, max_abs(value)))
			break;
	}
	if (truncation)
		*truncation = last;
	auto e = unipotent_exp(Matrix<Complex>(loc.A * log_ratio));
	return UnipotentMatrix<Complex>::from_matrix(value * e.to_matrix(), 1e-12);
}

namespace detail {

struct RegularizedStart
{
	UnipotentMatrix<Complex> value;
	PathSpec tail; // rest of the route, may be empty
	std::vector<std::size_t> owner; // original segment index of each tail segment
	double truncation = 0.0;
};

inline RegularizedStart regularized_start(const ConnectionForm& form, const TangentialAnchor& anchor,
                                          const PathSpec& route)
{
	anchor.validate();
	if (route.empty())
		throw std::invalid_argument("regularized transport needs a route");
	if (std::abs(route.start() - anchor.point()) > 1e-12)
		throw std::invalid_argument("route must start at the anchor puncture");
	const Segment& first = route.segments.front();
	if (first.kind != Segment::Kind::line || first.length() == 0.0)
		throw std::invalid_argument("route must leave the anchor along a straight segment");

	constexpr double r0 = 0.25;
	RegularizedStart st;
	Complex z0;
	if (first.length() <= r0)
	{
		z0 = first.to;
		for (std::size_t i = 1; i < route.segments.size(); ++i)
		{
			st.tail.segments.push_back(route.segments[i]);
			st.owner.push_back(i);
		}
	}
	else
	{
		double s = r0 / first.length();
		z0 = first.point(s);
		st.tail.segments.push_back(first.sub(s, 1.0));
		st.owner.push_back(0);
		for (std::size_t i = 1; i < route.segments.size(); ++i)
		{
			st.tail.segments.push_back(route.segments[i]);
			st.owner.push_back(i);
		}
	}
	auto loc = local_expansion(form, anchor);
	Complex t0 = anchor.puncture == 0 ? z0 : 1.0 - z0;
	st.value = frobenius_solution(loc, t0, std::log(t0 / loc.tangent_t), &st.truncation);
	return st;
}

} // namespace detail

/// Regularized solution at the anchor, continued along `route` (which starts
/// at the anchor's puncture with a straight segment). Returns the value at
/// the end of every route segment. Leaving the puncture in a direction other
/// than the tangent uses the principal value of log(t/tau).
inline std::vector<TransportResult> regularized_transport_trace(const ConnectionForm& form,
                                                                const TangentialAnchor& anchor, const PathSpec& route,
                                                                double tol = 1e-12)
{
	if (!(tol > 0.0))
		throw std::invalid_argument("transport tolerance must be positive");
	route.validate();
	auto st = detail::regularized_start(form, anchor, route);
	detail::guard_punctures(st.tail, "regularized_transport");

	std::vector<TransportResult> out(route.segments.size());
	std::vector<Complex> y = st.value.entries();
	IntegrationStats stats;
	stats.est_error = st.truncation;
	detail::TriangularRhs rhs(form);
	CutCrossings cuts;
	auto record = [&](std::size_t idx) {
		TransportResult& r = out[idx];
		r.matrix = UnipotentMatrix<Complex>(form.level);
		r.matrix.entries() = y;
		r.winding0 = cuts.around0;
		r.winding1 = cuts.around1;
		r.est_error = stats.est_error;
	};
	if (st.owner.empty() || st.owner.front() != 0)
		record(0);
	for (std::size_t i = 0; i < st.tail.segments.size(); ++i)
	{
		const Segment& seg = st.tail.segments[i];
		integrate_segment(seg, y, rhs, tol, st.owner[i], stats);
		auto c = count_cut_crossings(seg);
		cuts.around0 += c.around0;
		cuts.around1 += c.around1;
		record(st.owner[i]);
	}
	return out;
}

inline TransportResult regularized_transport(const ConnectionForm& form, const TangentialAnchor& anchor,
                                             const PathSpec& route, double tol = 1e-12)
{
	return regularized_transport_trace(form, anchor, route, tol).back();
}

/// Regularized transport between two tangential anchors: the route carries
/// both anchors, is split at half its length, each half is regularized at
/// its own end, and the result is F_end(m)^{-1} F_start(m). A solution
/// normalized at the start anchor has this as its regularized value at the
/// end anchor.
inline TransportResult tangential_transport(const ConnectionForm& form, const PathSpec& route, double tol = 1e-12)
{
	route.validate();
	if (!route.start_anchor || !route.end_anchor)
		throw std::invalid_argument("tangential_transport needs anchors at both ends");
	auto [head, tail] = route.split(0.5);
	auto a = regularized_transport(form, *route.start_anchor, head, tol);
	auto b = regularized_transport(form, *route.end_anchor, tail.reversed(), tol);
	TransportResult out;
	out.matrix = b.matrix.inverse() * a.matrix;
	auto cuts = route.cut_crossings();
	out.winding0 = cuts.around0;
	out.winding1 = cuts.around1;
	out.est_error = a.est_error + b.est_error;
	return out;
}

/// Branch of the closed forms: principal value times M0^{w0} M1^{w1}, where
/// M_p is the anticlockwise monodromy at p. For paths that interleave the two
/// kinds of crossings the pair alone does not fix the branch; this order is
/// the one where all crossings of the cut at 1 come first.
struct Branch
{
	int w0 = 0;
	int w1 = 0;
};

namespace detail {

inline void check_off_cuts(Complex z, const char* what)
{
	if (z == 0.0 || z == 1.0)
		throw std::domain_error(std::string(what) + ": point is a puncture");
	if (z.imag() == 0.0 && z.real() > 1.0)
		throw std::domain_error(std::string(what) +
		                        ": point lies on the cut [1,inf) of l_1; approach from one side and pass a winding");
}

inline UnipotentMatrix<Complex> apply_branch(const ConnectionForm& form, UnipotentMatrix<Complex> p, Branch b)
{
	auto step = [&](int puncture, int w) {
		if (w == 0)
			return;
		auto m = unipotent_exp(Matrix<Complex>(form.local_monodromy_log(puncture) * Complex(w, 0.0)));
		p = p * m;
	};
	step(0, b.w0);
	step(1, b.w1);
	return p;
}

} // namespace detail

/// Closed-form period matrix on the x chart, regularized at (0, tangent 1):
/// a_{j,k} = (kappa log x)^{k-j}/(k-j)! for k <= n and
/// a_{j,n+1} = -kappa^m l_m(x), m = n+1-j. The constant c shifts the top
/// polylog as l_n -> l_n + c.
inline UnipotentMatrix<Complex> closed_form_period(int n, Complex x, Normalization norm = Normalization::paper,
                                                   Branch branch = {}, Complex c = 0.0)
{
	detail::check_off_cuts(x, "closed_form_period");
	const Complex k = kappa(norm);
	const Complex L = k * std::log(x);
	UnipotentMatrix<Complex> p(n);
	for (int col = 2; col <= n; ++col)
	{
		Complex pw = 1.0;
		double fact = 1.0;
		for (int j = col - 1; j >= 1; --j)
		{
			pw *= L;
			fact *= col - j;
			p.a(j, col) = pw / fact;
		}
	}
	Complex km = 1.0;
	for (int m = 1; m <= n; ++m)
	{
		km *= k;
		Complex l = polylog(m, x);
		if (m == n)
			l += c;
		p.a(n + 1 - m, n + 1) = -km * l;
	}
	return detail::apply_branch(ConnectionForm::make(n, Chart::x, norm), p, branch);
}

/// Closed form on the xi chart, regularized at (xi = 0, tangent 1):
/// a_{j,k} = (-kappa log xi)^{k-j}/(k-j)! for k <= n and
/// a_{j,n+1} = (-kappa log xi)^m/m! + (-kappa)^m l_m(xi), m = n+1-j.
inline UnipotentMatrix<Complex> closed_form_period_xi(int n, Complex xi, Normalization norm = Normalization::paper,
                                                      Branch branch = {}, Complex c = 0.0)
{
	detail::check_off_cuts(xi, "closed_form_period_xi");
	const Complex k = kappa(norm);
	const Complex L = -k * std::log(xi);
	UnipotentMatrix<Complex> p(n);
	for (int col = 2; col <= n + 1; ++col)
	{
		Complex pw = 1.0;
		double fact = 1.0;
		for (int j = col - 1; j >= 1; --j)
		{
			pw *= L;
			fact *= col - j;
			p.a(j, col) = pw / fact;
		}
	}
	Complex km = 1.0;
	for (int m = 1; m <= n; ++m)
	{
		km *= -k;
		Complex l = polylog(m, xi);
		if (m == n)
			l += c;
		p.a(n + 1 - m, n + 1) += km * l;
	}
	return detail::apply_branch(ConnectionForm::make(n, Chart::xi, norm), p, branch);
}

/// Formal value at the base point: log = 0 and all l_k = 0, leaving only the
/// constant c in the corner.
inline UnipotentMatrix<Complex> base_point_period(int n, Normalization norm = Normalization::paper, Complex c = 0.0)
{
	UnipotentMatrix<Complex> p(n);
	p.a(1, n + 1) = -std::pow(kappa(norm), n) * c;
	return p;
}

struct MonodromyResult
{
	UnipotentMatrix<Complex> matrix;
	double est_error = 0.0;
};

/// Monodromy of the solution regularized at `anchor` along the small loop at
/// `puncture`: gamma_0 runs anticlockwise around 0, gamma_1 clockwise around
/// 1, each reached along the real axis to the loop's base point `z0`. The
/// loop transport T satisfies T F = F M with F the continued solution, and M
/// acts by right multiplication. For kappa = 1/(2 pi i) one gets exp(N0) and
/// exp(N1).
inline MonodromyResult monodromy(const ConnectionForm& form, int puncture, const TangentialAnchor& anchor,
                                 double tol = 1e-12, Complex z0 = 0.5)
{
	if (puncture != 0 && puncture != 1)
		throw std::invalid_argument("monodromy: puncture must be 0 or 1");
	PathSpec route = PathSpec::line(anchor.point(), z0);
	auto f = regularized_transport(form, anchor, route, tol);
	const Complex center(puncture, 0.0);
	PathSpec loop;
	loop.segments.push_back(Segment::arc(center, z0, z0, puncture == 0 ? 1 : -1));
	auto t = transport(form, loop, tol);
	MonodromyResult out;
	out.matrix = f.matrix.inverse() * t.matrix * f.matrix;
	out.est_error = f.est_error + t.est_error;
	return out;
}

} // namespace polyperiod
