#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyperiod/hodge_linear.hpp"
#include "polyperiod/matrix.hpp"
#include "polyperiod/rational.hpp"

namespace polyperiod {

/// Element of Z[u, u^{-1}], read as sum c_k u^k du/u. The class of the
/// conjugate a0^k a1 a0^{-k} is u^k.
class LaurentPolyInt
{
  public:
	LaurentPolyInt() = default;

	static LaurentPolyInt monomial(long k, Integer c = 1)
	{
		LaurentPolyInt p;
		p.add(k, c);
		return p;
	}

	const std::map<long, Integer>& coefficients() const { return coef_; }
	bool is_zero() const { return coef_.empty(); }

	void add(long k, const Integer& c)
	{
		if (c == 0)
			return;
		auto& slot = coef_[k];
		slot += c;
		if (slot == 0)
			coef_.erase(k);
	}

	friend LaurentPolyInt operator+(LaurentPolyInt a, const LaurentPolyInt& b)
	{
		for (const auto& [k, c] : b.coef_)
			a.add(k, c);
		return a;
	}
	friend LaurentPolyInt operator-(LaurentPolyInt a, const LaurentPolyInt& b)
	{
		for (const auto& [k, c] : b.coef_)
			a.add(k, -c);
		return a;
	}
	friend LaurentPolyInt operator*(const LaurentPolyInt& a, const LaurentPolyInt& b)
	{
		LaurentPolyInt r;
		for (const auto& [i, x] : a.coef_)
			for (const auto& [j, y] : b.coef_)
				r.add(i + j, x * y);
		return r;
	}
	bool operator==(const LaurentPolyInt&) const = default;

  private:
	std::map<long, Integer> coef_;
};

/// Letters of a word in a0, a1 and their inverses, e.g. "a0 a1 a0^-1 a1^-1"
/// or "a0^2 a1 a0^-2".
struct Letter
{
	int generator = 0; // 0 or 1
	long exponent = 1;
};

inline std::vector<Letter> parse_word(const std::string& text)
{
	std::vector<Letter> out;
	std::istringstream in(text);
	std::string tok;
	while (in >> tok)
	{
		if (tok.size() < 2 || tok[0] != 'a' || (tok[1] != '0' && tok[1] != '1'))
			throw std::invalid_argument("bad letter in group word: " + tok);
		Letter l{tok[1] - '0', 1};
		if (tok.size() > 2)
		{
			if (tok[2] != '^' || tok.size() == 3)
				throw std::invalid_argument("bad exponent in group word: " + tok);
			try
			{
				std::size_t used = 0;
				l.exponent = std::stol(tok.substr(3), &used);
				if (used != tok.size() - 3)
					throw std::invalid_argument(tok);
			}
			catch (const std::exception&)
			{
				throw std::invalid_argument("bad exponent in group word: " + tok);
			}
		}
		out.push_back(l);
	}
	return out;
}

/// Image in the group ring of a word lying in Gamma_1 (total a0-exponent 0):
/// each a1^e preceded by a0-exponent s contributes e u^s. Conjugates of a1
/// commute in the quotient this models, so the image is additive.
inline LaurentPolyInt from_word(const std::vector<Letter>& word)
{
	LaurentPolyInt p;
	long s = 0;
	for (const auto& l : word)
	{
		if (l.generator == 0)
			s += l.exponent;
		else
			p.add(s, l.exponent);
	}
	if (s != 0)
		throw std::invalid_argument("word does not lie in Gamma_1: total a0-exponent is " + std::to_string(s));
	return p;
}

inline LaurentPolyInt from_word(const std::string& text) { return from_word(parse_word(text)); }

/// Class in Z[u,u^{-1}]/(u-1)^N, stored by its coefficients on (u-1)^i.
struct TruncatedGroupRingElt
{
	int level = 1;
	std::vector<Integer> residue;

	bool operator==(const TruncatedGroupRingElt&) const = default;
	bool is_zero() const
	{
		for (const auto& r : residue)
			if (r != 0)
				return false;
		return true;
	}
};

/// binom(k, i) for any integer k: k (k-1) ... (k-i+1) / i!
inline Integer generalized_binomial(long k, int i)
{
	Integer num = 1, den = 1;
	for (int j = 0; j < i; ++j)
	{
		num *= Integer(k - j);
		den *= Integer(j + 1);
	}
	return num / den;
}

/// u^k = ((u-1) + 1)^k expanded binomially; negative k use the generalized
/// binomial, which is exact since the expansion is taken mod (u-1)^N.
inline TruncatedGroupRingElt truncate(const LaurentPolyInt& p, int N)
{
	if (N < 1)
		throw std::invalid_argument("truncation level must be >= 1");
	TruncatedGroupRingElt t{N, std::vector<Integer>(static_cast<std::size_t>(N), Integer(0))};
	for (const auto& [k, c] : p.coefficients())
		for (int i = 0; i < N; ++i)
			t.residue[static_cast<std::size_t>(i)] += c * generalized_binomial(k, i);
	return t;
}

/// Product in the truncated ring.
inline TruncatedGroupRingElt operator*(const TruncatedGroupRingElt& a, const TruncatedGroupRingElt& b)
{
	if (a.level != b.level)
		throw std::invalid_argument("truncated ring: level mismatch");
	const auto N = static_cast<std::size_t>(a.level);
	TruncatedGroupRingElt r{a.level, std::vector<Integer>(N, Integer(0))};
	for (std::size_t i = 0; i < N; ++i)
		for (std::size_t j = 0; i + j < N; ++j)
			r.residue[i + j] += a.residue[i] * b.residue[j];
	return r;
}

/// Largest d with the class in ((u-1)^{d-1}); N+1 for the zero class.
inline int central_depth(const TruncatedGroupRingElt& t)
{
	for (std::size_t i = 0; i < t.residue.size(); ++i)
		if (t.residue[i] != 0)
			return static_cast<int>(i) + 1;
	return t.level + 1;
}

inline int central_depth(const LaurentPolyInt& p, int N) { return central_depth(truncate(p, N)); }

/// (w_1, ..., w_N), w_n the coordinate on the weight -2n piece.
struct GradedTateVector
{
	int level = 1;
	std::vector<Rational> coords;

	bool operator==(const GradedTateVector&) const = default;
};

/// u = e^v: the class sum_i r_i (u-1)^i du/u becomes sum_i r_i (e^v - 1)^i dv
/// mod v^N, and w_n is the coefficient of v^{n-1}. On monomials this is
/// sum_k c_k e^{kv} dv -> (sum_k c_k k^{n-1}/(n-1)!)_n.
inline GradedTateVector phi(const TruncatedGroupRingElt& t)
{
	const auto N = static_cast<std::size_t>(t.level);
	// e^v - 1 mod v^N
	std::vector<Rational> ev(N, Rational(0));
	Rational fact = 1;
	for (std::size_t m = 1; m < N; ++m)
	{
		fact *= Rational(static_cast<long>(m));
		ev[m] = Rational(1) / fact;
	}
	GradedTateVector w{t.level, std::vector<Rational>(N, Rational(0))};
	std::vector<Rational> pw(N, Rational(0));
	pw[0] = 1; // (e^v - 1)^0
	for (std::size_t i = 0; i < N; ++i)
	{
		if (t.residue[i] != 0)
			for (std::size_t m = 0; m < N; ++m)
				w.coords[m] += Rational(t.residue[i]) * pw[m];
		std::vector<Rational> next(N, Rational(0));
		for (std::size_t a = 0; a < N; ++a)
			if (pw[a] != 0)
				for (std::size_t b = 1; a + b < N; ++b)
					next[a + b] += pw[a] * ev[b];
		pw.swap(next);
	}
	return w;
}

/// Same map computed from monomial coefficients, independent of the residue
/// basis.
inline GradedTateVector phi_monomial(const LaurentPolyInt& p, int N)
{
	GradedTateVector w{N, std::vector<Rational>(static_cast<std::size_t>(N), Rational(0))};
	for (const auto& [k, c] : p.coefficients())
	{
		Rational term = Rational(c); // c k^{n-1}/(n-1)! at n = 1
		for (int n = 1; n <= N; ++n)
		{
			w.coords[static_cast<std::size_t>(n - 1)] += term;
			term = term * Rational(k) / Rational(n);
		}
	}
	return w;
}

struct LatticeReport
{
	bool pass = true;
	std::vector<Integer> gcds;     // per n, over the images of u^0 .. u^{N-1}
	bool phi_invertible = true;    // the N x N matrix (k^{n-1}/(n-1)!) has nonzero determinant
	bool integral = true;          // (n-1)! pr_n phi lands in Z
};

/// (n-1)! pr_n phi maps the classes of u^0, ..., u^{N-1} (a basis of
/// Gamma_1^{(N)}) to integers generating Z, for every n <= N.
inline LatticeReport tate_lattice_check(int N)
{
	if (N < 1)
		throw std::invalid_argument("tate_lattice_check: N must be >= 1");
	LatticeReport rep;
	const auto n_ = static_cast<std::size_t>(N);
	Matrix<Rational> vander(n_);
	std::vector<std::vector<Integer>> images(n_);
	for (long k = 0; k < N; ++k)
	{
		auto w = phi(truncate(LaurentPolyInt::monomial(k), N));
		Rational fact = 1;
		for (std::size_t n = 0; n < n_; ++n)
		{
			if (n > 0)
				fact *= Rational(static_cast<long>(n));
			vander(n, static_cast<std::size_t>(k)) = w.coords[n];
			Rational scaled = w.coords[n] * fact;
			if (boost::multiprecision::denominator(scaled) != 1)
				rep.integral = false;
			images[n].push_back(boost::multiprecision::numerator(scaled));
		}
	}
	rep.phi_invertible = determinant(vander) != 0;
	for (const auto& row : images)
	{
		Integer g = 0;
		for (const auto& x : row)
			g = boost::multiprecision::gcd(g, x);
		rep.gcds.push_back(g);
		if (g != 1)
			rep.pass = false;
	}
	rep.pass = rep.pass && rep.integral && rep.phi_invertible;
	return rep;
}

/// (a, b_1, ..., b_N) in Q(1) x| prod Q(n).
struct SemidirectLieElt
{
	Rational a = 0;
	std::vector<Rational> b;

	int level() const { return static_cast<int>(b.size()); }
	bool operator==(const SemidirectLieElt&) const = default;

	static SemidirectLieElt e0(int N) { return {1, std::vector<Rational>(static_cast<std::size_t>(N), Rational(0))}; }
	static SemidirectLieElt e1(int N)
	{
		SemidirectLieElt x{0, std::vector<Rational>(static_cast<std::size_t>(N), Rational(0))};
		if (N >= 1)
			x.b[0] = 1;
		return x;
	}
	/// nu_m = (ad e0)^{m-1} e1
	static SemidirectLieElt nu(int N, int m)
	{
		SemidirectLieElt x{0, std::vector<Rational>(static_cast<std::size_t>(N), Rational(0))};
		if (m < 1 || m > N)
			throw std::out_of_range("nu index out of range");
		x.b[static_cast<std::size_t>(m - 1)] = 1;
		return x;
	}

	friend SemidirectLieElt operator+(SemidirectLieElt x, const SemidirectLieElt& y)
	{
		if (x.level() != y.level())
			throw std::invalid_argument("Lie algebra: level mismatch");
		x.a += y.a;
		for (std::size_t i = 0; i < x.b.size(); ++i)
			x.b[i] += y.b[i];
		return x;
	}
	friend SemidirectLieElt operator*(const Rational& s, SemidirectLieElt x)
	{
		x.a *= s;
		for (auto& v : x.b)
			v *= s;
		return x;
	}
};

/// a * (b_1, ..., b_N) = (0, a b_1, ..., a b_{N-1})
inline std::vector<Rational> shift_action(const Rational& a, const std::vector<Rational>& b)
{
	std::vector<Rational> out(b.size(), Rational(0));
	for (std::size_t i = 1; i < b.size(); ++i)
		out[i] = a * b[i - 1];
	return out;
}

/// [(a,b), (a',b')] = (0, a*b' - a'*b); the prod Q(n) factor is abelian.
inline SemidirectLieElt bracket(const SemidirectLieElt& x, const SemidirectLieElt& y)
{
	if (x.level() != y.level())
		throw std::invalid_argument("bracket: level mismatch");
	auto l = shift_action(x.a, y.b), r = shift_action(y.a, x.b);
	SemidirectLieElt out{0, l};
	for (std::size_t i = 0; i < l.size(); ++i)
		out.b[i] -= r[i];
	return out;
}

/// (a, b) -> a N0 + sum_m b_m (Ad N0)^{m-1} N1, a Lie algebra map into
/// (n+1) x (n+1) matrices.
inline Matrix<Rational> rep_hom(int n, const SemidirectLieElt& x)
{
	if (x.level() != n)
		throw std::invalid_argument("rep_hom: element level " + std::to_string(x.level()) + " differs from n = " +
		                            std::to_string(n));
	auto g = build_generators(n);
	auto tower = ad_tower(n);
	Matrix<Rational> m = g.N0.matrix * x.a;
	for (int k = 1; k <= n; ++k)
		m += tower[static_cast<std::size_t>(k - 1)] * x.b[static_cast<std::size_t>(k - 1)];
	return m;
}

/// rep_hom([x,y]) = [rep_hom(x), rep_hom(y)] on all pairs of e0, nu_1..nu_n.
inline bool rep_hom_preserves_brackets(int n)
{
	std::vector<SemidirectLieElt> gens{SemidirectLieElt::e0(n)};
	for (int m = 1; m <= n; ++m)
		gens.push_back(SemidirectLieElt::nu(n, m));
	for (const auto& x : gens)
		for (const auto& y : gens)
			if (!(rep_hom(n, bracket(x, y)) == commutator(rep_hom(n, x), rep_hom(n, y))))
				return false;
	return true;
}

/// (u, (v_n)) with F = exp(sum_n v_n nu_n) exp(u e0), where e0 -> kappa N0
/// and e1 -> -kappa N1, hence nu_n -> -kappa^n (Ad N0)^{n-1} N1. With this
/// choice the period regularized at (0, tangent 1) has u = log x and
/// v_n = -l_n(x).
template <class T> struct UnipotentCoordinates
{
	T u{0};
	std::vector<T> v;
};

template <class T> UnipotentMatrix<T> unipotent_from_coordinates(int n, const UnipotentCoordinates<T>& c, const T& kappa)
{
	if (static_cast<int>(c.v.size()) != n)
		throw std::invalid_argument("unipotent_from_coordinates: expected " + std::to_string(n) + " v values");
	auto g = build_generators(n);
	auto tower = ad_tower(n);
	Matrix<T> lie(static_cast<std::size_t>(n + 1));
	T km(1);
	for (int m = 1; m <= n; ++m)
	{
		km *= kappa;
		lie += tower[static_cast<std::size_t>(m - 1)].template cast<T>() * T(-km * c.v[static_cast<std::size_t>(m - 1)]);
	}
	auto left = unipotent_exp(lie);
	auto right = unipotent_exp(Matrix<T>(g.N0.matrix.template cast<T>() * T(c.u * kappa)));
	return left * right;
}

template <class T>
UnipotentCoordinates<T> coordinates_from_unipotent(const UnipotentMatrix<T>& f, const T& kappa, double tol = 1e-10)
{
	const int n = f.level();
	if (is_zero(kappa, 0.0))
		throw std::invalid_argument("coordinates_from_unipotent: zero normalization");
	UnipotentCoordinates<T> c;
	c.u = n >= 2 ? T(f.a(1, 2) / kappa) : T(0);
	// the first n columns must be those of exp(u kappa N0)
	auto g = build_generators(n);
	auto e = unipotent_exp(Matrix<T>(g.N0.matrix.template cast<T>() * T(c.u * kappa)));
	const double scale = std::max(1.0, magnitude(T(c.u * kappa)));
	for (int k = 2; k <= n; ++k)
		for (int j = 1; j < k; ++j)
			if (!is_zero(T(f.a(j, k) - e.a(j, k)), tol * std::pow(scale, k - j)))
				throw std::domain_error("matrix is not in the image of the (u, v) parametrization: entry (" +
				                        std::to_string(j) + "," + std::to_string(k) + ")");
	T km(1);
	for (int m = 1; m <= n; ++m)
	{
		km *= kappa;
		c.v.push_back(T(f.a(n + 1 - m, n + 1) / km));
	}
	return c;
}

/// Group commutator g h g^{-1} h^{-1}.
template <class T> UnipotentMatrix<T> group_commutator(const UnipotentMatrix<T>& g, const UnipotentMatrix<T>& h)
{
	return g * h * g.inverse() * h.inverse();
}

/// Every left-normed commutator [[...[x_1, x_2], ...], x_{n+1}] with letters
/// from {exp(N0), exp(N1)} and their inverses is the identity, i.e. the
/// representation factors through Gamma / Z^{n+1} Gamma. Exact arithmetic.
inline bool nilpotent_quotient_check(int n)
{
	auto g = build_generators(n);
	auto m0 = unipotent_exp(g.N0.matrix), m1 = unipotent_exp(g.N1.matrix);
	std::vector<UnipotentMatrix<Rational>> letters{m0, m1, m0.inverse(), m1.inverse()};
	const std::size_t len = static_cast<std::size_t>(n) + 1;
	std::vector<std::size_t> idx(len, 0);
	const auto identity = UnipotentMatrix<Rational>::identity(n);
	while (true)
	{
		UnipotentMatrix<Rational> c = letters[idx[0]];
		for (std::size_t i = 1; i < len; ++i)
			c = group_commutator(c, letters[idx[i]]);
		if (!(c == identity))
			return false;
		std::size_t pos = 0;
		while (pos < len && ++idx[pos] == letters.size())
			idx[pos++] = 0;
		if (pos == len)
			return true;
	}
}

/// Some n-fold commutator is nontrivial, so Z^{n+1} is the exact kernel
/// depth: [exp(N1), exp(N0), ..., exp(N0)] with n-1 copies of exp(N0).
inline bool nilpotent_quotient_is_sharp(int n)
{
	auto g = build_generators(n);
	auto m0 = unipotent_exp(g.N0.matrix), m1 = unipotent_exp(g.N1.matrix);
	UnipotentMatrix<Rational> c = m1;
	for (int i = 1; i < n; ++i)
		c = group_commutator(c, m0);
	return !(c == UnipotentMatrix<Rational>::identity(n));
}

} // namespace polyperiod
