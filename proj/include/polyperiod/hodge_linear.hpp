#pragma once

#include <cstddef>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyperiod/matrix.hpp"
#include "polyperiod/rational.hpp"

namespace polyperiod {

/// V = Q e_1 + ... + Q e_{n+1} with e_j of weight -2(n+1-j). Every graded
/// piece has rank one and carries the pairing <e, e> = 1; that is recorded,
/// never computed with.
struct GradedSpace
{
	int level = 1;

	explicit GradedSpace(int n) : level(n)
	{
		if (n < 1)
			throw std::invalid_argument("level must be >= 1");
	}

	int dimension() const { return level + 1; }
	int weight_of_basis(int j) const
	{
		if (j < 1 || j > level + 1)
			throw std::out_of_range("basis index out of range");
		return -2 * (level + 1 - j);
	}
	int graded_rank(int w) const { return (w <= 0 && w >= -2 * level && w % 2 == 0) ? 1 : 0; }
	bool pairing_is_unit(int w) const { return graded_rank(w) == 1; }
};

enum class GeneratorTag { N0, N1, Ninf };

inline const char* to_string(GeneratorTag t)
{
	switch (t)
	{
	case GeneratorTag::N0: return "N0";
	case GeneratorTag::N1: return "N1";
	default: return "Ninf";
	}
}

inline GeneratorTag parse_generator_tag(const std::string& s)
{
	if (s == "N0")
		return GeneratorTag::N0;
	if (s == "N1")
		return GeneratorTag::N1;
	if (s == "Ninf")
		return GeneratorTag::Ninf;
	throw std::invalid_argument("unknown generator tag: " + s);
}

struct NilpotentGenerator
{
	GeneratorTag tag;
	Matrix<Rational> matrix; // integer entries
};

struct Generators
{
	NilpotentGenerator N0, N1, Ninf;

	const NilpotentGenerator& operator[](GeneratorTag t) const
	{
		return t == GeneratorTag::N0 ? N0 : t == GeneratorTag::N1 ? N1 : Ninf;
	}
};

/// N0 e_j = e_{j-1} (2 <= j <= n), N1 e_{n+1} = -e_n, Ninf = -N0 + N1.
/// The matrices act on column vectors.
inline Generators build_generators(int n)
{
	if (n < 1)
		throw std::invalid_argument("build_generators: n must be >= 1");
	const auto d = static_cast<std::size_t>(n + 1);
	Matrix<Rational> n0(d), n1(d);
	for (int j = 2; j <= n; ++j)
		n0(static_cast<std::size_t>(j - 2), static_cast<std::size_t>(j - 1)) = 1;
	n1(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n)) = -1;
	return {{GeneratorTag::N0, n0}, {GeneratorTag::N1, n1}, {GeneratorTag::Ninf, -n0 + n1}};
}

/// exp(M) = sum_{k<=dim} M^k / k! for strictly upper triangular M.
template <class T> UnipotentMatrix<T> unipotent_exp(const Matrix<T>& m)
{
	if (!m.square() || m.rows() < 2)
		throw std::invalid_argument("unipotent_exp: need a square matrix of size >= 2");
	if (!m.is_strictly_upper(0.0))
		throw std::invalid_argument("unipotent_exp: matrix is not strictly upper triangular");
	Matrix<T> sum = Matrix<T>::identity(m.rows()), term = sum;
	for (std::size_t k = 1; k < m.rows(); ++k)
	{
		term = term * m;
		term *= T(1) / T(static_cast<long>(k));
		sum += term;
	}
	return UnipotentMatrix<T>::from_matrix(sum);
}

/// (alpha, beta, lambda_2, ..., lambda_n).
template <class T> struct FiltrationParams
{
	T alpha{0};
	T beta{0};
	std::vector<T> lambda; // lambda[0] is lambda_2

	int level() const { return static_cast<int>(lambda.size()) + 1; }
};

/// Columns 2..n are those of exp(alpha N0); the last column is
/// (lambda_n, ..., lambda_2, beta, 1) read top-down.
template <class T> UnipotentMatrix<T> filtration_matrix(int n, const FiltrationParams<T>& p)
{
	if (n < 1)
		throw std::invalid_argument("filtration_matrix: n must be >= 1");
	if (static_cast<int>(p.lambda.size()) != n - 1)
		throw std::invalid_argument("filtration_matrix: expected " + std::to_string(n - 1) + " lambda values, got " +
		                            std::to_string(p.lambda.size()));
	UnipotentMatrix<T> f(n);
	for (int k = 2; k <= n; ++k)
	{
		T pw(1);
		T fact(1);
		for (int j = k - 1; j >= 1; --j)
		{
			const int e = k - j;
			pw *= p.alpha;
			fact *= T(static_cast<long>(e));
			f.a(j, k) = pw / fact;
		}
	}
	f.a(n, n + 1) = p.beta;
	for (int k = 2; k <= n; ++k)
		f.a(n + 1 - k, n + 1) = p.lambda[static_cast<std::size_t>(k - 2)];
	return f;
}

/// Parameters read back from a flag matrix, without checking that the first
/// n columns really come from exp(alpha N0).
template <class T> FiltrationParams<T> filtration_params(const UnipotentMatrix<T>& f)
{
	const int n = f.level();
	FiltrationParams<T> p;
	p.alpha = n >= 2 ? f.a(1, 2) : T(0);
	p.beta = f.a(n, n + 1);
	for (int k = 2; k <= n; ++k)
		p.lambda.push_back(f.a(n + 1 - k, n + 1));
	return p;
}

/// N F^p in F^{p-1} for all p, where F^{-k} is spanned by the last k+1 columns.
/// Since the columns of F form a basis, N col_c lies in span(col_{c-1}, ...)
/// exactly when column c of F^{-1} N F vanishes above the superdiagonal.
template <class T> double griffiths_residual(const Matrix<Rational>& n_mat, const UnipotentMatrix<T>& f)
{
	const Matrix<T> fm = f.to_matrix();
	const Matrix<T> conj = f.inverse().to_matrix() * n_mat.template cast<T>() * fm;
	double worst = 0.0;
	for (std::size_t c = 2; c < conj.cols(); ++c)
		for (std::size_t i = 0; i + 1 < c; ++i)
			worst = std::max(worst, magnitude(conj(i, c)));
	return worst;
}

template <class T> bool griffiths_check(const Matrix<Rational>& n_mat, const UnipotentMatrix<T>& f, double tol = 1e-10)
{
	if (n_mat.rows() != static_cast<std::size_t>(f.dim()) || !n_mat.square())
		throw std::invalid_argument("griffiths_check: size mismatch");
	if constexpr (ExactScalar<T>)
	{
		const Matrix<T> conj = f.inverse().to_matrix() * n_mat.template cast<T>() * f.to_matrix();
		for (std::size_t c = 2; c < conj.cols(); ++c)
			for (std::size_t i = 0; i + 1 < c; ++i)
				if (conj(i, c) != 0)
					return false;
		return true;
	}
	else
		return griffiths_residual(n_mat, f) <= tol * std::max(1.0, max_abs(f.to_matrix()));
}

template <class T> bool griffiths_check(const NilpotentGenerator& g, const UnipotentMatrix<T>& f, double tol = 1e-10)
{
	return griffiths_check(g.matrix, f, tol);
}

/// The closed-form condition sets characterizing transversality for each
/// generator, evaluated entrywise.
template <class T> bool transversality_conditions(GeneratorTag tag, const UnipotentMatrix<T>& a, double tol = 1e-10)
{
	const int n = a.level();
	auto eq = [tol](const T& x, const T& y) { return is_zero(T(x - y), tol); };
	auto toeplitz = [&](int last) {
		for (int l = 3; l <= last; ++l)
			for (int k = 2; k < l; ++k)
				if (!eq(a.a(1, k), a.a(l - k + 1, l)))
					return false;
		return true;
	};
	switch (tag)
	{
	case GeneratorTag::N0:
		for (int k = 2; k <= n; ++k)
			if (!is_zero(a.a(k, n + 1), tol))
				return false;
		return toeplitz(n);
	case GeneratorTag::N1:
		for (int k = 1; k <= n - 1; ++k)
			if (!is_zero(a.a(k, n), tol))
				return false;
		return true;
	default:
		return toeplitz(n + 1);
	}
}

template <class T> Matrix<T> ad(const Matrix<T>& x, const Matrix<T>& y) { return commutator(x, y); }

/// (Ad N0)^{k-1} N1 for k = 1..n. Each sends e_{n+1} to -e_{n+1-k} and kills
/// e_1..e_n.
inline std::vector<Matrix<Rational>> ad_tower(int n)
{
	auto g = build_generators(n);
	std::vector<Matrix<Rational>> out;
	Matrix<Rational> cur = g.N1.matrix;
	for (int k = 1; k <= n; ++k)
	{
		out.push_back(cur);
		cur = ad(g.N0.matrix, cur);
	}
	return out;
}

/// Pairwise commutativity of the tower and (Ad N0)^n N1 = 0.
inline bool ad_tower_relations(int n)
{
	auto g = build_generators(n);
	auto tower = ad_tower(n);
	for (std::size_t i = 0; i < tower.size(); ++i)
		for (std::size_t j = i + 1; j < tower.size(); ++j)
			if (!commutator(tower[i], tower[j]).is_zero_matrix())
				return false;
	return ad(g.N0.matrix, tower.back()).is_zero_matrix();
}

/// N0^{n-1} != 0 (n >= 2) and N0^n = 0.
inline bool n0_nilpotency_degree(int n)
{
	auto g = build_generators(n);
	if (!power(g.N0.matrix, static_cast<unsigned>(n)).is_zero_matrix())
		return false;
	return n < 2 || !power(g.N0.matrix, static_cast<unsigned>(n - 1)).is_zero_matrix();
}

/// (-N0 + N1)^j = (-N0)^j + (-Ad N0)^{j-1} N1 for 1 <= j <= n+1, exactly.
inline bool power_identity_check(int n)
{
	auto g = build_generators(n);
	const Matrix<Rational> m0 = -g.N0.matrix;
	Matrix<Rational> lhs = Matrix<Rational>::identity(static_cast<std::size_t>(n + 1));
	Matrix<Rational> neg_pow = lhs;
	Matrix<Rational> tower = g.N1.matrix; // (-Ad N0)^{j-1} N1
	for (int j = 1; j <= n + 1; ++j)
	{
		lhs = lhs * g.Ninf.matrix;
		neg_pow = neg_pow * m0;
		if (!(lhs == neg_pow + tower))
			return false;
		tower = ad(m0, tower);
	}
	return true;
}

/// Random rational unipotent matrix for the equivalence suite. A constrained
/// sample satisfies the condition set of `tag` by construction; otherwise one
/// entry of a constrained sample is shifted by a nonzero amount.
template <class Rng> UnipotentMatrix<Rational> random_transversality_sample(GeneratorTag tag, int n, Rng& rng, bool constrained)
{
	std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
	auto draw = [&] { return Rational(num(rng), den(rng)); };
	UnipotentMatrix<Rational> a(n);
	for (auto& x : a.entries())
		x = draw();
	// Toeplitz band: a(i,l) = a(1, l-i+1) for i >= 2, l <= last
	std::vector<std::pair<int, int>> pinned;
	auto band = [&](int last) {
		for (int l = 3; l <= last; ++l)
			for (int i = 2; i < l; ++i)
			{
				a.a(i, l) = a.a(1, l - i + 1);
				pinned.emplace_back(i, l);
			}
	};
	switch (tag)
	{
	case GeneratorTag::N0:
		band(n);
		for (int k = 2; k <= n; ++k)
		{
			a.a(k, n + 1) = 0;
			pinned.emplace_back(k, n + 1);
		}
		break;
	case GeneratorTag::N1:
		for (int k = 1; k <= n - 1; ++k)
		{
			a.a(k, n) = 0;
			pinned.emplace_back(k, n);
		}
		break;
	case GeneratorTag::Ninf: band(n + 1); break;
	}
	if (!constrained)
	{
		Rational shift = draw();
		while (shift == 0)
			shift = draw();
		if (pinned.empty())
		{
			std::uniform_int_distribution<std::size_t> pick(0, a.entries().size() - 1);
			a.entries()[pick(rng)] += shift;
		}
		else
		{
			std::uniform_int_distribution<std::size_t> pick(0, pinned.size() - 1);
			auto [i, l] = pinned[pick(rng)];
			a.a(i, l) += shift;
		}
	}
	return a;
}

} // namespace polyperiod
