#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polyperiod/rational.hpp"

namespace polyperiod {

/// Dense row-major matrix, 0-based indexing.
template <class T> class Matrix
{
  public:
	Matrix() = default;
	Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
	explicit Matrix(std::size_t dim) : Matrix(dim, dim) {}

	static Matrix identity(std::size_t dim)
	{
		Matrix m(dim);
		for (std::size_t i = 0; i < dim; ++i)
			m(i, i) = T(1);
		return m;
	}

	std::size_t rows() const { return rows_; }
	std::size_t cols() const { return cols_; }
	bool square() const { return rows_ == cols_; }

	T& operator()(std::size_t r, std::size_t c)
	{
		assert(r < rows_ && c < cols_);
		return data_[r * cols_ + c];
	}
	const T& operator()(std::size_t r, std::size_t c) const
	{
		assert(r < rows_ && c < cols_);
		return data_[r * cols_ + c];
	}

	bool operator==(const Matrix&) const = default;

	Matrix& operator+=(const Matrix& o)
	{
		check_same_shape(o);
		for (std::size_t i = 0; i < data_.size(); ++i)
			data_[i] += o.data_[i];
		return *this;
	}
	Matrix& operator-=(const Matrix& o)
	{
		check_same_shape(o);
		for (std::size_t i = 0; i < data_.size(); ++i)
			data_[i] -= o.data_[i];
		return *this;
	}
	Matrix& operator*=(const T& s)
	{
		for (auto& x : data_)
			x *= s;
		return *this;
	}

	friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
	friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
	friend Matrix operator-(Matrix a)
	{
		for (auto& x : a.data_)
			x = -x;
		return a;
	}
	friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
	friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

	friend Matrix operator*(const Matrix& a, const Matrix& b)
	{
		if (a.cols_ != b.rows_)
			throw std::invalid_argument("matrix product: shape mismatch");
		Matrix c(a.rows_, b.cols_);
		for (std::size_t i = 0; i < a.rows_; ++i)
			for (std::size_t k = 0; k < a.cols_; ++k)
			{
				const T& aik = a(i, k);
				if (is_zero(aik, 0.0))
					continue;
				for (std::size_t j = 0; j < b.cols_; ++j)
					c(i, j) += aik * b(k, j);
			}
		return c;
	}

	bool is_zero_matrix(double tol = 0.0) const
	{
		return std::all_of(data_.begin(), data_.end(), [tol](const T& x) { return is_zero(x, tol); });
	}

	bool is_strictly_upper(double tol = 0.0) const
	{
		for (std::size_t i = 0; i < rows_; ++i)
			for (std::size_t j = 0; j <= std::min(i, cols_ - 1); ++j)
				if (!is_zero((*this)(i, j), tol))
					return false;
		return true;
	}

	template <class U> Matrix<U> cast() const
	{
		Matrix<U> out(rows_, cols_);
		for (std::size_t i = 0; i < rows_; ++i)
			for (std::size_t j = 0; j < cols_; ++j)
				out(i, j) = convert<U>((*this)(i, j));
		return out;
	}

	Matrix column(std::size_t c) const
	{
		Matrix v(rows_, 1);
		for (std::size_t i = 0; i < rows_; ++i)
			v(i, 0) = (*this)(i, c);
		return v;
	}

  private:
	template <class U> static U convert(const T& x)
	{
		if constexpr (std::is_same_v<U, Complex> && std::is_same_v<T, Rational>)
			return to_complex(x);
		else if constexpr (std::is_same_v<U, Complex>)
			return Complex(static_cast<double>(x), 0.0);
		else
			return U(x);
	}

	void check_same_shape(const Matrix& o) const
	{
		if (rows_ != o.rows_ || cols_ != o.cols_)
			throw std::invalid_argument("matrix shape mismatch");
	}

	std::size_t rows_ = 0, cols_ = 0;
	std::vector<T> data_;
};

template <class T> Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) { return a * b - b * a; }

template <class T> Matrix<T> power(const Matrix<T>& a, unsigned k)
{
	Matrix<T> r = Matrix<T>::identity(a.rows());
	for (unsigned i = 0; i < k; ++i)
		r = r * a;
	return r;
}

template <class T> double max_abs(const Matrix<T>& a)
{
	double m = 0.0;
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t j = 0; j < a.cols(); ++j)
			m = std::max(m, magnitude(a(i, j)));
	return m;
}

template <class T> double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) { return max_abs(a - b); }

/// Rank by Gaussian elimination. Exact for rationals; for complex input a
/// pivot counts only if it exceeds `tol` after scaling by the largest entry.
template <class T> std::size_t rank(Matrix<T> m, double tol = 1e-10)
{
	const double scale = std::max(1.0, max_abs(m));
	std::size_t r = 0;
	for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c)
	{
		std::size_t pivot = r;
		if constexpr (ExactScalar<T>)
		{
			while (pivot + 1 < m.rows() && is_zero(m(pivot, c)))
				++pivot;
		}
		else
		{
			for (std::size_t i = r + 1; i < m.rows(); ++i)
				if (magnitude(m(i, c)) > magnitude(m(pivot, c)))
					pivot = i;
		}
		if (is_zero(m(pivot, c), tol * scale))
			continue;
		if (pivot != r)
			for (std::size_t j = 0; j < m.cols(); ++j)
				std::swap(m(pivot, j), m(r, j));
		for (std::size_t i = r + 1; i < m.rows(); ++i)
		{
			if (is_zero(m(i, c), 0.0))
				continue;
			T f = m(i, c) / m(r, c);
			for (std::size_t j = c; j < m.cols(); ++j)
				m(i, j) -= f * m(r, j);
		}
		++r;
	}
	return r;
}

/// Exact determinant over a field (fraction-carrying elimination).
inline Rational determinant(Matrix<Rational> m)
{
	if (!m.square())
		throw std::invalid_argument("determinant of non-square matrix");
	Rational det = 1;
	const std::size_t n = m.rows();
	for (std::size_t c = 0; c < n; ++c)
	{
		std::size_t pivot = c;
		while (pivot < n && m(pivot, c) == 0)
			++pivot;
		if (pivot == n)
			return 0;
		if (pivot != c)
		{
			for (std::size_t j = 0; j < n; ++j)
				std::swap(m(pivot, j), m(c, j));
			det = -det;
		}
		det *= m(c, c);
		for (std::size_t i = c + 1; i < n; ++i)
		{
			if (m(i, c) == 0)
				continue;
			Rational f = m(i, c) / m(c, c);
			for (std::size_t j = c; j < n; ++j)
				m(i, j) -= f * m(c, j);
		}
	}
	return det;
}

/// Upper unitriangular matrix of size (n+1)x(n+1). Only the entries a(j,k),
/// 1 <= j < k <= n+1, are stored; the diagonal is 1 and everything below it
/// is 0 by construction. Indices follow the a_{j,k} convention (1-based).
template <class T> class UnipotentMatrix
{
  public:
	UnipotentMatrix() = default;
	explicit UnipotentMatrix(int level) : level_(level), entries_(count(level), T(0))
	{
		if (level < 1)
			throw std::invalid_argument("unipotent matrix level must be >= 1");
	}

	static UnipotentMatrix identity(int level) { return UnipotentMatrix(level); }

	/// Fails if `m` has a non-unit diagonal or a nonzero entry below it.
	static UnipotentMatrix from_matrix(const Matrix<T>& m, double tol = 0.0)
	{
		if (!m.square() || m.rows() < 2)
			throw std::invalid_argument("unipotent matrix needs a square matrix of size >= 2");
		UnipotentMatrix u(static_cast<int>(m.rows()) - 1);
		for (std::size_t i = 0; i < m.rows(); ++i)
			for (std::size_t j = 0; j < m.cols(); ++j)
			{
				if (i < j)
					u.a(static_cast<int>(i) + 1, static_cast<int>(j) + 1) = m(i, j);
				else if (i == j && !is_zero(m(i, j) - T(1), tol))
					throw std::invalid_argument("unipotent matrix: diagonal entry is not 1");
				else if (i > j && !is_zero(m(i, j), tol))
					throw std::invalid_argument("unipotent matrix: nonzero entry below the diagonal");
			}
		return u;
	}

	int level() const { return level_; }
	int dim() const { return level_ + 1; }

	T& a(int j, int k) { return entries_[index(j, k)]; }
	const T& a(int j, int k) const { return entries_[index(j, k)]; }

	/// Flat view of the stored a_{j,k}, ordered by column then row.
	std::vector<T>& entries() { return entries_; }
	const std::vector<T>& entries() const { return entries_; }

	Matrix<T> to_matrix() const
	{
		Matrix<T> m = Matrix<T>::identity(static_cast<std::size_t>(dim()));
		for (int k = 2; k <= dim(); ++k)
			for (int j = 1; j < k; ++j)
				m(j - 1, k - 1) = a(j, k);
		return m;
	}

	bool operator==(const UnipotentMatrix&) const = default;

	friend UnipotentMatrix operator*(const UnipotentMatrix& x, const UnipotentMatrix& y)
	{
		if (x.level_ != y.level_)
			throw std::invalid_argument("unipotent product: level mismatch");
		UnipotentMatrix r(x.level_);
		const int d = x.dim();
		for (int k = 2; k <= d; ++k)
			for (int j = 1; j < k; ++j)
			{
				T s = x.a(j, k) + y.a(j, k);
				for (int m = j + 1; m < k; ++m)
					s += x.a(j, m) * y.a(m, k);
				r.a(j, k) = s;
			}
		return r;
	}

	/// Exact inverse by back substitution.
	UnipotentMatrix inverse() const
	{
		UnipotentMatrix r(level_);
		const int d = dim();
		for (int k = 2; k <= d; ++k)
			for (int j = k - 1; j >= 1; --j)
			{
				T s = a(j, k);
				for (int m = j + 1; m < k; ++m)
					s += a(j, m) * r.a(m, k);
				r.a(j, k) = -s;
			}
		return r;
	}

	template <class U> UnipotentMatrix<U> cast() const
	{
		UnipotentMatrix<U> out(level_);
		for (std::size_t i = 0; i < entries_.size(); ++i)
		{
			if constexpr (std::is_same_v<U, Complex> && std::is_same_v<T, Rational>)
				out.entries()[i] = to_complex(entries_[i]);
			else
				out.entries()[i] = U(entries_[i]);
		}
		return out;
	}

	static std::size_t count(int level)
	{
		const auto d = static_cast<std::size_t>(level + 1);
		return d * (d - 1) / 2;
	}

  private:
	std::size_t index(int j, int k) const
	{
		if (j < 1 || k > dim() || j >= k)
			throw std::out_of_range("unipotent entry outside the strict upper triangle");
		// column k holds rows 1..k-1, preceded by columns 2..k-1
		return static_cast<std::size_t>((k - 1) * (k - 2) / 2 + (j - 1));
	}

	int level_ = 0;
	std::vector<T> entries_;
};

template <class T> double max_abs_diff(const UnipotentMatrix<T>& x, const UnipotentMatrix<T>& y)
{
	if (x.level() != y.level())
		throw std::invalid_argument("level mismatch");
	double m = 0.0;
	for (std::size_t i = 0; i < x.entries().size(); ++i)
		m = std::max(m, magnitude(x.entries()[i] - y.entries()[i]));
	return m;
}

} // namespace polyperiod
