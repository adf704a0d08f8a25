#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyperiod/rational.hpp"

namespace polyperiod {

/// Coordinate chart on P^1 minus {0,1,inf}: the affine coordinate x, or
/// xi = 1/x around infinity. Paths are always written in the active chart.
enum class Chart { x, xi };

inline const char* to_string(Chart c) { return c == Chart::x ? "x" : "xi"; }

/// A base point sitting at a puncture of the active chart (0 or 1), given by
/// a nonzero tangent vector written in that chart's coordinate. The point at
/// infinity is reached as puncture 0 of the xi chart.
struct TangentialAnchor
{
	int puncture = 0;
	Complex tangent{1.0, 0.0};

	void validate() const
	{
		if (puncture != 0 && puncture != 1)
			throw std::invalid_argument("tangential anchor must sit at puncture 0 or 1");
		if (tangent == Complex(0.0, 0.0))
			throw std::invalid_argument("tangential anchor needs a nonzero tangent");
	}

	Complex point() const { return Complex(puncture, 0.0); }

	/// Point at parameter eps along the tangent ray.
	Complex along(double eps) const { return point() + eps * tangent; }
};

/// A straight segment or a circular arc, parametrized by s in [0,1].
struct Segment
{
	enum class Kind { line, arc };

	Kind kind = Kind::line;
	Complex from, to;
	Complex center;      // arcs only
	int orientation = 1; // +1 anticlockwise, -1 clockwise (arcs only)
	int extra_turns = 0; // full turns added to an arc's sweep

	static Segment line(Complex a, Complex b) { return {Kind::line, a, b, {}, 1, 0}; }

	/// Arc around `c` from `a` to `b`; a == b gives a full circle.
	static Segment arc(Complex c, Complex a, Complex b, int orientation = 1, int extra_turns = 0)
	{
		Segment s{Kind::arc, a, b, c, orientation >= 0 ? 1 : -1, extra_turns};
		s.validate();
		return s;
	}

	/// Full circle of radius r around c, starting and ending at c + r*dir.
	static Segment loop(Complex c, double r, int orientation = 1, Complex dir = {1.0, 0.0})
	{
		Complex p = c + r * dir / std::abs(dir);
		return arc(c, p, p, orientation);
	}

	void validate() const
	{
		if (extra_turns < 0)
			throw std::invalid_argument("arc extra_turns must be nonnegative");
		if (kind == Kind::arc)
		{
			double r0 = std::abs(from - center), r1 = std::abs(to - center);
			if (r0 == 0.0)
				throw std::invalid_argument("arc of zero radius");
			if (std::abs(r0 - r1) > 1e-9 * std::max(1.0, r0))
				throw std::invalid_argument("arc endpoints are not equidistant from the center");
		}
	}

	double radius() const { return std::abs(from - center); }
	double start_angle() const { return std::arg(from - center); }

	/// Signed swept angle, nonzero for arcs.
	double sweep() const
	{
		double d = std::arg(to - center) - start_angle();
		constexpr double two_pi = 2.0 * kPi;
		if (orientation > 0)
		{
			while (d <= 1e-12)
				d += two_pi;
			while (d > two_pi + 1e-12)
				d -= two_pi;
		}
		else
		{
			while (d >= -1e-12)
				d -= two_pi;
			while (d < -two_pi - 1e-12)
				d += two_pi;
		}
		return d + orientation * two_pi * extra_turns;
	}

	Complex point(double s) const
	{
		if (kind == Kind::line)
			return from + s * (to - from);
		if (s >= 1.0)
			return to;
		return center + std::polar(radius(), start_angle() + s * sweep());
	}

	/// d point / ds
	Complex derivative(double s) const
	{
		if (kind == Kind::line)
			return to - from;
		double th = start_angle() + s * sweep();
		return Complex(0.0, sweep()) * std::polar(radius(), th);
	}

	double length() const { return kind == Kind::line ? std::abs(to - from) : radius() * std::abs(sweep()); }

	/// The piece traced for s in [s0, s1], with the sweep of arcs preserved.
	Segment sub(double s0, double s1) const
	{
		Complex a = point(s0), b = point(s1);
		double want = std::abs((s1 - s0) * sweep());
		if (kind == Kind::line || want < 1e-14)
			return line(a, b);
		Segment t = arc(center, a, b, orientation);
		double base = std::abs(t.sweep());
		t.extra_turns = std::max(0, static_cast<int>(std::lround((want - base) / (2.0 * kPi))));
		return t;
	}

	/// Euclidean distance from p to the traced curve.
	double distance_to(Complex p) const
	{
		if (kind == Kind::line)
		{
			Complex d = to - from;
			double len2 = std::norm(d);
			if (len2 == 0.0)
				return std::abs(p - from);
			double t = std::clamp(((p - from) * std::conj(d)).real() / len2, 0.0, 1.0);
			return std::abs(p - (from + t * d));
		}
		double sw = sweep();
		double best = std::min(std::abs(p - from), std::abs(p - to));
		if (p == center)
			return radius();
		if (std::abs(sw) >= 2.0 * kPi - 1e-12)
			return std::abs(std::abs(p - center) - radius());
		// angle of p measured along the sweep direction from the start
		double rel = std::arg(p - center) - start_angle();
		rel = orientation > 0 ? std::fmod(rel + 4.0 * kPi, 2.0 * kPi) : std::fmod(-rel + 4.0 * kPi, 2.0 * kPi);
		if (rel <= std::abs(sw))
			best = std::min(best, std::abs(std::abs(p - center) - radius()));
		return best;
	}
};

/// Net signed crossings of a branch cut along a sampled curve. The cut is
/// the ray {Im z = 0, Re z < 0} (log at 0) or {Im z = 0, Re z > 1} (log at 1).
/// Points with Im z = 0 count as lying above the cut; a crossing counts +1
/// when it turns anticlockwise around the puncture.
struct CutCrossings
{
	int around0 = 0;
	int around1 = 0;
};

inline CutCrossings count_cut_crossings(const Segment& seg, int samples = 2048)
{
	CutCrossings c;
	Complex prev = seg.point(0.0);
	for (int i = 1; i <= samples; ++i)
	{
		Complex cur = seg.point(static_cast<double>(i) / samples);
		bool above_prev = prev.imag() >= 0.0, above_cur = cur.imag() >= 0.0;
		if (above_prev != above_cur)
		{
			double t = prev.imag() / (prev.imag() - cur.imag());
			double re = prev.real() + t * (cur.real() - prev.real());
			// above -> below on the negative axis is anticlockwise around 0;
			// below -> above right of 1 is anticlockwise around 1
			if (re < 0.0)
				c.around0 += above_prev ? 1 : -1;
			else if (re > 1.0)
				c.around1 += above_prev ? -1 : 1;
		}
		prev = cur;
	}
	return c;
}

/// Piecewise path in the active chart, optionally anchored at tangential base
/// points. Consecutive segments share endpoints.
struct PathSpec
{
	std::vector<Segment> segments;
	std::optional<TangentialAnchor> start_anchor;
	std::optional<TangentialAnchor> end_anchor;

	static PathSpec line(Complex a, Complex b)
	{
		PathSpec p;
		p.segments.push_back(Segment::line(a, b));
		return p;
	}

	static PathSpec constant(Complex a) { return line(a, a); }

	bool empty() const { return segments.empty(); }
	Complex start() const { return segments.front().from; }
	Complex end() const { return segments.back().to; }

	PathSpec& line_to(Complex b)
	{
		segments.push_back(Segment::line(end(), b));
		return *this;
	}

	PathSpec& arc_to(Complex center, Complex b, int orientation = 1)
	{
		segments.push_back(Segment::arc(center, end(), b, orientation));
		return *this;
	}

	PathSpec& loop_around(Complex center, int orientation = 1)
	{
		segments.push_back(Segment::arc(center, end(), end(), orientation));
		return *this;
	}

	PathSpec& append(const PathSpec& other)
	{
		for (const auto& s : other.segments)
			segments.push_back(s);
		validate();
		return *this;
	}

	/// Reversed traversal.
	PathSpec reversed() const
	{
		PathSpec r;
		for (auto it = segments.rbegin(); it != segments.rend(); ++it)
		{
			Segment s = *it;
			std::swap(s.from, s.to);
			s.orientation = -s.orientation;
			r.segments.push_back(s);
		}
		r.start_anchor = end_anchor;
		r.end_anchor = start_anchor;
		return r;
	}

	double length() const
	{
		double l = 0.0;
		for (const auto& s : segments)
			l += s.length();
		return l;
	}

	void validate() const
	{
		if (segments.empty())
			throw std::invalid_argument("path has no segments");
		for (std::size_t i = 0; i < segments.size(); ++i)
		{
			segments[i].validate();
			if (i > 0)
			{
				Complex a = segments[i - 1].to, b = segments[i].from;
				if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
					throw std::invalid_argument("path segments " + std::to_string(i - 1) + " and " +
					                            std::to_string(i) + " do not share an endpoint");
			}
		}
		if (start_anchor)
		{
			start_anchor->validate();
			if (std::abs(start() - start_anchor->point()) > 1e-12)
				throw std::invalid_argument("path does not start at its tangential anchor");
		}
		if (end_anchor)
		{
			end_anchor->validate();
			if (std::abs(end() - end_anchor->point()) > 1e-12)
				throw std::invalid_argument("path does not end at its tangential anchor");
		}
	}

	/// Splits at the given fraction of total arc length. Anchors stay with the
	/// end they belong to.
	std::pair<PathSpec, PathSpec> split(double fraction) const
	{
		double target = std::clamp(fraction, 0.0, 1.0) * length(), acc = 0.0;
		PathSpec head, tail;
		head.start_anchor = start_anchor;
		tail.end_anchor = end_anchor;
		std::size_t i = 0;
		for (; i < segments.size(); ++i)
		{
			double l = segments[i].length();
			if (acc + l >= target && l > 0.0)
			{
				double s = (target - acc) / l;
				head.segments.push_back(segments[i].sub(0.0, s));
				tail.segments.push_back(segments[i].sub(s, 1.0));
				break;
			}
			head.segments.push_back(segments[i]);
			acc += l;
		}
		for (++i; i < segments.size(); ++i)
			tail.segments.push_back(segments[i]);
		return {head, tail};
	}

	CutCrossings cut_crossings() const
	{
		CutCrossings total;
		for (const auto& s : segments)
		{
			auto c = count_cut_crossings(s);
			total.around0 += c.around0;
			total.around1 += c.around1;
		}
		return total;
	}
};

} // namespace polyperiod
