#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyperiod/boundary.hpp"
#include "polyperiod/hodge_linear.hpp"
#include "polyperiod/matrix.hpp"
#include "polyperiod/path.hpp"
#include "polyperiod/rational.hpp"
#include "polyperiod/tate_lie.hpp"
#include "polyperiod/transport.hpp"

namespace polyperiod {

using json = nlohmann::json;

/// Rounds to 15 significant digits so that dumped records are stable across
/// platforms whose last-bit rounding differs.
inline double round15(double x)
{
	if (!std::isfinite(x) || x == 0.0)
		return x == 0.0 ? 0.0 : x;
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.15g", x);
	return std::strtod(buf, nullptr);
}

inline json to_json(double x) { return round15(x); }
inline json to_json(const Complex& z) { return json::array({round15(z.real()), round15(z.imag())}); }
inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(const Integer& k)
{
	if (k >= std::numeric_limits<std::int64_t>::min() && k <= std::numeric_limits<std::int64_t>::max())
		return k.convert_to<std::int64_t>();
	return k.str();
}

template <class T> json to_json(const std::vector<T>& v)
{
	json a = json::array();
	for (const auto& x : v)
		a.push_back(to_json(x));
	return a;
}

template <class T> json to_json(const Matrix<T>& m)
{
	json rows = json::array();
	for (std::size_t i = 0; i < m.rows(); ++i)
	{
		json r = json::array();
		for (std::size_t j = 0; j < m.cols(); ++j)
			r.push_back(to_json(m(i, j)));
		rows.push_back(r);
	}
	return rows;
}

template <class T> json to_json(const UnipotentMatrix<T>& m) { return to_json(m.to_matrix()); }

/// Complex from [re, im], a plain number, or a string "a+bi" / "re,im".
inline Complex parse_complex(const std::string& text);

inline Complex complex_from_json(const json& j)
{
	if (j.is_number())
		return {j.get<double>(), 0.0};
	if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
		return {j[0].get<double>(), j[1].get<double>()};
	if (j.is_string())
		return parse_complex(j.get<std::string>());
	throw std::invalid_argument("expected a complex number as [re, im] or a number, got " + j.dump());
}

inline double parse_double_strict(const std::string& s)
{
	if (s.empty())
		throw std::invalid_argument("empty number");
	char* end = nullptr;
	double v = std::strtod(s.c_str(), &end);
	if (end != s.c_str() + s.size())
		throw std::invalid_argument("malformed number: " + s);
	return v;
}

inline Complex parse_complex(const std::string& text)
{
	std::string s;
	for (char ch : text)
		if (!std::isspace(static_cast<unsigned char>(ch)))
			s += ch;
	if (s.empty())
		throw std::invalid_argument("empty complex number");
	if (auto comma = s.find(','); comma != std::string::npos)
		return {parse_double_strict(s.substr(0, comma)), parse_double_strict(s.substr(comma + 1))};
	if (s.back() != 'i' && s.back() != 'j')
		return {parse_double_strict(s), 0.0};
	s.pop_back();
	// split at the last sign that is not part of an exponent
	std::size_t split = std::string::npos;
	for (std::size_t i = s.size(); i-- > 1;)
		if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
		{
			split = i;
			break;
		}
	auto imag_part = [](const std::string& t) {
		if (t.empty() || t == "+")
			return 1.0;
		if (t == "-")
			return -1.0;
		return parse_double_strict(t);
	};
	if (split == std::string::npos)
		return {0.0, imag_part(s)};
	return {parse_double_strict(s.substr(0, split)), imag_part(s.substr(split))};
}

inline json to_json(const TangentialAnchor& a) { return {{"puncture", a.puncture}, {"tangent", to_json(a.tangent)}}; }

inline TangentialAnchor anchor_from_json(const json& j)
{
	if (!j.is_object() || !j.contains("puncture"))
		throw std::invalid_argument("anchor needs a puncture field");
	TangentialAnchor a;
	a.puncture = j.at("puncture").get<int>();
	a.tangent = j.contains("tangent") ? complex_from_json(j.at("tangent")) : Complex(1.0, 0.0);
	a.validate();
	return a;
}

inline json to_json(const Segment& s)
{
	json j = {{"type", s.kind == Segment::Kind::line ? "line" : "arc"}, {"from", to_json(s.from)}, {"to", to_json(s.to)}};
	if (s.kind == Segment::Kind::arc)
	{
		j["center"] = to_json(s.center);
		j["orientation"] = s.orientation > 0 ? "ccw" : "cw";
		if (s.extra_turns)
			j["turns"] = s.extra_turns;
	}
	return j;
}

inline Segment segment_from_json(const json& j)
{
	if (!j.is_object())
		throw std::invalid_argument("path segment must be an object");
	std::string type = j.value("type", "line");
	Complex from = complex_from_json(j.at("from")), to = complex_from_json(j.at("to"));
	if (type == "line")
		return Segment::line(from, to);
	if (type != "arc")
		throw std::invalid_argument("unknown segment type: " + type);
	if (!j.contains("center"))
		throw std::invalid_argument("arc segment needs a center");
	int orientation = 1;
	if (j.contains("orientation"))
	{
		const auto& o = j.at("orientation");
		if (o.is_string())
		{
			auto s = o.get<std::string>();
			if (s == "ccw" || s == "anticlockwise")
				orientation = 1;
			else if (s == "cw" || s == "clockwise")
				orientation = -1;
			else
				throw std::invalid_argument("unknown arc orientation: " + s);
		}
		else
			orientation = o.get<int>() >= 0 ? 1 : -1;
	}
	return Segment::arc(complex_from_json(j.at("center")), from, to, orientation, j.value("turns", 0));
}

/// Path file: either a bare list of segments or
/// {"chart": "x"|"xi", "segments": [...], "start": anchor, "end": anchor}.
struct PathDocument
{
	Chart chart = Chart::x;
	PathSpec path;
};

inline PathDocument path_from_json(const json& j)
{
	PathDocument doc;
	const json* segs = &j;
	if (j.is_object())
	{
		if (!j.contains("segments"))
			throw std::invalid_argument("path document needs a segments list");
		segs = &j.at("segments");
		std::string chart = j.value("chart", "x");
		if (chart == "xi")
			doc.chart = Chart::xi;
		else if (chart != "x")
			throw std::invalid_argument("unknown chart: " + chart);
		if (j.contains("start"))
			doc.path.start_anchor = anchor_from_json(j.at("start"));
		if (j.contains("end"))
			doc.path.end_anchor = anchor_from_json(j.at("end"));
	}
	if (!segs->is_array())
		throw std::invalid_argument("path segments must be a list");
	for (const auto& s : *segs)
		doc.path.segments.push_back(segment_from_json(s));
	doc.path.validate();
	return doc;
}

inline json to_json(const PathSpec& p, Chart chart = Chart::x)
{
	json j = {{"chart", to_string(chart)}, {"segments", json::array()}};
	for (const auto& s : p.segments)
		j["segments"].push_back(to_json(s));
	if (p.start_anchor)
		j["start"] = to_json(*p.start_anchor);
	if (p.end_anchor)
		j["end"] = to_json(*p.end_anchor);
	return j;
}

inline json to_json(const TruncatedGroupRingElt& t) { return {{"level", t.level}, {"residue", to_json(t.residue)}}; }
inline json to_json(const GradedTateVector& w) { return {{"level", w.level}, {"coords", to_json(w.coords)}}; }
inline json to_json(const SemidirectLieElt& x)
{
	return {{"level", x.level()}, {"a", to_json(x.a)}, {"b", to_json(x.b)}};
}

inline json to_json(const LaurentPolyInt& p)
{
	json j = json::object();
	for (const auto& [k, c] : p.coefficients())
		j[std::to_string(k)] = to_json(c);
	return j;
}

inline SemidirectLieElt lie_from_json(const json& j)
{
	SemidirectLieElt x;
	x.a = parse_rational(j.at("a").is_string() ? j.at("a").get<std::string>() : j.at("a").dump());
	for (const auto& b : j.at("b"))
		x.b.push_back(parse_rational(b.is_string() ? b.get<std::string>() : b.dump()));
	return x;
}

inline json to_json(const ChartPoint<Complex>& p)
{
	return {{"chart", to_string(p.chart.tag)},
	        {"level", p.chart.level},
	        {"coords", to_json(p.coords)},
	        {"membership", chart_membership(p)},
	        {"constraint", p.chart.constraint()}};
}

inline json to_json(const FiltrationParams<Complex>& p)
{
	return {{"alpha", to_json(p.alpha)}, {"beta", to_json(p.beta)}, {"lambda", to_json(p.lambda)}};
}

inline json to_json(const NilpotentOrbitClass& o)
{
	return {{"chart", to_string(o.tag)},
	        {"cone", cone_name(o.cone_tag)},
	        {"cone_generator", to_string(o.cone_tag)},
	        {"limit_params", to_json(o.limit_params)},
	        {"limit", to_json(o.limit)},
	        {"residuals", to_json(o.residuals)},
	        {"est_error", round15(o.est_error)}};
}

/// Flattens a record into "key,value" CSV lines, keys joined with '.' and
/// array positions written as indices.
inline void flatten_csv(const json& j, const std::string& prefix, std::ostream& out)
{
	if (j.is_object())
	{
		for (auto it = j.begin(); it != j.end(); ++it)
			flatten_csv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
		return;
	}
	if (j.is_array())
	{
		for (std::size_t i = 0; i < j.size(); ++i)
			flatten_csv(j[i], prefix + "[" + std::to_string(i) + "]", out);
		return;
	}
	std::string v = j.is_string() ? j.get<std::string>() : j.dump();
	if (v.find_first_of(",\"\n") != std::string::npos)
	{
		std::string q = "\"";
		for (char ch : v)
			q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
		v = q + "\"";
	}
	out << prefix << "," << v << "\n";
}

inline std::string to_csv(const json& j)
{
	std::ostringstream out;
	out << "key,value\n";
	flatten_csv(j, "", out);
	return out.str();
}

} // namespace polyperiod
