#include <gtest/gtest.h>

#include "polyperiod/serialize.hpp"

using namespace polyperiod;

TEST(Round15, StableDigits)
{
	EXPECT_EQ(round15(0.1 + 0.2), 0.3);
	EXPECT_EQ(round15(-0.0), 0.0);
	EXPECT_FALSE(std::signbit(round15(-0.0)));
	EXPECT_EQ(round15(1.0 / 3.0), 0.333333333333333);
	EXPECT_TRUE(std::isinf(round15(HUGE_VAL)));
	EXPECT_EQ(to_json(Complex(1.0, -2.5)).dump(), "[1.0,-2.5]");
}

TEST(ParseComplex, Forms)
{
	EXPECT_EQ(parse_complex("0.5"), Complex(0.5, 0.0));
	EXPECT_EQ(parse_complex("0.25+0.1i"), Complex(0.25, 0.1));
	EXPECT_EQ(parse_complex("1e-3-2e+1i"), Complex(1e-3, -20.0));
	EXPECT_EQ(parse_complex("-i"), Complex(0.0, -1.0));
	EXPECT_EQ(parse_complex("2i"), Complex(0.0, 2.0));
	EXPECT_EQ(parse_complex("3-i"), Complex(3.0, -1.0));
	EXPECT_EQ(parse_complex(" 1 , -2 "), Complex(1.0, -2.0));
	EXPECT_EQ(parse_complex("-1.5e-2"), Complex(-0.015, 0.0));
	EXPECT_THROW(parse_complex(""), std::invalid_argument);
	EXPECT_THROW(parse_complex("abc"), std::invalid_argument);
	EXPECT_THROW(parse_complex("1+2"), std::invalid_argument);
	EXPECT_THROW(parse_complex("1,"), std::invalid_argument);
	EXPECT_EQ(complex_from_json(json::array({1.0, 2.0})), Complex(1.0, 2.0));
	EXPECT_EQ(complex_from_json(json(3)), Complex(3.0, 0.0));
	EXPECT_EQ(complex_from_json(json("1+1i")), Complex(1.0, 1.0));
	EXPECT_THROW(complex_from_json(json::array({1.0})), std::invalid_argument);
}

TEST(PathJson, RoundTrip)
{
	PathSpec p = PathSpec::line(0.0, 0.5);
	p.loop_around(1.0, -1).line_to({0.3, 0.2});
	p.start_anchor = TangentialAnchor{0, 1.0};
	auto j = to_json(p, Chart::xi);
	auto doc = path_from_json(j);
	EXPECT_EQ(doc.chart, Chart::xi);
	ASSERT_EQ(doc.path.segments.size(), 3u);
	EXPECT_EQ(doc.path.segments[1].kind, Segment::Kind::arc);
	EXPECT_EQ(doc.path.segments[1].orientation, -1);
	EXPECT_TRUE(doc.path.start_anchor.has_value());
	EXPECT_FALSE(doc.path.end_anchor.has_value());
	EXPECT_EQ(to_json(doc.path, Chart::xi), j);
}

TEST(PathJson, BareListAndOptions)
{
	auto j = json::parse(R"([
		{"from": 0.2, "to": [0.6, 0.3]},
		{"type": "arc", "from": [0.6, 0.3], "to": [0.6, -0.3], "center": 0.6, "orientation": "cw", "turns": 1}
	])");
	auto doc = path_from_json(j);
	EXPECT_EQ(doc.chart, Chart::x);
	EXPECT_EQ(doc.path.segments[1].extra_turns, 1);
	EXPECT_NEAR(doc.path.segments[1].sweep(), -3 * kPi, 1e-12);
}

TEST(PathJson, Errors)
{
	EXPECT_THROW(path_from_json(json::parse(R"({"chart": "y", "segments": []})")), std::invalid_argument);
	EXPECT_THROW(path_from_json(json::parse(R"({"chart": "x"})")), std::invalid_argument);
	EXPECT_THROW(path_from_json(json::parse(R"([])")), std::invalid_argument);
	EXPECT_THROW(path_from_json(json::parse(R"([{"type": "spiral", "from": 0, "to": 1}])")), std::invalid_argument);
	EXPECT_THROW(path_from_json(json::parse(R"([{"type": "arc", "from": 0, "to": 1}])")), std::invalid_argument);
	EXPECT_THROW(path_from_json(json::parse(R"([{"from": 0.1, "to": 0.2}, {"from": 0.3, "to": 0.4}])")),
	             std::invalid_argument);
	EXPECT_THROW(path_from_json(json::parse(R"({"segments": [{"from": 0.1, "to": 0.2}], "start": {"puncture": 0}})")),
	             std::invalid_argument);
	EXPECT_THROW(anchor_from_json(json::parse(R"({"puncture": 3})")), std::invalid_argument);
	EXPECT_THROW(segment_from_json(json::parse(R"({"type": "arc", "from": 1, "to": 1, "center": 0,
		"orientation": "sideways"})")),
	             std::invalid_argument);
}

TEST(AlgebraJson, Records)
{
	EXPECT_EQ(to_json(Rational(3, 4)), json("3/4"));
	EXPECT_EQ(to_json(Integer(-7)), json(-7));
	Integer big = Integer(1) << 80;
	EXPECT_EQ(to_json(big), json(big.str()));
	auto t = truncate(LaurentPolyInt::monomial(2), 3);
	EXPECT_EQ(to_json(t), json::parse(R"({"level": 3, "residue": [1, 2, 1]})"));
	auto x = SemidirectLieElt::e1(3);
	auto back = lie_from_json(to_json(x));
	EXPECT_EQ(back, x);
	auto y = lie_from_json(json::parse(R"({"a": 2, "b": ["1/2", -3]})"));
	EXPECT_EQ(y.a, Rational(2));
	EXPECT_EQ(y.b[0], Rational(1, 2));
	EXPECT_EQ(y.b[1], Rational(-3));
	auto p = LaurentPolyInt::monomial(-1, 2) + LaurentPolyInt::monomial(3, -5);
	EXPECT_EQ(to_json(p), json::parse(R"({"-1": 2, "3": -5})"));
}

TEST(MatrixJson, Shape)
{
	auto m = unipotent_exp(build_generators(2).N0.matrix);
	auto j = to_json(m);
	ASSERT_EQ(j.size(), 3u);
	EXPECT_EQ(j[0].size(), 3u);
	auto c = to_json(UnipotentMatrix<Complex>::identity(1));
	EXPECT_EQ(c[0][0], json::array({1.0, 0.0}));
}

TEST(ChartPointJson, CarriesMembership)
{
	ChartPoint<Complex> p{{BoundaryTag::p0, 2}, {0.0, 1.0, 0.0}};
	auto j = to_json(p);
	EXPECT_EQ(j["chart"], "p0");
	EXPECT_EQ(j["membership"], false);
	EXPECT_TRUE(j["constraint"].is_string());
}

TEST(Csv, Flatten)
{
	json j = {{"a", 1}, {"b", {{"c", json::array({1.5, "x,y"})}}}};
	EXPECT_EQ(to_csv(j), "key,value\na,1\nb.c[0],1.5\nb.c[1],\"x,y\"\n");
	EXPECT_EQ(to_csv(json::parse(R"({"q": "say \"hi\""})")), "key,value\nq,\"say \"\"hi\"\"\"\n");
}
