#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "inventory.hpp"
#include "polyperiod/polyperiod.hpp"
#include "polyperiod/serialize.hpp"

using namespace polyperiod;

namespace {

struct RunConfig
{
	int n = 3;
	int N = 3;
	double tol = 1e-12;
	bool tol_given = false;
	std::string normalization = "paper";
	std::string format = "json";
	std::uint64_t seed = 1;
	bool timing = false;

	std::string z, x, xi, path, suite, subop, chart, word, poly, lhs, rhs, elt, generator, radii;
	int puncture = -1;
	int w0 = 0, w1 = 0;
	int samples = 200;
	std::string c = "0";

	Normalization norm() const { return parse_normalization(normalization); }
};

void add_common(CLI::App* sub, RunConfig& cfg)
{
	sub->add_option("--n", cfg.n, "level n (matrix size n+1) or polylog order")->check(CLI::Range(1, 64));
	sub->add_option("--tol", cfg.tol, "integration tolerance (default 1e-12); for boundary, the extrapolation acceptance (default 1e-9)")->check(CLI::Range(1e-14, 1e-3));
	sub->add_option("--normalization", cfg.normalization, "paper: kappa = 1/(2 pi i); deligne: kappa = 1")
	    ->check(CLI::IsMember({"paper", "deligne"}));
	sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
	sub->add_option("--seed", cfg.seed, "seed for sampled suites");
	sub->add_flag("--timing", cfg.timing, "add wall-clock time to the record (breaks byte-identical output)");
}

Complex complex_arg(const std::string& s, const char* name)
{
	try
	{
		return parse_complex(s);
	}
	catch (const std::invalid_argument&)
	{
		throw std::invalid_argument(std::string("--") + name + ": cannot parse complex number '" + s + "'");
	}
}

PathDocument load_path(const std::string& file)
{
	std::ifstream in(file);
	if (!in)
		throw std::invalid_argument("cannot open path file " + file);
	json j;
	try
	{
		j = json::parse(in);
	}
	catch (const json::parse_error& e)
	{
		throw std::invalid_argument("path file " + file + ": " + e.what());
	}
	return path_from_json(j);
}

json polylog_cmd(const RunConfig& cfg)
{
	json r = {{"command", "polylog"}, {"n", cfg.n}, {"tol", cfg.tol}};
	PolylogValue v;
	if (!cfg.path.empty())
	{
		auto doc = load_path(cfg.path);
		v = polylog_continue(cfg.n, doc.path, cfg.tol);
		r["path"] = to_json(doc.path, doc.chart);
		r["method"] = "continuation";
	}
	else
	{
		if (cfg.z.empty())
			throw std::invalid_argument("polylog needs --z or --path");
		Complex z = complex_arg(cfg.z, "z");
		if (z.imag() == 0.0 && z.real() >= 1.0)
			throw std::domain_error("l_n is evaluated on its cut [1,inf); supply a continuation path");
		if (std::abs(z) <= kSeriesRadius)
		{
			v.order = cfg.n;
			v.point = z;
			v.value = polylog_series(cfg.n, z, std::min(cfg.tol, 1e-15));
			r["method"] = "series";
		}
		else
		{
			v = polylog_continue(cfg.n, PathSpec::line(0.0, z), cfg.tol);
			r["method"] = "continuation";
		}
	}
	r["z"] = to_json(v.point);
	r["value"] = to_json(v.value);
	r["branch_offset"] = v.branch_offset;
	r["winding0"] = v.winding0;
	r["oracle"] = "power series with tail bound; ODE l_k' = l_{k-1}/t beyond |z| = 1/2";
	return r;
}

json period_cmd(const RunConfig& cfg)
{
	const auto norm = cfg.norm();
	const Complex c = complex_arg(cfg.c, "c");
	json r = {{"command", "period"}, {"n", cfg.n}, {"normalization", to_string(norm)}, {"tol", cfg.tol}};
	int given = !cfg.x.empty() + !cfg.xi.empty() + !cfg.path.empty();
	if (given != 1)
		throw std::invalid_argument("period needs exactly one of --x, --xi, --path");
	if (!cfg.x.empty() || !cfg.xi.empty())
	{
		bool xi = !cfg.xi.empty();
		Complex z = complex_arg(xi ? cfg.xi : cfg.x, xi ? "xi" : "x");
		Branch b{cfg.w0, cfg.w1};
		auto m = xi ? closed_form_period_xi(cfg.n, z, norm, b, c) : closed_form_period(cfg.n, z, norm, b, c);
		r["chart"] = xi ? "xi" : "x";
		r["point"] = to_json(z);
		r["branch"] = {{"w0", b.w0}, {"w1", b.w1}};
		r["method"] = "closed_form";
		r["matrix"] = to_json(m);
		return r;
	}
	auto doc = load_path(cfg.path);
	auto form = ConnectionForm::make(cfg.n, doc.chart, norm);
	const auto& p = doc.path;
	TransportResult t;
	if (p.start_anchor && p.end_anchor)
	{
		t = tangential_transport(form, p, cfg.tol);
		r["method"] = "tangential_transport";
	}
	else if (p.start_anchor)
	{
		t = regularized_transport(form, *p.start_anchor, p, cfg.tol);
		r["method"] = "regularized_transport";
	}
	else if (p.end_anchor)
		throw std::invalid_argument("path with only an end anchor: reverse it so the anchor is at the start");
	else
	{
		t = transport(form, p, cfg.tol);
		r["method"] = "transport";
	}
	r["chart"] = to_string(doc.chart);
	r["path"] = to_json(p, doc.chart);
	r["matrix"] = to_json(t.matrix);
	r["winding0"] = t.winding0;
	r["winding1"] = t.winding1;
	r["est_error"] = round15(t.est_error);
	// against the closed form when the windings pin the branch
	if (p.start_anchor && !p.end_anchor && p.start_anchor->puncture == 0 && p.start_anchor->tangent == Complex(1.0, 0.0) &&
	    (t.winding0 == 0 || t.winding1 == 0) && c == Complex(0.0, 0.0))
	{
		Branch b{t.winding0, t.winding1};
		auto ref = doc.chart == Chart::x ? closed_form_period(cfg.n, p.end(), norm, b)
		                                 : closed_form_period_xi(cfg.n, p.end(), norm, b);
		r["oracle"] = "closed_form";
		r["oracle_diff"] = round15(max_abs_diff(ref, t.matrix));
	}
	return r;
}

json monodromy_cmd(const RunConfig& cfg)
{
	if (cfg.puncture != 0 && cfg.puncture != 1)
		throw std::invalid_argument("monodromy needs --puncture 0 or 1");
	const auto norm = cfg.norm();
	auto form = ConnectionForm::make(cfg.n, Chart::x, norm);
	auto m = monodromy(form, cfg.puncture, TangentialAnchor{0, 1.0}, cfg.tol);
	// gamma_0 anticlockwise at 0, gamma_1 clockwise at 1
	Matrix<Complex> log_m = cfg.puncture == 0 ? form.local_monodromy_log(0) : Matrix<Complex>(-form.local_monodromy_log(1));
	auto expected = unipotent_exp(log_m);
	return {{"command", "monodromy"},
	        {"n", cfg.n},
	        {"normalization", to_string(norm)},
	        {"puncture", cfg.puncture},
	        {"loop", cfg.puncture == 0 ? "anticlockwise around 0" : "clockwise around 1"},
	        {"basepoint", to_json(TangentialAnchor{0, 1.0})},
	        {"tol", cfg.tol},
	        {"matrix", to_json(m.matrix)},
	        {"expected", to_json(expected)},
	        {"oracle", "exp of the residue times 2 pi i"},
	        {"max_abs_diff", round15(max_abs_diff(m.matrix, expected))},
	        {"est_error", round15(m.est_error)}};
}

std::vector<double> parse_list(const std::string& s)
{
	std::vector<double> out;
	std::stringstream in(s);
	std::string item;
	while (std::getline(in, item, ','))
		out.push_back(parse_double_strict(item));
	return out;
}

json boundary_cmd(const RunConfig& cfg)
{
	if (cfg.chart.empty())
		throw std::invalid_argument("boundary needs --chart p0|p1|pinf");
	const auto tag = parse_boundary_tag(cfg.chart);
	const auto norm = cfg.norm();
	const Complex c = complex_arg(cfg.c, "c");
	const Complex k = kappa(norm);
	const std::string subop = cfg.subop.empty() ? "limit" : cfg.subop;
	json r = {{"command", "boundary"}, {"chart", to_string(tag)}, {"n", cfg.n}, {"normalization", to_string(norm)}, {"subop", subop}};
	const auto gens = build_generators(cfg.n);

	if (subop == "limit" || subop == "membership")
	{
		BoundaryOptions opts;
		opts.norm = norm;
		opts.c = c;
		// --tol is the extrapolation acceptance here; the period ODE keeps its own
		if (cfg.tol_given)
			opts.tol = cfg.tol;
		if (!cfg.path.empty())
		{
			auto doc = load_path(cfg.path);
			opts.route = doc.path;
		}
		auto o = boundary_limit(tag, cfg.n, opts);
		auto cp = orbit_chart_point(o);
		r["orbit_chart_point"] = to_json(cp);
		r["membership"] = chart_membership(cp);
		r["griffiths"] = griffiths_check(gens[o.cone_tag], o.flag());
		if (subop == "membership")
			return r;
		r["orbit"] = to_json(o);
		auto expected = expected_limit(tag, cfg.n, norm, c);
		r["expected"] = to_json(expected);
		r["max_abs_diff"] = round15(max_abs_diff(o.limit, expected));
		r["tol"] = opts.tol;
		r["oracle"] = tag == BoundaryTag::p1 ? "zeta_ref (Euler-Maclaurin)" : "closed-form orbit";
		if (tag == BoundaryTag::p1)
		{
			json slots = json::array();
			for (int j = 2; j <= cfg.n; ++j)
			{
				Complex v = o.limit.a(cfg.n + 1 - j, cfg.n + 1);
				Complex kj = std::pow(k, j);
				Complex zeta = -v / kj - (j == cfg.n ? c : Complex(0.0));
				slots.push_back({{"k", j},
				                 {"value", to_json(v)},
				                 {"expected", to_json(Complex(-kj * ((j == cfg.n ? c : Complex(0.0)) + zeta_ref(j))))},
				                 {"zeta_recovered", round15(zeta.real())},
				                 {"zeta_ref", round15(zeta_ref(j))}});
			}
			r["lambda_slots"] = slots;
		}
		return r;
	}
	if (subop == "coordinates")
	{
		bool use_xi = tag == BoundaryTag::pinf;
		const std::string& s = use_xi ? cfg.xi : cfg.x;
		if (s.empty())
			throw std::invalid_argument(use_xi ? "coordinates at pinf need --xi" : "coordinates need --x");
		Complex z = complex_arg(s, use_xi ? "xi" : "x");
		auto period = use_xi ? closed_form_period_xi(cfg.n, z, norm, {}, c) : closed_form_period(cfg.n, z, norm, {}, c);
		auto cp = chart_coordinates(tag, period, z, norm);
		r["point"] = to_json(z);
		r["chart_point"] = to_json(cp);
		return r;
	}
	if (subop == "gap")
	{
		auto radii = cfg.radii.empty() ? std::vector<double>{1e-2, 1e-3, 1e-4, 1e-5, 1e-6} : parse_list(cfg.radii);
		std::vector<Complex> pts;
		for (double rad : radii)
			pts.push_back(tag == BoundaryTag::p1 ? Complex(1.0 - rad) : Complex(rad));
		auto gap = asymptotic_gap(tag, cfg.n, pts, norm, c);
		bool monotone = true;
		for (std::size_t i = 1; i < gap.size(); ++i)
			monotone = monotone && gap[i] < gap[i - 1];
		r["radii"] = to_json(radii);
		r["points"] = to_json(pts);
		r["gap"] = to_json(gap);
		r["monotone"] = monotone;
		return r;
	}
	throw std::invalid_argument("unknown boundary subop: " + subop);
}

json verify_cmd(const RunConfig& cfg)
{
	if (cfg.suite.empty())
		throw std::invalid_argument("verify needs --suite");
	json r = {{"command", "verify"}, {"suite", cfg.suite}, {"n", cfg.n}};
	const int n = cfg.n;
	bool pass = true;
	if (cfg.suite == "power-identity")
	{
		json per = json::array();
		for (int m = 1; m <= n; ++m)
		{
			bool ok = power_identity_check(m);
			per.push_back({{"n", m}, {"pass", ok}});
			pass = pass && ok;
		}
		r["levels"] = per;
	}
	else if (cfg.suite == "ad-tower")
	{
		r["tower"] = to_json(ad_tower(n));
		bool rel = ad_tower_relations(n), nil = n0_nilpotency_degree(n);
		r["commuting"] = rel;
		r["n0_nilpotency"] = nil;
		pass = rel && nil;
	}
	else if (cfg.suite == "generators")
	{
		auto g = build_generators(n);
		r["N0"] = to_json(g.N0.matrix);
		r["N1"] = to_json(g.N1.matrix);
		r["Ninf"] = to_json(g.Ninf.matrix);
		pass = g.Ninf.matrix == g.N1.matrix - g.N0.matrix;
	}
	else if (cfg.suite == "exp")
	{
		auto g = build_generators(n);
		json e = json::object();
		for (const auto* gen : {&g.N0, &g.N1, &g.Ninf})
		{
			auto m = unipotent_exp(gen->matrix);
			auto mi = unipotent_exp(Matrix<Rational>(-gen->matrix));
			bool inv = m * mi == UnipotentMatrix<Rational>::identity(n);
			e[to_string(gen->tag)] = {{"exp", to_json(m)}, {"inverse_check", inv}};
			pass = pass && inv;
		}
		r["exponentials"] = e;
	}
	else if (cfg.suite == "filtration")
	{
		std::mt19937_64 rng(cfg.seed);
		std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
		FiltrationParams<Rational> p{Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), {}};
		for (int k = 2; k <= n; ++k)
			p.lambda.push_back(Rational(num(rng), den(rng)));
		auto f = filtration_matrix(n, p);
		auto back = filtration_params(f);
		pass = back.alpha == p.alpha && back.beta == p.beta && back.lambda == p.lambda;
		r["seed"] = cfg.seed;
		r["params"] = {{"alpha", to_json(p.alpha)}, {"beta", to_json(p.beta)}, {"lambda", to_json(p.lambda)}};
		r["matrix"] = to_json(f);
		r["round_trip"] = pass;
	}
	else if (cfg.suite == "griffiths" || cfg.suite == "transversality")
	{
		std::mt19937_64 rng(cfg.seed);
		auto g = build_generators(n);
		json per = json::object();
		int mismatches = 0;
		for (auto tag : {GeneratorTag::N0, GeneratorTag::N1, GeneratorTag::Ninf})
		{
			int sat = 0, agree = 0;
			for (int i = 0; i < cfg.samples; ++i)
			{
				auto a = random_transversality_sample(tag, n, rng, i % 2 == 0);
				bool gr = griffiths_check(g[tag], a);
				bool tc = cfg.suite == "transversality" ? transversality_conditions(tag, a) : (i % 2 == 0);
				sat += gr;
				agree += gr == tc;
			}
			mismatches += cfg.samples - agree;
			per[to_string(tag)] = {{"samples", cfg.samples}, {"griffiths_true", sat}, {"agree", agree}};
		}
		r["seed"] = cfg.seed;
		r["per_tag"] = per;
		r["mismatches"] = mismatches;
		r["compared_against"] = cfg.suite == "transversality" ? "transversality_conditions" : "construction";
		pass = mismatches == 0;
	}
	else if (cfg.suite == "zeta")
	{
		json vals = json::array();
		for (int m = 2; m <= std::max(2, n); ++m)
			vals.push_back({{"n", m}, {"zeta", round15(zeta_ref(m))}});
		r["values"] = vals;
		r["oracle"] = "Euler-Maclaurin, cutoff 20";
	}
	else
		throw std::invalid_argument("unknown suite: " + cfg.suite +
		                            " (power-identity, ad-tower, generators, exp, filtration, griffiths, transversality, zeta)");
	r["pass"] = pass;
	return r;
}

SemidirectLieElt lie_arg(const std::string& s, int N, const char* name)
{
	if (s == "e0")
		return SemidirectLieElt::e0(N);
	if (s == "e1")
		return SemidirectLieElt::e1(N);
	if (s.rfind("nu", 0) == 0)
		return SemidirectLieElt::nu(N, std::stoi(s.substr(2)));
	// "a|b1,b2,...,bN"
	auto bar = s.find('|');
	if (bar == std::string::npos)
		throw std::invalid_argument(std::string("--") + name + ": expected e0, e1, nuK or a|b1,...,bN");
	SemidirectLieElt x;
	x.a = parse_rational(s.substr(0, bar));
	std::stringstream in(s.substr(bar + 1));
	std::string item;
	while (std::getline(in, item, ','))
		x.b.push_back(parse_rational(item));
	if (x.level() != N)
		throw std::invalid_argument(std::string("--") + name + ": element has level " + std::to_string(x.level()) +
		                            ", expected " + std::to_string(N));
	return x;
}

LaurentPolyInt poly_arg(const RunConfig& cfg)
{
	if (!cfg.word.empty() && !cfg.poly.empty())
		throw std::invalid_argument("give --word or --poly, not both");
	if (!cfg.word.empty())
		return from_word(cfg.word);
	if (cfg.poly.empty())
		throw std::invalid_argument("this subop needs --word or --poly");
	// "k:c,k:c"
	LaurentPolyInt p;
	std::stringstream in(cfg.poly);
	std::string item;
	while (std::getline(in, item, ','))
	{
		auto colon = item.find(':');
		if (colon == std::string::npos)
			throw std::invalid_argument("--poly terms are exponent:coefficient");
		try
		{
			p.add(std::stol(item.substr(0, colon)), Integer(item.substr(colon + 1)));
		}
		catch (const std::exception&)
		{
			throw std::invalid_argument("malformed --poly term: " + item);
		}
	}
	return p;
}

json deligne_cmd(const RunConfig& cfg)
{
	if (cfg.subop.empty())
		throw std::invalid_argument("deligne needs --subop");
	json r = {{"command", "deligne"}, {"subop", cfg.subop}};
	const std::string& op = cfg.subop;
	if (op == "truncate" || op == "depth" || op == "phi")
	{
		auto p = poly_arg(cfg);
		auto t = truncate(p, cfg.N);
		r["N"] = cfg.N;
		r["laurent"] = to_json(p);
		r["truncated"] = to_json(t);
		if (op == "depth")
			r["depth"] = central_depth(t);
		if (op == "phi")
			r["phi"] = to_json(phi(t));
		return r;
	}
	if (op == "lattice")
	{
		auto rep = tate_lattice_check(cfg.N);
		r["N"] = cfg.N;
		r["gcds"] = to_json(rep.gcds);
		r["integral"] = rep.integral;
		r["phi_invertible"] = rep.phi_invertible;
		r["pass"] = rep.pass;
		return r;
	}
	if (op == "bracket")
	{
		auto x = lie_arg(cfg.lhs, cfg.N, "lhs"), y = lie_arg(cfg.rhs, cfg.N, "rhs");
		r["N"] = cfg.N;
		r["lhs"] = to_json(x);
		r["rhs"] = to_json(y);
		r["bracket"] = to_json(bracket(x, y));
		return r;
	}
	if (op == "rep-hom")
	{
		auto x = lie_arg(cfg.elt.empty() ? "e0" : cfg.elt, cfg.n, "elt");
		r["n"] = cfg.n;
		r["element"] = to_json(x);
		r["matrix"] = to_json(rep_hom(cfg.n, x));
		r["brackets_preserved"] = rep_hom_preserves_brackets(cfg.n);
		return r;
	}
	if (op == "coordinates")
	{
		const auto norm = cfg.norm();
		const Complex k = kappa(norm);
		r["n"] = cfg.n;
		r["normalization"] = to_string(norm);
		if (!cfg.generator.empty())
		{
			// exact: exp of a generator with kappa = 1
			auto tag = parse_generator_tag(cfg.generator);
			auto f = unipotent_exp(build_generators(cfg.n)[tag].matrix);
			auto co = coordinates_from_unipotent(f, Rational(1));
			r["source"] = std::string("exp(") + to_string(tag) + ")";
			r["kappa"] = "1/1";
			r["u"] = to_json(co.u);
			r["v"] = to_json(co.v);
			return r;
		}
		int given = !cfg.z.empty() + !cfg.x.empty();
		if (given != 1)
			throw std::invalid_argument("coordinates need exactly one of --z, --x, --generator");
		UnipotentMatrix<Complex> f;
		Complex z;
		if (!cfg.z.empty())
		{
			// regularized at 0 with the tangent rescaled to z, along the segment to z
			z = complex_arg(cfg.z, "z");
			if (z == Complex(0.0) || std::abs(z) >= 1.0)
				throw std::domain_error("--z must satisfy 0 < |z| < 1");
			auto form = ConnectionForm::make(cfg.n, Chart::x, norm);
			auto t = regularized_transport(form, TangentialAnchor{0, z}, PathSpec::line(0.0, z), cfg.tol);
			f = t.matrix;
			r["source"] = "regularized transport, tangent z at 0";
			r["est_error"] = round15(t.est_error);
		}
		else
		{
			z = complex_arg(cfg.x, "x");
			f = closed_form_period(cfg.n, z, norm);
			r["source"] = "closed_form_period";
		}
		auto co = coordinates_from_unipotent(f, k);
		json ref = json::array();
		for (int m = 1; m <= cfg.n; ++m)
			ref.push_back(to_json(Complex(-polylog(m, z))));
		r["point"] = to_json(z);
		r["u"] = to_json(co.u);
		r["v"] = to_json(co.v);
		r["oracle"] = "v_n = -l_n(z)";
		r["minus_polylog"] = ref;
		return r;
	}
	throw std::invalid_argument("unknown deligne subop: " + op +
	                            " (truncate, depth, phi, lattice, bracket, rep-hom, coordinates)");
}

json inventory_cmd()
{
	json a = json::array();
	for (const auto& e : cli::kInventory)
		a.push_back({{"module", e.module}, {"operation", e.operation}, {"subcommand", e.subcommand}, {"example", e.example}});
	return {{"command", "inventory"}, {"operations", a}};
}

void emit(const json& record, const std::string& format)
{
	if (format == "csv")
		std::cout << to_csv(record);
	else
		std::cout << record.dump(2) << "\n";
}

int fail(const std::string& command, const char* kind, const std::string& message, int code, const std::string& format)
{
	json r = {{"command", command}, {"error", {{"type", kind}, {"message", message}}}, {"exit_code", code}};
	emit(r, format);
	std::cerr << "polyperiod: " << message << "\n";
	return code;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Periods of the polylogarithm variation over P^1 minus {0, 1, inf}"};
	app.require_subcommand(1);
	RunConfig cfg;

	auto* pl = app.add_subcommand("polylog", "l_n(z) on the principal branch or along a continuation path");
	add_common(pl, cfg);
	pl->add_option("--z", cfg.z, "point, e.g. 0.5, -1, 0.3+0.2i or 0.3,0.2");
	pl->add_option("--path", cfg.path, "continuation path JSON file");

	auto* pe = app.add_subcommand("period", "period matrix: closed form or transport along a path");
	add_common(pe, cfg);
	pe->add_option("--x", cfg.x, "point in the x chart (closed form)");
	pe->add_option("--xi", cfg.xi, "point in the xi = 1/x chart (closed form)");
	pe->add_option("--path", cfg.path, "path JSON file; anchors select regularized transport");
	pe->add_option("--w0", cfg.w0, "closed-form branch: power of the monodromy at 0");
	pe->add_option("--w1", cfg.w1, "closed-form branch: power of the monodromy at 1");
	pe->add_option("--c", cfg.c, "constant added to l_n");

	auto* mo = app.add_subcommand("monodromy", "monodromy of the solution regularized at (0, tangent 1)");
	add_common(mo, cfg);
	mo->add_option("--puncture", cfg.puncture, "0 (anticlockwise loop) or 1 (clockwise loop)")->required();

	auto* bo = app.add_subcommand("boundary", "boundary charts and nilpotent orbit limits");
	add_common(bo, cfg);
	bo->add_option("--chart", cfg.chart, "boundary point")->check(CLI::IsMember({"p0", "p1", "pinf"}))->required();
	bo->add_option("--subop", cfg.subop, "limit (default), membership, coordinates, gap")
	    ->check(CLI::IsMember({"limit", "membership", "coordinates", "gap"}));
	bo->add_option("--x", cfg.x, "point for coordinates at p0, p1");
	bo->add_option("--xi", cfg.xi, "point for coordinates at pinf");
	bo->add_option("--path", cfg.path, "route from the puncture to the approach (limit)");
	bo->add_option("--radii", cfg.radii, "comma-separated radii for gap");
	bo->add_option("--c", cfg.c, "constant added to l_n");

	auto* ve = app.add_subcommand("verify", "invariant suites");
	add_common(ve, cfg);
	ve->add_option("--suite", cfg.suite, "power-identity, ad-tower, generators, exp, filtration, griffiths, transversality, zeta")
	    ->required();
	ve->add_option("--samples", cfg.samples, "samples per generator for sampled suites")->check(CLI::Range(2, 100000));

	auto* de = app.add_subcommand("deligne", "group ring, graded Tate coordinates and the Lie algebra");
	add_common(de, cfg);
	de->add_option("--subop", cfg.subop, "truncate, depth, phi, lattice, bracket, rep-hom, coordinates")->required();
	de->add_option("--N", cfg.N, "truncation level")->check(CLI::Range(1, 64));
	de->add_option("--word", cfg.word, "word in a0, a1, e.g. \"a0 a1 a0^-1 a1^-1\"");
	de->add_option("--poly", cfg.poly, "Laurent polynomial as exponent:coefficient,...");
	de->add_option("--lhs", cfg.lhs, "e0, e1, nuK or a|b1,...,bN");
	de->add_option("--rhs", cfg.rhs, "e0, e1, nuK or a|b1,...,bN");
	de->add_option("--elt", cfg.elt, "element for rep-hom");
	de->add_option("--z", cfg.z, "coordinates of the transport regularized with tangent z");
	de->add_option("--x", cfg.x, "coordinates of the closed-form period at x");
	de->add_option("--generator", cfg.generator, "coordinates of exp(N0), exp(N1) or exp(Ninf), exactly");

	auto* in = app.add_subcommand("inventory", "operation to subcommand table");
	in->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::CallForHelp& e)
	{
		return app.exit(e);
	}
	catch (const CLI::CallForAllHelp& e)
	{
		return app.exit(e);
	}
	catch (const CLI::ParseError& e)
	{
		return fail("", "usage_error", e.what(), 1, cfg.format);
	}

	auto* sub = app.get_subcommands().front();
	const std::string name = sub->get_name();
	if (auto* opt = sub->get_option_no_throw("--tol"))
		cfg.tol_given = opt->count() > 0;
	try
	{
		auto t0 = std::chrono::steady_clock::now();
		json r;
		if (name == "polylog")
			r = polylog_cmd(cfg);
		else if (name == "period")
			r = period_cmd(cfg);
		else if (name == "monodromy")
			r = monodromy_cmd(cfg);
		else if (name == "boundary")
			r = boundary_cmd(cfg);
		else if (name == "verify")
			r = verify_cmd(cfg);
		else if (name == "deligne")
			r = deligne_cmd(cfg);
		else
			r = inventory_cmd();
		if (cfg.timing)
			r["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
		emit(r, cfg.format);
		if (r.contains("pass") && r["pass"] == false)
			return 4;
		return 0;
	}
	catch (const std::domain_error& e)
	{
		return fail(name, "domain_error", e.what(), 2, cfg.format);
	}
	catch (const convergence_error& e)
	{
		return fail(name, "convergence_error", e.what(), 3, cfg.format);
	}
	catch (const std::exception& e)
	{
		return fail(name, "invalid_argument", e.what(), 1, cfg.format);
	}
}
