#pragma once

#include <array>
#include <string_view>

namespace polyperiod::cli {

/// Where each library operation is reached from the command line. Each
/// operation has exactly one owning subcommand; `example` is a full argument
/// list that exercises it.
struct InventoryEntry
{
	std::string_view module;
	std::string_view operation;
	std::string_view subcommand;
	std::string_view example;
};

inline constexpr std::array<InventoryEntry, 26> kInventory{{
    {"polylog", "polylog_series", "polylog", "polylog --n 2 --z 0.5"},
    {"polylog", "polylog_continue", "polylog", "polylog --n 3 --z -1"},
    {"polylog", "zeta_ref", "verify", "verify --suite zeta --n 5"},
    {"hodge_linear", "build_generators", "verify", "verify --suite generators --n 3"},
    {"hodge_linear", "unipotent_exp", "verify", "verify --suite exp --n 4"},
    {"hodge_linear", "filtration_matrix", "verify", "verify --suite filtration --n 4 --seed 7"},
    {"hodge_linear", "griffiths_check", "verify", "verify --suite griffiths --n 3 --seed 7"},
    {"hodge_linear", "transversality_conditions", "verify", "verify --suite transversality --n 3 --seed 7"},
    {"hodge_linear", "power_identity_check", "verify", "verify --suite power-identity --n 8"},
    {"hodge_linear", "ad_tower", "verify", "verify --suite ad-tower --n 5"},
    {"transport", "transport", "period", "period --n 2 --path @samples/paths/segment.json"},
    {"transport", "regularized_transport", "period", "period --n 3 --path @samples/paths/from_zero.json"},
    {"transport", "closed_form_period", "period", "period --n 3 --x 0.3"},
    {"transport", "closed_form_period_xi", "period", "period --n 3 --xi 0.25+0.1i"},
    {"transport", "monodromy", "monodromy", "monodromy --n 3 --puncture 0"},
    {"boundary", "chart_coordinates", "boundary", "boundary --chart p0 --n 3 --subop coordinates --x 0.01"},
    {"boundary", "boundary_limit", "boundary", "boundary --chart p1 --n 3"},
    {"boundary", "chart_membership", "boundary", "boundary --chart pinf --n 3 --subop membership"},
    {"boundary", "asymptotic_gap", "boundary", "boundary --chart p0 --n 3 --subop gap"},
    {"tate_lie", "truncate", "deligne", "deligne --subop truncate --word \"a0^2 a1 a0^-2\" --N 3"},
    {"tate_lie", "central_depth", "deligne", "deligne --subop depth --word \"a0 a1 a0^-1 a1^-1\" --N 4"},
    {"tate_lie", "phi", "deligne", "deligne --subop phi --word \"a0^2 a1 a0^-2\" --N 3"},
    {"tate_lie", "tate_lattice_check", "deligne", "deligne --subop lattice --N 6"},
    {"tate_lie", "bracket", "deligne", "deligne --subop bracket --lhs e0 --rhs e1 --N 3"},
    {"tate_lie", "rep_hom", "deligne", "deligne --subop rep-hom --elt nu2 --n 3"},
    {"tate_lie", "coordinates_from_unipotent", "deligne", "deligne --subop coordinates --z 0.3 --n 3"},
}};

} // namespace polyperiod::cli
