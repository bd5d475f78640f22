#pragma once

// JSON forms of domains and reports, the CSV profile export and the text
// dump of solution fields (JSON header, hexfloat values).

#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"
#include "vekua/geometry.hpp"
#include "vekua/principles.hpp"
#include "vekua/solver.hpp"

namespace vekua {

using Json = nlohmann::ordered_json;

// Inverse of DomainSpec::describe(): rect{x0,x1,y0,y1} | halfplane{xmin:..,R:..}
// | strip{a,b,y_cut} | disc | disclog{cx,cy,r,R,cut}, optionally followed by &clip{rho}.
DomainSpec parse_domain(std::string_view text);

// Bit-exact double <-> text.
std::string hexfloat(double v);
double parse_hexfloat(std::string_view text);

Json complex_json(Complex z);
// Doubles that may be infinite or NaN are written as strings.
Json number_json(double v);

Json to_json(const ConditionReport& r);
Json to_json(const std::vector<MuScanRow>& rows);
Json to_json(const MaxPrincipleReport& r);
Json to_json(const ThreeLinesProfile& p);
Json to_json(const ConvexityReport& r);
Json to_json(const DamperPropertiesReport& r);
Json provenance_json(const Provenance& p);

// Two columns x, M(x).
std::string profile_csv(const ThreeLinesProfile& p);
// x, y, margin for every evaluated node.
std::string margin_csv(const ConditionReport& r, const Grid& grid);

// First line: JSON header {format, domain, spacing, weight, residual_linf, provenance,
// nx, ny}. Then one line per lattice node with a value: "k x y re im" in hexfloat.
void write_solution(std::ostream& out, const SolutionField& w);
SolutionField read_solution(std::istream& in);
void save_solution(const std::string& path, const SolutionField& w);
SolutionField load_solution(const std::string& path);

}  // namespace vekua
