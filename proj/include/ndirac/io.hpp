#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ndirac/asymptotics.hpp"
#include "ndirac/counterexamples.hpp"
#include "ndirac/inverse.hpp"

namespace ndirac {

/// Malformed input file. `field` is a dotted path ("U1.h"), `line` 0 when unknown.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::string field_, int line_)
      : std::runtime_error(what), field(std::move(field_)), line(line_) {}
  std::string field;
  int line;
};

/// Problem files (TOML). Layout:
///
///   T = "pi"                       # or a number
///   [potential]                    # preset = "free" | "example1" | "example2",
///   constant = { p = 0.3, q = -0.2 }   # or chebyshev = { p = [...], q = [...] },
///                                      # or p = <field>, q = <field>
///   [U1]
///   h = [1.0, 0.0]                 # complex entries: number or [re, im]
///   atoms = [ { t = 1.5, w = [1.0, 0.0] } ]
///   density = { d1 = [...], d2 = [...], lo = 0.0, hi = 1.0 }
///   [U2] ...
///   [tolerances]
///   ode_tol = 1e-10
///   root_tol = 1e-8
///   pole_guard = 1e-10
///
/// A field is a number, a Chebyshev coefficient array, or a table with one of
/// chebyshev (+ lo, hi), breaks + panels, hat = {center, half_width, amplitude},
/// trig = {amplitude, frequency, phase}. A [random] table with seed (and optional T,
/// degree, amplitude, complex, atoms, densities) replaces the potential and both forms.
DiracProblem parse_problem(const std::string& text, const std::string& source = "<input>");
DiracProblem load_problem(const std::string& path);

/// Problem file text that parses back to the same problem.
std::string problem_to_toml(const DiracProblem& P);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SpectralData& d);
SpectralData spectral_data_from_json(const nlohmann::json& j);
SpectralData load_spectral_data(const std::string& path);

nlohmann::json to_json(const PotentialParam& c);
nlohmann::json to_json(const SpectrumResult& r);
nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const AsymptoticReport& r);
nlohmann::json to_json(const GrowthReport& r);
nlohmann::json to_json(const InversionResult& r);
nlohmann::json to_json(const ConditionSResult& r);
nlohmann::json to_json(const PairReport& r);
nlohmann::json to_json(const HalvingReport& r);

/// Writes rows of numbers as CSV with 17 significant digits.
void write_csv(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace ndirac
