#include "ndirac/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "ndirac/random_problem.hpp"

namespace ndirac {

namespace {

using json = nlohmann::json;

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& field, const toml::node* n, const std::string& msg) const {
    const int line = n ? static_cast<int>(n->source().begin.line) : 0;
    std::ostringstream out;
    out << source_;
    if (line > 0) out << ":" << line;
    out << ": " << field << ": " << msg;
    throw ParseError(out.str(), field, line);
  }

  void check_keys(const toml::table& t, const std::set<std::string>& allowed, const std::string& field) const {
    for (const auto& [k, v] : t) {
      const std::string key(k.str());
      if (!allowed.count(key)) fail(field.empty() ? key : field + "." + key, &v, "unknown key");
    }
  }

  double number(const toml::node* n, const std::string& field) const {
    if (!n) fail(field, n, "missing value");
    if (auto v = n->value<double>(); v && (n->is_integer() || n->is_floating_point())) {
      if (!std::isfinite(*v)) fail(field, n, "must be finite");
      return *v;
    }
    if (n->is_string() && n->value<std::string>() == "pi") return kPi;
    fail(field, n, "expected a number");
  }

  double number_or(const toml::table& t, const char* key, double fallback, const std::string& field) const {
    const toml::node* n = t.get(key);
    return n ? number(n, field + "." + key) : fallback;
  }

  Complex complex(const toml::node* n, const std::string& field) const {
    if (!n) fail(field, n, "missing value");
    if (n->is_integer() || n->is_floating_point()) return number(n, field);
    if (const auto* a = n->as_array()) {
      if (a->size() != 2) fail(field, n, "complex number must be a number or [re, im]");
      return {number(a->get(0), field + "[0]"), number(a->get(1), field + "[1]")};
    }
    fail(field, n, "expected a number or [re, im]");
  }

  ChebCoeffs<Complex> coeffs(const toml::node* n, const std::string& field) const {
    const auto* a = n ? n->as_array() : nullptr;
    if (!a) fail(field, n, "expected an array of coefficients");
    if (a->empty()) fail(field, n, "coefficient array is empty");
    ChebCoeffs<Complex> c(static_cast<Eigen::Index>(a->size()));
    for (std::size_t k = 0; k < a->size(); ++k)
      c(static_cast<Eigen::Index>(k)) = complex(a->get(k), field + "[" + std::to_string(k) + "]");
    return c;
  }

  Spinor spinor(const toml::node* n, const std::string& field) const {
    const auto* a = n ? n->as_array() : nullptr;
    if (!a || a->size() != 2) fail(field, n, "expected two complex entries");
    return {complex(a->get(0), field + "[0]"), complex(a->get(1), field + "[1]")};
  }

  ScalarField scalar_field(const toml::node* n, const std::string& field, double lo, double hi) const {
    if (!n) return ScalarField::zero();
    try {
      if (n->is_integer() || n->is_floating_point()) {
        const double v = number(n, field);
        return v == 0.0 ? ScalarField::zero() : ScalarField::constant(v);
      }
      if (n->is_array()) return ScalarField::chebyshev(coeffs(n, field), lo, hi);
      const auto* t = n->as_table();
      if (!t) fail(field, n, "expected a number, coefficient array or table");
      if (t->contains("chebyshev")) {
        check_keys(*t, {"chebyshev", "lo", "hi"}, field);
        return ScalarField::chebyshev(coeffs(t->get("chebyshev"), field + ".chebyshev"),
                                      number_or(*t, "lo", lo, field), number_or(*t, "hi", hi, field));
      }
      if (t->contains("constant")) {
        check_keys(*t, {"constant"}, field);
        return ScalarField::constant(complex(t->get("constant"), field + ".constant"));
      }
      if (t->contains("breaks")) {
        check_keys(*t, {"breaks", "panels"}, field);
        const auto* b = t->get("breaks")->as_array();
        const auto* p = t->get("panels") ? t->get("panels")->as_array() : nullptr;
        if (!b) fail(field + ".breaks", t->get("breaks"), "expected an array");
        if (!p) fail(field + ".panels", t->get("panels"), "expected an array of coefficient arrays");
        std::vector<double> breaks;
        for (std::size_t k = 0; k < b->size(); ++k)
          breaks.push_back(number(b->get(k), field + ".breaks[" + std::to_string(k) + "]"));
        std::vector<ChebCoeffs<Complex>> panels;
        for (std::size_t k = 0; k < p->size(); ++k)
          panels.push_back(coeffs(p->get(k), field + ".panels[" + std::to_string(k) + "]"));
        return ScalarField::piecewise(std::move(breaks), std::move(panels));
      }
      if (const auto* h = t->get("hat")) {
        check_keys(*t, {"hat"}, field);
        const auto* ht = h->as_table();
        if (!ht) fail(field + ".hat", h, "expected a table");
        check_keys(*ht, {"center", "half_width", "amplitude"}, field + ".hat");
        return ScalarField::hat(number(ht->get("center"), field + ".hat.center"),
                                number(ht->get("half_width"), field + ".hat.half_width"),
                                complex(ht->get("amplitude"), field + ".hat.amplitude"), lo, hi);
      }
      if (const auto* g = t->get("trig")) {
        check_keys(*t, {"trig"}, field);
        const auto* gt = g->as_table();
        if (!gt) fail(field + ".trig", g, "expected a table");
        check_keys(*gt, {"amplitude", "frequency", "phase"}, field + ".trig");
        return ScalarField::trig(complex(gt->get("amplitude"), field + ".trig.amplitude"),
                                 number_or(*gt, "frequency", 1.0, field + ".trig"),
                                 number_or(*gt, "phase", 0.0, field + ".trig"));
      }
      fail(field, n, "table needs one of chebyshev, constant, breaks, hat, trig");
    } catch (const DomainError& e) {
      fail(field, n, e.what());
    }
  }

 private:
  std::string source_;
};

const toml::table* subtable(const Reader& rd, const toml::table& t, const char* key, const std::string& field) {
  const toml::node* n = t.get(key);
  if (!n) return nullptr;
  const auto* s = n->as_table();
  if (!s) rd.fail(field, n, "expected a table");
  return s;
}

PotentialOmega parse_potential(const Reader& rd, const toml::table& root, double T) {
  const toml::node* node = root.get("potential");
  if (!node) rd.fail("potential", nullptr, "missing [potential] table");
  const auto* pot = node->as_table();
  if (!pot) rd.fail("potential", node, "expected a table");
  rd.check_keys(*pot, {"preset", "constant", "chebyshev", "p", "q"}, "potential");
  try {
    if (const auto* preset = pot->get("preset")) {
      if (pot->size() != 1) rd.fail("potential", node, "preset excludes other potential keys");
      const auto name = preset->value<std::string>();
      if (!name) rd.fail("potential.preset", preset, "expected a string");
      if (*name == "free") return PotentialOmega::free(T);
      if (*name == "example1" || *name == "example2") {
        if (std::abs(T - kPi) > 1e-12) rd.fail("potential.preset", preset, "preset " + *name + " needs T = pi");
        if (*name == "example2") return default_example2_bump();
        return build_example1(default_example1_profile()).P.omega();
      }
      rd.fail("potential.preset", preset, "unknown preset '" + *name + "' (free, example1, example2)");
    }
    if (const auto* c = subtable(rd, *pot, "constant", "potential.constant")) {
      rd.check_keys(*c, {"p", "q"}, "potential.constant");
      const Complex p = c->get("p") ? rd.complex(c->get("p"), "potential.constant.p") : 0.0;
      const Complex q = c->get("q") ? rd.complex(c->get("q"), "potential.constant.q") : 0.0;
      return PotentialOmega::constant(T, p, q);
    }
    if (const auto* c = subtable(rd, *pot, "chebyshev", "potential.chebyshev")) {
      rd.check_keys(*c, {"p", "q"}, "potential.chebyshev");
      ScalarField p = c->get("p") ? ScalarField::chebyshev(rd.coeffs(c->get("p"), "potential.chebyshev.p"), 0.0, T)
                                  : ScalarField::zero();
      ScalarField q = c->get("q") ? ScalarField::chebyshev(rd.coeffs(c->get("q"), "potential.chebyshev.q"), 0.0, T)
                                  : ScalarField::zero();
      return {T, std::move(p), std::move(q)};
    }
    return {T, rd.scalar_field(pot->get("p"), "potential.p", 0.0, T), rd.scalar_field(pot->get("q"), "potential.q", 0.0, T)};
  } catch (const DomainError& e) {
    rd.fail("potential", node, e.what());
  } catch (const DegenerateScenarioError& e) {
    rd.fail("potential.preset", node, e.what());
  }
}

StieltjesForm parse_form(const Reader& rd, const toml::table& root, const char* key, FormLabel label, double T) {
  const std::string field = key;
  const toml::node* node = root.get(key);
  if (!node) rd.fail(field, nullptr, std::string("missing [") + key + "] table");
  const auto* t = node->as_table();
  if (!t) rd.fail(field, node, "expected a table");
  rd.check_keys(*t, {"h", "atoms", "density"}, field);
  const Spinor h = t->get("h") ? rd.spinor(t->get("h"), field + ".h") : Spinor::Zero();
  std::vector<FormAtom> atoms;
  if (const toml::node* an = t->get("atoms")) {
    const auto* arr = an->as_array();
    if (!arr) rd.fail(field + ".atoms", an, "expected an array of {t, w} tables");
    for (std::size_t k = 0; k < arr->size(); ++k) {
      const std::string af = field + ".atoms[" + std::to_string(k) + "]";
      const auto* at = arr->get(k)->as_table();
      if (!at) rd.fail(af, arr->get(k), "expected a table {t, w}");
      rd.check_keys(*at, {"t", "w"}, af);
      atoms.push_back({rd.number(at->get("t"), af + ".t"), rd.spinor(at->get("w"), af + ".w")});
    }
  }
  std::optional<FormDensity> dens;
  if (const auto* dt = subtable(rd, *t, "density", field + ".density")) {
    const std::string df = field + ".density";
    rd.check_keys(*dt, {"d1", "d2", "lo", "hi"}, df);
    const double lo = rd.number_or(*dt, "lo", 0.0, df);
    const double hi = rd.number_or(*dt, "hi", T, df);
    dens = FormDensity{rd.scalar_field(dt->get("d1"), df + ".d1", lo, hi),
                       rd.scalar_field(dt->get("d2"), df + ".d2", lo, hi), lo, hi};
  }
  try {
    return StieltjesForm(T, h, std::move(atoms), std::move(dens), label);
  } catch (const DomainError& e) {
    rd.fail(field, node, e.what());
  }
}

Tolerances parse_tolerances(const Reader& rd, const toml::table& root) {
  Tolerances tol;
  if (const auto* t = subtable(rd, root, "tolerances", "tolerances")) {
    rd.check_keys(*t, {"ode_tol", "root_tol", "pole_guard"}, "tolerances");
    tol.ode = rd.number_or(*t, "ode_tol", tol.ode, "tolerances");
    tol.root = rd.number_or(*t, "root_tol", tol.root, "tolerances");
    tol.pole_guard = rd.number_or(*t, "pole_guard", tol.pole_guard, "tolerances");
  }
  return tol;
}

DiracProblem parse_random(const Reader& rd, const toml::table& root, const toml::table& r) {
  rd.check_keys(root, {"random", "tolerances"}, "");
  rd.check_keys(r, {"seed", "T", "degree", "amplitude", "complex", "atoms", "densities"}, "random");
  const toml::node* s = r.get("seed");
  const auto seed = s ? s->value<std::int64_t>() : std::nullopt;
  if (!seed || *seed < 0) rd.fail("random.seed", s, "expected a non-negative integer");
  RandomProblemOptions opt;
  opt.T = rd.number_or(r, "T", opt.T, "random");
  opt.potential_degree = static_cast<int>(rd.number_or(r, "degree", opt.potential_degree, "random"));
  opt.potential_amplitude = rd.number_or(r, "amplitude", opt.potential_amplitude, "random");
  opt.max_atoms = static_cast<int>(rd.number_or(r, "atoms", opt.max_atoms, "random"));
  if (const auto* c = r.get("complex")) {
    const auto b = c->value<bool>();
    if (!b) rd.fail("random.complex", c, "expected true or false");
    opt.complex_potential = *b;
  }
  if (const auto* c = r.get("densities")) {
    const auto b = c->value<bool>();
    if (!b) rd.fail("random.densities", c, "expected true or false");
    opt.densities = *b;
  }
  const Tolerances tol = parse_tolerances(rd, root);
  opt.ode_tol = tol.ode;
  try {
    return random_problem(static_cast<std::uint64_t>(*seed), opt).with_tolerances(tol);
  } catch (const DomainError& e) {
    rd.fail("random", s, e.what());
  }
}

// Shortest round-trip text for a double, always readable as a TOML float.
std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string fmt(Complex z) {
  if (z.imag() == 0.0) return fmt(z.real());
  return "[" + fmt(z.real()) + ", " + fmt(z.imag()) + "]";
}

std::string fmt(const ChebCoeffs<Complex>& c) {
  std::string s = "[";
  for (Eigen::Index k = 0; k < c.size(); ++k) s += (k ? ", " : "") + fmt(c(k));
  return s + "]";
}

std::string fmt(const Spinor& h) { return "[" + fmt(h(0)) + ", " + fmt(h(1)) + "]"; }

std::string fmt(const ScalarField& f) {
  struct Visitor {
    std::string operator()(const ZeroFn&) const { return "0.0"; }
    std::string operator()(const ConstantFn& c) const { return "{ constant = " + fmt(c.value) + " }"; }
    std::string operator()(const TrigFn& t) const {
      return "{ trig = { amplitude = " + fmt(t.amplitude) + ", frequency = " + fmt(t.frequency) +
             ", phase = " + fmt(t.phase) + " } }";
    }
    std::string operator()(const ChebyshevFn& c) const {
      return "{ chebyshev = " + fmt(c.coeffs) + ", lo = " + fmt(c.lo) + ", hi = " + fmt(c.hi) + " }";
    }
    std::string operator()(const PiecewiseChebyshevFn& p) const {
      std::string s = "{ breaks = [";
      for (std::size_t k = 0; k < p.breaks.size(); ++k) s += (k ? ", " : "") + fmt(p.breaks[k]);
      s += "], panels = [";
      for (std::size_t k = 0; k < p.panels.size(); ++k) s += (k ? ", " : "") + fmt(p.panels[k]);
      return s + "] }";
    }
  };
  return std::visit(Visitor{}, f.rep());
}

void write_form(std::ostream& out, const char* key, const StieltjesForm& f) {
  out << "\n[" << key << "]\n";
  out << "h = " << fmt(f.jump()) << "\n";
  if (!f.atoms().empty()) {
    out << "atoms = [";
    for (std::size_t k = 0; k < f.atoms().size(); ++k)
      out << (k ? ", " : "") << "{ t = " << fmt(f.atoms()[k].t) << ", w = " << fmt(f.atoms()[k].w) << " }";
    out << "]\n";
  }
  if (const auto& d = f.density())
    out << "density = { d1 = " << fmt(d->d1) << ", d2 = " << fmt(d->d2) << ", lo = " << fmt(d->lo)
        << ", hi = " << fmt(d->hi) << " }\n";
}

}  // namespace

DiracProblem parse_problem(const std::string& text, const std::string& source) {
  const Reader rd(source);
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << source << ":" << e.source().begin.line << ": syntax error: " << e.description();
    throw ParseError(msg.str(), "", static_cast<int>(e.source().begin.line));
  }
  if (const auto* r = subtable(rd, root, "random", "random")) return parse_random(rd, root, *r);
  rd.check_keys(root, {"T", "potential", "U1", "U2", "tolerances"}, "");
  const double T = rd.number(root.get("T"), "T");
  if (!(T > 0.0)) rd.fail("T", root.get("T"), "interval length must be positive");
  PotentialOmega omega = parse_potential(rd, root, T);
  StieltjesForm u1 = parse_form(rd, root, "U1", FormLabel::U1, T);
  StieltjesForm u2 = parse_form(rd, root, "U2", FormLabel::U2, T);
  const Tolerances tol = parse_tolerances(rd, root);
  try {
    return {std::move(omega), std::move(u1), std::move(u2), tol};
  } catch (const DomainError& e) {
    rd.fail("tolerances", root.get("tolerances"), e.what());
  }
}

DiracProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file", "", 0);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_problem(text.str(), path);
}

std::string problem_to_toml(const DiracProblem& P) {
  std::ostringstream out;
  out << "T = " << fmt(P.T()) << "\n\n[potential]\n";
  out << "p = " << fmt(P.omega().p()) << "\n";
  out << "q = " << fmt(P.omega().q()) << "\n";
  write_form(out, "U1", P.U1());
  write_form(out, "U2", P.U2());
  const auto& tol = P.tolerances();
  out << "\n[tolerances]\node_tol = " << fmt(tol.ode) << "\nroot_tol = " << fmt(tol.root)
      << "\npole_guard = " << fmt(tol.pole_guard) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("expected a number or [re, im], got " + j.dump(), "", 0);
}

namespace {

json complex_list(const std::vector<Complex>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(complex_to_json(z));
  return a;
}

std::vector<Complex> complex_list_from(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("spectral data: missing '") + key + "'", key, 0);
  const json& a = j.at(key);
  if (!a.is_array()) throw ParseError(std::string("spectral data: '") + key + "' must be an array", key, 0);
  std::vector<Complex> out;
  for (const auto& e : a) {
    try {
      out.push_back(complex_from_json(e));
    } catch (const ParseError& err) {
      throw ParseError(std::string("spectral data: ") + key + ": " + err.what(), key, 0);
    }
  }
  return out;
}

json spinor_json(const Spinor& s) { return json::array({complex_to_json(s(0)), complex_to_json(s(1))}); }

Spinor spinor_from(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 2)
    throw ParseError(std::string("spectral data: '") + key + "' must hold two complex entries", key, 0);
  return {complex_from_json(j.at(key)[0]), complex_from_json(j.at(key)[1])};
}

json window_json(const ComplexWindow& w) { return json::array({w.re_min, w.re_max, w.im_min, w.im_max}); }

json eigen_list(const std::vector<Eigenvalue>& v) {
  json a = json::array();
  for (const auto& e : v)
    a.push_back({{"lambda", complex_to_json(e.lambda)}, {"multiplicity", e.multiplicity}, {"residual", e.residual}});
  return a;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const SpectralData& d) {
  json j;
  j["type"] = d.tag();
  j["window"] = d.window ? window_json(*d.window) : json(nullptr);
  if (const auto* t = std::get_if<TwoSpectra>(&d.data)) {
    j["lambda1"] = complex_list(t->lambda1);
    j["lambda11"] = complex_list(t->lambda11);
  } else if (const auto* w = std::get_if<WeylData>(&d.data)) {
    j["mu"] = complex_list(w->mu);
    j["M"] = complex_list(w->M);
    j["xi"] = complex_list(w->xi);
  } else {
    const auto& s = std::get<ThreeSpectra>(d.data);
    j["l0"] = complex_list(s.l0);
    j["l1"] = complex_list(s.l1);
    j["l2"] = complex_list(s.l2);
    j["a"] = s.a;
    j["h1"] = spinor_json(s.h1);
    j["h0"] = spinor_json(s.h0);
  }
  return j;
}

SpectralData spectral_data_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw ParseError("spectral data: missing string field 'type'", "type", 0);
  const std::string type = j.at("type").get<std::string>();
  SpectralData d;
  if (type == "two_spectra") {
    d.data = TwoSpectra{complex_list_from(j, "lambda1"), complex_list_from(j, "lambda11")};
  } else if (type == "weyl") {
    d.data = WeylData{complex_list_from(j, "mu"), complex_list_from(j, "M"), complex_list_from(j, "xi")};
  } else if (type == "three_spectra") {
    ThreeSpectra s;
    s.l0 = complex_list_from(j, "l0");
    s.l1 = complex_list_from(j, "l1");
    s.l2 = complex_list_from(j, "l2");
    if (!j.contains("a") || !j.at("a").is_number()) throw ParseError("spectral data: 'a' must be a number", "a", 0);
    s.a = j.at("a").get<double>();
    s.h1 = spinor_from(j, "h1");
    s.h0 = spinor_from(j, "h0");
    d.data = s;
  } else {
    throw ParseError("spectral data: unknown type '" + type + "'", "type", 0);
  }
  if (j.contains("window") && !j.at("window").is_null()) {
    const json& w = j.at("window");
    if (!w.is_array() || w.size() != 4) throw ParseError("spectral data: window must be [re0, re1, im0, im1]", "window", 0);
    try {
      d.window = ComplexWindow(w[0].get<double>(), w[1].get<double>(), w[2].get<double>(), w[3].get<double>());
    } catch (const std::exception& e) {
      throw ParseError(std::string("spectral data: window: ") + e.what(), "window", 0);
    }
  }
  try {
    d.validate();
  } catch (const DomainError& e) {
    throw ParseError(std::string("spectral data: ") + e.what(), "", 0);
  }
  return d;
}

SpectralData load_spectral_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file", "", 0);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), "", 0);
  }
  return spectral_data_from_json(j);
}

json to_json(const PotentialParam& c) {
  return {{"T", c.T}, {"degree", c.degree}, {"p", c.p_coeffs()}, {"q", c.q_coeffs()}};
}

json to_json(const SpectrumResult& r) {
  return {{"problem", r.tag},
          {"window", window_json(r.window)},
          {"contour_count", r.contour_count},
          {"total_multiplicity", r.total_multiplicity()},
          {"eigenvalues", eigen_list(r.eigenvalues)}};
}

json to_json(const IdentityReport& r) {
  json e = json::array();
  for (const auto& x : r.entries)
    e.push_back({{"name", x.name}, {"x", finite_or_null(x.x)}, {"residual", x.residual}});
  return {{"lambda", complex_to_json(r.lambda)},
          {"max_residual", r.max_residual()},
          {"entries", e},
          {"skipped", r.skipped}};
}

json to_json(const AsymptoticReport& r) {
  return {{"formula", r.formula},   {"radii", r.radii},
          {"errors", r.errors},     {"floors", r.floors},
          {"monotone_decay", r.monotone_decay}, {"decay_exponent", r.decay_exponent},
          {"final_error", r.final_error()},     {"notes", r.notes}};
}

json to_json(const GrowthReport& r) {
  return {{"quantity", to_string(r.quantity)}, {"x", r.x},
          {"samples", complex_list(r.samples)}, {"ratios", r.ratios},
          {"filtered", complex_list(r.filtered)}, {"max_ratio", r.max_ratio},
          {"bound", r.bound},                   {"bounded", r.bounded},
          {"notes", r.notes}};
}

json to_json(const InversionResult& r) {
  return {{"parameters", to_json(r.c)}, {"misfit", r.misfit},
          {"trace", r.trace},           {"iterations", r.iterations},
          {"converged", r.converged},   {"stop_reason", r.stop_reason},
          {"residuals", complex_list(r.residuals)}};
}

json to_json(const ConditionSResult& r) {
  return {{"holds", r.holds},
          {"min_distance", finite_or_null(r.min_distance)},
          {"lambda1", to_json(r.lambda1)},
          {"xi", to_json(r.xi)}};
}

json to_json(const PairReport& r) {
  json j = {{"scenario", to_string(r.scenario)},
            {"samples", r.samples},
            {"excluded", r.excluded},
            {"max_M_difference", r.max_M_difference},
            {"max_omega_difference", r.max_omega_difference},
            {"max_delta1_difference", r.max_delta1_difference},
            {"max_delta2_difference", r.max_delta2_difference},
            {"potential_distance", r.potential_distance},
            {"condition_S", r.condition_S},
            {"condition_S_distance", finite_or_null(r.condition_S_distance)},
            {"lambda1_count", r.lambda1_count},
            {"xi_count", r.xi_count},
            {"lambda2_count", r.lambda2_count},
            {"tol", r.tol},
            {"is_counterexample", r.is_counterexample},
            {"reproduces", r.reproduces()},
            {"notes", r.notes}};
  if (r.scenario == Scenario::Example1) {
    j["xi_lambda2_distance"] = r.xi_lambda2_distance;
    j["xi_equals_lambda2"] = r.xi_equals_lambda2;
  } else {
    j["lambda2_grid_error"] = r.lambda2_grid_error;
    j["lambda2_grid_complete"] = r.lambda2_grid_complete;
    j["lambda1_lambda2_margin"] = finite_or_null(r.lambda1_lambda2_margin);
  }
  return j;
}

json to_json(const HalvingReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels)
    levels.push_back({{"a", l.a},
                      {"telescoping_residual", l.telescoping_residual},
                      {"telescoping_residual_other", l.telescoping_residual_other},
                      {"delta1_difference", l.delta1_difference},
                      {"delta11_difference", l.delta11_difference}});
  return {{"levels", levels}, {"tol", r.tol}, {"telescoping_ok", r.telescoping_ok}};
}

void write_csv(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << "\n";
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      auto res = std::to_chars(buf, buf + sizeof buf, row[k], std::chars_format::general, 17);
      out << (k ? "," : "") << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    out << "\n";
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace ndirac
