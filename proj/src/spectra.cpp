#include "ndirac/spectra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "ndirac/parallel.hpp"

namespace ndirac {

ComplexWindow::ComplexWindow(double re0, double re1, double im0, double im1)
    : re_min(re0), re_max(re1), im_min(im0), im_max(im1) {
  if (!(re0 < re1) || !(im0 < im1)) throw DomainError("complex window needs re_min < re_max and im_min < im_max");
}

ComplexWindow ComplexWindow::enlarged(double frac) const {
  const double dx = frac * width(), dy = frac * height();
  return {re_min - dx, re_max + dx, im_min - dy, im_max + dy};
}

std::vector<Complex> SpectrumResult::points() const {
  std::vector<Complex> out;
  for (const auto& e : eigenvalues)
    for (int k = 0; k < e.multiplicity; ++k) out.push_back(e.lambda);
  return out;
}

int SpectrumResult::total_multiplicity() const {
  int n = 0;
  for (const auto& e : eigenvalues) n += e.multiplicity;
  return n;
}

namespace {

constexpr double kQuarterTurn = kPi / 4.0;

class PhaseWalker {
 public:
  PhaseWalker(const AnalyticFn& f, const ZeroCountOptions& opt) : f_(f), opt_(opt) {}

  Complex eval(Complex z) const {
    const Complex v = f_(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream msg;
      msg << "non-finite function value at " << z;
      throw IntegrationFailure(msg.str(), z.real());
    }
    const double g = opt_.guard ? opt_.guard(z) : 0.0;
    if (std::abs(v) <= g) {
      std::ostringstream msg;
      msg << "zero on the counting contour near " << z;
      throw BoundaryZeroError(msg.str(), z);
    }
    return v;
  }

  double segment(Complex a, Complex fa, Complex b, Complex fb, int depth) const {
    const Complex m = 0.5 * (a + b);
    const Complex fm = eval(m);
    const double d1 = std::arg(fm / fa);
    const double d2 = std::arg(fb / fm);
    if (std::abs(d1) <= kQuarterTurn && std::abs(d2) <= kQuarterTurn) return d1 + d2;
    if (depth >= opt_.max_depth) {
      std::ostringstream msg;
      msg << "phase unresolved near " << m << " (zero on or next to the contour)";
      throw BoundaryZeroError(msg.str(), m);
    }
    return segment(a, fa, m, fm, depth + 1) + segment(m, fm, b, fb, depth + 1);
  }

 private:
  const AnalyticFn& f_;
  const ZeroCountOptions& opt_;
};

}  // namespace

int count_zeros(const AnalyticFn& f, const ComplexWindow& w, const ZeroCountOptions& opt) {
  const std::array<Complex, 5> corners{Complex(w.re_min, w.im_min), Complex(w.re_max, w.im_min),
                                       Complex(w.re_max, w.im_max), Complex(w.re_min, w.im_max),
                                       Complex(w.re_min, w.im_min)};
  std::vector<Complex> pts;
  for (int e = 0; e < 4; ++e) {
    const Complex a = corners[static_cast<std::size_t>(e)], b = corners[static_cast<std::size_t>(e + 1)];
    const int n = std::max(opt.min_samples_per_edge, static_cast<int>(std::ceil(std::abs(b - a) * opt.samples_per_unit)));
    for (int k = 0; k < n; ++k) pts.push_back(a + (b - a) * (static_cast<double>(k) / n));
  }
  pts.push_back(pts.front());

  const PhaseWalker walker(f, opt);
  std::vector<Complex> vals(pts.size());
  parallel_for(pts.size() - 1, [&](std::size_t i) { vals[i] = walker.eval(pts[i]); });
  vals.back() = vals.front();
  std::vector<double> phase(pts.size() - 1);
  parallel_for(phase.size(),
               [&](std::size_t i) { phase[i] = walker.segment(pts[i], vals[i], pts[i + 1], vals[i + 1], 0); });
  double total = 0.0;
  for (double d : phase) total += d;
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

namespace {

struct Box {
  ComplexWindow w;
  int count;
  int depth;
};

struct Newton {
  Complex z;
  double residual;
  bool converged;
};

Newton newton_polish(const AnalyticFn& f, const AnalyticFn& df, Complex z, int m, const ComplexWindow& region,
                     const FindZerosOptions& opt) {
  const ComplexWindow fence = region.enlarged(0.5);
  for (int it = 0; it < opt.max_newton; ++it) {
    const Complex fz = f(z);
    const Complex dz = df(z);
    if (std::abs(dz) == 0.0 || !std::isfinite(std::abs(dz))) return {z, std::abs(fz), false};
    const Complex step = static_cast<double>(m) * fz / dz;
    z -= step;
    if (!fence.contains(z)) return {z, std::numeric_limits<double>::infinity(), false};
    if (std::abs(step) <= 1e-13 * (1.0 + std::abs(z))) {
      return {z, std::abs(f(z)), true};
    }
  }
  // Multiple zeros stall at the noise floor; accept if the residual is small anyway.
  return {z, std::abs(f(z)), true};
}

double scale_at(const FindZerosOptions& opt, Complex z) { return opt.scale ? opt.scale(z) : 1.0; }

/// Counts in the four quarter boxes of b, trying a few off-centre splits when a zero sits on a split line.
std::optional<std::array<Box, 4>> quarter(const AnalyticFn& f, const Box& b, const FindZerosOptions& opt) {
  static constexpr std::array<std::pair<double, double>, 6> fracs{
      {{0.5, 0.5}, {0.471, 0.523}, {0.538, 0.462}, {0.433, 0.557}, {0.574, 0.419}, {0.389, 0.611}}};
  for (auto [fx, fy] : fracs) {
    const double xm = b.w.re_min + fx * b.w.width();
    const double ym = b.w.im_min + fy * b.w.height();
    std::array<Box, 4> kids{Box{{b.w.re_min, xm, b.w.im_min, ym}, 0, b.depth + 1},
                            Box{{xm, b.w.re_max, b.w.im_min, ym}, 0, b.depth + 1},
                            Box{{b.w.re_min, xm, ym, b.w.im_max}, 0, b.depth + 1},
                            Box{{xm, b.w.re_max, ym, b.w.im_max}, 0, b.depth + 1}};
    try {
      int sum = 0;
      for (auto& k : kids) {
        k.count = count_zeros(f, k.w, opt.count);
        sum += k.count;
      }
      if (sum == b.count) return kids;
    } catch (const BoundaryZeroError&) {
    }
  }
  return std::nullopt;
}

}  // namespace

SpectrumResult find_zeros(const AnalyticFn& f, const AnalyticFn& df, const ComplexWindow& w,
                          const FindZerosOptions& opt) {
  SpectrumResult out;
  out.window = w;
  out.contour_count = count_zeros(f, w, opt.count);
  if (out.contour_count < 0) throw UnresolvedClusterError("negative winding number", w.re_min, w.re_max, w.im_min, w.im_max);

  std::vector<Box> level;
  if (out.contour_count > 0) level.push_back({w, out.contour_count, 0});
  while (!level.empty()) {
    std::vector<std::optional<Eigenvalue>> found(level.size());
    std::vector<std::vector<Box>> kids(level.size());
    parallel_for(level.size(), [&](std::size_t i) {
      const Box& b = level[i];
      const int m = b.count;
      const Newton nw = newton_polish(f, df, b.w.center(), m, b.w, opt);
      const double side = std::max(b.w.width(), b.w.height());
      bool accept = nw.converged && b.w.contains(nw.z, 1e-12 * (1.0 + std::abs(nw.z))) &&
                    nw.residual <= opt.tol * scale_at(opt, nw.z);
      if (accept && m > 1) {
        // The polished point must carry the whole count of the box.
        const double r = std::clamp(1e-4 * side, 1e-9, 1e-3);
        try {
          const ComplexWindow tiny(nw.z.real() - r, nw.z.real() + r, nw.z.imag() - r, nw.z.imag() + r);
          accept = count_zeros(f, tiny, opt.count) == m;
        } catch (const BoundaryZeroError&) {
          accept = false;
        }
      }
      if (accept) {
        found[i] = Eigenvalue{nw.z, m, nw.residual};
        return;
      }
      if (side < opt.min_box) {
        const Complex c = b.w.center();
        const double res = std::abs(f(c));
        if (res <= opt.tol * scale_at(opt, c)) {
          found[i] = Eigenvalue{c, m, res};
          return;
        }
      }
      if (side < opt.min_box || b.depth >= opt.max_depth)
        throw UnresolvedClusterError("zero cluster not resolved", b.w.re_min, b.w.re_max, b.w.im_min, b.w.im_max);
      auto q = quarter(f, b, opt);
      if (!q) throw UnresolvedClusterError("inconsistent sub-box counts", b.w.re_min, b.w.re_max, b.w.im_min, b.w.im_max);
      for (const auto& k : *q)
        if (k.count > 0) kids[i].push_back(k);
    });
    std::vector<Box> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (found[i]) out.eigenvalues.push_back(*found[i]);
      next.insert(next.end(), kids[i].begin(), kids[i].end());
    }
    level = std::move(next);
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
  });
  if (out.total_multiplicity() != out.contour_count)
    throw UnresolvedClusterError("multiplicities do not add up to the contour count", w.re_min, w.re_max, w.im_min,
                                 w.im_max);
  return out;
}

Complex char_derivative(const DiracProblem& P, CharKind kind, Complex lambda) {
  return char_derivative_from_rows(form_rows_with_derivative(P, lambda), kind);
}

std::string to_string(ProblemTag tag) {
  switch (tag) {
    case ProblemTag::L0: return "L0";
    case ProblemTag::L1: return "L1";
    case ProblemTag::L2: return "L2";
    case ProblemTag::L11: return "L11";
    case ProblemTag::L0p: return "L0'";
    case ProblemTag::L1p: return "L1'";
    case ProblemTag::L2p: return "L2'";
  }
  return "?";
}

ProblemTag problem_tag_from_string(const std::string& name) {
  if (name == "L0") return ProblemTag::L0;
  if (name == "L1") return ProblemTag::L1;
  if (name == "L2") return ProblemTag::L2;
  if (name == "L11") return ProblemTag::L11;
  if (name == "L0'" || name == "L0p") return ProblemTag::L0p;
  if (name == "L1'" || name == "L1p") return ProblemTag::L1p;
  if (name == "L2'" || name == "L2p") return ProblemTag::L2p;
  throw UnsupportedKindError("unknown problem tag '" + name + "'");
}

CharKind char_kind_for(ProblemTag tag) {
  switch (tag) {
    case ProblemTag::L0:
    case ProblemTag::L0p: return CharKind::Omega;
    case ProblemTag::L1:
    case ProblemTag::L1p: return CharKind::Delta1;
    case ProblemTag::L2:
    case ProblemTag::L2p: return CharKind::Delta2;
    case ProblemTag::L11: return CharKind::Delta11;
  }
  throw UnsupportedKindError("unknown problem tag");
}

DiracProblem two_point_problem(const PotentialOmega& omega, const Spinor& h1, const Spinor& h0, double a,
                               Tolerances tol) {
  const double T = omega.T();
  if (!(a > 0.0 && a < T)) throw DomainError("interior point a must lie in (0, T)");
  if (std::abs(h0(0)) + std::abs(h0(1)) == 0.0) throw DomainError("interior condition needs |h01| + |h02| != 0");
  return {omega, StieltjesForm::jump_only(T, h1, FormLabel::U1), StieltjesForm::point(T, a, h0, FormLabel::U2), tol};
}

bool is_two_point_problem(const DiracProblem& P, double* a) {
  const auto& u1 = P.U1();
  const auto& u2 = P.U2();
  if (!u1.atoms().empty() || u1.density()) return false;
  if (u2.density() || u2.atoms().size() != 1 || u2.jump().norm() != 0.0) return false;
  const double t = u2.atoms().front().t;
  if (!(t < P.T())) return false;
  if (a) *a = t;
  return true;
}

void check_not_degenerate(const CharacteristicEvaluator& ev, CharKind kind) {
  const DiracProblem& P = ev.problem();
  const double T = P.T();
  std::array<Complex, 20> probes;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const double r = 0.37 + 1.9 * static_cast<double>(k);
    const double th = 0.3 + 2.39996 * static_cast<double>(k);  // golden-angle spread
    probes[k] = Complex(r * std::cos(th), 0.8 * std::sin(th));
  }
  std::array<bool, 20> small{};
  parallel_for(probes.size(), [&](std::size_t k) {
    small[k] = near_pole(ev(kind, probes[k]), probes[k], T, P.tolerances().pole_guard);
  });
  if (std::all_of(small.begin(), small.end(), [](bool b) { return b; }))
    throw DegenerateCharacteristicError("characteristic function " + to_string(kind) +
                                        " vanishes identically (all probe values below the guard)");
}

SpectrumResult spectrum(const CharacteristicEvaluator& ev, ProblemTag tag, const ComplexWindow& w, double tol) {
  const DiracProblem& P = ev.problem();
  const double T = P.T();
  if ((tag == ProblemTag::L0p || tag == ProblemTag::L1p || tag == ProblemTag::L2p) && !is_two_point_problem(P))
    throw UnsupportedKindError("primed problems need U1 = jump only and U2 = one interior atom");
  const CharKind kind = char_kind_for(tag);
  check_not_degenerate(ev, kind);
  if (tol <= 0.0) tol = P.tolerances().root;

  FindZerosOptions opt;
  opt.tol = tol;
  const double guard = P.tolerances().pole_guard;
  opt.scale = [T](Complex z) { return growth_scale(z, T); };
  opt.count.guard = [T, guard](Complex z) { return guard * growth_scale(z, T); };
  opt.count.samples_per_unit = std::max(4.0, 2.0 * T);
  const AnalyticFn f = [&ev, kind](Complex z) { return ev(kind, z); };
  const AnalyticFn df = [&ev, kind](Complex z) { return ev.derivative(kind, z); };

  std::mt19937_64 rng(0x5eedULL);
  const double nudge = std::sqrt(tol);
  std::uniform_real_distribution<double> offset(nudge, 2.0 * nudge);
  ComplexWindow win = w;
  for (int attempt = 0;; ++attempt) {
    try {
      SpectrumResult r = find_zeros(f, df, win, opt);
      r.tag = to_string(tag);
      return r;
    } catch (const BoundaryZeroError&) {
      if (attempt >= 5) throw;
      win = win.grown(offset(rng), offset(rng), offset(rng), offset(rng));
    }
  }
}

SpectrumResult spectrum(const DiracProblem& P, ProblemTag tag, const ComplexWindow& w, double tol) {
  const CharacteristicEvaluator ev(P);
  return spectrum(ev, tag, w, tol);
}

double min_distance(const std::vector<Eigenvalue>& A, const std::vector<Eigenvalue>& B) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : A)
    for (const auto& b : B) best = std::min(best, std::abs(a.lambda - b.lambda));
  return best;
}

ConditionSResult check_condition_S(const CharacteristicEvaluator& ev, const ComplexWindow& w, double sep) {
  ConditionSResult out;
  out.lambda1 = spectrum(ev, ProblemTag::L1, w);
  out.xi = spectrum(ev, ProblemTag::L0, w);
  out.min_distance = min_distance(out.lambda1.eigenvalues, out.xi.eigenvalues);
  out.holds = out.min_distance > sep;
  return out;
}

ConditionSResult check_condition_S(const DiracProblem& P, const ComplexWindow& w, double sep) {
  const CharacteristicEvaluator ev(P);
  return check_condition_S(ev, w, sep);
}

}  // namespace ndirac
