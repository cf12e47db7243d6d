#pragma once

// Explicit Runge-Kutta 8(5,3) pair of Dormand & Prince (DOP853) with the
// 7th-order continuous extension. Coefficients follow Hairer, Norsett & Wanner,
// "Solving ODEs I", as tabulated in the reference DOP853 code.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include <Eigen/Core>

#include "ndirac/types.hpp"

namespace ndirac {

namespace dop853 {

inline constexpr int kStages = 12;
inline constexpr int kStagesExtended = 16;

inline constexpr std::array<double, kStagesExtended> C = {
    0.0,
    0.526001519587677318785587544488e-01,
    0.789002279381515978178381316732e-01,
    0.118350341907227396726757197510,
    0.281649658092772603273242802490,
    0.333333333333333333333333333333,
    0.25,
    0.307692307692307692307692307692,
    0.651282051282051282051282051282,
    0.6,
    0.857142857142857142857142857142,
    1.0,
    1.0,
    0.1,
    0.2,
    0.777777777777777777777777777778};

using Table = std::array<std::array<double, kStagesExtended>, kStagesExtended>;

inline const Table& A() {
  static const Table a = [] {
    Table t{};
    t[1][0] = 5.26001519587677318785587544488e-2;
    t[2][0] = 1.97250569845378994544595329183e-2;
    t[2][1] = 5.91751709536136983633785987549e-2;
    t[3][0] = 2.95875854768068491816892993775e-2;
    t[3][2] = 8.87627564304205475450678981324e-2;
    t[4][0] = 2.41365134159266685502369798665e-1;
    t[4][2] = -8.84549479328286085344864962717e-1;
    t[4][3] = 9.24834003261792003115737966543e-1;
    t[5][0] = 3.7037037037037037037037037037e-2;
    t[5][3] = 1.70828608729473871279604482173e-1;
    t[5][4] = 1.25467687566822425016691814123e-1;
    t[6][0] = 3.7109375e-2;
    t[6][3] = 1.70252211019544039314978060272e-1;
    t[6][4] = 6.02165389804559606850219397283e-2;
    t[6][5] = -1.7578125e-2;
    t[7][0] = 3.70920001185047927108779319836e-2;
    t[7][3] = 1.70383925712239993810214054705e-1;
    t[7][4] = 1.07262030446373284651809199168e-1;
    t[7][5] = -1.53194377486244017527936158236e-2;
    t[7][6] = 8.27378916381402288758473766002e-3;
    t[8][0] = 6.24110958716075717114429577812e-1;
    t[8][3] = -3.36089262944694129406857109825;
    t[8][4] = -8.68219346841726006818189891453e-1;
    t[8][5] = 2.75920996994467083049415600797e1;
    t[8][6] = 2.01540675504778934086186788979e1;
    t[8][7] = -4.34898841810699588477366255144e1;
    t[9][0] = 4.77662536438264365890433908527e-1;
    t[9][3] = -2.48811461997166764192642586468;
    t[9][4] = -5.90290826836842996371446475743e-1;
    t[9][5] = 2.12300514481811942347288949897e1;
    t[9][6] = 1.52792336328824235832596922938e1;
    t[9][7] = -3.32882109689848629194453265587e1;
    t[9][8] = -2.03312017085086261358222928593e-2;
    t[10][0] = -9.3714243008598732571704021658e-1;
    t[10][3] = 5.18637242884406370830023853209;
    t[10][4] = 1.09143734899672957818500254654;
    t[10][5] = -8.14978701074692612513997267357;
    t[10][6] = -1.85200656599969598641566180701e1;
    t[10][7] = 2.27394870993505042818970056734e1;
    t[10][8] = 2.49360555267965238987089396762;
    t[10][9] = -3.0467644718982195003823669022;
    t[11][0] = 2.27331014751653820792359768449;
    t[11][3] = -1.05344954667372501984066689879e1;
    t[11][4] = -2.00087205822486249909675718444;
    t[11][5] = -1.79589318631187989172765950534e1;
    t[11][6] = 2.79488845294199600508499808837e1;
    t[11][7] = -2.85899827713502369474065508674;
    t[11][8] = -8.87285693353062954433549289258;
    t[11][9] = 1.23605671757943030647266201528e1;
    t[11][10] = 6.43392746015763530355970484046e-1;
    t[12][0] = 5.42937341165687622380535766363e-2;
    t[12][5] = 4.45031289275240888144113950566;
    t[12][6] = 1.89151789931450038304281599044;
    t[12][7] = -5.8012039600105847814672114227;
    t[12][8] = 3.1116436695781989440891606237e-1;
    t[12][9] = -1.52160949662516078556178806805e-1;
    t[12][10] = 2.01365400804030348374776537501e-1;
    t[12][11] = 4.47106157277725905176885569043e-2;
    t[13][0] = 5.61675022830479523392909219681e-2;
    t[13][6] = 2.53500210216624811088794765333e-1;
    t[13][7] = -2.46239037470802489917441475441e-1;
    t[13][8] = -1.24191423263816360469010140626e-1;
    t[13][9] = 1.5329179827876569731206322685e-1;
    t[13][10] = 8.20105229563468988491666602057e-3;
    t[13][11] = 7.56789766054569976138603589584e-3;
    t[13][12] = -8.298e-3;
    t[14][0] = 3.18346481635021405060768473261e-2;
    t[14][5] = 2.83009096723667755288322961402e-2;
    t[14][6] = 5.35419883074385676223797384372e-2;
    t[14][7] = -5.49237485713909884646569340306e-2;
    t[14][10] = -1.08347328697249322858509316994e-4;
    t[14][11] = 3.82571090835658412954920192323e-4;
    t[14][12] = -3.40465008687404560802977114492e-4;
    t[14][13] = 1.41312443674632500278074618366e-1;
    t[15][0] = -4.28896301583791923408573538692e-1;
    t[15][5] = -4.69762141536116384314449447206;
    t[15][6] = 7.68342119606259904184240953878;
    t[15][7] = 4.06898981839711007970213554331;
    t[15][8] = 3.56727187455281109270669543021e-1;
    t[15][12] = -1.39902416515901462129418009734e-3;
    t[15][13] = 2.9475147891527723389556272149;
    t[15][14] = -9.15095847217987001081870187138;
    return t;
  }();
  return a;
}

/// 5th-order error estimator weights (13 entries; last multiplies f(x + h, y_new)).
inline constexpr std::array<double, 13> E5 = {
    0.1312004499419488073250102996e-1, 0.0, 0.0, 0.0, 0.0, -0.1225156446376204440720569753e+1,
    -0.4957589496572501915214079952, 0.1664377182454986536961530415e+1, -0.3503288487499736816886487290,
    0.3341791187130174790297318841, 0.8192320648511571246570742613e-1, -0.2235530786388629525884427845e-1, 0.0};

/// 3rd-order estimator: B minus the embedded weights.
inline const std::array<double, 13>& E3() {
  static const std::array<double, 13> e = [] {
    std::array<double, 13> r{};
    for (int i = 0; i < kStages; ++i) r[static_cast<std::size_t>(i)] = A()[12][static_cast<std::size_t>(i)];
    r[0] -= 0.244094488188976377952755905512;
    r[8] -= 0.733846688281611857341361741547;
    r[11] -= 0.220588235294117647058823529412e-1;
    return r;
  }();
  return e;
}

/// Dense-output rows for the interpolant coefficients F[3..6].
inline const std::array<std::array<double, kStagesExtended>, 4>& D() {
  static const std::array<std::array<double, kStagesExtended>, 4> d = [] {
    std::array<std::array<double, kStagesExtended>, 4> t{};
    t[0] = {-0.84289382761090128651353491142e+1, 0, 0, 0, 0, 0.56671495351937776962531783590,
            -0.30689499459498916912797304727e+1, 0.23846676565120698287728149680e+1,
            0.21170345824450282767155149946e+1, -0.87139158377797299206789907490,
            0.22404374302607882758541771650e+1, 0.63157877876946881815570249290,
            -0.88990336451333310820698117400e-1, 0.18148505520854727256656404962e+2,
            -0.91946323924783554000451984436e+1, -0.44360363875948939664310572000e+1};
    t[1] = {0.10427508642579134603413151009e+2, 0, 0, 0, 0, 0.24228349177525818288430175319e+3,
            0.16520045171727028198505394887e+3, -0.37454675472269020279518312152e+3,
            -0.22113666853125306036270938578e+2, 0.77334326684722638389603898808e+1,
            -0.30674084731089398182061213626e+2, -0.93321305264302278729567221706e+1,
            0.15697238121770843886131091075e+2, -0.31139403219565177677282850411e+2,
            -0.93529243588444783865713862664e+1, 0.35816841486394083752465898540e+2};
    t[2] = {0.19985053242002433820987653617e+2, 0, 0, 0, 0, -0.38703730874935176555105901742e+3,
            -0.18917813819516756882830838328e+3, 0.52780815920542364900561016686e+3,
            -0.11573902539959630126141871134e+2, 0.68812326946963000169666922661e+1,
            -0.10006050966910838403183860980e+1, 0.77771377980534432092869265740,
            -0.27782057523535084065932004339e+1, -0.60196695231264120758267380846e+2,
            0.84320405506677161018159903784e+2, 0.11992291136182789328035130030e+2};
    t[3] = {-0.25693933462703749003312586129e+2, 0, 0, 0, 0, -0.15418974869023643374053993627e+3,
            -0.23152937917604549567536039109e+3, 0.35763911791061412378285349910e+3,
            0.93405324183624310003907691704e+2, -0.37458323136451633156875139351e+2,
            0.10409964950896230045147246184e+3, 0.29840293426660503123344363579e+2,
            -0.43533456590011143754432175058e+2, 0.96324553959188282948394950600e+2,
            -0.39177261675615439165231486172e+2, -0.14972683625798562581422125276e+3};
    return t;
  }();
  return d;
}

}  // namespace dop853

/// Piecewise polynomial dense output of an integration run. Steps are stored in
/// integration order; x_start() is the anchor and may exceed x_end().
template <class State>
class DenseTrajectory {
 public:
  struct Step {
    double x0 = 0.0;
    double x1 = 0.0;
    double h = 0.0;
    State y0;
    std::array<State, 7> F;
  };

  DenseTrajectory() = default;
  DenseTrajectory(double x_start, const State& y_start, double tol)
      : x_start_(x_start), x_end_(x_start), y_start_(y_start), tol_(tol) {}

  double x_start() const { return x_start_; }
  double x_end() const { return x_end_; }
  double lo() const { return std::min(x_start_, x_end_); }
  double hi() const { return std::max(x_start_, x_end_); }
  bool covers(double x) const { return x >= lo() && x <= hi(); }
  double tolerance() const { return tol_; }
  std::size_t accepted_steps() const { return steps_.size(); }
  const std::vector<Step>& steps() const { return steps_; }

  /// Interpolated state at x (exactly the anchor value at x_start).
  State operator()(double x) const {
    if (x == x_start_ || steps_.empty()) return y_start_;
    const Step& s = locate(x);
    const double theta = (x - s.x0) / s.h;
    State v = s.F[6];
    v *= theta;
    for (int j = 5; j >= 0; --j) {
      v += s.F[static_cast<std::size_t>(j)];
      v *= (j % 2 == 0) ? theta : (1.0 - theta);
    }
    return s.y0 + v;
  }

  /// d/dx of the interpolant.
  State derivative(double x) const {
    const Step& s = locate(x);
    const double theta = (x - s.x0) / s.h;
    State v = State::Zero();
    State dv = State::Zero();
    for (int j = 6; j >= 0; --j) {
      v += s.F[static_cast<std::size_t>(j)];
      const bool even = j % 2 == 0;
      const double m = even ? theta : 1.0 - theta;
      const double dm = even ? 1.0 : -1.0;
      dv = dv * m + v * dm;
      v *= m;
    }
    return dv / s.h;
  }

  /// Step boundaries in increasing x.
  std::vector<double> mesh() const {
    std::vector<double> m{x_start_};
    for (const auto& s : steps_) m.push_back(s.x1);
    std::sort(m.begin(), m.end());
    return m;
  }

  void push(Step s) {
    x_end_ = s.x1;
    progress_.push_back(direction() * (x_end_ - x_start_));
    steps_.push_back(std::move(s));
  }

 private:
  double direction() const { return steps_.empty() ? (x_end_ >= x_start_ ? 1.0 : -1.0) : (steps_.front().h > 0 ? 1.0 : -1.0); }

  const Step& locate(double x) const {
    const double dir = steps_.front().h > 0 ? 1.0 : -1.0;
    const double d = dir * (x - x_start_);
    auto it = std::lower_bound(progress_.begin(), progress_.end(), d);
    std::size_t i = it == progress_.end() ? steps_.size() - 1 : static_cast<std::size_t>(it - progress_.begin());
    return steps_[i];
  }

  double x_start_ = 0.0;
  double x_end_ = 0.0;
  State y_start_;
  double tol_ = 0.0;
  std::vector<Step> steps_;
  std::vector<double> progress_;
};

struct Dop853Options {
  double rtol = 1e-10;
  double atol = 1e-10;
  double initial_step = 0.01;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 2'000'000;
};

/// Integrates y' = rhs(x, y, hint) from x0 to x1, landing exactly on every stop
/// in `stops` that lies strictly between them. `hint` passed to rhs is the
/// midpoint of the current stop segment so piecewise coefficients pick a side.
template <class State, class Rhs>
DenseTrajectory<State> integrate_dop853(Rhs&& rhs, double x0, const State& y0, double x1,
                                        std::span<const double> stops, const Dop853Options& opt) {
  using namespace dop853;
  DenseTrajectory<State> traj(x0, y0, std::max(opt.rtol, opt.atol));
  if (x1 == x0) return traj;
  const double dir = x1 > x0 ? 1.0 : -1.0;

  std::vector<double> nodes{x0};
  for (double s : stops)
    if (dir * (s - x0) > 0 && dir * (x1 - s) > 0) nodes.push_back(s);
  nodes.push_back(x1);
  std::sort(nodes.begin(), nodes.end(), [dir](double a, double b) { return dir * a < dir * b; });
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  const Table& a = A();
  const auto& e3 = E3();
  const auto& d = D();
  std::array<State, kStagesExtended> K;
  State y = y0;
  double h_abs = std::min(opt.initial_step, opt.max_step);
  std::size_t n_steps = 0;

  auto error_norm = [&](const State& y_old, const State& y_new, double h) {
    double s5 = 0.0, s3 = 0.0;
    for (Eigen::Index i = 0; i < y_old.size(); ++i) {
      const double scale = opt.atol + opt.rtol * std::max(std::abs(y_old(i)), std::abs(y_new(i)));
      Complex e5(0), e3v(0);
      for (int s = 0; s < 13; ++s) {
        e5 += E5[static_cast<std::size_t>(s)] * K[static_cast<std::size_t>(s)](i);
        e3v += e3[static_cast<std::size_t>(s)] * K[static_cast<std::size_t>(s)](i);
      }
      s5 += std::norm(e5 / scale);
      s3 += std::norm(e3v / scale);
    }
    if (s5 == 0.0 && s3 == 0.0) return 0.0;
    const double denom = s5 + 0.01 * s3;
    return std::abs(h) * s5 / std::sqrt(denom * static_cast<double>(y_old.size()));
  };

  for (std::size_t seg = 0; seg + 1 < nodes.size(); ++seg) {
    const double seg_end = nodes[seg + 1];
    const double hint = 0.5 * (nodes[seg] + seg_end);
    double x = nodes[seg];
    State f = rhs(x, y, hint);
    while (dir * (seg_end - x) > 0) {
      if (++n_steps > opt.max_steps) throw IntegrationFailure("DOP853: maximum number of steps exceeded", x);
      const double min_step = 10.0 * std::abs(std::nextafter(x, dir * std::numeric_limits<double>::infinity()) - x);
      bool accepted = false;
      bool rejected = false;
      State y_new;
      double h = 0.0;
      double x_new = x;
      while (!accepted) {
        if (h_abs < min_step) {
          std::ostringstream msg;
          msg << "DOP853: step size underflow at x = " << x;
          throw IntegrationFailure(msg.str(), x);
        }
        h = dir * std::min(h_abs, opt.max_step);
        x_new = x + h;
        if (dir * (x_new - seg_end) > 0 || std::abs(seg_end - x_new) < 1e-3 * std::abs(h)) x_new = seg_end;
        h = x_new - x;

        K[0] = f;
        for (int s = 1; s < kStages; ++s) {
          State dy = State::Zero();
          for (int j = 0; j < s; ++j) {
            const double c = a[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)];
            if (c != 0.0) dy += c * K[static_cast<std::size_t>(j)];
          }
          K[static_cast<std::size_t>(s)] = rhs(x + C[static_cast<std::size_t>(s)] * h, State(y + h * dy), hint);
        }
        State incr = State::Zero();
        for (int j = 0; j < kStages; ++j) {
          const double b = a[12][static_cast<std::size_t>(j)];
          if (b != 0.0) incr += b * K[static_cast<std::size_t>(j)];
        }
        y_new = y + h * incr;
        K[12] = rhs(x_new, y_new, hint);

        const double err = error_norm(y, y_new, h);
        if (!std::isfinite(err)) throw IntegrationFailure("DOP853: non-finite error estimate", x);
        if (err < 1.0) {
          double factor = err == 0.0 ? 10.0 : std::min(10.0, 0.9 * std::pow(err, -1.0 / 8.0));
          if (rejected) factor = std::min(1.0, factor);
          h_abs = std::abs(h) * factor;
          accepted = true;
        } else {
          h_abs = std::abs(h) * std::max(0.2, 0.9 * std::pow(err, -1.0 / 8.0));
          rejected = true;
        }
      }

      // Continuous extension.
      for (int s = 13; s < kStagesExtended; ++s) {
        State dy = State::Zero();
        for (int j = 0; j < s; ++j) {
          const double c = a[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)];
          if (c != 0.0) dy += c * K[static_cast<std::size_t>(j)];
        }
        K[static_cast<std::size_t>(s)] = rhs(x + C[static_cast<std::size_t>(s)] * h, State(y + h * dy), hint);
      }
      typename DenseTrajectory<State>::Step step;
      step.x0 = x;
      step.x1 = x_new;
      step.h = h;
      step.y0 = y;
      const State delta = y_new - y;
      step.F[0] = delta;
      step.F[1] = h * K[0] - delta;
      step.F[2] = 2.0 * delta - h * (K[12] + K[0]);
      for (int r = 0; r < 4; ++r) {
        State acc = State::Zero();
        for (int j = 0; j < kStagesExtended; ++j) {
          const double c = d[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
          if (c != 0.0) acc += c * K[static_cast<std::size_t>(j)];
        }
        step.F[static_cast<std::size_t>(3 + r)] = h * acc;
      }
      traj.push(std::move(step));

      x = x_new;
      y = y_new;
      f = K[12];
    }
  }
  return traj;
}

}  // namespace ndirac
