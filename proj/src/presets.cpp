#include "qsplit/presets.hpp"

#include "qsplit/kinetic.hpp"
#include "qsplit/matfun.hpp"
#include "qsplit/shear.hpp"
#include "qsplit/triangular.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qsplit {

using Eigen::Matrix2d;
using Eigen::Matrix3d;
using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::VectorXd;

namespace {
constexpr double kPi = std::numbers::pi;

double get(const ParamMap& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void check_keys(const ParamMap& p, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : p) {
    bool ok = false;
    for (const char* a : allowed)
      if (k == a) ok = true;
    if (!ok) throw std::invalid_argument("unknown model parameter: " + k);
  }
}

Field sampled(const GridSpec& grid,
              const std::function<cplx(const VectorXd&)>& f0) {
  Field f = Field::zero(grid);
  for_each_node(grid, f.axis_state,
                [&](std::int64_t lin, const VectorXd& x) { f.values[lin] = f0(x); });
  return f;
}

std::function<std::function<cplx(const VectorXd&)>(double)> transport_exact(
    const MatrixXd& m, const std::function<cplx(const VectorXd&)>& f0) {
  return [m, f0](double t) {
    const MatrixXd flow = mat_exp((t * m).cast<cplx>()).real();
    return [flow, f0](const VectorXd& x) { return f0(flow * x); };
  };
}

}  // namespace

Scheme scheme_from_string(const std::string& s) {
  if (s == "esqm") return Scheme::esqm;
  if (s == "esr") return Scheme::esr;
  if (s == "strang") return Scheme::strang;
  if (s == "bw") return Scheme::bw;
  throw std::invalid_argument("unknown scheme: " + s);
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::esqm: return "esqm";
    case Scheme::esr: return "esr";
    case Scheme::strang: return "strang";
    case Scheme::bw: return "bw";
  }
  return "?";
}

QuadraticSymbol Preset::symbol() const {
  switch (family) {
    case ModelFamily::transport: return transport_symbol(M);
    case ModelFamily::kfp: return kfp_symbol();
    case ModelFamily::fp: return fp_symbol();
    case ModelFamily::qm: return qm_symbol(B, Vm);
  }
  throw std::logic_error("preset: bad family");
}

Vector3d periodic_lambdas() {
  Vector3d lam(2.27017996551810, 2.53418020791380, 5.22286204879033);
  for (int j = 0; j < 3; ++j) {
    double x = lam[j];
    for (int it = 0; it < 80; ++it) {
      const double f = ((7200.0 * x - 72196.0) * x + 222088.0) * x - 216341.0;
      const double fp = (21600.0 * x - 144392.0) * x + 222088.0;
      x -= f / fp;
    }
    lam[j] = x;
  }
  return lam;
}

std::vector<std::string> preset_names() {
  return {"transport3d", "transport4d", "fp",           "kfp",
          "qm2d-magnetic", "gpe2d",     "qm3d-periodic", "qm3d-magnetic"};
}

Preset make_preset(const std::string& name, const ParamMap& params) {
  Preset p;
  p.name = name;

  if (name == "transport3d") {
    check_keys(params, {"width"});
    p.family = ModelFamily::transport;
    // The coefficient table pins M12 = -0.036, M21 = 0.036.
    p.M = Matrix3d{{0, -0.036, -0.679}, {0.036, 0, -0.758}, {0.679, 0.758, 0}};
    p.pivot = 2;
    p.default_grid = GridSpec::uniform(3, 64, 3.2);
    p.default_dt = 0.3;
    p.default_steps = 100;
    p.schemes = {Scheme::esr, Scheme::strang};
    p.default_diagnostics = {"l2_norm", "l2_error"};
    const double w = get(params, "width", 0.06);
    auto f0 = [w](const VectorXd& x) -> cplx {
      const double amp = 1.0 / (2.0 * kPi * kPi * w * w);
      return amp *
             (std::exp(-(x[0] - 0.3) * (x[0] - 0.3) / w) +
              std::exp(-(x[0] + 0.3) * (x[0] + 0.3) / w)) *
             std::exp(-x[1] * x[1] / w) * std::exp(-x[2] * x[2] / w);
    };
    p.initial = [f0](const GridSpec& g, std::uint64_t) { return sampled(g, f0); };
    p.exact_at = transport_exact(p.M, f0);
    return p;
  }

  if (name == "transport4d") {
    check_keys(params, {});
    p.family = ModelFamily::transport;
    p.M = MatrixXd{{0, 1, -1.5, -3}, {-1, 0, 2, 1}, {1.5, -2, 0, 0}, {3, -1, 0, 0}};
    p.pivot = 1;
    p.default_grid = GridSpec::uniform(4, 47, 5.0);
    p.default_dt = 0.05;
    p.default_steps = 600;
    p.schemes = {Scheme::esr, Scheme::strang};
    p.default_diagnostics = {"l2_norm", "l2_error"};
    auto f0 = [](const VectorXd& x) -> cplx {
      const double a = 2.0 / kPi;
      return a * a * a * a * std::exp(-x.squaredNorm());
    };
    p.initial = [f0](const GridSpec& g, std::uint64_t) { return sampled(g, f0); };
    p.exact_at = transport_exact(p.M, f0);
    return p;
  }

  if (name == "fp") {
    check_keys(params, {});
    p.family = ModelFamily::fp;
    p.default_grid = GridSpec::make({27, 181}, {kPi, 7.0});
    p.default_dt = 0.1;
    p.default_steps = 200;
    p.schemes = {Scheme::esqm};
    p.default_diagnostics = {"l2_norm", "mass", "entropy"};
    p.initial = [](const GridSpec& g, std::uint64_t) {
      return sampled(g, [](const VectorXd& x) -> cplx {
        const double mu = std::exp(-0.5 * x[1] * x[1]) / std::sqrt(2.0 * kPi);
        return mu * (1.0 + 0.5 * std::sin(x[0]) * std::cos(kPi / 7.0 * x[1]));
      });
    };
    return p;
  }

  if (name == "kfp") {
    check_keys(params, {});
    p.family = ModelFamily::kfp;
    p.default_grid = GridSpec::make({199, 199}, {4.0, 15.0});
    p.default_dt = 0.1;
    p.default_steps = 1000;
    p.schemes = {Scheme::esqm, Scheme::strang};
    p.default_diagnostics = {"l2_norm"};
    p.initial = [](const GridSpec& g, std::uint64_t seed) {
      Field f = Field::zero(g);
      std::mt19937_64 rng(seed);
      for (std::int64_t i = 0; i < f.values.size(); ++i)
        f.values[i] = std::ldexp(static_cast<double>(rng() >> 11), -53);
      double l1 = f.weight() * pairwise_sum([&](std::int64_t i) {
                    return std::abs(f.values[i]);
                  }, f.values.size());
      f.values /= l1;
      return f;
    };
    return p;
  }

  if (name == "qm2d-magnetic") {
    check_keys(params, {"epsilon", "ic_width", "ic_phase"});
    const double eps = get(params, "epsilon", 1.0 / 32.0);
    p.family = ModelFamily::qm;
    p.B = Matrix2d{{0, 1.0 / (2 * eps)}, {-1.0 / (2 * eps), 0}};
    p.Vm = 1.0 / (8 * eps * eps) * Matrix2d::Identity();
    p.time_scale = eps;
    p.default_grid = GridSpec::uniform(2, 256, 3 * kPi);
    p.default_dt = 0.3;
    p.default_steps = 1000;
    p.schemes = {Scheme::esqm, Scheme::esr, Scheme::strang};
    p.default_diagnostics = {"l2_norm", "mass", "energy"};
    const double a = get(params, "ic_width", 20.0);
    const double ph = get(params, "ic_phase", 1.0) / eps;
    p.initial = [a, ph](const GridSpec& g, std::uint64_t) {
      return sampled(g, [a, ph](const VectorXd& x) {
        const double env = std::exp(-a * (x[0] - 0.05) * (x[0] - 0.05) -
                                    a * (x[1] - 0.1) * (x[1] - 0.1));
        return std::polar(env, ph * std::sin(x[0]) * std::sin(x[1]));
      });
    };
    p.energy.kinetic = eps * eps;
    p.energy.W = Matrix2d{{0, eps / 2}, {-eps / 2, 0}};
    p.energy.potential = [](const VectorXd& x) { return x.squaredNorm() / 8.0; };
    return p;
  }

  if (name == "gpe2d") {
    check_keys(params, {"omega", "beta", "gamma_x1", "gamma_x2", "shift_x1",
                        "shift_x2"});
    const double omega = get(params, "omega", -0.5);
    const double beta = get(params, "beta", 100.0);
    const double g1 = get(params, "gamma_x1", 1.0);
    const double g2 = get(params, "gamma_x2", 1.0);
    const double sx = get(params, "shift_x1", 1.0);
    const double sy = get(params, "shift_x2", 1.0);
    p.family = ModelFamily::qm;
    p.B = Matrix2d{{0, omega}, {-omega, 0}};
    p.Vm = Matrix2d{{0.5 * g1 * g1, 0}, {0, 0.5 * g2 * g2}};
    p.default_grid = GridSpec::uniform(2, 256, 8.0);
    p.default_dt = 1e-3;
    p.default_steps = 1000;
    p.schemes = {Scheme::esqm, Scheme::esr, Scheme::bw};
    p.default_diagnostics = {"l2_norm", "mass", "energy", "lz",
                             "s_x1",    "s_x2", "xc_1",   "xc_2"};
    p.nonlinearity.f = [beta](const VectorXd&, double rho) { return beta * rho; };
    p.nonlinearity.depends_on_density = true;
    // surrogate ground state (no external solver): Gaussian for moderate beta,
    // Thomas-Fermi profile for strong interactions; normalized to unit mass
    p.qualitative_initial = true;
    p.initial = [beta, g1, g2, sx, sy](const GridSpec& g, std::uint64_t) {
      std::function<cplx(const VectorXd&)> prof;
      if (beta < 500.0) {
        const double amp = std::sqrt(std::sqrt(g1 * g2) / kPi);
        prof = [=](const VectorXd& x) -> cplx {
          const double u = x[0] - sx, v = x[1] - sy;
          return amp * std::exp(-0.5 * (g1 * u * u + g2 * v * v));
        };
      } else {
        const double mu = std::sqrt(beta * g1 * g2 / kPi);
        prof = [=](const VectorXd& x) -> cplx {
          const double u = x[0] - sx, v = x[1] - sy;
          const double val = mu - 0.5 * (g1 * g1 * u * u + g2 * g2 * v * v);
          return val > 0 ? std::sqrt(val / beta) : 0.0;
        };
      }
      Field f = sampled(g, prof);
      f.values /= std::sqrt(f.norm_sq());
      return f;
    };
    p.energy.W = p.B;
    p.energy.potential = [g1, g2](const VectorXd& x) {
      return 0.5 * (g1 * g1 * x[0] * x[0] + g2 * g2 * x[1] * x[1]);
    };
    p.energy.nonlinear = [beta](const VectorXd&, double rho) {
      return 0.5 * beta * rho * rho;
    };
    return p;
  }

  if (name == "qm3d-periodic") {
    check_keys(params, {});
    p.family = ModelFamily::qm;
    Matrix3d k{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}};
    p.B = kPi / 3.0 * k;
    p.Vm = kPi * kPi / 9.0 * periodic_lambdas().asDiagonal().toDenseMatrix();
    p.default_grid = GridSpec::uniform(3, 96, 8.0);
    p.default_dt = 0.2;
    p.default_steps = 3600;
    p.schemes = {Scheme::esqm, Scheme::strang};
    p.default_diagnostics = {"l2_norm", "mass", "energy"};
    p.initial = [](const GridSpec& g, std::uint64_t) {
      return sampled(g, [](const VectorXd& x) {
        const double a = std::pow(2.0 / kPi, 3);
        const double g1 = std::exp(-x[0] * x[0] - x[1] * x[1] -
                                   (x[2] - 1) * (x[2] - 1));
        const double g2 = std::exp(-x[0] * x[0] - (x[1] + 1) * (x[1] + 1) -
                                   (x[2] - 1) * (x[2] - 1));
        return cplx(a * g1, a * g2);
      });
    };
    const MatrixXd vm = p.Vm;
    p.energy.W = p.B;
    p.energy.potential = [vm](const VectorXd& x) {
      return (x.transpose() * vm * x)(0);
    };
    return p;
  }

  if (name == "qm3d-magnetic") {
    check_keys(params, {"alpha"});
    const double alpha = get(params, "alpha", 0.1);
    p.family = ModelFamily::qm;
    const Vector3d bvec(1.0, 0.1, 2.0);
    // A(x) = x cross bvec; rotation term matrix in standard form
    Matrix3d ma{{0, bvec[2], -bvec[1]},
                {-bvec[2], 0, bvec[0]},
                {bvec[1], -bvec[0], 0}};
    p.B = -ma;
    p.Vm = 0.5 * (bvec.squaredNorm() * Matrix3d::Identity() -
                  bvec * bvec.transpose());
    p.default_grid = GridSpec::uniform(3, 64, 5.0);
    p.default_dt = 0.05;
    p.default_steps = 20;
    p.schemes = {Scheme::esqm, Scheme::esr, Scheme::strang};
    p.default_diagnostics = {"l2_norm", "mass", "energy"};
    p.nonlinearity.f = [alpha](const VectorXd& x, double) {
      return alpha * (20 * std::cos(2 * kPi * (x[0] + 5) / 10) +
                      20 * std::cos(2 * kPi * (x[1] + 5) / 10) +
                      20 * std::cos(2 * kPi * (x[2] + 5) / 10) + 60);
    };
    p.nonlinearity.depends_on_density = false;
    p.initial = [](const GridSpec& g, std::uint64_t) {
      return sampled(g, [](const VectorXd& x) -> cplx {
        const double amp = std::pow(2.0, 3.0 / 8.0) / std::pow(kPi, 1.5);
        const double q = (x[0] - 1) * (x[0] - 1) + x[1] * x[1] + x[2] * x[2];
        return amp * std::exp(-0.5 * std::sqrt(2.0) * q);
      });
    };
    const MatrixXd vm = p.Vm;
    const auto vnq = p.nonlinearity.f;
    p.energy.W = p.B;
    p.energy.potential = [vm](const VectorXd& x) {
      return (x.transpose() * vm * x)(0);
    };
    p.energy.nonlinear = [vnq](const VectorXd& x, double rho) {
      return vnq(x, 0.0) * rho;
    };
    return p;
  }

  throw std::invalid_argument("unknown preset: " + name);
}

SplittingPlan quadratic_plan(const Preset& preset, double dt) {
  switch (preset.family) {
    case ModelFamily::transport:
      return shear_factorize(preset.M, dt, preset.pivot).to_plan();
    case ModelFamily::kfp:
      return kfp_plan(dt);
    case ModelFamily::fp:
      return fp_plan(dt);
    case ModelFamily::qm:
      return triangular_split(preset.B, preset.Vm, preset.time_scale * dt).to_plan();
  }
  throw std::logic_error("quadratic_plan: bad family");
}

SplittingPlan directional_strang_plan(const MatrixXd& m, double dt) {
  const int n = static_cast<int>(m.rows());
  SplittingPlan plan;
  plan.dims = n;
  plan.provenance = "directional splitting of e^{tM}";
  plan.exactness = Exactness::order_2;
  auto sweep = [&](int j, double s) {
    for (int k = 0; k < n; ++k)
      if (k != j && m(j, k) != 0.0)
        plan.factors.push_back(ElementaryFactor::shear(j, k, s * m(j, k)));
  };
  for (int j = 0; j < n - 1; ++j) sweep(j, 0.5 * dt);
  sweep(n - 1, dt);
  for (int j = n - 2; j >= 0; --j) sweep(j, 0.5 * dt);
  return plan;
}

namespace {

SplittingPlan kfp_strang_plan(double dt) {
  Matrix2d evv = Matrix2d::Zero(), eee = Matrix2d::Zero();
  evv(1, 1) = 1;
  eee(1, 1) = 1;
  SplittingPlan plan;
  plan.dims = 2;
  plan.provenance = "directional splitting of the KFP flow";
  plan.exactness = Exactness::order_2;
  plan.factors = {
      ElementaryFactor::gaussian_decay(0.5 * dt * evv),
      ElementaryFactor::fourier_gaussian(0.5 * dt * eee),
      ElementaryFactor::shear(0, 1, -dt),
      ElementaryFactor::fourier_gaussian(0.5 * dt * eee),
      ElementaryFactor::gaussian_decay(0.5 * dt * evv),
  };
  return plan;
}

std::vector<Stage> rot_composition_stages(const Preset& p, double dt, bool exact_rot) {
  const int n = static_cast<int>(p.B.rows());
  const double ts = p.time_scale;

  Nonlinearity w;
  const MatrixXd vm = p.Vm;
  const auto extra = p.nonlinearity;
  w.f = [vm, extra, ts](const VectorXd& x, double rho) {
    double val = ts * (x.transpose() * vm * x)(0);
    if (extra.f) val += extra.f(x, rho);
    return val;
  };
  w.depends_on_density = extra.f && extra.depends_on_density;

  SplittingPlan quarter;
  quarter.dims = n;
  quarter.provenance = "free flow over a half step";
  quarter.factors = {
      ElementaryFactor::fourier_quadratic(0.25 * ts * dt * MatrixXd::Identity(n, n))};

  const MatrixXd mrot = -ts * p.B;
  SplittingPlan rot = exact_rot ? shear_factorize(mrot, dt).to_plan()
                                : directional_strang_plan(mrot, dt);

  const cplx half(0, -0.5 * dt);
  std::vector<Stage> stages;
  stages.push_back(Stage::make_phase(w, half));
  stages.push_back(Stage::make_plan(quarter));
  stages.push_back(Stage::make_plan(rot));
  stages.push_back(Stage::make_plan(quarter));
  stages.push_back(Stage::make_phase(w, half));
  return stages;
}

std::vector<Stage> bw_stages(const Preset& p, double dt) {
  const double omega = p.B(0, 1);
  Matrix2d e11 = Matrix2d::Zero(), e22 = Matrix2d::Zero();
  e11(0, 0) = 1;
  e22(1, 1) = 1;
  SplittingPlan xhalf, yhalf;
  xhalf.dims = yhalf.dims = 2;
  xhalf.provenance = "x-direction free flow with rotation shear";
  yhalf.provenance = "y-direction free flow with rotation shear";
  xhalf.factors = {ElementaryFactor::fourier_quadratic(0.25 * dt * e11),
                   ElementaryFactor::shear(0, 1, -0.5 * dt * omega)};
  yhalf.factors = {ElementaryFactor::fourier_quadratic(0.25 * dt * e22),
                   ElementaryFactor::shear(1, 0, 0.5 * dt * omega)};

  const MatrixXd vm = p.Vm;
  const auto extra = p.nonlinearity;
  Nonlinearity nfun;
  nfun.f = [vm, extra](const VectorXd& x, double rho) {
    double val = (x.transpose() * vm * x)(0);
    if (extra.f) val += extra.f(x, rho);
    return val;
  };
  nfun.depends_on_density = extra.f && extra.depends_on_density;

  std::vector<Stage> stages;
  stages.push_back(Stage::make_plan(yhalf));
  stages.push_back(Stage::make_plan(xhalf));
  stages.push_back(Stage::make_phase(nfun, cplx(0, -dt)));
  stages.push_back(Stage::make_plan(xhalf));
  stages.push_back(Stage::make_plan(yhalf));
  return stages;
}

}  // namespace

std::vector<Stage> build_stages(const Preset& preset, Scheme scheme, double dt) {
  bool valid = false;
  for (Scheme s : preset.schemes)
    if (s == scheme) valid = true;
  if (!valid)
    throw std::invalid_argument("scheme " + to_string(scheme) +
                                " is not defined for preset " + preset.name);

  switch (preset.family) {
    case ModelFamily::transport: {
      SplittingPlan plan = scheme == Scheme::esr
                               ? quadratic_plan(preset, dt)
                               : directional_strang_plan(preset.M, dt);
      return {Stage::make_plan(std::move(plan))};
    }
    case ModelFamily::kfp: {
      SplittingPlan plan =
          scheme == Scheme::esqm ? kfp_plan(dt) : kfp_strang_plan(dt);
      return {Stage::make_plan(std::move(plan))};
    }
    case ModelFamily::fp:
      return {Stage::make_plan(fp_plan(dt))};
    case ModelFamily::qm: {
      if (scheme == Scheme::esqm)
        return esqm_stages(quadratic_plan(preset, dt), preset.nonlinearity, dt);
      if (scheme == Scheme::bw) return bw_stages(preset, dt);
      return rot_composition_stages(preset, dt, scheme == Scheme::esr);
    }
  }
  throw std::logic_error("build_stages: bad family");
}

// --- reference coefficient tables -----------------------------------------

namespace {

Eigen::MatrixXd colvec(std::initializer_list<double> v) {
  Eigen::MatrixXd m(static_cast<int>(v.size()), 1);
  int i = 0;
  for (double x : v) m(i++, 0) = x;
  return m;
}

std::vector<CoefficientFixture> build_fixtures() {
  std::vector<CoefficientFixture> out;

  {
    CoefficientFixture f;
    f.name = "transport3d shear vectors (dt=0.3)";
    f.preset = "transport3d";
    f.dt = 0.3;
    const double tol = 1e-12;
    f.entries = {
        {"y^(l)", colvec({0.345224363827786, 0.379204563977292, 0}), tol},
        {"y^(1)", colvec({0, -0.036460351430518, -0.664426864374562}), tol},
        {"y^(2)", colvec({0.036504386840795, 0, -0.742627150015417}), tol},
        {"y^(r)", colvec({0.339075826535304, 0.384712290654848, 0}), tol},
    };
    out.push_back(std::move(f));
  }
  {
    CoefficientFixture f;
    f.name = "transport4d shear vectors (dt=0.05)";
    f.preset = "transport4d";
    f.dt = 0.05;
    const double tol = 1e-11;
    f.entries = {
        {"y^(l)", colvec({7.239003439520237, 0, 0.114915806141710,
                          5.520828626111525}), tol},
        {"y^(1)", colvec({0, -0.843365270467026, 1.542035786578973,
                          3.239936743553417}), tol},
        {"y^(3)", colvec({-2.171812638482090, 1.937050589058292, 0,
                          -0.368205582274782}), tol},
        {"y^(4)", colvec({-3.333162655369549, 0.915289658696578,
                          0.087822505478295, 0}), tol},
        {"y^(r)", colvec({-7.124076298503538, 0, -1.578152453772511,
                          -5.445447353939971}), tol},
    };
    out.push_back(std::move(f));
  }
  {
    CoefficientFixture f;
    f.name = "2D magnetic triangular coefficients (dt=0.3)";
    f.preset = "qm2d-magnetic";
    f.dt = 0.3;
    f.entries = {
        {"A", Matrix2d{{0.503532819405421, -0.074439184790650},
                       {-0.074439184790650, 0.503784060194312}}, 1e-11},
        {"L", Matrix2d{{0, 0}, {-16.121089926218119, 0}}, 1e-11},
        {"U", Matrix2d{{0, 15.761077688604765}, {0, 0}}, 1e-11},
        {"V^(l)", colvec({128.9687194097432, -0.0000000000018}), 2e-10},
        {"V^(r)", Matrix2d{{2.8800979009085, -19.0564313064080},
                           {-19.0564313064080, 126.0886215088400}}, 2e-10},
    };
    out.push_back(std::move(f));
  }
  {
    CoefficientFixture f;
    f.name = "GPE triangular coefficients (Omega=-0.5, dt=1e-3)";
    f.preset = "gpe2d";
    f.params = {{"omega", -0.5}};
    f.dt = 1e-3;
    f.entries = {
        {"A", Matrix2d{{0.499999979166481, 0.000249999948070},
                       {0.000249999948070, 0.499999979166811}}, 5e-12},
        {"L", Matrix2d{{0, 0}, {0.500000041666386, 0}}, 5e-12},
        {"U", Matrix2d{{0, -0.499999916666976}, {0, 0}}, 5e-12},
        {"V^(l)", colvec({0.312500037673140, 0.187500011883192}), 1e-9},
        {"V^(r)", Matrix2d{{0.187500043056181, 0.000062500002332},
                           {0.000062500002332, 0.312500006345821}}, 1e-9},
    };
    out.push_back(std::move(f));
  }
  {
    CoefficientFixture f;
    f.name = "GPE triangular coefficients (Omega=0, dt=1e-3)";
    f.preset = "gpe2d";
    f.params = {{"omega", 0.0}};
    f.dt = 1e-3;
    f.entries = {
        {"A", Matrix2d{{0.499999916666670, 0}, {0, 0.499999916666676}}, 5e-12},
        {"L", Matrix2d::Zero().eval(), 5e-12},
        {"U", Matrix2d::Zero().eval(), 5e-12},
        {"V^(l)", colvec({0.250000020830132, 0.250000020802363}), 1e-9},
        {"V^(r)", colvec({0.250000020836539, 0.250000020864292}), 1e-9},
    };
    out.push_back(std::move(f));
  }
  {
    CoefficientFixture f;
    f.name = "GPE triangular coefficients (beta=1000 anisotropic, dt=1e-3)";
    f.preset = "gpe2d";
    f.params = {{"omega", 0.9}, {"beta", 1000}, {"gamma_x1", 1.05},
                {"gamma_x2", 0.95}};
    f.dt = 1e-3;
    f.entries = {
        {"A", Matrix2d{{0.500000110624718, -0.000449999864087},
                       {-0.000449999864087, 0.500000127291716}}, 5e-12},
        {"L", Matrix2d{{0, 0}, {-0.900000273000100, 0}}, 5e-12},
        {"U", Matrix2d{{0, 0.899999484000032}, {0, 0}}, 5e-12},
        {"V^(l)", colvec({0.478125137872035, 0.023124993175043}), 1e-9},
        {"V^(r)", Matrix2d{{0.073125336336629, -0.000364499913716},
                           {-0.000364499913716, 0.428124781225271}}, 1e-9},
    };
    out.push_back(std::move(f));
  }
  {
    CoefficientFixture f;
    f.name = "3D periodic triangular coefficients (dt=0.2)";
    f.preset = "qm3d-periodic";
    f.dt = 0.2;
    const double tol = 5e-12;
    f.entries = {
        {"A", Matrix3d{{0.503369336514750, 0.09260872887966, -0.086577853155386},
                       {0.092608728879667, 0.499175997238123, 0.090475411725230},
                       {-0.086577853155386, 0.090475411725230, 0.482430618251455}},
         tol},
        {"V^(l)", colvec({1.838313777101704, 1.405233579215994,
                          2.416160688906186}), tol},
        {"V^(r)",
         Matrix3d{{0.765638127548775, 0.097739062052903, -0.244124321719139},
                  {0.097739062052903, 1.408683914880933, 0.141925135897144},
                  {-0.244124321719139, 0.14192513589714, 3.535113753227984}},
         tol},
        {"L", Matrix3d{{0, 0, 0},
                       {0.957867410476376, 0, 0},
                       {-0.917880413070041, 1.133563918623215, 0}}, tol},
        {"U", Matrix3d{{0, -1.132325985517193, 0.915677911046419},
                       {0, 0, -0.957661219232001},
                       {0, 0, 0}}, tol},
    };
    out.push_back(std::move(f));
  }
  {
    CoefficientFixture f;
    f.name = "3D magnetic triangular coefficients (dt=0.1)";
    f.preset = "qm3d-magnetic";
    f.dt = 0.1;
    const double tol = 5e-12;
    f.entries = {
        {"A", Matrix3d{{0.506160069704187, 0.098840554692409, 0.001683128724191},
                       {0.098840554692409, 0.508317718832811, 0.050167780151672},
                       {0.001683128724191, 0.050167780151672, 0.501715861437068}},
         tol},
        {"V^(l)", colvec({2.025343613765655, 0.508168767491105,
                          0.000099459606977}), tol},
        {"V^(r)",
         Matrix3d{{0.072891278447532, 0.242556937819776, -1.026420948565178},
                  {0.242556937819776, 1.959142247295385, -0.046535665904951},
                  {-1.026420948565178, -0.046535665904951, 0.508102737430800}},
         tol},
        {"L", Matrix3d{{0, 0, 0},
                       {2.003434507092443, 0, 0},
                       {-0.099043028107977, 1.016569585390557, 0}}, tol},
        {"U", Matrix3d{{0, -1.963756896350695, -0.099988990937417},
                       {0, 0, -1.006635420674690},
                       {0, 0, 0}}, tol},
    };
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

const std::vector<CoefficientFixture>& coefficient_fixtures() {
  static const std::vector<CoefficientFixture> fixtures = build_fixtures();
  return fixtures;
}

std::vector<FixtureResult> check_fixture(const CoefficientFixture& fix) {
  const Preset preset = make_preset(fix.preset, fix.params);
  std::vector<FixtureResult> results;
  auto push = [&](const std::string& label, const Eigen::MatrixXd& got,
                  const Eigen::MatrixXd& want, double tol) {
    FixtureResult r;
    r.table = fix.name;
    r.label = label;
    r.deviation = (got - want).cwiseAbs().maxCoeff();
    r.tol = tol;
    r.pass = r.deviation <= tol;
    results.push_back(std::move(r));
  };

  if (preset.family == ModelFamily::transport) {
    const ShearFactorization sf = shear_factorize(preset.M, fix.dt, preset.pivot);
    std::size_t mid = 0;
    for (const auto& e : fix.entries) {
      if (e.label == "y^(l)") {
        push(e.label, sf.y_left, e.expected, e.tol);
      } else if (e.label == "y^(r)") {
        push(e.label, sf.y_right, e.expected, e.tol);
      } else {
        push(e.label, sf.y_mid.at(mid).second, e.expected, e.tol);
        ++mid;
      }
    }
    return results;
  }

  const TriangularSplitting ts =
      triangular_split(preset.B, preset.Vm, preset.time_scale * fix.dt);
  for (const auto& e : fix.entries) {
    if (e.label == "A") push(e.label, ts.A, e.expected, e.tol);
    else if (e.label == "L") push(e.label, ts.L, e.expected, e.tol);
    else if (e.label == "U") push(e.label, ts.U, e.expected, e.tol);
    else if (e.label == "V^(l)") push(e.label, ts.v_left, e.expected, e.tol);
    else if (e.label == "V^(r)") {
      if (e.expected.cols() == 1)
        push(e.label, ts.v_right.diagonal(), e.expected, e.tol);
      else
        push(e.label, ts.v_right, e.expected, e.tol);
    }
  }
  return results;
}

}  // namespace qsplit
