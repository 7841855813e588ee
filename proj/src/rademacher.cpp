#include "netcap/rademacher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netcap {

namespace {

double dual_norm(const Eigen::VectorXd& z, double p) {
  if (p == 1.0) return z.cwiseAbs().maxCoeff();
  return lp_norm(z, p / (p - 1.0));
}

void check_p(double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("p must satisfy 1 <= p < inf");
}

}  // namespace

SampleSet SampleSet::make(std::vector<std::vector<double>> rows) {
  if (rows.empty()) throw std::invalid_argument("sample set needs at least one point");
  const std::size_t dim = rows.front().size();
  if (dim == 0) throw std::invalid_argument("sample points need at least one coordinate");
  SampleSet s;
  s.points.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) throw std::invalid_argument("ragged sample set");
    for (std::size_t j = 0; j < dim; ++j)
      s.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return s;
}

std::string to_string(RademacherMethod m) {
  switch (m) {
    case RademacherMethod::exact_enum:
      return "exact-enum";
    case RademacherMethod::closed_form_linear:
      return "closed-form-linear";
    case RademacherMethod::upper_bound_thm1:
      return "upper-bound-thm1";
    case RademacherMethod::upper_bound_cor2:
      return "upper-bound-cor2";
    case RademacherMethod::upper_bound_antisym:
      return "upper-bound-antisym";
    case RademacherMethod::upper_bound_linear_lemma:
      return "upper-bound-linear-lemma";
    case RademacherMethod::opt_lower_bound:
      return "opt-lower-bound";
  }
  return "exact-enum";
}

RademacherReport exact_rademacher_hull(const std::vector<Eigen::VectorXd>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("hull needs at least one vertex");
  const Eigen::Index m = vertices.front().size();
  if (m < 1 || m > 24) throw std::invalid_argument("hull enumeration needs 1 <= m <= 24");
  for (const auto& v : vertices)
    if (v.size() != m) throw std::invalid_argument("ragged hull vertices");

  const std::uint64_t count = std::uint64_t{1} << m;
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double sup = 0.0;
    for (const auto& v : vertices) {
      double dot = 0.0;
      for (Eigen::Index i = 0; i < m; ++i)
        dot += ((mask >> i) & 1u ? 1.0 : -1.0) * v[i];
      sup = std::max(sup, std::abs(dot));
    }
    total += sup;
  }
  RademacherReport r;
  r.method = RademacherMethod::exact_enum;
  r.sup_total = total;
  r.value = total / (static_cast<double>(count) * static_cast<double>(m));
  return r;
}

RademacherReport linear_rademacher_exact(const SampleSet& s, double p, double gamma,
                                         std::optional<std::uint64_t> seed) {
  check_p(p);
  const int m = s.m();
  RademacherReport r;
  r.method = RademacherMethod::closed_form_linear;
  if (m <= 24) {
    const std::uint64_t count = std::uint64_t{1} << m;
    double total = 0.0;
    Eigen::VectorXd z(s.dim());
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      z.setZero();
      for (int i = 0; i < m; ++i)
        z += ((mask >> i) & 1u ? 1.0 : -1.0) * s.points.row(i).transpose();
      total += dual_norm(z, p);
    }
    r.value = gamma * total / (static_cast<double>(count) * m);
    return r;
  }
  if (!seed) throw std::invalid_argument("m > 24 needs a Monte Carlo seed");
  constexpr int kDraws = 100000;
  Rng rng = Rng(*seed).stream("linear-mc");
  double sum = 0.0, sum_sq = 0.0;
  Eigen::VectorXd z(s.dim());
  for (int t = 0; t < kDraws; ++t) {
    z.setZero();
    for (int i = 0; i < m; ++i) z += (rng.coin() ? 1.0 : -1.0) * s.points.row(i).transpose();
    const double v = dual_norm(z, p) / m;
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / kDraws;
  r.value = gamma * mean;
  r.seed = *seed;
  r.std_error = gamma * std::sqrt(std::max(0.0, sum_sq / kDraws - mean * mean) / kDraws);
  return r;
}

RademacherReport linear_rademacher_bound(const SampleSet& s, double p, double gamma) {
  check_p(p);
  const int m = s.m();
  const int dim = s.dim();
  double max_dual = 0.0;
  for (int i = 0; i < m; ++i)
    max_dual = std::max(max_dual, dual_norm(s.points.row(i).transpose(), p));

  RademacherReport r;
  r.method = RademacherMethod::upper_bound_linear_lemma;
  if (p <= 2.0) {
    const double pstar = p == 1.0 ? NormParams::inf : p / (p - 1.0);
    const double c = std::min(pstar, 4.0 * std::log(2.0 * dim));
    r.value = std::sqrt(gamma * gamma * c * max_dual * max_dual / m);
    return r;
  }
  // ||X||_{2,p*}: l_2 down each feature column, l_{p*} across features.
  const double pstar = p / (p - 1.0);
  double acc = 0.0;
  for (int j = 0; j < dim; ++j) acc += std::pow(s.points.col(j).norm(), pstar);
  const double mixed = std::pow(acc, 1.0 / pstar);
  r.value = std::sqrt(2.0) * gamma * mixed / m;
  r.weaker = std::sqrt(2.0) * gamma * max_dual / std::pow(static_cast<double>(m), 1.0 / p);
  return r;
}

RademacherReport network_rademacher_bound(int depth, int width, const NormParams& params,
                                          double cap, CapKind kind, const SampleSet& s,
                                          NetworkBoundForm form) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (width < 1) throw std::invalid_argument("width must be >= 1");
  if (cap < 0.0) throw std::invalid_argument("norm cap must be non-negative");

  const double r_lin = linear_rademacher_bound(s, params.p, 1.0).value;
  const double bracket = std::max(0.0, params.inv_p_star() - params.inv_q());
  const double d_root = std::pow(static_cast<double>(depth), params.inv_q());

  RademacherReport r;
  double front = 0.0;
  if (form == NetworkBoundForm::thm1) {
    r.method = RademacherMethod::upper_bound_thm1;
    const double peel = 2.0 * std::pow(static_cast<double>(width), bracket);
    front = kind == CapKind::gamma
                ? cap * std::pow(peel, depth - 1)
                : std::pow(cap, depth) * std::pow(peel / d_root, depth - 1);
  } else {
    if (!(params.q <= params.p_star()))
      throw std::invalid_argument(
          "width-free bound requires q <= p* (equivalently 1/p + 1/q >= 1)");
    r.method = RademacherMethod::upper_bound_cor2;
    front = kind == CapKind::gamma ? cap * std::pow(2.0, depth - 1)
                                   : std::pow(2.0 * cap / d_root, depth);
  }
  r.value = front * r_lin;
  return r;
}

RademacherReport antisym_bound(int depth, double mu, const SampleSet& s) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (mu < 0.0) throw std::invalid_argument("mu must be non-negative");
  double max_inf = 0.0;
  for (int i = 0; i < s.m(); ++i)
    max_inf = std::max(max_inf, s.points.row(i).cwiseAbs().maxCoeff());
  RademacherReport r;
  r.method = RademacherMethod::upper_bound_antisym;
  r.value = std::sqrt(4.0 * std::pow(mu, 2.0 * depth) * std::log(2.0 * s.dim()) * max_inf *
                      max_inf / s.m());
  return r;
}

namespace {

// Allocation-free layered forward pass for the optimizer's inner loop.
double forward_raw(const std::vector<Eigen::MatrixXd>& layers, const double* x,
                   std::vector<double>& a, std::vector<double>& b) {
  a.assign(x, x + layers.front().cols());
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const Eigen::MatrixXd& w = layers[k];
    const bool last = k + 1 == layers.size();
    b.assign(static_cast<std::size_t>(w.rows()), 0.0);
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      double z = 0.0;
      for (Eigen::Index c = 0; c < w.cols(); ++c) z += w(r, c) * a[static_cast<std::size_t>(c)];
      b[static_cast<std::size_t>(r)] = !last && z < 0.0 ? 0.0 : z;
    }
    a.swap(b);
  }
  return a[0];
}

double signed_sum(const std::vector<Eigen::MatrixXd>& layers,
                  const std::vector<std::vector<double>>& pts, std::uint64_t mask,
                  std::vector<double>& a, std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double sign = (mask >> i) & 1u ? 1.0 : -1.0;
    acc += sign * forward_raw(layers, pts[i].data(), a, b);
  }
  return std::abs(acc);
}

// Rescale every layer so the gamma product hits the cap exactly. Returns
// false when a layer has zero norm (the zero function; nothing to rescale).
bool project_to_cap(std::vector<Eigen::MatrixXd>& layers, const NormParams& params, double cap) {
  const int d = static_cast<int>(layers.size());
  const double target = std::pow(cap, 1.0 / d);
  for (auto& w : layers) {
    const double n = group_norm(w, params);
    if (n == 0.0) return false;
    w *= target / n;
  }
  return true;
}

}  // namespace

RademacherReport empirical_rademacher_lower(const LayeredClass& cls, const SampleSet& s,
                                            std::uint64_t seed, const LowerBoundOptions& opts) {
  if (cls.depth < 1 || cls.width < 1) throw std::invalid_argument("invalid layered class");
  const int m = s.m();
  if (m > 16) throw std::invalid_argument("sign enumeration needs m <= 16");

  RademacherReport r;
  r.method = RademacherMethod::opt_lower_bound;
  r.seed = seed;
  if (cls.gamma_cap <= 0.0) return r;  // the zero function class

  std::vector<Eigen::Index> rows, cols;
  for (int k = 0; k < cls.depth; ++k) {
    rows.push_back(k + 1 == cls.depth ? 1 : cls.width);
    cols.push_back(k == 0 ? s.dim() : cls.width);
  }
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    pts[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(s.dim()));
    for (int j = 0; j < s.dim(); ++j) pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s.points(i, j);
  }

  const Rng root = Rng(seed).stream("opt-lower");
  const std::uint64_t half = std::uint64_t{1} << (m - 1);  // xi and -xi tie
  double total = 0.0;
  std::vector<Eigen::MatrixXd> w(static_cast<std::size_t>(cls.depth)),
      trial(static_cast<std::size_t>(cls.depth));
  std::vector<double> buf_a, buf_b;
  for (std::uint64_t mask = 0; mask < half; ++mask) {
    double best = 0.0;
    for (int restart = 0; restart < opts.restarts; ++restart) {
      Rng rng = root.stream(mask).stream(static_cast<std::uint64_t>(restart));
      for (int k = 0; k < cls.depth; ++k) {
        auto& wk = w[static_cast<std::size_t>(k)];
        wk.resize(rows[static_cast<std::size_t>(k)], cols[static_cast<std::size_t>(k)]);
        for (Eigen::Index i = 0; i < wk.size(); ++i) wk.data()[i] = rng.normal();
      }
      if (!project_to_cap(w, cls.params, cls.gamma_cap)) continue;
      double cur = signed_sum(w, pts, mask, buf_a, buf_b);
      for (int t = 0; t < opts.steps; ++t) {
        const double step = 0.5 * std::pow(0.9, t);
        trial = w;
        for (auto& wk : trial) {
          const double scale = step * group_norm(wk, cls.params) /
                               std::sqrt(static_cast<double>(wk.size()));
          for (Eigen::Index i = 0; i < wk.size(); ++i) wk.data()[i] += scale * rng.normal();
        }
        if (!project_to_cap(trial, cls.params, cls.gamma_cap)) continue;
        const double cand = signed_sum(trial, pts, mask, buf_a, buf_b);
        if (cand > cur) {
          cur = cand;
          w.swap(trial);
        }
      }
      best = std::max(best, cur);
    }
    total += 2.0 * best;  // the mirrored sign vector attains the same value
  }
  r.value = total / (std::pow(2.0, m) * m);
  return r;
}

ShatterCheckReport shatter_check(
    const std::function<Network(const std::vector<int>&)>& builder,
    const std::vector<std::vector<double>>& points,
    const std::vector<std::vector<int>>& labelings) {
  const std::size_t m = points.size();
  if (m == 0) throw std::invalid_argument("shatter_check needs points");

  std::vector<std::vector<int>> all;
  const std::vector<std::vector<int>>* use = &labelings;
  if (labelings.empty()) {
    if (m > 16) throw std::invalid_argument("exhaustive labelings need |S| <= 16");
    const std::uint64_t count = std::uint64_t{1} << m;
    all.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      std::vector<int> g(m);
      for (std::size_t i = 0; i < m; ++i) g[i] = (mask >> i) & 1u ? 1 : -1;
      all.push_back(std::move(g));
    }
    use = &all;
  }

  ShatterCheckReport report;
  report.worst = std::numeric_limits<double>::infinity();
  for (const auto& g : *use) {
    if (g.size() != m) throw std::invalid_argument("labeling length mismatch");
    const Network net = builder(g);
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i)
      margin = std::min(margin, net.forward(points[i]) * g[i]);
    report.margins.push_back(margin);
    report.worst = std::min(report.worst, margin);
  }
  report.pass = report.worst >= 1.0 - 1e-9;
  return report;
}

}  // namespace netcap
