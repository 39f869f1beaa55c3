#include "mgrkit/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

namespace mgrkit {

const char* to_string(MgrMethod method) {
  switch (method) {
    case MgrMethod::EigGram: return "eig-gram";
    case MgrMethod::DetCm: return "det-cm";
    case MgrMethod::DetGram: return "det-gram";
    case MgrMethod::Sanchez: return "sanchez";
  }
  return "?";
}

const char* to_string(MgrStatus status) {
  switch (status) {
    case MgrStatus::Found: return "found";
    case MgrStatus::AtLeastPMax: return "at_least_p_max";
    case MgrStatus::BelowPMin: return "below_p_min";
  }
  return "?";
}

const char* to_string(Dichotomy dichotomy) {
  switch (dichotomy) {
    case Dichotomy::DSingular: return "D_singular";
    case Dichotomy::InnerProductZero: return "inner_product_zero";
    case Dichotomy::Undetermined: return "undetermined";
  }
  return "?";
}

std::optional<MgrMethod> parse_method(std::string_view name) {
  if (name == "eig-gram") return MgrMethod::EigGram;
  if (name == "det-cm") return MgrMethod::DetCm;
  if (name == "det-gram") return MgrMethod::DetGram;
  if (name == "sanchez") return MgrMethod::Sanchez;
  return std::nullopt;
}

namespace {

void validate_config(const MgrConfig& config) {
  if (!(config.p_min > 0.0) || !(config.p_min < config.p_max)) {
    throw std::invalid_argument("mgr_compute: need 0 < p_min < p_max");
  }
  if (!(config.scan_step > 0.0)) {
    throw std::invalid_argument("mgr_compute: scan_step must be positive");
  }
  if (!(config.tol > 0.0)) {
    throw std::invalid_argument("mgr_compute: tol must be positive");
  }
  if (!(config.zero_tol > 0.0)) {
    throw std::invalid_argument("mgr_compute: zero_tol must be positive");
  }
  if (config.threads < 1) {
    throw std::invalid_argument("mgr_compute: threads must be at least 1");
  }
}

std::vector<double> make_grid(double p_min, double p_max, double step) {
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double p = p_min + static_cast<double>(i) * step;
    if (p >= p_max - 1e-12 * step) break;
    grid.push_back(p);
  }
  grid.push_back(p_max);
  return grid;
}

// Evaluates eval over grid[begin..end) into a dense vector, optionally on
// several threads.  Slot i always holds the value for grid[begin + i], so the
// caller's index-order aggregation is independent of the thread count.
template <typename T, typename F>
std::vector<T> evaluate_range(const std::vector<double>& grid, std::size_t begin, std::size_t end,
                              int threads, const F& eval) {
  const std::size_t count = end - begin;
  std::vector<T> out(count);
  const int workers = static_cast<int>(std::min<std::size_t>(
      static_cast<std::size_t>(std::max(threads, 1)), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = eval(grid[begin + i]);
    return out;
  }

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::size_t chunk = (count + static_cast<std::size_t>(workers) - 1) /
                            static_cast<std::size_t>(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) out[i] = eval(grid[begin + i]);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

template <typename Before>
std::pair<double, double> bisect(double lo, double hi, double tol, const Before& before) {
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (before(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

template <typename F>
std::pair<double, double> golden_section_min(double a, double b, double width, const F& f) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; iter < 200 && b - a > width; ++iter) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  const double p = 0.5 * (a + b);
  return {p, f(p)};
}

struct ScalarEval {
  double diag = 0.0;
  bool before = false;
};

int bordered_parity(int gram_order) { return gram_order % 2 == 0 ? -1 : 1; }  // (-1)^(n+1)

std::function<ScalarEval(double)> scalar_evaluator(const MetricSpace& space, MgrMethod method) {
  switch (method) {
    case MgrMethod::EigGram:
      return [&space](double p) {
        const double lambda = min_gram_eigenvalue(space, p);
        return ScalarEval{lambda, lambda > 0.0};
      };
    // The determinant-sign methods run on the rescaled space: dividing every
    // distance by the largest one multiplies det(M_p) and det(G_p) by the
    // positive factor (d_max^-p)^n, so signs and roots are untouched while
    // the entries stay O(1). On the raw space, entries near d_max^p make the
    // determinant's rounding noise swamp its value in a band around the root.
    case MgrMethod::DetCm:
      return [scaled = normalized(space),
              parity = bordered_parity(space.point_count() - 1)](double p) {
        const SignLogDet det = det_sign_log(p_matrices(scaled, p).m_p);
        return ScalarEval{parity * det.value(), parity * det.sign > 0};
      };
    case MgrMethod::DetGram:
      return [scaled = normalized(space)](double p) {
        const SignLogDet det = det_sign_log(p_matrices(scaled, p).g_p);
        return ScalarEval{det.value(), det.sign > 0};
      };
    case MgrMethod::Sanchez:
      break;
  }
  throw std::logic_error("scalar_evaluator: unexpected method");
}

MgrResult finish_found(const MetricSpace& space, const MgrConfig& config, MgrResult result,
                       std::pair<double, double> bracket) {
  result.status = MgrStatus::Found;
  result.bracket = bracket;
  result.value = 0.5 * (bracket.first + bracket.second);
  result.dichotomy = classify_dichotomy(space, *result.value, config.zero_tol, config.tol);
  return result;
}

MgrResult scalar_compute(const MetricSpace& space, const MgrConfig& config) {
  MgrResult result;
  result.method = config.method;

  const auto eval = scalar_evaluator(space, config.method);
  const std::vector<double> grid = make_grid(config.p_min, config.p_max, config.scan_step);
  const std::size_t batch =
      config.threads > 1 ? std::max<std::size_t>(32, 8 * static_cast<std::size_t>(config.threads))
                         : std::size_t{1};

  std::optional<std::size_t> crossing;
  std::size_t scanned = 0;
  while (scanned < grid.size() && !crossing) {
    const std::size_t end = std::min(grid.size(), scanned + batch);
    const auto evals = evaluate_range<ScalarEval>(grid, scanned, end, config.threads, eval);
    for (std::size_t i = scanned; i < end; ++i) {
      const auto& e = evals[i - scanned];
      result.diagnostics.push_back({grid[i], e.diag});
      if (!e.before) {
        crossing = i;
        break;
      }
    }
    scanned = end;
  }

  if (crossing && *crossing == 0) {
    result.status = MgrStatus::BelowPMin;
    return result;
  }
  if (crossing) {
    const auto bracket = bisect(grid[*crossing - 1], grid[*crossing], config.tol,
                                [&eval](double p) { return eval(p).before; });
    return finish_found(space, config, std::move(result), bracket);
  }

  result.status = MgrStatus::AtLeastPMax;
  if (config.method == MgrMethod::EigGram) {
    std::size_t min_index = 0;
    for (std::size_t i = 1; i < result.diagnostics.size(); ++i) {
      if (result.diagnostics[i].quantity < result.diagnostics[min_index].quantity) min_index = i;
    }
    if (result.diagnostics[min_index].quantity <= config.zero_tol) {
      result.tangential_warning = true;
      const double a = grid[min_index > 0 ? min_index - 1 : 0];
      const double b = grid[std::min(min_index + 1, grid.size() - 1)];
      const auto [p_star, value_star] = golden_section_min(
          a, b, std::max(config.tol, 1e-9), [&eval](double p) { return eval(p).diag; });
      result.diagnostics.push_back({p_star, value_star});
    }
  }
  return result;
}

MgrResult sanchez_compute(const MetricSpace& space, const MgrConfig& config) {
  MgrResult result;
  result.method = MgrMethod::Sanchez;

  const auto eval = [&space](double p) { return sanchez_evaluate(space, p); };
  const auto diag_of = [](const SanchezEvaluation& e) {
    return e.dp_invertible ? *e.inner_product : e.det_dp.value();
  };

  const std::vector<double> grid = make_grid(config.p_min, config.p_max, config.scan_step);
  const std::size_t batch =
      config.threads > 1 ? std::max<std::size_t>(32, 8 * static_cast<std::size_t>(config.threads))
                         : std::size_t{1};

  // Below the first root of either quantity the p-distance matrix keeps its
  // initial determinant sign and the inner product stays positive, so losing
  // either property marks the crossing.  A single combined predicate also
  // keeps the refinement anchored to the smaller root when the two
  // quantities cross close together (the inner product typically recovers
  // through the pole where the determinant flips).
  int ref_sign = 0;
  const auto healthy = [&ref_sign](const SanchezEvaluation& e) {
    return e.det_dp.sign == ref_sign && e.dp_invertible && *e.inner_product > 0.0;
  };

  std::optional<std::size_t> crossing;
  std::size_t scanned = 0;
  while (scanned < grid.size() && !crossing) {
    const std::size_t end = std::min(grid.size(), scanned + batch);
    const auto evals = evaluate_range<SanchezEvaluation>(grid, scanned, end, config.threads, eval);
    for (std::size_t i = scanned; i < end; ++i) {
      const auto& e = evals[i - scanned];
      result.diagnostics.push_back({grid[i], diag_of(e)});
      if (i == 0) ref_sign = e.det_dp.sign;
      if (!healthy(e)) {
        crossing = i;
        break;
      }
    }
    scanned = end;
  }

  if (crossing && *crossing == 0) {
    result.status = MgrStatus::BelowPMin;
    return result;
  }
  if (crossing) {
    const auto bracket = bisect(grid[*crossing - 1], grid[*crossing], config.tol,
                                [&eval, &healthy](double p) { return healthy(eval(p)); });
    return finish_found(space, config, std::move(result), bracket);
  }

  result.status = MgrStatus::AtLeastPMax;
  return result;
}

}  // namespace

double min_gram_eigenvalue(const MetricSpace& space, double p) {
  if (space.point_count() < 2) {
    throw std::invalid_argument("min_gram_eigenvalue: need at least 2 points");
  }
  return symmetric_min_eigenvalue(p_matrices(space, p).g_p);
}

SanchezEvaluation sanchez_evaluate(const MetricSpace& space, double p) {
  if (!(p > 0.0)) {
    throw std::invalid_argument("sanchez_evaluate: exponent must be positive");
  }
  SanchezEvaluation out;
  out.p = p;
  const Matrix d_p = p_matrices(space, p).d_p;
  out.det_dp = det_sign_log(d_p);
  if (out.det_dp.sign == 0) {
    out.dp_invertible = false;
    return out;
  }
  try {
    const Vector x = solve_linear(d_p, Vector::Ones(d_p.rows()));
    out.inner_product = x.sum();
    out.dp_invertible = true;
  } catch (const SingularMatrixError&) {
    out.dp_invertible = false;
    out.inner_product.reset();
  }
  return out;
}

Dichotomy classify_dichotomy(const MetricSpace& space, double p_root, double zero_tol,
                             double p_tol) {
  if (!(p_root > 0.0)) {
    throw std::invalid_argument("classify_dichotomy: root must be positive");
  }
  if (!(zero_tol > 0.0)) {
    throw std::invalid_argument("classify_dichotomy: zero_tol must be positive");
  }
  if (!(p_tol > 0.0)) {
    throw std::invalid_argument("classify_dichotomy: p_tol must be positive");
  }

  const Matrix d_p = p_matrices(space, p_root).d_p;
  const SymmetricEigen eig = symmetric_eigen(d_p);
  const Eigen::Index order = eig.values.size();

  double max_abs = 0.0;
  Eigen::Index nearest = 0;
  for (Eigen::Index k = 0; k < order; ++k) {
    const double mag = std::abs(eig.values(k));
    max_abs = std::max(max_abs, mag);
    if (mag < std::abs(eig.values(nearest))) nearest = k;
  }

  if (std::abs(eig.values(nearest)) <= zero_tol * (1.0 + max_abs)) {
    const Vector kernel = eig.vectors.col(nearest);
    if (std::abs(kernel.sum()) <= zero_tol * kernel.norm()) {
      return Dichotomy::DSingular;
    }
    return Dichotomy::Undetermined;
  }

  try {
    const Vector x = solve_linear(d_p, Vector::Ones(d_p.rows()));
    if (std::abs(x.sum()) < zero_tol) {
      return Dichotomy::InnerProductZero;
    }
  } catch (const SingularMatrixError&) {
    return Dichotomy::Undetermined;
  }

  // The inner product can slope steeply when d_p turns singular at a nearby
  // exponent: a root accurate to p_tol may still leave |inner| above
  // zero_tol.  A sign change across a window around the root pins a zero of
  // the inner product inside that window, which is just as conclusive.  Keep
  // the window clear of the nearest pole: eigenvalues of d_p drift at most
  // ||d d_p/dp||_F per unit of p, so min|eig| / (2 * drift) is a safe radius.
  double drift_sq = 0.0;
  const int n = space.point_count();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = space.distances(i, j);
      const double t = std::pow(d, p_root) * std::log(d);
      drift_sq += 2.0 * t * t;
    }
  }
  const double drift = std::sqrt(drift_sq);
  double window = 16.0 * p_tol;
  if (drift > 0.0) {
    window = std::min(window, std::abs(eig.values(nearest)) / (2.0 * drift));
  }
  if (window > 0.0 && p_root - window > 0.0) {
    const SanchezEvaluation below = sanchez_evaluate(space, p_root - window);
    const SanchezEvaluation above = sanchez_evaluate(space, p_root + window);
    if (below.dp_invertible && above.dp_invertible) {
      const double lo = *below.inner_product;
      const double hi = *above.inner_product;
      if (lo * hi < 0.0 || std::abs(lo) < zero_tol || std::abs(hi) < zero_tol) {
        return Dichotomy::InnerProductZero;
      }
    }
  }
  return Dichotomy::Undetermined;
}

std::optional<double> bordered_det_residual(const MetricSpace& space, double p) {
  const SanchezEvaluation e = sanchez_evaluate(space, p);
  if (!e.dp_invertible) return std::nullopt;
  const SignLogDet det_m = det_sign_log(p_matrices(space, p).m_p);
  const double lhs = det_m.value();
  const double rhs = -e.det_dp.value() * *e.inner_product;
  return std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

MgrResult mgr_compute(const MetricSpace& space, const MgrConfig& config) {
  validate_config(config);

  if (space.point_count() < 2) {
    MgrResult result;
    result.method = config.method;
    result.status = MgrStatus::AtLeastPMax;
    return result;
  }
  if (config.method == MgrMethod::Sanchez) {
    return sanchez_compute(space, config);
  }
  return scalar_compute(space, config);
}

}  // namespace mgrkit
