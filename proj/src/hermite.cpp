#include "qho/hermite.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qho {

namespace {

constexpr double kRescaleAbove = 1e150;
constexpr double kRescaleFactor = 1e-150;
const double kLogRescale = 150.0 * std::log(10.0);
const double kLogPiQuarter = 0.25 * std::log(std::numbers::pi);

// q_k = H_k / sqrt(2^k k!) by the normalized three-term recurrence,
// renormalized whenever the magnitude grows past 1e150.  The true values are
// (q, q_prev) * exp(log_scale).
struct Recurrence {
  double q = 1.0;
  double q_prev = 0.0;
  double log_scale = 0.0;
};

Recurrence run_recurrence(int n, double t) {
  Recurrence r;
  if (n == 0) return r;
  r.q_prev = 1.0;
  r.q = std::numbers::sqrt2 * t;
  for (int k = 2; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double next = std::sqrt(2.0 / kd) * t * r.q - std::sqrt((kd - 1.0) / kd) * r.q_prev;
    r.q_prev = r.q;
    r.q = next;
    if (std::abs(r.q) > kRescaleAbove) {
      r.q *= kRescaleFactor;
      r.q_prev *= kRescaleFactor;
      r.log_scale += kLogRescale;
    }
  }
  return r;
}

// log sqrt(2^n n!)
double log_sqrt_factor(int n) {
  return 0.5 * (n * std::numbers::ln2 + std::lgamma(static_cast<double>(n) + 1.0));
}

HermiteEval make_eval(int degree, double q, double log_scale, double extra_log, double t) {
  HermiteEval e;
  e.degree = degree;
  if (q == 0.0) {
    e.sign = 0;
    e.log_abs = -std::numeric_limits<double>::infinity();
    e.scaled = 0.0;
    return e;
  }
  e.sign = q > 0.0 ? 1 : -1;
  const double log_q = std::log(std::abs(q)) + log_scale;
  e.log_abs = log_q + extra_log;
  e.scaled = e.sign * std::exp(log_q - 0.5 * t * t - kLogPiQuarter);
  return e;
}

void require_degree(int n, int min_degree, const char* what) {
  if (n < min_degree)
    throw std::invalid_argument(fmt::format("{}: degree must be >= {}, got {}", what, min_degree, n));
}

// Zeros of q_n inside (lo, hi), which holds exactly one simple root.
double refine_zero(int n, int index, double lo, double hi) {
  auto f = [n](double t) { return run_recurrence(n, t); };
  Recurrence rlo = f(lo);
  int sign_lo = rlo.q > 0.0 ? 1 : (rlo.q < 0.0 ? -1 : 0);
  if (sign_lo == 0) return lo;

  double x = 0.5 * (lo + hi);
  int rejected = 0;
  bool bisect_only = false;
  for (int it = 0; it < 100; ++it) {
    const Recurrence r = f(x);
    if (r.q == 0.0) return x;
    const int s = r.q > 0.0 ? 1 : -1;
    if (s == sign_lo) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(x))) return 0.5 * (lo + hi);

    double next = 0.5 * (lo + hi);
    if (!bisect_only) {
      // q_n' = sqrt(2n) q_{n-1}; both carry the same renormalization.
      const double dq = std::sqrt(2.0 * n) * r.q_prev;
      const double candidate = dq != 0.0 ? x - r.q / dq : std::numeric_limits<double>::quiet_NaN();
      if (candidate > lo && candidate < hi) {
        if (std::abs(candidate - x) <= 1e-15 * std::max(1.0, std::abs(x))) return candidate;
        next = candidate;
      } else if (++rejected >= 3) {
        bisect_only = true;
      }
    }
    x = next;
  }
  throw ConvergenceError(fmt::format("hermite_zeros: root {} of degree {} did not converge", index, n));
}

ZeroTable next_table(const ZeroTable& previous) {
  const int n = previous.degree + 1;
  ZeroTable out;
  out.degree = n;
  out.zeros.resize(static_cast<std::size_t>(n));
  const double bound = std::sqrt(2.0 * n + 1.0) + 0.5;
  for (int i = 0; i < n; ++i) {
    const double lo = (i == 0) ? -bound : previous.zeros[static_cast<std::size_t>(i - 1)];
    const double hi = (i == n - 1) ? bound : previous.zeros[static_cast<std::size_t>(i)];
    out.zeros[static_cast<std::size_t>(i)] = refine_zero(n, i + 1, lo, hi);
  }
  // Exact antisymmetry; middle zero of an odd degree is 0.
  for (int i = 0; i < n / 2; ++i) {
    auto& a = out.zeros[static_cast<std::size_t>(i)];
    auto& b = out.zeros[static_cast<std::size_t>(n - 1 - i)];
    const double m = 0.5 * (b - a);
    a = -m;
    b = m;
  }
  if (n % 2 == 1) out.zeros[static_cast<std::size_t>(n / 2)] = 0.0;
  return out;
}

}  // namespace

double HermiteEval::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

double ZeroTable::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < zeros.size(); ++i) gap = std::min(gap, zeros[i] - zeros[i - 1]);
  return gap;
}

HermiteEval eval_hermite(int n, double t) {
  require_degree(n, 0, "eval_hermite");
  const Recurrence r = run_recurrence(n, t);
  return make_eval(n, r.q, r.log_scale, log_sqrt_factor(n), t);
}

HermiteEval eval_hermite_derivative(int n, double t) {
  require_degree(n, 1, "eval_hermite_derivative");
  const Recurrence r = run_recurrence(n - 1, t);
  // H_n' = 2n H_{n-1} = 2n sqrt(2^{n-1}(n-1)!) q_{n-1}
  HermiteEval e = make_eval(n, r.q, r.log_scale,
                            std::log(2.0 * n) + log_sqrt_factor(n - 1), t);
  e.scaled *= std::sqrt(2.0 * n);
  return e;
}

double normalized_hermite(int n, double t) {
  return normalized_hermite_pair(n, t).first;
}

std::pair<double, double> normalized_hermite_pair(int n, double t) {
  if (n == 0) return {1.0, 0.0};
  double prev = 1.0;
  double cur = std::numbers::sqrt2 * t;
  for (int k = 2; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double next = std::sqrt(2.0 / kd) * t * cur - std::sqrt((kd - 1.0) / kd) * prev;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

std::vector<ZeroTable> hermite_zero_tables(int n) {
  require_degree(n, 1, "hermite_zeros");
  std::vector<ZeroTable> tables;
  tables.reserve(static_cast<std::size_t>(n));
  tables.push_back(ZeroTable{1, {0.0}});
  for (int k = 2; k <= n; ++k) tables.push_back(next_table(tables.back()));
  return tables;
}

ZeroTable hermite_zeros(int n) {
  require_degree(n, 1, "hermite_zeros");
  ZeroTable table{1, {0.0}};
  for (int k = 2; k <= n; ++k) table = next_table(table);
  return table;
}

double hermite_log_norm_sq(int n) {
  require_degree(n, 0, "hermite_norm_sq");
  return 0.5 * std::log(std::numbers::pi) + n * std::numbers::ln2 +
         std::lgamma(static_cast<double>(n) + 1.0);
}

ThetaValue theta_functional(int n, double t) {
  require_degree(n, 1, "theta_functional");
  const Recurrence r = run_recurrence(n, t);
  // Theta = 2n 2^n n! (q_n^2 + q_{n-1}^2)
  const double s = r.q * r.q + r.q_prev * r.q_prev;
  ThetaValue out;
  out.log_value = std::log(2.0 * n) + 2.0 * log_sqrt_factor(n) + std::log(s) + 2.0 * r.log_scale;
  out.scaled = 2.0 * n * std::exp(std::log(s) + 2.0 * r.log_scale - t * t - 2.0 * kLogPiQuarter);
  return out;
}

double first_zero_asymptotic_residual(int n) {
  require_degree(n, 1, "first_zero_asymptotic_residual");
  const ZeroTable table = hermite_zeros(n);
  const double extreme = -table.zeros.front();
  const double m = 2.0 * n + 1.0;
  return (std::sqrt(m) - extreme) * std::sqrt(6.0) * std::pow(m, 1.0 / 6.0);
}

void write_zero_table_csv(std::ostream& out, const ZeroTable& table) {
  out << fmt::format("# hermite zeros, n={}\n", table.degree);
  out << "i,t\n";
  for (std::size_t i = 0; i < table.zeros.size(); ++i)
    out << fmt::format("{},{:.17g}\n", i + 1, table.zeros[i]);
}

GaussHermiteRule gauss_hermite_rule(int m) {
  require_degree(m, 1, "gauss_hermite_rule");
  GaussHermiteRule rule;
  rule.nodes = hermite_zeros(m).zeros;
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  for (double t : rule.nodes) {
    const double q = normalized_hermite(m - 1, t);
    rule.weights.push_back(sqrt_pi / (m * q * q));
  }
  return rule;
}

namespace {

// Signed value exp(log_abs - shift) of an evaluation.
double rescaled(const HermiteEval& e, double shift) { return e.sign == 0 ? 0.0 : e.sign * std::exp(e.log_abs - shift); }

// (H_n(t), H_n'(t)) by differentiating the raw recurrence.
std::pair<double, double> raw_with_derivative(int n, double t) {
  double h0 = 1.0, d0 = 0.0;
  if (n == 0) return {h0, d0};
  double h1 = 2.0 * t, d1 = 2.0;
  for (int k = 2; k <= n; ++k) {
    const double h2 = 2.0 * t * h1 - 2.0 * (k - 1) * h0;
    const double d2 = 2.0 * h1 + 2.0 * t * d1 - 2.0 * (k - 1) * d0;
    h0 = h1;
    d0 = d1;
    h1 = h2;
    d1 = d2;
  }
  return {h1, d1};
}

}  // namespace

std::vector<IdentityCheck> hermite_identity_checks(int n) {
  require_degree(n, 1, "hermite_identity_checks");
  if (n > 100) throw std::invalid_argument("hermite_identity_checks: degree must be <= 100");
  IdentityCheck rec{"H_n = 2t H_{n-1} - 2(n-1) H_{n-2}", 0.0, 1e-10};
  IdentityCheck der{"H_n' = 2n H_{n-1}", 0.0, 1e-10};
  IdentityCheck mix{"H_n = 2t H_{n-1} - H_{n-1}'", 0.0, 1e-10};
  for (int k = 0; k <= 240; ++k) {
    const double t = -6.0 + 12.0 * k / 240.0;
    const HermiteEval hn = eval_hermite(n, t);
    const HermiteEval hm = eval_hermite(n - 1, t);
    const double shift = std::max(hn.log_abs, hm.log_abs + std::log(std::max(1.0, 2.0 * n * std::max(1.0, std::abs(t)))));
    const double a = rescaled(hn, shift);
    const double b = rescaled(hm, shift);
    if (n >= 2) {
      const double c = rescaled(eval_hermite(n - 2, t), shift);
      const double terms = std::abs(a) + std::abs(2.0 * t * b) + std::abs(2.0 * (n - 1) * c);
      rec.max_residual = std::max(rec.max_residual, std::abs(a - 2.0 * t * b + 2.0 * (n - 1) * c) / terms);
    }
    const auto [raw, raw_d] = raw_with_derivative(n, t);
    const HermiteEval dn = eval_hermite_derivative(n, t);
    const double scale_d = std::max(std::abs(raw_d), 2.0 * n * std::abs(raw_with_derivative(n - 1, t).first));
    if (scale_d > 0.0) der.max_residual = std::max(der.max_residual, std::abs(dn.value() - raw_d) / scale_d);
    const double dm = n >= 2 ? rescaled(eval_hermite_derivative(n - 1, t), shift) : 0.0;
    const double terms = std::abs(a) + std::abs(2.0 * t * b) + std::abs(dm);
    mix.max_residual = std::max(mix.max_residual, std::abs(a - 2.0 * t * b + dm) / terms);
    (void)raw;
  }

  IdentityCheck zeros{"h_n(t_{n,i}) = 0", 0.0, 1e-12};
  for (double z : hermite_zeros(n).zeros) zeros.max_residual = std::max(zeros.max_residual, std::abs(eval_hermite(n, z).scaled));

  IdentityCheck norm{"sum_i w_i H_n(t_i)^2 = sqrt(pi) 2^n n!", 0.0, 1e-10};
  const GaussHermiteRule rule = gauss_hermite_rule(n + 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double q = normalized_hermite(n, rule.nodes[i]);
    acc += rule.weights[i] * q * q;
  }
  // q_n = H_n / sqrt(2^n n!), so the sum equals sqrt(pi) exactly.
  norm.max_residual = std::abs(acc / std::sqrt(std::numbers::pi) - 1.0);
  return {rec, der, mix, zeros, norm};
}

}  // namespace qho
