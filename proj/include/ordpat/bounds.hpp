#pragma once

// The parameter functions phi, eta, gamma and the bound functions f, g, h, s,
// evaluated rigorously in BigReal interval arithmetic. Everything is expressed
// through ell = log_{r+1} n; n itself is never formed.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ordpat/bigreal.hpp"
#include "ordpat/error.hpp"

namespace ordpat {

namespace detail {

/// Bernoulli numbers B_0..B_m (Akiyama-Tanigawa, so B_1 = +1/2; only even
/// indices are used).
inline std::vector<mpq_class> bernoulli_numbers(int m) {
  std::vector<mpq_class> a(static_cast<std::size_t>(m) + 1), b(a.size());
  for (int i = 0; i <= m; ++i) {
    a[i] = mpq_class(1, i + 1);
    for (int j = i; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    b[i] = a[0];
  }
  return b;
}

/// 1 / (k log2(k)^2).
inline BigReal alpha_term(long k) {
  const BigReal kk(k);
  const BigReal l = log2(kk);
  return BigReal(1) / (kk * l * l);
}

}  // namespace detail

/// Crude enclosure of alpha: the partial sum over k = 9..N-1 plus the integral
/// tail bounds  ln2/log2(N) <= sum_{k>=N} <= ln2/log2(N-1).  Enclosures nest as
/// N grows.
inline BigReal alpha_enclosure(long N) {
  if (N < 10) throw precondition_error("alpha_enclosure needs N >= 10");
  BigReal s(0);
  for (long k = 9; k < N; ++k) s += detail::alpha_term(k);
  const BigReal ln2 = BigReal::ln2();
  const BigReal lo = ln2 / log2(BigReal(N));
  const BigReal hi = ln2 / log2(BigReal(N - 1));
  return BigReal::hull(s + lo, s + hi);
}

/// alpha = sum_{i >= -1} 1/((i+10) log2(i+10)^2), enclosed to width far below
/// 2^-64: partial sum to N, then an Euler-Maclaurin tail with K correction terms
/// and its remainder bound (the summand is completely monotone, so the remainder
/// is at most the first omitted term).
inline BigReal alpha_constant(long N = 1000, int K = 12) {
  BigReal s(0);
  for (long k = 9; k < N; ++k) s += detail::alpha_term(k);

  // Taylor coefficients at N of 1/((N+h) ln(N+h)^2).
  const int D = 2 * K;
  const BigReal bn(N);
  std::vector<BigReal> u(D, BigReal(0));  // ln(N+h)
  u[0] = log(bn);
  BigReal pw(1);
  for (int k = 1; k < D; ++k) {
    pw = pw / bn;
    u[k] = pw / BigReal(k);
    if (k % 2 == 0) u[k] = -u[k];
  }
  std::vector<BigReal> q(D, BigReal(0));  // (N+h) * u^2
  {
    std::vector<BigReal> u2(D, BigReal(0));
    for (int i = 0; i < D; ++i)
      for (int j = 0; i + j < D; ++j) u2[i + j] += u[i] * u[j];
    for (int i = 0; i < D; ++i) {
      q[i] = bn * u2[i];
      if (i > 0) q[i] += u2[i - 1];
    }
  }
  std::vector<BigReal> c(D, BigReal(0));  // 1/q
  c[0] = BigReal(1) / q[0];
  for (int n = 1; n < D; ++n) {
    BigReal acc(0);
    for (int k = 1; k <= n; ++k) acc += q[k] * c[n - k];
    c[n] = -acc / q[0];
  }
  const BigReal ln2 = BigReal::ln2();
  const BigReal ln2sq = ln2 * ln2;

  const auto B = detail::bernoulli_numbers(D);
  BigReal tail = BigReal(1) / log(bn) + c[0] / BigReal(2);  // integral + f(N)/2, in ln units
  for (int j = 1; j < K; ++j) tail -= BigReal(B[2 * j] / (2 * j)) * c[2 * j - 1];
  const BigReal rem = BigReal(abs(B[2 * K]) / (2 * K)) * c[2 * K - 1];
  const BigReal radius = BigReal::hull(rem, -rem);
  return s + ln2sq * (tail + radius);
}

/// phi, eta, gamma as functions of t >= -1 (gamma(-1) = 0). gamma_step_slack,
/// when present, returns gamma(t) - gamma(t-1) - 8 phi(t-1) exactly, so that an
/// equality-by-construction is certified rather than left to interval overlap.
struct ParamFns {
  std::function<BigReal(int)> phi;
  std::function<BigReal(int)> eta;
  std::function<BigReal(int)> gamma;
  std::function<BigReal(int)> gamma_step_slack;
  bool compliant = false;
};

/// Checks, for every t in [0, t_max]:
///   gamma(t) - gamma(t-1) >= 8 phi(t-1),  1 - gamma(t-1) >= 8 phi(t-1),
///   phi(t-1) > eta(t) > phi(t),  phi(t-1) - eta(t) > phi(t) - eta(t+1).
/// Throws inconclusive when an interval comparison cannot be decided.
inline bool check_param_fns(const ParamFns& p, int t_max) {
  if (t_max < 1) throw precondition_error("check_param_fns needs t_max >= 1");
  const BigReal eight(8), zero(0), one(1);
  for (int t = 0; t <= t_max; ++t) {
    const BigReal phm = p.phi(t - 1);
    const BigReal step = p.gamma_step_slack ? p.gamma_step_slack(t) : p.gamma(t) - p.gamma(t - 1) - eight * phm;
    if (!decide_le(zero, step)) return false;
    if (!decide_le(eight * phm, one - p.gamma(t - 1))) return false;
    const BigReal et = p.eta(t), ph = p.phi(t);
    if (!decide_less(et, phm)) return false;
    if (!decide_less(ph, et)) return false;
    if (!decide_less(ph - p.eta(t + 1), phm - et)) return false;
  }
  return true;
}

/// The instantiation phi(t) = 1/(8 alpha) * 1/((t+10) log2(t+10)^2),
/// eta(t) = (phi(t-1) + phi(t))/2, gamma(t) = 8 * sum_{-1 <= i < t} phi(i).
/// Values are cached per working precision. Flagged compliant after a
/// check_param_fns pass up to t = 100.
inline ParamFns default_params() {
  struct Cache {
    std::mutex mu;
    std::map<mpfr_prec_t, BigReal> alpha;
    std::map<std::pair<mpfr_prec_t, int>, BigReal> phi;
  };
  auto cache = std::make_shared<Cache>();
  auto phi = [cache](int t) -> BigReal {
    if (t < -1) throw precondition_error("phi is defined for t >= -1");
    const auto prec = working_precision();
    std::lock_guard lock(cache->mu);
    auto key = std::make_pair(prec, t);
    if (auto it = cache->phi.find(key); it != cache->phi.end()) return it->second;
    auto ai = cache->alpha.find(prec);
    if (ai == cache->alpha.end()) ai = cache->alpha.emplace(prec, alpha_constant()).first;
    BigReal v = detail::alpha_term(t + 10) / (BigReal(8) * ai->second);
    cache->phi.emplace(key, v);
    return v;
  };
  ParamFns p;
  p.phi = phi;
  p.eta = [phi](int t) { return (phi(t - 1) + phi(t)) / BigReal(2); };
  p.gamma = [phi](int t) -> BigReal {
    if (t < -1) throw precondition_error("gamma is defined for t >= -1");
    BigReal s(0);
    for (int i = -1; i < t; ++i) s += phi(i);
    return BigReal(8) * s;
  };
  p.gamma_step_slack = [](int) { return BigReal(0); };
  p.compliant = with_precision_escalation([&] { return check_param_fns(p, 100); });
  return p;
}

struct BoundContext {
  int r = 1;
  ParamFns params;
  BigReal ell;  // log_{r+1} n

  BoundContext(int r_, ParamFns p, BigReal l) : r(r_), params(std::move(p)), ell(std::move(l)) {
    if (r < 1) throw precondition_error("r must be >= 1");
    if (!ell.certainly_positive()) throw precondition_error("ell must be positive");
  }
};

namespace detail {

inline BigReal log_base(const BoundContext& c, const BigReal& x) { return log(x) / log(BigReal(c.r + 1)); }
/// log_{r+1}(6(r+1)), the factor converting g's exponent into log_{r+1} units.
inline BigReal c6(const BoundContext& c) { return log_base(c, BigReal(6L * (c.r + 1))); }
/// (1+u)^x - 1, accurate for tiny u.
inline BigReal pow1p_m1(const BigReal& u, const BigReal& x) { return expm1(x * log1p(u)); }
/// 4^{1/(phi(t-1) - eta(t))}, the constant in f.
inline BigReal f_const(const ParamFns& p, int t) {
  return pow(BigReal(4), BigReal(1) / (p.phi(t - 1) - p.eta(t)));
}
/// 4^{1/(phi(t-2) - eta(t-1))}, the constant in h.
inline BigReal h_const(const ParamFns& p, int t) {
  return pow(BigReal(4), BigReal(1) / (p.phi(t - 2) - p.eta(t - 1)));
}
/// 2 lambda^{gamma(t)} (3 lambda^{phi(t)} - p).
inline BigReal g_exp_at(const ParamFns& p, const BigReal& lambda, int t, const BigReal& pp) {
  return BigReal(2) * pow(lambda, p.gamma(t)) * (BigReal(3) * pow(lambda, p.phi(t)) - pp);
}
inline void require_tp(int t, const BigReal& p) {
  if (t < 1) throw precondition_error("t must be >= 1");
  if (!p.certainly_nonnegative()) throw precondition_error("p must be >= 0");
}

/// D = ell - log_{r+1} s(n,t,p), computed directly from
/// s = (g(n/3, t-1, p) - 1) / (2r+1).
inline BigReal stretch_loss(const BoundContext& c, int t, const BigReal& p) {
  const BigReal lb = log(BigReal(c.r + 1));
  const BigReal log3 = log(BigReal(3)) / lb;
  const BigReal ell3 = c.ell - log3;
  if (!ell3.certainly_positive()) throw precondition_error("n/3 < 1");
  const BigReal e = c6(c) * g_exp_at(c.params, ell3, t - 1, p);
  const BigReal lg = ell3 - e;  // log_{r+1} g(n/3, t-1, p)
  if (!lg.certainly_positive()) throw precondition_error("g(n/3, t-1, p) <= 1, so s(n,t,p) is not positive");
  const BigReal corr = log1p(-exp(-lg * lb)) / lb;  // log_{r+1}(1 - 1/g)
  return log3 + e + log_base(c, BigReal(2L * c.r + 1)) - corr;
}

}  // namespace detail

/// f(n,t,p) = ell^{phi(t)} - p/2 - 4^{1/(phi(t-1) - eta(t))}.
inline BigReal f_val(const BoundContext& c, int t, const BigReal& p) {
  detail::require_tp(t, p);
  return pow(c.ell, c.params.phi(t)) - p / BigReal(2) - detail::f_const(c.params, t);
}
/// h(n,t,p) = ell^{eta(t)} + p/2 - 4^{1/(phi(t-2) - eta(t-1))}.
inline BigReal h_val(const BoundContext& c, int t, const BigReal& p) {
  detail::require_tp(t, p);
  return pow(c.ell, c.params.eta(t)) + p / BigReal(2) - detail::h_const(c.params, t);
}
/// log_{6(r+1)}(n / g(n,t,p)) = 2 ell^{gamma(t)} (3 ell^{phi(t)} - p).
inline BigReal g_exponent(const BoundContext& c, int t, const BigReal& p) {
  detail::require_tp(t, p);
  return detail::g_exp_at(c.params, c.ell, t, p);
}
/// log_{r+1} g(n,t,p).
inline BigReal g_log(const BoundContext& c, int t, const BigReal& p) {
  return c.ell - detail::c6(c) * g_exponent(c, t, p);
}
/// log_{r+1} s(n,t,p).
inline BigReal s_log(const BoundContext& c, int t, const BigReal& p) {
  detail::require_tp(t, p);
  return c.ell - detail::stretch_loss(c, t, p);
}

/// One checked inequality. margin >= 0 certifies it; `units` says whether the
/// margin is in path-length units ("abs") or log_{r+1} units ("log").
struct InequalityResult {
  std::string name;
  BigReal margin;
  std::string units;
  bool pass = false;
};

namespace detail {
inline InequalityResult make_result(std::string name, BigReal m, std::string units) {
  const bool ok = m.certainly_nonnegative();
  if (!ok && !m.certainly_negative()) throw inconclusive(name + ": margin " + m.str() + " straddles 0");
  return {std::move(name), std::move(m), std::move(units), ok};
}
inline void require(bool certified, const std::string& what) {
  if (!certified) throw precondition_error(what + " is not satisfied (or cannot be certified)");
}
}  // namespace detail

/// 4^{1/(phi(t) (phi(t-1) - eta(t)))}.
inline BigReal mono_threshold(const ParamFns& p, int t) {
  return pow(BigReal(4), BigReal(1) / (p.phi(t) * (p.phi(t - 1) - p.eta(t))));
}
/// Right-hand side of condition (3): (2 + p/2)^{1/phi(t)} + mono_threshold(t).
inline BigReal bounds_threshold(const ParamFns& params, int t, const BigReal& p) {
  return pow(BigReal(2) + p / BigReal(2), BigReal(1) / params.phi(t)) + mono_threshold(params, t);
}

/// Monotonicity in t of f, g and h (h only for t >= 2, since h(n,0,p) would
/// need phi(-2)). Requires ell >= mono_threshold(t) and p <= 2 ell^{phi(t)}.
inline std::vector<InequalityResult> verify_mono(const BoundContext& c, int t, const BigReal& p) {
  detail::require_tp(t, p);
  const auto& P = c.params;
  detail::require(certainly_ge(c.ell, mono_threshold(P, t)), "ell >= 4^{1/(phi(t)(phi(t-1)-eta(t)))}");
  detail::require(certainly_le(p, BigReal(2) * pow(c.ell, P.phi(t))), "p <= 2 ell^phi(t)");
  std::vector<InequalityResult> out;
  out.push_back(detail::make_result(
      "mono_f",
      pow(c.ell, P.phi(t - 1)) - pow(c.ell, P.phi(t)) - detail::f_const(P, t - 1) + detail::f_const(P, t), "abs"));
  out.push_back(detail::make_result(
      "mono_g", detail::c6(c) * (detail::g_exp_at(P, c.ell, t, p) - detail::g_exp_at(P, c.ell, t - 1, p)), "log"));
  if (t >= 2)
    out.push_back(detail::make_result(
        "mono_h",
        pow(c.ell, P.eta(t - 1)) - pow(c.ell, P.eta(t)) - detail::h_const(P, t - 1) + detail::h_const(P, t), "abs"));
  return out;
}

/// Checks conditions (3) and (4): ell >= bounds_threshold and p < 2 ell^{phi(t)}.
inline void require_bounds_conditions(const BoundContext& c, int t, const BigReal& p) {
  detail::require_tp(t, p);
  detail::require(certainly_ge(c.ell, bounds_threshold(c.params, t, p)),
                  "log_{r+1} n >= (2+p/2)^{1/phi(t)} + 4^{1/(phi(t)(phi(t-1)-eta(t)))}");
  detail::require(certainly_less(p, BigReal(2) * pow(c.ell, c.params.phi(t))), "p < 2 (log_{r+1} n)^phi(t)");
}

/// The five inequalities recursionf, recursionh, recursiong, middlef, middleg,
/// plus "loss": ell - log s <= c1 ell^{c0}, the estimate feeding the
/// log inequality used by the bounds.
inline std::vector<InequalityResult> verify_bounds(const BoundContext& c, int t, const BigReal& p) {
  require_bounds_conditions(c, t, p);
  const auto& P = c.params;
  const BigReal half = BigReal(1) / BigReal(2);
  const BigReal cc = detail::c6(c);
  const BigReal D = detail::stretch_loss(c, t, p);
  const BigReal u = -D / c.ell;  // log s = ell (1 + u)
  if (!(u + BigReal(1)).certainly_positive()) throw precondition_error("s(n,t,p) < r+1");
  const BigReal lam = c.ell - D;
  const BigReal ph = P.phi(t), et = P.eta(t), ga = P.gamma(t);
  const BigReal p1 = p + BigReal(1);

  std::vector<InequalityResult> out;
  out.push_back(detail::make_result("recursionf", pow(c.ell, ph) * detail::pow1p_m1(u, ph) + half, "abs"));
  out.push_back(detail::make_result("recursionh", pow(c.ell, et) * detail::pow1p_m1(u, et) + half, "abs"));
  {
    // E(lam,t,p+1) - E(ell,t,p), written to avoid cancellation.
    const BigReal a = ga + ph;
    const BigReal dE = BigReal(6) * pow(c.ell, a) * detail::pow1p_m1(u, a) -
                       BigReal(2) * p * pow(c.ell, ga) * detail::pow1p_m1(u, ga) -
                       BigReal(2) * pow(lam, ga);
    out.push_back(detail::make_result("recursiong", -D - cc * dE, "log"));
  }
  {
    const BigReal ell3 = c.ell - log(BigReal(3)) / log(BigReal(c.r + 1));
    out.push_back(detail::make_result("middlef", pow(ell3, P.phi(t - 1)) - pow(c.ell, et) - p, "abs"));
  }
  out.push_back(detail::make_result("middleg", cc * detail::g_exp_at(P, c.ell, t, p) - D, "log"));
  {
    const BigReal c0 = P.gamma(t - 1) + P.phi(t - 1);
    out.push_back(detail::make_result("loss", BigReal(7) * cc * pow(c.ell, c0) - D, "log"));
  }
  return out;
}

/// s(n,t,p) >= n / (6(r+1))^{2 ell^{gamma(t-1)} (3 ell^{phi(t-1)} - p) + 1},
/// for ell >= 2^{1/phi(t)}.
inline InequalityResult verify_lowbdstretch(const BoundContext& c, int t, const BigReal& p) {
  detail::require_tp(t, p);
  const auto& P = c.params;
  detail::require(certainly_ge(c.ell, pow(BigReal(2), BigReal(1) / P.phi(t))), "ell >= 2^{1/phi(t)}");
  const BigReal lb = log(BigReal(c.r + 1));
  const BigReal log3 = log(BigReal(3)) / lb;
  const BigReal v = -log3 / c.ell;  // ell' = ell (1 + v)
  const BigReal gm = P.gamma(t - 1), a = gm + P.phi(t - 1);
  // E(ell) - E(ell') at level t-1.
  const BigReal dE = BigReal(-6) * pow(c.ell, a) * detail::pow1p_m1(v, a) +
                     BigReal(2) * p * pow(c.ell, gm) * detail::pow1p_m1(v, gm);
  const BigReal cc = detail::c6(c);
  const BigReal ell3 = c.ell - log3;
  const BigReal lg = ell3 - cc * detail::g_exp_at(P, ell3, t - 1, p);
  if (!lg.certainly_positive()) throw precondition_error("g(n/3, t-1, p) <= 1, so s(n,t,p) is not positive");
  const BigReal corr = log1p(-exp(-lg * lb)) / lb;
  const BigReal m = cc * dE + cc - log3 - detail::log_base(c, BigReal(2L * c.r + 1)) + corr;
  return detail::make_result("lowbdstretch", m, "log");
}

/// (ell - c1 ell^{c0})^x >= ell^x - 1/2 for c0 = gamma(t-1) + phi(t-1),
/// c1 = 7 log_{r+1}(6(r+1)) and x = phi(t) (use_eta false) or eta(t).
/// Its hypotheses are checked first.
inline InequalityResult verify_log_inequality(const BoundContext& c, int t, bool use_eta) {
  if (t < 1) throw precondition_error("t must be >= 1");
  const auto& P = c.params;
  const BigReal c0 = P.gamma(t - 1) + P.phi(t - 1);
  const BigReal c1 = BigReal(7) * detail::c6(c);
  const BigReal x = use_eta ? P.eta(t) : P.phi(t);
  const BigReal one(1);
  detail::require(c0.certainly_positive() && certainly_less(c0, one), "c0 in (0,1)");
  detail::require(certainly_ge(c.ell, one) && certainly_ge(c.ell, pow(c1, one / (one - c0))),
                  "ell >= max(1, c1^{1/(1-c0)})");
  detail::require(certainly_le(x, one - c0 - log(BigReal(2) * c1) / log(c.ell)), "x <= 1 - c0 - log_ell(2 c1)");
  const BigReal u = -c1 * pow(c.ell, c0 - one);
  const BigReal m = pow(c.ell, x) * detail::pow1p_m1(u, x) + one / BigReal(2);
  return detail::make_result(use_eta ? "log_inequality_eta" : "log_inequality_phi", m, "abs");
}

/// One point of the verification grid.
struct GridPoint {
  int r = 1;
  int t = 1;
  std::string p_label;  // "0", "1", "2" or "max"
  int ell_factor = 1;   // ell = factor * condition-(3) threshold
};

/// Default grid: r in {1,2,3,5}, t in [1, t_max], p in {0,1,2} at 1x/2x/10x the
/// condition-(3) threshold for that p, and p = "max": at ell = 2x/10x the p = 0
/// threshold, an integer within relative 2^-40 below the largest p allowed by
/// (3) and (4). The exact maximum sits on the boundary of (3) and cannot be
/// certified at any finite precision.
inline std::vector<GridPoint> default_grid(const std::vector<int>& rs, int t_max) {
  std::vector<GridPoint> g;
  for (int r : rs)
    for (int t = 1; t <= t_max; ++t) {
      for (const char* pl : {"0", "1", "2"})
        for (int k : {1, 2, 10}) g.push_back({r, t, pl, k});
      for (int k : {2, 10}) g.push_back({r, t, "max", k});
    }
  return g;
}

struct GridRow {
  GridPoint point;
  BigReal p;
  BigReal ell;
  std::vector<InequalityResult> results;
};

/// Evaluates every verifier at one grid point, escalating precision on
/// inconclusive comparisons. Returns nullopt if the "max" p would be below 3
/// (it then duplicates the small-p rows).
inline std::optional<GridRow> evaluate_grid_point(const ParamFns& params, const GridPoint& gp) {
  return with_precision_escalation([&]() -> std::optional<GridRow> {
    BigReal p(0), ell(0);
    if (gp.p_label == "max") {
      const BigReal q = mono_threshold(params, gp.t);
      ell = (BigReal(gp.ell_factor) * bounds_threshold(params, gp.t, BigReal(0))).upper();
      const BigReal cap3 = BigReal(2) * pow(ell - q, params.phi(gp.t)) - BigReal(4);
      p = (cap3 - ldexp(cap3, -40)).floor_lower();
      if (certainly_less(p, BigReal(3))) return std::nullopt;
      // (4) is implied: (ell - q)^phi < ell^phi.
    } else {
      p = BigReal(std::stol(gp.p_label));
      ell = (BigReal(gp.ell_factor) * bounds_threshold(params, gp.t, p)).upper();
    }
    const BoundContext ctx(gp.r, params, ell);
    GridRow row{gp, p, ell, {}};
    for (auto& x : verify_mono(ctx, gp.t, p)) row.results.push_back(std::move(x));
    for (auto& x : verify_bounds(ctx, gp.t, p)) row.results.push_back(std::move(x));
    row.results.push_back(verify_lowbdstretch(ctx, gp.t, p));
    row.results.push_back(verify_log_inequality(ctx, gp.t, false));
    row.results.push_back(verify_log_inequality(ctx, gp.t, true));
    return row;
  });
}

}  // namespace ordpat
