#include "hierfix/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hierfix/errors.hpp"

namespace hierfix {

namespace {

constexpr double kZeroTol = 1e-14;
constexpr double kPassExponent = 0.05;
constexpr double kFlatExponent = 0.005;

void check_prefix(const Schedule& sch) {
  for (std::size_t n = 1; n <= Schedule::kPrefixCheck; ++n) {
    const double a = sch.alpha(n);
    const double b = sch.beta(n);
    if (!(a >= 0.0 && a <= 1.0))
      throw UsageError("schedule: alpha_" + std::to_string(n) + " outside [0,1]");
    if (!(b >= 0.0 && b <= 1.0))
      throw UsageError("schedule: beta_" + std::to_string(n) + " outside [0,1]");
  }
}

double safe_ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

Verdict from_bool(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Schedule power_schedule_unchecked(double s, double t) {
  Schedule sch;
  sch.alpha = [s](std::size_t n) { return std::pow(static_cast<double>(n), -s); };
  sch.beta = [t](std::size_t n) { return std::pow(static_cast<double>(n), -t); };
  sch.descriptor.kind = ScheduleDescriptor::Kind::Power;
  sch.descriptor.s = s;
  sch.descriptor.t = t;
  sch.descriptor.label = "power";
  return sch;
}

Schedule power_schedule(double s, double t) {
  if (!std::isfinite(s) || !std::isfinite(t)) throw UsageError("power schedule: non-finite exponent");
  if (s > 1.0) throw UsageError("power schedule: Σαₙ=∞ violated (s=" + std::to_string(s) + " > 1)");
  if (!(s > 0.0)) throw UsageError("power schedule: αₙ→0 violated (s must be > 0)");
  if (!(t > s)) throw UsageError("power schedule: βₙ/αₙ→0 violated (t must exceed s)");
  return power_schedule_unchecked(s, t);
}

Schedule table_schedule(std::vector<double> alpha, std::vector<double> beta) {
  if (alpha.empty() || beta.empty()) throw UsageError("table schedule: empty table");
  Schedule sch;
  sch.alpha = [alpha](std::size_t n) { return alpha[std::min(n, alpha.size()) - 1]; };
  sch.beta = [beta](std::size_t n) { return beta[std::min(n, beta.size()) - 1]; };
  sch.descriptor.kind = ScheduleDescriptor::Kind::Table;
  sch.descriptor.alpha_table = std::move(alpha);
  sch.descriptor.beta_table = std::move(beta);
  sch.descriptor.label = "table";
  check_prefix(sch);
  return sch;
}

Schedule custom_schedule(Sequence alpha, Sequence beta, std::string label) {
  Schedule sch{std::move(alpha), std::move(beta), {}};
  sch.descriptor.label = std::move(label);
  check_prefix(sch);
  return sch;
}

Schedule with_zero_beta(Schedule sch) {
  sch.beta = [](std::size_t) { return 0.0; };
  sch.descriptor.t = std::numeric_limits<double>::infinity();
  sch.descriptor.beta_table = {0.0};
  sch.descriptor.label += "+zero_beta";
  if (sch.descriptor.kind == ScheduleDescriptor::Kind::Power)
    sch.descriptor.kind = ScheduleDescriptor::Kind::Custom;
  return sch;
}

Verdict ScheduleReport::overall() const {
  bool inconclusive = false;
  for (const auto& item : items) {
    if (item.verdict == Verdict::Fail) return Verdict::Fail;
    if (item.verdict == Verdict::Inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::Inconclusive : Verdict::Pass;
}

const ConditionVerdict& ScheduleReport::find(const std::string& clause) const {
  for (const auto& item : items)
    if (item.clause == clause) return item;
  throw UsageError("schedule report: no clause '" + clause + "'");
}

Verdict classify_to_zero(const std::vector<double>& values, std::size_t first_index,
                         std::vector<std::pair<std::size_t, double>>* tail_out) {
  if (values.size() < 2) return Verdict::Inconclusive;
  const std::size_t count = std::max<std::size_t>(2, values.size() / 10);
  const std::size_t start = values.size() - count;
  if (tail_out) {
    tail_out->clear();
    for (std::size_t i = start; i < values.size(); ++i)
      tail_out->emplace_back(first_index + i, values[i]);
  }

  double tail_max = 0.0;
  double tail_min = std::numeric_limits<double>::infinity();
  bool nonincreasing = true;
  for (std::size_t i = start; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) return Verdict::Fail;
    tail_max = std::max(tail_max, std::abs(v));
    tail_min = std::min(tail_min, std::abs(v));
    if (i > start && std::abs(v) > std::abs(values[i - 1]) * (1.0 + 1e-9) + kZeroTol)
      nonincreasing = false;
  }
  if (tail_max <= kZeroTol) return Verdict::Pass;

  const double first = std::abs(values[start]);
  const double last = std::abs(values.back());
  const double n0 = static_cast<double>(first_index + start);
  const double n1 = static_cast<double>(first_index + values.size() - 1);
  double exponent;
  if (last <= kZeroTol)
    exponent = std::numeric_limits<double>::infinity();
  else if (first <= kZeroTol)
    exponent = -std::numeric_limits<double>::infinity();
  else
    exponent = -std::log(last / first) / std::log(n1 / n0);

  if (nonincreasing && exponent >= kPassExponent) return Verdict::Pass;
  if (tail_min > kZeroTol && exponent <= kFlatExponent) return Verdict::Fail;
  return Verdict::Inconclusive;
}

ScheduleReport validate_schedule(const Schedule& sch, const Sequence& a_seq,
                                 const Sequence& deviation, std::size_t horizon) {
  if (horizon < 100) throw UsageError("validate_schedule: horizon must be >= 100");

  std::vector<double> alpha(horizon + 1), beta(horizon + 1);
  for (std::size_t n = 1; n <= horizon; ++n) {
    alpha[n] = sch.alpha(n);
    beta[n] = sch.beta(n);
  }

  ScheduleReport report;
  report.horizon = horizon;
  const bool is_power = sch.descriptor.kind == ScheduleDescriptor::Kind::Power;
  const double s = sch.descriptor.s;
  const double t = sch.descriptor.t;

  // values[i] corresponds to n = first + i
  auto add = [&](std::string cond, std::string clause, std::size_t first,
                 const std::vector<double>& values, std::optional<Verdict> analytic) {
    ConditionVerdict cv;
    cv.condition = std::move(cond);
    cv.clause = std::move(clause);
    cv.verdict = classify_to_zero(values, first, &cv.tail);
    cv.analytic = analytic;
    report.items.push_back(std::move(cv));
  };
  auto series = [&](std::size_t first, auto&& fn) {
    std::vector<double> out;
    out.reserve(horizon - first + 1);
    for (std::size_t n = first; n <= horizon; ++n) out.push_back(fn(n));
    return out;
  };
  auto analytic = [&](bool truth) -> std::optional<Verdict> {
    if (!is_power) return std::nullopt;
    return from_bool(truth);
  };

  // (C1)
  add("C1", "alpha_n -> 0", 1, series(1, [&](std::size_t n) { return alpha[n]; }), analytic(s > 0.0));
  {
    ConditionVerdict cv;
    cv.condition = "C1";
    cv.clause = "sum alpha_n = inf";
    // n * alpha_n bounded away from zero <=> alpha_n dominates the harmonic series
    const auto scaled = series(1, [&](std::size_t n) { return static_cast<double>(n) * alpha[n]; });
    const Verdict decays = classify_to_zero(scaled, 1, &cv.tail);
    if (decays == Verdict::Pass)
      cv.verdict = Verdict::Fail;
    else if (decays == Verdict::Fail)
      cv.verdict = Verdict::Pass;
    else
      cv.verdict = Verdict::Inconclusive;
    cv.note = "harmonic comparison on n*alpha_n";
    if (is_power) {
      cv.analytic = from_bool(s <= 1.0);
      cv.verdict = *cv.analytic;
      cv.note = "exact p-series rule (s <= 1)";
    }
    report.items.push_back(std::move(cv));
  }
  add("C1", "beta_n -> 0", 1, series(1, [&](std::size_t n) { return beta[n]; }), analytic(t > 0.0));

  // (C2)
  add("C2", "a_n/alpha_n -> 0", 1,
      series(1, [&](std::size_t n) { return safe_ratio(a_seq(n), alpha[n]); }), std::nullopt);
  add("C2", "beta_n/alpha_n -> 0", 1,
      series(1, [&](std::size_t n) { return safe_ratio(beta[n], alpha[n]); }), analytic(t > s));
  add("C2", "|alpha_n - alpha_n-1|/alpha_n -> 0", 2,
      series(2, [&](std::size_t n) { return safe_ratio(std::abs(alpha[n] - alpha[n - 1]), alpha[n]); }),
      analytic(s > 0.0));
  add("C2", "|beta_n - beta_n-1|/alpha_n -> 0", 2,
      series(2, [&](std::size_t n) { return safe_ratio(std::abs(beta[n] - beta[n - 1]), alpha[n]); }),
      analytic(t == 0.0 || t + 1.0 > s));

  // (C3)
  std::vector<double> dev = series(1, [&](std::size_t n) { return deviation(n); });
  add("C3", "D(T_n,T_n+1) -> 0", 1, dev, std::nullopt);
  std::vector<double> dev_ratio(dev.size());
  for (std::size_t i = 0; i < dev.size(); ++i) dev_ratio[i] = safe_ratio(dev[i], alpha[i + 1]);
  add("C3", "D(T_n,T_n+1)/alpha_n -> 0", 1, dev_ratio, std::nullopt);

  return report;
}

std::vector<double> xu_recurrence(double x1, const Sequence& alpha, const Sequence& beta,
                                  std::size_t steps) {
  if (!(x1 >= 0.0)) throw UsageError("xu_recurrence: x1 must be nonnegative");
  std::vector<double> xs;
  xs.reserve(steps + 1);
  xs.push_back(x1);
  for (std::size_t n = 1; n <= steps; ++n) {
    const double a = alpha(n);
    if (!(a >= 0.0 && a <= 1.0)) throw UsageError("xu_recurrence: alpha_n outside [0,1]");
    xs.push_back((1.0 - a) * xs.back() + a * beta(n));
  }
  return xs;
}

}  // namespace hierfix
