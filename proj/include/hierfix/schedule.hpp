#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hierfix/operators.hpp"

namespace hierfix {

/// Which family a schedule came from; drives exact rules in the validator.
struct ScheduleDescriptor {
  enum class Kind { Power, Table, Custom };
  Kind kind = Kind::Custom;
  double s = 0.0;  // power: alpha_n = n^-s
  double t = 0.0;  // power: beta_n = n^-t
  std::vector<double> alpha_table;
  std::vector<double> beta_table;
  std::string label;
};

/// Parameter sequences alpha_n, beta_n in [0, 1], indexed from n = 1.
struct Schedule {
  Sequence alpha;
  Sequence beta;
  ScheduleDescriptor descriptor;

  /// Number of leading terms checked to lie in [0, 1] on construction.
  static constexpr std::size_t kPrefixCheck = 1000;
};

/// alpha_n = n^-s, beta_n = n^-t. Requires 0 < s <= 1 and t > s.
Schedule power_schedule(double s, double t);
/// Power schedule without the admissibility checks; used to exhibit
/// violating schedules to the validator.
Schedule power_schedule_unchecked(double s, double t);
/// Explicit tables; the last entry is held for n beyond the table.
Schedule table_schedule(std::vector<double> alpha, std::vector<double> beta);
Schedule custom_schedule(Sequence alpha, Sequence beta, std::string label);
/// Same alpha, beta forced to zero.
Schedule with_zero_beta(Schedule sch);

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct ConditionVerdict {
  std::string condition;  // "C1", "C2", "C3"
  std::string clause;     // e.g. "beta_n/alpha_n -> 0"
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Verdict> analytic;             // exact verdict for power schedules
  std::vector<std::pair<std::size_t, double>> tail;  // (n, value) over the sampled tail
  std::string note;
};

struct ScheduleReport {
  std::size_t horizon = 0;
  std::vector<ConditionVerdict> items;
  std::string deviation_region;  // description of the bounded set used for C3

  Verdict overall() const;
  const ConditionVerdict& find(const std::string& clause) const;
};

/// Classify a sequence r_1..r_N against "r_n -> 0" from its last 10%:
/// pass when the tail is (numerically) zero, or nonincreasing with a fitted
/// log-log decay exponent of at least 0.05; fail when the tail stays positive
/// and shows no decay (exponent <= 0.005); inconclusive otherwise.
Verdict classify_to_zero(const std::vector<double>& values, std::size_t first_index,
                         std::vector<std::pair<std::size_t, double>>* tail_out = nullptr);

/// Evaluate (C1)-(C3) on n = 1..horizon. `deviation(n)` is D_B(T_n, T_{n+1})
/// on the caller's bounded set B.
ScheduleReport validate_schedule(const Schedule& sch, const Sequence& a_seq,
                                 const Sequence& deviation, std::size_t horizon = 10000);

/// x_{n+1} = (1 - alpha_n) x_n + alpha_n beta_n for n = 1..steps. Returns
/// x_1..x_{steps+1}.
std::vector<double> xu_recurrence(double x1, const Sequence& alpha, const Sequence& beta,
                                  std::size_t steps);

}  // namespace hierfix
