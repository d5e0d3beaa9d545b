#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <optional>

namespace curveopt {

struct SearchConfig {
  double delta0 = 1.0;  // initial trial step, in (0, 1]
  double sigma = 1e-7;  // sufficient-decrease fraction, in (0, 1)
  double delta = 0.5;   // backtracking factor, in (0, 1)
  int memory = 0;       // nonmonotone window M; 0 is monotone
  int max_backtracks = 60;

  /// Throws DomainError if any parameter is out of range.
  void validate() const;
};

enum class SearchBoundary { AcceptedFirst, Backtracked };

struct SearchOutcome {
  double t = 0.0;
  double value = 0.0;  // phi(t) at the accepted step
  int trials = 0;      // objective evaluations performed
  SearchBoundary boundary = SearchBoundary::AcceptedFirst;
  std::optional<double> last_rejected;  // the trial just before t
};

/// Geometric backtracking t = delta0 * delta^j along phi(t) = f(gamma(t)),
/// returning the first t with phi(t) <= reference_f + sigma * t * slope0.
///
/// slope0 is gamma'(0)^T grad f(x). Pass reference_f = f(x) for the
/// monotone rule or the window maximum for the nonmonotone one.
///
/// Throws NotDescent if slope0 >= 0, SearchStalled after max_backtracks
/// rejected reductions, EvaluationFailure if phi is not finite.
SearchOutcome armijo_curve_search(const std::function<double(double)>& phi,
                                  double slope0, double reference_f,
                                  const SearchConfig& cfg);

/// Sliding window of the last min(k, M) + 1 objective values.
class FHistory {
 public:
  explicit FHistory(int memory);

  /// Records f(x^k) and advances k.
  void push(double f);
  /// Maximum over the window; throws UsageError when empty.
  double reference() const;

  std::size_t size() const noexcept { return window_.size(); }
  bool empty() const noexcept { return window_.empty(); }
  int memory() const noexcept { return memory_; }
  /// Index of the most recently pushed iterate (-1 before the first push).
  long iteration() const noexcept { return static_cast<long>(pushed_) - 1; }
  const std::deque<double>& window() const noexcept { return window_; }

 private:
  int memory_;
  std::size_t pushed_ = 0;
  std::deque<double> window_;
};

double nonmonotone_reference(const FHistory& hist);

}  // namespace curveopt
