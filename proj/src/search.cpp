#include "curveopt/search.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curveopt/errors.hpp"

namespace curveopt {

void SearchConfig::validate() const {
  if (!(delta0 > 0.0 && delta0 <= 1.0)) {
    throw DomainError("delta0 must lie in (0, 1]");
  }
  if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("sigma must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  if (memory < 0) throw DomainError("memory must be nonnegative");
  if (max_backtracks < 1) throw DomainError("max_backtracks must be positive");
}

SearchOutcome armijo_curve_search(const std::function<double(double)>& phi,
                                  double slope0, double reference_f,
                                  const SearchConfig& cfg) {
  cfg.validate();
  if (!(slope0 < 0.0)) {
    throw NotDescent("curve search: initial slope " + std::to_string(slope0) +
                     " is not negative");
  }

  SearchOutcome out;
  double t = cfg.delta0;
  for (int j = 0;; ++j) {
    const double value = phi(t);
    ++out.trials;
    if (!std::isfinite(value)) {
      throw EvaluationFailure("curve search: non-finite objective at t=" +
                                  std::to_string(t),
                              {});
    }
    if (value <= reference_f + cfg.sigma * t * slope0) {
      out.t = t;
      out.value = value;
      out.boundary =
          j == 0 ? SearchBoundary::AcceptedFirst : SearchBoundary::Backtracked;
      return out;
    }
    if (j == cfg.max_backtracks) {
      throw SearchStalled("curve search: no acceptable step after " +
                              std::to_string(cfg.max_backtracks) +
                              " backtracks",
                          t);
    }
    out.last_rejected = t;
    t *= cfg.delta;
  }
}

FHistory::FHistory(int memory) : memory_(memory) {
  if (memory < 0) throw DomainError("history memory must be nonnegative");
}

void FHistory::push(double f) {
  window_.push_back(f);
  ++pushed_;
  while (window_.size() > static_cast<std::size_t>(memory_) + 1) {
    window_.pop_front();
  }
}

double FHistory::reference() const {
  if (window_.empty()) throw UsageError("nonmonotone reference of empty history");
  return *std::max_element(window_.begin(), window_.end());
}

double nonmonotone_reference(const FHistory& hist) { return hist.reference(); }

}  // namespace curveopt
