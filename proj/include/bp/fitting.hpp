#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "bp/estimation.hpp"
#include "bp/tags.hpp"

namespace bp {

// One byte premium per language, relative to `reference`. The reference
// entry is exactly 1.0 (gauge fixing: ratios are scale-free, so one value
// must be pinned for the system to have a unique solution).
struct PremiumTable {
  LanguageTag reference;
  PremiumMap premiums;
  std::string source;  // provenance: "bundled", "fitted", "multiparallel", ...

  double at(const LanguageTag& tag) const;
  bool contains(const LanguageTag& tag) const { return premiums.contains(tag); }
};

enum class FitMode {
  // Closed-form linear least squares on log premiums: minimizes
  // sum (x_A - x_B - log BP_obs)^2 with x_reference pinned at 0. Convex,
  // exact, and the initializer for raw_mse.
  log_ls,
  // Minimizes the mean squared error of BP_A/BP_B against the observed
  // pairwise premiums, in log coordinates (which keeps premiums positive),
  // by gradient descent with backtracking line search from the log_ls
  // solution.
  raw_mse,
};

struct FitConfig {
  FitMode mode = FitMode::raw_mse;
  std::size_t max_iters = 10000;
  double grad_tol = 1e-10;       // infinity norm of the objective gradient
  double armijo_c = 1e-4;        // sufficient-decrease constant
  double backtrack_factor = 0.5; // step shrink per line-search trial
  // Weight observations by segment count. Off by default; the plain MSE
  // treats every pair equally.
  bool weight_by_segments = false;
};

struct FitResult {
  PremiumTable table;
  double objective = 0.0;  // final value of the fitted mode's objective
  std::size_t iterations = 0;
  FitMode mode = FitMode::raw_mse;
  bool converged = false;
};

// The observation graph splits into disconnected components, so premiums in
// different components cannot be related. Carries the components so the
// caller can add bridging pairs.
class DisconnectedGraphError : public DataError {
public:
  DisconnectedGraphError(std::vector<std::vector<LanguageTag>> components,
                         const std::string& detail)
      : DataError(detail), components_(std::move(components)) {}
  const std::vector<std::vector<LanguageTag>>& components() const { return components_; }

private:
  std::vector<std::vector<LanguageTag>> components_;
};

// Gradient descent ran out of iterations; carries the best iterate found.
class ConvergenceError : public NumericalError {
public:
  ConvergenceError(FitResult best, const std::string& detail)
      : NumericalError(detail), best_(std::move(best)) {}
  const FitResult& best() const { return best_; }

private:
  FitResult best_;
};

// Fits one premium per language from pairwise observations. The observation
// graph must be connected and contain the reference.
FitResult fit_premiums(const std::vector<PairwiseObservation>& observations,
                       const LanguageTag& reference, const FitConfig& config = {});

// BP_{A/B} = premiums[A] / premiums[B].
double pairwise_lookup(const PremiumTable& table, const LanguageTag& lang_a,
                       const LanguageTag& lang_b);

// Re-expresses the table relative to another of its languages. Divides every
// premium by the new reference's value, which leaves all pairwise lookups
// unchanged.
PremiumTable rebase(const PremiumTable& table, const LanguageTag& new_reference);

// Same CSV as premium maps, with `# source:` and `# reference:` comment
// lines carrying provenance.
std::string premium_table_csv(const PremiumTable& table);
void save_premium_table(const PremiumTable& table, const std::filesystem::path& path);
PremiumTable load_premium_table(const std::filesystem::path& path);

}  // namespace bp
