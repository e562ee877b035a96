#include "bp/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "bp/errors.hpp"
#include "bp/format.hpp"

namespace bp {

double PremiumTable::at(const LanguageTag& tag) const {
  const auto it = premiums.find(tag);
  if (it == premiums.end()) {
    throw UnknownLanguageError(tag.canonical(),
                               "language '" + tag.canonical() + "' is not in the premium table; "
                               "derive it from parallel text or predict it from monolingual text "
                               "(see the predict command)");
  }
  return it->second;
}

namespace {

// Indexed observation: premiums of node a over node b.
struct Edge {
  std::size_t a;
  std::size_t b;
  double premium;
  double log_premium;
  double weight;
};

struct Problem {
  std::vector<LanguageTag> languages;  // sorted canonical order; index space
  std::size_t reference = 0;
  std::vector<Edge> edges;
  double total_weight = 0.0;
};

Problem index_observations(const std::vector<PairwiseObservation>& observations,
                           const LanguageTag& reference, const FitConfig& config) {
  if (observations.empty()) {
    throw InsufficientDataError("no observations to fit");
  }
  Problem problem;
  std::map<LanguageTag, std::size_t> index;
  for (const auto& obs : observations) {
    if (!(obs.premium > 0.0) || !std::isfinite(obs.premium)) {
      throw ArgumentError("observed premium for " + obs.lang_a.canonical() + "/" +
                          obs.lang_b.canonical() + " must be positive and finite");
    }
    index.emplace(obs.lang_a, 0);
    index.emplace(obs.lang_b, 0);
  }
  if (!index.contains(reference)) {
    throw UnknownLanguageError(reference.canonical(),
                               "reference language '" + reference.canonical() +
                                   "' appears in no observation");
  }
  problem.languages.reserve(index.size());
  for (auto& [tag, slot] : index) {
    slot = problem.languages.size();
    problem.languages.push_back(tag);
  }
  problem.reference = index.at(reference);

  problem.edges.reserve(observations.size());
  for (const auto& obs : observations) {
    const double weight =
        config.weight_by_segments ? static_cast<double>(obs.n_segments) : 1.0;
    problem.edges.push_back({index.at(obs.lang_a), index.at(obs.lang_b), obs.premium,
                             std::log(obs.premium), weight});
    problem.total_weight += weight;
  }
  return problem;
}

void check_connected(const Problem& problem) {
  const std::size_t n = problem.languages.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto& edge : problem.edges) {
    parent[find(edge.a)] = find(edge.b);
  }
  std::map<std::size_t, std::vector<LanguageTag>> components;
  for (std::size_t v = 0; v < n; ++v) {
    components[find(v)].push_back(problem.languages[v]);
  }
  if (components.size() <= 1) return;

  std::vector<std::vector<LanguageTag>> groups;
  std::string detail = "observation graph is disconnected; add observations bridging the components:";
  for (auto& [root, members] : components) {
    detail += " {";
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i > 0) detail += ", ";
      if (i == 8 && members.size() > 9) {
        detail += "... " + std::to_string(members.size() - i) + " more";
        break;
      }
      detail += members[i].canonical();
    }
    detail += "}";
    groups.push_back(std::move(members));
  }
  throw DisconnectedGraphError(std::move(groups), detail);
}

// Closed-form solve of the log-space least squares: pin x_reference = 0 and
// solve the normal equations of sum w (x_a - x_b - log p)^2 over the free
// variables. Connectivity makes the reduced system positive definite.
Eigen::VectorXd solve_log_ls(const Problem& problem) {
  const std::size_t n = problem.languages.size();
  // Free-variable numbering skips the reference.
  std::vector<std::ptrdiff_t> free_index(n, -1);
  std::ptrdiff_t next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (v != problem.reference) free_index[v] = next++;
  }
  const std::ptrdiff_t m = next;
  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (const auto& edge : problem.edges) {
    const std::ptrdiff_t fa = free_index[edge.a];
    const std::ptrdiff_t fb = free_index[edge.b];
    const double w = edge.weight;
    if (fa >= 0) {
      normal(fa, fa) += w;
      rhs(fa) += w * edge.log_premium;
    }
    if (fb >= 0) {
      normal(fb, fb) += w;
      rhs(fb) -= w * edge.log_premium;
    }
    if (fa >= 0 && fb >= 0) {
      normal(fa, fb) -= w;
      normal(fb, fa) -= w;
    }
  }
  const Eigen::VectorXd solution = normal.ldlt().solve(rhs);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<std::ptrdiff_t>(n));
  for (std::size_t v = 0; v < n; ++v) {
    if (free_index[v] >= 0) x(static_cast<std::ptrdiff_t>(v)) = solution(free_index[v]);
  }
  return x;
}

double log_ls_objective(const Problem& problem, const Eigen::VectorXd& x) {
  double total = 0.0;
  for (const auto& edge : problem.edges) {
    const double r = x(static_cast<std::ptrdiff_t>(edge.a)) -
                     x(static_cast<std::ptrdiff_t>(edge.b)) - edge.log_premium;
    total += edge.weight * r * r;
  }
  return total / problem.total_weight;
}

// Mean squared error of exp(x_a - x_b) against the observed premiums.
double raw_mse_objective(const Problem& problem, const Eigen::VectorXd& x) {
  double total = 0.0;
  for (const auto& edge : problem.edges) {
    const double r = std::exp(x(static_cast<std::ptrdiff_t>(edge.a)) -
                              x(static_cast<std::ptrdiff_t>(edge.b))) -
                     edge.premium;
    total += edge.weight * r * r;
  }
  return total / problem.total_weight;
}

Eigen::VectorXd raw_mse_gradient(const Problem& problem, const Eigen::VectorXd& x) {
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(x.size());
  for (const auto& edge : problem.edges) {
    const double ratio = std::exp(x(static_cast<std::ptrdiff_t>(edge.a)) -
                                  x(static_cast<std::ptrdiff_t>(edge.b)));
    const double term = 2.0 * edge.weight * (ratio - edge.premium) * ratio / problem.total_weight;
    grad(static_cast<std::ptrdiff_t>(edge.a)) += term;
    grad(static_cast<std::ptrdiff_t>(edge.b)) -= term;
  }
  grad(static_cast<std::ptrdiff_t>(problem.reference)) = 0.0;  // pinned variable
  return grad;
}

PremiumTable table_from_log(const Problem& problem, const Eigen::VectorXd& x,
                            const LanguageTag& reference) {
  PremiumTable table{reference, {}, "fitted"};
  for (std::size_t v = 0; v < problem.languages.size(); ++v) {
    table.premiums[problem.languages[v]] =
        (v == problem.reference) ? 1.0 : std::exp(x(static_cast<std::ptrdiff_t>(v)));
  }
  return table;
}

}  // namespace

FitResult fit_premiums(const std::vector<PairwiseObservation>& observations,
                       const LanguageTag& reference, const FitConfig& config) {
  const Problem problem = index_observations(observations, reference, config);
  check_connected(problem);

  Eigen::VectorXd x = solve_log_ls(problem);

  FitResult result;
  result.mode = config.mode;
  if (config.mode == FitMode::log_ls) {
    result.table = table_from_log(problem, x, reference);
    result.objective = log_ls_objective(problem, x);
    result.iterations = 0;
    result.converged = true;
    return result;
  }

  // Gradient descent with backtracking on the raw-ratio MSE, from the
  // log-space solution.
  double objective = raw_mse_objective(problem, x);
  double step = 1.0;
  std::size_t iteration = 0;
  bool converged = false;
  for (; iteration < config.max_iters; ++iteration) {
    const Eigen::VectorXd grad = raw_mse_gradient(problem, x);
    const double grad_norm = grad.lpNorm<Eigen::Infinity>();
    if (grad_norm < config.grad_tol) {
      converged = true;
      break;
    }
    const double grad_sq = grad.squaredNorm();
    double trial_step = step;
    bool accepted = false;
    while (trial_step > 1e-18) {
      const Eigen::VectorXd candidate = x - trial_step * grad;
      const double candidate_objective = raw_mse_objective(problem, candidate);
      if (candidate_objective <= objective - config.armijo_c * trial_step * grad_sq) {
        x = candidate;
        objective = candidate_objective;
        accepted = true;
        break;
      }
      trial_step *= config.backtrack_factor;
    }
    if (!accepted) {
      // No descent direction at floating-point resolution: we are at a
      // numerical stationary point even though the gradient test failed.
      converged = true;
      break;
    }
    step = std::min(trial_step * 2.0, 1.0);
  }

  result.table = table_from_log(problem, x, reference);
  result.objective = objective;
  result.iterations = iteration;
  result.converged = converged;
  if (!converged) {
    throw ConvergenceError(result, "premium fit did not converge within " +
                                       std::to_string(config.max_iters) +
                                       " iterations (gradient norm " +
                                       format_double(raw_mse_gradient(problem, x)
                                                         .lpNorm<Eigen::Infinity>()) +
                                       ", tolerance " + format_double(config.grad_tol) + ")");
  }
  return result;
}

double pairwise_lookup(const PremiumTable& table, const LanguageTag& lang_a,
                       const LanguageTag& lang_b) {
  return table.at(lang_a) / table.at(lang_b);
}

PremiumTable rebase(const PremiumTable& table, const LanguageTag& new_reference) {
  const double pivot = table.at(new_reference);
  PremiumTable out{new_reference, {}, table.source};
  for (const auto& [tag, premium] : table.premiums) {
    out.premiums[tag] = (tag == new_reference) ? 1.0 : premium / pivot;
  }
  return out;
}

std::string premium_table_csv(const PremiumTable& table) {
  return premium_csv(table.premiums,
                     {{"source", table.source}, {"reference", table.reference.canonical()}});
}

void save_premium_table(const PremiumTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << premium_table_csv(table);
  if (!out) throw DataError("write failure on file: " + path.string());
}

PremiumTable load_premium_table(const std::filesystem::path& path) {
  std::map<std::string, std::string> comments;
  PremiumMap premiums = read_premium_csv(path, &comments);

  PremiumTable table;
  table.premiums = std::move(premiums);
  table.source = comments.contains("source") ? comments.at("source") : "unknown";
  if (comments.contains("reference")) {
    table.reference = LanguageTag::parse(comments.at("reference"));
  } else {
    // No declared reference: accept a table with a unique exact-1.0 entry.
    const LanguageTag* pinned = nullptr;
    for (const auto& [tag, premium] : table.premiums) {
      if (premium == 1.0) {
        if (pinned != nullptr) {
          throw DataError(path.string() +
                          ": no '# reference:' comment and multiple languages at exactly 1.0");
        }
        pinned = &tag;
      }
    }
    if (pinned == nullptr) {
      throw DataError(path.string() +
                      ": no '# reference:' comment and no language at exactly 1.0");
    }
    table.reference = *pinned;
  }
  const auto it = table.premiums.find(table.reference);
  if (it == table.premiums.end()) {
    throw UnknownLanguageError(table.reference.canonical(),
                               path.string() + ": declared reference '" +
                                   table.reference.canonical() + "' has no row");
  }
  if (it->second != 1.0) {
    throw DataError(path.string() + ": reference language '" + table.reference.canonical() +
                    "' must have premium exactly 1.0, got " + format_double(it->second));
  }
  return table;
}

}  // namespace bp
