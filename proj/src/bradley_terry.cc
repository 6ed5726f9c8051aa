// Copyright 2026 The qsrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsrank/bradley_terry.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qsrank/errors.h"
#include "qsrank/matrix_core.h"
#include "qsrank/simd/kernels.h"

namespace qsrank {
namespace {

// n_ij = c_ij + c_ji off the diagonal, zero on it.
DenseMatrix PairTotals(const CountMatrix& c) {
  const std::size_t n = c.size();
  DenseMatrix totals(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) totals(i, j) = c(i, j) + c(j, i);
    }
  }
  return totals;
}

Vector TotalWins(const CountMatrix& c) {
  Vector wins(c.size(), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (i != j) wins[i] += c(i, j);
    }
  }
  return wins;
}

std::string JoinLabels(const CountMatrix& c,
                       const std::vector<std::size_t>& members) {
  std::string out = "{";
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (k) out += ", ";
    out += c.label(members[k]);
  }
  return out + "}";
}

void RequireSize(const CountMatrix& c, std::span<const double> mu) {
  if (mu.size() != c.size()) {
    throw Error(ErrorKind::kDimension,
                "ability vector has " + std::to_string(mu.size()) +
                    " entries for " + std::to_string(c.size()) + " players");
  }
}

double XLogXOverY(double x, double y) {
  if (x == 0.0) return 0.0;
  return x * std::log(x / y);
}

}  // namespace

double Logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  return 1.0 - 1.0 / (1.0 + std::exp(x));
}

Vector Centered(std::span<const double> mu) {
  Vector out(mu.begin(), mu.end());
  if (out.empty()) return out;
  const double mean = simd::Sum(out) / static_cast<double>(out.size());
  for (double& m : out) m -= mean;
  return out;
}

void CheckMleExists(const CountMatrix& c) {
  const std::size_t n = c.size();
  if (n < 2) {
    throw Error(ErrorKind::kDomain, "at least two players are required");
  }
  const auto components = UndirectedComponents(PairTotals(c));
  if (components.size() > 1) {
    std::string listing;
    std::vector<std::string> labels;
    for (const auto& comp : components) {
      listing += (listing.empty() ? "" : " ") + JoinLabels(c, comp);
      for (std::size_t i : comp) labels.push_back(c.label(i));
    }
    throw Error(ErrorKind::kDisconnected,
                "comparison graph is disconnected; components: " + listing,
                labels);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double wins = 0.0;
    double losses = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      wins += c(i, j);
      losses += c(j, i);
    }
    if (wins == 0.0 || losses == 0.0) {
      throw Error(ErrorKind::kSeparation,
                  "player '" + c.label(i) + "' has " +
                      (wins == 0.0 ? "no wins" : "no losses") +
                      "; the maximum likelihood estimate does not exist",
                  {c.label(i)});
    }
  }
  // A set of players that beats (or loses to) everyone outside it also sends
  // the likelihood to its supremum at infinity.
  if (!IsIrreducible(c.counts())) {
    const auto fwd = Reachable(c.counts(), 0, false);
    const auto bwd = Reachable(c.counts(), 0, true);
    std::vector<std::size_t> outside;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
      if (!fwd[i] || !bwd[i]) {
        outside.push_back(i);
        labels.push_back(c.label(i));
      }
    }
    throw Error(ErrorKind::kSeparation,
                "win graph is not strongly connected; players " +
                    JoinLabels(c, outside) + " are separated from '" +
                    c.label(0) + "'",
                labels);
  }
}

FitReport FitBradleyTerry(const CountMatrix& c, const FitOptions& options) {
  if (!(options.tol > 0.0)) {
    throw Error(ErrorKind::kDomain, "fit tolerance must be positive");
  }
  CheckMleExists(c);
  const std::size_t n = c.size();
  const DenseMatrix totals = PairTotals(c);
  const Vector wins = TotalWins(c);

  Vector mu(n, 0.0);
  Vector gamma(n, 1.0);
  Vector next(n);
  std::size_t iter = 0;
  bool converged = false;
  while (iter < options.max_iter) {
    ++iter;
    for (std::size_t i = 0; i < n; ++i) {
      double denom = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && totals(i, j) > 0.0) {
          denom += totals(i, j) / (gamma[i] + gamma[j]);
        }
      }
      next[i] = std::log(wins[i] / denom);
    }
    next = Centered(next);
    const double step = simd::MaxAbsDiff(next, mu);
    mu.swap(next);
    for (std::size_t i = 0; i < n; ++i) gamma[i] = std::exp(mu[i]);
    if (step < options.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorKind::kConvergence,
                "Bradley-Terry fit did not converge in " +
                    std::to_string(options.max_iter) + " iterations");
  }

  FitReport report;
  report.abilities.mu = mu;
  report.abilities.labels = c.labels();
  report.covariance = BradleyTerryCovariance(c, mu);
  report.deviance = BradleyTerryDeviance(c, mu);
  report.iterations = iter;
  report.converged = true;
  return report;
}

CovarianceMatrix BradleyTerryCovariance(const CountMatrix& c,
                                        std::span<const double> mu) {
  RequireSize(c, mu);
  const std::size_t n = c.size();
  DenseMatrix fisher(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double games = c(i, j) + c(j, i);
      if (games == 0.0) continue;
      const double p = Logistic(mu[i] - mu[j]);
      const double w = games * p * (1.0 - p);
      fisher(i, j) -= w;
      fisher(j, i) -= w;
      fisher(i, i) += w;
      fisher(j, j) += w;
    }
  }
  return CovarianceMatrix{PseudoInverse(fisher)};
}

double BradleyTerryDeviance(const CountMatrix& c, std::span<const double> mu) {
  RequireSize(c, mu);
  double dev = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const double games = c(i, j) + c(j, i);
      if (games == 0.0) continue;
      const double p = Logistic(mu[i] - mu[j]);
      dev += XLogXOverY(c(i, j), games * p) + XLogXOverY(c(j, i), games * (1.0 - p));
    }
  }
  // Rounding can leave a tiny negative value at a perfect fit.
  return std::max(0.0, 2.0 * dev);
}

double BradleyTerryLogLikelihood(const CountMatrix& c,
                                 std::span<const double> mu) {
  RequireSize(c, mu);
  double ll = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (i != j && c(i, j) > 0.0) ll += c(i, j) * std::log(Logistic(mu[i] - mu[j]));
    }
  }
  return ll;
}

Vector BradleyTerryGradient(const CountMatrix& c, std::span<const double> mu) {
  RequireSize(c, mu);
  Vector grad = TotalWins(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (i == j) continue;
      grad[i] -= (c(i, j) + c(j, i)) * Logistic(mu[i] - mu[j]);
    }
  }
  return grad;
}

double PredictWinProbability(const AbilityVector& abilities, std::size_t i,
                             std::size_t j) {
  const std::size_t n = abilities.mu.size();
  if (i >= n || j >= n) {
    throw Error(ErrorKind::kDomain, "player index out of range");
  }
  if (i == j) {
    throw Error(ErrorKind::kDomain, "a player cannot compete against itself");
  }
  return Logistic(abilities.mu[i] - abilities.mu[j]);
}

}  // namespace qsrank
