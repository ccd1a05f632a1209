#pragma once

// Pieces shared by the OpenMP kernels and their serial references.

#include <array>
#include <cstddef>
#include <exception>
#include <vector>

#include "inscribe/polygon_solver.hpp"

namespace inscribe::detail {

/// Runs body(i) for i in [0, n) across OpenMP threads; the first exception
/// thrown by any iteration is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr failure;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(inscribe_parallel_for)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

SolutionSet assemble_solution_set(const std::vector<ShiftResult>& per_shift, const Tolerances& tol);

/// g(t) for the brute-force scan; NaN where the chain breaks.
double scan_residual(const PolygonInstance& inst, double t);

struct ScanSeed {
  enum Kind { Bracket, Minimum } kind;
  double lo;
  double hi;
};

std::vector<ScanSeed> scan_seeds(const std::vector<double>& grid_values);
/// Up to two roots per seed; NaN marks a rejected slot (pole, shallow minimum).
std::array<double, 2> refine_seed(const PolygonInstance& inst, const ScanSeed& seed);
std::vector<double> collect_roots(const std::vector<std::array<double, 2>>& refined);

struct GeneralizedSetup {
  std::vector<std::vector<std::size_t>> orders;       // line order, line 0 first
  std::vector<std::vector<std::size_t>> assignments;  // point index per consecutive pair
  std::size_t chains() const { return orders.size() * assignments.size(); }
};

struct ChainOutcome {
  bool identity = false;
  bool degenerate = false;
  std::vector<std::vector<Point2>> polygons;
};

GeneralizedSetup generalized_setup(const std::vector<Line>& lines, const std::vector<Point2>& c,
                                   double eps);
ChainOutcome solve_chain(const std::vector<Line>& lines, const std::vector<Point2>& c,
                         const GeneralizedSetup& setup, std::size_t index, const Tolerances& tol);
GeneralizedResult assemble_generalized(const std::vector<Line>& lines, const std::vector<Point2>& c,
                                       const std::vector<ChainOutcome>& outcomes,
                                       const Tolerances& tol);

}  // namespace inscribe::detail
