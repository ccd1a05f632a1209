// Serial versions of the parallel polygon kernels, kept as a baseline for the
// equivalence tests and the benchmark.

#include "../detail.hpp"
#include "inscribe/error.hpp"

namespace inscribe::reference {

SolutionSet solve_all(const ConvexPolygon& a, const std::vector<Point2>& c, const Tolerances& tol) {
  const PolygonInstance base(a, c, 0, tol.eps);
  std::vector<ShiftResult> per_shift;
  for (std::size_t k = 0; k < base.size(); ++k) {
    per_shift.push_back(solve_shift(base.with_shift(static_cast<int>(k)), tol.eps));
  }
  return detail::assemble_solution_set(per_shift, tol);
}

std::vector<double> brute_force_scan(const PolygonInstance& inst, std::size_t grid_size) {
  if (grid_size < 100) throw Error(ErrorCode::InvalidArgument, "brute_force_scan needs grid_size >= 100");
  std::vector<double> g;
  for (std::size_t i = 0; i <= grid_size; ++i) {
    g.push_back(detail::scan_residual(inst, static_cast<double>(i) / static_cast<double>(grid_size)));
  }
  std::vector<std::array<double, 2>> refined;
  for (const detail::ScanSeed& seed : detail::scan_seeds(g)) refined.push_back(detail::refine_seed(inst, seed));
  return detail::collect_roots(refined);
}

GeneralizedResult enumerate_generalized(const std::vector<Line>& lines, const std::vector<Point2>& c,
                                        const Tolerances& tol) {
  const detail::GeneralizedSetup setup = detail::generalized_setup(lines, c, tol.eps);
  std::vector<detail::ChainOutcome> outcomes;
  for (std::size_t i = 0; i < setup.chains(); ++i) outcomes.push_back(detail::solve_chain(lines, c, setup, i, tol));
  return detail::assemble_generalized(lines, c, outcomes, tol);
}

}  // namespace inscribe::reference
