#include "jumptopo/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "jumptopo/distance.hpp"
#include "jumptopo/filtration.hpp"

namespace jumptopo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SplitDiagram {
  std::vector<DiagramPoint> finite;
  std::vector<double> essential_births;
};

SplitDiagram split(const PersistenceDiagram& dgm) {
  SplitDiagram out;
  for (const auto& p : dgm.points) {
    if (std::isinf(p.death))
      out.essential_births.push_back(p.birth);
    else if (p.death > p.birth)  // diagonal points carry no mass
      out.finite.push_back(p);
  }
  std::sort(out.essential_births.begin(), out.essential_births.end());
  return out;
}

double linf_cost(const DiagramPoint& a, const DiagramPoint& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_cost(const DiagramPoint& p) { return (p.death - p.birth) / 2.0; }

// Perfect-matching feasibility at threshold t on the augmented bipartite
// graph: left nodes are A-points plus one ghost per B-point, right nodes are
// B-points plus one ghost per A-point. A real pair is admissible within cost
// t, a point may retire to its own ghost within its diagonal cost, and ghosts
// pair with ghosts freely.
struct Matcher {
  const std::vector<DiagramPoint>& A;
  const std::vector<DiagramPoint>& B;
  std::size_t n1, n2, left_n, right_n;
  std::vector<int> match_left, match_right;
  std::vector<std::uint8_t> visited;
  double t = 0.0;

  Matcher(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b)
      : A(a), B(b), n1(a.size()), n2(b.size()), left_n(n1 + n2), right_n(n2 + n1) {}

  bool admissible(std::size_t l, std::size_t r) const {
    if (l < n1) {
      if (r < n2) return linf_cost(A[l], B[r]) <= t;
      return (r - n2) == l && diagonal_cost(A[l]) <= t;  // own ghost only
    }
    if (r < n2) return (l - n1) == r && diagonal_cost(B[r]) <= t;
    return true;  // ghost with ghost
  }

  bool augment(std::size_t l) {
    for (std::size_t r = 0; r < right_n; ++r) {
      if (visited[r] || !admissible(l, r)) continue;
      visited[r] = 1;
      if (match_right[r] < 0 || augment(static_cast<std::size_t>(match_right[r]))) {
        match_right[r] = static_cast<int>(l);
        match_left[l] = static_cast<int>(r);
        return true;
      }
    }
    return false;
  }

  bool feasible(double threshold) {
    t = threshold;
    match_left.assign(left_n, -1);
    match_right.assign(right_n, -1);
    std::size_t matched = 0;
    for (std::size_t l = 0; l < left_n; ++l) {
      visited.assign(right_n, 0);
      if (augment(l)) ++matched;
    }
    return matched == left_n;
  }
};

double finite_bottleneck(const std::vector<DiagramPoint>& A, const std::vector<DiagramPoint>& B) {
  if (A.empty() && B.empty()) return 0.0;

  std::vector<double> candidates{0.0};
  for (const auto& a : A) {
    candidates.push_back(diagonal_cost(a));
    for (const auto& b : B) candidates.push_back(linf_cost(a, b));
  }
  for (const auto& b : B) candidates.push_back(diagonal_cost(b));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // The optimum is attained at a candidate cost, so a binary search over the
  // sorted candidates with a matching test is exact.
  Matcher matcher(A, B);
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (matcher.feasible(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

}  // namespace

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  require(a.degree == b.degree, "bottleneck: diagrams must share a degree");
  SplitDiagram sa = split(a);
  SplitDiagram sb = split(b);

  // Essential classes can only match essential classes; a count mismatch
  // leaves no finite matching at all.
  if (sa.essential_births.size() != sb.essential_births.size()) return kInf;
  double essential_cost = 0.0;
  for (std::size_t i = 0; i < sa.essential_births.size(); ++i)
    essential_cost =
        std::max(essential_cost, std::abs(sa.essential_births[i] - sb.essential_births[i]));

  return std::max(essential_cost, finite_bottleneck(sa.finite, sb.finite));
}

StabilityReport stability_check(const CubicalMask& a, const CubicalMask& b, int max_degree) {
  StabilityReport report;
  report.hausdorff_distance = hausdorff(a, b);
  report.cell_diagonal = std::max(a.cell_diagonal(), b.cell_diagonal());

  auto dgm_a = persistence(build_filtration(a), max_degree);
  auto dgm_b = persistence(build_filtration(b), max_degree);

  report.within_bound = true;
  double bound = report.hausdorff_distance + report.cell_diagonal;
  for (int s = 0; s <= max_degree; ++s) {
    double d = bottleneck(dgm_a[s], dgm_b[s]);
    report.bottleneck_per_degree.push_back(d);
    report.margin.push_back(bound - d);
    if (!(d <= bound)) report.within_bound = false;
  }
  return report;
}

}  // namespace jumptopo
