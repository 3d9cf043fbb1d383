#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace metric_gauge {

using Index = std::size_t;
using DistanceMatrix = Eigen::MatrixXd;
using IdList = std::vector<Index>;

inline constexpr double kDefaultTolMetric = 1e-9;
/// Asymmetries up to this size are averaged away; larger ones are rejected.
inline constexpr double kSymmetrizeTol = 1e-12;

enum class ValidationErrorKind {
  Empty,
  NotSquare,
  NonFinite,
  NonZeroDiagonal,
  AsymmetricMatrix,
  NegativeDistance,
  ZeroOffDiagonal,
  TriangleViolation,
  DuplicateLabel,
  LabelCountMismatch,
};

const char* to_string(ValidationErrorKind kind);

/// Raised when a matrix cannot be accepted as a metric. For triangle
/// violations, (i, j, k) is the worst triple: d(i,k) > d(i,j) + d(j,k) + tol.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(ValidationErrorKind kind, std::string message,
                  Index i = 0, Index j = 0, Index k = 0, double slack = 0.0);

  ValidationErrorKind kind() const noexcept { return kind_; }
  Index i() const noexcept { return i_; }
  Index j() const noexcept { return j_; }
  Index k() const noexcept { return k_; }
  double slack() const noexcept { return slack_; }

 private:
  ValidationErrorKind kind_;
  Index i_, j_, k_;
  double slack_;
};

class UnknownIdError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class BadSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite metric space with a validated distance matrix. Instances are
/// only produced by validate_metric / repair_metric / make_builtin and
/// are immutable afterwards.
class MetricSpace {
 public:
  const std::string& name() const noexcept { return name_; }
  Index size() const noexcept { return static_cast<Index>(dist_.rows()); }
  const DistanceMatrix& distances() const noexcept { return dist_; }
  double operator()(Index i, Index j) const { return dist_(i, j); }

  /// Empty string when the point is unlabeled.
  const std::string& label(Index i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept;
  std::optional<Index> find_label(const std::string& label) const;

  double diameter() const noexcept { return diameter_; }
  /// Largest d(i,k) - d(i,j) - d(j,k) over distinct triples; -inf when
  /// the space has fewer than three points.
  double worst_triangle_slack() const noexcept { return worst_slack_; }

  bool contains(Index i) const noexcept { return i < size(); }

 private:
  friend MetricSpace validate_metric(const DistanceMatrix&, double,
                                     std::string, std::vector<std::string>);
  MetricSpace() = default;

  std::string name_;
  std::vector<std::string> labels_;
  DistanceMatrix dist_;
  double diameter_ = 0.0;
  double worst_slack_ = 0.0;
};

using SpacePtr = std::shared_ptr<const MetricSpace>;

/// Checks every metric axiom and returns the accepted space. Asymmetries
/// within kSymmetrizeTol are averaged; everything else is rejected with a
/// ValidationError naming the offending entry.
MetricSpace validate_metric(const DistanceMatrix& matrix,
                            double tol_metric = kDefaultTolMetric,
                            std::string name = {},
                            std::vector<std::string> labels = {});

/// All-pairs shortest-path closure of a symmetric, zero-diagonal,
/// positive off-diagonal matrix. The result is entrywise <= the input.
MetricSpace repair_metric(const DistanceMatrix& matrix, std::string name = {},
                          std::vector<std::string> labels = {});

/// Shortest-path closure only, without validation of the result.
DistanceMatrix shortest_path_closure(const DistanceMatrix& matrix);

/// Sub-space induced on `members` (in the given order).
MetricSpace restrict_space(const MetricSpace& space, const IdList& members);

// Built-in families.
struct LinePoints {
  std::vector<double> values;
};
/// N equally spaced points on the unit circle, arc-length metric.
struct CircleGeodesic {
  Index n = 0;
};
/// N equally spaced points on the unit circle, chordal metric.
struct CircleChordal {
  Index n = 0;
};
/// a x b unit grid on the flat torus with Euclidean quotient metric.
struct TorusGrid {
  Index a = 0;
  Index b = 0;
};
struct Equilateral {
  Index n = 0;
  double side = 1.0;
};
/// Points x_1..x_N with d(x_i, x_j) = 2 - 1/max(i, j).
struct ShrinkingShiftFamily {
  Index n = 0;
};

using GeneratorSpec = std::variant<LinePoints, CircleGeodesic, CircleChordal,
                                   TorusGrid, Equilateral, ShrinkingShiftFamily>;

MetricSpace make_builtin(const GeneratorSpec& spec);
std::string generator_name(const GeneratorSpec& spec);

/// Symmetric matrix with zero diagonal and off-diagonal entries drawn
/// uniformly from [lo, hi], passed through repair_metric.
MetricSpace random_repaired_metric(Index n, unsigned long long seed,
                                   double lo = 0.1, double hi = 1.0);

/// The set Y: a sorted, duplicate-free, nonempty subset of a space.
class SubsetSelection {
 public:
  SubsetSelection(SpacePtr space, IdList members);
  static SubsetSelection whole(SpacePtr space);

  const MetricSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  const IdList& members() const noexcept { return members_; }
  Index size() const noexcept { return members_.size(); }
  bool is_whole_space() const noexcept { return members_.size() == space_->size(); }

  /// max over x in X of min over y in Y of d(x, y), computed at construction.
  double density_gap() const noexcept { return density_gap_; }

 private:
  SpacePtr space_;
  IdList members_;
  double density_gap_ = 0.0;
};

double density_gap(const SubsetSelection& subset);
double density_gap(const MetricSpace& space, const IdList& members);

}  // namespace metric_gauge
