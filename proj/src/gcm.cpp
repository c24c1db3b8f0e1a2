#include "kmroots/gcm.hpp"

#include <sstream>

namespace kmroots {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DiagonalNotTwo: return "DiagonalNotTwo";
    case ErrorKind::PositiveOffDiagonal: return "PositiveOffDiagonal";
    case ErrorKind::AsymmetricZero: return "AsymmetricZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::SliceTooShallow: return "SliceTooShallow";
    case ErrorKind::NotASubset: return "NotASubset";
    case ErrorKind::NotARealRoot: return "NotARealRoot";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InstancePreconditionViolated: return "InstancePreconditionViolated";
    case ErrorKind::EqualOrOpposite: return "EqualOrOpposite";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::NotClosedInput: return "NotClosedInput";
    case ErrorKind::ClosureEscaped: return "ClosureEscaped";
    case ErrorKind::NotFiniteType: return "NotFiniteType";
    case ErrorKind::UnrecognizedDiagram: return "UnrecognizedDiagram";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

std::string to_string(const RootVec& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

namespace {

std::string describe(const std::vector<GcmViolation>& violations) {
  std::ostringstream os;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    const auto& v = violations[k];
    if (k) os << "; ";
    os << to_string(v.kind) << " at (" << v.row + 1 << "," << v.col + 1 << ")";
  }
  return os.str();
}

}  // namespace

GcmError::GcmError(std::vector<GcmViolation> violations)
    : Error(violations.empty() ? ErrorKind::InvalidInput : violations.front().kind,
            "invalid generalised Cartan matrix: " + describe(violations)),
      violations_(std::move(violations)) {}

IntMatrix GCM::matrix() const {
  IntMatrix m(n_, std::vector<Coeff>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m[i][j] = (*this)(i, j);
  return m;
}

std::vector<GcmViolation> gcm_violations(const IntMatrix& matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "matrix must have rank >= 1");
  for (const auto& row : matrix)
    if (row.size() != n) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");

  std::vector<GcmViolation> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Coeff a = matrix[i][j];
      if (i == j) {
        if (a != 2) out.push_back({ErrorKind::DiagonalNotTwo, i, j});
        continue;
      }
      if (a > 0) out.push_back({ErrorKind::PositiveOffDiagonal, i, j});
      // Report each asymmetric zero once, at the cell holding the zero.
      if (a == 0 && matrix[j][i] != 0) out.push_back({ErrorKind::AsymmetricZero, i, j});
    }
  }
  return out;
}

GCM validate_gcm(const IntMatrix& matrix) {
  auto violations = gcm_violations(matrix);
  if (!violations.empty()) throw GcmError(std::move(violations));
  const std::size_t n = matrix.size();
  std::vector<Coeff> flat;
  flat.reserve(n * n);
  for (const auto& row : matrix) flat.insert(flat.end(), row.begin(), row.end());
  return GCM(n, std::move(flat));
}

Coeff pairing(const RootVec& root, const CorootVec& coroot, const GCM& gcm) {
  const std::size_t n = gcm.rank();
  if (root.size() != n || coroot.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "pairing operands must have length " +
                                                  std::to_string(n));
  Coeff sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (coroot[i] == 0) continue;
    Coeff row = 0;
    for (std::size_t j = 0; j < n; ++j)
      row = detail::checked_add(row, detail::checked_mul(root[j], gcm(i, j)));
    sum = detail::checked_add(sum, detail::checked_mul(coroot[i], row));
  }
  return sum;
}

Coeff pairing_simple(const RootVec& root, std::size_t i, const GCM& gcm) {
  if (root.size() != gcm.rank())
    throw Error(ErrorKind::DimensionMismatch, "root has wrong length");
  Coeff row = 0;
  for (std::size_t j = 0; j < gcm.rank(); ++j)
    row = detail::checked_add(row, detail::checked_mul(root[j], gcm(i, j)));
  return row;
}

Coeff pairing_simple(std::size_t i, const CorootVec& coroot, const GCM& gcm) {
  if (coroot.size() != gcm.rank())
    throw Error(ErrorKind::DimensionMismatch, "coroot has wrong length");
  Coeff col = 0;
  for (std::size_t k = 0; k < gcm.rank(); ++k)
    col = detail::checked_add(col, detail::checked_mul(coroot[k], gcm(k, i)));
  return col;
}

}  // namespace kmroots
