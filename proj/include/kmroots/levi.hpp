#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kmroots/closed_sets.hpp"

namespace kmroots {

/// One connected Dynkin component, e.g. {'B', 3}.
struct DynkinComponent {
  char family;
  std::size_t rank;
  friend auto operator<=>(const DynkinComponent&, const DynkinComponent&) = default;
};

/// A finite root system type as a sorted multiset of components.
struct FiniteType {
  std::vector<DynkinComponent> components;

  std::size_t total_rank() const;
  std::size_t root_count() const;
  /// "A1xB2"; the empty type prints as "".
  std::string to_string() const;
  friend bool operator==(const FiniteType&, const FiniteType&) = default;
};

/// Number of roots of an irreducible finite type.
std::size_t root_count(const DynkinComponent& c);

/// Identifies a Cartan matrix c(i, j) = <s_j, s_i^vee> of finite type by
/// matching each connected component's labelled Dynkin diagram. Throws
/// NotFiniteType for a valid matrix outside the classification and
/// UnrecognizedDiagram when the matrix is not even a GCM.
FiniteType classify_cartan_matrix(const IntMatrix& c);

/// Rank over the rationals of the integer rows (fraction-free elimination).
std::size_t rational_rank(const std::vector<std::vector<Coeff>>& rows);

/// (Psi_s, Psi_n) with Psi_s = Psi meet -Psi.
std::pair<RootSet, RootSet> split(const RootSet& psi);

/// Indecomposable elements of Psi_s meet Delta_+, in RootOrder. Verifies
/// that every positive element expands with nonnegative integer
/// coefficients and that distinct simples pair nonpositively.
std::vector<RealRoot> simple_system(const RootSet& psi_s, const RootSlice& slice);

FiniteType cartan_type(const RootSet& psi_s, const RootSlice& slice);

/// Rank of the span of the coroots of Psi_s.
std::size_t coroot_span_rank(const RootSet& psi_s);

struct LeviCheck {
  bool passed;
  std::string detail;
};

struct LeviReport {
  RootSet psi_s;
  RootSet psi_n;
  FiniteType type;
  std::size_t coroot_rank = 0;
  LeviCheck symmetric_closed;     // Psi_s closed
  LeviCheck nilradical_ideal;     // Psi_n an ideal in Psi
  LeviCheck nilradical_filtered;  // Psi_n filtration levels nilpotent
  LeviCheck classified;           // type found, |Psi_s| and coroot rank match
  std::size_t filtration_levels = 0;

  bool all_passed() const {
    return symmetric_closed.passed && nilradical_ideal.passed && nilradical_filtered.passed &&
           classified.passed;
  }
};

/// Levi decomposition of a closed set of real roots with every root-level
/// check. Throws NotClosedInput if Psi is not closed in the slice.
LeviReport verify_levi(const RootSet& psi, const RootSlice& slice);

}  // namespace kmroots
