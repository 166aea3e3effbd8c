#pragma once
// Signed crossing codes of generic closed curves and the plane maps they
// determine.
//
// Positions are 0-based in memory (position k is the k-th crossing value met
// after the basepoint). File formats use 1-based indices; see io.hpp.

#include <compare>
#include <string>
#include <vector>

namespace curvetp {

struct SignedCrossingCode {
  std::vector<int> twin;  // fixed-point-free involution of [0, 2n)
  std::vector<int> sign;  // +1 / -1, sign[twin[i]] == -sign[i]

  int n() const { return static_cast<int>(twin.size()) / 2; }
  int positions() const { return static_cast<int>(twin.size()); }

  friend auto operator<=>(const SignedCrossingCode&, const SignedCrossingCode&) = default;
  friend bool operator==(const SignedCrossingCode&, const SignedCrossingCode&) = default;
};

/// Each check is reported independently; a code is valid iff all of them hold.
struct ValidationReport {
  bool lengths_match = true;
  bool in_range = true;
  bool involution = true;
  bool fixed_point_free = true;
  bool parity = true;
  bool sign_values = true;
  bool sign_antisymmetric = true;
  bool realizable = true;
  std::vector<std::string> failures;

  bool valid() const { return failures.empty(); }
};

ValidationReport validate(const SignedCrossingCode& code);

/// True when the structural invariants hold (everything except realizability).
bool structurally_valid(const SignedCrossingCode& code);

/// Genus-0 test: traces the faces of the rotation system and checks F == n + 2.
/// Returns false for structurally invalid input.
bool realizable(const SignedCrossingCode& code);

/// Image graph of a curve. Arc a runs from position a to position a+1 (mod 2n).
/// Dart 2a is arc a traversed forward, dart 2a+1 the same arc backward; a dart
/// is owned by the crossing at its tail. Faces are dart cycles with the face on
/// the left of every dart.
struct PlaneMap {
  int vertex_count = 0;
  int edge_count = 0;
  bool simple_curve = false;          // n == 0: one arc, two faces, no vertices
  std::vector<int> vertex_of_position;
  std::vector<int> tail;              // dart -> vertex
  std::vector<int> rotation_next;     // dart -> next dart counterclockwise at its tail
  std::vector<int> rotation_prev;
  std::vector<std::vector<int>> faces;
  std::vector<int> face_of_dart;
  int outer_face = 0;

  int face_count() const { return static_cast<int>(faces.size()); }
  static int forward_dart(int arc) { return 2 * arc; }
  static int backward_dart(int arc) { return 2 * arc + 1; }
  static int reverse(int dart) { return dart ^ 1; }
  static int arc_of(int dart) { return dart / 2; }
  static bool is_forward(int dart) { return (dart & 1) == 0; }
};

/// Throws Error(NotRealizable).
PlaneMap image_graph(const SignedCrossingCode& code);

/// All codes of the same plane curve, over basepoints on outer-face arcs with
/// the outer face kept to the right. Sorted, duplicate-free, contains `code`.
/// Throws Error(NotRealizable).
std::vector<SignedCrossingCode> equivalent_codes(const SignedCrossingCode& code);

/// Isotopy of the plane curves described by two codes (no reflection).
bool codes_isotopic(const SignedCrossingCode& a, const SignedCrossingCode& b);

/// Code with every sign flipped. With the outer-face rule this is generally a
/// different plane curve, not the reflection of the original.
SignedCrossingCode mirror(const SignedCrossingCode& code);

}  // namespace curvetp
