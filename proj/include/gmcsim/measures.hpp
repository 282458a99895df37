#pragma once

#include <span>
#include <string>
#include <vector>

#include "gmcsim/domain.hpp"

namespace gmc {

struct Atom {
  Vec2 p;
  double w;
};

// Finite discretization of a base measure: positive weighted atoms inside the
// closed domain, with a provenance string describing source and resolution.
struct AtomList {
  std::vector<Atom> atoms;
  double total_mass{0.0};
  std::string provenance;
};

AtomList make_atom_list(std::vector<Atom> atoms, std::string provenance);

// Cell-center atoms of weight h^2 for grid cells whose center is interior.
AtomList lebesgue_atoms(const Domain& d, double h);

// Equally spaced atoms of weight h along the chord, the final partial cell
// truncated to make the total exactly the chord length. A tangent line gives
// an empty list; a non-intersecting line throws.
AtomList chord_atoms(const Domain& d, const Line& line, double h);

// Atoms of weight h along the arc-length prefix [0, t] of the curve, with the
// same exact-mass truncation rule. t outside [0, length] throws.
AtomList curve_atoms(const Curve& c, double t, double h);

// Contracting similarity r * R(angle) * x + shift.
struct IfsMap {
  double ratio;   // in (0,1)
  double angle;   // rotation, radians
  Vec2 shift;
  Vec2 apply(Vec2 x) const;
};

struct IfsSpec {
  std::vector<IfsMap> maps;     // m >= 2
  std::vector<double> probs;    // probability vector of length m
  int depth{1};
};

// Validates an IFS spec against a domain: probabilities form a positive
// simplex vector, ratios lie in (0,1), and each map sends the domain's
// bounding box into the closed domain. Returns a warning flag when the
// depth-1 images of the bounding box overlap (open-set-condition heuristic).
bool validate_ifs(const Domain& d, const IfsSpec& spec);

// One atom per depth-d word: the image of the domain center under the word's
// composition, with weight prod p_i. Total mass 1. Words beyond 10^7 throw.
AtomList ifs_atoms(const Domain& d, const IfsSpec& spec);

// min_i log p_i / log r_i, the growth exponent of the self-similar measure.
double growth_exponent(const IfsSpec& spec);

struct A1Fit {
  double C1;
  double alpha1;
};

// Least-squares fit of log max_x nu(B(x, r)) against log r over the atom
// centers; slope estimates the measure growth exponent.
A1Fit estimate_A1(const AtomList& atoms, std::span<const double> radii);

// Hoelder metadata of a parameterized family, used by the threshold algebra.
enum class FamilyKind { chords, curve_prefix, ifs_path };

struct FamilySpec {
  FamilyKind kind{FamilyKind::chords};
  double alpha2{1.0};
  double alpha2prime{0.5};
  int k{2};
  double C2{1.0};
};

// Built-in metadata: chords (1, 1/2, k=2), curve prefixes (1, 1, k=1),
// IFS parameter paths (1, +inf symmetric-difference, k=4m).
FamilySpec builtin_family(FamilyKind kind, int ifs_m = 2);

}  // namespace gmc
