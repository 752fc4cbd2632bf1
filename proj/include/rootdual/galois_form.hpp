#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootdual/chevalley.hpp"
#include "rootdual/cohomology.hpp"
#include "rootdual/root_datum.hpp"

namespace rootdual {

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& msg, size_t p) : std::runtime_error(msg), pos(p) {}
};

struct FieldDescriptor {
  enum class Kind { Real, PAdic, AbstractCyclic };
  Kind kind = Kind::Real;
  Int param = 0;  // p for PAdic, n for AbstractCyclic

  static FieldDescriptor real() { return {Kind::Real, 0}; }
  static FieldDescriptor padic(Int p);
  static FieldDescriptor abstract_cyclic(Int n) { return {Kind::AbstractCyclic, n}; }
  bool is_real() const { return kind == Kind::Real; }
  std::string str() const;
};

// Quasi-split form: a based root datum with a finite group acting by pinned
// diagram automorphisms, plus the field the cohomological criteria run over.
// Over R the Galois group is stored as C2 even for the split form (with the
// trivial action), so that cocycle data is available.
struct QuasiSplitForm {
  BasedRootDatum brd;
  FiniteGroupTable gamma;
  std::vector<std::vector<int>> delta_perm;  // per group element
  std::vector<IMat> on_X;                    // per group element
  std::vector<IMat> on_Xv;
  FieldDescriptor field;
  std::string name;

  bool split_action() const;
  const std::vector<int>& perm_of(int element) const {
    return delta_perm[static_cast<size_t>(element)];
  }
};

struct GeneratorAction {
  std::vector<int> delta_perm;
  std::optional<IMat> on_X;  // required when the datum is not semisimple
};

QuasiSplitForm make_form(const BasedRootDatum& brd, const FiniteGroupTable& gamma,
                         const std::vector<GeneratorAction>& gen_actions,
                         const FieldDescriptor& field, const std::string& name = "");

std::vector<std::vector<int>> simple_root_orbits(const QuasiSplitForm& form);

// X*(Z) = X / Z Delta in Smith coordinates, with the induced Gamma-action.
struct CenterModule {
  AbelianQuotient quot;  // of X by the simple-root columns
  GModule mod;           // live coordinates only; moduli 0 = free (central torus)
  bool mixing = false;   // free coordinates feed torsion ones under Gamma
};

CenterModule center_module(const QuasiSplitForm& form);
GModule cochar_module(const QuasiSplitForm& form);  // Xv with the on_Xv action

// The dual quasi-split form: dual datum, transposed-inverse action (the
// L-group side). Field descriptor is carried along.
QuasiSplitForm dual_form(const QuasiSplitForm& form);

// Levi sub-form for a Gamma-stable subset S of Delta (same lattice).
QuasiSplitForm levi_sub_form(const QuasiSplitForm& form, const std::vector<int>& S);

// --- conversions between Z-points and module coordinates -------------------
// A point of Z(C)_tors inside T = Xv (x) Q/Z corresponds to a functional on
// X*(Z); in Smith coordinates the two are related by the transform transpose.
std::vector<QmodZ> z_point_from_coords(const CenterModule& cm, const IVec& torsion_coords,
                                       const std::vector<QmodZ>& free_coords);
struct ZPointCoords {
  IVec torsion;
  std::vector<QmodZ> free_part;
};
ZPointCoords z_point_to_coords(const CenterModule& cm, const std::vector<QmodZ>& point);

bool kills_all_roots(const BasedRootDatum& brd, const std::vector<QmodZ>& point_on_Xv);

// --- the Proposition 2 criterion -------------------------------------------
struct Prop2Result {
  enum class Verdict { Holds, Fails, HoldsSufficient, Undecided };
  Verdict verdict = Verdict::Undecided;
  std::string reason;
  std::string h1z_factors;  // when exactly computed
  std::string verdict_str() const;
};
Prop2Result prop2_criterion(const QuasiSplitForm& form);

// --- Proposition 8: H^1(W, Z^) -> H^1(W, T^) is injective -------------------
struct Prop8Result {
  bool verified = false;
  bool orbit_check = false;  // T^/Z^ = prod of G_m over simple-root orbits
  std::string h1_center;
  std::string h1_torus;
  std::string detail;
};
Prop8Result prop8_injectivity(const QuasiSplitForm& form);

// --- connecting map T^ad(R) -> H^1(R, Z) ------------------------------------
struct ConnectingClass {
  std::vector<QmodZ> cocycle;  // value at conjugation, as a torsion point of T
  bool zero = false;           // zero in H^1(C2, Z)
  std::string h1z_factors;
};
ConnectingClass connecting_map_real(const QuasiSplitForm& form, const TorusPoint& t_ad);

// --- group-spec grammar -----------------------------------------------------
// "<k><Type><rank>[-sc|-ad|-iso=[[..],..]]@<field>"  e.g. "2A3-sc@Qp3",
// plus classical names: GLn, SLn, PGLn, Sp2n, SOn, Un (and twisted 2SO2n).
struct GroupSpec {
  int twist = 1;
  std::string base;
  std::string isogeny;  // "sc" | "ad" | "iso" | "" for classical names
  IMat iso_basis;
  FieldDescriptor field;
  std::string canonical;
};

GroupSpec parse_group_spec(const std::string& text);
QuasiSplitForm build_form(const GroupSpec& spec);
QuasiSplitForm build_form(const std::string& text);

// Diagram involution of a simple type, if one exists (Bourbaki numbering).
std::optional<std::vector<int>> diagram_flip(char letter, int rank);

}  // namespace rootdual
