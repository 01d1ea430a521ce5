#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polydyn/polycore.hpp"

namespace polydyn {

// A vertex stands for c + zeta_k^s * u, with c the symmetry center and u rational.
struct VertexKey {
  Rational u;
  int s = 0;
  auto operator<=>(const VertexKey&) const = default;
};

struct Vertex {
  int id = 0;
  VertexKey key;
  int dpi = 1;
  bool ray = false;          // escaped under the exact escape test
  bool placeholder = false;  // truncation marker standing for the rest of a ray
  bool unresolved = false;   // orbit neither closed nor escaped within the depth
  int step = 0;              // distance from the rotated critical set
};

struct MarkedGraph {
  int degree = 0;
  int k = 1;
  int rho = 0;
  Rational center;
  std::vector<Vertex> vertices;  // indexed by id
  std::vector<int> flow;
  std::vector<int> marking;      // d-1 entries
  std::vector<int> action;       // generator zeta acting on ids
  std::map<int, int> height;     // vertices of infinite components
  int depth = 0;
  bool complete = true;

  std::string value_str(int id) const;
};

MarkedGraph build_graph(const QPoly& p, int depth = 16, std::size_t max_bits = 1000000);

enum class Violation {
  FlowUndefined,
  CountIdentityViolated,
  MarkedMultiplicityMismatch,
  NotMinimal,
  ActionNotPermutation,
  ActionOrderMismatch,
  ActionFixedPoints,
  FlowNotEquivariant,
  HeightInconsistent,
  SymmetryOrderTooLarge,
  LocalDegreeInvalid,
};
std::string to_string(Violation v);

std::vector<Violation> validate_axioms(const MarkedGraph& g);

int infinite_components(const MarkedGraph& g);
bool is_special(const MarkedGraph& g);
bool graphs_equal(const MarkedGraph& a, const MarkedGraph& b);

// (tail, cycle) of the flow orbit of the i-th marked vertex; nullopt on rays or
// unresolved vertices
std::optional<std::pair<int, int>> marked_orbit_shape(const MarkedGraph& g, int i);

std::string to_json(const MarkedGraph& g);

}  // namespace polydyn
