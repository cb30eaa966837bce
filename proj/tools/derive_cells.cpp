// Regenerates src/wang_cells.inc: the Wang id of every face of the
// bifurcation-line arrangement, keyed by its side signature.
//   derive_cells > src/wang_cells.inc
#include <iostream>

#include "penrose/wang.hpp"

using namespace penrose;

int main() {
  std::vector<CanonPatch> canon = enumerate_canon_24();
  const auto& faces = arrangement_faces();
  std::vector<int> face_id(faces.size(), -1);
  for (const CanonPatch& cp : canon)
    for (int f : cp.faces) face_id[f] = cp.id;
  std::cout << "// Generated by derive_cells; do not edit.\n";
  std::cout << "constexpr int kCellLineCount = " << bifurcation_lines().size() << ";\n";
  std::cout << "constexpr CellEntry kCellTable[] = {\n";
  for (std::size_t f = 0; f < faces.size(); ++f)
    std::cout << "    {\"" << side_signature(interior_point(faces[f])) << "\", " << face_id[f] << "},\n";
  std::cout << "};\n";
}
