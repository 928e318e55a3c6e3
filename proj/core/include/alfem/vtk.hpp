#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "alfem/mesh.hpp"

namespace alfem {

struct VtkField {
  std::string name;
  std::vector<double> values;
};

/// Legacy ASCII unstructured grid (triangles, cell type 5). Point fields need one
/// value per vertex, cell fields one per triangle; NaN marks blanked values.
/// Subdomain and cut-status style tags can be passed as cell fields.
void write_vtk(const std::filesystem::path& path, const Mesh& mesh,
               std::span<const VtkField> point_data, std::span<const VtkField> cell_data = {},
               const std::string& title = "alfem");

}  // namespace alfem
