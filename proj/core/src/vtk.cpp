#include "alfem/vtk.hpp"

#include <cmath>
#include <fstream>

#include "alfem/error.hpp"

namespace alfem {

namespace {

void write_scalar(std::ostream& os, const VtkField& field, std::size_t expected) {
  if (field.values.size() != expected)
    throw InvalidArgument("VTK field '" + field.name + "' has the wrong length");
  os << "SCALARS " << field.name << " double 1\nLOOKUP_TABLE default\n";
  for (double v : field.values) {
    if (std::isnan(v))
      os << "nan\n";
    else
      os << v << '\n';
  }
}

}  // namespace

void write_vtk(const std::filesystem::path& path, const Mesh& mesh,
               std::span<const VtkField> point_data, std::span<const VtkField> cell_data,
               const std::string& title) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  os.precision(17);
  os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.num_vertices() << " double\n";
  for (const auto& p : mesh.vertices()) os << p.x() << ' ' << p.y() << " 0\n";
  const std::size_t nt = mesh.num_triangles();
  os << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (const auto& t : mesh.triangles()) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  os << "CELL_TYPES " << nt << '\n';
  for (std::size_t t = 0; t < nt; ++t) os << "5\n";
  if (!point_data.empty()) {
    os << "POINT_DATA " << mesh.num_vertices() << '\n';
    for (const auto& f : point_data) write_scalar(os, f, mesh.num_vertices());
  }
  if (!cell_data.empty()) {
    os << "CELL_DATA " << nt << '\n';
    for (const auto& f : cell_data) write_scalar(os, f, nt);
  }
  if (!os) throw Error("failed writing " + path.string());
}

}  // namespace alfem
