// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include <hdf5.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <filesystem>
#include <mutex>
#include <sstream>

#include "plexus/error.hpp"
#include "plexus/io.hpp"

namespace plexus
{

namespace
{

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

// The system HDF5 library is not built thread-safe and ranks are threads.
std::mutex &Hdf5Mutex()
{
  static std::mutex mutex;
  return mutex;
}

class Handle
{
public:
  Handle(hid_t id, herr_t (*close)(hid_t), const std::string &what) : id_(id), close_(close)
  {
    Require(id_ >= 0, "HDF5: {}", what);
  }
  Handle(const Handle &) = delete;
  Handle &operator=(const Handle &) = delete;
  ~Handle() { close_(id_); }
  operator hid_t() const { return id_; }

private:
  hid_t id_;
  herr_t (*close_)(hid_t);
};

void SilenceErrors()
{
  static std::once_flag once;
  std::call_once(once, [] { H5Eset_auto2(H5E_DEFAULT, nullptr, nullptr); });
}

std::string Lower(std::string s)
{
  for (auto &c : s)
  {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

bool IsDescriptor(const std::string &path)
{
  const auto ext = Lower(fs::path(path).extension().string());
  return ext == ".xdmf" || ext == ".xmf";
}

bool IsHeavy(const std::string &path)
{
  const auto ext = Lower(fs::path(path).extension().string());
  return ext == ".h5" || ext == ".hdf5";
}

std::string XdmfTopologyName(PolytopeType type)
{
  switch (type)
  {
    case PolytopeType::segment:
      return "Polyline";
    case PolytopeType::triangle:
      return "Triangle";
    case PolytopeType::quadrilateral:
      return "Quadrilateral";
    case PolytopeType::tetrahedron:
      return "Tetrahedron";
    case PolytopeType::hexahedron:
      return "Hexahedron";
    default:
      Fail("cell type {} has no XDMF topology name", ToString(type));
  }
}

std::optional<PolytopeType> FromXdmfTopologyName(const std::string &name)
{
  for (auto type : {PolytopeType::segment, PolytopeType::triangle, PolytopeType::quadrilateral,
                    PolytopeType::tetrahedron, PolytopeType::hexahedron})
  {
    if (Lower(XdmfTopologyName(type)) == Lower(name))
    {
      return type;
    }
  }
  return std::nullopt;
}

bool LinkExists(hid_t file, const std::string &path)
{
  // Every prefix has to exist before H5Lexists may be asked about the next component.
  std::size_t pos = 0;
  while (true)
  {
    pos = path.find('/', pos + 1);
    const auto prefix = path.substr(0, pos);
    if (!prefix.empty() && prefix != "/" && H5Lexists(file, prefix.c_str(), H5P_DEFAULT) <= 0)
    {
      return false;
    }
    if (pos == std::string::npos)
    {
      return true;
    }
  }
}

void CreateDataset(hid_t file, const std::string &path, hid_t type, hsize_t rows, hsize_t cols)
{
  const hsize_t dims[2] = {rows, cols};
  Handle space(H5Screate_simple(2, dims, nullptr), H5Sclose, "cannot create dataspace");
  Handle lcpl(H5Pcreate(H5P_LINK_CREATE), H5Pclose, "cannot create property list");
  H5Pset_create_intermediate_group(lcpl, 1);
  Handle dset(H5Dcreate2(file, path.c_str(), type, space, lcpl, H5P_DEFAULT, H5P_DEFAULT),
              H5Dclose, fmt::format("cannot create dataset {}", path));
}

void WriteStringAttribute(hid_t object, const std::string &name, const std::string &value)
{
  Handle type(H5Tcopy(H5T_C_S1), H5Tclose, "cannot copy string type");
  H5Tset_size(type, std::max<std::size_t>(value.size(), 1));
  Handle space(H5Screate(H5S_SCALAR), H5Sclose, "cannot create dataspace");
  Handle attr(H5Acreate2(object, name.c_str(), type, space, H5P_DEFAULT, H5P_DEFAULT),
              H5Aclose, fmt::format("cannot create attribute {}", name));
  Require(H5Awrite(attr, type, value.c_str()) >= 0, "HDF5: cannot write attribute {}", name);
}

std::optional<std::string> ReadStringAttribute(hid_t object, const std::string &name)
{
  if (H5Aexists(object, name.c_str()) <= 0)
  {
    return std::nullopt;
  }
  Handle attr(H5Aopen(object, name.c_str(), H5P_DEFAULT), H5Aclose, "cannot open attribute");
  Handle type(H5Aget_type(attr), H5Tclose, "cannot query attribute type");
  if (H5Tget_class(type) != H5T_STRING || H5Tis_variable_str(type) > 0)
  {
    return std::nullopt;
  }
  std::string value(H5Tget_size(type), '\0');
  Require(H5Aread(attr, type, value.data()) >= 0, "HDF5: cannot read attribute {}", name);
  value.resize(value.find('\0') == std::string::npos ? value.size() : value.find('\0'));
  return value;
}

// Rows [first, first + count) of a two-dimensional dataset.
template <typename T>
void WriteRows(hid_t file, const std::string &path, hid_t mem_type, hsize_t first,
               hsize_t count, hsize_t cols, const std::vector<T> &data)
{
  Handle dset(H5Dopen2(file, path.c_str(), H5P_DEFAULT), H5Dclose,
              fmt::format("cannot open dataset {}", path));
  Handle space(H5Dget_space(dset), H5Sclose, "cannot query dataspace");
  const hsize_t start[2] = {first, 0};
  const hsize_t extent[2] = {count, cols};
  if (count * cols == 0)
  {
    H5Sselect_none(space);
  }
  else
  {
    H5Sselect_hyperslab(space, H5S_SELECT_SET, start, nullptr, extent, nullptr);
  }
  Handle memspace(H5Screate_simple(2, extent, nullptr), H5Sclose, "cannot create dataspace");
  if (count * cols == 0)
  {
    H5Sselect_none(memspace);
  }
  Require(H5Dwrite(dset, mem_type, memspace, space, H5P_DEFAULT, data.data()) >= 0,
          "HDF5: cannot write dataset {}", path);
}

struct DatasetShape
{
  hsize_t rows = 0;
  hsize_t cols = 0;
};

DatasetShape QueryShape(hid_t file, const std::string &path)
{
  Require(LinkExists(file, path), "dataset {} not found", path);
  Handle dset(H5Dopen2(file, path.c_str(), H5P_DEFAULT), H5Dclose,
              fmt::format("cannot open dataset {}", path));
  Handle space(H5Dget_space(dset), H5Sclose, "cannot query dataspace");
  const int rank = H5Sget_simple_extent_ndims(space);
  Require(rank == 1 || rank == 2, "dataset {} has rank {}, expected 2", path, rank);
  hsize_t dims[2] = {0, 1};
  H5Sget_simple_extent_dims(space, dims, nullptr);
  return {dims[0], rank == 2 ? dims[1] : 1};
}

template <typename T>
std::vector<T> ReadRows(hid_t file, const std::string &path, hid_t mem_type, hsize_t first,
                        hsize_t count, hsize_t cols)
{
  Handle dset(H5Dopen2(file, path.c_str(), H5P_DEFAULT), H5Dclose,
              fmt::format("cannot open dataset {}", path));
  Handle space(H5Dget_space(dset), H5Sclose, "cannot query dataspace");
  const int rank = H5Sget_simple_extent_ndims(space);
  const hsize_t start[2] = {first, 0};
  const hsize_t extent[2] = {count, cols};
  const hsize_t flat = count * cols;
  std::vector<T> data(flat);
  if (flat == 0)
  {
    return data;
  }
  if (rank == 1)
  {
    const hsize_t flat_start = first * cols;
    H5Sselect_hyperslab(space, H5S_SELECT_SET, &flat_start, nullptr, &flat, nullptr);
  }
  else
  {
    H5Sselect_hyperslab(space, H5S_SELECT_SET, start, nullptr, extent, nullptr);
  }
  Handle memspace(H5Screate_simple(1, &flat, nullptr), H5Sclose, "cannot create dataspace");
  Require(H5Dread(dset, mem_type, memspace, space, H5P_DEFAULT, data.data()) >= 0,
          "HDF5: cannot read dataset {}", path);
  return data;
}

template <typename T>
std::vector<T> ReadAll(hid_t file, const std::string &path, hid_t mem_type)
{
  const auto shape = QueryShape(file, path);
  return ReadRows<T>(file, path, mem_type, 0, shape.rows, shape.cols);
}

template <typename T>
void WriteVector(hid_t file, const std::string &path, hid_t file_type, hid_t mem_type,
                 const std::vector<T> &data)
{
  CreateDataset(file, path, file_type, data.size(), 1);
  WriteRows(file, path, mem_type, 0, data.size(), 1, data);
}

struct DataItem
{
  std::string file;
  std::string dataset;
  std::vector<hsize_t> dims;
};

DataItem ParseDataItem(const pt::ptree &item, const fs::path &base)
{
  Require(Lower(item.get<std::string>("<xmlattr>.Format", "XML")) == "hdf",
          "only HDF data items are supported");
  std::string text = item.get_value<std::string>();
  const auto first = text.find_first_not_of(" \t\r\n");
  const auto last = text.find_last_not_of(" \t\r\n");
  Require(first != std::string::npos, "empty data item");
  text = text.substr(first, last - first + 1);
  const auto colon = text.rfind(':');
  Require(colon != std::string::npos, "data item '{}' lacks a file:dataset reference", text);
  DataItem out;
  fs::path file = text.substr(0, colon);
  out.file = (file.is_relative() ? base / file : file).string();
  out.dataset = text.substr(colon + 1);
  std::istringstream dims(item.get<std::string>("<xmlattr>.Dimensions", ""));
  for (hsize_t d; dims >> d;)
  {
    out.dims.push_back(d);
  }
  return out;
}

struct Source
{
  std::string file;
  std::string topology;
  std::string geometry;
  std::optional<PolytopeType> type;
  std::vector<hsize_t> topology_dims;
  std::vector<hsize_t> geometry_dims;
};

Source ResolveSource(const std::string &path, const IoOptions &options)
{
  Source source;
  if (!IsDescriptor(path))
  {
    source.file = path;
    source.topology = options.topology_path;
    source.geometry = options.geometry_path;
    return source;
  }
  pt::ptree tree;
  try
  {
    pt::read_xml(path, tree);
  }
  catch (const pt::xml_parser_error &e)
  {
    Fail("cannot parse {}: {}", path, e.what());
  }
  const auto *grid = &tree.get_child("Xdmf.Domain.Grid", pt::ptree());
  Require(!grid->empty(), "{}: no Xdmf/Domain/Grid element", path);
  const auto topology = grid->get_child_optional("Topology");
  const auto geometry = grid->get_child_optional("Geometry");
  Require(topology && geometry, "{}: grid needs Topology and Geometry", path);
  const auto base = fs::path(path).parent_path();
  const auto topo_item = ParseDataItem(topology->get_child("DataItem"), base);
  const auto geom_item = ParseDataItem(geometry->get_child("DataItem"), base);
  Require(topo_item.file == geom_item.file, "{}: topology and geometry in different files",
          path);
  source.file = topo_item.file;
  source.topology = topo_item.dataset;
  source.geometry = geom_item.dataset;
  source.topology_dims = topo_item.dims;
  source.geometry_dims = geom_item.dims;
  source.type = FromXdmfTopologyName(topology->get<std::string>("<xmlattr>.TopologyType", ""));
  return source;
}

void CheckDims(const std::vector<hsize_t> &declared, const DatasetShape &shape,
               const std::string &what)
{
  if (declared.empty())
  {
    return;
  }
  const bool ok = (declared.size() == 2 && declared[0] == shape.rows &&
                   declared[1] == shape.cols) ||
                  (declared.size() == 1 && declared[0] == shape.rows * shape.cols);
  Require(ok, "{} dimensions in the descriptor do not match the dataset ({} x {})", what,
          shape.rows, shape.cols);
}

}  // namespace

MeshFormat FormatFromPath(const std::string &path)
{
  return IsDescriptor(path) || IsHeavy(path) ? MeshFormat::hdf5 : MeshFormat::text;
}

std::string HeavyDataPath(const std::string &path)
{
  if (IsDescriptor(path))
  {
    return fs::path(path).replace_extension(".h5").string();
  }
  return IsHeavy(path) ? path : path + ".h5";
}

std::string DescriptorPath(const std::string &path)
{
  if (IsDescriptor(path))
  {
    return path;
  }
  return IsHeavy(path) ? fs::path(path).replace_extension(".xdmf").string() : path + ".xdmf";
}

RawMesh ReadXdmf(const std::string &path, Communicator &comm, const IoOptions &options)
{
  SilenceErrors();
  const auto source = ResolveSource(path, options);
  const int rank = comm.Rank();
  RawMesh raw;
  std::lock_guard lock(Hdf5Mutex());
  Require(fs::exists(source.file), "mesh file {} does not exist", source.file);
  Handle file(H5Fopen(source.file.c_str(), H5F_ACC_RDONLY, H5P_DEFAULT), H5Fclose,
              fmt::format("cannot open {}", source.file));
  const auto topo = QueryShape(file, source.topology);
  const auto geom = QueryShape(file, source.geometry);
  CheckDims(source.topology_dims, topo, "topology");
  CheckDims(source.geometry_dims, geom, "geometry");

  raw.dim = static_cast<int>(geom.cols);
  Require(raw.dim >= 1 && raw.dim <= 3, "geometry has {} coordinates per vertex", raw.dim);
  {
    Handle dset(H5Dopen2(file, source.topology.c_str(), H5P_DEFAULT), H5Dclose,
                "cannot open topology");
    if (auto name = ReadStringAttribute(dset, "cell_type"))
    {
      raw.cell_type = PolytopeFromString(*name).value_or(PolytopeType::unknown);
    }
  }
  if (raw.cell_type == PolytopeType::unknown && source.type)
  {
    raw.cell_type = *source.type;
  }
  if (raw.cell_type == PolytopeType::unknown)
  {
    raw.cell_type = CellTypeFromVertexCount(static_cast<int>(topo.cols), raw.dim)
                        .value_or(PolytopeType::unknown);
  }
  Require(raw.cell_type != PolytopeType::unknown,
          "cannot infer the cell type of {} vertices in {}D", topo.cols, raw.dim);
  Require(static_cast<hsize_t>(raw.VerticesPerCell()) == topo.cols,
          "topology has {} columns but a {} has {} vertices", topo.cols,
          ToString(raw.cell_type), raw.VerticesPerCell());

  raw.cell_layout = LayoutChunks(static_cast<GlobalIndex>(topo.rows), comm.Size());
  raw.vertex_layout = LayoutChunks(static_cast<GlobalIndex>(geom.rows), comm.Size());
  raw.topology = ReadRows<GlobalIndex>(file, source.topology, H5T_NATIVE_INT64,
                                       raw.cell_layout.Start(rank),
                                       raw.cell_layout.LocalSize(rank), topo.cols);
  raw.geometry = ReadRows<double>(file, source.geometry, H5T_NATIVE_DOUBLE,
                                  raw.vertex_layout.Start(rank),
                                  raw.vertex_layout.LocalSize(rank), geom.cols);
  return raw;
}

void WriteXdmf(const RawMesh &raw, const std::string &path, Communicator &comm,
               const IoOptions &options)
{
  SilenceErrors();
  const auto h5 = HeavyDataPath(path);
  const auto xdmf = DescriptorPath(path);
  const int rank = comm.Rank();
  const auto num_cells = static_cast<hsize_t>(raw.cell_layout.GlobalSize());
  const auto num_vertices = static_cast<hsize_t>(raw.vertex_layout.GlobalSize());
  const auto nv = static_cast<hsize_t>(raw.VerticesPerCell());
  const auto dim = static_cast<hsize_t>(raw.dim);

  if (rank == 0)
  {
    std::lock_guard lock(Hdf5Mutex());
    Handle file(H5Fcreate(h5.c_str(), H5F_ACC_TRUNC, H5P_DEFAULT, H5P_DEFAULT), H5Fclose,
                fmt::format("cannot create {}", h5));
    CreateDataset(file, options.topology_path, H5T_STD_I64LE, num_cells, nv);
    CreateDataset(file, options.geometry_path, H5T_IEEE_F64LE, num_vertices, dim);
    Handle dset(H5Dopen2(file, options.topology_path.c_str(), H5P_DEFAULT), H5Dclose,
                "cannot open topology");
    WriteStringAttribute(dset, "cell_type", std::string(ToString(raw.cell_type)));
  }
  comm.Barrier();
  {
    std::lock_guard lock(Hdf5Mutex());
    Handle file(H5Fopen(h5.c_str(), H5F_ACC_RDWR, H5P_DEFAULT), H5Fclose,
                fmt::format("cannot open {}", h5));
    WriteRows(file, options.topology_path, H5T_NATIVE_INT64, raw.cell_layout.Start(rank),
              raw.cell_layout.LocalSize(rank), nv, raw.topology);
    WriteRows(file, options.geometry_path, H5T_NATIVE_DOUBLE, raw.vertex_layout.Start(rank),
              raw.vertex_layout.LocalSize(rank), dim, raw.geometry);
  }
  comm.Barrier();
  if (rank != 0)
  {
    return;
  }
  const auto heavy_name = fs::path(h5).filename().string();
  pt::ptree tree;
  auto &root = tree.add("Xdmf", "");
  root.put("<xmlattr>.Version", "3.0");
  auto &grid = root.add("Domain.Grid", "");
  grid.put("<xmlattr>.Name", "mesh");
  grid.put("<xmlattr>.GridType", "Uniform");
  auto &topology = grid.add("Topology", "");
  topology.put("<xmlattr>.TopologyType", XdmfTopologyName(raw.cell_type));
  topology.put("<xmlattr>.NumberOfElements", num_cells);
  auto &topo_item = topology.add("DataItem", heavy_name + ":" + options.topology_path);
  topo_item.put("<xmlattr>.Dimensions", fmt::format("{} {}", num_cells, nv));
  topo_item.put("<xmlattr>.NumberType", "Int");
  topo_item.put("<xmlattr>.Precision", 8);
  topo_item.put("<xmlattr>.Format", "HDF");
  auto &geometry = grid.add("Geometry", "");
  geometry.put("<xmlattr>.GeometryType", raw.dim == 3 ? "XYZ" : raw.dim == 2 ? "XY" : "X");
  auto &geom_item = geometry.add("DataItem", heavy_name + ":" + options.geometry_path);
  geom_item.put("<xmlattr>.Dimensions", fmt::format("{} {}", num_vertices, dim));
  geom_item.put("<xmlattr>.NumberType", "Float");
  geom_item.put("<xmlattr>.Precision", 8);
  geom_item.put("<xmlattr>.Format", "HDF");
  pt::write_xml(xdmf, tree, std::locale(), pt::xml_writer_make_settings<std::string>(' ', 2));
}

RawMesh ReadMesh(const std::string &path, Communicator &comm, MeshFormat format,
                 const IoOptions &options)
{
  return format == MeshFormat::hdf5 ? ReadXdmf(path, comm, options) : ReadText(path, comm);
}

void WriteMesh(const RawMesh &raw, const std::string &path, Communicator &comm,
               MeshFormat format, const IoOptions &options)
{
  if (format == MeshFormat::hdf5)
  {
    WriteXdmf(raw, path, comm, options);
  }
  else
  {
    WriteText(raw, path, comm);
  }
}

void WritePlexDatasets(const std::string &h5_path, const Plex &plex)
{
  SilenceErrors();
  std::vector<int32_t> cone_sizes;
  std::vector<int32_t> cones;
  std::vector<int32_t> orientations;
  std::vector<int32_t> types;
  for (Point p = 0; p < plex.NumPoints(); ++p)
  {
    cone_sizes.push_back(plex.ConeSize(p));
    const auto cone = plex.Cone(p);
    const auto orients = plex.ConeOrientations(p);
    cones.insert(cones.end(), cone.begin(), cone.end());
    orientations.insert(orientations.end(), orients.begin(), orients.end());
    types.push_back(static_cast<int32_t>(plex.Type(p)));
  }
  std::lock_guard lock(Hdf5Mutex());
  Handle file(H5Fopen(h5_path.c_str(), H5F_ACC_RDWR, H5P_DEFAULT), H5Fclose,
              fmt::format("cannot open {}", h5_path));
  if (H5Lexists(file, "/plex", H5P_DEFAULT) > 0)
  {
    H5Ldelete(file, "/plex", H5P_DEFAULT);
  }
  WriteVector(file, "/plex/cone_sizes", H5T_STD_I32LE, H5T_NATIVE_INT32, cone_sizes);
  WriteVector(file, "/plex/cones", H5T_STD_I32LE, H5T_NATIVE_INT32, cones);
  WriteVector(file, "/plex/orientations", H5T_STD_I32LE, H5T_NATIVE_INT32, orientations);
  WriteVector(file, "/plex/types", H5T_STD_I32LE, H5T_NATIVE_INT32, types);
}

std::optional<Plex> ReadPlexDatasets(const std::string &h5_path)
{
  SilenceErrors();
  std::vector<int32_t> cone_sizes;
  std::vector<int32_t> cones;
  std::vector<int32_t> orientations;
  std::vector<int32_t> raw_types;
  {
    std::lock_guard lock(Hdf5Mutex());
    Handle file(H5Fopen(h5_path.c_str(), H5F_ACC_RDONLY, H5P_DEFAULT), H5Fclose,
                fmt::format("cannot open {}", h5_path));
    if (H5Lexists(file, "/plex", H5P_DEFAULT) <= 0)
    {
      return std::nullopt;
    }
    cone_sizes = ReadAll<int32_t>(file, "/plex/cone_sizes", H5T_NATIVE_INT32);
    cones = ReadAll<int32_t>(file, "/plex/cones", H5T_NATIVE_INT32);
    orientations = ReadAll<int32_t>(file, "/plex/orientations", H5T_NATIVE_INT32);
    raw_types = ReadAll<int32_t>(file, "/plex/types", H5T_NATIVE_INT32);
  }
  Require(raw_types.size() == cone_sizes.size() && cones.size() == orientations.size(),
          "{}: inconsistent /plex datasets", h5_path);
  std::vector<PolytopeType> types;
  for (auto t : raw_types)
  {
    Require(t >= 0 && t <= static_cast<int>(PolytopeType::unknown),
            "{}: invalid polytope type {}", h5_path, t);
    types.push_back(static_cast<PolytopeType>(t));
  }
  return Stratify(BuildFromCones(static_cast<Point>(cone_sizes.size()), cone_sizes, cones,
                                 orientations, types));
}

}  // namespace plexus
