// CSV export. Floats are serialized with 17 significant digits so values
// round-trip exactly; files are written atomically (temp file + rename).
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dslit/errors.hpp"
#include "dslit/fields.hpp"
#include "dslit/trajectories.hpp"

namespace dslit {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& contents) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string());
}

/// Intensity grid rows as `t,x,value`.
inline std::string intensity_csv(const FieldGrid<double>& grid) {
  std::string out = "t,x,value\n";
  out.reserve(grid.values.size() * 40);
  for (int i = 0; i < grid.spec.nt; ++i) {
    const std::string t = format_double(grid.spec.t_at(i));
    for (int j = 0; j < grid.spec.nx; ++j) {
      out += t;
      out += ',';
      out += format_double(grid.spec.x_at(j));
      out += ',';
      out += format_double(grid.at(i, j));
      out += '\n';
    }
  }
  return out;
}

/// Trajectory samples as `seed_index,t,x,y` with y = forward_speed * t.
inline std::string trajectories_csv(const std::vector<Trajectory>& trajs,
                                    double forward_speed) {
  std::string out = "seed_index,t,x,y\n";
  for (std::size_t s = 0; s < trajs.size(); ++s) {
    const auto& tr = trajs[s];
    for (std::size_t k = 0; k < tr.size(); ++k) {
      out += std::to_string(s);
      out += ',';
      out += format_double(tr.times[k]);
      out += ',';
      out += format_double(tr.positions[k]);
      out += ',';
      out += format_double(forward_speed * tr.times[k]);
      out += '\n';
    }
  }
  return out;
}

}  // namespace dslit
