#pragma once

// The bundled example fans. Cone order is always: zero cone, rays in ray
// order, then the higher cones; indices in serialized families follow it.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "tropvb/fan.hpp"
#include "tropvb/json_io.hpp"
#include "tropvb/picard.hpp"

namespace tropvb::corpus {

/// Face fan of the first quadrant (affine plane).
inline Fan a2() {
  return Fan(2, {{1, 0}, {0, 1}}, {{}, {0}, {1}, {0, 1}});
}

/// Complete fan on the line.
inline Fan p1() {
  return Fan(1, {{1}, {-1}}, {{}, {0}, {1}});
}

/// Complete fan with rays e1, e2, -e1-e2.
inline Fan p2() {
  return Fan(2, {{1, 0}, {0, 1}, {-1, -1}},
             {{}, {0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}});
}

/// Product of two complete line fans.
inline Fan p1xp1() {
  return Fan(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}},
             {{}, {0}, {1}, {2}, {3}, {0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

/// First Hirzebruch surface: rays e1, e2, -e1+e2, -e2.
inline Fan f1() {
  return Fan(2, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}},
             {{}, {0}, {1}, {2}, {3}, {0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

/// A single ray in the plane (affine line times torus); not part of the
/// gallery but used to exercise a nonzero character kernel.
inline Fan single_ray() {
  return Fan(2, {{1, 0}}, {{}, {0}});
}

struct GalleryEntry {
  std::string name;
  std::string file;
  Fan fan;
};

inline std::vector<GalleryEntry> gallery() {
  return {
      {"A2", "a2.json", a2()},
      {"P1", "p1.json", p1()},
      {"P2", "p2.json", p2()},
      {"P1xP1", "p1xp1.json", p1xp1()},
      {"F1", "f1.json", f1()},
  };
}

/// Write the gallery fans plus a manifest of their class group data.
/// Deterministic: re-running produces byte-identical files.
inline void write_gallery(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("IoError", "cannot create " + dir);
  io::Json manifest;
  io::Json fans = io::Json::array();
  for (const auto& entry : gallery()) {
    io::write_json_file(dir + "/" + entry.file, io::fan_to_json(entry.fan));
    PicardReport report = picard(entry.fan);
    io::Json j;
    j["name"] = entry.name;
    j["file"] = entry.file;
    j["pic"] = io::presentation_to_json(report.pic);
    j["pic_g"] = io::presentation_to_json(report.pic_g);
    j["kernel_rank"] = report.kernel.size();
    fans.push_back(j);
  }
  manifest["fans"] = fans;
  io::write_json_file(dir + "/manifest.json", manifest);
}

}  // namespace tropvb::corpus
