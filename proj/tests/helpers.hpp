#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "conduche/dsl.hpp"
#include "conduche/fincat.hpp"

#ifndef CONDUCHE_SOURCE_DIR
#define CONDUCHE_SOURCE_DIR "."
#endif

namespace testing {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string source_path(const std::string& relative) { return std::string(CONDUCHE_SOURCE_DIR) + "/" + relative; }

inline conduche::Workspace load_fixture(const std::string& name) {
  return conduche::parse_workspace(read_text(source_path("fixtures/" + name)));
}

inline conduche::Workspace parse(const std::string& text) { return conduche::parse_workspace(text); }

inline conduche::Mor mor(const conduche::FinCat& c, const std::string& name) { return c.find_morphism(name).value(); }
inline conduche::Obj obj(const conduche::FinCat& c, const std::string& name) { return c.find_object(name).value(); }

// [2] with the usual arrow names.
inline const char* kSimplex =
    "category B { objects: 0, 1, 2; arrows: u: 0 -> 1, v: 1 -> 2, w: 0 -> 2; compose: v . u = w }\n";

}  // namespace testing
