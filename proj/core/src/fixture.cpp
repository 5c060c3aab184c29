#include "gradetree/fixture.hpp"

#include <cstdlib>

#ifndef GRADETREE_DEFAULT_DATA_DIR
#define GRADETREE_DEFAULT_DATA_DIR "data"
#endif

namespace gradetree {

std::filesystem::path fixture_dir() {
  if (const char* dir = std::getenv("GRADETREE_DATA_DIR"); dir && *dir) return dir;
  return GRADETREE_DEFAULT_DATA_DIR;
}

std::filesystem::path fixture_csv_path() { return fixture_dir() / "students.csv"; }
std::filesystem::path fixture_schema_path() { return fixture_dir() / "students.schema.json"; }

AttributeSchema load_fixture_schema() { return load_schema(fixture_schema_path()); }

Dataset load_fixture() { return load_csv(fixture_csv_path(), load_fixture_schema()); }

}  // namespace gradetree
