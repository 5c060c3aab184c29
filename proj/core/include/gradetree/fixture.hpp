#pragma once

#include <filesystem>

#include "gradetree/dataset.hpp"

namespace gradetree {

/// Directory holding students.csv and students.schema.json.
/// GRADETREE_DATA_DIR overrides the location compiled into the library.
std::filesystem::path fixture_dir();
std::filesystem::path fixture_csv_path();
std::filesystem::path fixture_schema_path();

AttributeSchema load_fixture_schema();
Dataset load_fixture();

}  // namespace gradetree
