#pragma once

#include <filesystem>
#include <string>

#include "sketchls/matrix.hpp"
#include "sketchls/probgen.hpp"
#include "sketchls/sketch.hpp"

namespace sketchls::io {

// Dense Matrix Market ("array real general"), column-major entries.
void write_matrix_market(const std::filesystem::path& path, const Matrix& a);
Matrix read_matrix_market(const std::filesystem::path& path);

// Directory holding A.mtx, b.mtx, xstar.mtx and meta.json.
void save_problem(const std::filesystem::path& dir, const LeastSquaresProblem& p);
LeastSquaresProblem load_problem(const std::filesystem::path& dir);

// {m, d, transform, seed}; signs and samples are regenerated on load.
std::string sketch_to_json(const SketchOperator& op);
SketchOperator sketch_from_json(const std::string& text);

}  // namespace sketchls::io
