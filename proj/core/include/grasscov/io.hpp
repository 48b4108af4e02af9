#pragma once

// Plain-text and JSON serialization for matrices and Grassmannian codes.
//
// Matrix text: a header line "q rows cols" followed by rows*cols entries in
// row-major order, whitespace separated. '#' starts a comment anywhere.
//
// Code text: a header line "grasscode q n k count" where count is the number
// of distinct words, then per word a "mult=M" marker and k basis rows of n
// entries. Words are written in canonical order; reading what was written
// reproduces the code exactly.
//
// JSON mirrors the same content as {"format":"grasscode", "q":..., "n":...,
// "k":..., "words":[{"mult":M, "rows":[[...]]}, ...]}.

#include <string>

#include "grasscov/codes.hpp"

namespace grasscov {

std::string matrix_to_text(const MatrixFq& m);
MatrixFq matrix_from_text(const std::string& text);
MatrixFq read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const MatrixFq& m);

std::string grasscode_to_text(const GrassCode& c);
GrassCode grasscode_from_text(const std::string& text);
GrassCode read_grasscode_file(const std::string& path);
void write_grasscode_file(const std::string& path, const GrassCode& c);

std::string grasscode_to_json_text(const GrassCode& c);
GrassCode grasscode_from_json_text(const std::string& text);

}  // namespace grasscov
