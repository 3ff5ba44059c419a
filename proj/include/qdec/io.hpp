#pragma once

#include <string>
#include <vector>

#include "qdec/bitmat.hpp"
#include "qdec/css.hpp"
#include "qdec/model.hpp"

namespace qdec::io {

/// Matrix text formats (see docs/formats.md): dense header "rows cols" with
/// '0'/'1' rows, or sparse header "rows cols sparse" with per-row column
/// index lists ('-' for an empty row). '#' starts a comment.
BitMatrix read_matrix(const std::string& path);
void write_matrix_dense(const BitMatrix& m, const std::string& path);
void write_matrix_sparse(const BitMatrix& m, const std::string& path);

BitMatrix parse_matrix(const std::string& text, const std::string& origin = "<string>");

/// Fault-list format: header "detectors=D observables=O", then one fault per
/// line "p=<float> d=<comma-separated indices> l=<comma-separated indices>".
std::vector<Fault> read_fault_list(const std::string& path);
std::vector<Fault> parse_fault_list(const std::string& text, const std::string& origin = "<string>");
DecodingModel load_fault_list(const std::string& path, MergePolicy policy = MergePolicy::Sum);
void write_fault_list(const std::vector<Fault>& faults, std::size_t detectors,
                      std::size_t observables, const std::string& path);

/// Model JSON: dims, sparse or dense matrix encodings, priors, labels.
std::string model_to_json(const DecodingModel& model, bool dense = false);
DecodingModel model_from_json(const std::string& json_text, const std::string& origin = "<string>");
void save_model(const DecodingModel& model, const std::string& path);
DecodingModel load_model(const std::string& path);

/// Code files: h_x / h_z in the matrix text format, plus a JSON sidecar with
/// the logicals and (n, k, d) metadata. `base` names the sidecar path minus
/// the .json suffix.
void save_code(const CSSCode& code, const std::string& base);
CSSCode load_code(const std::string& json_path);

/// Syndrome file: a '0'/'1' string, or "sparse" followed by fired detector
/// indices.
BitVector read_syndrome(const std::string& path, std::size_t detectors);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qdec::io
