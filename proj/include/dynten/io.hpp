#pragma once

#include <string>
#include <vector>

#include "dynten/tensor.hpp"

namespace dynten {

/// TNS3 tensor file format.
///
/// Line 1: `TNS3 I J K`. Remaining lines: whitespace-separated decimal
/// floats in storage order (slice-major, row-major within slices).
/// Writers emit 17 significant digits; readers reject count mismatch and
/// non-finite values.
void write_tns3(const DenseTensor3& T, const std::string& path);
DenseTensor3 read_tns3(const std::string& path);

/// Factor matrix CSV: header `component_1,...,component_R`, one row per
/// mode index, 17 significant digits.
void write_factor_csv(const Matrix& M, const std::string& path);
Matrix read_factor_csv(const std::string& path);

/// Per-slice factor list stacked as a (K*J) x R CSV with a leading
/// k-index column: header `k,component_1,...,component_R`.
void write_stacked_csv(const std::vector<Matrix>& mats, const std::string& path);
std::vector<Matrix> read_stacked_csv(const std::string& path);

/// Cluster labels: header `label`, one integer per row.
void write_labels_csv(const std::vector<int>& labels, const std::string& path);
std::vector<int> read_labels_csv(const std::string& path);

}  // namespace dynten
