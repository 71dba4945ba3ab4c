#pragma once

#include <string>
#include <vector>

#include "cfs/dataset.hpp"

namespace cfs {

/// A generated delimiter-separated file plus the options needed to load it.
/// Generation is fully deterministic: the same build always produces the
/// same bytes.
struct SyntheticFile {
    std::string name;
    std::string csv_text;
    LoadOptions load_options;
};

/// Deterministic stand-ins shaped like the four benchmark datasets. Row and
/// column counts, class balances, missing-value structure and header
/// conventions match the originals; the values are generated. Every numeric
/// value lies on a power-of-two grid, so affine maps with small integer
/// coefficients stay exactly representable.
///
/// Cervical-cancer risk factors: 858 rows, 35 feature columns of which 26
/// contain the '?' missing marker, binary Biopsy label with 18 positives.
SyntheticFile synthetic_ccrfds();

/// Breast-cancer clinic panel: 116 rows, 9 blood-work features, labels
/// "1" (52 controls) and "2" (64 patients).
SyntheticFile synthetic_bccds();

/// Breast-tissue impedance: 106 rows, 9 features, 6 tissue classes with
/// counts 21, 15, 18, 16, 14, 22.
SyntheticFile synthetic_btds();

/// Retinopathy screening: 1151 rows, 19 features, binary label 540/611,
/// no header row, several columns written in scientific notation.
SyntheticFile synthetic_drdds();

/// All four, in the order above.
std::vector<SyntheticFile> all_synthetic_datasets();

/// Parses and cleans a generated file in memory.
Dataset load_synthetic(const SyntheticFile& file);

} // namespace cfs
