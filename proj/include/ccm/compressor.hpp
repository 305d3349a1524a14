#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ccm/library.hpp"

namespace ccm {

/// Result of the correlation-aware library partition: every file is either
/// an I-file (kept at full entropy F) or a P-file inter-compressed against
/// a single I-file reference it is delta-correlated with.
struct CompressedLibrary {
    std::vector<bool> is_ifile;       // index f-1
    std::vector<FileId> reference;    // index f-1; 0 for I-files
    std::vector<int64_t> comp_units;  // compressed entropy per file, index f-1
    double delta_used = 1.0;

    int m() const { return static_cast<int>(is_ifile.size()); }
    bool is_i(FileId f) const { return is_ifile[f - 1]; }
    FileId ref(FileId f) const { return reference[f - 1]; }
    int64_t units(FileId f) const { return comp_units[f - 1]; }
    int64_t total_units() const;

    std::vector<FileId> i_files() const;
    std::vector<FileId> p_files() const;

    /// Trivial partition that treats every file as an I-file at entropy F
    /// (the correlation-unaware view used by the baseline schemes).
    static CompressedLibrary identity(const GroupedLibrary& lib);

    // One line per file: "<id> <I|P> <ref> <units>" (ref 0 for I-files).
    void write_manifest(std::ostream& os) const;
};

/// Probability that at least one of n receivers requests at least one file
/// from f's delta-ensemble within active_set:
///   1 - (1 - sum_{f' in ensemble} q_{f'})^n
double aggregate_popularity(const GroupedLibrary& lib, int n, double delta_thresh,
                            const std::vector<FileId>& active_set, FileId f);

/// Greedy partition into I-files and P-files: repeatedly pick the file with
/// the highest aggregate popularity (ties broken toward the lowest index),
/// make it an I-file, assign the rest of its ensemble as P-files referencing
/// it, and drop the ensemble from the active set.
CompressedLibrary partition_library(const GroupedLibrary& lib, int n, double delta_thresh);

/// Compressed form of file f: the full bits for an I-file, the private
/// segment only for a P-file (decodable given the reference I-file).
std::vector<uint8_t> compressed_bits(const CompressedLibrary& clib, const BitLibrary& bits,
                                     const GroupedLibrary& lib, FileId f);

}  // namespace ccm
