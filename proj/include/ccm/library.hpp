#pragma once

#include <cstdint>
#include <vector>

namespace ccm {

// File identifiers are dense, 1-based: f in {1, ..., m}.
using FileId = int;

/// Statistical model of a library of m correlated files. Files are split
/// into disjoint groups of size kappa; files in a group share a common
/// segment of (1 - delta) * F units, plus a private segment of delta * F
/// units each, so H(W_f) = F and H(W_f | W_f') = delta * F within a group.
/// Entropies are tracked in integer bit-units so packetization is exact.
class GroupedLibrary {
public:
    /// Builds the grouped model. Groups are consecutive index blocks
    /// {1..kappa}, {kappa+1..2kappa}, ...  For kappa == 1, delta is ignored
    /// and every file is independent. q defaults to uniform.
    /// Throws std::invalid_argument when kappa does not divide m, when
    /// delta * f_units is not an integer, or when q is malformed.
    static GroupedLibrary build(int m, int kappa, double delta, int64_t f_units,
                                std::vector<double> q = {});

    int m() const { return m_; }
    int group_size() const { return kappa_; }
    int num_groups() const { return m_ / kappa_; }
    int64_t file_units() const { return f_units_; }
    int64_t shared_units() const { return shared_units_; }
    int64_t private_units() const { return f_units_ - shared_units_; }
    double delta() const { return delta_; }
    const std::vector<double>& demand_q() const { return q_; }

    // 0-based group index of a file.
    int group_of(FileId f) const { return (f - 1) / kappa_; }

    /// Joint entropy of a nonempty subset of files, in bit-units.
    int64_t joint_entropy(const std::vector<FileId>& subset) const;

    /// Definition: f and f_prime are delta_thresh-correlated when
    /// H(W_f, W_f') <= (1 + delta_thresh) * F. Requires f != f_prime.
    bool delta_correlated(FileId f, FileId f_prime, double delta_thresh) const;

    /// The file together with all files delta_thresh-correlated with it,
    /// restricted to active_set (which must contain f). Sorted ascending.
    std::vector<FileId> delta_ensemble(FileId f, double delta_thresh,
                                       const std::vector<FileId>& active_set) const;

    /// Minimum delta-ensemble size over all files (the file itself counts).
    int kappa_at(double delta_thresh) const;

    /// Entropy of the entire library: (m/kappa) * F * (1 + (kappa-1)*delta).
    int64_t library_entropy() const;

    std::vector<FileId> all_files() const;

private:
    int m_ = 0;
    int kappa_ = 1;
    double delta_ = 1.0;
    int64_t f_units_ = 0;
    int64_t shared_units_ = 0;  // 0 when kappa == 1
    std::vector<double> q_;
};

/// A concrete bit realization of a GroupedLibrary: one shared segment per
/// group, one private segment per file, file f = shared(group(f)) ++
/// private(f). One byte per bit-unit, values in {0,1}. Fully determined by
/// (library, seed).
struct BitLibrary {
    std::vector<std::vector<uint8_t>> shared;   // per group
    std::vector<std::vector<uint8_t>> private_; // per file, 0-based
    int64_t file_units = 0;

    std::vector<uint8_t> file_bits(FileId f, const GroupedLibrary& lib) const;
};

BitLibrary realize_bits(const GroupedLibrary& lib, uint64_t seed);

}  // namespace ccm
