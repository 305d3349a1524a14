#include "ccm/library.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "ccm/rng.hpp"

namespace ccm {

GroupedLibrary GroupedLibrary::build(int m, int kappa, double delta, int64_t f_units,
                                     std::vector<double> q) {
    if (m < 1) throw std::invalid_argument("library: m must be >= 1");
    if (kappa < 1) throw std::invalid_argument("library: kappa must be >= 1");
    if (m % kappa != 0)
        throw std::invalid_argument("library: kappa must divide m");
    if (f_units < 1) throw std::invalid_argument("library: file_units must be >= 1");

    GroupedLibrary lib;
    lib.m_ = m;
    lib.kappa_ = kappa;
    lib.f_units_ = f_units;

    if (kappa == 1) {
        // Independent files: no shared segment, delta is irrelevant.
        lib.delta_ = 1.0;
        lib.shared_units_ = 0;
    } else {
        if (!(delta > 0.0 && delta <= 1.0))
            throw std::invalid_argument("library: delta must be in (0, 1]");
        const double du = delta * static_cast<double>(f_units);
        const int64_t delta_units = static_cast<int64_t>(std::llround(du));
        if (std::abs(du - static_cast<double>(delta_units)) > 1e-9)
            throw std::invalid_argument("library: delta * file_units must be an integer");
        if (delta_units < 1)
            throw std::invalid_argument("library: delta * file_units must be >= 1");
        lib.delta_ = delta;
        lib.shared_units_ = f_units - delta_units;
    }

    if (q.empty()) {
        q.assign(m, 1.0 / m);
    } else {
        if (static_cast<int>(q.size()) != m)
            throw std::invalid_argument("library: q must have m entries");
        double s = 0.0;
        for (double v : q) {
            if (v < 0.0) throw std::invalid_argument("library: q entries must be >= 0");
            s += v;
        }
        if (std::abs(s - 1.0) > 1e-12)
            throw std::invalid_argument("library: q must sum to 1");
    }
    lib.q_ = std::move(q);
    return lib;
}

int64_t GroupedLibrary::joint_entropy(const std::vector<FileId>& subset) const {
    if (subset.empty()) throw std::invalid_argument("joint_entropy: empty subset");
    std::unordered_map<int, int> per_group;
    for (FileId f : subset) {
        if (f < 1 || f > m_) throw std::invalid_argument("joint_entropy: file id out of range");
        per_group[group_of(f)]++;
    }
    int64_t total = 0;
    for (const auto& [g, count] : per_group)
        total += shared_units_ + static_cast<int64_t>(count) * private_units();
    return total;
}

bool GroupedLibrary::delta_correlated(FileId f, FileId f_prime, double delta_thresh) const {
    if (f == f_prime) throw std::invalid_argument("delta_correlated: f == f_prime");
    const int64_t joint = joint_entropy({f, f_prime});
    return static_cast<double>(joint) <=
           (1.0 + delta_thresh) * static_cast<double>(f_units_) + 1e-9;
}

std::vector<FileId> GroupedLibrary::delta_ensemble(FileId f, double delta_thresh,
                                                   const std::vector<FileId>& active_set) const {
    if (std::find(active_set.begin(), active_set.end(), f) == active_set.end())
        throw std::invalid_argument("delta_ensemble: f not in active set");
    std::vector<FileId> out;
    for (FileId g : active_set)
        if (g == f || delta_correlated(f, g, delta_thresh)) out.push_back(g);
    std::sort(out.begin(), out.end());
    return out;
}

int GroupedLibrary::kappa_at(double delta_thresh) const {
    const auto all = all_files();
    int best = std::numeric_limits<int>::max();
    for (FileId f : all) {
        const int sz = static_cast<int>(delta_ensemble(f, delta_thresh, all).size());
        best = std::min(best, sz);
    }
    return best;
}

int64_t GroupedLibrary::library_entropy() const {
    return static_cast<int64_t>(num_groups()) *
           (shared_units_ + static_cast<int64_t>(kappa_) * private_units());
}

std::vector<FileId> GroupedLibrary::all_files() const {
    std::vector<FileId> v(m_);
    for (int i = 0; i < m_; ++i) v[i] = i + 1;
    return v;
}

namespace {
std::vector<uint8_t> random_bits(int64_t count, uint64_t seed) {
    std::vector<uint8_t> bits(static_cast<size_t>(count));
    auto rng = make_rng(seed);
    uint64_t word = 0;
    int avail = 0;
    for (auto& b : bits) {
        if (avail == 0) {
            word = rng();
            avail = 64;
        }
        b = static_cast<uint8_t>(word & 1u);
        word >>= 1;
        --avail;
    }
    return bits;
}
}  // namespace

BitLibrary realize_bits(const GroupedLibrary& lib, uint64_t seed) {
    BitLibrary out;
    out.file_units = lib.file_units();
    out.shared.resize(lib.num_groups());
    out.private_.resize(lib.m());
    for (int g = 0; g < lib.num_groups(); ++g)
        out.shared[g] = random_bits(lib.shared_units(), derive_seed(seed, 1, g));
    for (int f = 1; f <= lib.m(); ++f)
        out.private_[f - 1] = random_bits(lib.private_units(), derive_seed(seed, 2, f));
    return out;
}

std::vector<uint8_t> BitLibrary::file_bits(FileId f, const GroupedLibrary& lib) const {
    std::vector<uint8_t> bits = shared[lib.group_of(f)];
    const auto& p = private_[f - 1];
    bits.insert(bits.end(), p.begin(), p.end());
    return bits;
}

}  // namespace ccm
