#pragma once

#include "bt/kottwitz.hpp"
#include "bt/linalg.hpp"

#include <cstdint>
#include <vector>

namespace bt {

using Subset = std::vector<int>;  // sorted, 0-based

/// The d-subsets of {0..n-1} in lexicographic order, with a mask lookup.
struct SubsetTable {
    int n = 0, d = 0;
    std::vector<Subset> subsets;
    std::vector<std::uint32_t> masks;
    std::vector<int> index_of_mask;  // -1 where popcount != d

    int index(std::uint32_t mask) const { return index_of_mask[mask]; }
    int index(const Subset& s) const;
};

const SubsetTable& subset_table(int n, int d);
std::uint32_t subset_mask(const Subset& s);
std::string subset_str(const Subset& s);  // 1-based, e.g. "{1,3}"

/// Row span of a d x n matrix of full rank d. d = 0 is allowed (the point
/// of Gr(0,n)), which is needed for Levi blocks.
class GrassPoint {
public:
    GrassPoint() = default;
    GrassPoint(Matrix rows, int n, const FieldCtx* ctx = nullptr);

    int d() const { return d_; }
    int n() const { return n_; }
    const Matrix& matrix() const { return rows_; }
    const FieldCtx* field() const { return ctx_; }
    std::int64_t ramification() const;

    GrassPoint rescaled(std::int64_t m) const;
    std::string str() const { return matrix_str(rows_); }

private:
    int d_ = 0, n_ = 0;
    Matrix rows_;
    const FieldCtx* ctx_ = nullptr;
};

class TropPlueckerVector {
public:
    TropPlueckerVector() = default;
    // values aligned with subset_table(n, d).subsets; normalized to minimum 0
    TropPlueckerVector(int d, int n, std::vector<Val> values);

    int d() const { return d_; }
    int n() const { return n_; }
    std::int64_t ramification() const;
    const std::vector<Val>& values() const { return values_; }
    const Val& at(const Subset& s) const;
    const Val& at_mask(std::uint32_t mask) const;
    const SubsetTable& table() const { return subset_table(n_, d_); }

    bool operator==(const TropPlueckerVector& o) const = default;
    std::string str() const;

private:
    int d_ = 0, n_ = 0;
    std::vector<Val> values_;
};

std::vector<PR> pluecker(const GrassPoint& x);
TropPlueckerVector trop_pluecker(const GrassPoint& x);
GrassPoint frame_change(const GrassPoint& x, const Matrix& g);
bool check_trop_relations(const TropPlueckerVector& tp);

/// Residually generic point with tropical Pluecker vector I -> sum_{i in I} u_i
/// in the frame g, i.e. C diag(t^u) g^{-1} with a Cauchy matrix C over F_{p^R}.
/// The residue field is chosen large enough that the Pluecker coordinates of C
/// are linearly independent over F_p whenever binom(n,d) <= 12.
GrassPoint gauss_surrogate(const QVec& u, const Matrix& g, const HodgeDatum& h, std::uint32_t p = 2);
GrassPoint gauss_surrogate(const QVec& u, const HodgeDatum& h, std::uint32_t p = 2);
// field used by gauss_surrogate for (d, n, p)
const FieldCtx* surrogate_field(int d, int n, std::uint32_t p);

/// Counts tropical vectors produced by trop_pluecker on this thread while
/// alive, and checks each against the exchange relations.
class TropAudit {
public:
    TropAudit();
    ~TropAudit();
    TropAudit(const TropAudit&) = delete;
    TropAudit& operator=(const TropAudit&) = delete;

    std::size_t checked() const { return checked_; }
    std::size_t violations() const { return violations_; }
    void record(const TropPlueckerVector& tp);

private:
    TropAudit* prev_;
    std::size_t checked_ = 0, violations_ = 0;
};

}  // namespace bt
