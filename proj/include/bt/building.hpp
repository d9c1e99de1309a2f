#pragma once

#include "bt/linalg.hpp"
#include "bt/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bt {

using Frame = Matrix;

/// Norm class N(v) = min_i (val c_i + u_i) where v = frame * c, taken modulo
/// additive constants. Columns of the frame form the adapted basis.
///
/// Equality is decided by mutual evaluation: if N1 takes the values u2_j + k on
/// the columns of frame 2 and N2 takes u1_i - k on the columns of frame 1, then
/// the ultrametric inequality in each adapted basis gives N1 >= N2 + k and
/// N2 >= N1 - k, so the classes coincide. The converse is immediate.
struct BuildingPoint {
    Frame frame;
    QVec coords;

    int n() const { return static_cast<int>(coords.size()); }
    std::string str() const;
};

// checks invertibility and sum-normalizes the coordinates
BuildingPoint make_point(Frame frame, QVec coords);
BuildingPoint standard_point(const FieldCtx* ctx, const QVec& coords);

Val norm_eval(const BuildingPoint& z, const std::vector<PR>& v);
bool points_equal(const BuildingPoint& a, const BuildingPoint& b);

// (g, z) -> (g * frame, coords); N_{g.z}(v) = N_z(g^{-1} v)
BuildingPoint act(const Matrix& g, const BuildingPoint& z);

// identity frame when the frame is monomial, always sum-zero coordinates
BuildingPoint normal_form(const BuildingPoint& z);

// coordinates of z in frame g if the norm of z is adapted to g's columns
std::optional<QVec> coords_in_frame(const BuildingPoint& z, const Frame& g);
bool apartment_contains(const Frame& g, const BuildingPoint& z);

/// Frames through z reached by words of length <= depth in the lifts of residue
/// generators at z: a transposition of columns i, j with u_i - u_j integral,
/// or adding c t^(u_j - u_i) times column i to column j for c in the base
/// residue field, again for integral differences. Breadth-first, deduplicated,
/// and filtered by apartment_contains. The first entry is z's own frame.
std::vector<Frame> candidate_frames(const BuildingPoint& z, int depth, const FieldCtx* base = nullptr);

}  // namespace bt
