#pragma once

#include "bt/grass.hpp"
#include "bt/kottwitz.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bt {

enum class HullPosition { Exterior, Boundary, Interior };
enum class TorusStability { Stable, StrictlySemistable, Unstable };

std::string to_string(HullPosition p);
std::string to_string(TorusStability s);

struct ResidualSupport {
    int d = 0, n = 0;
    std::vector<Subset> subsets;
    QVec u;
};

struct HullCertificate {
    HullPosition position = HullPosition::Exterior;
    // barycentric coefficients aligned with the support, empty when Exterior
    QVec coefficients;
    int span_rank = 0;
};

// chi_I - (d/n)(1,...,1)
QVec weight_vector(const Subset& I, int d, int n);

ResidualSupport residual_support(const TropPlueckerVector& tp, const QVec& u);
ResidualSupport residual_support(const TropPlueckerVector& tp, const QVec& u, const HodgeDatum& h);

HullCertificate hull_certificate(const std::vector<Subset>& S, int d, int n);
HullPosition hull_position(const ResidualSupport& S, const HodgeDatum& h);
HullPosition hull_position(const ResidualSupport& S);

TorusStability torus_stability(const GrassPoint& x, const Matrix& g, const QVec& u, const HodgeDatum& h);
// same test with (d, n) taken from x; used for Levi blocks where 0 < d < n may fail
TorusStability torus_stability(const GrassPoint& x, const Matrix& g, const QVec& u);

struct Destabilizer {
    Matrix basis;  // rows spanning W over the base field
    int dim = 0;
    int intersection = 0;  // dim of U intersect W_K
    Q slope;
};

/// Bounded search over F-rational subspaces W with polynomial echelon entries of
/// degree <= degree_bound. Subspaces contained in U are found exactly by linear
/// algebra over the residue field; partial intersections are enumerated up to
/// `budget` candidates. An empty result does not prove semistability.
std::optional<Destabilizer> find_destabilizer_bounded(const GrassPoint& x, int degree_bound,
                                                      const FieldCtx* base = nullptr, long budget = 20000);

struct BlockHN {
    NewtonPoint newton;
    GrassPoint assembled;
    LeviDatum levi;
};

BlockHN hn_of_block_point(const std::vector<GrassPoint>& blocks);

// block-diagonal assembly of the given points (no checks)
GrassPoint assemble_blocks(const std::vector<GrassPoint>& blocks);

}  // namespace bt
