#pragma once

#include "bt/building.hpp"
#include "bt/grass.hpp"
#include "bt/kottwitz.hpp"
#include "bt/stability.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bt {

struct RetractionConfig {
    int frame_depth = 1;
    int max_iterations = 64;
    // fixed points are re-checked against candidate frames of this depth
    int verify_depth = 2;
    // residue field for elementary frame moves; the prime field of the point if null
    const FieldCtx* base = nullptr;

    void validate() const;
};

struct ApartmentCertificate {
    QVec u;      // the maximizer, sum-zero
    Q value;     // max over sum-zero u of min_I (tp(I) - sum_{i in I} u_i)
    ResidualSupport support;
    HullCertificate hull;
};

// exact LP; throws NotSemistableForTorus or NonUniqueMaximizer
ApartmentCertificate apartment_certificate(const TropPlueckerVector& tp);
QVec apartment_retract(const TropPlueckerVector& tp);
QVec apartment_retract(const TropPlueckerVector& tp, const HodgeDatum& h);

struct FrameCheck {
    Frame frame;
    ApartmentCertificate cert;
};

struct Retraction {
    BuildingPoint point;
    int iterations = 0;
    std::vector<BuildingPoint> trail;        // the visited z-sequence
    std::vector<FrameCheck> certificate;     // every frame checked at the fixed point
    // the reduction at the fixed point passed the exhaustive graded-subspace test
    bool residually_stable = false;
};

/// Exact fixed-point test at z. Reduces x f diag(t^-u) to the residue field and
/// runs over the subspaces V = sum_c V_c, with V_c defined over the base field
/// inside the coordinates whose u_j lie in the class c of Q/Z. If some V has
/// n rank(xbar|V) <= d dim V, returns a frame through z in which the apartment
/// retraction moves. `complete` is cleared when the search was too large.
std::optional<Frame> residual_destabilizing_frame(const GrassPoint& x, const BuildingPoint& z,
                                                  const FieldCtx* base = nullptr, bool* complete = nullptr);

/// Fixed-point iteration over candidate frames, starting from the standard
/// frame. Throws NotStable when some frame reports the point is not
/// torus-semistable, and MaxIterationsExceeded with the trail otherwise.
Retraction global_retract_full(const GrassPoint& x, const RetractionConfig& cfg = {});
BuildingPoint global_retract(const GrassPoint& x, const RetractionConfig& cfg = {});
BuildingPoint global_retract(const GrassPoint& x, const RetractionConfig& cfg, const HodgeDatum& h);

// val(sum a_i x_i) for a point of P^{n-1}
Val drinfeld_norm(const GrassPoint& x, const std::vector<PR>& a);

// deterministic covectors used by verify_drinfeld: e_i, e_i + e_j, e_i + t e_j
std::vector<std::vector<PR>> drinfeld_basis_sample(const FieldCtx* base, int n);
// random covectors over the base field with polynomial entries, shifted by small powers of t
std::vector<std::vector<PR>> random_covectors(const FieldCtx* base, int n, int count, std::uint64_t seed);

bool verify_drinfeld(const GrassPoint& x, int sample_size, std::uint64_t seed = 0, const RetractionConfig& cfg = {});

struct Degeneration {
    GrassPoint point;
    BuildingPoint retraction;
    NewtonPoint newton;
};

/// X_N = diag(blocks) + t^N Y, where Y is the off-diagonal part of a residually
/// generic constant matrix. As N grows the point approaches the block-diagonal
/// point, whose HN polygon is the returned Newton point, and its retraction
/// runs off linearly towards the corresponding boundary stratum.
Degeneration degenerate_family(const std::vector<GrassPoint>& blocks, int N, const HodgeDatum& h,
                               const RetractionConfig& cfg = {});

}  // namespace bt
