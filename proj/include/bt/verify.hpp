#pragma once

#include "bt/io.hpp"
#include "bt/retract.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace bt {

// ---------------------------------------------------------------- samplers

using Rng = std::mt19937_64;

// uniform in [lo, hi] without implementation-defined distributions
long rand_range(Rng& rng, long lo, long hi);

std::vector<std::pair<int, int>> coprime_pairs(int max_n);  // (d, n), 0 < d < n

// sum-zero-free rational vector with denominators dividing m, entries in [-span, span]
QVec random_coords(Rng& rng, int n, int m, int span = 3);

// monomial (permutation, powers of t, constants) or dense invertible matrix over base
Matrix random_frame(Rng& rng, const FieldCtx* base, int n, bool dense);

// gauss_surrogate(u, g) plus higher-order terms that keep every Pluecker
// leading term, so the retraction is still (g, proj0(u))
GrassPoint perturbed_surrogate(Rng& rng, const QVec& u, const Matrix& g, const HodgeDatum& h);

// random d x n matrix with entries c t^k (k in [0, 3]) plus a random tail; may be degenerate
std::optional<GrassPoint> random_point(Rng& rng, const FieldCtx* ctx, int d, int n);

// ---------------------------------------------------------------- reports

struct CheckResult {
    std::string name;
    bool passed = false;
    json witness;  // null unless the check failed
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool passed() const;
    json to_json() const;
};

struct SuiteSizes {
    int section = 200;
    int drinfeld = 50;
    int drinfeld_covectors = 100;
    int equivariance = 50;
    int compat = 100;
    int hull_per_pair = 1000;
    int hull_max_n = 6;
};

const std::vector<std::string>& suite_names();  // without "all"

/// Runs one suite ("all" runs every suite into a single report). Sizes default
/// to the acceptance sizes.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, const SuiteSizes& sizes = {});

// individual suites; each appends to the report
void suite_counts(SuiteReport& r);
void suite_section(SuiteReport& r, const SuiteSizes& s);
void suite_drinfeld(SuiteReport& r, const SuiteSizes& s);
void suite_equivariance(SuiteReport& r, const SuiteSizes& s);
void suite_compat(SuiteReport& r, const SuiteSizes& s);
void suite_basechange(SuiteReport& r, const SuiteSizes& s);
void suite_hull(SuiteReport& r, const SuiteSizes& s);
// the exchange relations on every tropical vector produced while running fn
void suite_matroid(SuiteReport& r, const std::function<void()>& fn);

}  // namespace bt
