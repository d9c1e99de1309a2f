#pragma once

#include "bt/rational.hpp"

#include <vector>

namespace bt::lp {

enum class Sense { LE, GE, EQ };

struct Constraint {
    QVec a;
    Sense sense;
    Q b;
};

/// maximize objective . x subject to rows; variables are >= 0 unless marked free.
struct Problem {
    int nvars = 0;
    std::vector<bool> free;
    std::vector<Constraint> rows;
    QVec objective;

    explicit Problem(int n) : nvars(n), free(static_cast<std::size_t>(n), false), objective(static_cast<std::size_t>(n), Q(0)) {}
    void add(QVec a, Sense s, Q b) { rows.push_back({std::move(a), s, std::move(b)}); }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    QVec x;
    Q value;
};

/// Two-phase tableau simplex over the rationals with Bland's rule.
Result solve(const Problem& prob);

int rank(std::vector<QVec> rows);

}  // namespace bt::lp
