#pragma once

#include "bt/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bt {

/// mu = (1^d, 0^{n-d}).
struct HodgeDatum {
    int n = 0;
    int d = 0;

    HodgeDatum() = default;
    HodgeDatum(int n_, int d_);
    QVec mu() const;
};

struct Vertex {
    int x;
    Q y;
    bool operator==(const Vertex&) const = default;
};

/// Weakly decreasing slopes with integral breakpoints.
class NewtonPoint {
public:
    NewtonPoint() = default;
    explicit NewtonPoint(QVec slopes);
    // polygon through the given vertices, starting at (0,0)
    static NewtonPoint from_vertices(const std::vector<std::pair<int, int>>& vertices);

    const QVec& slopes() const { return slopes_; }
    int n() const { return static_cast<int>(slopes_.size()); }
    Q total() const { return sum(slopes_); }

    Q value_at(int x) const;  // partial sum of the first x slopes
    // all breakpoints including (0,0) and the endpoint
    std::vector<Vertex> vertices() const;
    // breakpoints strictly inside (0, n)
    std::vector<Vertex> turning_points() const;

    std::string str() const;
    std::vector<std::string> to_strings() const;

    bool operator==(const NewtonPoint& o) const { return slopes_ == o.slopes_; }
    bool operator<(const NewtonPoint& o) const { return slopes_ < o.slopes_; }

private:
    QVec slopes_;
};

struct LeviDatum {
    std::vector<int> composition;
    std::vector<int> distribution;
    void validate() const;
    int n() const;
    int d() const;
};

NewtonPoint hodge_polygon(const HodgeDatum& h);
bool leq(const NewtonPoint& a, const NewtonPoint& b);
std::vector<NewtonPoint> enumerate_kottwitz(const HodgeDatum& h);
bool is_basic(const NewtonPoint& v);
bool is_hn_decomposable(const NewtonPoint& v, const HodgeDatum& h);
bool is_strongly_regular(const NewtonPoint& v, const HodgeDatum& h);
std::vector<NewtonPoint> enumerate_sr(const HodgeDatum& h);
NewtonPoint levi_pushforward(const LeviDatum& L);
long stratum_dim(const NewtonPoint& v, const HodgeDatum& h);
// covering relations (a, b) with S[a] < S[b], as indices into S
std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const std::vector<NewtonPoint>& S);

bool in_kottwitz_set(const NewtonPoint& v, const HodgeDatum& h);

}  // namespace bt
