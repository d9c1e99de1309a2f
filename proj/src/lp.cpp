#include "bt/lp.hpp"

#include "bt/errors.hpp"

namespace bt::lp {

namespace {

struct Tableau {
    std::vector<QVec> T;  // rows x (cols + 1), last column is the right-hand side
    std::vector<int> basis;
    int cols = 0;

    void pivot(std::size_t r, int c)
    {
        Q inv = 1 / T[r][c];
        for (auto& x : T[r]) x *= inv;
        for (std::size_t i = 0; i < T.size(); ++i) {
            if (i == r || T[i][c] == 0) continue;
            Q f = T[i][c];
            for (int j = 0; j <= cols; ++j)
                if (T[r][j] != 0) T[i][j] -= f * T[r][j];
        }
        basis[r] = c;
    }

    // maximize cost . x over columns with allowed[j]; Bland's rule throughout
    Status optimize(const QVec& cost, const std::vector<bool>& allowed)
    {
        while (true) {
            int enter = -1;
            for (int j = 0; j < cols && enter < 0; ++j) {
                if (!allowed[j]) continue;
                Q rc = cost[j];
                for (std::size_t i = 0; i < T.size(); ++i)
                    if (T[i][j] != 0) rc -= cost[basis[i]] * T[i][j];
                if (rc > 0) enter = j;
            }
            if (enter < 0) return Status::Optimal;
            std::size_t leave = T.size();
            Q best;
            for (std::size_t i = 0; i < T.size(); ++i) {
                if (T[i][enter] <= 0) continue;
                Q ratio = T[i][cols] / T[i][enter];
                if (leave == T.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == T.size()) return Status::Unbounded;
            pivot(leave, enter);
        }
    }
};

}  // namespace

Result solve(const Problem& prob)
{
    // column layout: structural columns (free variables split in two), then slacks, then artificials
    std::vector<int> pos_col(prob.nvars), neg_col(prob.nvars, -1);
    int cols = 0;
    for (int j = 0; j < prob.nvars; ++j) {
        pos_col[j] = cols++;
        if (prob.free[static_cast<std::size_t>(j)]) neg_col[j] = cols++;
    }
    int structural = cols;
    std::size_t m = prob.rows.size();

    std::vector<Sense> sense(m);
    std::vector<int> sign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        sense[i] = prob.rows[i].sense;
        if (prob.rows[i].b < 0) {
            sign[i] = -1;
            if (sense[i] == Sense::LE)
                sense[i] = Sense::GE;
            else if (sense[i] == Sense::GE)
                sense[i] = Sense::LE;
        }
    }
    std::vector<int> slack_col(m, -1), art_col(m, -1);
    for (std::size_t i = 0; i < m; ++i)
        if (sense[i] != Sense::EQ) slack_col[i] = cols++;
    int first_art = cols;
    for (std::size_t i = 0; i < m; ++i)
        if (sense[i] != Sense::LE) art_col[i] = cols++;

    Tableau tab;
    tab.cols = cols;
    tab.T.assign(m, QVec(static_cast<std::size_t>(cols + 1), Q(0)));
    tab.basis.assign(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = prob.rows[i];
        if (static_cast<int>(row.a.size()) != prob.nvars) throw InvalidArgument("LP row has wrong length");
        for (int j = 0; j < prob.nvars; ++j) {
            Q a = row.a[static_cast<std::size_t>(j)] * sign[i];
            tab.T[i][pos_col[j]] = a;
            if (neg_col[j] >= 0) tab.T[i][neg_col[j]] = -a;
        }
        tab.T[i][cols] = row.b * sign[i];
        if (sense[i] == Sense::LE) {
            tab.T[i][slack_col[i]] = 1;
            tab.basis[i] = slack_col[i];
        } else {
            if (sense[i] == Sense::GE) tab.T[i][slack_col[i]] = -1;
            tab.T[i][art_col[i]] = 1;
            tab.basis[i] = art_col[i];
        }
    }

    Result res;
    std::vector<bool> all(static_cast<std::size_t>(cols), true);
    if (first_art < cols) {
        QVec phase1(static_cast<std::size_t>(cols), Q(0));
        for (int j = first_art; j < cols; ++j) phase1[j] = -1;
        tab.optimize(phase1, all);
        Q infeas = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (tab.basis[i] >= first_art) infeas += tab.T[i][cols];
        if (infeas != 0) {
            res.status = Status::Infeasible;
            return res;
        }
        // drive remaining (zero-level) artificials out of the basis
        for (std::size_t i = 0; i < tab.T.size();) {
            if (tab.basis[i] < first_art) {
                ++i;
                continue;
            }
            int c = -1;
            for (int j = 0; j < first_art && c < 0; ++j)
                if (tab.T[i][j] != 0) c = j;
            if (c >= 0) {
                tab.pivot(i, c);
                ++i;
            } else {
                tab.T.erase(tab.T.begin() + static_cast<long>(i));
                tab.basis.erase(tab.basis.begin() + static_cast<long>(i));
            }
        }
        for (int j = first_art; j < cols; ++j) all[j] = false;
    }

    QVec cost(static_cast<std::size_t>(cols), Q(0));
    for (int j = 0; j < prob.nvars; ++j) {
        cost[pos_col[j]] = prob.objective[static_cast<std::size_t>(j)];
        if (neg_col[j] >= 0) cost[neg_col[j]] = -prob.objective[static_cast<std::size_t>(j)];
    }
    Status st = tab.optimize(cost, all);
    res.status = st;
    if (st != Status::Optimal) return res;

    QVec colval(static_cast<std::size_t>(structural), Q(0));
    for (std::size_t i = 0; i < tab.T.size(); ++i)
        if (tab.basis[i] < structural) colval[tab.basis[i]] = tab.T[i][cols];
    res.x.assign(static_cast<std::size_t>(prob.nvars), Q(0));
    res.value = 0;
    for (int j = 0; j < prob.nvars; ++j) {
        Q v = colval[pos_col[j]];
        if (neg_col[j] >= 0) v -= colval[neg_col[j]];
        res.x[j] = v;
        res.value += v * prob.objective[static_cast<std::size_t>(j)];
    }
    return res;
}

int rank(std::vector<QVec> rows)
{
    if (rows.empty()) return 0;
    std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (rows[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            Q f = rows[i][c] / rows[r][c];
            for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

}  // namespace bt::lp
