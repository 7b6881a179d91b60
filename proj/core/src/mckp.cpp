#include <algorithm>

#include "temporeach/errors.hpp"
#include "temporeach/treedp.hpp"

namespace temporeach {

MckpSolution mckp_solve(const MckpInstance& inst) {
    if (inst.capacity < 0) throw InvalidInput("negative knapsack capacity");
    const int c = inst.capacity;
    MckpSolution sol;
    std::vector<std::optional<int>> cur(c + 1, 0);
    sol.choice.reserve(inst.classes.size());
    for (const auto& cls : inst.classes) {
        if (cls.empty()) throw InvalidInput("empty knapsack class");
        std::vector<std::optional<int>> next(c + 1);
        std::vector<int> pick(c + 1, -1);
        for (int w = 0; w <= c; ++w) {
            for (std::size_t j = 0; j < cls.size(); ++j) {
                const auto& it = cls[j];
                if (it.weight < 0 || it.weight > w || !cur[w - it.weight]) continue;
                int val = *cur[w - it.weight] + it.profit;
                if (!next[w] || val > *next[w]) {
                    next[w] = val;
                    pick[w] = static_cast<int>(j);
                }
            }
        }
        cur = std::move(next);
        sol.choice.push_back(std::move(pick));
    }
    sol.best = std::move(cur);
    return sol;
}

std::vector<int> MckpSolution::pick(int w, const MckpInstance& inst) const {
    std::vector<int> out(inst.classes.size(), -1);
    if (w < 0 || w >= static_cast<int>(best.size()) || !best[w]) return out;
    for (int i = static_cast<int>(inst.classes.size()) - 1; i >= 0; --i) {
        int j = choice[i][w];
        out[i] = j;
        w -= inst.classes[i][j].weight;
    }
    return out;
}

}  // namespace temporeach
