#include "klrr/lincomb.hpp"

namespace klrr {

int sparse_rank(std::vector<std::map<std::string, Scalar>> rows, Field field) {
    int rank = 0;
    while (!rows.empty()) {
        // pick the row whose leading key is smallest
        size_t best = rows.size();
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].empty()) continue;
            if (best == rows.size() || rows[i].begin()->first < rows[best].begin()->first) best = i;
        }
        if (best == rows.size()) break;
        auto pivot = std::move(rows[best]);
        rows.erase(rows.begin() + best);
        ++rank;
        const std::string& pk = pivot.begin()->first;
        const Scalar pv = pivot.begin()->second;
        for (auto& row : rows) {
            auto it = row.find(pk);
            if (it == row.end()) continue;
            Scalar factor = it->second / pv;
            for (const auto& [k, c] : pivot) {
                Scalar delta = c * factor;
                auto jt = row.find(k);
                if (jt == row.end()) {
                    if (!delta.is_zero()) row.emplace(k, Scalar::zero(field) - delta);
                } else {
                    Scalar s = jt->second - delta;
                    if (s.is_zero())
                        row.erase(jt);
                    else
                        jt->second = s;
                }
            }
        }
    }
    return rank;
}

}  // namespace klrr
