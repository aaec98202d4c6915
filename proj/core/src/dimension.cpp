#include "weylscope/dimension.hpp"

#include <algorithm>
#include <cmath>

#include "weylscope/errors.hpp"

namespace weylscope {

DimensionEstimate estimate_dimension(const std::vector<CoverReport>& reports,
                                     std::optional<double> theoretical) {
    std::vector<std::pair<double, double>> pts; // (log 1/zeta, log hits)
    for (const auto& r : reports)
        if (r.hit_count > 0 && r.zeta > 0 && r.zeta <= 1)
            pts.emplace_back(std::log(1.0 / r.zeta), std::log(static_cast<double>(r.hit_count)));
    if (pts.size() < 3) throw insufficient_data("fewer than 3 usable scales");
    std::sort(pts.begin(), pts.end()); // coarsest (smallest log 1/zeta) first
    if (pts.size() >= 5) pts.erase(pts.begin(), pts.begin() + 2);

    double n = static_cast<double>(pts.size());
    double sx = 0, sy = 0;
    for (auto [x, y] : pts) { sx += x; sy += y; }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) throw insufficient_data("all scales coincide");

    DimensionEstimate est;
    est.slope = sxy / sxx;
    double ss_res = 0;
    for (auto [x, y] : pts) {
        double r = y - (my + est.slope * (x - mx));
        ss_res += r * r;
    }
    est.stderr_ = pts.size() > 2 ? std::sqrt(ss_res / (n - 2.0) / sxx) : 0.0;
    for (auto [x, y] : pts) est.scales_used.push_back(x / std::log(2.0));
    est.theoretical = theoretical;
    return est;
}

} // namespace weylscope
