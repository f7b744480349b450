// Copyright 2026 The BSQN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace bsqn::stats {

struct ChiSquareResult {
    double statistic = 0;
    size_t dof = 0;
    double p_value = 1;
};

inline double chi_square_sf(double statistic, size_t dof) {
    if (dof == 0) {
        return 1.0;
    }
    boost::math::chi_squared dist(static_cast<double>(dof));
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

/// Pearson goodness-of-fit of observed counts against probabilities.
///
/// Bins with expected count below `min_expected` are pooled into one bin. A
/// count landing where the model puts zero mass gives p = 0.
inline ChiSquareResult chi_square_gof(const std::vector<double> &observed, const std::vector<double> &probabilities,
                                      double min_expected = 5.0) {
    if (observed.size() != probabilities.size()) {
        throw std::invalid_argument("chi_square_gof: length mismatch");
    }
    double total = 0;
    for (double o : observed) {
        total += o;
    }
    if (total <= 0) {
        throw std::invalid_argument("chi_square_gof: no observations");
    }
    ChiSquareResult out;
    double pooled_obs = 0, pooled_exp = 0;
    size_t bins = 0;
    for (size_t k = 0; k < observed.size(); k++) {
        double expected = probabilities[k] * total;
        if (expected <= 0) {
            if (observed[k] > 0) {
                out.statistic = std::numeric_limits<double>::infinity();
                out.p_value = 0;
                return out;
            }
            continue;
        }
        if (expected < min_expected) {
            pooled_obs += observed[k];
            pooled_exp += expected;
            continue;
        }
        double d = observed[k] - expected;
        out.statistic += d * d / expected;
        bins++;
    }
    if (pooled_exp > 0) {
        double d = pooled_obs - pooled_exp;
        out.statistic += d * d / pooled_exp;
        bins++;
    }
    out.dof = bins > 0 ? bins - 1 : 0;
    out.p_value = chi_square_sf(out.statistic, out.dof);
    return out;
}

/// Pearson test that two count vectors come from the same distribution.
/// Bins whose pooled count is below `min_count` are merged into one bin.
inline ChiSquareResult chi_square_two_sample(const std::vector<double> &first, const std::vector<double> &second,
                                             double min_count = 10.0) {
    if (first.size() != second.size()) {
        throw std::invalid_argument("chi_square_two_sample: length mismatch");
    }
    double n1 = 0, n2 = 0;
    for (size_t k = 0; k < first.size(); k++) {
        n1 += first[k];
        n2 += second[k];
    }
    if (n1 <= 0 || n2 <= 0) {
        throw std::invalid_argument("chi_square_two_sample: empty sample");
    }
    std::vector<std::pair<double, double>> bins;
    double small1 = 0, small2 = 0;
    for (size_t k = 0; k < first.size(); k++) {
        double both = first[k] + second[k];
        if (both == 0) {
            continue;
        }
        if (both < min_count) {
            small1 += first[k];
            small2 += second[k];
        } else {
            bins.emplace_back(first[k], second[k]);
        }
    }
    if (small1 + small2 > 0) {
        bins.emplace_back(small1, small2);
    }
    ChiSquareResult out;
    const double total = n1 + n2;
    for (auto [o1, o2] : bins) {
        double col = o1 + o2;
        double e1 = n1 * col / total;
        double e2 = n2 * col / total;
        out.statistic += (o1 - e1) * (o1 - e1) / e1 + (o2 - e2) * (o2 - e2) / e2;
    }
    out.dof = bins.empty() ? 0 : bins.size() - 1;
    out.p_value = chi_square_sf(out.statistic, out.dof);
    return out;
}

struct Summary {
    size_t count = 0;
    double mean = 0;
    double stddev = 0;
    double median = 0;
};

/// Mean, sample standard deviation (n - 1 denominator) and median; NaN
/// entries are skipped.
inline Summary summarize(std::vector<double> values) {
    values.erase(std::remove_if(values.begin(), values.end(), [](double v) { return std::isnan(v); }),
                 values.end());
    Summary s;
    s.count = values.size();
    if (values.empty()) {
        s.mean = s.stddev = s.median = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    double total = 0;
    for (double v : values) {
        total += v;
    }
    s.mean = total / static_cast<double>(values.size());
    double sq = 0;
    for (double v : values) {
        sq += (v - s.mean) * (v - s.mean);
    }
    s.stddev = values.size() > 1 ? std::sqrt(sq / static_cast<double>(values.size() - 1)) : 0.0;
    std::sort(values.begin(), values.end());
    size_t mid = values.size() / 2;
    s.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
    return s;
}

}  // namespace bsqn::stats
