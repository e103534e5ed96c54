#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <json.hpp>

#include "point_set.hpp"
#include "random.hpp"
#include "series.hpp"

namespace rankcp {

struct GaussianRegime {
    std::vector<double> mean;
    std::vector<double> scale;
};

struct StudentTRegime {
    double dof = 1.0;
    std::vector<double> mean;
    std::vector<double> scale;
};

// Independent uniform coordinates on [lo, hi).
struct UniformRegime {
    double lo = 0.0;
    double hi = 1.0;
};

using Regime = std::variant<GaussianRegime, StudentTRegime, UniformRegime>;

struct RegimeSegment {
    std::size_t length = 0;
    Regime regime;
};

struct RegimeSpec {
    std::size_t dim = 1;
    std::uint64_t seed = 0;
    std::vector<RegimeSegment> segments;

    std::size_t total_length() const {
        std::size_t n = 0;
        for (const auto& s : segments) n += s.length;
        return n;
    }

    void validate() const {
        if (dim == 0) throw std::invalid_argument("RegimeSpec: dim must be >= 1");
        if (segments.empty()) throw std::invalid_argument("RegimeSpec: no segments");
        auto check_location_scale = [&](const std::vector<double>& mean, const std::vector<double>& scale) {
            if (mean.size() != dim || scale.size() != dim)
                throw std::invalid_argument("RegimeSpec: mean and scale need one entry per dimension");
            for (double s : scale)
                if (!(s > 0.0)) throw std::invalid_argument("RegimeSpec: scale entries must be positive");
        };
        for (const auto& seg : segments) {
            if (seg.length == 0) throw std::invalid_argument("RegimeSpec: segment length must be >= 1");
            if (const auto* g = std::get_if<GaussianRegime>(&seg.regime)) check_location_scale(g->mean, g->scale);
            if (const auto* t = std::get_if<StudentTRegime>(&seg.regime)) {
                check_location_scale(t->mean, t->scale);
                if (!(t->dof > 0.0)) throw std::invalid_argument("RegimeSpec: dof must be positive");
            }
            if (const auto* u = std::get_if<UniformRegime>(&seg.regime))
                if (!(u->lo < u->hi)) throw std::invalid_argument("RegimeSpec: uniform requires lo < hi");
        }
    }

    // Cumulative segment boundaries, excluding the series end.
    std::vector<std::size_t> change_points() const {
        std::vector<std::size_t> out;
        std::size_t acc = 0;
        for (std::size_t k = 0; k + 1 < segments.size(); ++k) out.push_back(acc += segments[k].length);
        return out;
    }
};

// Segment k draws from its own substream derive_seed(seed, {k}), row by row,
// coordinate by coordinate.
inline Series gen_series(const RegimeSpec& spec) {
    spec.validate();
    Series out;
    for (std::size_t j = 0; j < spec.dim; ++j) out.columns.push_back("x" + std::to_string(j + 1));
    out.observations = PointSet(spec.dim);
    out.observations.reserve(spec.total_length());

    std::vector<double> row(spec.dim);
    for (std::size_t k = 0; k < spec.segments.size(); ++k) {
        const auto& seg = spec.segments[k];
        Rng rng(derive_seed(spec.seed, {k}));
        for (std::size_t t = 0; t < seg.length; ++t) {
            for (std::size_t j = 0; j < spec.dim; ++j) {
                row[j] = std::visit(
                    [&](const auto& r) -> double {
                        using R = std::decay_t<decltype(r)>;
                        if constexpr (std::is_same_v<R, GaussianRegime>)
                            return r.mean[j] + r.scale[j] * standard_normal(rng);
                        else if constexpr (std::is_same_v<R, StudentTRegime>)
                            return r.mean[j] + r.scale[j] * student_t(rng, r.dof);
                        else
                            return r.lo + (r.hi - r.lo) * rng.uniform();
                    },
                    seg.regime);
            }
            out.observations.push_back(row);
        }
    }
    return out;
}

// JSON form:
//   {"dim": 2, "seed": 7, "segments": [
//      {"length": 50, "distribution": "gaussian", "mean": [0, 0], "scale": 1},
//      {"length": 50, "distribution": "student_t", "dof": 3, "mean": 1, "scale": [1, 2]},
//      {"length": 20, "distribution": "uniform", "lo": -1, "hi": 1}]}
// A scalar mean or scale is broadcast to every dimension.
inline RegimeSpec regime_spec_from_json(const nlohmann::json& j) {
    RegimeSpec spec;
    spec.dim = j.value("dim", std::size_t{1});
    spec.seed = j.value("seed", std::uint64_t{0});
    auto vec = [&](const nlohmann::json& seg, const char* key, double fallback) {
        if (!seg.contains(key)) return std::vector<double>(spec.dim, fallback);
        const auto& v = seg.at(key);
        if (v.is_number()) return std::vector<double>(spec.dim, v.get<double>());
        return v.get<std::vector<double>>();
    };
    for (const auto& seg : j.at("segments")) {
        RegimeSegment s;
        s.length = seg.at("length").get<std::size_t>();
        const auto kind = seg.at("distribution").get<std::string>();
        if (kind == "gaussian")
            s.regime = GaussianRegime{vec(seg, "mean", 0.0), vec(seg, "scale", 1.0)};
        else if (kind == "student_t")
            s.regime = StudentTRegime{seg.at("dof").get<double>(), vec(seg, "mean", 0.0), vec(seg, "scale", 1.0)};
        else if (kind == "uniform")
            s.regime = UniformRegime{seg.value("lo", 0.0), seg.value("hi", 1.0)};
        else
            throw std::invalid_argument("RegimeSpec: unknown distribution '" + kind + "'");
        spec.segments.push_back(std::move(s));
    }
    spec.validate();
    return spec;
}

}  // namespace rankcp
