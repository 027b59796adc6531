#include "jtv/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "jtv/errors.hpp"

namespace jtv {

WeightedGraph kernel_graph(const SensorLayout& layout, double gamma,
                           double kappa_global, double kappa_local, int knn) {
    const int n = layout.channels();
    if (n < 2) throw SizeError("kernel graph needs at least two channels");
    if (static_cast<int>(layout.coords.size()) != n)
        throw DimensionError("layout coordinates do not match channel count");
    if (gamma <= 0.0) throw ValidationError("gamma must be positive");
    for (const auto& c : layout.coords)
        if (!c.allFinite()) throw ValidationError("non-finite channel coordinate");

    bool all_identical = true;
    for (int i = 1; i < n && all_identical; ++i)
        all_identical = layout.coords[i] == layout.coords[0];
    if (all_identical)
        throw DegenerateLayoutError("all channels share one coordinate");

    std::vector<std::vector<char>> global(n, std::vector<char>(n, 0));
    for (const auto& [a, b] : layout.glb_pairs) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw ValidationError("glb pair references a missing channel");
        global[a][b] = global[b][a] = 1;
    }

    Mat dist(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            dist(i, j) = (layout.coords[i] - layout.coords[j]).lpNorm<1>();

    // Edge rule: complete by default; knn > 0 keeps the union of each
    // channel's knn nearest neighbours.
    std::vector<std::vector<char>> keep(n, std::vector<char>(n, knn <= 0));
    if (knn > 0) {
        for (int i = 0; i < n; ++i) {
            std::vector<int> order;
            for (int j = 0; j < n; ++j)
                if (j != i) order.push_back(j);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                return dist(i, a) != dist(i, b) ? dist(i, a) < dist(i, b) : a < b;
            });
            for (int r = 0; r < std::min<int>(knn, static_cast<int>(order.size())); ++r)
                keep[i][order[r]] = keep[order[r]][i] = 1;
        }
    }

    WeightedGraph g;
    g.n = n;
    g.weights = Mat::Zero(n, n);
    g.coords = layout.coords;
    const double denom = 2.0 * gamma * gamma;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!keep[i][j]) continue;
            const double kappa = global[i][j] ? kappa_global : kappa_local;
            g.weights(i, j) = g.weights(j, i) = kappa * std::exp(-dist(i, j) / denom);
        }
    }
    return g;
}

std::vector<Mat> frame_signal(const Mat& raw, double frame_ms,
                              double sample_rate_hz) {
    if (frame_ms <= 0.0 || sample_rate_hz <= 0.0)
        throw ValidationError("frame length and rate must be positive");
    const int frame_len =
        static_cast<int>(std::floor(frame_ms * sample_rate_hz / 1000.0));
    if (frame_len < 2)
        throw FrameTooShortError("frames need at least 2 samples");
    const int frames = static_cast<int>(raw.cols()) / frame_len;
    std::vector<Mat> out;
    out.reserve(frames);
    for (int f = 0; f < frames; ++f)
        out.push_back(raw.middleCols(f * frame_len, frame_len));
    return out;
}

FeatureMatrix extract_jpsd_features(
    const std::vector<std::vector<Mat>>& sample_frames, const JointBasis& jb,
    const std::vector<std::string>& labels) {
    if (sample_frames.empty()) throw EmptyInputError("no samples");
    if (labels.size() != sample_frames.size())
        throw DimensionError("labels do not match sample count");
    const int ns = static_cast<int>(sample_frames.size());
    FeatureMatrix fm;
    fm.features = Mat(ns, jb.joint_size());
    fm.labels = labels;
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < ns; ++s) {
        std::vector<CMat> frames;
        frames.reserve(sample_frames[s].size());
        for (const Mat& f : sample_frames[s])
            frames.push_back(f.cast<std::complex<double>>());
        fm.features.row(s) = gbm_reference(frames, jb).transpose();
    }
    return fm;
}

FeatureMatrix zscore(const FeatureMatrix& fm) {
    const int ns = static_cast<int>(fm.features.rows());
    if (ns < 2) throw TooFewSamplesError("z-score needs at least two samples");
    FeatureMatrix out = fm;
    for (Eigen::Index c = 0; c < fm.features.cols(); ++c) {
        const double mu = fm.features.col(c).mean();
        const double var =
            (fm.features.col(c).array() - mu).square().sum() / ns;  // population
        const double sigma = std::sqrt(var);
        if (sigma <= 1e-12 * std::max(1.0, std::abs(mu)))
            out.features.col(c).setZero();
        else
            out.features.col(c) = (fm.features.col(c).array() - mu) / sigma;
    }
    out.standardized = true;
    return out;
}

Mat add_noise(const Mat& raw, double snr_db, Rng rng) {
    const double signal_power = raw.squaredNorm() / raw.size();
    if (signal_power <= 0.0)
        throw NotDefinedError("SNR undefined for an all-zero signal");
    const double noise_power = signal_power / std::pow(10.0, snr_db / 10.0);
    const double sigma = std::sqrt(noise_power);
    Mat noisy = raw;
    for (Eigen::Index c = 0; c < raw.cols(); ++c)
        for (Eigen::Index r = 0; r < raw.rows(); ++r)
            noisy(r, c) += sigma * rng.gaussian();
    return noisy;
}

SensorLayout load_layout_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open layout file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad layout JSON in " + path + ": " + e.what());
    }
    if (!doc.contains("names") || !doc.contains("coords"))
        throw ValidationError("layout JSON needs 'names' and 'coords'");
    SensorLayout layout;
    for (const auto& name : doc["names"])
        layout.names.push_back(name.get<std::string>());
    for (const auto& c : doc["coords"]) {
        Eigen::Vector3d v = Eigen::Vector3d::Zero();
        for (std::size_t a = 0; a < c.size() && a < 3; ++a)
            v[static_cast<int>(a)] = c[a].get<double>();
        layout.coords.push_back(v);
    }
    if (layout.names.size() != layout.coords.size())
        throw ValidationError("layout JSON: names/coords size mismatch");
    auto find_channel = [&](const std::string& name) {
        const auto it =
            std::find(layout.names.begin(), layout.names.end(), name);
        if (it == layout.names.end())
            throw ValidationError("layout JSON: glb pair names unknown channel " +
                                  name);
        return static_cast<int>(it - layout.names.begin());
    };
    if (doc.contains("glb_pairs"))
        for (const auto& pair : doc["glb_pairs"])
            layout.glb_pairs.emplace_back(find_channel(pair[0].get<std::string>()),
                                          find_channel(pair[1].get<std::string>()));
    return layout;
}

void save_layout_json(const SensorLayout& layout, const std::string& path) {
    nlohmann::json doc;
    doc["names"] = layout.names;
    auto coords = nlohmann::json::array();
    for (const auto& c : layout.coords) coords.push_back({c[0], c[1], c[2]});
    doc["coords"] = std::move(coords);
    auto pairs = nlohmann::json::array();
    for (const auto& [a, b] : layout.glb_pairs)
        pairs.push_back({layout.names[a], layout.names[b]});
    doc["glb_pairs"] = std::move(pairs);
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write layout file: " + path);
    out << doc.dump(2) << '\n';
}

SampleManifest load_manifest_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open manifest file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad manifest JSON in " + path + ": " + e.what());
    }
    for (const char* field : {"samples", "rate_hz", "layout"})
        if (!doc.contains(field))
            throw ValidationError(std::string("manifest JSON missing '") + field +
                                  "'");
    SampleManifest manifest;
    manifest.rate_hz = doc["rate_hz"].get<double>();
    manifest.layout_path = doc["layout"].get<std::string>();
    for (const auto& s : doc["samples"]) {
        SampleManifest::Entry entry;
        entry.path = s.at("path").get<std::string>();
        if (s.contains("label")) {
            const auto& label = s["label"];
            entry.label = label.is_string() ? label.get<std::string>()
                                            : label.dump();
        }
        manifest.samples.push_back(std::move(entry));
    }
    if (manifest.samples.empty())
        throw ValidationError("manifest JSON lists no samples");
    return manifest;
}

void save_features_csv(const FeatureMatrix& fm, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write features file: " + path);
    out << "label";
    for (Eigen::Index c = 0; c < fm.features.cols(); ++c) out << ",f_" << c;
    out << '\n';
    char cell[64];
    for (Eigen::Index r = 0; r < fm.features.rows(); ++r) {
        out << fm.labels[r];
        for (Eigen::Index c = 0; c < fm.features.cols(); ++c) {
            std::snprintf(cell, sizeof cell, ",%.15g", fm.features(r, c));
            out << cell;
        }
        out << '\n';
    }
}

}  // namespace jtv
