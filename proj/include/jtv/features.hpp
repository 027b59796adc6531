#ifndef JTV_FEATURES_HPP
#define JTV_FEATURES_HPP

#include <string>
#include <vector>

#include "jtv/graph.hpp"
#include "jtv/jpsd.hpp"
#include "jtv/rng.hpp"

namespace jtv {

/// Sensor montage: channel names, one coordinate per channel, and an
/// optional privileged edge set of global inter-hemisphere pairs.
struct SensorLayout {
    std::vector<std::string> names;
    std::vector<Eigen::Vector3d> coords;
    std::vector<std::pair<int, int>> glb_pairs;

    int channels() const { return static_cast<int>(names.size()); }
};

struct FeatureMatrix {
    Eigen::MatrixXd features;         // Ns x NM
    std::vector<std::string> labels;  // one per row
    bool standardized = false;
};

/// Gaussian-kernel sensor graph: w_ij = kappa * exp(-dist1(i,j)/(2 gamma^2))
/// on the Manhattan distance between channel coordinates. kappa is
/// kappa_global on glb pairs, kappa_local otherwise. By default every
/// channel pair gets an edge; knn > 0 keeps only the union of each
/// channel's knn nearest neighbours.
WeightedGraph kernel_graph(const SensorLayout& layout, double gamma,
                           double kappa_global, double kappa_local,
                           int knn = 0);

/// Non-overlapping frames of floor(frame_ms * rate / 1000) samples; the
/// trailing partial frame is dropped.
std::vector<Mat> frame_signal(const Mat& raw, double frame_ms,
                              double sample_rate_hz);

/// One feature row per sample: the GBM JPSD over that sample's frames,
/// flattened in joint index order.
FeatureMatrix extract_jpsd_features(
    const std::vector<std::vector<Mat>>& sample_frames, const JointBasis& jb,
    const std::vector<std::string>& labels);

/// Per-column standardization (z - mu)/sigma with population sigma;
/// constant columns map to zero.
FeatureMatrix zscore(const FeatureMatrix& fm);

/// Adds white Gaussian noise scaled so that
/// 10*log10(signal power / noise power) == snr_db over the whole matrix.
Mat add_noise(const Mat& raw, double snr_db, Rng rng);

SensorLayout load_layout_json(const std::string& path);
void save_layout_json(const SensorLayout& layout, const std::string& path);

struct SampleManifest {
    struct Entry {
        std::string path;
        std::string label;
    };
    std::vector<Entry> samples;
    double rate_hz = 0.0;
    std::string layout_path;
};

SampleManifest load_manifest_json(const std::string& path);

void save_features_csv(const FeatureMatrix& fm, const std::string& path);

}  // namespace jtv

#endif
