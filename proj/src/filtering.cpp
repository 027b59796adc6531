#include "jtv/filtering.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "jtv/errors.hpp"
#include "jtv/translation.hpp"

namespace jtv {

namespace {

// Columns exp(-i * s * freq) for s = 0..count-1.
CMat power_phases(const Vec& frequencies, int count) {
    CMat out(frequencies.size(), count);
    for (Eigen::Index i = 0; i < frequencies.size(); ++i)
        for (int s = 0; s < count; ++s)
            out(i, s) = std::polar(1.0, -static_cast<double>(s) * frequencies[i]);
    return out;
}

}  // namespace

SpectralResponse spectral_response(const JointFilterSpec& spec,
                                   const JointBasis& jb) {
    if (spec.l1() < 1 || spec.l2() < 1)
        throw ValidationError("filter needs at least one tap per axis");
    // response(ell, k) = sum_q E_G(ell, q) * sum_p taps(p, q) E_D(k, p)
    const CMat ed = power_phases(jb.time.frequencies, spec.l1());   // M x L1
    const CMat eg = power_phases(jb.graph.frequencies, spec.l2());  // N x L2
    const CMat inner = ed * spec.taps;                              // M x L2
    const CMat grid = eg * inner.transpose();                       // N x M
    SpectralResponse resp;
    resp.response = vectorize(grid);
    return resp;
}

CMat apply_response(const SpectralResponse& resp, const JointBasis& jb,
                    const CMat& X) {
    if (resp.response.size() != jb.joint_size())
        throw DimensionError("response length does not match joint basis");
    CMat Xhat = jft(jb, X);
    Xhat.array() *= unvectorize(resp.response, jb.n(), jb.m()).array();
    return inverse_jft(jb, Xhat);
}

CMat apply_filter(const JointFilterSpec& spec, const JointBasis& jb,
                  const CMat& X) {
    return apply_response(spectral_response(spec, jb), jb, X);
}

double commutation_residual(const JointFilterSpec& spec, const JointBasis& jb,
                            int upsilon, int theta, int trials, Rng rng) {
    if (trials < 1) throw ValidationError("need at least one trial");
    const SpectralResponse resp = spectral_response(spec, jb);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Rng trial_rng = rng.fork(static_cast<std::uint64_t>(t));
        CMat X(jb.n(), jb.m());
        for (int c = 0; c < jb.m(); ++c)
            for (int r = 0; r < jb.n(); ++r)
                X(r, c) = std::complex<double>(trial_rng.gaussian(),
                                               trial_rng.gaussian());
        const CMat th = joint_translate(jb, apply_response(resp, jb, X),
                                        upsilon, theta);
        const CMat ht = apply_response(resp, jb,
                                       joint_translate(jb, X, upsilon, theta));
        worst = std::max(worst, (th - ht).norm() / X.norm());
    }
    return worst;
}

JointFilterSpec random_filter(int l1, int l2, const JointBasis& jb, Rng rng) {
    if (l1 < 1 || l2 < 1) throw SizeError("tap counts must be positive");
    JointFilterSpec spec;
    spec.taps = CMat(l1, l2);
    for (int q = 0; q < l2; ++q)
        for (int p = 0; p < l1; ++p)
            spec.taps(p, q) = std::complex<double>(rng.gaussian(), rng.gaussian());
    const double peak =
        spectral_response(spec, jb).response.cwiseAbs().maxCoeff();
    if (peak > 0.0) spec.taps /= peak;
    return spec;
}

JointFilterSpec load_filter_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open filter file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad filter JSON in " + path + ": " + e.what());
    }
    for (const char* field : {"l1", "l2", "taps_re", "taps_im"})
        if (!doc.contains(field))
            throw ValidationError(std::string("filter JSON missing '") + field +
                                  "'");
    const int l1 = doc["l1"].get<int>();
    const int l2 = doc["l2"].get<int>();
    if (l1 < 1 || l2 < 1) throw ValidationError("filter JSON: bad tap counts");
    auto read_grid = [&](const char* field) {
        const auto& rows = doc[field];
        if (static_cast<int>(rows.size()) != l1)
            throw ValidationError("filter JSON: tap grid row count mismatch");
        Mat grid(l1, l2);
        for (int p = 0; p < l1; ++p) {
            if (static_cast<int>(rows[p].size()) != l2)
                throw ValidationError("filter JSON: tap grid column count mismatch");
            for (int q = 0; q < l2; ++q) grid(p, q) = rows[p][q].get<double>();
        }
        return grid;
    };
    const Mat re = read_grid("taps_re");
    const Mat im = read_grid("taps_im");
    JointFilterSpec spec;
    spec.taps = re.cast<std::complex<double>>() +
                std::complex<double>(0.0, 1.0) * im.cast<std::complex<double>>();
    if (!spec.taps.allFinite())
        throw ValidationError("filter JSON: taps must be finite");
    return spec;
}

void save_filter_json(const JointFilterSpec& spec, const std::string& path) {
    nlohmann::json doc;
    doc["l1"] = spec.l1();
    doc["l2"] = spec.l2();
    auto grid = [&](auto pick) {
        auto rows = nlohmann::json::array();
        for (int p = 0; p < spec.l1(); ++p) {
            auto row = nlohmann::json::array();
            for (int q = 0; q < spec.l2(); ++q) row.push_back(pick(spec.taps(p, q)));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    doc["taps_re"] = grid([](std::complex<double> z) { return z.real(); });
    doc["taps_im"] = grid([](std::complex<double> z) { return z.imag(); });
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write filter file: " + path);
    out << doc.dump(2) << '\n';
}

}  // namespace jtv
