#include "jtv/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "jtv/errors.hpp"

namespace jtv {

namespace {

constexpr char kMagic[4] = {'T', 'V', 'S', 'G'};
constexpr std::uint32_t kFlagComplex = 1u;

bool ends_with_csv(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

}  // namespace

Mat load_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open signal file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ValidationError("bad CSV cell '" + cell + "' in " + path);
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ValidationError("ragged CSV rows in " + path);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ValidationError("empty CSV file: " + path);
    Mat x(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                rows[r][c];
    return x;
}

void save_matrix_csv(const Mat& x, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write signal file: " + path);
    char cell[64];
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
        for (Eigen::Index c = 0; c < x.cols(); ++c) {
            std::snprintf(cell, sizeof cell, c == 0 ? "%.15g" : ",%.15g",
                          x(r, c));
            out << cell;
        }
        out << '\n';
    }
}

CMat load_tvsg(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open signal file: " + path);
    char magic[4];
    std::uint32_t n = 0, m = 0, flags = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&m), 4);
    in.read(reinterpret_cast<char*>(&flags), 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw ValidationError("not a TVSG file: " + path);
    if (n == 0 || m == 0) throw ValidationError("TVSG with empty dimensions");
    const bool complex = flags & kFlagComplex;
    const std::size_t doubles =
        static_cast<std::size_t>(n) * m * (complex ? 2 : 1);
    std::vector<double> payload(doubles);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(doubles * sizeof(double)));
    if (!in) throw ValidationError("truncated TVSG file: " + path);
    CMat x(n, m);
    std::size_t idx = 0;
    for (std::uint32_t r = 0; r < n; ++r) {  // row-major payload
        for (std::uint32_t c = 0; c < m; ++c) {
            if (complex) {
                x(r, c) = {payload[idx], payload[idx + 1]};
                idx += 2;
            } else {
                x(r, c) = payload[idx++];
            }
        }
    }
    return x;
}

void save_tvsg(const CMat& x, const std::string& path) {
    const bool complex = x.imag().cwiseAbs().maxCoeff() != 0.0;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write signal file: " + path);
    const std::uint32_t n = static_cast<std::uint32_t>(x.rows());
    const std::uint32_t m = static_cast<std::uint32_t>(x.cols());
    const std::uint32_t flags = complex ? kFlagComplex : 0;
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&m), 4);
    out.write(reinterpret_cast<const char*>(&flags), 4);
    for (std::uint32_t r = 0; r < n; ++r) {
        for (std::uint32_t c = 0; c < m; ++c) {
            const double re = x(r, c).real();
            out.write(reinterpret_cast<const char*>(&re), 8);
            if (complex) {
                const double im = x(r, c).imag();
                out.write(reinterpret_cast<const char*>(&im), 8);
            }
        }
    }
}

CMat load_signal(const std::string& path) {
    if (ends_with_csv(path))
        return load_matrix_csv(path).cast<std::complex<double>>();
    return load_tvsg(path);
}

void save_signal(const CMat& x, const std::string& path) {
    if (ends_with_csv(path)) {
        if (x.imag().cwiseAbs().maxCoeff() != 0.0)
            throw ValidationError(
                "CSV cannot hold complex signals; use a TVSG path");
        save_matrix_csv(x.real(), path);
        return;
    }
    save_tvsg(x, path);
}

}  // namespace jtv
