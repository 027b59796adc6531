#ifndef JTV_IO_HPP
#define JTV_IO_HPP

#include <string>

#include "jtv/spectral.hpp"

namespace jtv {

/// Signal files come in two flavours:
///   - CSV: N rows, M comma-separated decimal doubles (real signals only).
///   - TVSG binary: 16-byte header (magic "TVSG", u32 N, u32 M, u32 flags),
///     then row-major little-endian float64; flag bit 0 set means complex
///     with re,im interleaved.

Mat load_matrix_csv(const std::string& path);
void save_matrix_csv(const Mat& x, const std::string& path);

CMat load_tvsg(const std::string& path);
void save_tvsg(const CMat& x, const std::string& path);

/// Loads a signal by format: paths ending in .csv are parsed as CSV,
/// anything else must carry the TVSG magic.
CMat load_signal(const std::string& path);

/// Writes CSV for a .csv path (rejecting signals with imaginary content),
/// TVSG otherwise. Real matrices get the real TVSG layout.
void save_signal(const CMat& x, const std::string& path);

}  // namespace jtv

#endif
