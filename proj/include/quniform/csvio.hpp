#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "quniform/digitalseq.hpp"
#include "quniform/pointgeom.hpp"

namespace quniform {

/// Exact decimal rendering of mantissa / 2^precision. Terminates in at most
/// `precision` fractional digits; "0" for a zero mantissa.
std::string dyadic_decimal(std::uint64_t mantissa, int precision);

/// Inverse of dyadic_decimal at a fixed precision. The value must be exactly
/// representable with `precision` bits (std::invalid_argument otherwise).
std::uint64_t parse_dyadic_decimal(const std::string& text, int precision);

/// Point CSV: `# precision=... dim=... n=... label=...`, a `x1,...,xd` header
/// row, then one row per point. Dyadic sets render coordinates as exact
/// decimals; real-valued sets mark `precision=real` and use shortest
/// round-trip doubles.
void write_pointset_csv(std::ostream& os, const PointSet& ps, const std::string& label);
void write_pointset_csv(std::ostream& os, const RealPointSet& ps, const std::string& label);

/// A loaded point CSV, dyadic or real depending on the file's marker.
struct LoadedPoints {
    bool is_real = false;
    PointSet dyadic;
    RealPointSet real;
    std::string label;
};

LoadedPoints read_pointset_csv(std::istream& is);

/// Diagnostic reports, one `n,q,s,p,h_lo,h_hi,ratio_lo,ratio_hi` row each.
void write_report_csv(std::ostream& os, std::span<const MeshRatioReport> reports);
void write_report_csv(std::ostream& os, std::span<const RealMeshRatioReport> reports);

/// Static scatter of a 2D point set (flat x,y pairs in [0,1]^2), optionally
/// joining a witness pair with a highlighted segment.
void write_svg(std::ostream& os, const std::vector<double>& xy, std::size_t witness_i,
               std::size_t witness_j, bool draw_witness);

}  // namespace quniform
