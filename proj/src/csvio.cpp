#include "quniform/csvio.hpp"

#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace quniform {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_precision_range(int precision) {
    if (precision < 1 || precision > 64)
        throw std::invalid_argument("precision must be between 1 and 64");
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::string header_row(std::size_t dim) {
    std::string row;
    for (std::size_t k = 0; k < dim; ++k) {
        if (k > 0)
            row += ',';
        row += "x" + std::to_string(k + 1);
    }
    return row;
}

}  // namespace

std::string dyadic_decimal(std::uint64_t mantissa, int precision) {
    check_precision_range(precision);
    if (precision < 64 && mantissa >> precision)
        throw std::invalid_argument("mantissa has bits above the precision");
    if (mantissa == 0)
        return "0";
    std::string out = "0.";
    const u128 mask = (static_cast<u128>(1) << precision) - 1;
    u128 rest = mantissa;
    while (rest != 0) {
        rest *= 10;
        out.push_back(static_cast<char>('0' + static_cast<int>(rest >> precision)));
        rest &= mask;
    }
    return out;
}

std::uint64_t parse_dyadic_decimal(const std::string& text, int precision) {
    check_precision_range(precision);
    if (text.empty() || text[0] != '0')
        throw std::invalid_argument("coordinate must lie in [0,1): '" + text + "'");
    std::vector<int> digits;
    if (text.size() > 1) {
        if (text[1] != '.' || text.size() == 2)
            throw std::invalid_argument("malformed decimal: '" + text + "'");
        for (std::size_t i = 2; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw std::invalid_argument("malformed decimal: '" + text + "'");
            digits.push_back(text[i] - '0');
        }
    }
    // peel off binary digits by doubling the decimal fraction
    std::uint64_t mantissa = 0;
    for (int bit = 0; bit < precision; ++bit) {
        int carry = 0;
        for (std::size_t i = digits.size(); i-- > 0;) {
            int v = digits[i] * 2 + carry;
            digits[i] = v % 10;
            carry = v / 10;
        }
        mantissa = (mantissa << 1) | static_cast<std::uint64_t>(carry);
    }
    for (int d : digits) {
        if (d != 0)
            throw std::invalid_argument("value not representable with " +
                                        std::to_string(precision) + " bits: '" + text + "'");
    }
    return mantissa;
}

void write_pointset_csv(std::ostream& os, const PointSet& ps, const std::string& label) {
    os << "# precision=" << ps.precision << " dim=" << ps.dim << " n=" << ps.size()
       << " label=" << label << "\n";
    os << header_row(ps.dim) << "\n";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto pt = ps.point(i);
        for (std::size_t k = 0; k < ps.dim; ++k) {
            if (k > 0)
                os << ',';
            os << dyadic_decimal(pt[k], ps.precision);
        }
        os << "\n";
    }
}

void write_pointset_csv(std::ostream& os, const RealPointSet& ps, const std::string& label) {
    os << "# precision=real dim=" << ps.dim << " n=" << ps.size() << " label=" << label
       << "\n";
    os << header_row(ps.dim) << "\n";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto pt = ps.point(i);
        for (std::size_t k = 0; k < ps.dim; ++k) {
            if (k > 0)
                os << ',';
            os << fmt17(pt[k]);
        }
        os << "\n";
    }
}

LoadedPoints read_pointset_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0)
        throw std::invalid_argument("point CSV must start with a '# precision=...' line");

    std::string precision_text, label;
    std::size_t dim = 0, n = 0;
    bool have_precision = false, have_dim = false, have_n = false;
    std::istringstream head(line.substr(2));
    std::string token;
    while (head >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed header token: '" + token + "'");
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "precision") {
            precision_text = value;
            have_precision = true;
        } else if (key == "dim") {
            dim = std::stoul(value);
            have_dim = true;
        } else if (key == "n") {
            n = std::stoul(value);
            have_n = true;
        } else if (key == "label") {
            label = value;
        } else {
            throw std::invalid_argument("unknown header key: '" + key + "'");
        }
    }
    if (!have_precision || !have_dim || !have_n)
        throw std::invalid_argument("point CSV header needs precision, dim and n");
    if (dim < 1 || dim > 8)
        throw std::invalid_argument("dimension out of range in point CSV");

    if (!std::getline(is, line) || line != header_row(dim))
        throw std::invalid_argument("expected column header '" + header_row(dim) + "'");

    LoadedPoints out;
    out.label = label;
    out.is_real = precision_text == "real";
    int precision = 0;
    if (!out.is_real) {
        precision = std::stoi(precision_text);
        check_precision_range(precision);
        out.dyadic.dim = dim;
        out.dyadic.precision = precision;
        out.dyadic.coords.reserve(n * dim);
    } else {
        out.real.dim = dim;
        out.real.coords.reserve(n * dim);
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(is, line))
            throw std::invalid_argument("point CSV ends early: expected " + std::to_string(n) +
                                        " rows");
        const auto fields = split(line, ',');
        if (fields.size() != dim)
            throw std::invalid_argument("row " + std::to_string(i) + " has " +
                                        std::to_string(fields.size()) + " fields, expected " +
                                        std::to_string(dim));
        for (const auto& field : fields) {
            if (out.is_real) {
                std::size_t used = 0;
                const double v = std::stod(field, &used);
                if (used != field.size())
                    throw std::invalid_argument("malformed coordinate: '" + field + "'");
                out.real.coords.push_back(v);
            } else {
                out.dyadic.coords.push_back(parse_dyadic_decimal(field, precision));
            }
        }
    }
    return out;
}

namespace {

const char* kReportHeader = "n,q,s,p,h_lo,h_hi,ratio_lo,ratio_hi\n";

}  // namespace

void write_report_csv(std::ostream& os, std::span<const MeshRatioReport> reports) {
    os << kReportHeader;
    for (const auto& r : reports) {
        os << r.n << ',' << fmt17(r.sep.q_value()) << ',' << to_decimal(r.sep.s) << ','
           << r.sep.precision << ',' << fmt17(r.fill.h_lo) << ',' << fmt17(r.fill.h_hi) << ','
           << fmt17(r.ratio_lo) << ',' << fmt17(r.ratio_hi) << "\n";
    }
}

void write_report_csv(std::ostream& os, std::span<const RealMeshRatioReport> reports) {
    os << kReportHeader;
    for (const auto& r : reports) {
        os << r.n << ',' << fmt17(r.sep.q_value()) << ',' << fmt17(r.sep.s) << ",real,"
           << fmt17(r.fill.h_lo) << ',' << fmt17(r.fill.h_hi) << ',' << fmt17(r.ratio_lo) << ','
           << fmt17(r.ratio_hi) << "\n";
    }
}

void write_svg(std::ostream& os, const std::vector<double>& xy, std::size_t witness_i,
               std::size_t witness_j, bool draw_witness) {
    if (xy.size() % 2 != 0)
        throw std::invalid_argument("scatter needs flat x,y pairs");
    const std::size_t n = xy.size() / 2;
    const double size = 640.0, margin = 24.0, span = size - 2 * margin;
    auto px = [&](double x) { return margin + x * span; };
    auto py = [&](double y) { return margin + (1.0 - y) * span; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
       << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    os << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << span
       << "\" height=\"" << span << "\" fill=\"white\" stroke=\"#444\"/>\n";
    if (draw_witness && witness_i < n && witness_j < n) {
        os << "  <line x1=\"" << px(xy[2 * witness_i]) << "\" y1=\"" << py(xy[2 * witness_i + 1])
           << "\" x2=\"" << px(xy[2 * witness_j]) << "\" y2=\"" << py(xy[2 * witness_j + 1])
           << "\" stroke=\"#d22\" stroke-width=\"1.5\"/>\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        const bool hot = draw_witness && (i == witness_i || i == witness_j);
        os << "  <circle cx=\"" << px(xy[2 * i]) << "\" cy=\"" << py(xy[2 * i + 1]) << "\" r=\""
           << (hot ? 4.0 : 2.5) << "\" fill=\"" << (hot ? "#d22" : "#222") << "\"/>\n";
    }
    os << "</svg>\n";
}

}  // namespace quniform
