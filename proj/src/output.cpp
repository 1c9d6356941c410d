#include "fucik/output.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

namespace fucik {

void write_header(std::ostream& os, std::uint64_t hash) {
    os << "# config " << std::hex << std::setfill('0') << std::setw(16) << hash
       << std::dec << std::setfill(' ') << " version " << kVersion << "\n";
}

void write_curve_csv(std::ostream& os, const FucikCurve& curve, std::uint64_t hash) {
    write_header(os, hash);
    os << "s, c_s, a, b, converged\n";
    os << std::setprecision(12);
    for (const auto& pt : curve.points)
        os << pt.s << ", " << pt.c << ", " << pt.s + pt.c << ", " << pt.c << ", "
           << (pt.converged ? 1 : 0) << "\n";
    for (const auto& pt : curve.points) // mirror branch
        if (pt.s > 0.0)
            os << pt.s << ", " << pt.c << ", " << pt.c << ", " << pt.s + pt.c << ", "
               << (pt.converged ? 1 : 0) << "\n";
}

void write_limit_csv(std::ostream& os, const std::vector<LimitRow>& table,
                     std::uint64_t hash) {
    write_header(os, hash);
    os << "alpha, epsilon, lambda1, lambda1_target, rel_err, lambda2, "
          "lambda2_target, rel_err\n";
    os << std::setprecision(12);
    for (const auto& r : table)
        os << r.alpha << ", " << r.epsilon << ", " << r.lambda1 << ", "
           << r.lambda1_target << ", " << r.rel_err1 << ", " << r.lambda2 << ", "
           << r.lambda2_target << ", " << r.rel_err2 << "\n";
}

namespace {

constexpr int kW = 800, kH = 600, kPad = 60;

struct Frame {
    double lo, hi;
    double x(double a) const { return kPad + (a - lo) / (hi - lo) * (kW - 2 * kPad); }
    double y(double b) const { return kH - kPad - (b - lo) / (hi - lo) * (kH - 2 * kPad); }
};

void polyline(std::ostream& os, const Frame& fr,
              const std::vector<std::array<double, 2>>& pts, const char* color) {
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& p : pts) os << fr.x(p[0]) << "," << fr.y(p[1]) << " ";
    os << "\"/>\n";
}

void line(std::ostream& os, const Frame& fr, double a0, double b0, double a1,
          double b1, const char* color, const char* dash) {
    os << "<line x1=\"" << fr.x(a0) << "\" y1=\"" << fr.y(b0) << "\" x2=\"" << fr.x(a1)
       << "\" y2=\"" << fr.y(b1) << "\" stroke=\"" << color
       << "\" stroke-width=\"1\" stroke-dasharray=\"" << dash << "\"/>\n";
}

} // namespace

void write_curve_svg(std::ostream& os, const FucikCurve& curve, std::uint64_t hash) {
    double hi = curve.lambda1;
    for (const auto& pt : curve.points) hi = std::max(hi, pt.s + pt.c);
    Frame fr{0.0, 1.1 * hi};

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kW
       << "\" height=\"" << kH << "\">\n";
    os << "<!-- config " << std::hex << hash << std::dec << " version " << kVersion
       << " -->\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    line(os, fr, fr.lo, fr.lo, fr.hi, fr.lo, "black", "");
    line(os, fr, fr.lo, fr.lo, fr.lo, fr.hi, "black", "");
    // diagonal a = b and the trivial lines through (lambda1, lambda1)
    line(os, fr, fr.lo, fr.lo, fr.hi, fr.hi, "gray", "4,4");
    line(os, fr, curve.lambda1, fr.lo, curve.lambda1, fr.hi, "green", "6,3");
    line(os, fr, fr.lo, curve.lambda1, fr.hi, curve.lambda1, "green", "6,3");

    std::vector<std::array<double, 2>> main_branch, mirror_branch;
    for (const auto& pt : curve.points) {
        main_branch.push_back({pt.s + pt.c, pt.c});
        mirror_branch.push_back({pt.c, pt.s + pt.c});
    }
    std::reverse(mirror_branch.begin(), mirror_branch.end());
    polyline(os, fr, main_branch, "blue");
    polyline(os, fr, mirror_branch, "red");
    os << "</svg>\n";
}

} // namespace fucik
