#include "rootclust/cli.hpp"

#include "rootclust/benchmarks.hpp"
#include "rootclust/deflation.hpp"

#include <CLI11.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rootclust::cli {

namespace {

using nlohmann::json;

// Smallest integer e with radius >= 2^-e; the "precision" of a disc.
int ceil_neg_log2(const mpq_class& r) {
    if (r <= 0) return 0;
    long nb = static_cast<long>(mpz_sizeinbase(r.get_num().get_mpz_t(), 2));
    long db = static_cast<long>(mpz_sizeinbase(r.get_den().get_mpz_t(), 2));
    long e = db - nb;  // within 1 of -log2(r)
    for (long cand = e - 2; cand <= e + 2; ++cand) {
        // r >= 2^-cand  <=>  r * 2^cand >= 1
        if (r * q_pow2(cand) >= 1) return static_cast<int>(std::max<long>(cand, 0));
    }
    return static_cast<int>(std::max<long>(e, 0));
}

// Decimal string of an exact rational. Terminating expansions are printed
// exactly; anything else gets 40 significant digits.
std::string q_to_decimal(const mpq_class& q) {
    if (q == 0) return "0";
    mpz_class den = q.get_den();
    int twos = 0, fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
        den /= 2;
        ++twos;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
        den /= 5;
        ++fives;
    }
    if (den == 1) {
        // exact: q = num / (2^a 5^b); scale to an integer over a power of ten
        int k = std::max(twos, fives);
        mpz_class scale_num;
        mpz_ui_pow_ui(scale_num.get_mpz_t(), 10, k);
        mpq_class scaled = q * mpq_class(scale_num);
        mpz_class ip = scaled.get_num() / scaled.get_den();  // exact by construction
        std::string digits = ip.get_str();
        bool neg = !digits.empty() && digits[0] == '-';
        if (neg) digits = digits.substr(1);
        if (k == 0) return (neg ? "-" : "") + digits;
        while (static_cast<int>(digits.size()) <= k) digits.insert(0, "0");
        digits.insert(digits.size() - k, ".");
        // trim trailing zeros but keep one digit after the point
        size_t last = digits.find_last_not_of('0');
        if (digits[last] == '.') ++last;
        digits = digits.substr(0, last + 1);
        return (neg ? "-" : "") + digits;
    }
    long bits = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2)) +
                static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    BigFloat x = BigFloat::from_q(q, std::max<long>(160, bits + 8));
    return x.to_decimal(40);
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", s);
    return buf;
}

}  // namespace

mpq_class parse_rational(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ParseError("empty number");
    if (t.find('/') != std::string::npos) {
        mpq_class q;
        if (q.set_str(t, 10) != 0) throw ParseError("bad rational: " + s);
        if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
        q.canonicalize();
        return q;
    }
    // decimal with optional exponent
    bool neg = false;
    size_t i = 0;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) neg = t[i++] == '-';
    std::string digits;
    long frac = 0, expo = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < t.size(); ++i) {
        char c = t[i];
        if (c == '.') {
            if (seen_dot) throw ParseError("bad number: " + s);
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            expo = std::stol(t.substr(i + 1));
            break;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_dot) ++frac;
        } else {
            throw ParseError("bad number: " + s);
        }
    }
    if (!seen_digit) throw ParseError("bad number: " + s);
    mpz_class num(digits.empty() ? "0" : digits, 10);
    if (neg) num = -num;
    mpq_class q(num);
    long p10 = expo - frac;
    mpz_class pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), 10, static_cast<unsigned long>(p10 < 0 ? -p10 : p10));
    if (p10 >= 0)
        q *= mpq_class(pow);
    else
        q /= mpq_class(pow);
    q.canonicalize();
    return q;
}

RationalPolynomial parse_polynomial_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw ParseError("empty polynomial file", line_no);
    std::istringstream hdr(line);
    std::string kw;
    long degree = -1;
    hdr >> kw >> degree;
    if (kw != "degree" || degree < 0 || hdr.fail())
        throw ParseError("expected 'degree d' header", line_no);
    RationalPolynomial p;
    for (long k = 0; k <= degree; ++k) {
        if (!next_line())
            throw ParseError("missing coefficient " + std::to_string(k), line_no);
        std::istringstream ls(line);
        std::string re, im;
        ls >> re >> im;
        if (re.empty() || im.empty())
            throw ParseError("expected 're im' pair", line_no);
        try {
            p.coeffs.emplace_back(parse_rational(re), parse_rational(im));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    if (degree > 0 && p.coeffs.back().first == 0 && p.coeffs.back().second == 0)
        throw ParseError("leading coefficient is zero", line_no);
    return p;
}

PolySource load_polynomial(const std::string& spec) {
    PolySource src;
    if (spec.rfind("builtin:", 0) != 0) {
        src.rational = parse_polynomial_file(spec);
        src.real = src.rational.is_real();
        src.description = spec;
        src.oracle = std::make_unique<RationalOracle>(src.rational);
        return src;
    }
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 3) throw ParseError("bad builtin spec: " + spec);
    const std::string& family = parts[1];
    int d = 0;
    try {
        d = std::stoi(parts[2]);
    } catch (...) {
        throw ParseError("bad degree in: " + spec);
    }
    src.description = spec;
    if (family == "bernoulli") {
        src.rational = bernoulli(d);
        src.real = true;
    } else if (family == "mignotte") {
        if (parts.size() < 4) throw ParseError("mignotte needs builtin:mignotte:<d>:<a>");
        int a = 0;
        try {
            a = std::stoi(parts[3]);
        } catch (...) {
            throw ParseError("bad parameter in: " + spec);
        }
        src.rational = mignotte(d, a);
        src.real = true;
    } else if (family == "mandelbrot") {
        bool warned = false;
        src.rational = mandelbrot(d, &warned);
        if (warned)
            std::fprintf(stderr,
                         "warning: mandelbrot degree %d is not 2^k-1; using degree %d\n", d,
                         src.rational.degree());
        src.real = true;
    } else if (family == "spiral") {
        src.oracle = spiral_oracle(d);
        src.real = false;
        src.builtin_spiral = true;
        return src;
    } else {
        throw ParseError("unknown builtin family: " + family);
    }
    src.oracle = std::make_unique<RationalOracle>(src.rational);
    return src;
}

Box parse_roi(const std::string& s) {
    std::vector<mpq_class> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
    if (v.size() != 4) throw ParseError("ROI must be xmin,xmax,ymin,ymax");
    mpq_class w = v[1] - v[0];
    mpq_class h = v[3] - v[2];
    if (w <= 0 || h <= 0) throw ParseError("ROI sides must be positive");
    if (w != h) throw ParseError("ROI must be square");
    return Box(mpq_class((v[0] + v[1]) / 2), mpq_class((v[2] + v[3]) / 2), w);
}

mpq_class parse_eps(const std::string& s) {
    if (s.rfind("2^", 0) == 0) {
        long e = std::stol(s.substr(2));
        return q_pow2(e);
    }
    mpq_class q = parse_rational(s);
    if (q <= 0) throw ParseError("eps must be positive");
    return q;
}

std::string to_json(const RunReport& r) {
    json jc = json::array();
    for (const auto& c : r.clusters)
        jc.push_back({{"center", {c.center_re, c.center_im}},
                      {"radius", c.radius},
                      {"multiplicity", c.multiplicity}});
    json stats = {
        {"depth", r.depth},
        {"size", r.size},
        {"maxprec", r.maxprec},
        {"counting_calls", r.counting_calls},
        {"degree_weighted_cost", r.degree_weighted_cost},
        {"durations",
         {{"total", fmt_seconds(r.t_total)},
          {"oracle_for_q", fmt_seconds(r.t_oracle_q)},
          {"refine", fmt_seconds(r.t_refine)},
          {"power_sums_to_coeffs", fmt_seconds(r.t_ps_to_coeffs)}}},
        {"parameters",
         {{"poly", r.poly},
          {"roi", r.roi},
          {"eps", r.eps},
          {"mode", r.mode},
          {"n", r.n},
          {"real_symmetry", r.real_symmetry},
          {"output", r.output}}},
    };
    json out = {{"degree", r.degree}, {"clusters", jc}, {"stats", stats}};
    return out.dump(2);
}

std::string to_csv(const RunReport& r) {
    std::string out = "center_re,center_im,radius,multiplicity\n";
    for (const auto& c : r.clusters)
        out += c.center_re + "," + c.center_im + "," + c.radius + "," +
               std::to_string(c.multiplicity) + "\n";
    return out;
}

namespace {

struct SvgMapper {
    double xmin, ymax, scale;
    double x(const mpq_class& re) const { return 20.0 + (re.get_d() - xmin) * scale; }
    double y(const mpq_class& im) const { return 20.0 + (ymax - im.get_d()) * scale; }
};

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_svg(const RunReport& r, const Box& roi,
                       const std::vector<PlotBox>* boxes) {
    const double side = 800.0;
    double w = roi.width.get_d();
    SvgMapper m{roi.cre.get_d() - w / 2, roi.cim.get_d() + w / 2, side / w};
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"840\" height=\"840\" "
           "viewBox=\"0 0 840 840\">\n";
    svg += "<rect x=\"20\" y=\"20\" width=\"800\" height=\"800\" fill=\"white\" "
           "stroke=\"black\" stroke-width=\"1\"/>\n";
    if (boxes) {
        for (const PlotBox& pb : *boxes) {
            double bw = pb.box.width.get_d() * m.scale;
            double x = m.x(pb.box.cre) - bw / 2;
            double y = m.y(pb.box.cim) - bw / 2;
            const char* color = pb.outcome == BoxOutcome::Discarded   ? "#c8c8c8"
                                : pb.outcome == BoxOutcome::Skipped   ? "#e8e8ff"
                                : pb.outcome == BoxOutcome::Emitted   ? "#60a060"
                                : pb.outcome == BoxOutcome::Absorbed  ? "#e0d0a0"
                                                                      : "#f0f0f0";
            svg += "<rect x=\"" + fmt2(x) + "\" y=\"" + fmt2(y) + "\" width=\"" + fmt2(bw) +
                   "\" height=\"" + fmt2(bw) + "\" fill=\"none\" stroke=\"" + color +
                   "\" stroke-width=\"0.4\"/>\n";
        }
    }
    for (const auto& c : r.clusters) {
        double px = m.x(c.disc.cre);
        double py = m.y(c.disc.cim);
        double pr = std::max(c.disc.radius.get_d() * m.scale, 2.5);
        svg += "<circle cx=\"" + fmt2(px) + "\" cy=\"" + fmt2(py) + "\" r=\"" + fmt2(pr) +
               "\" fill=\"#3060c080\" stroke=\"#203080\" stroke-width=\"0.8\"/>\n";
        if (c.multiplicity > 1)
            svg += "<text x=\"" + fmt2(px + pr + 2) + "\" y=\"" + fmt2(py) +
                   "\" font-size=\"12\">" + std::to_string(c.multiplicity) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("rootclust");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, const char* const* argv) {
    CLI::App app{"natural epsilon-clusters of polynomial roots in a region of interest"};
    std::string poly_spec, roi_spec, eps_spec = "2^-53", mode = "plain", n_spec = "auto";
    std::string sym_spec = "auto", output = "json", plot_path, out_path;
    bool plot_boxes = false, want_stats = false;
    app.add_option("--poly", poly_spec, "polynomial file or builtin:<family>:<d>[:<a>]")
        ->required();
    app.add_option("--roi", roi_spec, "region of interest xmin,xmax,ymin,ymax (square)")
        ->required();
    app.add_option("--eps", eps_spec, "cluster radius bound, 2^-k or decimal");
    app.add_option("--mode", mode, "plain or deflate")
        ->check(CLI::IsMember({"plain", "deflate"}));
    app.add_option("--n", n_spec, "clusters per deflation round, integer or auto (= d/8)");
    app.add_option("--real-symmetry", sym_spec, "on, off or auto")
        ->check(CLI::IsMember({"on", "off", "auto"}));
    app.add_option("--output", output, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--plot", plot_path, "write an SVG plot to this path");
    app.add_flag("--plot-boxes", plot_boxes, "include subdivision boxes in the plot");
    app.add_flag("--stats", want_stats, "print a human-readable summary to stderr");
    app.add_option("--out", out_path, "write the report here instead of stdout");

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        PolySource src = load_polynomial(poly_spec);
        Box roi = parse_roi(roi_spec);
        mpq_class eps = parse_eps(eps_spec);
        const int degree = src.oracle->degree();

        long n = std::max(1L, static_cast<long>(degree / 8));
        if (n_spec != "auto") {
            try {
                n = std::stol(n_spec);
            } catch (...) {
                throw ParseError("bad --n value: " + n_spec);
            }
            if (n < 1) throw ParseError("--n must be >= 1");
        }
        bool symmetric_roi = roi.cim == 0;
        bool real_symmetry;
        if (sym_spec == "auto")
            real_symmetry = src.real && symmetric_roi;
        else if (sym_spec == "on") {
            if (!src.real)
                throw ParseError("--real-symmetry on needs real coefficients");
            if (!symmetric_roi)
                throw ParseError("--real-symmetry on needs an ROI centered on the real axis");
            real_symmetry = true;
        } else {
            real_symmetry = false;
        }

        SolveOptions opt;
        opt.real_symmetry = real_symmetry;
        SolveStats stats;
        std::vector<PlotBox> box_log;
        if (!plot_path.empty() && plot_boxes) stats.box_log = &box_log;

        ClusterSet clusters;
        if (mode == "deflate")
            clusters = cluster_with_deflation(*src.oracle, roi, eps, n, opt, &stats);
        else
            clusters = solve_lcp(*src.oracle, roi, eps, opt, &stats);

        RunReport report;
        report.degree = degree;
        report.depth = stats.max_depth;
        report.size = stats.boxes_processed;
        report.counting_calls = stats.counting_calls;
        report.degree_weighted_cost = stats.degree_weighted_cost;
        report.t_total = stats.t_total;
        report.t_oracle_q = stats.t_oracle_q;
        report.t_refine = stats.t_refine;
        report.t_ps_to_coeffs = stats.t_ps_to_coeffs;
        report.poly = poly_spec;
        report.roi = roi_spec;
        report.eps = eps_spec;
        report.mode = mode;
        report.n = n_spec == "auto" ? "auto(" + std::to_string(n) + ")" : n_spec;
        report.real_symmetry = real_symmetry ? "on" : "off";
        report.output = output;
        int maxprec = stats.max_refine_prec;
        for (const Cluster& c : clusters) {
            ReportedCluster rc;
            rc.center_re = q_to_decimal(c.disc.cre);
            rc.center_im = q_to_decimal(c.disc.cim);
            rc.radius = q_to_decimal(c.disc.radius);
            rc.multiplicity = c.multiplicity;
            rc.disc = c.disc;
            report.clusters.push_back(std::move(rc));
            maxprec = std::max(maxprec, ceil_neg_log2(c.disc.radius));
        }
        report.maxprec = maxprec;

        if (want_stats)
            std::fprintf(stderr,
                         "clusters=%zu roots=%d depth=%d size=%ld maxprec=%d cost=%lld "
                         "t=%.2fs (oracle_for_q=%.2fs refine=%.2fs ps_to_coeffs=%.2fs)\n",
                         report.clusters.size(), total_multiplicity(clusters), report.depth,
                         report.size, report.maxprec,
                         static_cast<long long>(report.degree_weighted_cost), report.t_total,
                         report.t_oracle_q, report.t_refine, report.t_ps_to_coeffs);

        std::string body = output == "csv" ? to_csv(report) : to_json(report);
        if (!body.empty() && body.back() != '\n') body += '\n';
        if (out_path.empty()) {
            std::fputs(body.c_str(), stdout);
        } else {
            std::ofstream out(out_path);
            if (!out) throw ParseError("cannot write " + out_path);
            out << body;
        }
        if (!plot_path.empty()) {
            std::ofstream out(plot_path);
            if (!out) throw ParseError("cannot write " + plot_path);
            out << render_svg(report, roi, stats.box_log);
        }
        return 0;
    } catch (const UnresolvableRegion& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ParseError& e) {
        if (e.line > 0)
            std::fprintf(stderr, "error: line %d: %s\n", e.line, e.what());
        else
            std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace rootclust::cli
